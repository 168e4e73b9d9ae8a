#include "isospec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "isospec/bounds.hpp"
#include "isospec/errors.hpp"
#include "isospec/holonomy.hpp"
#include "isospec/hyptrig.hpp"
#include "isospec/transversal.hpp"

namespace isospec {

bool SuiteReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

namespace {

// Upper half-plane geometry built from points and endpoints only. None of
// it goes through the trig kernel.

struct Geodesic {
    double u, v;  // endpoints on the real line
};

// Geodesic crossing |z| = r perpendicularly at distance t from i r along it
// (t > 0 toward +r): the image of the imaginary axis under the translation
// along |z| = r by t.
Geodesic perpendicular_at(double r, double t) { return {r * std::tanh(0.5 * t), r / std::tanh(0.5 * t)}; }

// Endpoint x seen in the chart where g runs from 0 to infinity.
double chart(double x, const Geodesic& g) { return (x - g.u) / (x - g.v); }

// Neither geodesic encloses the other and they do not cross.
bool side_by_side(const Geodesic& a, const Geodesic& b) {
    const auto [a0, a1] = std::minmax(a.u, a.v);
    const auto [b0, b1] = std::minmax(b.u, b.v);
    return a1 < b0 || b1 < a0;
}

// Distance between two geodesics; -1 when they cross.
double geodesic_distance(const Geodesic& a, const Geodesic& b) {
    const double r1 = chart(b.u, a), r2 = chart(b.v, a);
    if (r1 * r2 < 0.0) return -1.0;
    const double s1 = std::abs(r1), s2 = std::abs(r2);
    const double lo = std::min(s1, s2), hi = std::max(s1, s2);
    // cosh d = (hi + lo) / (hi - lo), i.e. tanh(d / 2) = sqrt(lo / hi).
    return 2.0 * std::atanh(std::sqrt(lo / hi));
}

double rel_error(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

void record(Check& c, double err) {
    ++c.cases;
    c.max_error = std::max(c.max_error, err);
    if (!(err <= c.tolerance)) ++c.failures;
}

int samples_or(const VerifyOptions& opt, int fallback) { return opt.samples > 0 ? opt.samples : fallback; }

}  // namespace

SuiteReport verify_trig(const VerifyOptions& opt) {
    const int n = samples_or(opt, 1000);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> len(0.1, 4.0), small(0.05, 3.0);
    SuiteReport rep{"trig", {}};
    const double tol = trig::kOracleTol;

    Check hex{"hexagon_third_side", 0, 0, 0.0, tol, ""};
    Check hex_reject{"hexagon_third_side rejects crossing sides", 0, 0, 0.0, 0.0, ""};
    while (hex.cases < n) {
        const double a = len(rng), b = len(rng), gamma = len(rng);
        // Sides a and b leave the segment [i, i e^gamma] of the imaginary axis
        // on the same side; the sixth side joins their perpendiculars.
        // Nested or crossing perpendiculars close up no hexagon.
        const Geodesic g1 = perpendicular_at(1.0, a), g2 = perpendicular_at(std::exp(gamma), b);
        const double want = side_by_side(g1, g2) ? geodesic_distance(g1, g2) : -1.0;
        if (want < 0.0) {
            bool threw = false;
            try {
                (void)trig::hexagon_third_side(a, b, gamma);
            } catch (const Error& e) {
                threw = e.code() == ErrorCode::DegenerateConfiguration;
            }
            // Near-tangent configurations may round either way.
            const double expr = std::sinh(a) * std::sinh(b) * std::cosh(gamma) - std::cosh(a) * std::cosh(b);
            if (expr < 1.0 - 1e-6) record(hex_reject, threw ? 0.0 : 1.0);
            continue;
        }
        if (want < 1e-3) continue;  // sqrt-conditioned at the tangent limit
        record(hex, rel_error(trig::hexagon_third_side(a, b, gamma), want));
    }

    Check crossed{"crossed_hexagon_diagonal", 0, 0, 0.0, tol, ""};
    for (int k = 0; k < n; ++k) {
        const double p = len(rng), q = len(rng), c = (k % 10 == 0) ? 0.0 : len(rng);
        // p and p' leave [i, i e^c] on opposite sides.
        const double want = geodesic_distance(perpendicular_at(1.0, p), perpendicular_at(std::exp(c), -q));
        record(crossed, rel_error(trig::crossed_hexagon_diagonal(p, q, c), want));
    }

    Check pent{"pentagon_opposite", 0, 0, 0.0, tol, ""};
    while (pent.cases < n) {
        const double a = len(rng), b = len(rng);
        // Right angle at i between the imaginary axis (side a) and |z| = 1 (side b).
        // The far sides close up a pentagon only when one encloses the other.
        const Geodesic g1{-std::exp(a), std::exp(a)}, g2 = perpendicular_at(1.0, b);
        if (side_by_side(g1, g2)) continue;
        const double half = geodesic_distance(g1, g2);
        if (half < 1e-3) continue;
        record(pent, rel_error(trig::pentagon_opposite(a, b), 2.0 * half));
    }

    Check tri{"trirectangle_altitude", 0, 0, 0.0, tol, ""};
    Check collar{"collar_halfwidth", 0, 0, 0.0, tol, ""};
    for (int k = 0; k < n; ++k) {
        // Same corner as the pentagon; b is where the perpendicular to |z| = 1
        // becomes asymptotic to |z| = e^a, i.e. coth(b/2) = e^a.
        const double a = small(rng);
        const double b = 2.0 * std::atanh(std::exp(-a));
        record(tri, rel_error(trig::trirectangle_altitude(a), b));
        // The collar boundary at half-width w meets the trirectangle over half
        // of the core curve.
        const double l = 2.0 * small(rng);
        const double w = 2.0 * std::atanh(std::exp(-0.5 * l));
        record(collar, rel_error(trig::collar_halfwidth(l), w));
    }

    rep.checks = {hex, hex_reject, crossed, pent, tri, collar};
    return rep;
}

SuiteReport verify_twist(const VerifyOptions& opt) {
    const int n = samples_or(opt, 1000);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> len(0.2, 8.0), tw(-0.5, 0.5);
    Check recover{"|alpha| recovered from delta", 0, 0, 0.0, 1e-9, ""};
    Check shape{"answer is {-a, a} or {0}", 0, 0, 0.0, 0.0, ""};
    Check convex{"delta(alpha) second differences >= 0", 0, 0, 0.0, 1e-9, ""};
    for (int k = 0; k < n; ++k) {
        GluingNeighborhood nb{len(rng), len(rng), len(rng), len(rng), len(rng), tw(rng)};
        if (k % 20 == 0) nb.alpha = 0.0;
        const auto got = twists_from_transversal(nb, transversal_length(nb));
        const double a = std::abs(nb.alpha);
        bool ok_shape;
        if (a == 0.0) {
            ok_shape = got.size() == 1 && got[0] == 0.0;
        } else {
            ok_shape = got.size() == 2 && got[0] == -got[1];
            // A twist within rounding of zero may collapse to {0}.
            if (got.size() == 1 && got[0] == 0.0 && a < 1e-7) ok_shape = true;
        }
        record(shape, ok_shape ? 0.0 : 1.0);
        record(recover, got.empty() ? INFINITY : std::abs(got.back() - a));

        const double h = 1.0 / 64;
        auto delta = [&](double alpha) {
            GluingNeighborhood m = nb;
            m.alpha = alpha;
            return transversal_length(m);
        };
        double worst = 0.0;
        for (int j = -31; j <= 31; ++j) {
            const double second = delta((j - 1) * h) - 2.0 * delta(j * h) + delta((j + 1) * h);
            worst = std::max(worst, -second);
        }
        record(convex, worst);
    }
    return {"twist", {recover, shape, convex}};
}

SuiteReport verify_transversal_bound(const VerifyOptions& opt) {
    const int n = samples_or(opt, 10000);
    std::mt19937_64 rng(opt.seed);
    SuiteReport rep{"transversal", {}};
    const std::pair<double, double> cases[] = {{4.45, 1.0}, {4.45, 0.5}, {30.39, 1.0}};
    for (auto [B, I] : cases) {
        Check c{"delta <= 3B - 4 log I + 12 log 2 at B=" + std::to_string(B).substr(0, 5) +
                    " I=" + std::to_string(I).substr(0, 4),
                0, 0, 0.0, 0.0, ""};
        const double bound = transversal_upper_bound(B, I);
        std::uniform_real_distribution<double> len(I, B), tw(-0.5, 0.5);
        // A quarter of the lengths sit on the box corners, where the bound is tightest.
        auto pick = [&] {
            const auto r = rng() % 8;
            return r == 0 ? I : r == 1 ? B : len(rng);
        };
        double closest = -INFINITY;
        for (int k = 0; k < n; ++k) {
            GluingNeighborhood nb{pick(), pick(), pick(), pick(), pick(), (rng() % 8 == 0) ? 0.5 : tw(rng)};
            const double delta = transversal_length(nb);
            closest = std::max(closest, delta - bound);
            record(c, delta > bound ? delta - bound : 0.0);
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "bound %.4f, largest delta - bound %.4f", bound, closest);
        c.note = buf;
        rep.checks.push_back(c);
    }
    return rep;
}

namespace {

FNSurface random_genus2(std::mt19937_64& rng, double lo, double hi, bool theta) {
    std::uniform_real_distribution<double> len(lo, hi), tw(-0.5, 0.5);
    const PantsGraph g = theta ? PantsGraph(2, {{0, 1}, {0, 1}, {0, 1}}, {0, 0})
                               : PantsGraph(2, {{0, 0}, {0, 1}, {1, 1}}, {0, 0});
    FNSurface s{g, {}, {}};
    for (int i = 0; i < 3; ++i) s.lengths.push_back(len(rng));
    for (int i = 0; i < 3; ++i) s.twists.push_back(tw(rng));
    return s;
}

std::vector<double> transversals(const FNSurface& s) {
    std::vector<double> out;
    for (int e = 0; e < s.graph.edge_count(); ++e) {
        try {
            out.push_back(transversal_length(neighborhood(s, e)));
        } catch (const Error& err) {
            if (err.code() != ErrorCode::LoopEdge && err.code() != ErrorCode::UnsupportedCuspCase) throw;
        }
    }
    return out;
}

}  // namespace

SuiteReport verify_spectrum(const VerifyOptions& opt) {
    const int n = samples_or(opt, 20);
    std::mt19937_64 rng(opt.seed);
    Check c{"transversal_length found by enumerate_spectrum", 0, 0, 0.0, 1e-6, ""};
    Check pants{"pants curves found by enumerate_spectrum", 0, 0, 0.0, 1e-9, ""};
    SpectrumOptions sopt;
    sopt.threads = opt.threads;
    for (int k = 0; k < n; ++k) {
        const FNSurface s = random_genus2(rng, 1.0, 4.45, k % 2 == 0);
        const auto deltas = transversals(s);
        const double top = std::max(*std::max_element(deltas.begin(), deltas.end()),
                                    *std::max_element(s.lengths.begin(), s.lengths.end()));
        const auto spec = enumerate_spectrum(build_holonomy(s), top + 1e-3, sopt);
        for (double d : deltas) record(c, std::abs(spec.nearest(d) - d));
        for (double l : s.lengths) record(pants, std::abs(spec.nearest(l) - l));
    }
    return {"spectrum", {c, pants}};
}

SuiteReport verify_growth(const VerifyOptions& opt) {
    const int n = samples_or(opt, 6);
    std::mt19937_64 rng(opt.seed);
    const double l = 2.0 * std::acosh(2.0);
    const PantsGraph theta(2, {{0, 1}, {0, 1}, {0, 1}}, {0, 0});
    const PantsGraph dumbbell(2, {{0, 0}, {0, 1}, {1, 1}}, {0, 0});
    std::vector<FNSurface> surfaces{
        {theta, {l, l, l}, {0, 0, 0}},
        {theta, {0.3, 2.0, 4.0}, {0.1, 0.2, 0.3}},
        {dumbbell, {1.0, 4.45, 1.0}, {0.5, -0.5, 0.0}},
        {dumbbell, {0.6, 1.0, 0.6}, {0.2, 0.0, -0.3}},
        {PantsGraph(1, {{0, 0}}, {1}), {1.5}, {0.2}},
        {PantsGraph(2, {{0, 1}}, {2, 2}), {2.2}, {0.3}},
        {PantsGraph(1, {}, {3}), {}, {}},
    };
    for (int k = 0; k < n; ++k) surfaces.push_back(random_genus2(rng, 1.0, 4.45, k % 2 == 0));

    Check c{"primitive non-short-iterate counts <= f(L) at L = 4, 6, 8", 0, 0, 0.0, 0.0, ""};
    SpectrumOptions sopt;
    sopt.threads = opt.threads;
    double worst_ratio = 0.0;
    for (const auto& s : surfaces) {
        const Signature sig = validate_surface(s);
        const auto spec = enumerate_spectrum(build_holonomy(s), 8.0, sopt);
        for (double L : {4.0, 6.0, 8.0}) {
            const double count = static_cast<double>(growth_count(spec, L, short_geodesic_threshold()));
            const double f = growth_rate(L, sig.g, sig.n);
            worst_ratio = std::max(worst_ratio, count / f);
            record(c, count > f ? count - f : 0.0);
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu surfaces, largest count / f(L) %.3g", surfaces.size(), worst_ratio);
    c.note = buf;
    return {"growth", {c}};
}

SuiteReport verify_spectrum_export(const LengthSpectrum& s, const FNSurface& surface) {
    SuiteReport rep{"export", {}};
    Check hash{"surface hash matches", 0, 0, 0.0, 0.0, ""};
    record(hash, s.surface_hash == surface_hash(surface) ? 0.0 : 1.0);

    Check order{"entries sorted, positive, within the cutoff", 0, 0, 0.0, 0.0, ""};
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        const auto& e = s.entries[i];
        bool ok = e.multiplicity > 0 && e.power >= 1 && e.primitive == (e.power == 1) && e.length > 0.0 &&
                  e.length <= s.cutoff + 1e-9;
        if (i > 0) ok = ok && s.entries[i - 1].length <= e.length;
        record(order, ok ? 0.0 : 1.0);
    }
    if (s.entries.empty()) ++order.cases;

    Check pants{"pants curves below the cutoff are listed", 0, 0, 0.0, 1e-9, ""};
    for (double l : surface.lengths)
        if (l <= s.cutoff - 1e-9) record(pants, std::abs(s.nearest(l) - l));
    Check trans{"transversals below the cutoff are listed", 0, 0, 0.0, 1e-6, ""};
    for (double d : transversals(surface))
        if (d <= s.cutoff - 1e-6) record(trans, std::abs(s.nearest(d) - d));

    Check growth{"growth counts <= f(L)", 0, 0, 0.0, 0.0, ""};
    const Signature sig = validate_surface(surface);
    for (double L : {4.0, 6.0, 8.0}) {
        if (L > s.cutoff) break;
        const double count = static_cast<double>(growth_count(s, L, short_geodesic_threshold()));
        const double f = growth_rate(L, sig.g, sig.n);
        record(growth, count > f ? count - f : 0.0);
    }
    rep.checks = {hash, order};
    // Checks with nothing below the cutoff are left out rather than failed.
    for (const Check& c : {pants, trans, growth})
        if (c.cases > 0) rep.checks.push_back(c);
    return rep;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"trig", "twist", "transversal", "spectrum", "growth"};
    return names;
}

SuiteReport run_suite(std::string_view name, const VerifyOptions& opt) {
    if (name == "trig") return verify_trig(opt);
    if (name == "twist") return verify_twist(opt);
    if (name == "transversal") return verify_transversal_bound(opt);
    if (name == "spectrum") return verify_spectrum(opt);
    if (name == "growth") return verify_growth(opt);
    fail(ErrorCode::ValidationError, "verify: unknown suite '" + std::string(name) + "'");
}

}  // namespace isospec
