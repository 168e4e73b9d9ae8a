#include "isospec/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

namespace isospec {

int LengthSpectrum::count_near(double length, double tol) const {
    int n = 0;
    for (const auto& e : entries)
        if (std::abs(e.length - length) <= tol) n += e.multiplicity;
    return n;
}

double LengthSpectrum::nearest(double length) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : entries)
        if (std::abs(e.length - length) < std::abs(best - length)) best = e.length;
    return best;
}

namespace {

constexpr double kKeyTol = 1e-9;
constexpr double kClusterGap = 1e-9;
constexpr double kGrazeTol = 1e-9;
// Angles are measured from an arbitrary direction so that chord endpoints
// rarely sit on the branch cut.
const Complex kAngleFrame = std::polar(1.0, -0.7853981633974483 * 0.1234567);

double angle(Complex z) {
    double a = std::arg(z * kAngleFrame);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
}

struct Chord {
    Complex repelling, attracting;
    double lo = 0.0, hi = 0.0;  // sorted endpoint angles
    bool attracting_high = false;
};

Chord chord_of(const DiskIsometry& g) {
    const auto fp = disk_fixed_points(g);
    Chord c{fp[0], fp[1]};
    const double a = angle(fp[0]), b = angle(fp[1]);
    c.lo = std::min(a, b);
    c.hi = std::max(a, b);
    c.attracting_high = b > a;
    return c;
}

// -1, 0, 1 comparing chord keys with tolerance.
int compare_keys(const Chord& x, const Chord& y) {
    if (std::abs(x.lo - y.lo) > kKeyTol) return x.lo < y.lo ? -1 : 1;
    if (std::abs(x.hi - y.hi) > kKeyTol) return x.hi < y.hi ? -1 : 1;
    return 0;
}

// Whether the chord meets the truncated polygon; grazing chords are refused
// rather than guessed.
bool meets(const DirichletDomain& dom, Complex a, Complex b) {
    const Clip c = clip_segment(a, b, dom.truncated_plane);
    if (std::abs(c.t1 - c.t0) < kGrazeTol)
        fail(ErrorCode::NumericalInstability, "spectrum: axis grazes the fundamental polygon");
    return c.hit;
}

struct Candidate {
    DiskIsometry element;
    double length = 0.0;
};

class TreeWalker {
public:
    TreeWalker(const DirichletDomain& dom, double cutoff, double cosh_radius, std::atomic<long long>& nodes,
               long long budget)
        : dom_(dom), max_re_(std::cosh(0.5 * cutoff) * (1.0 + 1e-12)), cosh_radius_(cosh_radius), nodes_(nodes),
          budget_(budget) {}

    // Children of h in the Dirichlet tree.
    std::vector<DiskIsometry> children(const DiskIsometry& h) const {
        std::vector<DiskIsometry> out;
        const int k = dom_.side_count();
        for (int j = 0; j < k; ++j) {
            const DiskIsometry c = (h * dom_.side_element[j]).normalized();
            const double cd = c.cosh_displacement();
            if (cd > cosh_radius_ || cd < 1.0 + 1e-9) continue;  // the second case is the root again
            // c's parent is c * w where w pairs the side hit by the ray towards c^-1(0).
            if (dom_.exit_side(-c.beta / c.alpha) == dom_.side_pair[j]) out.push_back(c);
        }
        return out;
    }

    void walk(const DiskIsometry& h) {
        if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_)
            fail(ErrorCode::ResourceLimit, "spectrum: node budget exhausted");
        consider(h);
        for (const auto& c : children(h)) walk(c);
    }

    std::vector<Candidate> found;

private:
    const DirichletDomain& dom_;
    double max_re_;
    double cosh_radius_;
    std::atomic<long long>& nodes_;
    long long budget_;

    void consider(const DiskIsometry& g) {
        const double re = std::abs(g.alpha.real());
        if (re <= 1.0 + 1e-12 || re > max_re_) return;
        const auto fp = disk_fixed_points(g);
        if (!meets(dom_, fp[0], fp[1])) return;
        found.push_back({g, length_from_trace(2.0 * re)});
    }
};

bool same_element(const DiskIsometry& a, const DiskIsometry& b, double tol) {
    const double scale = std::abs(a.alpha) + std::abs(a.beta);
    for (double s : {1.0, -1.0})
        if (std::abs(a.alpha - s * b.alpha) + std::abs(a.beta - s * b.beta) <= tol * scale) return true;
    return false;
}

struct Counted {
    Chord chord;
    double length = 0.0;
    DiskIsometry element;
    int power = 1;
};

// Decides whether g is the representative of its unoriented class: the
// element of the class whose axis chord has the smallest key among those
// meeting the truncated polygon, oriented towards the larger angle.
bool is_representative(const DirichletDomain& dom, const DiskIsometry& g, Chord& chord) {
    chord = chord_of(g);
    if (!chord.attracting_high) return false;
    DiskIsometry cur = g;
    Chord cc = chord;
    for (int step = 0;; ++step) {
        if (step > 100000) fail(ErrorCode::NumericalInstability, "spectrum: axis walk does not close");
        const Clip cl = clip_segment(cc.repelling, cc.attracting, dom.side_plane);
        if (cl.exit_plane < 0 || cl.exit_margin < kGrazeTol)
            fail(ErrorCode::NumericalInstability, "spectrum: axis leaves the polygon through a vertex");
        const DiskIsometry& w = dom.side_element[cl.exit_plane];
        cur = (w.inverse() * cur * w).normalized();
        cc = chord_of(cur);
        if (std::abs(cc.repelling - chord.repelling) < 1e-8 && std::abs(cc.attracting - chord.attracting) < 1e-8) break;
        if (!meets(dom, cc.repelling, cc.attracting)) continue;
        const int cmp = compare_keys(cc, chord);
        if (cmp == 0)
            fail(ErrorCode::NumericalInstability, "spectrum: two axis chords agree to within tolerance");
        if (cmp < 0) return false;
    }
    return true;
}

DiskIsometry power_of(const DiskIsometry& h, int k) {
    DiskIsometry r;
    for (int i = 0; i < k; ++i) r = (r * h).normalized();
    return r;
}

// Runs f on the polygons in order of rho until one avoids a numerical tie.
template <typename F>
auto with_domains(const HolonomyRep& rep, const SpectrumOptions& opt, F&& f) {
    // Domains are built one at a time; most surfaces never need a second.
    const auto points = dirichlet_basepoints(rep);
    for (std::size_t i = 0;; ++i) {
        const bool last = i + 1 == points.size();
        std::optional<DirichletDomain> dom;
        try {
            dom = dirichlet_domain(rep, points[i], opt.dirichlet);
        } catch (const Error& e) {
            if (last) throw;
            continue;
        }
        try {
            return f(*dom);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NumericalInstability || last) throw;
        }
    }
}

}  // namespace

LengthSpectrum enumerate_spectrum(const HolonomyRep& rep, double cutoff, const SpectrumOptions& opt) {
    if (!(cutoff <= opt.max_cutoff)) fail(ErrorCode::ResourceLimit, "spectrum: cutoff above the configured maximum");
    return with_domains(rep, opt, [&](const DirichletDomain& dom) { return enumerate_spectrum(rep, dom, cutoff, opt); });
}

LengthSpectrum enumerate_spectrum(const HolonomyRep& rep, const DirichletDomain& dom, double cutoff,
                                  const SpectrumOptions& opt) {
    if (!(cutoff <= opt.max_cutoff)) fail(ErrorCode::ResourceLimit, "spectrum: cutoff above the configured maximum");
    if (!(cutoff >= 0.0)) fail(ErrorCode::OutOfRange, "spectrum: cutoff must be >= 0");
    LengthSpectrum out;
    out.signature = rep.signature;
    out.cutoff = cutoff;
    out.surface_hash = rep.surface_hash;
    out.relator_residual = rep.relator_residual;
    out.length_residual = rep.length_residual;
    out.cusp_residual = rep.cusp_residual;
    out.rho = dom.rho;

    // An axis within rho of the origin translating by l moves the origin by
    // at most this much.
    const double ch = std::cosh(dom.rho), sh = std::sinh(dom.rho);
    const double cosh_radius = (std::cosh(cutoff) * ch * ch - sh * sh) * (1.0 + 1e-9) + 1e-9;

    std::atomic<long long> nodes{0};
    TreeWalker root(dom, cutoff, cosh_radius, nodes, opt.node_budget);
    nodes.fetch_add(1);
    const auto top = root.children(DiskIsometry{});
    const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(top.size())));
    std::vector<std::vector<Candidate>> parts(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](int t) {
        try {
            TreeWalker w(dom, cutoff, cosh_radius, nodes, opt.node_budget);
            for (std::size_t i = t; i < top.size(); i += threads) w.walk(top[i]);
            parts[t] = std::move(w.found);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    out.nodes = nodes.load();

    std::vector<Counted> reps;
    for (const auto& part : parts)
        for (const auto& c : part) {
            Chord chord;
            if (is_representative(dom, c.element, chord)) reps.push_back({chord, c.length, c.element, 1});
        }

    // Powers of one primitive element share its axis and its representative chord.
    std::sort(reps.begin(), reps.end(), [](const Counted& a, const Counted& b) {
        if (const int c = compare_keys(a.chord, b.chord); c != 0) return c < 0;
        return a.length < b.length;
    });
    for (std::size_t i = 0; i < reps.size();) {
        std::size_t j = i + 1;
        while (j < reps.size() && compare_keys(reps[i].chord, reps[j].chord) == 0) ++j;
        for (std::size_t m = i + 1; m < j; ++m) {
            const int k = static_cast<int>(std::lround(reps[m].length / reps[i].length));
            if (k < 2 || std::abs(k * reps[i].length - reps[m].length) > 1e-7 * reps[m].length ||
                !same_element(power_of(reps[i].element, k), reps[m].element, 1e-6))
                fail(ErrorCode::NumericalInstability, "spectrum: coaxial elements are not powers of one element");
            reps[m].power = k;
        }
        i = j;
    }

    std::sort(reps.begin(), reps.end(), [](const Counted& a, const Counted& b) {
        if (a.power != b.power) return a.power < b.power;
        return a.length < b.length;
    });
    for (std::size_t i = 0; i < reps.size();) {
        // Chain of lengths with gaps below kClusterGap and the same power.
        std::size_t j = i + 1;
        while (j < reps.size() && reps[j].power == reps[i].power && reps[j].length - reps[j - 1].length <= kClusterGap)
            ++j;
        double sum = 0.0;
        for (std::size_t m = i; m < j; ++m) sum += reps[m].length;
        const int mult = static_cast<int>(j - i);
        out.entries.push_back({sum / mult, mult, reps[i].power == 1, reps[i].power});
        i = j;
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.power < b.power;
    });
    return out;
}

double systole(const HolonomyRep& rep, const SpectrumOptions& opt) {
    double shortest_curve = std::numeric_limits<double>::infinity();
    for (double l : rep.curve_lengths) shortest_curve = std::min(shortest_curve, l);
    return with_domains(rep, opt, [&](const DirichletDomain& dom) {
        double cutoff = std::isfinite(shortest_curve) ? 0.5 * shortest_curve : 1.0;
        for (;;) {
            if (cutoff > opt.max_cutoff)
                fail(ErrorCode::ResourceLimit, "systole: no closed geodesic below the maximum cutoff");
            const auto s = enumerate_spectrum(rep, dom, cutoff, opt);
            if (!s.empty()) return s.entries.front().length;
            if (cutoff >= shortest_curve)
                fail(ErrorCode::NumericalInstability, "systole: pants curve missing from the spectrum");
            cutoff = std::min(1.5 * cutoff, shortest_curve + 1e-9);
        }
    });
}

long long growth_count(const LengthSpectrum& s, double L, double short_threshold) {
    long long n = 0;
    for (const auto& e : s.entries) {
        if (e.length > L) break;
        if (e.power >= 2 && e.length / e.power < short_threshold) continue;
        n += e.multiplicity;
    }
    return n;
}

std::string export_spectrum(const LengthSpectrum& s) {
    std::ostringstream os;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(s.surface_hash));
    os << "# closed geodesic length spectrum\n";
    os << "signature " << s.signature.g << ' ' << s.signature.n << '\n';
    os << "surface_hash " << buf << '\n';
    os << "cutoff " << num(s.cutoff) << '\n';
    os << "relator_residual " << num(s.relator_residual) << '\n';
    os << "length_residual " << num(s.length_residual) << '\n';
    os << "cusp_residual " << num(s.cusp_residual) << '\n';
    os << "rho " << num(s.rho) << '\n';
    os << "entries " << s.entries.size() << '\n';
    os << "# length multiplicity primitive power\n";
    for (const auto& e : s.entries)
        os << num(e.length) << ' ' << e.multiplicity << ' ' << (e.primitive ? 1 : 0) << ' ' << e.power << '\n';
    return os.str();
}

LengthSpectrum parse_spectrum(std::string_view text) {
    LengthSpectrum s;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    long long expected = -1;
    auto bad = [&](const std::string& msg) {
        fail(ErrorCode::ParseError, "spectrum line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (expected < 0) {
            std::string key;
            ls >> key;
            if (key == "signature") ls >> s.signature.g >> s.signature.n;
            else if (key == "surface_hash") {
                std::string hex;
                ls >> hex;
                s.surface_hash = std::stoull(hex, nullptr, 16);
            } else if (key == "cutoff") ls >> s.cutoff;
            else if (key == "relator_residual") ls >> s.relator_residual;
            else if (key == "length_residual") ls >> s.length_residual;
            else if (key == "cusp_residual") ls >> s.cusp_residual;
            else if (key == "rho") ls >> s.rho;
            else if (key == "entries") ls >> expected;
            else bad("unknown key '" + key + "'");
            if (ls.fail()) bad("malformed value for '" + key + "'");
            continue;
        }
        SpectrumEntry e;
        int prim = 0;
        ls >> e.length >> e.multiplicity >> prim >> e.power;
        if (ls.fail() || e.multiplicity < 1 || e.power < 1) bad("malformed entry");
        e.primitive = prim != 0;
        s.entries.push_back(e);
    }
    if (expected < 0) fail(ErrorCode::ParseError, "spectrum: missing 'entries' line");
    if (static_cast<long long>(s.entries.size()) != expected)
        fail(ErrorCode::ParseError, "spectrum: entry count does not match header");
    return s;
}

}  // namespace isospec
