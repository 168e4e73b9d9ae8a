// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned here and printed with each line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "graph_oracle.hpp"
#include "isospec/bounds.hpp"
#include "isospec/pantsgraph.hpp"
#include "isospec/surface.hpp"
#include "isospec/verify.hpp"

using namespace isospec;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// A suite passes when every check ran and met its tolerance.
Outcome from_suite(const SuiteReport& r, long long min_cases) {
    Outcome o{r.passed(), ""};
    for (const auto& c : r.checks) {
        if (c.cases < min_cases && c.name.find("rejects") == std::string::npos) o.pass = false;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s%s: %lld cases, %lld failures, max err %.3g (tol %.3g)",
                      o.detail.empty() ? "" : "; ", c.name.c_str(), c.cases, c.failures, c.max_error, c.tolerance);
        o.detail += buf;
    }
    return o;
}

Outcome genus2_headline() {
    const BoundReport r = main_bound(2, 0, 4.45, 1.0);
    const double rhs_log = std::log(3.8e53);
    return {r.total_log <= rhs_log, "total " + format_exp(r.total_log) + " <= 3.8e53"};
}

Outcome closed_sweep() {
    int cases = 0, bad = 0;
    double worst_margin = INFINITY;
    for (int g = 2; g <= 50; ++g) {
        for (double I : {0.5, 1.0, 2.0}) {
            const double B = 12.67 * (g - 1) + 20.0;
            const double rhs_log = 12.0 * (1 - g) * std::log(I) + 171.0 * g * g;
            const double lhs = main_bound(g, 0, B, I).total_log;
            ++cases;
            if (!(lhs <= rhs_log)) ++bad;
            worst_margin = std::min(worst_margin, rhs_log - lhs);
        }
    }
    return {bad == 0, std::to_string(cases) + " cases, " + std::to_string(bad) +
                          " failures, smallest log margin " + fmt("%.4g", worst_margin)};
}

Outcome punctured_sphere_sweep() {
    int cases = 0, bad = 0;
    double worst_margin = INFINITY;
    for (int n = 3; n <= 40; ++n) {
        for (double I : {0.5, 1.0}) {
            const double B = 30.0 * std::sqrt(2.0 * std::numbers::pi * (n - 2));
            const double rhs_log = (12.0 - 4.0 * n) * std::log(I) + 300.0 * (n - 3) * std::sqrt(n - 2.0) +
                                   2.0 * (n - 3) * std::log(n + 3.0) + n * std::log(n - 1.0) + 24.0 * n;
            const double lhs = main_bound(0, n, B, I).total_log;
            ++cases;
            if (!(lhs <= rhs_log)) ++bad;
            worst_margin = std::min(worst_margin, rhs_log - lhs);
        }
    }
    return {bad == 0, std::to_string(cases) + " cases, " + std::to_string(bad) +
                          " failures, smallest log margin " + fmt("%.4g", worst_margin)};
}

struct RandomBoundInput {
    int g, n;
    double B, I;
};

std::vector<RandomBoundInput> random_bound_inputs(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> gd(0, 12), nd(0, 12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<RandomBoundInput> out;
    while (static_cast<int>(out.size()) < count) {
        const int g = gd(rng), n = nd(rng);
        if (3 * g - 3 + n < 1) continue;
        const double I = 0.05 + 2.95 * u(rng);
        const double B = I + 40.0 * u(rng);
        out.push_back({g, n, B, I});
    }
    return out;
}

constexpr double kCompositionTol = 1e-12;

// Literal form: log 2 + log C + length count + twist count against the
// closed form. The twist count already carries its factor 2, so the
// informational line drops the extra log 2.
Outcome composition_identity(Outcome& informational) {
    double worst = 0.0, worst_without = 0.0;
    int bad = 0, bad_without = 0;
    const auto inputs = random_bound_inputs(1000, 4);
    for (const auto& in : inputs) {
        const double parts = count_bound_log(in.g, in.n) + length_param_count_log(in.g, in.n, in.B) +
                             twist_param_count_log(in.g, in.n, in.B, in.I);
        const double closed = closed_form_log(in.g, in.n, in.B, in.I);
        const double scale = std::abs(closed);
        const double e = std::abs(std::log(2.0) + parts - closed) / scale;
        const double e2 = std::abs(parts - closed) / scale;
        worst = std::max(worst, e);
        worst_without = std::max(worst_without, e2);
        if (!(e <= kCompositionTol)) ++bad;
        if (!(e2 <= kCompositionTol)) ++bad_without;
    }
    informational = {bad_without == 0, "without the extra log 2: 1000 cases, " + std::to_string(bad_without) +
                                           " failures, max rel err " + fmt("%.3g", worst_without)};
    return {bad == 0, "1000 cases, " + std::to_string(bad) + " failures, max rel err " + fmt("%.3g", worst) +
                          " (tol 1e-12)"};
}

Outcome scaling_law() {
    double worst = 0.0;
    int bad = 0;
    const auto inputs = random_bound_inputs(1000, 5);
    for (const auto& in : inputs) {
        const int m = 3 * in.g - 3 + in.n;
        const double B = std::max(in.B, 1.0);
        const double got = main_bound(in.g, in.n, B, in.I).total_log - main_bound(in.g, in.n, B, 1.0).total_log;
        const double want = -4.0 * m * std::log(in.I);
        const double e = std::abs(got - want);
        worst = std::max(worst, e);
        if (!(e <= 1e-12 * std::max(1.0, std::abs(main_bound(in.g, in.n, B, 1.0).total_log)))) ++bad;
    }
    return {bad == 0, "1000 cases, " + std::to_string(bad) + " failures, max abs err " + fmt("%.3g", worst) +
                          " (tol 1e-12 relative to the bound's log)"};
}

Outcome graph_enumeration() {
    int signatures = 0, bad = 0;
    std::string counts;
    for (int g = 0; g <= 3; ++g) {
        for (int n = 0; n <= 6; ++n) {
            const int pants = 2 * g - 2 + n;
            if (pants < 1 || pants > 4) continue;
            ++signatures;
            const auto fast = enumerate_pants_graphs(g, n);
            const auto slow = oracle::brute_force_classes(g, n);
            bool ok = fast.size() == slow.size();
            for (const auto& a : fast) {
                bool found = false;
                for (const auto& b : slow) found = found || oracle::isomorphic(a, b);
                ok = ok && found;
            }
            ok = ok && static_cast<double>(fast.size()) <= count_bound(g, n);
            if (!ok) ++bad;
            counts += (counts.empty() ? "" : " ") + std::string("(") + std::to_string(g) + "," + std::to_string(n) +
                      ")->" + std::to_string(fast.size());
        }
    }
    // The count bound on larger signatures as well.
    for (int g = 0; g <= 5; ++g) {
        for (int n = 0; n <= 8; ++n) {
            const int pants = 2 * g - 2 + n;
            if (pants < 5 || pants > 7) continue;
            ++signatures;
            if (!(static_cast<double>(enumerate_pants_graphs(g, n).size()) <= count_bound(g, n))) ++bad;
        }
    }
    return {bad == 0, std::to_string(signatures) + " signatures, " + std::to_string(bad) + " failures; " + counts};
}

Outcome curve_bound_consistency() {
    int cases = 0, bad = 0;
    double worst = -INFINITY;
    std::string first_bad;
    for (int chi = 1; chi <= 60; ++chi) {
        for (int g = 0; 2 * g - 2 <= chi; ++g) {
            const int n = chi - (2 * g - 2);
            const int m = 3 * g - 3 + n;
            if (m < 1) continue;  // (0,3) has no pants curve to bound
            ++cases;
            const double excess = buser_curve_bound(m, g, n) - 10.13 * m;
            worst = std::max(worst, excess);
            if (!(excess <= 0.0)) {
                if (bad == 0) first_bad = "(" + std::to_string(g) + "," + std::to_string(n) + ")";
                ++bad;
            }
        }
    }
    std::string d = std::to_string(cases) + " signatures, " + std::to_string(bad) + " failures";
    if (bad) d += ", first " + first_bad + ", largest excess " + fmt("%.4g", worst);
    return {bad == 0, d};
}

}  // namespace

int main() {
    struct Row {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    Outcome informational;
    const std::vector<Row> rows = {
        {1, "genus-2 headline bound", genus2_headline},
        {2, "closed-surface sweep", closed_sweep},
        {3, "punctured-sphere sweep", punctured_sphere_sweep},
        {4, "composition identity", [&] { return composition_identity(informational); }},
        {5, "systole scaling law", scaling_law},
        {6, "trig kernel vs plane oracle", [] { return from_suite(verify_trig({}), 1000); }},
        {7, "transversal vs spectrum oracle", [] { return from_suite(verify_spectrum({}), 20); }},
        {8, "two-to-one twist recovery", [] { return from_suite(verify_twist({}), 1000); }},
        {9, "transversal bound", [] { return from_suite(verify_transversal_bound({}), 10000); }},
        {10, "growth bound", [] { return from_suite(verify_growth({}), 1); }},
        {11, "graph enumeration exactness", graph_enumeration},
        {12, "per-curve length bound vs 10.13 per curve", curve_bound_consistency},
    };
    int failed = 0;
    for (const auto& row : rows) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = row.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::printf("criterion %2d %s: %s  [%s] (%.2fs)\n", row.id, o.pass ? "PASS" : "FAIL", row.name,
                    o.detail.c_str(), secs);
        if (row.id == 4)
            std::printf("  info: %s %s\n", informational.pass ? "holds" : "fails", informational.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(rows.size()) - failed, rows.size());
    return failed == 0 ? 0 : 1;
}
