#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "isospec/bounds.hpp"
#include "isospec/errors.hpp"
#include "isospec/spectrum.hpp"
#include "isospec/transversal.hpp"
#include "spectrum_oracle.hpp"

using namespace isospec;

namespace {

const double kL = 2.0 * std::acosh(2.0);

FNSurface theta(double l0, double l1, double l2, double a0 = 0, double a1 = 0, double a2 = 0) {
    return {PantsGraph(2, {{0, 1}, {0, 1}, {0, 1}}, {0, 0}), {l0, l1, l2}, {a0, a1, a2}};
}

FNSurface dumbbell(double l0, double l1, double l2, double a0 = 0, double a1 = 0, double a2 = 0) {
    return {PantsGraph(2, {{0, 0}, {0, 1}, {1, 1}}, {0, 0}), {l0, l1, l2}, {a0, a1, a2}};
}

FNSurface random_genus2(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> len(lo, hi), tw(-0.5, 0.5);
    if (rng() % 2) return theta(len(rng), len(rng), len(rng), tw(rng), tw(rng), tw(rng));
    return dumbbell(len(rng), len(rng), len(rng), tw(rng), tw(rng), tw(rng));
}

// Oracle weight per length cluster, halved for the two orientations, against
// sum(multiplicity / power) from the enumerator.
void check_against_oracle(const FNSurface& s, double cutoff) {
    const auto rep = build_holonomy(s);
    const auto spec = enumerate_spectrum(rep, cutoff);
    const auto r = oracle::weighted_lengths(rep, oracle::central_point(rep), cutoff);
    CHECK(r.area == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-9));
    const auto clusters = oracle::cluster(r.weights, 1e-7);

    std::vector<oracle::Cluster> mine;
    for (const auto& e : spec.entries) {
        const double w = static_cast<double>(e.multiplicity) / e.power;
        if (!mine.empty() && e.length - mine.back().length <= 1e-7) mine.back().weight += w;
        else mine.push_back({e.length, w});
    }
    // Lengths within a hair of the cutoff may fall on either side.
    auto interior = [&](const std::vector<oracle::Cluster>& v) {
        std::vector<oracle::Cluster> out;
        for (const auto& c : v)
            if (c.length < cutoff - 1e-6) out.push_back(c);
        return out;
    };
    const auto a = interior(mine), b = interior(clusters);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].length - b[i].length) < 1e-9);
        CHECK(std::abs(a[i].weight - 0.5 * b[i].weight) < 1e-6);
    }
}

}  // namespace

TEST_CASE("enumeration agrees with the fundamental polygon oracle") {
    check_against_oracle(theta(kL, kL, kL), 5.0);
    check_against_oracle(theta(1.0, 2.0, 4.4, 0.3, -0.2, 0.5), 5.0);
    check_against_oracle(dumbbell(1.3, 2.2, 1.7, 0.1, 0.4, -0.4), 5.0);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 4; ++trial) {
        const auto s = random_genus2(rng, 1.0, 4.45);
        CAPTURE(serialize(s));
        check_against_oracle(s, 4.5);
    }
}

TEST_CASE("symmetric genus two surface") {
    const auto rep = build_holonomy(theta(kL, kL, kL));
    const auto spec = enumerate_spectrum(rep, 3.0);
    REQUIRE(!spec.empty());
    CHECK(spec.entries.front().length == doctest::Approx(kL).epsilon(1e-12));
    CHECK(spec.count_near(kL) >= 3);
    CHECK(spec.count_near(kL) == 6);
    CHECK(systole(rep) == doctest::Approx(kL).epsilon(1e-12));
}

TEST_CASE("transversal of the symmetric surface is in the spectrum") {
    const auto s = theta(kL, kL, kL);
    const double delta = transversal_length(neighborhood(s, 0));
    CHECK(delta == doctest::Approx(2.0 * std::acosh(17.0)).epsilon(1e-12));
    const auto spec = enumerate_spectrum(build_holonomy(s), delta + 0.01);
    CHECK(std::abs(spec.nearest(delta) - delta) < 1e-6);
}

TEST_CASE("transversals of twisted surfaces are in the spectrum") {
    const auto s = theta(1.5, 2.0, 1.2, 0.3, -0.1, 0.2);
    double longest = 0.0;
    for (int e = 0; e < 3; ++e) longest = std::max(longest, transversal_length(neighborhood(s, e)));
    const auto spec = enumerate_spectrum(build_holonomy(s), longest + 0.01);
    for (int e = 0; e < 3; ++e) {
        const double delta = transversal_length(neighborhood(s, e));
        CAPTURE(e);
        CHECK(std::abs(spec.nearest(delta) - delta) < 1e-6);
    }
}

TEST_CASE("pants curves appear with their input lengths") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        const auto s = random_genus2(rng, 0.5, 4.0);
        CAPTURE(serialize(s));
        const auto spec = enumerate_spectrum(build_holonomy(s), 4.05);
        for (double l : s.lengths) CHECK(std::abs(spec.nearest(l) - l) < 1e-9);
    }
}

TEST_CASE("iterates of listed geodesics are listed") {
    const auto spec = enumerate_spectrum(build_holonomy(theta(0.7, 2.0, 3.0, 0.1, 0.2, -0.3)), 3.0);
    for (const auto& e : spec.entries) {
        if (!e.primitive) continue;
        for (int k = 2; k * e.length <= spec.cutoff - 1e-9; ++k) {
            bool found = false;
            for (const auto& f : spec.entries)
                found = found || (f.power == k && std::abs(f.length - k * e.length) < 1e-9);
            CHECK(found);
        }
    }
    CHECK(spec.count_near(1.4) >= 1);
}

TEST_CASE("sorted entries with positive multiplicities") {
    const auto spec = enumerate_spectrum(build_holonomy(dumbbell(1.1, 3.0, 2.5, 0.2, 0.0, -0.5)), 5.0);
    for (std::size_t i = 0; i < spec.entries.size(); ++i) {
        CHECK(spec.entries[i].multiplicity > 0);
        CHECK(spec.entries[i].length <= spec.cutoff + 1e-9);
        CHECK(spec.entries[i].primitive == (spec.entries[i].power == 1));
        if (i > 0) CHECK(spec.entries[i - 1].length <= spec.entries[i].length);
    }
}

TEST_CASE("opposite twists give the same spectrum") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 3; ++trial) {
        auto s = random_genus2(rng, 1.0, 3.0);
        auto t = s;
        for (double& a : t.twists) a = -a;
        CAPTURE(serialize(s));
        const auto a = enumerate_spectrum(build_holonomy(s), 6.0);
        const auto b = enumerate_spectrum(build_holonomy(t), 6.0);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            if (a.entries[i].length > 6.0 - 1e-6) continue;
            CHECK(std::abs(a.entries[i].length - b.entries[i].length) < 1e-9);
            CHECK(a.entries[i].multiplicity == b.entries[i].multiplicity);
        }
    }
}

TEST_CASE("relabeling the nodes leaves the spectrum unchanged") {
    const FNSurface s{PantsGraph(2, {{0, 1}, {0, 1}, {0, 1}}, {0, 0}), {1.2, 2.3, 1.9}, {0.15, -0.35, 0.4}};
    const FNSurface t{relabel(s.graph, {1, 0}), s.lengths, s.twists};
    const auto a = enumerate_spectrum(build_holonomy(s), 5.0);
    const auto b = enumerate_spectrum(build_holonomy(t), 5.0);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(std::abs(a.entries[i].length - b.entries[i].length) < 1e-9);
        CHECK(a.entries[i].multiplicity == b.entries[i].multiplicity);
    }

    // Four pants on K4 with a relabeling that moves the root.
    const PantsGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {0, 0, 0, 0});
    const FNSurface u{k4, {2.0, 2.1, 2.2, 2.3, 2.4, 2.5}, {0.1, -0.2, 0.3, 0.0, 0.25, -0.45}};
    const FNSurface v{relabel(k4, {2, 3, 0, 1}), u.lengths, u.twists};
    const auto c = enumerate_spectrum(build_holonomy(u), 4.0);
    const auto d = enumerate_spectrum(build_holonomy(v), 4.0);
    REQUIRE(c.entries.size() == d.entries.size());
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
        CHECK(std::abs(c.entries[i].length - d.entries[i].length) < 1e-9);
        CHECK(c.entries[i].multiplicity == d.entries[i].multiplicity);
    }
}

TEST_CASE("thread count does not change the export") {
    const auto rep = build_holonomy(theta(1.3, 1.8, 2.6, 0.25, -0.4, 0.1));
    SpectrumOptions one, three;
    three.threads = 3;
    const auto a = export_spectrum(enumerate_spectrum(rep, 5.5, one));
    const auto b = export_spectrum(enumerate_spectrum(rep, 5.5, three));
    CHECK(a == b);
}

TEST_CASE("systole") {
    SUBCASE("a short curve is the systole") {
        const double s = 0.4;
        CHECK(s < short_geodesic_threshold());
        CHECK(systole(build_holonomy(theta(2.0, s, 3.0, 0.2, 0.1, 0.3))) == doctest::Approx(s).epsilon(1e-12));
        CHECK(systole(build_holonomy(dumbbell(2.5, 2.0, s, 0.0, 0.5, 0.0))) == doctest::Approx(s).epsilon(1e-12));
    }
    SUBCASE("never above the shortest pants curve") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 5; ++trial) {
            const auto s = random_genus2(rng, 1.0, 4.45);
            const double lmin = *std::min_element(s.lengths.begin(), s.lengths.end());
            CHECK(systole(build_holonomy(s)) <= lmin + 1e-9);
        }
    }
    SUBCASE("long pants curves with a shorter crossing curve") {
        // With all three curves long, the systole is some other geodesic.
        const double sys = systole(build_holonomy(theta(4.4, 4.4, 4.4)));
        CHECK(sys < 4.4);
    }
}

TEST_CASE("cutoff below the systole gives an empty spectrum") {
    const auto rep = build_holonomy(theta(kL, kL, kL));
    CHECK(enumerate_spectrum(rep, 2.0).empty());
    CHECK(enumerate_spectrum(rep, kL - 1e-6).empty());
}

TEST_CASE("cusped surfaces") {
    SUBCASE("thrice-punctured sphere") {
        const FNSurface s{PantsGraph(1, {}, {3}), {}, {}};
        const auto spec = enumerate_spectrum(build_holonomy(s), 4.0);
        // Figure-eight geodesics: trace 6.
        const double l = 2.0 * std::acosh(3.0);
        REQUIRE(!spec.empty());
        CHECK(spec.entries.front().length == doctest::Approx(l).epsilon(1e-12));
        CHECK(spec.count_near(l) == 3);
    }
    SUBCASE("once-punctured torus") {
        const FNSurface s{PantsGraph(1, {{0, 0}}, {1}), {1.5}, {0.2}};
        const auto spec = enumerate_spectrum(build_holonomy(s), 5.0);
        CHECK(std::abs(spec.nearest(1.5) - 1.5) < 1e-9);
        CHECK(systole(build_holonomy(s)) <= 1.5 + 1e-9);
    }
    SUBCASE("four-punctured sphere") {
        const FNSurface s{PantsGraph(2, {{0, 1}}, {2, 2}), {2.2}, {0.3}};
        const auto spec = enumerate_spectrum(build_holonomy(s), 5.0);
        CHECK(std::abs(spec.nearest(2.2) - 2.2) < 1e-9);
    }
}

TEST_CASE("growth bound holds on the test surfaces") {
    std::vector<FNSurface> surfaces{theta(kL, kL, kL), theta(0.3, 2.0, 4.0, 0.1, 0.2, 0.3),
                                    dumbbell(1.0, 4.45, 1.0, 0.5, -0.5, 0.0), dumbbell(0.6, 1.0, 0.6, 0.2, 0.0, -0.3)};
    for (const auto& s : surfaces) {
        const auto spec = enumerate_spectrum(build_holonomy(s), 8.0);
        const auto sig = validate_surface(s);
        for (double L : {4.0, 6.0, 8.0}) {
            const long long count = growth_count(spec, L, short_geodesic_threshold());
            CAPTURE(L);
            CHECK(static_cast<double>(count) <= growth_rate(L, sig.g, sig.n));
        }
    }
}

TEST_CASE("export and parse round trip") {
    const auto s = theta(1.1, 2.2, 3.3, 0.1, -0.2, 0.3);
    auto spec = enumerate_spectrum(build_holonomy(s), 4.5);
    CHECK(spec.surface_hash == surface_hash(s));
    const std::string text = export_spectrum(spec);
    const auto back = parse_spectrum(text);
    CHECK(back.entries == spec.entries);
    CHECK(back.cutoff == spec.cutoff);
    CHECK(back.surface_hash == spec.surface_hash);
    CHECK(export_spectrum(back) == text);
    CHECK_THROWS_AS(parse_spectrum("garbage"), Error);
    CHECK_THROWS_AS(parse_spectrum(text.substr(0, text.size() / 2)), Error);
}

TEST_CASE("resource guards") {
    const auto rep = build_holonomy(theta(kL, kL, kL));
    SpectrumOptions opt;
    opt.max_cutoff = 10.0;
    try {
        (void)enumerate_spectrum(rep, 11.0, opt);
        FAIL("expected ResourceLimit");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ResourceLimit);
    }
    opt.node_budget = 100;
    try {
        (void)enumerate_spectrum(rep, 8.0, opt);
        FAIL("expected ResourceLimit");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ResourceLimit);
    }
}
