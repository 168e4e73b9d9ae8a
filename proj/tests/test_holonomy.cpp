#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "isospec/holonomy.hpp"
#include "isospec/hyptrig.hpp"

using namespace isospec;

namespace {

const double kL = 2.0 * std::acosh(2.0);

FNSurface theta(double l0, double l1, double l2, double a0 = 0, double a1 = 0, double a2 = 0) {
    return {PantsGraph(2, {{0, 1}, {0, 1}, {0, 1}}, {0, 0}), {l0, l1, l2}, {a0, a1, a2}};
}

// Distance from z to the geodesic with real endpoints u1, u2 (either may be inf).
double distance_to_geodesic(Complex z, double u1, double u2) {
    Complex w;
    if (std::isinf(u1)) w = z - u2;
    else if (std::isinf(u2)) w = z - u1;
    else w = (z - u1) / (z - u2);  // endpoints to 0 and infinity
    return std::asinh(std::abs(w.real()) / std::abs(w.imag()));
}

double distance_to_axis(Complex z, const Isometry& m) {
    const auto ax = axis_of(m);
    return distance_to_geodesic(z, ax.repelling.p / ax.repelling.q, ax.attracting.p / ax.attracting.q);
}

void check_pants(double l0, double l1, double l2) {
    const auto pg = pants_group(l0, l1, l2);
    const std::array<double, 3> L{l0, l1, l2};
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(pg.boundary[k].det() - 1.0) < 1e-12);
        if (L[k] == 0.0) {
            CHECK(std::abs(std::abs(pg.boundary[k].trace()) - 2.0) < 1e-12);
        } else {
            CHECK(std::abs(element_length(pg.boundary[k]).length - L[k]) < 1e-9);
        }
    }
    CHECK(projective_distance(pg.boundary[0] * pg.boundary[1] * pg.boundary[2], Isometry::identity()) < 1e-9);
    for (int k = 0; k < 3; ++k) {
        const int next = (k + 1) % 3;
        if (L[k] == 0.0 || L[next] == 0.0) continue;
        const Isometry f = boundary_frame(pg, k);
        const Complex foot = f.apply(Complex(0.0, 1.0));
        CHECK(distance_to_axis(foot, pg.boundary[k]) < 1e-9);
        CHECK(distance_to_axis(foot, pg.boundary[next]) ==
              doctest::Approx(trig::pants_perpendicular(L[k], L[next], L[(k + 2) % 3])).epsilon(1e-9));
        // The frame points up the axis in the translation direction.
        const Complex ahead = pg.boundary[k].apply(foot);
        const Complex local = f.inverse().apply(ahead);
        CHECK(std::abs(local.real()) < 1e-9 * local.imag());
        CHECK(local.imag() > 1.0);
    }
}

}  // namespace

TEST_CASE("element_length classification") {
    CHECK(element_length({2.0, 1.0, 1.0, 1.0}).length == doctest::Approx(2.0 * std::acosh(1.5)));
    const Isometry four{2.0, std::sqrt(3.0), std::sqrt(3.0), 2.0};
    CHECK(element_length(four).length == doctest::Approx(kL).epsilon(1e-12));
    CHECK(element_length({-2.0, -std::sqrt(3.0), -std::sqrt(3.0), -2.0}).length ==
          doctest::Approx(kL).epsilon(1e-12));
    CHECK(element_length({1.0, 1.0, 0.0, 1.0}).kind == IsometryKind::Parabolic);
    CHECK(element_length(Isometry::half_turn()).kind == IsometryKind::Elliptic);
}

TEST_CASE("disk model agrees with the upper half-plane") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        Isometry m{u(rng), u(rng), u(rng), u(rng)};
        if (m.det() < 0.1) continue;
        m = m.normalized();
        Isometry n{u(rng), u(rng), u(rng), u(rng)};
        if (n.det() < 0.1) continue;
        n = n.normalized();
        const auto dm = DiskIsometry::from(m), dn = DiskIsometry::from(n);
        CHECK(projective_distance((dm * dn).to_uhp(), m * n) < 1e-12);
        CHECK(dm.abs_trace() == doctest::Approx(std::abs(m.trace())));
        const Complex z(u(rng), std::abs(u(rng)) + 0.1);
        const Complex cz = (z - Complex(0, 1)) / (z + Complex(0, 1));
        const Complex mz = m.apply(z);
        CHECK(std::abs(dm.apply(cz) - (mz - Complex(0, 1)) / (mz + Complex(0, 1))) < 1e-10);
        CHECK(std::acosh(dm.cosh_displacement()) ==
              doctest::Approx(distance_uhp(Complex(0, 1), m.apply(Complex(0, 1)))).epsilon(1e-9));
        if (std::abs(m.trace()) > 2.1) {
            const auto fp = disk_fixed_points(dm);
            const auto ax = axis_of(m);
            CHECK(std::abs(fp[0] - ax.repelling.to_disk()) < 1e-9);
            CHECK(std::abs(fp[1] - ax.attracting.to_disk()) < 1e-9);
        }
    }
}

TEST_CASE("pants groups and boundary frames") {
    check_pants(kL, kL, kL);
    check_pants(1.0, 2.0, 3.0);
    check_pants(0.1, 4.0, 7.5);
    check_pants(2.0, 1.0, 0.0);
    check_pants(2.0, 0.0, 0.0);
    check_pants(0.0, 0.0, 0.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> len(0.05, 12.0);
    for (int i = 0; i < 300; ++i) check_pants(len(rng), len(rng), len(rng));
}

TEST_CASE("symmetric theta surface has trace 4 curve elements") {
    const auto rep = build_holonomy(theta(kL, kL, kL));
    CHECK(rep.signature.g == 2);
    REQUIRE(rep.curve_generator.size() == 3);
    for (int c : rep.curve_generator) CHECK(std::abs(rep.generators[c].trace()) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rep.relator_residual < 1e-12);
    CHECK(rep.relators.size() == 5);
}

TEST_CASE("relators and curve lengths on random surfaces") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> len(0.3, 5.0), tw(-0.5, 0.5);
    const std::vector<PantsGraph> graphs = {
        PantsGraph(2, {{0, 1}, {0, 1}, {0, 1}}, {0, 0}),
        PantsGraph(2, {{0, 0}, {0, 1}, {1, 1}}, {0, 0}),
        PantsGraph(1, {{0, 0}}, {1}),
        PantsGraph(2, {{0, 1}}, {2, 2}),
        PantsGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}}, {0, 0, 0, 0}),
    };
    for (const auto& G : graphs) {
        for (int trial = 0; trial < 40; ++trial) {
            FNSurface s{G, {}, {}};
            for (int e = 0; e < G.edge_count(); ++e) {
                s.lengths.push_back(len(rng));
                s.twists.push_back(tw(rng));
            }
            const auto rep = build_holonomy(s);
            for (const auto& w : rep.relators) {
                double scale = 1.0;
                for (const auto& l : w) scale *= rep.generators[l.generator].norm();
                CHECK(projective_distance(evaluate(rep, w), Isometry::identity()) < 1e-12 * std::max(1.0, scale));
            }
            for (int e = 0; e < G.edge_count(); ++e)
                CHECK(element_length(rep.generators[rep.curve_generator[e]]).length ==
                      doctest::Approx(s.lengths[e]).epsilon(1e-9));
            CHECK(rep.cusp_generator.size() == static_cast<std::size_t>(G.free_edge_count()));
            // Determinant is 1 up to rounding of the entry products.
            for (const auto& g : rep.generators) CHECK(std::abs(g.det() - 1.0) < 1e-12 + 1e-15 * g.norm() * g.norm());
        }
    }
}

TEST_CASE("once-punctured torus cusp word is parabolic") {
    const auto rep = build_holonomy({PantsGraph(1, {{0, 0}}, {1}), {1.5}, {0.25}});
    REQUIRE(rep.cusp_generator.size() == 1);
    CHECK(element_length(rep.generators[rep.cusp_generator[0]]).kind == IsometryKind::Parabolic);
    // Commutator of the curve and stable letter is the cusp, up to orientation.
    const Isometry a = rep.generators[rep.curve_generator[0]];
    const Isometry t = rep.generators[1];
    const Isometry comm = a * t * a.inverse() * t.inverse();
    CHECK(std::abs(std::abs(comm.trace()) - 2.0) < 1e-9);
}

TEST_CASE("basepoint candidates lie in the upper half-plane") {
    const auto rep = build_holonomy(theta(1.0, 2.0, 3.0, 0.1, -0.2, 0.3));
    CHECK(rep.basepoint_candidates.size() == 8);
    for (Complex z : rep.basepoint_candidates) CHECK(z.imag() > 0.0);
}

TEST_CASE("long curves either build cleanly or report instability") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> len(0.1, 12.0), tw(-0.5, 0.5);
    int built = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = theta(len(rng), len(rng), len(rng), tw(rng), tw(rng), tw(rng));
        try {
            const auto rep = build_holonomy(s);
            CHECK(rep.relator_residual <= kHolonomyTol);
            CHECK(rep.length_residual <= kHolonomyTol);
            ++built;
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NumericalInstability);
        }
    }
    CHECK(built > 0);
}
