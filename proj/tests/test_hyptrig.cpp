#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "isospec/errors.hpp"
#include "isospec/hyptrig.hpp"
#include "isospec/verify.hpp"

using namespace isospec;

namespace {

const double kS1 = std::asinh(1.0);

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode{0};
}

}  // namespace

TEST_CASE("hexagon third side") {
    CHECK(trig::hexagon_third_side(kS1, kS1, std::acosh(3.0)) == 0.0);
    CHECK(trig::hexagon_third_side(kS1, kS1, std::acosh(4.0)) == doctest::Approx(std::acosh(2.0)).epsilon(1e-12));
    CHECK(trig::hexagon_third_side(kS1, kS1, std::acosh(4.0)) == doctest::Approx(1.3170).epsilon(1e-4));
    CHECK(code_of([] { trig::hexagon_third_side(kS1, kS1, std::acosh(2.0)); }) == ErrorCode::DegenerateConfiguration);
    CHECK(code_of([] { trig::hexagon_third_side(0.0, 1.0, 1.0); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { trig::hexagon_third_side(1.0, NAN, 1.0); }) == ErrorCode::OutOfRange);
}

TEST_CASE("hexagon round trip") {
    // Solving the same relation for gamma gives back the input.
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> len(0.1, 5.0);
    int checked = 0;
    while (checked < 2000) {
        const double a = len(rng), b = len(rng), gamma = len(rng);
        double c;
        try {
            c = trig::hexagon_third_side(a, b, gamma);
        } catch (const Error&) {
            continue;
        }
        if (c < 1e-3) continue;
        const double cosh_gamma = (std::cosh(c) + std::cosh(a) * std::cosh(b)) / (std::sinh(a) * std::sinh(b));
        CHECK(std::acosh(cosh_gamma) == doctest::Approx(gamma).epsilon(1e-9));
        ++checked;
    }
}

TEST_CASE("crossed hexagon diagonal") {
    CHECK(trig::crossed_hexagon_diagonal(1.0, 1.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    const double p = std::acosh(2.0);
    CHECK(trig::crossed_hexagon_diagonal(p, p, 0.0) == doctest::Approx(std::acosh(7.0)).epsilon(1e-14));
    const double want = std::acosh(std::sinh(1.0) * std::sinh(2.0) * std::cosh(0.5) + std::cosh(1.0) * std::cosh(2.0));
    CHECK(trig::crossed_hexagon_diagonal(1.0, 2.0, 0.5) == doctest::Approx(want).epsilon(1e-14));
    CHECK(code_of([] { trig::crossed_hexagon_diagonal(1.0, 1.0, -0.1); }) == ErrorCode::OutOfRange);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> len(0.05, 6.0);
    for (int t = 0; t < 1000; ++t) {
        const double a = len(rng), b = len(rng), c = len(rng);
        CHECK(trig::crossed_hexagon_diagonal(a, b, 0.0) == doctest::Approx(a + b).epsilon(1e-13));
        const double base = trig::crossed_hexagon_diagonal(a, b, c);
        CHECK(trig::crossed_hexagon_diagonal(a * 1.01, b, c) > base);
        CHECK(trig::crossed_hexagon_diagonal(a, b * 1.01, c) > base);
        CHECK(trig::crossed_hexagon_diagonal(a, b, c * 1.01) > base);
    }
}

TEST_CASE("pentagon opposite side") {
    CHECK(trig::pentagon_opposite(kS1, kS1) == doctest::Approx(0.0).epsilon(1e-7));
    const double s2 = std::asinh(std::sqrt(2.0));
    CHECK(trig::pentagon_opposite(s2, s2) == doctest::Approx(2.0 * std::acosh(2.0)).epsilon(1e-12));
    CHECK(trig::pentagon_opposite(s2, s2) == doctest::Approx(2.6339).epsilon(1e-4));
    CHECK(code_of([] { trig::pentagon_opposite(std::asinh(0.5), std::asinh(0.5)); }) ==
          ErrorCode::DegenerateConfiguration);
    // Approaching the trirectangle the opposite side shrinks to nothing.
    double prev = INFINITY;
    for (double eps = 1e-1; eps > 1e-12; eps /= 10) {
        const double a = 2.0;
        const double b = std::asinh((1.0 + eps) / std::sinh(a));
        const double l = trig::pentagon_opposite(a, b);
        CHECK(l < prev);
        prev = l;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("trirectangle altitude") {
    CHECK(trig::trirectangle_altitude(kS1) == doctest::Approx(kS1).epsilon(1e-15));
    CHECK(trig::trirectangle_altitude(std::asinh(2.0)) == doctest::Approx(std::asinh(0.5)).epsilon(1e-15));
    CHECK(trig::trirectangle_altitude(0.1) == doctest::Approx(3.00).epsilon(1e-2));
    double prev = INFINITY;
    for (double a = 0.01; a < 10; a *= 1.3) {
        const double b = trig::trirectangle_altitude(a);
        CHECK(b < prev);
        CHECK(std::sinh(a) * std::sinh(b) == doctest::Approx(1.0).epsilon(1e-13));
        prev = b;
    }
    CHECK(code_of([] { trig::trirectangle_altitude(0.0); }) == ErrorCode::OutOfRange);
}

TEST_CASE("collar half-width") {
    CHECK(trig::collar_halfwidth(2.0 * kS1) == doctest::Approx(kS1).epsilon(1e-15));
    CHECK(trig::collar_halfwidth(4.0 * kS1) == doctest::Approx(std::asinh(1.0 / (2.0 * std::sqrt(2.0)))).epsilon(1e-14));
    CHECK(trig::collar_halfwidth(4.0 * kS1) == doctest::Approx(0.3466).epsilon(1e-3));
    CHECK(trig::collar_halfwidth(0.01) == doctest::Approx(5.99).epsilon(1e-3));
    double prev = INFINITY;
    for (double l = 1e-6; l < 20; l *= 1.5) {
        const double w = trig::collar_halfwidth(l);
        CHECK(w < prev);
        prev = w;
    }
    CHECK(trig::collar_halfwidth(1e-12) > 28.0);
}

TEST_CASE("pants perpendicular") {
    const double l = 2.0 * std::acosh(2.0);
    CHECK(trig::pants_perpendicular(l, l, l) == doctest::Approx(std::acosh(2.0)).epsilon(1e-14));
    CHECK(trig::pants_perpendicular(l, l, 0.0) == doctest::Approx(std::acosh(5.0 / 3.0)).epsilon(1e-14));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> len(0.05, 8.0);
    for (int t = 0; t < 1000; ++t) {
        const double a = len(rng), b = len(rng), c = (t % 5 == 0) ? 0.0 : len(rng);
        const double p = trig::pants_perpendicular(a, b, c);
        CHECK(p == trig::pants_perpendicular(b, a, c));
        // The pants hexagon: sides a/2, p, b/2 with c/2 opposite p.
        if (c > 0.0)
            CHECK(trig::hexagon_third_side(0.5 * a, 0.5 * b, p) == doctest::Approx(0.5 * c).epsilon(1e-8));
    }
}

TEST_CASE("identities agree with upper half-plane constructions") {
    VerifyOptions opt;
    opt.seed = 17;
    const auto report = verify_trig(opt);
    for (const auto& c : report.checks) {
        CAPTURE(c.name);
        CHECK(c.cases >= (c.name.find("rejects") == std::string::npos ? 1000 : 1));
        CHECK(c.failures == 0);
        CHECK(c.max_error <= c.tolerance);
    }
    CHECK(report.passed());
}
