#include "isospec/hyptrig.hpp"

#include <cmath>
#include <sstream>

#include "isospec/errors.hpp"

namespace isospec::trig {

namespace {

void require_positive(double x, const char* name, const char* op) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        std::ostringstream os;
        os << op << ": " << name << " must be a positive finite length, got " << x;
        fail(ErrorCode::OutOfRange, os.str());
    }
}

// arccosh of a value that should be >= 1; `scale` is the magnitude of the
// terms that produced it, so cancellation noise is judged relative to it.
double acosh_at_least_one(double value, double scale, const char* op) {
    // Within rounding of 1 the side is degenerate; acosh would turn the
    // noise into a length of order sqrt(noise).
    if (std::abs(value - 1.0) <= kIdentityTol * std::max(1.0, scale)) return 0.0;
    if (value > 1.0) return std::acosh(value);
    std::ostringstream os;
    os << op << ": no such polygon (cosh of the side would be " << value << ")";
    fail(ErrorCode::DegenerateConfiguration, os.str());
}

}  // namespace

double acosh1p(double u) {
    if (u < 0.0) u = 0.0;
    return std::log1p(u + std::sqrt(u * (2.0 + u)));
}

double hexagon_third_side(double a, double b, double gamma) {
    require_positive(a, "a", "hexagon_third_side");
    require_positive(b, "b", "hexagon_third_side");
    require_positive(gamma, "gamma", "hexagon_third_side");
    const double big = std::sinh(a) * std::sinh(b) * std::cosh(gamma);
    const double small = std::cosh(a) * std::cosh(b);
    return acosh_at_least_one(big - small, big, "hexagon_third_side");
}

double crossed_hexagon_diagonal(double p, double p_prime, double c) {
    require_positive(p, "p", "crossed_hexagon_diagonal");
    require_positive(p_prime, "p_prime", "crossed_hexagon_diagonal");
    if (!(c >= 0.0) || !std::isfinite(c))
        fail(ErrorCode::OutOfRange, "crossed_hexagon_diagonal: c must be >= 0");
    // cosh(phi) - 1 = sinh p sinh p' (cosh c - 1) + (cosh(p + p') - 1), all terms >= 0.
    const double sp = std::sinh(p) * std::sinh(p_prime);
    const double u = sp * 2.0 * std::sinh(0.5 * c) * std::sinh(0.5 * c) +
                     2.0 * std::sinh(0.5 * (p + p_prime)) * std::sinh(0.5 * (p + p_prime));
    return acosh1p(u);
}

double pentagon_opposite(double a, double b) {
    require_positive(a, "a", "pentagon_opposite");
    require_positive(b, "b", "pentagon_opposite");
    const double prod = std::sinh(a) * std::sinh(b);
    return 2.0 * acosh_at_least_one(prod, prod, "pentagon_opposite");
}

double trirectangle_altitude(double a) {
    require_positive(a, "a", "trirectangle_altitude");
    return std::asinh(1.0 / std::sinh(a));
}

double collar_halfwidth(double l) {
    require_positive(l, "l", "collar_halfwidth");
    return std::asinh(1.0 / std::sinh(0.5 * l));
}

double pants_perpendicular(double l_i, double l_j, double l_k) {
    require_positive(l_i, "l_i", "pants_perpendicular");
    require_positive(l_j, "l_j", "pants_perpendicular");
    if (!(l_k >= 0.0) || !std::isfinite(l_k))
        fail(ErrorCode::OutOfRange, "pants_perpendicular: l_k must be >= 0 (0 encodes a cusp)");
    const double hi = 0.5 * l_i;
    const double hj = 0.5 * l_j;
    // cosh p - 1 = (cosh(l_k/2) + cosh(hi - hj)) / (sinh hi sinh hj); both terms positive.
    const double denom = std::sinh(hi) * std::sinh(hj);
    const double u = (std::cosh(0.5 * l_k) + std::cosh(hi - hj)) / denom;
    return acosh1p(u);
}

}  // namespace isospec::trig
