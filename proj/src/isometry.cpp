#include "isospec/isometry.hpp"

#include <algorithm>
#include <cmath>

#include "isospec/hyptrig.hpp"

namespace isospec {

Isometry Isometry::translation(double t) { return diagonal(std::exp(0.5 * t)); }

double Isometry::norm() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

Isometry Isometry::normalized() const {
    const double s = 1.0 / std::sqrt(det());
    return {a * s, b * s, c * s, d * s};
}

Isometry operator*(const Isometry& x, const Isometry& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

double projective_distance(const Isometry& x, const Isometry& y) {
    auto dist = [&](double s) {
        return std::max({std::abs(x.a - s * y.a), std::abs(x.b - s * y.b), std::abs(x.c - s * y.c),
                         std::abs(x.d - s * y.d)});
    };
    return std::min(dist(1.0), dist(-1.0));
}

Isometry mirror(const Isometry& m) { return {m.a, -m.b, -m.c, m.d}; }

const char* to_string(IsometryKind k) {
    switch (k) {
        case IsometryKind::Elliptic: return "elliptic";
        case IsometryKind::Parabolic: return "parabolic";
        case IsometryKind::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

double length_from_trace(double abs_trace) { return 2.0 * trig::acosh1p(0.5 * abs_trace - 1.0); }

ElementLength element_length(const Isometry& m, double tol) {
    const double t = std::abs(m.trace());
    if (std::abs(t - 2.0) <= tol) return {IsometryKind::Parabolic, 0.0};
    if (t < 2.0) return {IsometryKind::Elliptic, 0.0};
    return {IsometryKind::Hyperbolic, length_from_trace(t)};
}

Complex BoundaryPoint::to_disk() const {
    const Complex num(p, -q), den(p, q);
    return num / den;
}

namespace {

// Eigenvector of m for eigenvalue lambda, as a projective boundary point.
BoundaryPoint eigenvector(const Isometry& m, double lambda) {
    // (b, lambda - a) and (lambda - d, c) both solve the eigen equation;
    // take the better conditioned one.
    const double n1 = std::hypot(m.b, lambda - m.a);
    const double n2 = std::hypot(lambda - m.d, m.c);
    BoundaryPoint v = n1 >= n2 ? BoundaryPoint{m.b / n1, (lambda - m.a) / n1}
                               : BoundaryPoint{(lambda - m.d) / n2, m.c / n2};
    if (v.q < 0.0 || (v.q == 0.0 && v.p < 0.0)) {
        v.p = -v.p;
        v.q = -v.q;
    }
    return v;
}

}  // namespace

Axis axis_of(const Isometry& m) {
    const double t = m.trace();
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0));
    // Roots without cancellation: the large one directly, the small one as 1/large.
    const double big = 0.5 * (t + std::copysign(disc, t));
    const double small = 1.0 / big;
    return {eigenvector(m, small), eigenvector(m, big)};
}

BoundaryPoint parabolic_fixed_point(const Isometry& m) { return eigenvector(m, 0.5 * m.trace()); }

double distance_uhp(Complex z, Complex w) {
    const double u = std::norm(z - w) / (2.0 * z.imag() * w.imag());
    return trig::acosh1p(u);
}

DiskIsometry DiskIsometry::from(const Isometry& m) {
    return {Complex(0.5 * (m.a + m.d), 0.5 * (m.b - m.c)), Complex(0.5 * (m.a - m.d), -0.5 * (m.b + m.c))};
}

Isometry DiskIsometry::to_uhp() const {
    // Inverse of `from`: a + d = 2 Re alpha, b - c = 2 Im alpha, a - d = 2 Re beta, b + c = -2 Im beta.
    const double a = alpha.real() + beta.real();
    const double d = alpha.real() - beta.real();
    const double b = alpha.imag() - beta.imag();
    const double c = -alpha.imag() - beta.imag();
    return {a, b, c, d};
}

std::array<Complex, 2> disk_fixed_points(const DiskIsometry& m) {
    const double re = m.alpha.real();
    const double root = std::sqrt(std::max(0.0, re * re - 1.0));
    const Complex bb = std::conj(m.beta);
    Complex z1 = Complex(-root, m.alpha.imag()) / bb;
    Complex z2 = Complex(root, m.alpha.imag()) / bb;
    z1 /= std::abs(z1);
    z2 /= std::abs(z2);
    // |g'(z)| = 1 / |conj(beta) z + conj(alpha)|^2 is below 1 at the attracting point.
    const double s1 = std::abs(bb * z1 + std::conj(m.alpha));
    const double s2 = std::abs(bb * z2 + std::conj(m.alpha));
    if (s1 > s2) return {z2, z1};
    return {z1, z2};
}

}  // namespace isospec
