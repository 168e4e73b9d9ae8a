#pragma once

#include <array>
#include <complex>

namespace isospec {

using Complex = std::complex<double>;

/// Orientation-preserving isometry of the upper half-plane: a real 2x2
/// matrix [[a, b], [c, d]] with determinant 1, up to sign.
struct Isometry {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Isometry identity() { return {}; }
    static Isometry diagonal(double lambda) { return {lambda, 0.0, 0.0, 1.0 / lambda}; }
    /// Translation by distance t along the imaginary axis, towards infinity.
    static Isometry translation(double t);
    /// Rotation by pi about i: z -> -1/z.
    static Isometry half_turn() { return {0.0, -1.0, 1.0, 0.0}; }

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    double norm() const;  // max |entry|
    Isometry inverse() const { return {d, -b, -c, a}; }
    /// Rescales so the determinant is exactly 1 again.
    Isometry normalized() const;

    Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }

    friend Isometry operator*(const Isometry& x, const Isometry& y);
};

/// Largest entrywise difference between x and +y or -y, whichever is closer.
double projective_distance(const Isometry& x, const Isometry& y);

/// Conjugation by the reflection z -> -conj(z).
Isometry mirror(const Isometry& m);

enum class IsometryKind { Elliptic, Parabolic, Hyperbolic };

const char* to_string(IsometryKind k);

struct ElementLength {
    IsometryKind kind = IsometryKind::Elliptic;
    double length = 0.0;  // translation length; 0 unless hyperbolic
};

/// Trace classification with |tr| = 2 judged within `tol`; hyperbolic
/// elements get 2 arccosh(|tr| / 2).
ElementLength element_length(const Isometry& m, double tol = 1e-9);

/// Translation length from a trace magnitude, stable near |tr| = 2.
double length_from_trace(double abs_trace);

/// Fixed points on the boundary as projective vectors (p, q) ~ p/q.
struct BoundaryPoint {
    double p = 0.0, q = 1.0;
    bool at_infinity() const { return q == 0.0; }
    Complex to_disk() const;  // image under the Cayley map z -> (z - i)/(z + i)
};

/// Repelling and attracting fixed points of a hyperbolic element.
struct Axis {
    BoundaryPoint repelling, attracting;
};
Axis axis_of(const Isometry& m);

/// Fixed point of a parabolic element.
BoundaryPoint parabolic_fixed_point(const Isometry& m);

/// Hyperbolic distance in the upper half-plane.
double distance_uhp(Complex z, Complex w);

/// The isometry of the disk model conjugate to an upper half-plane one
/// under z -> (z - i)/(z + i): z -> (alpha z + beta) / (conj(beta) z + conj(alpha)).
struct DiskIsometry {
    Complex alpha{1.0, 0.0}, beta{0.0, 0.0};

    static DiskIsometry from(const Isometry& m);
    Isometry to_uhp() const;

    DiskIsometry inverse() const { return {std::conj(alpha), -beta}; }
    Complex apply(Complex z) const { return (alpha * z + beta) / (std::conj(beta) * z + std::conj(alpha)); }
    /// Image of the origin.
    Complex origin_image() const { return beta / std::conj(alpha); }
    /// cosh of the distance the origin is moved.
    double cosh_displacement() const { return 2.0 * std::norm(alpha) - 1.0; }
    double abs_trace() const { return 2.0 * std::abs(alpha.real()); }
    /// Hyperboloid spatial coordinates of the origin's image.
    Complex origin_spatial() const { return 2.0 * alpha * beta; }
    /// Rescales so |alpha|^2 - |beta|^2 = 1 again.
    DiskIsometry normalized() const {
        const double s = 1.0 / std::sqrt(std::norm(alpha) - std::norm(beta));
        return {alpha * s, beta * s};
    }

    friend DiskIsometry operator*(const DiskIsometry& x, const DiskIsometry& y) {
        return {x.alpha * y.alpha + x.beta * std::conj(y.beta), x.alpha * y.beta + x.beta * std::conj(y.alpha)};
    }
};

/// Boundary fixed points of a hyperbolic disk isometry, repelling first.
std::array<Complex, 2> disk_fixed_points(const DiskIsometry& m);

}  // namespace isospec
