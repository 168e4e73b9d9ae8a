#pragma once

// Hyperbolic trigonometry of right-angled polygons.
//
// Every function here is a closed-form identity. Lengths are hyperbolic
// lengths; a boundary length of 0 stands for a cusp where that is meaningful.

namespace isospec::trig {

/// Relative tolerance for identities evaluated in closed form.
inline constexpr double kIdentityTol = 1e-12;
/// Tolerance used when comparing against an explicit geometric construction.
inline constexpr double kOracleTol = 1e-9;

/// arccosh(1 + u) without the cancellation of std::acosh near 1.
double acosh1p(double u);

/// Side opposite `gamma` in a right-angled hexagon whose sides a, gamma, b
/// are consecutive: cosh c = sinh a sinh b cosh gamma - cosh a cosh b.
/// Returns 0 when the right-hand side is 1 (within tolerance) and throws
/// DegenerateConfiguration when it is below 1.
double hexagon_third_side(double a, double b, double gamma);

/// Common perpendicular between two geodesics that leave a third geodesic
/// perpendicularly on opposite sides, at feet separated by `c`:
/// cosh phi = sinh p sinh p' cosh c + cosh p cosh p'.
double crossed_hexagon_diagonal(double p, double p_prime, double c);

/// Full length l of the pants curve in a right-angled pentagon with adjacent
/// sides a, b: cosh(l/2) = sinh a sinh b.
double pentagon_opposite(double a, double b);

/// The finite side b adjacent to a in a trirectangle with one ideal vertex:
/// sinh a sinh b = 1.
double trirectangle_altitude(double a);

/// Half-width of the standard collar around a simple closed geodesic of
/// length l: sinh(w) sinh(l/2) = 1.
double collar_halfwidth(double l);

/// Length of the common perpendicular between boundaries i and j of a pair
/// of pants with boundary lengths (l_i, l_j, l_k). l_k = 0 encodes a cusp.
double pants_perpendicular(double l_i, double l_j, double l_k);

}  // namespace isospec::trig
