#pragma once

#include <vector>

#include "isospec/surface.hpp"

namespace isospec {

/// The two pants Y, Y' meeting along a curve gamma, seen from gamma.
/// xi1/eta2 are the boundaries the perpendiculars p, p' run to; a boundary
/// length of 0 encodes a cusp. alpha is the twist as a fraction of l_gamma.
struct GluingNeighborhood {
    double l_gamma = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double alpha = 0.0;
};

/// Reads the neighborhood of internal edge `edge` = (v, w) off the surface.
/// With v's half-edge in slot i and w's in slot j: xi1 is slot i+1 at v,
/// xi2 slot i+2, eta2 slot j+1 at w, eta1 slot j+2 (indices mod 3). This is
/// the pairing the gluing in build_holonomy uses for twist zero.
/// Throws LoopEdge when v == w and InvalidEdge for a bad index.
GluingNeighborhood neighborhood(const FNSurface& s, int edge);

/// Perpendiculars p (gamma to xi1) and p' (gamma to eta2).
struct Perpendiculars {
    double p = 0.0;
    double p_prime = 0.0;
};
Perpendiculars perpendiculars(const GluingNeighborhood& nb);

/// phi with cosh phi = sinh p sinh p' cosh(alpha l) + cosh p cosh p'.
double interior_perpendicular(const GluingNeighborhood& nb);

/// delta with cosh(delta/2) = sinh(xi1/2) sinh(eta2/2) cosh phi
///                            - cosh(xi1/2) cosh(eta2/2).
/// Throws UnsupportedCuspCase when xi1 or eta2 is a cusp.
double transversal_length(const GluingNeighborhood& nb);

/// Every alpha in [-1/2, 1/2] whose transversal has length delta_target
/// (nb.alpha is ignored): {} below the minimum or beyond |alpha| = 1/2,
/// {0} at the minimum, {-a, +a} otherwise.
std::vector<double> twists_from_transversal(const GluingNeighborhood& nb, double delta_target);

/// 3B - 4 log I + 12 log 2. Throws OutOfRange unless 0 < I <= B.
double transversal_upper_bound(double B, double I);

/// arcsinh(cosh(B/2) / sinh(l_gamma / 4)), the bound on the altitude from a
/// pants curve of length l_gamma to the far side of its pentagon.
double pentagon_altitude_bound(double B, double l_gamma);

}  // namespace isospec
