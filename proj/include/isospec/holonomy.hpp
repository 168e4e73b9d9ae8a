#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "isospec/isometry.hpp"
#include "isospec/surface.hpp"

namespace isospec {

/// Boundary elements X0, X1, X2 of a pair of pants with X0 X1 X2 = 1, each
/// oriented so the pants lies to its left. Boundary length 0 gives a
/// parabolic element (a cusp).
struct PantsGroup {
    std::array<double, 3> lengths{};
    std::array<Isometry, 3> boundary;
};

PantsGroup pants_group(double l0, double l1, double l2);

/// Frame at boundary k (closed): maps i to the foot on axis(X_k) of the
/// common perpendicular to boundary k+1, and the upward imaginary axis onto
/// axis(X_k) in its translation direction.
Isometry boundary_frame(const PantsGroup& pants, int k);

/// One letter of a word in the generators.
struct Letter {
    int generator = 0;
    bool inverse = false;
};
using Word = std::vector<Letter>;

/// The surface group of an FNSurface as explicit isometries.
///
/// Generator order: one per internal edge (the pants curve, seen from the
/// edge's first endpoint), then one stable letter per edge outside the BFS
/// spanning tree, then the remaining pants boundary elements. Relators: the
/// pants relation at every node and the identification across every edge.
struct HolonomyRep {
    Signature signature;
    std::vector<Isometry> generators;
    std::vector<std::string> names;
    std::vector<Word> relators;
    std::vector<std::string> relator_names;
    std::vector<int> curve_generator;  // per internal edge
    std::vector<int> cusp_generator;   // per free edge
    std::vector<double> curve_lengths;

    double relator_residual = 0.0;  // largest relative entrywise residual
    double length_residual = 0.0;   // largest |l(curve element) - l_i|
    double cusp_residual = 0.0;     // largest ||tr| - 2| over cusp elements

    /// Points of the upper half-plane to try as Dirichlet centers.
    std::vector<Complex> basepoint_candidates;
    std::uint64_t surface_hash = 0;
};

Isometry evaluate(const HolonomyRep& rep, const Word& word);

/// Builds and checks the representation. Throws NumericalInstability when a
/// relator, curve length or cusp trace misses its tolerance.
HolonomyRep build_holonomy(const FNSurface& s);

/// Residual tolerance used by build_holonomy.
inline constexpr double kHolonomyTol = 1e-9;

}  // namespace isospec
