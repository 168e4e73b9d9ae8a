#include "isospec/transversal.hpp"

#include <cmath>
#include <sstream>

#include "isospec/hyptrig.hpp"

namespace isospec {

namespace {

double boundary_length(const FNSurface& s, const Slot& slot) {
    return slot.free ? 0.0 : s.lengths[slot.edge];
}

void require_closed_sides(const GluingNeighborhood& nb, const char* op) {
    if (!(nb.xi1 > 0.0) || !(nb.eta2 > 0.0))
        fail(ErrorCode::UnsupportedCuspCase,
             std::string(op) + ": xi1 and eta2 must be closed curves; the cusped case has no closed form here");
    if (!(nb.l_gamma > 0.0)) fail(ErrorCode::OutOfRange, std::string(op) + ": l_gamma must be positive");
}

}  // namespace

GluingNeighborhood neighborhood(const FNSurface& s, int edge) {
    validate_surface(s);
    if (edge < 0 || edge >= s.graph.edge_count())
        fail(ErrorCode::InvalidEdge, "no internal edge " + std::to_string(edge));
    const auto [v, w] = s.graph.edges()[edge];
    if (v == w)
        fail(ErrorCode::LoopEdge, "edge " + std::to_string(edge) +
                                      " glues a pair of pants to itself; no transversal formula for that case");
    const int i = s.graph.slot_of(edge, 0);
    const int j = s.graph.slot_of(edge, 1);
    const auto sv = s.graph.slots(v);
    const auto sw = s.graph.slots(w);
    GluingNeighborhood nb;
    nb.l_gamma = s.lengths[edge];
    nb.xi1 = boundary_length(s, sv[(i + 1) % 3]);
    nb.xi2 = boundary_length(s, sv[(i + 2) % 3]);
    nb.eta2 = boundary_length(s, sw[(j + 1) % 3]);
    nb.eta1 = boundary_length(s, sw[(j + 2) % 3]);
    nb.alpha = s.twists[edge];
    return nb;
}

Perpendiculars perpendiculars(const GluingNeighborhood& nb) {
    require_closed_sides(nb, "perpendiculars");
    return {trig::pants_perpendicular(nb.l_gamma, nb.xi1, nb.xi2),
            trig::pants_perpendicular(nb.l_gamma, nb.eta2, nb.eta1)};
}

double interior_perpendicular(const GluingNeighborhood& nb) {
    const auto [p, pp] = perpendiculars(nb);
    return trig::crossed_hexagon_diagonal(p, pp, std::abs(nb.alpha) * nb.l_gamma);
}

double transversal_length(const GluingNeighborhood& nb) {
    require_closed_sides(nb, "transversal_length");
    const double phi = interior_perpendicular(nb);
    return 2.0 * trig::hexagon_third_side(0.5 * nb.xi1, 0.5 * nb.eta2, phi);
}

std::vector<double> twists_from_transversal(const GluingNeighborhood& nb, double delta_target) {
    require_closed_sides(nb, "twists_from_transversal");
    if (!(delta_target > 0.0) || !std::isfinite(delta_target))
        fail(ErrorCode::OutOfRange, "twists_from_transversal: target must be a positive length");
    GluingNeighborhood flat = nb;
    flat.alpha = 0.0;
    const double delta0 = transversal_length(flat);
    const auto [p, pp] = perpendiculars(nb);

    // cosh(delta/2) - cosh(delta0/2) = S sinh p sinh p' (cosh(alpha l) - 1).
    const double gap = 2.0 * std::sinh(0.25 * (delta_target + delta0)) * std::sinh(0.25 * (delta_target - delta0));
    const double x = std::cosh(0.5 * delta_target);
    if (std::abs(gap) <= trig::kIdentityTol * x) return {0.0};
    if (gap < 0.0) return {};
    const double scale = std::sinh(0.5 * nb.xi1) * std::sinh(0.5 * nb.eta2) * std::sinh(p) * std::sinh(pp);
    const double a = trig::acosh1p(gap / scale) / nb.l_gamma;
    if (a > 0.5 * (1.0 + trig::kIdentityTol)) return {};
    const double clamped = std::min(a, 0.5);
    return {-clamped, clamped};
}

double transversal_upper_bound(double B, double I) {
    if (!(I > 0.0) || !(B > 0.0) || I > B || !std::isfinite(B)) {
        std::ostringstream os;
        os << "transversal_upper_bound: need 0 < I <= B, got B = " << B << ", I = " << I;
        fail(ErrorCode::OutOfRange, os.str());
    }
    return 3.0 * B - 4.0 * std::log(I) + 12.0 * std::log(2.0);
}

double pentagon_altitude_bound(double B, double l_gamma) {
    if (!(B > 0.0) || !(l_gamma > 0.0))
        fail(ErrorCode::OutOfRange, "pentagon_altitude_bound: B and l_gamma must be positive");
    return std::asinh(std::cosh(0.5 * B) / std::sinh(0.25 * l_gamma));
}

}  // namespace isospec
