#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isospec/dirichlet.hpp"
#include "isospec/holonomy.hpp"

namespace isospec {

struct SpectrumEntry {
    double length = 0.0;
    int multiplicity = 0;  // unoriented closed geodesics with this length
    bool primitive = true;
    int power = 1;  // k when the geodesic is the k-th iterate of a primitive one

    bool operator==(const SpectrumEntry&) const = default;
};

/// Closed geodesics of length at most `cutoff`, sorted by length, then power.
/// Traces are compared with a relative slack of 1e-12, so a length sitting
/// on the cutoff may be listed a rounding error above it.
struct LengthSpectrum {
    Signature signature;
    double cutoff = 0.0;
    std::vector<SpectrumEntry> entries;

    std::uint64_t surface_hash = 0;
    double relator_residual = 0.0;
    double length_residual = 0.0;
    double cusp_residual = 0.0;
    double rho = 0.0;  // covering radius of the truncated Dirichlet polygon
    long long nodes = 0;

    bool empty() const { return entries.empty(); }
    /// Total multiplicity of entries within `tol` of `length`.
    int count_near(double length, double tol = 1e-9) const;
    /// Closest listed length to `length` (inf when empty).
    double nearest(double length) const;
};

struct SpectrumOptions {
    int threads = 1;
    long long node_budget = 4'000'000'000LL;
    double max_cutoff = 40.0;
    DirichletOptions dirichlet;
};

/// Enumerates all closed geodesics up to `cutoff` by walking the group ball
/// of the Dirichlet tiling. Throws ResourceLimit above max_cutoff or when
/// the node budget runs out.
LengthSpectrum enumerate_spectrum(const HolonomyRep& rep, double cutoff, const SpectrumOptions& opt = {});
LengthSpectrum enumerate_spectrum(const HolonomyRep& rep, const DirichletDomain& dom, double cutoff,
                                  const SpectrumOptions& opt = {});

/// Length of the shortest closed geodesic.
double systole(const HolonomyRep& rep, const SpectrumOptions& opt = {});

/// Number of closed geodesics of length <= L, leaving out iterates of
/// geodesics shorter than `short_threshold`.
long long growth_count(const LengthSpectrum& s, double L, double short_threshold);

/// Text table with a header (surface hash, cutoff, residuals).
std::string export_spectrum(const LengthSpectrum& s);
/// Inverse of export_spectrum; throws ParseError.
LengthSpectrum parse_spectrum(std::string_view text);

}  // namespace isospec
