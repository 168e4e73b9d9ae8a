#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isospec/errors.hpp"
#include "isospec/pantsgraph.hpp"

namespace isospec {

/// Fenchel-Nielsen data: a pants graph with one length and one twist per
/// internal edge, positional in edge order. Twists are fractions of the
/// curve length, so the metric displacement along edge i is twists[i] * lengths[i].
struct FNSurface {
    PantsGraph graph;
    std::vector<double> lengths;
    std::vector<double> twists;
};

enum class SurfaceClass { FiniteArea, Closed, PuncturedSphere, Genus2Closed };

const char* to_string(SurfaceClass c);
/// Accepts the names printed by to_string; throws ParseError otherwise.
SurfaceClass parse_surface_class(std::string_view name);

/// A class together with its Bers constant B and a systole lower bound I.
struct BersContext {
    SurfaceClass surface_class = SurfaceClass::FiniteArea;
    int g = 0;
    int n = 0;
    double B = 0.0;
    double I = 0.0;
};

/// Raised when a parameter leaves its box; records which one and which side.
class ParameterOutOfRange : public Error {
public:
    ParameterOutOfRange(std::string parameter, int index, std::string bound, const std::string& what)
        : Error(ErrorCode::OutOfRange, what),
          parameter_(std::move(parameter)),
          index_(index),
          bound_(std::move(bound)) {}

    const std::string& parameter() const noexcept { return parameter_; }
    int index() const noexcept { return index_; }
    const std::string& bound() const noexcept { return bound_; }

private:
    std::string parameter_;
    int index_;
    std::string bound_;
};

/// Graph validity, arity, lengths > 0, twists in [-1/2, 1/2]. Arity problems
/// throw ValidationError; box violations throw ParameterOutOfRange.
Signature validate_surface(const FNSurface& s);

/// Everything above, plus the context's own consistency and I <= l_i <= B.
/// All boxes are closed.
void validate_surface(const FNSurface& s, const BersContext& ctx);

/// Checks signature requirements of the class, B against the class value,
/// and 0 < I <= B.
void validate_context(const BersContext& ctx);

/// Table value of the Bers constant. Throws SignatureMismatch when the
/// signature is outside the class.
double bers_constant(SurfaceClass c, int g, int n);

/// Smallest table value among the classes that contain (g, n).
double min_bers_constant(int g, int n);
/// The class achieving min_bers_constant.
SurfaceClass sharpest_class(int g, int n);

/// 4k log(4 pi (2g - 2 + n) / k), the bound on the k-th curve of a
/// short pants decomposition. Requires 1 <= k <= 3g - 3 + n.
double buser_curve_bound(int k, int g, int n);

/// Surface file: the graph block of serialize(PantsGraph) followed by
///   lengths l_0 ... l_{m-1}
///   twists a_0 ... a_{m-1}
/// and optionally
///   class <name>
///   B <value>      (defaults to the class value; must match it if given)
///   I <value>      (required when class is given)
/// '#' starts a comment. Unknown or repeated keys are rejected.
struct SurfaceFile {
    FNSurface surface;
    std::optional<BersContext> context;
};

/// Throws ParseError (with line number) or ValidationError.
SurfaceFile parse_surface_file(std::string_view text);
SurfaceFile load_surface(const std::string& path);

std::string serialize(const SurfaceFile& file);
std::string serialize(const FNSurface& s);

/// FNV-1a of the canonical serialization; identifies a surface in reports.
std::uint64_t surface_hash(const FNSurface& s);

}  // namespace isospec
