#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isospec/spectrum.hpp"
#include "isospec/surface.hpp"

namespace isospec {

/// One family of checks: how many cases ran, how many failed, and the worst
/// error seen against its tolerance (0 tolerance for exact comparisons).
struct Check {
    std::string name;
    long long cases = 0;
    long long failures = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    std::string note;

    bool passed() const { return cases > 0 && failures == 0; }
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    int samples = 0;  // 0 picks the suite default
    int threads = 1;
};

/// The five trig identities against constructions in the upper half-plane
/// (default 1000 configurations each, tolerance trig::kOracleTol).
SuiteReport verify_trig(const VerifyOptions& opt = {});

/// Twist recovery from the transversal length, the {-a, a} / {0} shape of
/// the answer, and convexity of delta(alpha) (default 1000 neighborhoods).
SuiteReport verify_twist(const VerifyOptions& opt = {});

/// transversal_length <= transversal_upper_bound(B, I) for neighborhoods
/// with all lengths in [I, B], for (B, I) in (4.45, 1), (4.45, 0.5),
/// (30.39, 1) (default 10000 neighborhoods each).
SuiteReport verify_transversal_bound(const VerifyOptions& opt = {});

/// Transversal lengths of random genus-2 surfaces (pants lengths in
/// [1, 4.45]) found by enumerate_spectrum to 1e-6 (default 20 surfaces).
SuiteReport verify_spectrum(const VerifyOptions& opt = {});

/// Growth counts at L = 4, 6, 8 against growth_rate on fixed and random
/// surfaces (default 6 random surfaces on top of the fixed ones).
SuiteReport verify_growth(const VerifyOptions& opt = {});

/// Consistency of an exported spectrum with its surface: hash, sorting,
/// pants curves and transversals below the cutoff, growth bound.
SuiteReport verify_spectrum_export(const LengthSpectrum& s, const FNSurface& surface);

/// trig, twist, transversal, spectrum, growth.
const std::vector<std::string>& suite_names();
/// Throws ValidationError for an unknown name.
SuiteReport run_suite(std::string_view name, const VerifyOptions& opt = {});

}  // namespace isospec
