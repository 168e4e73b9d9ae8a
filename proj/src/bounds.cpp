#include "isospec/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace isospec {

namespace {

const double kLog2 = std::log(2.0);

void require_signature(int g, int n, bool need_curves, const char* op) {
    if (g < 0 || n < 0 || 2 * g - 2 + n < 1 || (need_curves && 3 * g - 3 + n < 1))
        fail(ErrorCode::OutOfRange, std::string(op) + ": unsupported signature (" + std::to_string(g) + "," +
                                        std::to_string(n) + ")");
}

void require_BI(double B, double I, const char* op) {
    if (!(I > 0.0) || !(B >= I) || !std::isfinite(B)) {
        std::ostringstream os;
        os << op << ": need 0 < I <= B, got B = " << B << ", I = " << I;
        fail(ErrorCode::OutOfRange, os.str());
    }
}

double half_chi_log(int g, int n) { return std::log(0.5 * (2 * g - 2 + n)); }

// Same formulas without the m >= 1 guard; m = 0 makes every sum empty.
double length_log_raw(int g, int n, double B) {
    const int m = 3 * g - 3 + n;
    return m * half_chi_log(g, n) + m * (B + 6.0);
}

double twist_term_raw(int g, int n, double B, double I) {
    const int m = 3 * g - 3 + n;
    return m * half_chi_log(g, n) + m * (3.0 * B - 4.0 * std::log(I) + 12.0 * kLog2 + 6.0);
}

double closed_form_raw(int g, int n, double B, double I) {
    const int m = 3 * g - 3 + n;
    const double chi = 2 * g - 2 + n;
    return kLog2 + 2.0 * m * (2.0 * B - 2.0 * std::log(I) + std::log(chi) + 5.0 * kLog2 + 6.0) +
           count_bound_log(g, n);
}

}  // namespace

double short_geodesic_threshold() { return 2.0 * std::asinh(1.0); }
double injectivity_radius_floor() { return std::asinh(1.0); }

double growth_rate_log(double L, int g, int n) {
    require_signature(g, n, false, "growth_rate");
    if (!(L >= 0.0)) fail(ErrorCode::OutOfRange, "growth_rate: L must be >= 0");
    return half_chi_log(g, n) + L + 6.0;
}

double growth_rate(double L, int g, int n) { return std::exp(growth_rate_log(L, g, n)); }

double length_param_count_log(int g, int n, double B) {
    require_signature(g, n, true, "length_param_count");
    if (!(B >= 0.0) || !std::isfinite(B)) fail(ErrorCode::OutOfRange, "length_param_count: B must be >= 0");
    return length_log_raw(g, n, B);
}

double twist_param_count_log(int g, int n, double B, double I) {
    require_signature(g, n, true, "twist_param_count");
    require_BI(B, I, "twist_param_count");
    return kLog2 + twist_term_raw(g, n, B, I);
}

double closed_form_log(int g, int n, double B, double I) {
    require_signature(g, n, false, "closed_form");
    require_BI(B, I, "closed_form");
    return closed_form_raw(g, n, B, I);
}

BoundReport main_bound(int g, int n, double B, double I) {
    require_signature(g, n, false, "main_bound");
    require_BI(B, I, "main_bound");
    BoundReport r;
    r.g = g;
    r.n = n;
    r.B = B;
    r.I = I;
    r.graph_log = count_bound_log(g, n);
    r.length_log = length_log_raw(g, n, B);
    r.twist_log = twist_term_raw(g, n, B, I);
    r.total_log = kLog2 + r.graph_log + r.length_log + r.twist_log;
    r.closed_form_log = closed_form_raw(g, n, B, I);
    return r;
}

SpecializedBound specialized_bound(SurfaceClass c, int g, int n, double I) {
    SpecializedBound s;
    s.surface_class = c;
    s.g = g;
    s.n = n;
    s.I = I;
    s.B = bers_constant(c, g, n);
    const double logI = std::log(I);
    const double gg = g, nn = n;
    switch (c) {
        case SurfaceClass::FiniteArea:
            s.label = "I^{-4(3g-3+n)} e^{380g^2 + 46n^2 + 257ng}";
            s.rhs_log = -4.0 * (3 * g - 3 + n) * logI + 380.0 * gg * gg + 46.0 * nn * nn + 257.0 * nn * gg;
            break;
        case SurfaceClass::Closed:
            s.label = "I^{12(1-g)} e^{171g^2}";
            s.rhs_log = 12.0 * (1 - g) * logI + 171.0 * gg * gg;
            break;
        case SurfaceClass::PuncturedSphere:
            s.label = "I^{12-4n} e^{300(n-3)sqrt(n-2) + 2(n-3)log(n+3) + n log(n-1) + 24n}";
            s.rhs_log = (12.0 - 4.0 * nn) * logI + 300.0 * (nn - 3) * std::sqrt(nn - 2) +
                        2.0 * (nn - 3) * std::log(nn + 3) + nn * std::log(nn - 1) + 24.0 * nn;
            break;
        case SurfaceClass::Genus2Closed:
            s.label = "I^{-12} * 3.8e53";
            s.rhs_log = -12.0 * logI + std::log(3.8e53);
            break;
    }
    s.bound_log = main_bound(g, n, s.B, I).total_log;
    s.satisfied = s.bound_log <= s.rhs_log;
    return s;
}

std::vector<SpecializedBound> theorem13_bounds(int g, int n, double I) {
    std::vector<SpecializedBound> out;
    for (auto c : {SurfaceClass::FiniteArea, SurfaceClass::Closed, SurfaceClass::PuncturedSphere,
                   SurfaceClass::Genus2Closed}) {
        try {
            bers_constant(c, g, n);
        } catch (const Error&) {
            continue;
        }
        out.push_back(specialized_bound(c, g, n, I));
    }
    if (out.empty())
        fail(ErrorCode::SignatureMismatch,
             "no specialized bound for signature (" + std::to_string(g) + "," + std::to_string(n) + ")");
    return out;
}

double buser_reference_bound_log(int g) {
    if (g < 2) fail(ErrorCode::OutOfRange, "buser_reference_bound: need g >= 2");
    return 720.0 * g * g;
}

std::string format_exp(double log_value, int digits) {
    if (std::isnan(log_value)) return "nan";
    if (std::isinf(log_value)) return log_value > 0 ? "inf" : "0";
    const double log10v = log_value / std::log(10.0);
    double exponent = std::floor(log10v);
    double mantissa = std::pow(10.0, log10v - exponent);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mantissa);
    if (std::string(buf).rfind("10", 0) == 0) {  // rounding carried into the next decade
        mantissa /= 10.0;
        exponent += 1.0;
        std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mantissa);
    }
    char out[96];
    std::snprintf(out, sizeof out, "%se%s%02.0f", buf, exponent < 0 ? "-" : "+", std::abs(exponent));
    return out;
}

}  // namespace isospec
