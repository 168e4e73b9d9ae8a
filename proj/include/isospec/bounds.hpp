#pragma once

#include <string>
#include <vector>

#include "isospec/surface.hpp"

namespace isospec {

/// Geodesics shorter than this are always simple and their iterates are
/// left out of the growth count.
double short_geodesic_threshold();  // 2 arcsinh(1)
/// Radius of the embedded balls used to count geodesic loops.
double injectivity_radius_floor();  // arcsinh(1)

/// f(L) = (1/2)(2g - 2 + n) e^{L + 6}; an upper bound on the number of closed
/// geodesics of length <= L that are not iterates of geodesics shorter than
/// short_geodesic_threshold(). growth_rate_log avoids overflow.
double growth_rate(double L, int g, int n);
double growth_rate_log(double L, int g, int n);

/// log of the number of admissible length parameter vectors:
/// m log((2g - 2 + n)/2) + m (B + 6), m = 3g - 3 + n.
double length_param_count_log(int g, int n, double B);

/// log of the number of admissible twist parameter vectors:
/// log 2 + m log((2g - 2 + n)/2) + m (3B - 4 log I + 12 log 2 + 6).
double twist_param_count_log(int g, int n, double B, double I);

/// log 2 + 2m (2B - 2 log I + log(2g - 2 + n) + 5 log 2 + 6) + log C(g, n).
double closed_form_log(int g, int n, double B, double I);

/// The bound on an isospectral family, kept in log space. The twist count's
/// leading factor 2 (two twists per transversal length) is the separate
/// log 2 in total_log, so twist_log excludes it:
///   total_log = log 2 + graph_log + length_log + twist_log.
struct BoundReport {
    int g = 0;
    int n = 0;
    double B = 0.0;
    double I = 0.0;
    double graph_log = 0.0;
    double length_log = 0.0;
    double twist_log = 0.0;
    double total_log = 0.0;
    double closed_form_log = 0.0;
};

/// Requires 2g - 2 + n >= 1 and 0 < I <= B. m = 0 (the thrice-punctured
/// sphere) is allowed and gives the bare graph count.
BoundReport main_bound(int g, int n, double B, double I);

/// One comparison between the general bound and a published specialization.
struct SpecializedBound {
    SurfaceClass surface_class = SurfaceClass::FiniteArea;
    std::string label;
    int g = 0;
    int n = 0;
    double I = 0.0;
    double B = 0.0;
    double rhs_log = 0.0;    // log of the specialized right-hand side
    double bound_log = 0.0;  // main_bound(...).total_log with the class B
    bool satisfied = false;  // bound_log <= rhs_log
};

/// The specialized bound for one class. Throws SignatureMismatch when
/// (g, n) is outside the class.
SpecializedBound specialized_bound(SurfaceClass c, int g, int n, double I);

/// Every specialized bound whose class contains (g, n).
std::vector<SpecializedBound> theorem13_bounds(int g, int n, double I);

/// 720 g^2, the log of the older bound for closed genus-g surfaces.
double buser_reference_bound_log(int g);

/// Formats a log-space value as a decimal in scientific notation, e.g.
/// "5.93e+51", without leaving log space.
std::string format_exp(double log_value, int digits = 3);

}  // namespace isospec
