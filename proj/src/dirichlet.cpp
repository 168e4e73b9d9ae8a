#include "isospec/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace isospec {

Complex klein_from_poincare(Complex p) { return 2.0 * p / (1.0 + std::norm(p)); }

Complex poincare_from_klein(Complex k) { return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(k)))); }

double klein_radius(Complex k) { return std::atanh(std::min(std::abs(k), 1.0)); }

double klein_distance(Complex a, Complex b) {
    const double dot = a.real() * b.real() + a.imag() * b.imag();
    const double denom = std::sqrt((1.0 - std::norm(a)) * (1.0 - std::norm(b)));
    return std::acosh(std::max(1.0, (1.0 - dot) / denom));
}

HalfPlane bisector(const DiskIsometry& g) {
    const Complex w = g.origin_image();
    return {w, std::norm(w)};
}

Clip clip_segment(Complex a, Complex b, const std::vector<HalfPlane>& planes) {
    Clip c;
    const Complex d = b - a;
    double best_exit = std::numeric_limits<double>::infinity(), second_exit = best_exit;
    for (int i = 0; i < static_cast<int>(planes.size()); ++i) {
        const auto& h = planes[i];
        const double fa = h.eval(a);
        const double slope = d.real() * h.normal.real() + d.imag() * h.normal.imag();
        if (slope == 0.0) {
            if (fa > 0.0) return c;
            continue;
        }
        const double t = -fa / slope;
        if (slope > 0.0) {
            if (t < best_exit) {
                second_exit = best_exit;
                best_exit = t;
                c.exit_plane = i;
            } else {
                second_exit = std::min(second_exit, t);
            }
        } else {
            c.t0 = std::max(c.t0, t);
        }
    }
    c.t1 = std::min(1.0, best_exit);
    if (best_exit > 1.0) c.exit_plane = -1;
    c.exit_margin = second_exit - best_exit;
    c.hit = c.t0 <= c.t1;
    return c;
}

int DirichletDomain::exit_side(Complex dir) const {
    const double two_pi = 2.0 * std::numbers::pi;
    double theta = std::arg(dir);
    const double base = vertex_angle.front();
    theta = base + std::fmod(std::fmod(theta - base, two_pi) + two_pi, two_pi);
    const auto it = std::upper_bound(vertex_angle.begin(), vertex_angle.end(), theta);
    const int idx = static_cast<int>(it - vertex_angle.begin()) - 1;
    return std::clamp(idx, 0, side_count() - 1);
}

namespace {

constexpr double kInsideTol = 1e-11;
constexpr double kIdealTol = 1e-9;
constexpr double kAreaTol = 1e-7;

struct Polygon {
    std::vector<Complex> v;
    std::vector<int> label;  // side i runs from v[i] to v[i+1]; -1 for the initial box
};

void clip(Polygon& poly, const HalfPlane& h, int label) {
    const int k = static_cast<int>(poly.v.size());
    std::vector<double> f(k);
    bool cuts = false;
    for (int i = 0; i < k; ++i) {
        f[i] = h.eval(poly.v[i]);
        cuts = cuts || f[i] > kInsideTol;
    }
    if (!cuts) return;
    Polygon out;
    for (int i = 0; i < k; ++i) {
        const int j = (i + 1) % k;
        const bool in_i = f[i] <= kInsideTol, in_j = f[j] <= kInsideTol;
        if (in_i) {
            out.v.push_back(poly.v[i]);
            out.label.push_back(poly.label[i]);
            if (!in_j) {
                const double t = f[i] / (f[i] - f[j]);
                out.v.push_back(poly.v[i] + t * (poly.v[j] - poly.v[i]));
                out.label.push_back(label);
            }
        } else if (in_j) {
            const double t = f[i] / (f[i] - f[j]);
            out.v.push_back(poly.v[i] + t * (poly.v[j] - poly.v[i]));
            out.label.push_back(poly.label[i]);
        }
    }
    // Drop zero-length sides.
    Polygon clean;
    const int m = static_cast<int>(out.v.size());
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        if (std::abs(out.v[i] - out.v[j]) < 1e-13 && m > 3) continue;
        clean.v.push_back(out.v[i]);
        clean.label.push_back(out.label[i]);
    }
    poly = std::move(clean);
}

// Orbit of the origin within a ball, with one group element per point.
class OrbitBall {
public:
    std::vector<DiskIsometry> elements;

    OrbitBall(const std::vector<DiskIsometry>& gens, double radius, int max_size) {
        const double limit = std::cosh(radius);
        add(DiskIsometry{});
        for (std::size_t idx = 0; idx < elements.size(); ++idx) {
            for (const auto& s : gens) {
                const DiskIsometry f = (elements[idx] * s).normalized();
                // Long products cancel badly; anything this close to the
                // identity is the identity with rounding error.
                if (f.cosh_displacement() > limit || f.cosh_displacement() < 1.0 + kIdentityTol) continue;
                if (add(f) && static_cast<int>(elements.size()) > max_size)
                    fail(ErrorCode::ResourceLimit, "dirichlet: orbit ball exceeds budget");
            }
        }
    }

private:
    static constexpr double kCell = 1e-3;
    static constexpr double kIdentityTol = 1e-6;
    struct KeyHash {
        std::size_t operator()(const std::pair<long long, long long>& k) const {
            return std::hash<long long>()(k.first * 1000003LL) ^ std::hash<long long>()(k.second);
        }
    };
    std::unordered_map<std::pair<long long, long long>, std::vector<int>, KeyHash> cells_;

    bool add(const DiskIsometry& g) {
        const Complex x = g.origin_spatial();
        const long long cx = std::llround(x.real() / kCell), cy = std::llround(x.imag() / kCell);
        const double tol = 1e-8 * (1.0 + g.cosh_displacement());
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find({cx + dx, cy + dy});
                if (it == cells_.end()) continue;
                for (int j : it->second)
                    if (std::abs(elements[j].origin_spatial() - x) <= tol) return false;
            }
        cells_[{cx, cy}].push_back(static_cast<int>(elements.size()));
        elements.push_back(g);
        return true;
    }
};

bool same_point(const DiskIsometry& a, const DiskIsometry& b) {
    const double tol = 1e-7 * (1.0 + a.cosh_displacement());
    return std::abs(a.origin_spatial() - b.origin_spatial()) <= tol;
}

// Unit spacelike normal of a half-plane in hyperboloid coordinates (t, x, y).
std::array<double, 3> minkowski_normal(const HalfPlane& h) {
    const double n = std::sqrt(std::norm(h.normal) - h.offset * h.offset);
    return {h.offset / n, h.normal.real() / n, h.normal.imag() / n};
}

std::vector<HalfPlane> planes_of_polygon(const std::vector<Complex>& v) {
    std::vector<HalfPlane> out;
    const int k = static_cast<int>(v.size());
    for (int i = 0; i < k; ++i) {
        const Complex a = v[i], d = v[(i + 1) % k] - a;
        if (std::abs(d) < 1e-12) continue;  // tangent cusp neighborhoods give repeated points
        const Complex n(d.imag(), -d.real());
        out.push_back({n, a.real() * n.real() + a.imag() * n.imag()});
    }
    return out;
}

Complex unit(Complex z) { return z / std::abs(z); }

// Disk to upper half-plane sending the boundary point v to infinity and 0 to i.
Complex to_cusp_chart(Complex v, Complex z) { return Complex(0.0, 1.0) * (v + z) / (v - z); }
Complex from_cusp_chart(Complex v, Complex w) { return v * (w - Complex(0.0, 1.0)) / (w + Complex(0.0, 1.0)); }

struct Attempt {
    bool closed = false;       // bounded polygon inside the closed disk
    bool certified = false;
    std::vector<DiskIsometry> new_elements;
};

// Fills geometry of dom from a clipped polygon; returns what the certifier needs.
Attempt analyze(DirichletDomain& dom, const Polygon& poly, const std::vector<DiskIsometry>& planes_elems,
                const std::vector<DiskIsometry>& gens) {
    Attempt at;
    const int k = static_cast<int>(poly.v.size());
    dom.vertices = poly.v;
    dom.ideal.assign(k, false);
    dom.side_element.clear();
    dom.side_plane.clear();
    for (int i = 0; i < k; ++i) {
        if (poly.label[i] < 0) return at;
        const double r = std::abs(poly.v[i]);
        if (r > 1.0 + kIdealTol) return at;
        if (r > 1.0 - kIdealTol) {
            dom.ideal[i] = true;
            dom.vertices[i] = unit(poly.v[i]);
        }
        dom.side_element.push_back(planes_elems[poly.label[i]]);
        dom.side_plane.push_back(bisector(planes_elems[poly.label[i]]));
    }
    at.closed = true;
    for (const auto& g : dom.side_element) {
        bool known = false;
        for (const auto& s : gens) known = known || same_point(s, g);
        if (!known) at.new_elements.push_back(g);
    }

    double angle_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        if (dom.ideal[i]) continue;
        const auto m1 = minkowski_normal(dom.side_plane[(i + k - 1) % k]);
        const auto m2 = minkowski_normal(dom.side_plane[i]);
        const double inner = -m1[0] * m2[0] + m1[1] * m2[1] + m1[2] * m2[2];
        angle_sum += std::acos(std::clamp(-inner, -1.0, 1.0));
    }
    dom.area = (k - 2) * std::numbers::pi - angle_sum;
    return at;
}

void pair_sides(DirichletDomain& dom) {
    const int k = dom.side_count();
    dom.side_pair.assign(k, -1);
    for (int i = 0; i < k; ++i) {
        const DiskIsometry inv = dom.side_element[i].inverse();
        for (int j = 0; j < k; ++j)
            if (same_point(inv, dom.side_element[j])) dom.side_pair[i] = j;
        if (dom.side_pair[i] < 0) fail(ErrorCode::NumericalInstability, "dirichlet: unpaired side");
    }
}

// Each side must be carried onto its partner by the inverse side element,
// endpoints reversed. A polygon containing the Dirichlet domain with paired
// sides and the right area is the Dirichlet domain.
bool sides_match(const DirichletDomain& dom) {
    const int k = dom.side_count();
    auto close = [&](Complex image, int vertex) {
        const Complex target = dom.vertices[vertex];
        if (dom.ideal[vertex]) return std::abs(unit(image) - target) <= 1e-6;
        // acosh loses half the digits for nearby points; asinh of the chord does not.
        const Complex p = poincare_from_klein(image), q = poincare_from_klein(target);
        const double chord = std::abs(p - q) / std::sqrt((1.0 - std::norm(p)) * (1.0 - std::norm(q)));
        return std::abs(image) < 1.0 && 2.0 * std::asinh(chord) <= 1e-6;
    };
    for (int i = 0; i < k; ++i) {
        const DiskIsometry back = dom.side_element[i].inverse();
        const int j = dom.side_pair[i];
        auto map = [&](int vertex) {
            const Complex p = dom.ideal[vertex] ? dom.vertices[vertex] : poincare_from_klein(dom.vertices[vertex]);
            const Complex q = back.apply(p);
            return dom.ideal[vertex] ? q : klein_from_poincare(q);
        };
        if (!close(map(i), (j + 1) % k) || !close(map((i + 1) % k), j)) return false;
    }
    return true;
}

void set_angles(DirichletDomain& dom) {
    const double two_pi = 2.0 * std::numbers::pi;
    dom.vertex_angle.clear();
    double prev = std::arg(dom.vertices[0]);
    dom.vertex_angle.push_back(prev);
    for (int i = 1; i < dom.side_count(); ++i) {
        double a = std::arg(dom.vertices[i]);
        while (a <= prev) a += two_pi;
        dom.vertex_angle.push_back(a);
        prev = a;
    }
    dom.vertex_angle.push_back(dom.vertex_angle.front() + two_pi);
    if (dom.vertex_angle[dom.side_count()] <= dom.vertex_angle[dom.side_count() - 1])
        fail(ErrorCode::NumericalInstability, "dirichlet: polygon is not star-shaped about the basepoint");
}

void truncate_cusps(DirichletDomain& dom) {
    const int k = dom.side_count();
    dom.cusps.clear();
    dom.truncated.clear();
    for (int v0 = 0; v0 < k; ++v0) {
        if (!dom.ideal[v0]) {
            dom.truncated.push_back(dom.vertices[v0]);
            continue;
        }
        // Vertex cycle: push the vertex across sides until it comes back.
        DiskIsometry h;
        int vertex = v0, side = v0;
        for (int step = 0;; ++step) {
            if (step > 2 * k) fail(ErrorCode::NumericalInstability, "dirichlet: ideal vertex cycle does not close");
            const DiskIsometry back = dom.side_element[side].inverse();
            h = (back * h).normalized();
            const Complex image = unit(back.apply(dom.vertices[vertex]));
            const int pair = dom.side_pair[side];
            const int start = pair, end = (pair + 1) % k;
            if (std::abs(image - dom.vertices[start]) <= std::abs(image - dom.vertices[end])) {
                vertex = start;
                side = (pair + k - 1) % k;
            } else {
                vertex = end;
                side = end;
            }
            if (std::abs(image - dom.vertices[vertex]) > 1e-6)
                fail(ErrorCode::NumericalInstability, "dirichlet: side pairing does not match vertices");
            if (vertex == v0) break;
        }
        if (std::abs(h.abs_trace() - 2.0) > 1e-6)
            fail(ErrorCode::NumericalInstability, "dirichlet: ideal vertex cycle is not parabolic");
        const Complex v = dom.vertices[v0];
        const double t = std::abs(to_cusp_chart(v, h.origin_image()).real());
        CuspVertex cusp{v0, h, t, 0.5 * t};
        const Complex a = to_cusp_chart(v, poincare_from_klein(dom.vertices[(v0 + k - 1) % k]));
        const Complex b = to_cusp_chart(v, poincare_from_klein(dom.vertices[(v0 + 1) % k]));
        cusp.height = std::max(cusp.height, 1.001 * std::max(a.imag(), b.imag()));
        dom.truncated.push_back(klein_from_poincare(from_cusp_chart(v, Complex(a.real(), cusp.height))));
        dom.truncated.push_back(klein_from_poincare(from_cusp_chart(v, Complex(b.real(), cusp.height))));
        dom.cusps.push_back(cusp);
    }
    dom.truncated_plane = planes_of_polygon(dom.truncated);
    dom.rho = 0.0;
    for (Complex p : dom.truncated) dom.rho = std::max(dom.rho, klein_radius(p));
}

}  // namespace

DirichletDomain dirichlet_domain(const HolonomyRep& rep, Complex basepoint, const DirichletOptions& opt) {
    if (!(basepoint.imag() > 0.0)) fail(ErrorCode::OutOfRange, "dirichlet: basepoint must lie in the upper half-plane");
    DirichletDomain dom;
    dom.basepoint = basepoint;
    const double r = std::sqrt(basepoint.imag());
    dom.recenter = {r, basepoint.real() / r, 0.0, 1.0 / r};
    const Isometry back = dom.recenter.inverse();
    for (const auto& g : rep.generators) dom.generators.push_back(DiskIsometry::from((back * g * dom.recenter).normalized()));
    const auto& sig = rep.signature;
    dom.expected_area = 2.0 * std::numbers::pi * (2 * sig.g - 2 + sig.n);

    std::vector<DiskIsometry> gens;
    auto add_gen = [&](const DiskIsometry& g) {
        for (const auto& s : gens)
            if (same_point(s, g)) return;
        gens.push_back(g);
    };
    // Start small: sides found along the way join the generators and keep
    // the ball connected.
    double radius = opt.max_radius;
    for (const auto& g : dom.generators) {
        add_gen(g);
        add_gen(g.inverse());
        radius = std::min(radius, std::acosh(g.cosh_displacement()) + 0.5);
    }
    radius = std::max(radius, 1.0);

    for (;;) {
        if (radius > opt.max_radius) fail(ErrorCode::ResourceLimit, "dirichlet: orbit radius exceeds budget");
        OrbitBall ball(gens, radius, opt.max_orbit);
        std::vector<DiskIsometry> elems(ball.elements.begin() + 1, ball.elements.end());
        std::sort(elems.begin(), elems.end(), [](const DiskIsometry& a, const DiskIsometry& b) {
            return a.cosh_displacement() < b.cosh_displacement();
        });
        Polygon poly{{{-2.0, -2.0}, {2.0, -2.0}, {2.0, 2.0}, {-2.0, 2.0}}, {-1, -1, -1, -1}};
        for (int i = 0; i < static_cast<int>(elems.size()); ++i) clip(poly, bisector(elems[i]), i);
        dom.orbit_radius = radius;
        dom.orbit_size = static_cast<int>(ball.elements.size());

        const Attempt at = analyze(dom, poly, elems, gens);
        if (!at.closed) {
            radius += 1.0;
            continue;
        }
        const bool area_ok = std::abs(dom.area - dom.expected_area) <= kAreaTol * dom.expected_area;
        if (area_ok && at.new_elements.empty()) {
            bool paired = true;
            try {
                pair_sides(dom);
            } catch (const Error&) {
                paired = false;
            }
            if (paired && sides_match(dom)) break;
        }
        for (const auto& g : at.new_elements) {
            add_gen(g);
            add_gen(g.inverse());
        }
        if (at.new_elements.empty()) radius += 1.0;
    }
    set_angles(dom);
    truncate_cusps(dom);
    if (static_cast<int>(dom.cusps.size()) < (sig.n > 0 ? 1 : 0))
        fail(ErrorCode::NumericalInstability, "dirichlet: cusped surface without ideal vertices");
    return dom;
}

std::vector<Complex> dirichlet_basepoints(const HolonomyRep& rep) {
    std::vector<Complex> seen;
    std::vector<std::pair<double, Complex>> ranked;
    for (Complex z : rep.basepoint_candidates) {
        bool dup = false;
        for (Complex s : seen) dup = dup || distance_uhp(s, z) < 1e-6;
        if (dup) continue;
        seen.push_back(z);
        // Candidates sit on symmetry axes of the pants; a small fixed offset
        // keeps polygon sides off closed geodesics.
        const Complex shifted(z.real() + 0.0123 * z.imag(), 1.0171 * z.imag());
        double longest = 0.0;
        for (const auto& g : rep.generators) longest = std::max(longest, distance_uhp(shifted, g.apply(shifted)));
        ranked.push_back({longest, shifted});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Complex> out;
    for (const auto& r : ranked) out.push_back(r.second);
    return out;
}

std::vector<DirichletDomain> dirichlet_domains(const HolonomyRep& rep, const DirichletOptions& opt) {
    std::vector<DirichletDomain> out;
    std::string last_error;
    ErrorCode last_code = ErrorCode::NumericalInstability;
    DirichletOptions capped = opt;
    for (Complex z : dirichlet_basepoints(rep)) {
        try {
            out.push_back(dirichlet_domain(rep, z, capped));
            // A candidate needing a much larger ball than the first good one
            // will not have a smaller rho either.
            if (out.size() == 1) capped.max_orbit = std::min(opt.max_orbit, std::max(4 * out[0].orbit_size, 100'000));
        } catch (const Error& e) {
            last_code = e.code();
            last_error = e.what();
        }
    }
    if (out.empty()) fail(last_code, "dirichlet: no usable basepoint (" + last_error + ")");
    std::stable_sort(out.begin(), out.end(),
                     [](const DirichletDomain& a, const DirichletDomain& b) { return a.rho < b.rho; });
    return out;
}

DirichletDomain best_dirichlet_domain(const HolonomyRep& rep, const DirichletOptions& opt) {
    return dirichlet_domains(rep, opt).front();
}

}  // namespace isospec
