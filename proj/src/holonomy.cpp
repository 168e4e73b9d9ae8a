#include "isospec/holonomy.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "isospec/hyptrig.hpp"

namespace isospec {

namespace {

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

std::vector<Complex> boundary_points(const Isometry& x, double length) {
    if (length == 0.0) return {parabolic_fixed_point(x).to_disk()};
    auto ax = axis_of(x);
    return {ax.repelling.to_disk(), ax.attracting.to_disk()};
}

// Maps 0 to r and infinity to a, with positive determinant.
Isometry endpoints_frame(const BoundaryPoint& r, const BoundaryPoint& a) {
    double det = a.p * r.q - a.q * r.p;
    double sign = det > 0.0 ? 1.0 : -1.0;
    Isometry f{a.p, sign * r.p, a.q, sign * r.q};
    return f.normalized();
}

// Projective image of a boundary point, as an extended real (inf allowed).
double image_real(const Isometry& m, const BoundaryPoint& x) {
    const double p = m.a * x.p + m.b * x.q;
    const double q = m.c * x.p + m.d * x.q;
    return p / q;
}

}  // namespace

PantsGroup pants_group(double l0, double l1, double l2) {
    for (double l : {l0, l1, l2})
        if (!(l >= 0.0) || !std::isfinite(l)) fail(ErrorCode::OutOfRange, "pants_group: lengths must be >= 0");
    const double x = -2.0 * std::cosh(0.5 * l0);
    const double y = -2.0 * std::cosh(0.5 * l1);
    const double z = -2.0 * std::cosh(0.5 * l2);
    const double s = 0.5 * (z - std::sqrt(std::max(0.0, z * z - 4.0)));
    const Isometry A{x, -1.0, 1.0, 0.0};
    const Isometry B{0.0, s, -1.0 / s, y};
    const Isometry C = (A * B).inverse();
    PantsGroup pg{{l0, l1, l2}, {A, B, C}};

    // Every other boundary must sit to the left of each closed boundary's axis.
    int left = 0, right = 0;
    for (int k = 0; k < 3; ++k) {
        if (pg.lengths[k] == 0.0) continue;
        auto ax = axis_of(pg.boundary[k]);
        const Complex r = ax.repelling.to_disk(), a = ax.attracting.to_disk();
        for (int j = 0; j < 3; ++j) {
            if (j == k) continue;
            for (Complex q : boundary_points(pg.boundary[j], pg.lengths[j])) (cross(a - r, q - r) > 0 ? left : right)++;
        }
    }
    if (left > 0 && right > 0)
        fail(ErrorCode::NumericalInstability, "pants_group: boundary axes are not in pants position");
    if (right > 0)
        for (auto& m : pg.boundary) m = mirror(m);
    return pg;
}

namespace {

// Hyperboloid coordinates of an upper half-plane point.
std::array<double, 3> hyperboloid(Complex z) {
    const double n = std::norm(z), y = z.imag();
    return {(1.0 + n) / (2.0 * y), (n - 1.0) / (2.0 * y), z.real() / y};
}

// Conjugates the group so that a central point of the pants sits at i. This
// keeps entries small when lengths are unbalanced.
PantsGroup centered(PantsGroup pg) {
    std::array<double, 3> sum{};
    int count = 0;
    for (int k = 0; k < 3; ++k) {
        const int next = (k + 1) % 3;
        if (pg.lengths[k] == 0.0) continue;
        const Isometry f = boundary_frame(pg, k);
        std::vector<Complex> pts{f.apply(Complex(0.0, 1.0))};
        if (pg.lengths[next] > 0.0) {
            const double half = 0.5 * trig::pants_perpendicular(pg.lengths[k], pg.lengths[next], pg.lengths[(k + 2) % 3]);
            pts.push_back(f.apply(Complex(-std::tanh(half), 1.0 / std::cosh(half))));
        }
        for (Complex z : pts) {
            const auto h = hyperboloid(z);
            for (int i = 0; i < 3; ++i) sum[i] += h[i];
            ++count;
        }
    }
    if (count == 0) return pg;
    const double norm = std::sqrt(sum[0] * sum[0] - sum[1] * sum[1] - sum[2] * sum[2]);
    const double t = sum[0] / norm, x1 = sum[1] / norm, x2 = sum[2] / norm;
    const double y = 1.0 / (t - x1);
    const Complex c(x2 * y, y);
    const double r = std::sqrt(c.imag());
    const Isometry m{r, c.real() / r, 0.0, 1.0 / r};
    for (auto& b : pg.boundary) b = (m.inverse() * b * m).normalized();
    return pg;
}

}  // namespace

Isometry boundary_frame(const PantsGroup& pants, int k) {
    if (pants.lengths[k] == 0.0) fail(ErrorCode::UnsupportedCuspCase, "boundary_frame: boundary is a cusp");
    const auto ax = axis_of(pants.boundary[k]);
    const Isometry f0 = endpoints_frame(ax.repelling, ax.attracting);
    const Isometry back = f0.inverse();
    const int next = (k + 1) % 3;
    double height;
    if (pants.lengths[next] == 0.0) {
        height = std::abs(image_real(back, parabolic_fixed_point(pants.boundary[next])));
    } else {
        const auto other = axis_of(pants.boundary[next]);
        const double u1 = image_real(back, other.repelling);
        const double u2 = image_real(back, other.attracting);
        height = std::sqrt(u1 * u2);
    }
    if (!(height > 0.0) || !std::isfinite(height))
        fail(ErrorCode::NumericalInstability, "boundary_frame: degenerate perpendicular foot");
    return f0 * Isometry::diagonal(std::sqrt(height));
}

Isometry evaluate(const HolonomyRep& rep, const Word& word) {
    Isometry m;
    for (const auto& l : word) {
        const Isometry& g = rep.generators.at(l.generator);
        m = m * (l.inverse ? g.inverse() : g);
    }
    return m;
}

HolonomyRep build_holonomy(const FNSurface& s) {
    const Signature sig = validate_surface(s);
    const PantsGraph& G = s.graph;
    const int N = G.node_count();
    const int E = G.edge_count();

    std::vector<PantsGroup> pants;
    std::vector<std::array<Isometry, 3>> frames(N);
    for (int v = 0; v < N; ++v) {
        const auto slots = G.slots(v);
        std::array<double, 3> L{};
        for (int k = 0; k < 3; ++k) L[k] = slots[k].free ? 0.0 : s.lengths[slots[k].edge];
        pants.push_back(centered(pants_group(L[0], L[1], L[2])));
        for (int k = 0; k < 3; ++k)
            if (L[k] > 0.0) frames[v][k] = boundary_frame(pants[v], k);
    }

    // Gluing across edge e from its end `from` (0 or 1): the position of the
    // other pants relative to this one.
    auto gluing = [&](int e, int from) {
        const auto [u, w] = G.edges()[e];
        const int here = from == 0 ? u : w;
        const int there = from == 0 ? w : u;
        const Isometry& fh = frames[here][G.slot_of(e, from)];
        const Isometry& ft = frames[there][G.slot_of(e, 1 - from)];
        const double shift = s.twists[e] * s.lengths[e];
        return (fh * Isometry::translation(shift) * Isometry::half_turn() * ft.inverse()).normalized();
    };

    std::vector<Isometry> pos(N);
    std::vector<bool> placed(N, false);
    std::vector<bool> tree_edge(E, false);
    std::deque<int> queue{0};
    placed[0] = true;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int e = 0; e < E; ++e) {
            const auto [u, w] = G.edges()[e];
            int from = -1;
            if (u == v && !placed[w]) from = 0;
            else if (w == v && !placed[u]) from = 1;
            if (from < 0) continue;
            const int other = from == 0 ? w : u;
            pos[other] = (pos[v] * gluing(e, from)).normalized();
            placed[other] = true;
            tree_edge[e] = true;
            queue.push_back(other);
        }
    }

    auto vertex_element = [&](int v, int k) {
        return (pos[v] * pants[v].boundary[k] * pos[v].inverse()).normalized();
    };

    HolonomyRep rep;
    rep.signature = sig;
    rep.surface_hash = surface_hash(s);
    rep.curve_lengths = s.lengths;
    std::vector<std::array<int, 3>> vertex_index(N, {-1, -1, -1});
    for (int e = 0; e < E; ++e) {
        const int u = G.edges()[e].first;
        const int i = G.slot_of(e, 0);
        vertex_index[u][i] = static_cast<int>(rep.generators.size());
        rep.curve_generator.push_back(vertex_index[u][i]);
        rep.generators.push_back(vertex_element(u, i));
        rep.names.push_back("c" + std::to_string(e));
    }
    std::vector<int> stable(E, -1);
    for (int e = 0; e < E; ++e) {
        if (tree_edge[e]) continue;
        const auto [u, w] = G.edges()[e];
        stable[e] = static_cast<int>(rep.generators.size());
        rep.generators.push_back((pos[u] * gluing(e, 0) * pos[w].inverse()).normalized());
        rep.names.push_back("t" + std::to_string(e));
    }
    for (int v = 0; v < N; ++v) {
        const auto slots = G.slots(v);
        for (int k = 0; k < 3; ++k) {
            if (vertex_index[v][k] >= 0) continue;
            vertex_index[v][k] = static_cast<int>(rep.generators.size());
            rep.generators.push_back(vertex_element(v, k));
            rep.names.push_back("x" + std::to_string(v) + "." + std::to_string(k));
            if (slots[k].free) rep.cusp_generator.push_back(vertex_index[v][k]);
        }
    }

    auto L = [](int g, bool inv = false) { return Letter{g, inv}; };
    for (int v = 0; v < N; ++v) {
        rep.relators.push_back({L(vertex_index[v][0]), L(vertex_index[v][1]), L(vertex_index[v][2])});
        rep.relator_names.push_back("pants" + std::to_string(v));
    }
    for (int e = 0; e < E; ++e) {
        const auto [u, w] = G.edges()[e];
        const int a = vertex_index[u][G.slot_of(e, 0)];
        const int b = vertex_index[w][G.slot_of(e, 1)];
        if (tree_edge[e])
            rep.relators.push_back({L(a), L(b)});
        else
            rep.relators.push_back({L(stable[e]), L(b), L(stable[e], true), L(a)});
        rep.relator_names.push_back("glue" + std::to_string(e));
    }

    for (const auto& word : rep.relators) {
        double scale = 1.0;
        for (const auto& l : word) scale *= std::max(1.0, rep.generators[l.generator].norm());
        rep.relator_residual =
            std::max(rep.relator_residual, projective_distance(evaluate(rep, word), Isometry::identity()) / scale);
    }
    for (int e = 0; e < E; ++e) {
        const auto el = element_length(rep.generators[rep.curve_generator[e]]);
        const double err = el.kind == IsometryKind::Hyperbolic ? std::abs(el.length - s.lengths[e]) : INFINITY;
        rep.length_residual = std::max(rep.length_residual, err);
    }
    for (int c : rep.cusp_generator)
        rep.cusp_residual = std::max(rep.cusp_residual, std::abs(std::abs(rep.generators[c].trace()) - 2.0));

    if (rep.relator_residual > kHolonomyTol || rep.length_residual > kHolonomyTol ||
        rep.cusp_residual > kHolonomyTol * 10.0) {
        std::ostringstream os;
        os << "holonomy residuals too large: relators " << rep.relator_residual << ", curve lengths "
           << rep.length_residual << ", cusp traces " << rep.cusp_residual;
        fail(ErrorCode::NumericalInstability, os.str());
    }

    for (int v = 0; v < N; ++v) {
        rep.basepoint_candidates.push_back(pos[v].apply(Complex(0.0, 1.0)));
        for (int k = 0; k < 3; ++k) {
            const int next = (k + 1) % 3;
            const auto& l = pants[v].lengths;
            if (l[k] == 0.0 || l[next] == 0.0) continue;
            const double half = 0.5 * trig::pants_perpendicular(l[k], l[next], l[(k + 2) % 3]);
            const Complex mid(-std::tanh(half), 1.0 / std::cosh(half));
            rep.basepoint_candidates.push_back((pos[v] * frames[v][k]).apply(mid));
        }
    }
    return rep;
}

}  // namespace isospec
