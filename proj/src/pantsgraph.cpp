#include "isospec/pantsgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "isospec/errors.hpp"

namespace isospec {

namespace {

[[noreturn]] void invalid(const std::string& why) { fail(ErrorCode::InvalidGraph, why); }

// Multiplicity matrix; diagonal holds loop counts.
using Matrix = std::vector<std::vector<int>>;

Matrix multiplicities(const PantsGraph& g) {
    const int n = g.node_count();
    Matrix m(n, std::vector<int>(n, 0));
    for (auto [u, v] : g.edges()) {
        if (u == v) {
            ++m[u][u];
        } else {
            ++m[u][v];
            ++m[v][u];
        }
    }
    return m;
}

PantsGraph from_matrix(const Matrix& m, const std::vector<int>& free) {
    const int n = static_cast<int>(m.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < m[i][j]; ++k) edges.emplace_back(i, j);
    return PantsGraph(n, std::move(edges), free);
}

bool connected(const PantsGraph& g) {
    const int n = g.node_count();
    if (n == 0) return false;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = n;
    for (auto [u, v] : g.edges()) {
        int a = find(u), b = find(v);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

// Drops `node`, shifting higher node ids down by one.
PantsGraph remove_node(int nodes, std::vector<std::pair<int, int>> edges, std::vector<int> free,
                       int node) {
    for (auto& [u, v] : edges) {
        if (u > node) --u;
        if (v > node) --v;
    }
    free.erase(free.begin() + node);
    return PantsGraph(nodes - 1, std::move(edges), std::move(free));
}

// Colour refinement: returns a rank per node that is invariant under
// relabeling and at least as fine as (free, loops).
std::vector<int> refine_colors(const Matrix& m, const std::vector<int>& free) {
    const int n = static_cast<int>(m.size());
    std::vector<int> color(n);
    {
        std::map<std::pair<int, int>, int> ranks;
        for (int i = 0; i < n; ++i) ranks[{free[i], m[i][i]}] = 0;
        int r = 0;
        for (auto& [key, rank] : ranks) rank = r++;
        for (int i = 0; i < n; ++i) color[i] = ranks[{free[i], m[i][i]}];
    }
    for (int round = 0; round < n; ++round) {
        std::vector<std::vector<int>> sig(n);
        for (int i = 0; i < n; ++i) {
            sig[i].push_back(color[i]);
            std::vector<int> nb;
            for (int j = 0; j < n; ++j)
                if (j != i && m[i][j] > 0) nb.push_back(color[j] * 8 + m[i][j]);
            std::sort(nb.begin(), nb.end());
            sig[i].insert(sig[i].end(), nb.begin(), nb.end());
        }
        std::map<std::vector<int>, int> ranks;
        for (int i = 0; i < n; ++i) ranks[sig[i]] = 0;
        int r = 0;
        for (auto& [key, rank] : ranks) rank = r++;
        std::vector<int> next(n);
        for (int i = 0; i < n; ++i) next[i] = ranks[sig[i]];
        const int before = *std::max_element(color.begin(), color.end());
        const int after = *std::max_element(next.begin(), next.end());
        color = std::move(next);
        if (after == before) break;
    }
    return color;
}

struct CanonicalSearch {
    const Matrix& m;
    const std::vector<int>& free;
    std::vector<int> color;
    std::vector<int> position_color;  // colour required at each position
    std::vector<int> order;           // order[k] = node placed at position k
    std::vector<bool> used;
    std::vector<std::uint8_t> current;
    std::vector<std::uint8_t> best;
    std::vector<int> best_order;
    bool have_best = false;

    CanonicalSearch(const Matrix& mm, const std::vector<int>& ff) : m(mm), free(ff) {
        const int n = static_cast<int>(m.size());
        color = refine_colors(m, free);
        position_color = color;
        std::sort(position_color.begin(), position_color.end());
        used.assign(n, false);
    }

    // Bytes emitted when node v is placed at position k.
    void emit(int k, int v) {
        current.push_back(static_cast<std::uint8_t>(free[v]));
        current.push_back(static_cast<std::uint8_t>(m[v][v]));
        for (int j = 0; j < k; ++j) current.push_back(static_cast<std::uint8_t>(m[order[j]][v]));
    }

    // -1: current prefix smaller than best's, 0: equal, 1: larger.
    int compare_prefix() const {
        if (!have_best) return -1;
        for (std::size_t i = 0; i < current.size(); ++i) {
            if (current[i] < best[i]) return -1;
            if (current[i] > best[i]) return 1;
        }
        return 0;
    }

    void search(int k) {
        const int n = static_cast<int>(m.size());
        if (k == n) {
            if (compare_prefix() < 0) {
                best = current;
                best_order = order;
                have_best = true;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v] || color[v] != position_color[k]) continue;
            const std::size_t mark = current.size();
            order.push_back(v);
            emit(k, v);
            if (compare_prefix() <= 0) {
                used[v] = true;
                search(k + 1);
                used[v] = false;
            }
            order.pop_back();
            current.resize(mark);
        }
    }
};

}  // namespace

PantsGraph::PantsGraph(int nodes, std::vector<std::pair<int, int>> edges, std::vector<int> free_edges)
    : nodes_(nodes), edges_(std::move(edges)), free_(std::move(free_edges)) {
    if (nodes_ < 0) invalid("node count must be nonnegative");
    if (static_cast<int>(free_.size()) != nodes_)
        invalid("free-edge list has " + std::to_string(free_.size()) + " entries for " +
                std::to_string(nodes_) + " nodes");
    for (auto [u, v] : edges_) {
        if (u < 0 || v < 0 || u >= nodes_ || v >= nodes_)
            invalid("edge " + std::to_string(u) + "-" + std::to_string(v) + " references a missing node");
    }
    for (int f : free_)
        if (f < 0) invalid("free-edge counts must be nonnegative");
}

int PantsGraph::free_edge_count() const { return std::accumulate(free_.begin(), free_.end(), 0); }

std::array<Slot, 3> PantsGraph::slots(int node) const {
    std::array<Slot, 3> out{};
    int k = 0;
    auto push = [&](Slot s) {
        if (k >= 3) invalid("node " + std::to_string(node) + " has more than three half-edges");
        out[k++] = s;
    };
    for (int e = 0; e < edge_count(); ++e) {
        if (edges_[e].first == node) push({false, e, 0});
        if (edges_[e].second == node) push({false, e, 1});
    }
    for (int f = 0; f < free_[node]; ++f) push({true, -1, -1});
    if (k != 3) invalid("node " + std::to_string(node) + " has " + std::to_string(k) + " half-edges");
    return out;
}

int PantsGraph::slot_of(int edge, int end) const {
    const int node = end == 0 ? edges_.at(edge).first : edges_.at(edge).second;
    auto s = slots(node);
    for (int i = 0; i < 3; ++i)
        if (!s[i].free && s[i].edge == edge && s[i].end == end) return i;
    invalid("edge end not found at its node");
}

Signature validate(const PantsGraph& graph) {
    const int n = graph.node_count();
    if (n == 0) invalid("graph has no nodes");
    std::vector<int> degree(n, 0);
    for (auto [u, v] : graph.edges()) {
        ++degree[u];
        ++degree[v];
    }
    for (int i = 0; i < n; ++i) {
        const int d = degree[i] + graph.free_counts()[i];
        if (d != 3)
            invalid("degree violation: node " + std::to_string(i) + " has " + std::to_string(d) +
                    " half-edges, expected 3");
    }
    if (!connected(graph)) invalid("graph is disconnected");
    const int cusps = graph.free_edge_count();
    const int genus = graph.edge_count() - n + 1;
    Signature sig{genus, cusps};
    if (genus < 0 || sig.pants() != n || sig.curves() != graph.edge_count())
        invalid("inconsistent counts: " + std::to_string(n) + " nodes, " +
                std::to_string(graph.edge_count()) + " internal edges, " + std::to_string(cusps) +
                " free edges");
    return sig;
}

PantsGraph attach_one_cusp(const PantsGraph& graph, int edge) {
    if (edge < 0 || edge >= graph.edge_count())
        fail(ErrorCode::InvalidEdge, "attach_one_cusp: no internal edge " + std::to_string(edge));
    auto edges = graph.edges();
    auto free = graph.free_counts();
    const int x = graph.node_count();
    const auto [u, w] = edges[edge];
    edges[edge] = {u, x};
    edges.emplace_back(x, w);
    free.push_back(1);
    return PantsGraph(x + 1, std::move(edges), std::move(free));
}

PantsGraph attach_two_cusps(const PantsGraph& graph, int edge) {
    if (edge < 0 || edge >= graph.edge_count())
        fail(ErrorCode::InvalidEdge, "attach_two_cusps: no internal edge " + std::to_string(edge));
    auto edges = graph.edges();
    auto free = graph.free_counts();
    const int x = graph.node_count();
    const int y = x + 1;
    const auto [u, w] = edges[edge];
    edges[edge] = {u, x};
    edges.emplace_back(x, w);
    edges.emplace_back(x, y);
    free.push_back(0);
    free.push_back(2);
    return PantsGraph(x + 2, std::move(edges), std::move(free));
}

PantsGraph smooth_one_cusp(const PantsGraph& graph, int node) {
    if (node < 0 || node >= graph.node_count() || graph.free_counts()[node] != 1)
        fail(ErrorCode::InvalidEdge, "smooth_one_cusp: node must carry exactly one free edge");
    std::vector<int> incident;
    for (int e = 0; e < graph.edge_count(); ++e) {
        auto [u, v] = graph.edges()[e];
        if (u == node && v == node)
            fail(ErrorCode::InvalidEdge, "smooth_one_cusp: node carries a loop");
        if (u == node || v == node) incident.push_back(e);
    }
    if (incident.size() != 2) fail(ErrorCode::InvalidEdge, "smooth_one_cusp: node is not bivalent");
    auto edges = graph.edges();
    auto other = [&](int e) { return edges[e].first == node ? edges[e].second : edges[e].first; };
    const int a = other(incident[0]);
    const int b = other(incident[1]);
    edges[incident[0]] = {a, b};
    edges.erase(edges.begin() + incident[1]);
    auto free = graph.free_counts();
    free[node] = 0;
    return remove_node(graph.node_count(), std::move(edges), std::move(free), node);
}

PantsGraph detach_two_cusps(const PantsGraph& graph, int node) {
    if (node < 0 || node >= graph.node_count() || graph.free_counts()[node] != 2)
        fail(ErrorCode::InvalidEdge, "detach_two_cusps: node must carry exactly two free edges");
    int edge = -1;
    for (int e = 0; e < graph.edge_count(); ++e) {
        auto [u, v] = graph.edges()[e];
        if (u == node || v == node) edge = e;
    }
    if (edge < 0) fail(ErrorCode::InvalidEdge, "detach_two_cusps: node has no internal edge");
    const int x = graph.edges()[edge].first == node ? graph.edges()[edge].second
                                                    : graph.edges()[edge].first;
    auto edges = graph.edges();
    edges.erase(edges.begin() + edge);
    auto free = graph.free_counts();
    free[node] = 0;
    // x is now bivalent; give it a temporary free edge and smooth it.
    free[x] += 1;
    PantsGraph reduced = remove_node(graph.node_count(), std::move(edges), std::move(free), node);
    return smooth_one_cusp(reduced, x > node ? x - 1 : x);
}

std::string CanonicalForm::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(code.size() * 2);
    for (auto b : code) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

namespace {

CanonicalSearch run_canonical(const Matrix& m, const std::vector<int>& free) {
    CanonicalSearch s(m, free);
    s.search(0);
    return s;
}

}  // namespace

CanonicalForm canonical_form(const PantsGraph& graph) {
    const Matrix m = multiplicities(graph);
    auto s = run_canonical(m, graph.free_counts());
    CanonicalForm out;
    out.code.push_back(static_cast<std::uint8_t>(graph.node_count()));
    out.code.insert(out.code.end(), s.best.begin(), s.best.end());
    return out;
}

PantsGraph canonical_relabel(const PantsGraph& graph) {
    const Matrix m = multiplicities(graph);
    auto s = run_canonical(m, graph.free_counts());
    const int n = graph.node_count();
    Matrix cm(n, std::vector<int>(n, 0));
    std::vector<int> free(n);
    for (int i = 0; i < n; ++i) {
        free[i] = graph.free_counts()[s.best_order[i]];
        for (int j = 0; j < n; ++j) cm[i][j] = m[s.best_order[i]][s.best_order[j]];
    }
    return from_matrix(cm, free);
}

PantsGraph relabel(const PantsGraph& graph, const std::vector<int>& perm) {
    const int n = graph.node_count();
    if (static_cast<int>(perm.size()) != n) invalid("relabel: permutation size mismatch");
    auto edges = graph.edges();
    for (auto& [u, v] : edges) {
        u = perm[u];
        v = perm[v];
    }
    std::vector<int> free(n);
    for (int i = 0; i < n; ++i) free[perm[i]] = graph.free_counts()[i];
    return PantsGraph(n, std::move(edges), std::move(free));
}

namespace {

// Every labelled cubic multigraph (loops allowed) on `n` nodes, fed to `out`.
template <typename Out>
void generate_cubic_matrices(int n, Out&& out) {
    Matrix m(n, std::vector<int>(n, 0));
    std::vector<int> remaining(n, 3);
    // Walk pairs (i, j), i <= j, in row-major order.
    auto rec = [&](auto&& self, int i, int j) -> void {
        if (i == n) {
            out(m);
            return;
        }
        if (j == n) {
            if (remaining[i] == 0) self(self, i + 1, i + 1);
            return;
        }
        if (i == j) {
            // Only emit labelings where every node after the first touches an
            // earlier one; every connected graph has such a labeling.
            if (i > 0) {
                bool touches = false;
                for (int k = 0; k < i && !touches; ++k) touches = m[k][i] > 0;
                if (!touches) return;
            }
            for (int loops = 0; 2 * loops <= remaining[i]; ++loops) {
                m[i][i] = loops;
                remaining[i] -= 2 * loops;
                self(self, i, j + 1);
                remaining[i] += 2 * loops;
            }
            m[i][i] = 0;
            return;
        }
        const int cap = std::min(remaining[i], remaining[j]);
        for (int k = 0; k <= cap; ++k) {
            m[i][j] = m[j][i] = k;
            remaining[i] -= k;
            remaining[j] -= k;
            self(self, i, j + 1);
            remaining[i] += k;
            remaining[j] += k;
        }
        m[i][j] = m[j][i] = 0;
    };
    rec(rec, 0, 0);
}

using ClassMap = std::map<CanonicalForm, PantsGraph>;

void insert_class(ClassMap& classes, const PantsGraph& g) {
    auto code = canonical_form(g);
    if (!classes.count(code)) classes.emplace(std::move(code), canonical_relabel(g));
}

ClassMap cubic_classes(int g) {
    ClassMap classes;
    const int nodes = 2 * g - 2;
    const std::vector<int> no_free(nodes, 0);
    generate_cubic_matrices(nodes, [&](const Matrix& m) {
        PantsGraph graph = from_matrix(m, no_free);
        if (connected(graph)) insert_class(classes, graph);
    });
    return classes;
}

}  // namespace

std::vector<PantsGraph> enumerate_pants_graphs(int g, int n) {
    if (g < 0 || n < 0 || 2 * g - 2 + n < 1)
        fail(ErrorCode::UnsupportedSignature,
             "no pants decomposition for signature (" + std::to_string(g) + "," + std::to_string(n) + ")");

    // levels[k] holds the classes with k cusps.
    std::vector<ClassMap> levels(n + 1);
    if (g >= 2) {
        levels[0] = cubic_classes(g);
    } else if (g == 1) {
        // Seeds: the one- and two-cusp moves applied to a bare closed curve.
        if (n >= 1) insert_class(levels[1], PantsGraph(1, {{0, 0}}, {1}));
        if (n >= 2) insert_class(levels[2], PantsGraph(2, {{0, 0}, {0, 1}}, {0, 2}));
    } else {
        // Seeds: the moves applied to a bare arc with two free ends.
        if (n >= 3) insert_class(levels[3], PantsGraph(1, {}, {3}));
        if (n >= 4) insert_class(levels[4], PantsGraph(2, {{0, 1}}, {2, 2}));
    }
    for (int k = 1; k <= n; ++k) {
        for (const auto& [code, graph] : levels[k - 1])
            for (int e = 0; e < graph.edge_count(); ++e) insert_class(levels[k], attach_one_cusp(graph, e));
        if (k >= 2)
            for (const auto& [code, graph] : levels[k - 2])
                for (int e = 0; e < graph.edge_count(); ++e)
                    insert_class(levels[k], attach_two_cusps(graph, e));
    }
    std::vector<PantsGraph> out;
    out.reserve(levels[n].size());
    for (auto& [code, graph] : levels[n]) out.push_back(graph);
    return out;
}

double count_bound_log(int g, int n) {
    if (g < 0 || n < 0 || 2 * g - 2 + n < 1)
        fail(ErrorCode::UnsupportedSignature, "count_bound: need 2g - 2 + n >= 1");
    const double genus_term = g == 0 ? 0.0 : 3.0 * g * std::log(static_cast<double>(g));
    if (n == 0) return genus_term;
    return std::log(static_cast<double>(n)) + genus_term +
           n * std::log(static_cast<double>(3 * g - 3 + 3 * n));
}

double count_bound(int g, int n) { return std::exp(count_bound_log(g, n)); }

std::string serialize(const PantsGraph& graph) {
    std::ostringstream os;
    os << "nodes " << graph.node_count() << "\n";
    os << "edges";
    for (auto [u, v] : graph.edges()) os << ' ' << u << '-' << v;
    os << "\nfree";
    for (int f : graph.free_counts()) os << ' ' << f;
    os << "\n";
    return os.str();
}

PantsGraph parse_pants_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int nodes = -1;
    bool have_edges = false, have_free = false;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> free;
    int lineno = 0;
    auto parse_error = [&](const std::string& why) {
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "nodes") {
            if (nodes >= 0) parse_error("duplicate field 'nodes'");
            if (!(ls >> nodes) || nodes < 0) parse_error("field 'nodes' needs a nonnegative integer");
        } else if (key == "edges") {
            if (have_edges) parse_error("duplicate field 'edges'");
            have_edges = true;
            std::string tok;
            while (ls >> tok) {
                auto dash = tok.find('-');
                try {
                    if (dash == std::string::npos) throw std::invalid_argument(tok);
                    std::size_t used_a = 0, used_b = 0;
                    const int a = std::stoi(tok.substr(0, dash), &used_a);
                    const int b = std::stoi(tok.substr(dash + 1), &used_b);
                    if (used_a != dash || used_b != tok.size() - dash - 1) throw std::invalid_argument(tok);
                    edges.emplace_back(a, b);
                } catch (const std::exception&) {
                    parse_error("field 'edges': malformed edge '" + tok + "', expected u-v");
                }
            }
            continue;
        } else if (key == "free") {
            if (have_free) parse_error("duplicate field 'free'");
            have_free = true;
            int f;
            while (ls >> f) free.push_back(f);
            if (!ls.eof()) parse_error("field 'free': expected integers");
            continue;
        } else {
            parse_error("unknown field '" + key + "'");
        }
        std::string rest;
        if (ls >> rest) parse_error("trailing text after field '" + key + "'");
    }
    if (nodes < 0) fail(ErrorCode::ParseError, "missing field 'nodes'");
    if (!have_free) fail(ErrorCode::ParseError, "missing field 'free'");
    return PantsGraph(nodes, std::move(edges), std::move(free));
}

}  // namespace isospec
