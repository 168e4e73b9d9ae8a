#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isospec {

struct Signature {
    int g = 0;
    int n = 0;

    /// Number of pairs of pants, 2g - 2 + n.
    int pants() const { return 2 * g - 2 + n; }
    /// Number of pants curves, 3g - 3 + n.
    int curves() const { return 3 * g - 3 + n; }

    auto operator<=>(const Signature&) const = default;
};

/// One of the three half-edges at a node. Internal half-edges name the edge
/// and which end of it (0 = first endpoint in serialization order).
struct Slot {
    bool free = false;
    int edge = -1;
    int end = -1;
};

/// Pseudo-3-regular multigraph with free edges: the combinatorial skeleton
/// of a pants decomposition. Nodes are pairs of pants, internal edges are
/// pants curves, free edges are cusps.
///
/// Edge order and endpoint order are significant: they fix the positional
/// meaning of length/twist parameters and the slot numbering at each node.
class PantsGraph {
public:
    PantsGraph() = default;
    PantsGraph(int nodes, std::vector<std::pair<int, int>> edges, std::vector<int> free_edges);

    int node_count() const { return nodes_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& free_counts() const { return free_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int free_edge_count() const;

    /// Half-edges at `node` in slot order: internal half-edges in edge order
    /// (a loop contributes both ends), then free edges. Requires the degree
    /// condition to hold at `node`.
    std::array<Slot, 3> slots(int node) const;

    /// Slot index of (edge, end) at its node.
    int slot_of(int edge, int end) const;

    bool operator==(const PantsGraph&) const = default;

private:
    int nodes_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> free_;
};

/// Checks every pseudo-3-regularity invariant and returns the recovered
/// signature. Throws InvalidGraph naming the first violation.
Signature validate(const PantsGraph& graph);

/// Inserts a node in the middle of `edge` and hangs one free edge on it.
PantsGraph attach_one_cusp(const PantsGraph& graph, int edge);

/// Inserts a node in the middle of `edge`, joins it to a new node, and hangs
/// two free edges on the new node.
PantsGraph attach_two_cusps(const PantsGraph& graph, int edge);

/// Reverse of attach_one_cusp: removes a node carrying one free edge and two
/// non-loop internal half-edges, fusing its two edges.
PantsGraph smooth_one_cusp(const PantsGraph& graph, int node);

/// Reverse of attach_two_cusps: removes a node carrying two free edges
/// together with its edge, then smooths the neighbour.
PantsGraph detach_two_cusps(const PantsGraph& graph, int node);

struct CanonicalForm {
    std::vector<std::uint8_t> code;

    std::string hex() const;
    auto operator<=>(const CanonicalForm&) const = default;
};

/// Isomorphism invariant of multigraphs with unlabeled free edges. Equal
/// codes iff isomorphic.
CanonicalForm canonical_form(const PantsGraph& graph);

/// The representative of graph's isomorphism class that canonical_form
/// minimizes over: nodes relabeled, edges sorted as (i <= j).
PantsGraph canonical_relabel(const PantsGraph& graph);

/// Relabels nodes by `perm` (old node i becomes perm[i]); edge order kept.
PantsGraph relabel(const PantsGraph& graph, const std::vector<int>& perm);

/// One canonical representative per isomorphism class of pants graphs of
/// signature (g, n), sorted by canonical code. Throws UnsupportedSignature
/// when 2g - 2 + n < 1.
std::vector<PantsGraph> enumerate_pants_graphs(int g, int n);

/// Upper bound on the number of pants graphs of signature (g, n):
/// n g^{3g} (3g - 3 + 3n)^n for n > 0 and g^{3g} for n = 0, with g^{3g} = 1
/// at g = 0. May overflow to +inf; see count_bound_log.
double count_bound(int g, int n);
double count_bound_log(int g, int n);

/// Text format:
///   nodes N
///   edges u-v u-v ...
///   free f_0 f_1 ... f_{N-1}
std::string serialize(const PantsGraph& graph);
PantsGraph parse_pants_graph(std::string_view text);

}  // namespace isospec
