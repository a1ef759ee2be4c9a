#pragma once

#include "twodd/perm.hpp"

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twodd {

struct Arc {
    int tail = 0;
    int head = 0;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

enum class VertexKind { Entry, Exit, Saturated, Invalid };

/// Route numbering bound to an unsaturated vertex: entry k or exit k (0-based).
struct BoundaryLabel {
    VertexKind kind = VertexKind::Entry;
    int index = 0;
    friend bool operator==(const BoundaryLabel&, const BoundaryLabel&) = default;
};

/// A finite digraph with an indexed arc multiset. Parallel arcs and loops are
/// representable; whether the graph is a 2-digraph is checked by validate().
/// Vertex and arc ids are 0-based.
class Digraph {
public:
    Digraph() = default;
    Digraph(int vertex_count, std::vector<Arc> arcs);

    int vertex_count() const noexcept { return n_; }
    int arc_count() const noexcept { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    const Arc& arc(int a) const { return arcs_[static_cast<std::size_t>(a)]; }
    std::span<const int> in_arcs(int v) const { return in_[static_cast<std::size_t>(v)]; }
    std::span<const int> out_arcs(int v) const { return out_[static_cast<std::size_t>(v)]; }

    const std::optional<BoundaryLabel>& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
    void set_label(int v, std::optional<BoundaryLabel> label);
    bool has_labels() const;
    void clear_labels();

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_ && a.labels_ == b.labels_;
    }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> in_;
    std::vector<std::vector<int>> out_;
    std::vector<std::optional<BoundaryLabel>> labels_;
};

struct Violation {
    int vertex = 0;
    int in_degree = 0;
    int out_degree = 0;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
    std::string describe() const;
};

/// Checks the 2-digraph degree condition at every vertex:
/// (in, out) in {(0,2), (2,0), (2,2)}.
ValidationReport validate(const Digraph& g);
/// Throws PreconditionError with the validation report unless g is a 2-digraph.
void require_valid(const Digraph& g);

VertexKind vertex_kind(const Digraph& g, int v);

struct VertexClasses {
    std::vector<int> entry;
    std::vector<int> exit;
    std::vector<int> saturated;
};

VertexClasses classify_vertices(const Digraph& g);

/// Valid and every vertex saturated (a 2-dd).
bool is_two_diregular(const Digraph& g);

/// One alternating cycle. Even positions are the forward half, odd positions
/// the backward half; arcs[2i] and arcs[2i+1] share their head, arcs[2i+1]
/// and arcs[2i+2] share their tail.
struct AltCycle {
    std::vector<int> arcs;

    int half_length() const noexcept { return static_cast<int>(arcs.size() / 2); }
    bool is_odd() const noexcept { return (half_length() & 1) == 1; }
    std::vector<int> forward() const;
    std::vector<int> backward() const;
};

struct AcDecomposition {
    std::vector<AltCycle> cycles;
    std::vector<int> ac_of_arc;
    std::vector<bool> backward_arc;

    int size() const noexcept { return static_cast<int>(cycles.size()); }
    /// AC owning the in-arcs of v, or -1 for an entry vertex.
    int in_ac(const Digraph& g, int v) const;
    /// AC owning the out-arcs of v, or -1 for an exit vertex.
    int out_ac(const Digraph& g, int v) const;
};

/// Partition of the arcs into alternating cycles in linear time. Each AC is
/// started from its smallest unvisited arc, which lands in the forward half.
AcDecomposition ac_decompose(const Digraph& g);

/// The 2r shared vertices of the AC are pairwise distinct.
bool ac_is_clean(const Digraph& g, const AltCycle& x);
bool graph_is_clean(const Digraph& g);

/// Both halves of the AC, taken alone, contain a directed cycle.
bool ac_is_closed(const Digraph& g, const AltCycle& x);

/// Vertex lists of the directed cycles formed by a set of arcs in which every
/// vertex has at most one outgoing and one incoming arc.
std::vector<std::vector<int>> cycles_of_arc_set(const Digraph& g, std::span<const int> arc_ids);

/// Weak components.
int components(const Digraph& g);
bool is_connected(const Digraph& g);
/// Component id per vertex, numbered by smallest vertex.
std::vector<int> component_of_vertices(const Digraph& g);

struct SplitResult {
    Digraph graph;
    /// For each split vertex v (in the given order) the id of the new vertex
    /// that took over its out-arcs; v itself keeps the in-arcs.
    std::vector<int> out_vertex;
};

SplitResult split(const Digraph& g, std::span<const int> vertices);

struct SpliceResult {
    Digraph graph;
    /// Old vertex id to new id; a merged entry maps to its exit's new id.
    std::vector<int> old_to_new;
};

/// Identifies entry vertex `entry` with exit vertex `exit`; the merged vertex
/// takes the exit's place and later ids shift down by one.
SpliceResult splice_pair(const Digraph& g, int entry, int exit);

/// Batched splice of (entry, exit) pairs; every vertex may appear once.
SpliceResult splice_pairs(const Digraph& g, std::span<const std::pair<int, int>> entry_exit);

/// All minimal split-sets of size <= k_max in increasing size, each sorted.
std::vector<std::vector<int>> find_split_sets(const Digraph& g, int k_max);
bool is_2_splittable(const Digraph& g);

struct InducedSubgraph {
    Digraph graph;
    std::vector<int> vertex_of; // new id -> old id
    std::vector<int> arc_of;    // new arc -> old arc
};

/// Subgraph on the arcs of the given ACs; vertex and arc order preserved.
InducedSubgraph induced_by_acs(const Digraph& g, const AcDecomposition& dec,
                               std::span<const int> ac_ids);

/// Disjoint union; the vertices of b are shifted by a.vertex_count().
Digraph disjoint_union(const Digraph& a, const Digraph& b);

/// entries[i] / exits[i] are the vertices carrying route label i.
struct RouteLabeling {
    std::vector<int> entries;
    std::vector<int> exits;
    int size() const noexcept { return static_cast<int>(entries.size()); }
};

/// Labels from the graph's label annotations when every unsaturated vertex
/// carries one, otherwise ascending vertex id within each class.
RouteLabeling route_labeling(const Digraph& g);
/// Copy of g annotated with the given labeling.
Digraph with_labeling(const Digraph& g, const RouteLabeling& labels);

/// Splicing permutations: exit i of F joins entry x(i) of F', exit j of F'
/// joins entry y(j) of F, under each graph's route labeling.
struct SpliceMap {
    Perm x;
    Perm y;
};

Digraph spliced_graph(const Digraph& f, const Digraph& fp, const SpliceMap& m);

/// Boundary between the subgraph induced by an AC subset K and its
/// complement: k_entries / k_exits are the vertices of g that are entries /
/// exits of the K side, in ascending id order.
struct AcSubsetSides {
    Digraph k_side;
    Digraph complement_side;
    std::vector<int> k_entries;
    std::vector<int> k_exits;
    std::vector<int> k_vertex_of;
    std::vector<int> complement_vertex_of;
};

/// Both sides labelled so that g is the splice of the two under x = y = I:
/// K entry i = complement exit i = k_entries[i], and K exit i = complement
/// entry i = k_exits[i]. K must be a non-empty proper subset.
AcSubsetSides sides_of_ac_subset(const Digraph& g, const AcDecomposition& dec,
                                 std::span<const int> ac_ids);

/// Number of vertices whose in- and out-ACs both lie in K.
int saturated_count_of_subset(const Digraph& g, const AcDecomposition& dec,
                              std::span<const int> ac_ids);

} // namespace twodd
