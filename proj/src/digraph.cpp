#include "twodd/digraph.hpp"

#include "twodd/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace twodd {

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int v) {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            auto& p = parent_[static_cast<std::size_t>(v)];
            p = parent_[static_cast<std::size_t>(p)];
            v = p;
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    }

private:
    std::vector<int> parent_;
};

int other_of_pair(std::span<const int> pair, int a) { return pair[0] == a ? pair[1] : pair[0]; }

std::vector<int> sorted_unique(std::span<const int> ids) {
    std::vector<int> v(ids.begin(), ids.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool in_sorted(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

} // namespace

// ---------------------------------------------------------------- Digraph

Digraph::Digraph(int vertex_count, std::vector<Arc> arcs)
    : n_(vertex_count), arcs_(std::move(arcs)), in_(static_cast<std::size_t>(std::max(vertex_count, 0))),
      out_(static_cast<std::size_t>(std::max(vertex_count, 0))),
      labels_(static_cast<std::size_t>(std::max(vertex_count, 0))) {
    if (vertex_count < 0) {
        throw PreconditionError("negative vertex count");
    }
    for (int a = 0; a < arc_count(); ++a) {
        const Arc& e = arcs_[static_cast<std::size_t>(a)];
        if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_) {
            throw PreconditionError("arc " + std::to_string(a) + " has an endpoint outside [0, " +
                                    std::to_string(n_) + ")");
        }
        out_[static_cast<std::size_t>(e.tail)].push_back(a);
        in_[static_cast<std::size_t>(e.head)].push_back(a);
    }
}

void Digraph::set_label(int v, std::optional<BoundaryLabel> label) {
    labels_.at(static_cast<std::size_t>(v)) = label;
}

bool Digraph::has_labels() const {
    return std::any_of(labels_.begin(), labels_.end(), [](const auto& l) { return l.has_value(); });
}

void Digraph::clear_labels() {
    for (auto& l : labels_) {
        l.reset();
    }
}

// ---------------------------------------------------------------- validation

std::string ValidationReport::describe() const {
    if (ok()) {
        return "ok";
    }
    std::ostringstream os;
    os << violations.size() << " vertex degree violation(s):";
    for (const auto& v : violations) {
        os << " v" << (v.vertex + 1) << "(in=" << v.in_degree << ",out=" << v.out_degree << ")";
    }
    return os.str();
}

ValidationReport validate(const Digraph& g) {
    ValidationReport r;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int in = static_cast<int>(g.in_arcs(v).size());
        const int out = static_cast<int>(g.out_arcs(v).size());
        const bool ok = (in == 0 && out == 2) || (in == 2 && out == 0) || (in == 2 && out == 2);
        if (!ok) {
            r.violations.push_back({v, in, out});
        }
    }
    return r;
}

void require_valid(const Digraph& g) {
    const auto r = validate(g);
    if (!r.ok()) {
        throw PreconditionError("not a 2-digraph: " + r.describe());
    }
}

VertexKind vertex_kind(const Digraph& g, int v) {
    const auto in = g.in_arcs(v).size();
    const auto out = g.out_arcs(v).size();
    if (in == 0 && out == 2) {
        return VertexKind::Entry;
    }
    if (in == 2 && out == 0) {
        return VertexKind::Exit;
    }
    if (in == 2 && out == 2) {
        return VertexKind::Saturated;
    }
    return VertexKind::Invalid;
}

VertexClasses classify_vertices(const Digraph& g) {
    require_valid(g);
    VertexClasses c;
    for (int v = 0; v < g.vertex_count(); ++v) {
        switch (vertex_kind(g, v)) {
        case VertexKind::Entry:
            c.entry.push_back(v);
            break;
        case VertexKind::Exit:
            c.exit.push_back(v);
            break;
        default:
            c.saturated.push_back(v);
            break;
        }
    }
    return c;
}

bool is_two_diregular(const Digraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (vertex_kind(g, v) != VertexKind::Saturated) {
            return false;
        }
    }
    return g.vertex_count() > 0;
}

// ---------------------------------------------------------------- ACs

std::vector<int> AltCycle::forward() const {
    std::vector<int> f;
    for (std::size_t i = 0; i < arcs.size(); i += 2) {
        f.push_back(arcs[i]);
    }
    return f;
}

std::vector<int> AltCycle::backward() const {
    std::vector<int> b;
    for (std::size_t i = 1; i < arcs.size(); i += 2) {
        b.push_back(arcs[i]);
    }
    return b;
}

int AcDecomposition::in_ac(const Digraph& g, int v) const {
    const auto in = g.in_arcs(v);
    return in.empty() ? -1 : ac_of_arc[static_cast<std::size_t>(in[0])];
}

int AcDecomposition::out_ac(const Digraph& g, int v) const {
    const auto out = g.out_arcs(v);
    return out.empty() ? -1 : ac_of_arc[static_cast<std::size_t>(out[0])];
}

AcDecomposition ac_decompose(const Digraph& g) {
    require_valid(g);
    AcDecomposition d;
    d.ac_of_arc.assign(static_cast<std::size_t>(g.arc_count()), -1);
    d.backward_arc.assign(static_cast<std::size_t>(g.arc_count()), false);
    for (int start = 0; start < g.arc_count(); ++start) {
        if (d.ac_of_arc[static_cast<std::size_t>(start)] != -1) {
            continue;
        }
        const int id = d.size();
        AltCycle x;
        int e = start;
        bool at_head = true; // next join is through the shared head
        do {
            d.ac_of_arc[static_cast<std::size_t>(e)] = id;
            d.backward_arc[static_cast<std::size_t>(e)] = (x.arcs.size() % 2) == 1;
            x.arcs.push_back(e);
            const Arc& a = g.arc(e);
            e = at_head ? other_of_pair(g.in_arcs(a.head), e) : other_of_pair(g.out_arcs(a.tail), e);
            at_head = !at_head;
        } while (e != start);
        d.cycles.push_back(std::move(x));
    }
    return d;
}

bool ac_is_clean(const Digraph& g, const AltCycle& x) {
    std::vector<int> shared;
    for (std::size_t i = 0; i < x.arcs.size(); i += 2) {
        shared.push_back(g.arc(x.arcs[i]).head);     // shared with arcs[i+1]
        shared.push_back(g.arc(x.arcs[i + 1]).tail); // shared with arcs[i+2]
    }
    std::sort(shared.begin(), shared.end());
    return std::adjacent_find(shared.begin(), shared.end()) == shared.end();
}

bool graph_is_clean(const Digraph& g) {
    const auto dec = ac_decompose(g);
    return std::all_of(dec.cycles.begin(), dec.cycles.end(),
                       [&](const AltCycle& x) { return ac_is_clean(g, x); });
}

std::vector<std::vector<int>> cycles_of_arc_set(const Digraph& g, std::span<const int> arc_ids) {
    std::vector<int> succ(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<bool> has_pred(static_cast<std::size_t>(g.vertex_count()), false);
    for (int a : arc_ids) {
        auto& s = succ[static_cast<std::size_t>(g.arc(a).tail)];
        if (s != -1 || has_pred[static_cast<std::size_t>(g.arc(a).head)]) {
            throw PreconditionError("cycles_of_arc_set: not a 1-digraph");
        }
        s = g.arc(a).head;
        has_pred[static_cast<std::size_t>(g.arc(a).head)] = true;
    }
    std::vector<int> state(static_cast<std::size_t>(g.vertex_count()), 0); // 0 new, 1 on walk, 2 done
    std::vector<std::vector<int>> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (state[static_cast<std::size_t>(v)] != 0 || succ[static_cast<std::size_t>(v)] == -1) {
            continue;
        }
        std::vector<int> walk;
        int u = v;
        while (u != -1 && state[static_cast<std::size_t>(u)] == 0) {
            state[static_cast<std::size_t>(u)] = 1;
            walk.push_back(u);
            u = succ[static_cast<std::size_t>(u)];
        }
        if (u != -1 && state[static_cast<std::size_t>(u)] == 1) {
            auto it = std::find(walk.begin(), walk.end(), u);
            out.emplace_back(it, walk.end());
        }
        for (int w : walk) {
            state[static_cast<std::size_t>(w)] = 2;
        }
    }
    return out;
}

bool ac_is_closed(const Digraph& g, const AltCycle& x) {
    return !cycles_of_arc_set(g, x.forward()).empty() && !cycles_of_arc_set(g, x.backward()).empty();
}

// ---------------------------------------------------------------- connectivity

std::vector<int> component_of_vertices(const Digraph& g) {
    UnionFind uf(g.vertex_count());
    for (const auto& a : g.arcs()) {
        uf.unite(a.tail, a.head);
    }
    std::vector<int> id(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> root_id(static_cast<std::size_t>(g.vertex_count()), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto& r = root_id[static_cast<std::size_t>(uf.find(v))];
        if (r == -1) {
            r = next++;
        }
        id[static_cast<std::size_t>(v)] = r;
    }
    return id;
}

int components(const Digraph& g) {
    const auto id = component_of_vertices(g);
    return id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
}

bool is_connected(const Digraph& g) { return components(g) == 1; }

// ---------------------------------------------------------------- split / splice

SplitResult split(const Digraph& g, std::span<const int> vertices) {
    std::vector<Arc> arcs = g.arcs();
    SplitResult r;
    int next = g.vertex_count();
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    for (int v : vertices) {
        if (v < 0 || v >= g.vertex_count() || vertex_kind(g, v) != VertexKind::Saturated) {
            throw PreconditionError("split: vertex " + std::to_string(v + 1) + " is not saturated");
        }
        if (seen[static_cast<std::size_t>(v)]) {
            throw PreconditionError("split: vertex listed twice");
        }
        seen[static_cast<std::size_t>(v)] = true;
        for (int a : g.out_arcs(v)) {
            arcs[static_cast<std::size_t>(a)].tail = next;
        }
        r.out_vertex.push_back(next++);
    }
    r.graph = Digraph(next, std::move(arcs));
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.label(v) && !seen[static_cast<std::size_t>(v)]) {
            r.graph.set_label(v, g.label(v));
        }
    }
    return r;
}

SpliceResult splice_pairs(const Digraph& g, std::span<const std::pair<int, int>> entry_exit) {
    const int n = g.vertex_count();
    std::vector<int> merged_into(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& [entry, exit] : entry_exit) {
        if (entry < 0 || entry >= n || exit < 0 || exit >= n) {
            throw PreconditionError("splice: vertex out of range");
        }
        if (vertex_kind(g, entry) != VertexKind::Entry || vertex_kind(g, exit) != VertexKind::Exit) {
            throw PreconditionError("splice: need an entry vertex and an exit vertex (got v" +
                                    std::to_string(entry + 1) + ", v" + std::to_string(exit + 1) + ")");
        }
        if (used[static_cast<std::size_t>(entry)] || used[static_cast<std::size_t>(exit)]) {
            throw PreconditionError("splice: vertex used twice");
        }
        used[static_cast<std::size_t>(entry)] = used[static_cast<std::size_t>(exit)] = true;
        merged_into[static_cast<std::size_t>(entry)] = exit;
    }
    SpliceResult r;
    r.old_to_new.assign(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (merged_into[static_cast<std::size_t>(v)] == -1) {
            r.old_to_new[static_cast<std::size_t>(v)] = next++;
        }
    }
    for (int v = 0; v < n; ++v) {
        if (const int into = merged_into[static_cast<std::size_t>(v)]; into != -1) {
            r.old_to_new[static_cast<std::size_t>(v)] = r.old_to_new[static_cast<std::size_t>(into)];
        }
    }
    std::vector<Arc> arcs;
    arcs.reserve(g.arcs().size());
    for (const auto& a : g.arcs()) {
        arcs.push_back({r.old_to_new[static_cast<std::size_t>(a.tail)],
                        r.old_to_new[static_cast<std::size_t>(a.head)]});
    }
    r.graph = Digraph(next, std::move(arcs));
    for (int v = 0; v < n; ++v) {
        if (g.label(v) && !used[static_cast<std::size_t>(v)]) {
            r.graph.set_label(r.old_to_new[static_cast<std::size_t>(v)], g.label(v));
        }
    }
    return r;
}

SpliceResult splice_pair(const Digraph& g, int entry, int exit) {
    const std::pair<int, int> p{entry, exit};
    return splice_pairs(g, std::span<const std::pair<int, int>>(&p, 1));
}

namespace {

// Component count after splitting `set` without materialising the graph.
int components_after_split(const Digraph& g, const std::vector<int>& set) {
    const int n = g.vertex_count();
    std::vector<int> out_id(static_cast<std::size_t>(n), -1);
    int next = n;
    for (int v : set) {
        out_id[static_cast<std::size_t>(v)] = next++;
    }
    UnionFind uf(next);
    int comps = next;
    for (const auto& a : g.arcs()) {
        const int t = out_id[static_cast<std::size_t>(a.tail)] != -1 ? out_id[static_cast<std::size_t>(a.tail)]
                                                                     : a.tail;
        if (uf.unite(t, a.head)) {
            --comps;
        }
    }
    return comps;
}

template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
    if (k > n || k <= 0) {
        return;
    }
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) {
            --i;
        }
        if (i < 0) {
            return;
        }
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

} // namespace

std::vector<std::vector<int>> find_split_sets(const Digraph& g, int k_max) {
    require_valid(g);
    if (!is_connected(g)) {
        throw PreconditionError("find_split_sets: graph is disconnected");
    }
    const auto sat = classify_vertices(g).saturated;
    const int base = 1;
    std::vector<std::vector<int>> found;
    for (int k = 1; k <= k_max; ++k) {
        for_each_combination(static_cast<int>(sat.size()), k, [&](const std::vector<int>& idx) {
            std::vector<int> set;
            for (int i : idx) {
                set.push_back(sat[static_cast<std::size_t>(i)]);
            }
            for (const auto& f : found) {
                if (std::includes(set.begin(), set.end(), f.begin(), f.end())) {
                    return;
                }
            }
            if (components_after_split(g, set) > base) {
                found.push_back(std::move(set));
            }
        });
    }
    return found;
}

bool is_2_splittable(const Digraph& g) { return !find_split_sets(g, 2).empty(); }

// ---------------------------------------------------------------- subgraphs

InducedSubgraph induced_by_acs(const Digraph& g, const AcDecomposition& dec,
                               std::span<const int> ac_ids) {
    const auto ks = sorted_unique(ac_ids);
    if (ks.empty()) {
        throw PreconditionError("induced_by_acs: empty AC set");
    }
    for (int k : ks) {
        if (k < 0 || k >= dec.size()) {
            throw PreconditionError("induced_by_acs: AC index out of range");
        }
    }
    InducedSubgraph s;
    std::vector<int> new_id(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int a = 0; a < g.arc_count(); ++a) {
        if (in_sorted(ks, dec.ac_of_arc[static_cast<std::size_t>(a)])) {
            s.arc_of.push_back(a);
            new_id[static_cast<std::size_t>(g.arc(a).tail)] = 0;
            new_id[static_cast<std::size_t>(g.arc(a).head)] = 0;
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (new_id[static_cast<std::size_t>(v)] == 0) {
            new_id[static_cast<std::size_t>(v)] = static_cast<int>(s.vertex_of.size());
            s.vertex_of.push_back(v);
        }
    }
    std::vector<Arc> arcs;
    for (int a : s.arc_of) {
        arcs.push_back({new_id[static_cast<std::size_t>(g.arc(a).tail)],
                        new_id[static_cast<std::size_t>(g.arc(a).head)]});
    }
    s.graph = Digraph(static_cast<int>(s.vertex_of.size()), std::move(arcs));
    return s;
}

Digraph disjoint_union(const Digraph& a, const Digraph& b) {
    std::vector<Arc> arcs = a.arcs();
    const int off = a.vertex_count();
    for (const auto& e : b.arcs()) {
        arcs.push_back({e.tail + off, e.head + off});
    }
    Digraph u(a.vertex_count() + b.vertex_count(), std::move(arcs));
    for (int v = 0; v < a.vertex_count(); ++v) {
        u.set_label(v, a.label(v));
    }
    for (int v = 0; v < b.vertex_count(); ++v) {
        u.set_label(v + off, b.label(v));
    }
    return u;
}

// ---------------------------------------------------------------- labelling

RouteLabeling route_labeling(const Digraph& g) {
    const auto cls = classify_vertices(g);
    RouteLabeling l;
    const std::size_t n = cls.entry.size();
    bool all_labelled = true;
    for (int v : cls.entry) {
        all_labelled = all_labelled && g.label(v).has_value();
    }
    for (int v : cls.exit) {
        all_labelled = all_labelled && g.label(v).has_value();
    }
    if (!all_labelled || n == 0) {
        if (g.has_labels() && n > 0) {
            throw PreconditionError("route labels present on some but not all unsaturated vertices");
        }
        l.entries = cls.entry;
        l.exits = cls.exit;
        return l;
    }
    l.entries.assign(n, -1);
    l.exits.assign(n, -1);
    auto place = [&](std::vector<int>& slots, int v, VertexKind want) {
        const auto& lab = *g.label(v);
        if (lab.kind != want) {
            throw PreconditionError("vertex " + std::to_string(v + 1) + " label kind disagrees with its degree");
        }
        if (lab.index < 0 || static_cast<std::size_t>(lab.index) >= n ||
            slots[static_cast<std::size_t>(lab.index)] != -1) {
            throw PreconditionError("route labels are not a bijection onto 1.." + std::to_string(n));
        }
        slots[static_cast<std::size_t>(lab.index)] = v;
    };
    for (int v : cls.entry) {
        place(l.entries, v, VertexKind::Entry);
    }
    for (int v : cls.exit) {
        place(l.exits, v, VertexKind::Exit);
    }
    return l;
}

Digraph with_labeling(const Digraph& g, const RouteLabeling& labels) {
    Digraph h = g;
    h.clear_labels();
    for (int i = 0; i < labels.size(); ++i) {
        h.set_label(labels.entries[static_cast<std::size_t>(i)], BoundaryLabel{VertexKind::Entry, i});
        h.set_label(labels.exits[static_cast<std::size_t>(i)], BoundaryLabel{VertexKind::Exit, i});
    }
    route_labeling(h); // rejects a labeling that does not match the degrees
    return h;
}

Digraph spliced_graph(const Digraph& f, const Digraph& fp, const SpliceMap& m) {
    const auto lf = route_labeling(f);
    const auto lp = route_labeling(fp);
    const int n = lf.size();
    if (n == 0 || lp.size() != n) {
        throw PreconditionError("spliced_graph: boundary sizes differ or are zero (" + std::to_string(n) +
                                " vs " + std::to_string(lp.size()) + ")");
    }
    if (m.x.degree() != n || m.y.degree() != n) {
        throw PreconditionError("spliced_graph: splicing permutations must have degree " + std::to_string(n));
    }
    Digraph u = disjoint_union(f, fp);
    const int off = f.vertex_count();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        pairs.emplace_back(off + lp.entries[static_cast<std::size_t>(m.x[i])], lf.exits[static_cast<std::size_t>(i)]);
    }
    for (int j = 0; j < n; ++j) {
        pairs.emplace_back(lf.entries[static_cast<std::size_t>(m.y[j])], off + lp.exits[static_cast<std::size_t>(j)]);
    }
    auto r = splice_pairs(u, pairs);
    r.graph.clear_labels();
    return std::move(r.graph);
}

AcSubsetSides sides_of_ac_subset(const Digraph& g, const AcDecomposition& dec,
                                 std::span<const int> ac_ids) {
    if (!is_two_diregular(g)) {
        throw PreconditionError("AC subset boundary requires a 2-dd");
    }
    const auto ks = sorted_unique(ac_ids);
    if (ks.empty() || static_cast<int>(ks.size()) >= dec.size()) {
        throw PreconditionError("AC subset must be non-empty and proper");
    }
    std::vector<int> comp;
    for (int k = 0; k < dec.size(); ++k) {
        if (!in_sorted(ks, k)) {
            comp.push_back(k);
        }
    }
    AcSubsetSides s;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const bool in_k = in_sorted(ks, dec.in_ac(g, v));
        const bool out_k = in_sorted(ks, dec.out_ac(g, v));
        if (out_k && !in_k) {
            s.k_entries.push_back(v);
        } else if (in_k && !out_k) {
            s.k_exits.push_back(v);
        }
    }
    auto ksub = induced_by_acs(g, dec, ks);
    auto csub = induced_by_acs(g, dec, comp);
    std::vector<int> k_new(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> c_new(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < ksub.vertex_of.size(); ++i) {
        k_new[static_cast<std::size_t>(ksub.vertex_of[i])] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < csub.vertex_of.size(); ++i) {
        c_new[static_cast<std::size_t>(csub.vertex_of[i])] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < s.k_entries.size(); ++i) {
        const int v = s.k_entries[i];
        ksub.graph.set_label(k_new[static_cast<std::size_t>(v)], BoundaryLabel{VertexKind::Entry, static_cast<int>(i)});
        csub.graph.set_label(c_new[static_cast<std::size_t>(v)], BoundaryLabel{VertexKind::Exit, static_cast<int>(i)});
    }
    for (std::size_t i = 0; i < s.k_exits.size(); ++i) {
        const int v = s.k_exits[i];
        ksub.graph.set_label(k_new[static_cast<std::size_t>(v)], BoundaryLabel{VertexKind::Exit, static_cast<int>(i)});
        csub.graph.set_label(c_new[static_cast<std::size_t>(v)], BoundaryLabel{VertexKind::Entry, static_cast<int>(i)});
    }
    s.k_side = std::move(ksub.graph);
    s.complement_side = std::move(csub.graph);
    s.k_vertex_of = std::move(ksub.vertex_of);
    s.complement_vertex_of = std::move(csub.vertex_of);
    return s;
}

int saturated_count_of_subset(const Digraph& g, const AcDecomposition& dec, std::span<const int> ac_ids) {
    const auto ks = sorted_unique(ac_ids);
    int s = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int i = dec.in_ac(g, v);
        const int o = dec.out_ac(g, v);
        if (i != -1 && o != -1 && in_sorted(ks, i) && in_sorted(ks, o)) {
            ++s;
        }
    }
    return s;
}

} // namespace twodd
