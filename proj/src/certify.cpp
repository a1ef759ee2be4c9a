#include "twodd/certify.hpp"

#include "twodd/error.hpp"
#include "twodd/graph_io.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace twodd {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::NonHamiltonian:
        return "NON_HAMILTONIAN";
    case Verdict::Hamiltonian:
        return "HAMILTONIAN";
    case Verdict::Undecided:
        break;
    }
    return "UNDECIDED";
}

std::string to_string(StepKind k) {
    switch (k) {
    case StepKind::EvenFamily:
        return "EVEN_FAMILY";
    case StepKind::Disconnected:
        return "DISCONNECTED";
    case StepKind::ClosedAc:
        return "CLOSED_AC";
    case StepKind::Split:
        return "SPLIT";
    case StepKind::Residue:
        return "RESIDUE";
    case StepKind::Replace:
        return "REPLACE";
    case StepKind::Collapse:
        return "COLLAPSE";
    case StepKind::BruteForce:
        break;
    }
    return "BRUTE_FORCE";
}

namespace {

Step step_of(StepKind k) {
    Step s;
    s.kind = k;
    return s;
}

Certificate single(Verdict v, Step s) {
    Certificate c;
    c.verdict = v;
    c.steps.push_back(std::move(s));
    return c;
}

std::vector<int> normalized_subset(const AcDecomposition& dec, std::vector<int> k) {
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    if (k.empty() || static_cast<int>(k.size()) >= dec.size() || k.front() < 0 || k.back() >= dec.size()) {
        throw PreconditionError("AC subset must be a non-empty proper subset of the ACs");
    }
    return k;
}

bool all_acs_have_length(const AcDecomposition& dec, std::size_t arcs) {
    return std::all_of(dec.cycles.begin(), dec.cycles.end(),
                       [&](const AltCycle& x) { return x.arcs.size() == arcs; });
}

// Parity class shared by E_Q and R_Q for a uniform route set Q of degree n.
int excluded_parity(const PermSet& q) { return (set_parity(q) + (q.degree() - 1)) % 2; }

// ------------------------------------------------------------ split parts

Digraph induced_by_vertices(const Digraph& g, const std::vector<int>& verts) {
    std::vector<int> id(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        id[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);
    }
    std::vector<Arc> arcs;
    for (const auto& a : g.arcs()) {
        if (id[static_cast<std::size_t>(a.tail)] != -1) {
            arcs.push_back({id[static_cast<std::size_t>(a.tail)], id[static_cast<std::size_t>(a.head)]});
        }
    }
    return Digraph(static_cast<int>(verts.size()), std::move(arcs));
}

// Components after splitting `set`, each with its single entry/exit pair
// spliced back. Empty when some component does not have exactly one of each.
std::vector<Digraph> split_parts(const Digraph& g, const std::vector<int>& set) {
    const auto s = split(g, set);
    const auto comp = component_of_vertices(s.graph);
    const int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<int>> verts(static_cast<std::size_t>(nc));
    for (int v = 0; v < s.graph.vertex_count(); ++v) {
        verts[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
    }
    std::vector<Digraph> parts;
    for (const auto& vs : verts) {
        const Digraph h = induced_by_vertices(s.graph, vs);
        const auto cls = classify_vertices(h);
        if (cls.entry.size() != 1 || cls.exit.size() != 1) {
            return {};
        }
        parts.push_back(splice_pair(h, cls.entry[0], cls.exit[0]).graph);
    }
    return parts;
}

Certificate check_impl(const Digraph& g, const CheckOptions& opt, int depth);
VerifyResult verify_impl(const Digraph& g, const Certificate& c, const CheckOptions& opt, int depth);

std::optional<Certificate> split_impl(const Digraph& g, const CheckOptions& opt, int depth) {
    if (depth >= opt.max_split_depth || !is_two_diregular(g) || !is_connected(g)) {
        return std::nullopt;
    }
    for (const auto& set : find_split_sets(g, 2)) {
        auto parts = split_parts(g, set);
        if (parts.size() < 2) {
            continue;
        }
        Step st;
        st.kind = StepKind::Split;
        st.split_set = set;
        bool any_non = false;
        bool all_ham = true;
        for (const auto& p : parts) {
            st.parts.push_back(check_impl(p, opt, depth + 1));
            any_non = any_non || st.parts.back().verdict == Verdict::NonHamiltonian;
            all_ham = all_ham && st.parts.back().verdict == Verdict::Hamiltonian;
            if (any_non) {
                break;
            }
        }
        if (any_non) {
            return single(Verdict::NonHamiltonian, std::move(st));
        }
        if (all_ham) {
            return single(Verdict::Hamiltonian, std::move(st));
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------------ residue

struct ResidueTry {
    std::optional<Step> step;
    std::string why;
};

ResidueTry residue_try(const Digraph& g, const AcDecomposition& dec, const std::vector<int>& k,
                       const CheckOptions& opt, bool materialise) {
    ResidueTry t;
    const auto sides = sides_of_ac_subset(g, dec, k);
    const int n = static_cast<int>(sides.k_entries.size());
    if (n == 0) {
        t.why = "K shares no vertex with its complement";
        return t;
    }
    if (n > opt.max_residue_degree || n > kMaxResidueDegree) {
        t.why = "boundary of " + std::to_string(n) + " exceeds the residue degree cap";
        return t;
    }
    if (!is_connected(sides.k_side) || !is_connected(sides.complement_side)) {
        t.why = "a side is disconnected";
        return t;
    }
    std::optional<RouteSet> p;
    std::optional<RouteSet> q;
    try {
        p = open_routes(sides.complement_side, opt.max_factor_bits);
        q = open_routes(sides.k_side, opt.max_factor_bits);
    } catch (const PreconditionError&) {
        t.why = "a side is closed";
        return t;
    }
    if (uniformity(p->routes) == Uniformity::Mixed || uniformity(q->routes) == Uniformity::Mixed) {
        t.why = "a route set is not uniform";
        return t;
    }
    const Perm id(n);
    const auto pc = classify_parity_case(n, p->routes, q->routes, id, id);
    Step st;
    st.kind = StepKind::Residue;
    st.acs = k;
    st.routes_p = p->routes;
    st.routes_q = q->routes;
    if (pc.cls == ParityClass::Boring) {
        st.boring = true;
        t.step = std::move(st);
        return t;
    }
    if (intersects_cyclic(p->routes, id, q->routes, id)) {
        t.why = "routes meet a cyclic product (Hamiltonian across this boundary)";
        return t;
    }
    if (materialise) {
        st.residue_p = residue(p->routes);
        if (!is_subset(q->routes, *st.residue_p)) {
            // cannot happen in an interesting case
            t.why = "K routes not inside the residue";
            return t;
        }
    }
    t.step = std::move(st);
    return t;
}

std::vector<std::vector<int>> residue_candidates(const Digraph& g, const AcDecomposition& dec,
                                                 const CheckOptions& opt) {
    const int m = dec.size();
    std::vector<std::vector<int>> out;
    if (m < 2) {
        return out;
    }
    if (m <= opt.max_residue_acs) {
        std::vector<std::uint32_t> masks;
        for (std::uint32_t mask = 1; mask < (1U << m) - 1; mask += 2) {
            masks.push_back(mask);
        }
        std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
            return __builtin_popcount(a) < __builtin_popcount(b);
        });
        for (auto mask : masks) {
            std::vector<int> k;
            for (int i = 0; i < m; ++i) {
                if ((mask >> i) & 1U) {
                    k.push_back(i);
                }
            }
            out.push_back(std::move(k));
        }
        return out;
    }
    // breadth-first AC neighbourhoods grown from every AC
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int i = dec.in_ac(g, v);
        const int o = dec.out_ac(g, v);
        if (i != -1 && o != -1 && i != o) {
            adj[static_cast<std::size_t>(i)].push_back(o);
            adj[static_cast<std::size_t>(o)].push_back(i);
        }
    }
    for (int s = 0; s < m; ++s) {
        std::vector<int> order{s};
        std::vector<bool> seen(static_cast<std::size_t>(m), false);
        seen[static_cast<std::size_t>(s)] = true;
        for (std::size_t h = 0; h < order.size(); ++h) {
            auto nb = adj[static_cast<std::size_t>(order[h])];
            std::sort(nb.begin(), nb.end());
            for (int w : nb) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    order.push_back(w);
                }
            }
        }
        for (std::size_t len = 1; len < order.size() && static_cast<int>(len) < m; ++len) {
            std::vector<int> k(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len));
            std::sort(k.begin(), k.end());
            out.push_back(std::move(k));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ------------------------------------------------------------ replacements

struct Witness {
    Perm a;
    Perm b;
};

// (a, b) with E(repl) = a E(K) b, given both route sets.
std::optional<Witness> replacement_witness(const PermSet& qk, const PermSet& qr) {
    if (qk.degree() != qr.degree() || uniformity(qk) == Uniformity::Mixed || uniformity(qr) == Uniformity::Mixed) {
        return std::nullopt;
    }
    const int n = qk.degree();
    const PermSet rk = residue(qk);
    const PermSet rr = residue(qr);
    if (rk.size() != rr.size()) {
        return std::nullopt;
    }
    if (rk.empty()) {
        const bool same = excluded_parity(qk) == excluded_parity(qr);
        if (!same && n < 2) {
            return std::nullopt;
        }
        const Perm id(n);
        const Perm b = same ? id : parse_cycles("(1 2)", n);
        return Witness{id, b};
    }
    if (n > kMaxBiconjugacyDegree) {
        return std::nullopt;
    }
    const auto bc = find_biconjugacy(rr, rk);
    if (!bc) {
        return std::nullopt;
    }
    return Witness{bc->x, bc->y};
}

const std::map<std::string, std::string>& replacement_sources() {
    static const std::map<std::string, std::string> src = {
        {"single_ac", "vertices 6\n"
                      "1 4\n2 4\n2 5\n3 5\n3 6\n1 6\n"
                      "label 1 entry 1\nlabel 2 entry 2\nlabel 3 entry 3\n"
                      "label 4 exit 1\nlabel 5 exit 2\nlabel 6 exit 3\n"},
        {"g1", "vertices 10\n1 10\n9 8\n2 6\n2 8\n1 6\n9 10\n10 9\n4 7\n3 5\n10 5\n4 9\n3 7\n"},
        {"g2", "vertices 10\n9 7\n2 6\n1 10\n9 10\n1 6\n2 7\n3 9\n4 8\n10 5\n10 8\n4 9\n3 5\n"},
        {"g3", "vertices 10\n2 9\n1 5\n10 7\n1 9\n2 7\n10 5\n9 6\n3 10\n4 8\n9 8\n4 10\n3 6\n"},
        {"g4", "vertices 10\n4 8\n3 10\n2 9\n4 9\n2 10\n3 8\n9 6\n1 5\n10 7\n9 7\n10 5\n1 6\n"},
    };
    return src;
}

std::optional<Reduction> reduce_k(const Digraph& g, int size, int s_lo, int s_hi, const CheckOptions& opt) {
    if (!is_two_diregular(g) || !is_connected(g)) {
        return std::nullopt;
    }
    const auto dec = ac_decompose(g);
    const int m = dec.size();
    if (m <= size || !all_acs_have_length(dec, 6)) {
        return std::nullopt;
    }
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        const int s = saturated_count_of_subset(g, dec, idx);
        if (s >= s_lo && s <= s_hi) {
            const auto sides = sides_of_ac_subset(g, dec, idx);
            std::optional<RouteSet> q;
            if (!sides.k_entries.empty() && is_connected(sides.k_side)) {
                try {
                    q = open_routes(sides.k_side, opt.max_factor_bits);
                } catch (const PreconditionError&) {
                }
            }
            if (q && q->routes.size() == 1) {
                Step st;
                st.kind = StepKind::Collapse;
                st.acs = idx;
                st.routes_p = q->routes;
                return Reduction{collapse_unique_route(g, idx, opt), std::move(st)};
            }
            if (q) {
                for (const auto& id : replacement_ids()) {
                    const Digraph& repl = replacement_graph(id);
                    if (ac_decompose(repl).size() >= size) {
                        continue;
                    }
                    const auto qr = open_routes(repl);
                    if (qr.routes.degree() != q->routes.degree()) {
                        continue;
                    }
                    if (const auto w = replacement_witness(q->routes, qr.routes)) {
                        Step st;
                        st.kind = StepKind::Replace;
                        st.acs = idx;
                        st.replacement = id;
                        st.a = w->a;
                        st.b = w->b;
                        return Reduction{replace_subgraph(g, idx, repl, w->a, w->b, opt), std::move(st)};
                    }
                }
            }
        }
        int i = size - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - size + i) {
            --i;
        }
        if (i < 0) {
            return std::nullopt;
        }
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

// ------------------------------------------------------------ pipeline

Certificate check_impl(const Digraph& g, const CheckOptions& opt, int depth) {
    require_valid(g);
    if (!is_two_diregular(g)) {
        throw PreconditionError("check requires a 2-diregular graph");
    }
    Certificate out;
    auto finish = [&](std::optional<Certificate> c) {
        for (auto& s : c->steps) {
            out.steps.push_back(std::move(s));
        }
        out.verdict = c->verdict;
        return out;
    };
    Digraph cur = g;
    int reductions = 0;
    while (true) {
        if (!is_connected(cur)) {
            return finish(single(Verdict::NonHamiltonian, step_of(StepKind::Disconnected)));
        }
        if (auto c = certify_closed_ac(cur)) {
            return finish(std::move(c));
        }
        const int m = ac_decompose(cur).size();
        if (m <= opt.max_factor_bits) {
            if (auto c = certify_even(cur, opt)) {
                return finish(std::move(c));
            }
        }
        if (auto c = split_impl(cur, opt, depth)) {
            return finish(std::move(c));
        }
        if (!opt.reductions || reductions >= opt.max_reduction_steps) {
            break;
        }
        auto r = reduce_2ac(cur, opt);
        if (!r) {
            r = reduce_3ac(cur, opt);
        }
        if (!r) {
            break;
        }
        out.steps.push_back(std::move(r->step));
        cur = std::move(r->graph);
        ++reductions;
    }

    const auto dec = ac_decompose(cur);
    for (const auto& k : residue_candidates(cur, dec, opt)) {
        auto t = residue_try(cur, dec, k, opt, true);
        if (t.step) {
            out.steps.push_back(std::move(*t.step));
            out.verdict = Verdict::NonHamiltonian;
            return out;
        }
    }

    if (opt.brute_force) {
        if (dec.size() > opt.max_factor_bits) {
            out.reason = "brute force skipped: " + std::to_string(dec.size()) + " ACs exceed the factor cap";
            return out;
        }
        Step st;
        st.kind = StepKind::BruteForce;
        if (auto w = hamiltonian_witness(cur, opt.max_factor_bits)) {
            st.witness = w->selection;
            out.verdict = Verdict::Hamiltonian;
        } else {
            out.verdict = Verdict::NonHamiltonian;
        }
        out.steps.push_back(std::move(st));
        return out;
    }
    out.reason = "no certificate without brute force";
    return out;
}

// ------------------------------------------------------------ replay

VerifyResult fail(const std::string& msg) { return {false, msg}; }

VerifyResult verify_impl(const Digraph& g, const Certificate& c, const CheckOptions& opt, int depth) {
    if (depth > opt.max_split_depth + 1) {
        return fail("split nesting too deep");
    }
    if (!is_two_diregular(g)) {
        return fail("graph is not a 2-dd");
    }
    Digraph cur = g;
    Verdict reached = Verdict::Undecided;
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const Step& st = c.steps[i];
        const std::string where = "step " + std::to_string(i + 1) + " (" + to_string(st.kind) + "): ";
        if (reached != Verdict::Undecided) {
            return fail(where + "follows a terminal step");
        }
        try {
            switch (st.kind) {
            case StepKind::Replace: {
                if (!st.a || !st.b) {
                    return fail(where + "missing witnesses");
                }
                cur = replace_subgraph(cur, st.acs, replacement_graph(st.replacement), *st.a, *st.b, opt);
                break;
            }
            case StepKind::Collapse: {
                const auto dec = ac_decompose(cur);
                const auto sides = sides_of_ac_subset(cur, dec, st.acs);
                const auto q = reference::open_routes(sides.k_side, route_labeling(sides.k_side), opt.max_factor_bits);
                if (q.routes.size() != 1 || (st.routes_p && !(*st.routes_p == q.routes))) {
                    return fail(where + "route is not the recorded unique route");
                }
                cur = collapse_unique_route(cur, st.acs, opt);
                break;
            }
            case StepKind::Disconnected:
                if (is_connected(cur)) {
                    return fail(where + "graph is connected");
                }
                reached = Verdict::NonHamiltonian;
                break;
            case StepKind::ClosedAc: {
                const auto dec = ac_decompose(cur);
                if (st.acs.size() != 1 || st.acs[0] < 0 || st.acs[0] >= dec.size()) {
                    return fail(where + "bad AC id");
                }
                const auto& x = dec.cycles[static_cast<std::size_t>(st.acs[0])];
                const int n = cur.vertex_count();
                for (const auto& half : {x.forward(), x.backward()}) {
                    const auto cyc = cycles_of_arc_set(cur, half);
                    if (std::none_of(cyc.begin(), cyc.end(), [&](const auto& c2) { return static_cast<int>(c2.size()) < n; })) {
                        return fail(where + "a half has no short cycle");
                    }
                }
                reached = Verdict::NonHamiltonian;
                break;
            }
            case StepKind::EvenFamily:
                if (reference::classify_parity_family(cur, opt.max_factor_bits) != ParityFamily::Even) {
                    return fail(where + "graph is not even");
                }
                reached = Verdict::NonHamiltonian;
                break;
            case StepKind::Split: {
                if (!is_connected(cur)) {
                    return fail(where + "graph is disconnected");
                }
                std::vector<int> set = st.split_set;
                std::sort(set.begin(), set.end());
                const auto parts = split_parts(cur, set);
                if (parts.size() < 2 || st.parts.empty() || st.parts.size() > parts.size()) {
                    return fail(where + "not a split-set with single-pair components");
                }
                bool any_non = false;
                bool all_ham = st.parts.size() == parts.size();
                for (std::size_t p = 0; p < st.parts.size(); ++p) {
                    const auto r = verify_impl(parts[p], st.parts[p], opt, depth + 1);
                    if (!r.ok) {
                        return fail(where + "component " + std::to_string(p + 1) + ": " + r.message);
                    }
                    any_non = any_non || st.parts[p].verdict == Verdict::NonHamiltonian;
                    all_ham = all_ham && st.parts[p].verdict == Verdict::Hamiltonian;
                }
                if (any_non) {
                    reached = Verdict::NonHamiltonian;
                } else if (all_ham) {
                    reached = Verdict::Hamiltonian;
                } else {
                    return fail(where + "component verdicts are not decisive");
                }
                break;
            }
            case StepKind::Residue: {
                const auto dec = ac_decompose(cur);
                const auto sides = sides_of_ac_subset(cur, dec, st.acs);
                if (!is_connected(sides.k_side) || !is_connected(sides.complement_side)) {
                    return fail(where + "a side is disconnected");
                }
                const auto p = reference::open_routes(sides.complement_side, route_labeling(sides.complement_side),
                                                      opt.max_factor_bits);
                const auto q = reference::open_routes(sides.k_side, route_labeling(sides.k_side), opt.max_factor_bits);
                if ((st.routes_p && !(*st.routes_p == p.routes)) || (st.routes_q && !(*st.routes_q == q.routes))) {
                    return fail(where + "recorded route sets differ from the graph");
                }
                const Perm id(p.routes.degree());
                const auto pc = classify_parity_case(id.degree(), p.routes, q.routes, id, id);
                if (pc.cls == ParityClass::Boring) {
                    if (!st.boring) {
                        return fail(where + "parity case is boring but not recorded as such");
                    }
                } else {
                    const PermSet r = reference::residue(p.routes);
                    if (st.residue_p && !(*st.residue_p == r)) {
                        return fail(where + "recorded residue differs");
                    }
                    if (!is_subset(q.routes, r)) {
                        return fail(where + "K routes are not contained in the residue");
                    }
                }
                reached = Verdict::NonHamiltonian;
                break;
            }
            case StepKind::BruteForce: {
                const FactorEngine eng(cur, opt.max_factor_bits);
                if (st.witness) {
                    if (*st.witness >= eng.factor_count() || eng.factor(*st.witness).index() != 1) {
                        return fail(where + "witness is not a Hamiltonian factor");
                    }
                    reached = Verdict::Hamiltonian;
                } else {
                    if (reference::hamiltonian_witness(cur, opt.max_factor_bits)) {
                        return fail(where + "graph is Hamiltonian");
                    }
                    reached = Verdict::NonHamiltonian;
                }
                break;
            }
            }
        } catch (const std::exception& e) {
            return fail(where + e.what());
        }
    }
    if (reached != c.verdict) {
        return fail("certificate claims " + to_string(c.verdict) + " but its steps establish " + to_string(reached));
    }
    return {true, "ok"};
}

} // namespace

// ------------------------------------------------------------ public API

std::optional<Certificate> certify_even(const Digraph& g, const CheckOptions& opt) {
    if (!is_two_diregular(g) || ac_decompose(g).size() > opt.max_factor_bits) {
        return std::nullopt;
    }
    if (classify_parity_family(g, opt.max_factor_bits) != ParityFamily::Even) {
        return std::nullopt;
    }
    return single(Verdict::NonHamiltonian, step_of(StepKind::EvenFamily));
}

std::optional<Certificate> certify_closed_ac(const Digraph& g) {
    if (!is_two_diregular(g)) {
        return std::nullopt;
    }
    const auto dec = ac_decompose(g);
    const int n = g.vertex_count();
    for (int k = 0; k < dec.size(); ++k) {
        const auto& x = dec.cycles[static_cast<std::size_t>(k)];
        bool both = true;
        for (const auto& half : {x.forward(), x.backward()}) {
            const auto cyc = cycles_of_arc_set(g, half);
            both = both && std::any_of(cyc.begin(), cyc.end(), [&](const auto& c) { return static_cast<int>(c.size()) < n; });
        }
        if (both) {
            Step st;
            st.kind = StepKind::ClosedAc;
            st.acs = {k};
            return single(Verdict::NonHamiltonian, std::move(st));
        }
    }
    return std::nullopt;
}

std::optional<Certificate> certify_split(const Digraph& g, const CheckOptions& opt) { return split_impl(g, opt, 0); }

std::optional<Certificate> certify_residue(const Digraph& g, const std::vector<int>& k, const CheckOptions& opt,
                                           std::string* why) {
    if (!is_two_diregular(g)) {
        throw PreconditionError("certify_residue requires a 2-diregular graph");
    }
    const auto dec = ac_decompose(g);
    auto t = residue_try(g, dec, normalized_subset(dec, k), opt, true);
    if (!t.step) {
        if (why) {
            *why = t.why;
        }
        return std::nullopt;
    }
    return single(Verdict::NonHamiltonian, std::move(*t.step));
}

Digraph replace_subgraph(const Digraph& g, const std::vector<int>& k, const Digraph& repl, const Perm& a,
                         const Perm& b, const CheckOptions& opt) {
    if (!is_two_diregular(g)) {
        throw PreconditionError("replace_subgraph requires a 2-diregular graph");
    }
    const auto dec = ac_decompose(g);
    const auto ks = normalized_subset(dec, k);
    const auto sides = sides_of_ac_subset(g, dec, ks);
    const auto qk = open_routes(sides.k_side, opt.max_factor_bits).routes;
    const auto qr = open_routes(repl, opt.max_factor_bits).routes;
    if (qk.degree() != qr.degree() || a.degree() != qk.degree() || b.degree() != qk.degree()) {
        throw PreconditionError("replace_subgraph: boundary sizes differ");
    }
    if (qk.degree() > kMaxResidueDegree) {
        throw ResourceError("replace_subgraph: boundary exceeds the residue degree cap");
    }
    if (uniformity(qk) == Uniformity::Mixed || uniformity(qr) == Uniformity::Mixed) {
        throw PreconditionError("replace_subgraph: route sets must be uniform");
    }
    if (!(translate(a, excluded_set(qk), b) == excluded_set(qr))) {
        throw PreconditionError("replace_subgraph: residue equivalence not witnessed by (a, b)");
    }
    return spliced_graph(sides.complement_side, repl, SpliceMap{b, a});
}

Digraph collapse_unique_route(const Digraph& g, const std::vector<int>& k, const CheckOptions& opt) {
    if (!is_two_diregular(g)) {
        throw PreconditionError("collapse_unique_route requires a 2-diregular graph");
    }
    const auto dec = ac_decompose(g);
    const auto ks = normalized_subset(dec, k);
    const auto sides = sides_of_ac_subset(g, dec, ks);
    const auto q = open_routes(sides.k_side, opt.max_factor_bits).routes;
    if (q.size() != 1) {
        throw PreconditionError("collapse_unique_route: K has " + std::to_string(q.size()) + " open routes");
    }
    const Perm& rho = q.elements().front();
    std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < sides.complement_vertex_of.size(); ++i) {
        local[static_cast<std::size_t>(sides.complement_vertex_of[i])] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> pairs;
    for (int j = 0; j < rho.degree(); ++j) {
        const int exit = local[static_cast<std::size_t>(sides.k_entries[static_cast<std::size_t>(j)])];
        const int entry = local[static_cast<std::size_t>(sides.k_exits[static_cast<std::size_t>(rho[j])])];
        pairs.emplace_back(entry, exit);
    }
    auto r = splice_pairs(sides.complement_side, pairs);
    r.graph.clear_labels();
    return std::move(r.graph);
}

const Digraph& replacement_graph(const std::string& id) {
    static const std::map<std::string, Digraph> lib = [] {
        std::map<std::string, Digraph> m;
        for (const auto& [k, text] : replacement_sources()) {
            m.emplace(k, parse_graph_text(text));
        }
        return m;
    }();
    const auto it = lib.find(id);
    if (it == lib.end()) {
        throw PreconditionError("unknown replacement graph '" + id + "'");
    }
    return it->second;
}

std::vector<std::string> replacement_ids() { return {"single_ac", "g1", "g2", "g3", "g4"}; }

std::optional<Reduction> reduce_2ac(const Digraph& g, const CheckOptions& opt) { return reduce_k(g, 2, 3, 4, opt); }

std::optional<Reduction> reduce_3ac(const Digraph& g, const CheckOptions& opt) { return reduce_k(g, 3, 5, 8, opt); }

Certificate check(const Digraph& g, const CheckOptions& opt) { return check_impl(g, opt, 0); }

VerifyResult verify(const Digraph& g, const Certificate& c, const CheckOptions& opt) {
    return verify_impl(g, c, opt, 0);
}

// ------------------------------------------------------------ JSON

namespace {

nlohmann::json ids_json(const std::vector<int>& ids) {
    auto j = nlohmann::json::array();
    for (int i : ids) {
        j.push_back(i + 1);
    }
    return j;
}

std::vector<int> ids_from(const nlohmann::json& j) {
    std::vector<int> v;
    for (const auto& x : j) {
        v.push_back(x.get<int>() - 1);
    }
    return v;
}

nlohmann::json set_json(const PermSet& p) {
    auto j = nlohmann::json::array();
    for (const auto& x : p) {
        j.push_back(format_cycles(x));
    }
    return j;
}

PermSet set_from(const nlohmann::json& j, int n) {
    std::vector<Perm> v;
    for (const auto& x : j) {
        v.push_back(parse_cycles(x.get<std::string>(), n));
    }
    return PermSet(n, std::move(v));
}

StepKind kind_from(const std::string& s) {
    for (auto k : {StepKind::EvenFamily, StepKind::Disconnected, StepKind::ClosedAc, StepKind::Split, StepKind::Residue,
                   StepKind::Replace, StepKind::Collapse, StepKind::BruteForce}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw FormatError("unknown step kind '" + s + "'");
}

Verdict verdict_from(const std::string& s) {
    for (auto v : {Verdict::NonHamiltonian, Verdict::Hamiltonian, Verdict::Undecided}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw FormatError("unknown verdict '" + s + "'");
}

} // namespace

nlohmann::json to_json(const Certificate& c) {
    nlohmann::json j;
    j["verdict"] = to_string(c.verdict);
    if (!c.reason.empty()) {
        j["reason"] = c.reason;
    }
    auto steps = nlohmann::json::array();
    for (const auto& s : c.steps) {
        nlohmann::json js;
        js["kind"] = to_string(s.kind);
        if (!s.acs.empty()) {
            js["acs"] = ids_json(s.acs);
        }
        if (!s.split_set.empty()) {
            js["split_set"] = ids_json(s.split_set);
        }
        if (!s.parts.empty()) {
            auto parts = nlohmann::json::array();
            for (const auto& p : s.parts) {
                parts.push_back(to_json(p));
            }
            js["parts"] = std::move(parts);
        }
        int degree = 0;
        if (s.routes_p) {
            degree = s.routes_p->degree();
            js["routes_p"] = set_json(*s.routes_p);
        }
        if (s.routes_q) {
            js["routes_q"] = set_json(*s.routes_q);
        }
        if (s.residue_p) {
            js["residue_p"] = set_json(*s.residue_p);
        }
        if (s.kind == StepKind::Residue) {
            js["x"] = "I";
            js["y"] = "I";
            js["boring"] = s.boring;
        }
        if (!s.replacement.empty()) {
            js["replacement"] = s.replacement;
        }
        if (s.a) {
            degree = s.a->degree();
            js["a"] = format_cycles(*s.a);
        }
        if (s.b) {
            js["b"] = format_cycles(*s.b);
        }
        if (degree > 0) {
            js["degree"] = degree;
        }
        if (s.kind == StepKind::BruteForce) {
            if (s.witness) {
                js["witness_selection"] = *s.witness;
            } else {
                js["exhaustion"] = true;
            }
        }
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
    try {
        Certificate c;
        c.verdict = verdict_from(j.at("verdict").get<std::string>());
        c.reason = j.value("reason", "");
        for (const auto& js : j.at("steps")) {
            Step s;
            s.kind = kind_from(js.at("kind").get<std::string>());
            if (js.contains("acs")) {
                s.acs = ids_from(js["acs"]);
            }
            if (js.contains("split_set")) {
                s.split_set = ids_from(js["split_set"]);
            }
            if (js.contains("parts")) {
                for (const auto& p : js["parts"]) {
                    s.parts.push_back(certificate_from_json(p));
                }
            }
            const int n = js.value("degree", 0);
            if (js.contains("routes_p")) {
                s.routes_p = set_from(js["routes_p"], n);
            }
            if (js.contains("routes_q")) {
                s.routes_q = set_from(js["routes_q"], n);
            }
            if (js.contains("residue_p")) {
                s.residue_p = set_from(js["residue_p"], n);
            }
            s.boring = js.value("boring", false);
            s.replacement = js.value("replacement", "");
            if (js.contains("a")) {
                s.a = parse_cycles(js["a"].get<std::string>(), n);
            }
            if (js.contains("b")) {
                s.b = parse_cycles(js["b"].get<std::string>(), n);
            }
            if (js.contains("witness_selection")) {
                s.witness = js["witness_selection"].get<std::uint64_t>();
            }
            c.steps.push_back(std::move(s));
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("certificate: ") + e.what());
    }
}

} // namespace twodd
