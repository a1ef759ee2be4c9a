#include "twodd/enumerate.hpp"

#include "twodd/certify.hpp"
#include "twodd/error.hpp"
#include "twodd/factors.hpp"
#include "twodd/graph_io.hpp"

#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace twodd {

namespace {

// Template slots: AC i owns entry slots s_{i,j} and exit slots e_{i,j},
// j < k, with arcs s_{i,j} -> e_{i,j} and s_{i,j+1} -> e_{i,j}.
struct Slots {
    int k = 3;
    int m = 1;

    int count() const { return k * m; }
    int ac(int slot) const { return slot / k; }
    bool loop(int exit, int entry) const {
        if (ac(exit) != ac(entry)) {
            return false;
        }
        const int j = exit % k;
        const int e = entry % k;
        return e == j || e == (j + 1) % k;
    }
};

Slots slots_of(const FamilySpec& spec) { return {spec.arcs_per_ac / 2, spec.ac_count}; }

bool allowed(const FamilySpec& spec, const Slots& s, int exit, int entry) {
    if (s.ac(exit) != s.ac(entry)) {
        return true;
    }
    return !spec.clean && (spec.allow_loops || !s.loop(exit, entry));
}

using State = std::vector<int>; // exit slot -> entry slot or -1

Digraph build(const Slots& s, const State& st) {
    const int n = s.count();
    std::vector<int> entry_vertex(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
        if (st[static_cast<std::size_t>(x)] >= 0) {
            entry_vertex[static_cast<std::size_t>(st[static_cast<std::size_t>(x)])] = x;
        }
    }
    int next = n;
    for (auto& v : entry_vertex) {
        if (v < 0) {
            v = next++;
        }
    }
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < s.m; ++i) {
        for (int j = 0; j < s.k; ++j) {
            const int e = i * s.k + j;
            arcs.push_back({entry_vertex[static_cast<std::size_t>(e)], e});
            arcs.push_back({entry_vertex[static_cast<std::size_t>(i * s.k + (j + 1) % s.k)], e});
        }
    }
    return Digraph(next, std::move(arcs));
}

struct Node {
    State state;
    std::string code;
};

struct Plan {
    FamilySpec spec;
    Slots slots;
    int target = 0;
    bool collect_all = false;
    bool full = false;
};

Plan plan_of(const FamilySpec& spec, const GenerateOptions& opt) {
    validate_spec(spec);
    Plan p{spec, slots_of(spec), 0, false, spec.saturated_only};
    const int n = p.slots.count();
    if (p.full) {
        p.target = n;
        if (!opt.long_run && (spec.ac_count > 5 || spec.arcs_per_ac != 6)) {
            throw ResourceError("generate: 2-dd families beyond 5 ACs of 6 arcs need --long-run");
        }
    } else if (spec.saturated_count) {
        p.target = *spec.saturated_count;
    } else {
        p.target = n;
        p.collect_all = true;
    }
    if (!opt.long_run && spec.ac_count > 6) {
        throw ResourceError("generate: more than 6 ACs needs --long-run");
    }
    return p;
}

std::vector<Node> children(const Plan& p, const State& st) {
    const int n = p.slots.count();
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int y : st) {
        if (y >= 0) {
            used[static_cast<std::size_t>(y)] = 1;
        }
    }
    std::vector<Node> out;
    for (int x = 0; x < n; ++x) {
        if (st[static_cast<std::size_t>(x)] >= 0) {
            continue;
        }
        for (int y = 0; y < n; ++y) {
            if (used[static_cast<std::size_t>(y)] || !allowed(p.spec, p.slots, x, y)) {
                continue;
            }
            State c = st;
            c[static_cast<std::size_t>(x)] = y;
            out.push_back({c, canonical_form(build(p.slots, c)).code});
        }
        if (p.full) {
            break; // every completion matches the smallest free exit somewhere
        }
    }
    return out;
}

// Expands `level` (states after `from` identifications) up to `to`,
// returning the nodes at `to`, or at every level when collect_all.
std::vector<Node> run_levels(const Plan& p, std::vector<Node> level, int from, int to, bool collect_all,
                             const GenerateOptions& opt) {
    std::vector<Node> out;
    if (collect_all) {
        out = level;
    }
    for (int depth = from; depth < to; ++depth) {
        std::vector<std::vector<Node>> kids(level.size());
        const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < count; ++i) {
            kids[static_cast<std::size_t>(i)] = children(p, level[static_cast<std::size_t>(i)].state);
        }
        std::unordered_set<std::string> seen;
        std::vector<Node> next;
        for (auto& ks : kids) {
            for (auto& c : ks) {
                if (seen.insert(c.code).second) {
                    next.push_back(std::move(c));
                }
            }
            ks.clear();
            ks.shrink_to_fit();
            if (!opt.long_run && next.size() > opt.max_level_size) {
                throw ResourceError("generate: more than " + std::to_string(opt.max_level_size) +
                                    " classes at identification level " + std::to_string(depth + 1));
            }
        }
        level = std::move(next);
        if (collect_all) {
            out.insert(out.end(), level.begin(), level.end());
        }
    }
    if (!collect_all) {
        out = std::move(level);
    }
    return out;
}

Node root(const Plan& p) {
    State st(static_cast<std::size_t>(p.slots.count()), -1);
    return {st, canonical_form(build(p.slots, st)).code};
}

std::vector<Generated> finish(const Plan& p, const std::vector<Node>& nodes) {
    std::vector<std::optional<Generated>> kept(nodes.size());
    const auto count = static_cast<std::int64_t>(nodes.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < count; ++i) {
        const Node& nd = nodes[static_cast<std::size_t>(i)];
        Digraph g = build(p.slots, nd.state);
        if (p.spec.require_connected && !is_connected(g)) {
            continue;
        }
        bool ok = true;
        for (const auto& f : p.spec.filters) {
            if (!passes_filter(g, f)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            CanonicalForm c = canonical_form(g);
            kept[static_cast<std::size_t>(i)] = Generated{std::move(g), std::move(c)};
        }
    }
    std::vector<Generated> out;
    for (auto& k : kept) {
        if (k) {
            out.push_back(std::move(*k));
        }
    }
    std::sort(out.begin(), out.end(), [](const Generated& a, const Generated& b) { return a.canon.code < b.canon.code; });
    return out;
}

struct JobsGuard {
    int saved;
    explicit JobsGuard(int jobs) : saved(omp_get_max_threads()) {
        if (jobs > 0) {
            omp_set_num_threads(jobs);
        }
    }
    ~JobsGuard() { omp_set_num_threads(saved); }
};

int ac_subset_saturated(const std::vector<int>& pair_count, const std::vector<int>& self, int m, int a, int b) {
    return pair_count[static_cast<std::size_t>(a * m + b)] + pair_count[static_cast<std::size_t>(b * m + a)] +
           self[static_cast<std::size_t>(a)] + self[static_cast<std::size_t>(b)];
}

} // namespace

const std::vector<std::string>& filter_names() {
    static const std::vector<std::string> names = {"odd",           "even",        "open",           "non_2_splittable",
                                                   "no_2ac_s_gt_2", "hamiltonian", "non_hamiltonian"};
    return names;
}

void validate_spec(const FamilySpec& spec) {
    if (spec.arcs_per_ac < 4 || spec.arcs_per_ac % 2 != 0) {
        throw PreconditionError("family: arcs_per_ac must be even and at least 4");
    }
    if (spec.ac_count < 1) {
        throw PreconditionError("family: ac_count must be at least 1");
    }
    const int n = spec.ac_count * spec.arcs_per_ac / 2;
    if (spec.saturated_count && (*spec.saturated_count < 0 || *spec.saturated_count > n)) {
        throw PreconditionError("family: saturated_count out of range 0.." + std::to_string(n));
    }
    if (spec.saturated_only && spec.clean && spec.ac_count == 1) {
        throw PreconditionError("family: a single clean AC cannot be saturated");
    }
    for (const auto& f : spec.filters) {
        if (std::find(filter_names().begin(), filter_names().end(), f) == filter_names().end()) {
            throw PreconditionError("family: unknown filter '" + f + "'");
        }
    }
}

bool has_2ac_subgraph_with_s_gt_2(const Digraph& g) {
    const auto dec = ac_decompose(g);
    const int m = dec.size();
    std::vector<int> pair_count(static_cast<std::size_t>(m * m), 0);
    std::vector<int> self(static_cast<std::size_t>(m), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int a = dec.in_ac(g, v);
        const int b = dec.out_ac(g, v);
        if (a < 0 || b < 0) {
            continue;
        }
        if (a == b) {
            ++self[static_cast<std::size_t>(a)];
        } else {
            ++pair_count[static_cast<std::size_t>(a * m + b)];
        }
    }
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            if (ac_subset_saturated(pair_count, self, m, a, b) > 2) {
                return true;
            }
        }
    }
    return false;
}

bool passes_filter(const Digraph& g, const std::string& name) {
    if (name == "odd" || name == "even") {
        if (is_two_diregular(g)) {
            return classify_parity_family(g) == (name == "odd" ? ParityFamily::Odd : ParityFamily::Even);
        }
        // boundary graphs: the AC-parity sense of the family name
        const auto dec = ac_decompose(g);
        return std::all_of(dec.cycles.begin(), dec.cycles.end(),
                           [&](const AltCycle& x) { return x.is_odd() == (name == "odd"); });
    }
    if (name == "open") {
        return is_open(g);
    }
    if (name == "non_2_splittable") {
        return is_connected(g) && !is_2_splittable(g);
    }
    if (name == "no_2ac_s_gt_2") {
        return !has_2ac_subgraph_with_s_gt_2(g);
    }
    if (name == "hamiltonian") {
        return is_two_diregular(g) && is_hamiltonian(g);
    }
    if (name == "non_hamiltonian") {
        return is_two_diregular(g) && !is_hamiltonian(g);
    }
    throw PreconditionError("unknown filter '" + name + "'");
}

std::vector<Generated> generate(const FamilySpec& spec, const GenerateOptions& opt) {
    JobsGuard jobs(opt.jobs);
    const Plan p = plan_of(spec, opt);
    return finish(p, run_levels(p, {root(p)}, 0, p.target, p.collect_all, opt));
}

Frontier generation_frontier(const FamilySpec& spec, int depth, const GenerateOptions& opt) {
    JobsGuard jobs(opt.jobs);
    const Plan p = plan_of(spec, opt);
    Frontier f;
    f.depth = std::clamp(depth, 0, p.target);
    for (auto& nd : run_levels(p, {root(p)}, 0, f.depth, false, opt)) {
        f.states.push_back(std::move(nd.state));
    }
    return f;
}

std::vector<Generated> generate_shard(const FamilySpec& spec, const Frontier& frontier, int shard, int shard_count,
                                      const GenerateOptions& opt) {
    if (shard_count < 1 || shard < 0 || shard >= shard_count) {
        throw PreconditionError("generate_shard: shard index out of range");
    }
    JobsGuard jobs(opt.jobs);
    const Plan p = plan_of(spec, opt);
    std::vector<Node> start;
    for (std::size_t i = static_cast<std::size_t>(shard); i < frontier.states.size();
         i += static_cast<std::size_t>(shard_count)) {
        const State& st = frontier.states[i];
        if (st.size() != static_cast<std::size_t>(p.slots.count())) {
            throw PreconditionError("generate_shard: frontier does not match the family");
        }
        start.push_back({st, canonical_form(build(p.slots, st)).code});
    }
    auto nodes = run_levels(p, std::move(start), frontier.depth, p.target, p.collect_all, opt);
    if (p.collect_all && shard == 0 && frontier.depth > 0) {
        auto shallow = run_levels(p, {root(p)}, 0, frontier.depth - 1, true, opt);
        nodes.insert(nodes.end(), shallow.begin(), shallow.end());
    }
    return finish(p, nodes);
}

std::vector<Generated> merge_generated(std::vector<std::vector<Generated>> parts) {
    std::vector<Generated> all;
    for (auto& part : parts) {
        for (auto& g : part) {
            all.push_back(std::move(g));
        }
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const Generated& a, const Generated& b) { return a.canon.code < b.canon.code; });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const Generated& a, const Generated& b) { return a.canon.code == b.canon.code; }),
              all.end());
    return all;
}

Digraph random_member(const FamilySpec& spec, std::mt19937_64& rng) {
    validate_spec(spec);
    const Slots s = slots_of(spec);
    const int n = s.count();
    for (int attempt = 0; attempt < 10000; ++attempt) {
        State st(static_cast<std::size_t>(n), -1);
        std::vector<int> free_entries(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            free_entries[static_cast<std::size_t>(i)] = i;
        }
        bool dead = false;
        for (int x = 0; x < n && !dead; ++x) {
            std::vector<std::size_t> options;
            for (std::size_t i = 0; i < free_entries.size(); ++i) {
                if (allowed(spec, s, x, free_entries[i])) {
                    options.push_back(i);
                }
            }
            if (options.empty()) {
                dead = true;
                break;
            }
            const std::size_t pick = options[rng() % options.size()];
            st[static_cast<std::size_t>(x)] = free_entries[pick];
            free_entries.erase(free_entries.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        if (!dead) {
            return build(s, st);
        }
    }
    throw ResourceError("random_member: no admissible identification found");
}

std::string format_archive(const std::vector<Generated>& graphs) {
    std::string out;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        out += "# graph " + std::to_string(i + 1) + " " + to_hex(graphs[i].canon.code) + "\n";
        out += format_graph_text(graphs[i].graph);
        if (out.back() != '\n') {
            out += '\n';
        }
    }
    return out;
}

std::vector<Digraph> parse_archive(const std::string& text) {
    std::vector<Digraph> out;
    std::istringstream in(text);
    std::string line;
    std::string record;
    bool open = false;
    auto flush = [&] {
        if (open) {
            out.push_back(parse_graph_text(record));
        }
        record.clear();
    };
    while (std::getline(in, line)) {
        if (line.rfind("# graph ", 0) == 0) {
            flush();
            open = true;
            continue;
        }
        if (!open && !line.empty() && line[0] != '#') {
            throw FormatError("archive: content before the first record header");
        }
        record += line;
        record += '\n';
    }
    flush();
    return out;
}

std::string format_index(const std::vector<Generated>& graphs) {
    std::string out;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        out += std::to_string(i + 1) + "\t" + to_hex(graphs[i].canon.code) + "\t" +
               std::to_string(graphs[i].canon.automorphism_count) + "\n";
    }
    return out;
}

const std::vector<std::string>& analysis_names() {
    static const std::vector<std::string> names = {"connected", "clean",   "parity",     "splittable",
                                                   "routes",    "residue", "certify", "hamiltonian"};
    return names;
}

GraphAnalysis analyse(const Digraph& g, const std::vector<std::string>& analyses) {
    auto want = [&](const char* a) { return std::find(analyses.begin(), analyses.end(), a) != analyses.end(); };
    GraphAnalysis r;
    r.connected = is_connected(g);
    if (want("clean")) {
        r.clean = graph_is_clean(g);
    }
    const bool saturated = is_two_diregular(g);
    if (want("parity")) {
        r.parity = saturated ? to_string(classify_parity_family(g)) : "n/a";
    }
    if (want("splittable")) {
        r.splittable = r.connected ? (is_2_splittable(g) ? "yes" : "no") : "n/a";
    }
    if ((want("routes") || want("residue")) && !saturated && is_open(g)) {
        const RouteSet rs = open_routes(g);
        r.open_route_count = static_cast<int>(rs.routes.size());
        if (want("residue") && rs.labeling.size() <= 9) {
            r.residue_size = static_cast<int>(residue(rs.routes).size());
        }
    }
    if (want("certify")) {
        if (saturated) {
            CheckOptions opt;
            opt.brute_force = false;
            r.certification = to_string(check(g, opt).verdict);
        } else {
            r.certification = "n/a";
        }
    }
    if (want("hamiltonian")) {
        r.hamiltonian = saturated ? (is_hamiltonian(g) ? "yes" : "no") : "n/a";
    }
    return r;
}

CensusTable census(const std::vector<Generated>& graphs, const std::vector<std::string>& analyses) {
    for (const auto& a : analyses) {
        if (std::find(analysis_names().begin(), analysis_names().end(), a) == analysis_names().end()) {
            throw PreconditionError("census: unknown analysis '" + a + "'");
        }
    }
    std::vector<GraphAnalysis> results(graphs.size());
    const auto count = static_cast<std::int64_t>(graphs.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) {
        results[static_cast<std::size_t>(i)] = analyse(graphs[static_cast<std::size_t>(i)].graph, analyses);
    }
    CensusTable t;
    t.columns = analyses;
    for (const auto& r : results) {
        std::vector<std::string> key;
        for (const auto& a : analyses) {
            if (a == "connected") {
                key.push_back(r.connected ? "yes" : "no");
            } else if (a == "clean") {
                key.push_back(r.clean ? "yes" : "no");
            } else if (a == "parity") {
                key.push_back(r.parity);
            } else if (a == "splittable") {
                key.push_back(r.splittable);
            } else if (a == "routes") {
                key.push_back(r.open_route_count < 0 ? "n/a" : std::to_string(r.open_route_count));
            } else if (a == "residue") {
                key.push_back(r.residue_size < 0 ? "n/a" : std::to_string(r.residue_size));
            } else if (a == "certify") {
                key.push_back(r.certification);
            } else {
                key.push_back(r.hamiltonian);
            }
        }
        ++t.cells[key];
        ++t.total;
    }
    return t;
}

std::string CensusTable::to_tsv() const {
    std::string out;
    for (const auto& c : columns) {
        out += c + "\t";
    }
    out += "count\n";
    for (const auto& [key, n] : cells) {
        for (const auto& k : key) {
            out += k + "\t";
        }
        out += std::to_string(n) + "\n";
    }
    out += "total";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += "\t";
    }
    out += std::to_string(total) + "\n";
    return out;
}

std::string CensusTable::to_json() const {
    nlohmann::json j;
    j["columns"] = columns;
    j["total"] = total;
    j["cells"] = nlohmann::json::array();
    for (const auto& [key, n] : cells) {
        j["cells"].push_back({{"key", key}, {"count", n}});
    }
    return j.dump(2);
}

} // namespace twodd
