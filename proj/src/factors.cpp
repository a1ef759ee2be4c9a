#include "twodd/factors.hpp"

#include "twodd/error.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>

namespace twodd {

namespace {

void check_bits(int k, int max_bits) {
    const int cap = std::min(max_bits, kHardMaxFactorBits);
    if (k > cap) {
        throw ResourceError("graph has " + std::to_string(k) + " ACs; factor enumeration is capped at " +
                            std::to_string(cap) + " (raise --max-factor-bits)");
    }
}

void require_2dd(const Digraph& g, const char* what) {
    if (!is_two_diregular(g)) {
        throw PreconditionError(std::string(what) + " requires a 2-diregular graph");
    }
}

struct Blocks {
    std::uint64_t total;
    std::uint64_t size;
    std::int64_t count;
};

Blocks blocks_for(std::uint64_t total) {
    const std::uint64_t size = std::max<std::uint64_t>(1, total / 4096);
    return {total, size, static_cast<std::int64_t>((total + size - 1) / size)};
}

} // namespace

// ---------------------------------------------------------------- engine

FactorEngine::FactorEngine(const Digraph& g, int max_bits) : g_(&g), dec_(ac_decompose(g)) {
    check_bits(dec_.size(), max_bits);
    for (const auto& x : dec_.cycles) {
        std::vector<Arc> f;
        std::vector<Arc> b;
        for (std::size_t i = 0; i < x.arcs.size(); ++i) {
            (i % 2 == 0 ? f : b).push_back(g.arc(x.arcs[i]));
        }
        fwd_.push_back(std::move(f));
        bwd_.push_back(std::move(b));
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (vertex_kind(g, v) == VertexKind::Entry) {
            entries_.push_back(v);
        }
    }
}

FactorEngine::Scratch FactorEngine::make_scratch() const {
    Scratch s;
    s.succ.assign(static_cast<std::size_t>(g_->vertex_count()), -1);
    s.stamp.assign(static_cast<std::size_t>(g_->vertex_count()), 0);
    return s;
}

void FactorEngine::load(std::uint64_t selection, Scratch& s) const {
    for (int k = 0; k < ac_count(); ++k) {
        const auto& half = ((selection >> k) & 1U) ? bwd_[static_cast<std::size_t>(k)] : fwd_[static_cast<std::size_t>(k)];
        for (const Arc& a : half) {
            s.succ[static_cast<std::size_t>(a.tail)] = a.head;
        }
    }
}

int FactorEngine::index(std::uint64_t selection, Scratch& s) const {
    load(selection, s);
    const std::uint32_t e = ++s.epoch;
    for (int u : entries_) {
        for (int v = u; v != -1; v = s.succ[static_cast<std::size_t>(v)]) {
            s.stamp[static_cast<std::size_t>(v)] = e;
        }
    }
    int cycles = 0;
    const int n = g_->vertex_count();
    for (int v = 0; v < n; ++v) {
        if (s.stamp[static_cast<std::size_t>(v)] == e) {
            continue;
        }
        ++cycles;
        for (int u = v; s.stamp[static_cast<std::size_t>(u)] != e; u = s.succ[static_cast<std::size_t>(u)]) {
            s.stamp[static_cast<std::size_t>(u)] = e;
        }
    }
    return cycles;
}

std::optional<Perm> FactorEngine::route(std::uint64_t selection, const RouteLabeling& labels, Scratch& s) const {
    if (index(selection, s) != 0) {
        return std::nullopt;
    }
    const int n = labels.size();
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int v = labels.entries[static_cast<std::size_t>(i)];
        while (s.succ[static_cast<std::size_t>(v)] != -1) {
            v = s.succ[static_cast<std::size_t>(v)];
        }
        const auto it = std::find(labels.exits.begin(), labels.exits.end(), v);
        img[static_cast<std::size_t>(i)] = static_cast<int>(it - labels.exits.begin());
    }
    return Perm::from_images(img);
}

Factor FactorEngine::factor(std::uint64_t selection) const {
    Scratch s = make_scratch();
    load(selection, s);
    Factor f;
    f.selection = selection;
    std::vector<bool> seen(static_cast<std::size_t>(g_->vertex_count()), false);
    for (int u : entries_) {
        std::vector<int> path;
        for (int v = u; v != -1; v = s.succ[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = true;
            path.push_back(v);
        }
        f.paths.push_back(std::move(path));
    }
    for (int v = 0; v < g_->vertex_count(); ++v) {
        if (seen[static_cast<std::size_t>(v)]) {
            continue;
        }
        std::vector<int> cyc;
        for (int u = v; !seen[static_cast<std::size_t>(u)]; u = s.succ[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(u)] = true;
            cyc.push_back(u);
        }
        f.cycles.push_back(std::move(cyc));
    }
    return f;
}

// ---------------------------------------------------------------- enumeration

void for_each_factor(const Digraph& g, const std::function<void(const Factor&)>& fn, int max_bits) {
    const FactorEngine eng(g, max_bits);
    for (std::uint64_t sel = 0; sel < eng.factor_count(); ++sel) {
        fn(eng.factor(sel));
    }
}

std::vector<Factor> enumerate_factors(const Digraph& g, int max_bits) {
    std::vector<Factor> out;
    for_each_factor(g, [&](const Factor& f) { out.push_back(f); }, max_bits);
    return out;
}

int graph_index(const Digraph& g, int max_bits) {
    const FactorEngine eng(g, max_bits);
    const Blocks b = blocks_for(eng.factor_count());
    int best = std::numeric_limits<int>::max();
    std::atomic<bool> zero{false};
#pragma omp parallel reduction(min : best)
    {
        auto s = eng.make_scratch();
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t blk = 0; blk < b.count; ++blk) {
            if (zero.load(std::memory_order_relaxed)) {
                continue;
            }
            const std::uint64_t lo = static_cast<std::uint64_t>(blk) * b.size;
            const std::uint64_t hi = std::min(b.total, lo + b.size);
            for (std::uint64_t sel = lo; sel < hi; ++sel) {
                best = std::min(best, eng.index(sel, s));
                if (best == 0) {
                    zero.store(true, std::memory_order_relaxed);
                    break;
                }
            }
        }
    }
    return best;
}

bool is_open(const Digraph& g, int max_bits) { return graph_index(g, max_bits) == 0; }

std::optional<Factor> hamiltonian_witness(const Digraph& g, int max_bits) {
    require_2dd(g, "is_hamiltonian");
    const FactorEngine eng(g, max_bits);
    const Blocks b = blocks_for(eng.factor_count());
    std::atomic<std::uint64_t> found{std::numeric_limits<std::uint64_t>::max()};
#pragma omp parallel
    {
        auto s = eng.make_scratch();
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t blk = 0; blk < b.count; ++blk) {
            const std::uint64_t lo = static_cast<std::uint64_t>(blk) * b.size;
            if (lo >= found.load(std::memory_order_relaxed)) {
                continue;
            }
            const std::uint64_t hi = std::min(b.total, lo + b.size);
            for (std::uint64_t sel = lo; sel < hi; ++sel) {
                if (eng.index(sel, s) == 1) {
                    std::uint64_t cur = found.load();
                    while (sel < cur && !found.compare_exchange_weak(cur, sel)) {
                    }
                    break;
                }
            }
        }
    }
    if (found.load() == std::numeric_limits<std::uint64_t>::max()) {
        return std::nullopt;
    }
    return eng.factor(found.load());
}

bool is_hamiltonian(const Digraph& g, int max_bits) { return hamiltonian_witness(g, max_bits).has_value(); }

std::string to_string(ParityFamily f) {
    switch (f) {
    case ParityFamily::Odd:
        return "ODD";
    case ParityFamily::Even:
        return "EVEN";
    case ParityFamily::Neither:
        break;
    }
    return "NEITHER";
}

namespace {

ParityFamily family_of_mask(unsigned mask) {
    if (mask == 1U) {
        return ParityFamily::Even;
    }
    if (mask == 2U) {
        return ParityFamily::Odd;
    }
    return ParityFamily::Neither;
}

} // namespace

ParityFamily classify_parity_family(const Digraph& g, int max_bits) {
    require_2dd(g, "classify_parity_family");
    const FactorEngine eng(g, max_bits);
    const Blocks b = blocks_for(eng.factor_count());
    unsigned mask = 0;
    std::atomic<bool> mixed{false};
#pragma omp parallel reduction(| : mask)
    {
        auto s = eng.make_scratch();
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t blk = 0; blk < b.count; ++blk) {
            if (mixed.load(std::memory_order_relaxed)) {
                continue;
            }
            const std::uint64_t lo = static_cast<std::uint64_t>(blk) * b.size;
            const std::uint64_t hi = std::min(b.total, lo + b.size);
            for (std::uint64_t sel = lo; sel < hi; ++sel) {
                mask |= 1U << (eng.index(sel, s) & 1);
                if (mask == 3U) {
                    mixed.store(true, std::memory_order_relaxed);
                    break;
                }
            }
        }
    }
    return family_of_mask(mask);
}

RouteSet open_routes(const Digraph& g, const RouteLabeling& labels, int max_bits) {
    const FactorEngine eng(g, max_bits);
    const int n = labels.size();
    if (n == 0) {
        throw PreconditionError("open_routes: graph has no entry or exit vertices");
    }
    const Blocks b = blocks_for(eng.factor_count());
    std::vector<std::vector<Perm>> per_thread(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
        auto s = eng.make_scratch();
        auto& mine = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t blk = 0; blk < b.count; ++blk) {
            const std::uint64_t lo = static_cast<std::uint64_t>(blk) * b.size;
            const std::uint64_t hi = std::min(b.total, lo + b.size);
            for (std::uint64_t sel = lo; sel < hi; ++sel) {
                if (auto r = eng.route(sel, labels, s)) {
                    mine.push_back(*r);
                }
            }
            std::sort(mine.begin(), mine.end());
            mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
        }
    }
    std::vector<Perm> all;
    for (auto& v : per_thread) {
        all.insert(all.end(), v.begin(), v.end());
    }
    if (all.empty()) {
        throw PreconditionError("open_routes: graph is closed (no open factor)");
    }
    return RouteSet{labels, PermSet(n, std::move(all))};
}

RouteSet open_routes(const Digraph& g, int max_bits) { return open_routes(g, route_labeling(g), max_bits); }

RouteLabeling normalize_labeling(const Digraph& g, const RouteLabeling& labels, int max_bits) {
    const FactorEngine eng(g, max_bits);
    auto s = eng.make_scratch();
    for (std::uint64_t sel = 0; sel < eng.factor_count(); ++sel) {
        if (auto r = eng.route(sel, labels, s)) {
            RouteLabeling out = labels;
            for (int i = 0; i < labels.size(); ++i) {
                out.exits[static_cast<std::size_t>(i)] = labels.exits[static_cast<std::size_t>((*r)[i])];
            }
            return out;
        }
    }
    throw PreconditionError("normalize_labeling: graph is closed (no open factor)");
}

bool hamiltonicity_via_routes(const Digraph& f, const Digraph& fp, const SpliceMap& m, int max_bits) {
    const Digraph g = spliced_graph(f, fp, m);
    if (!is_two_diregular(g)) {
        throw PreconditionError("hamiltonicity_via_routes: spliced graph is not a 2-dd");
    }
    const auto p = open_routes(f, max_bits);
    const auto q = open_routes(fp, max_bits);
    return intersects_cyclic(p.routes, m.x, q.routes, m.y);
}

// ---------------------------------------------------------------- reference

namespace reference {

int graph_index(const Digraph& g, int max_bits) {
    int best = std::numeric_limits<int>::max();
    for_each_factor(g, [&](const Factor& f) { best = std::min(best, f.index()); }, max_bits);
    return best;
}

std::optional<Factor> hamiltonian_witness(const Digraph& g, int max_bits) {
    require_2dd(g, "is_hamiltonian");
    const FactorEngine eng(g, max_bits);
    for (std::uint64_t sel = 0; sel < eng.factor_count(); ++sel) {
        Factor f = eng.factor(sel);
        if (f.index() == 1) {
            return f;
        }
    }
    return std::nullopt;
}

ParityFamily classify_parity_family(const Digraph& g, int max_bits) {
    require_2dd(g, "classify_parity_family");
    unsigned mask = 0;
    for_each_factor(g, [&](const Factor& f) { mask |= 1U << (f.index() & 1); }, max_bits);
    return family_of_mask(mask);
}

RouteSet open_routes(const Digraph& g, const RouteLabeling& labels, int max_bits) {
    const int n = labels.size();
    if (n == 0) {
        throw PreconditionError("open_routes: graph has no entry or exit vertices");
    }
    std::vector<int> exit_label(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int i = 0; i < n; ++i) {
        exit_label[static_cast<std::size_t>(labels.exits[static_cast<std::size_t>(i)])] = i;
    }
    std::vector<Perm> routes;
    for_each_factor(
        g,
        [&](const Factor& f) {
            if (!f.is_open()) {
                return;
            }
            std::vector<int> img(static_cast<std::size_t>(n), -1);
            for (const auto& path : f.paths) {
                const int from = static_cast<int>(
                    std::find(labels.entries.begin(), labels.entries.end(), path.front()) - labels.entries.begin());
                img[static_cast<std::size_t>(from)] = exit_label[static_cast<std::size_t>(path.back())];
            }
            routes.push_back(Perm::from_images(img));
        },
        max_bits);
    if (routes.empty()) {
        throw PreconditionError("open_routes: graph is closed (no open factor)");
    }
    return RouteSet{labels, PermSet(n, std::move(routes))};
}

namespace {

bool extend(const Digraph& g, int v, int depth, std::vector<bool>& on) {
    if (depth == g.vertex_count()) {
        for (int a : g.out_arcs(v)) {
            if (g.arc(a).head == 0) {
                return true;
            }
        }
        return false;
    }
    for (int a : g.out_arcs(v)) {
        const int w = g.arc(a).head;
        if (!on[static_cast<std::size_t>(w)]) {
            on[static_cast<std::size_t>(w)] = true;
            if (extend(g, w, depth + 1, on)) {
                return true;
            }
            on[static_cast<std::size_t>(w)] = false;
        }
    }
    return false;
}

} // namespace

bool hamiltonian_backtrack(const Digraph& g) {
    if (g.vertex_count() == 0) {
        return false;
    }
    std::vector<bool> on(static_cast<std::size_t>(g.vertex_count()), false);
    on[0] = true;
    return extend(g, 0, 1, on);
}

} // namespace reference

} // namespace twodd
