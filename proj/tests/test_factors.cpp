#include "fixtures.hpp"
#include "twodd/error.hpp"
#include "twodd/factors.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace twodd;
using fixtures::perms;

namespace {

Digraph make(int n, std::initializer_list<std::pair<int, int>> arcs) {
    std::vector<Arc> v;
    for (auto [t, h] : arcs) {
        v.push_back({t - 1, h - 1});
    }
    return Digraph(n, std::move(v));
}

Perm random_perm(int n, std::mt19937& rng) { return unrank(n, rng() % factorial(n)); }

// Factor arcs recovered from the vertex walk: every consecutive pair is an arc.
std::vector<std::pair<int, int>> factor_edges(const Factor& f) {
    std::vector<std::pair<int, int>> e;
    for (const auto& c : f.cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            e.emplace_back(c[i], c[(i + 1) % c.size()]);
        }
    }
    for (const auto& p : f.paths) {
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            e.emplace_back(p[i], p[i + 1]);
        }
    }
    std::sort(e.begin(), e.end());
    return e;
}

} // namespace

TEST_CASE("G1 to G4: structure, routes and residues") {
    const char* names[] = {"g1", "g2", "g3", "g4"};
    const PermSet routes[] = {
        perms(4, {"I", "(1 4 3)", "(1 2 4)"}),
        perms(4, {"I", "(1 4 3)", "(1 2 3)"}),
        perms(4, {"I", "(1 4)(2 3)", "(1 2 3)", "(2 4 3)"}),
        perms(4, {"I", "(1 2)(3 4)", "(1 2 3)", "(2 3 4)"}),
    };
    const PermSet residues[] = {perms(4, {"(1 4)"}), perms(4, {"(1 3)"}), perms(4, {"(2 3)"}), PermSet(4)};
    for (int i = 0; i < 4; ++i) {
        CAPTURE(names[i]);
        const Digraph g = fixtures::graph(names[i]);
        REQUIRE(validate(g).ok());
        const auto d = ac_decompose(g);
        CHECK(d.size() == 2);
        for (const auto& x : d.cycles) {
            CHECK(x.arcs.size() == 6);
            CHECK(ac_is_clean(g, x));
            CHECK_FALSE(ac_is_closed(g, x));
        }
        CHECK(classify_vertices(g).saturated.size() == 2);
        CHECK(is_connected(g));
        CHECK(enumerate_factors(g).size() == 4);
        CHECK(graph_index(g) == 0);
        CHECK(is_open(g));
        const auto r = open_routes(g);
        CHECK(r.routes == routes[i]);
        CHECK(r.routes == reference::open_routes(g, route_labeling(g)).routes);
        CHECK(uniformity(r.routes) == Uniformity::Even);
        CHECK(residue(r.routes) == residues[i]);
    }
}

TEST_CASE("two-sided example: G_a, G_b and their splice") {
    const Digraph ga = fixtures::graph("ga");
    const Digraph gb = fixtures::graph("gb");
    const PermSet p = open_routes(ga).routes;
    const PermSet q = open_routes(gb).routes;
    CHECK(p == perms(5, {"I", "(2 3 5)", "(2 4 5)", "(1 2 5)", "(1 3)(2 5)", "(1 4)(2 5)"}));
    CHECK(q == perms(5, {"I", "(2 5 3)", "(2 5 4)", "(1 3)(2 5)"}));
    const PermSet common =
        perms(5, {"I", "(2 3 5)", "(2 4 5)", "(2 5 3)", "(2 5 4)", "(1 2 5)", "(1 5 2)", "(1 3)(2 5)", "(1 4)(2 5)",
                  "(2 5)(3 4)"});
    CHECK(residue(p) == common);
    CHECK(residue(q) == common);
    const Perm id(5);
    CHECK(residue_theorem_check(p, id, q, id));
    CHECK_FALSE(hamiltonicity_via_routes(ga, gb, SpliceMap{id, id}));

    const Digraph g5 = fixtures::graph("g5");
    REQUIRE(is_two_diregular(g5));
    CHECK(ac_decompose(g5).size() == 6);
    CHECK(graph_is_clean(g5));
    CHECK(is_connected(g5));
    CHECK(enumerate_factors(g5).size() == 64);
    CHECK(graph_index(g5) >= 2);
    CHECK_FALSE(is_hamiltonian(g5));
    CHECK_FALSE(reference::hamiltonian_backtrack(g5));
    CHECK(classify_parity_family(g5) == ParityFamily::Odd);
    CHECK_FALSE(is_2_splittable(g5));

    const Digraph spliced = spliced_graph(ga, gb, SpliceMap{id, id});
    CHECK(spliced.vertex_count() == 18);
    CHECK_FALSE(is_hamiltonian(spliced));
}

TEST_CASE("factor invariants") {
    const Digraph g = fixtures::graph("g5");
    const auto d = ac_decompose(g);
    const auto all = enumerate_factors(g);
    const std::uint64_t mask = (std::uint64_t{1} << d.size()) - 1;
    for (const auto& f : all) {
        std::vector<int> cover(static_cast<std::size_t>(g.vertex_count()), 0);
        for (const auto& c : f.cycles) {
            for (int v : c) {
                ++cover[static_cast<std::size_t>(v)];
            }
        }
        CHECK(f.paths.empty());
        CHECK(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));
        // the complementary factor uses exactly the other arcs
        const Factor& comp = all[static_cast<std::size_t>(f.selection ^ mask)];
        auto e1 = factor_edges(f);
        auto e2 = factor_edges(comp);
        std::vector<std::pair<int, int>> both = e1;
        both.insert(both.end(), e2.begin(), e2.end());
        std::sort(both.begin(), both.end());
        std::vector<std::pair<int, int>> arcs;
        for (const auto& a : g.arcs()) {
            arcs.emplace_back(a.tail, a.head);
        }
        std::sort(arcs.begin(), arcs.end());
        CHECK(both == arcs);
        // a factor of a 2-dd is a permutation of V; its parity is |V| - index mod 2
        std::vector<int> img(static_cast<std::size_t>(g.vertex_count()));
        for (auto [u, v] : e1) {
            img[static_cast<std::size_t>(u)] = v;
        }
        CHECK(parity(Perm::from_images(img)) == (g.vertex_count() - f.index()) % 2);
    }
}

TEST_CASE("paths of an open factor cover the vertices") {
    const Digraph g = fixtures::graph("ga");
    for_each_factor(g, [&](const Factor& f) {
        std::vector<int> cover(static_cast<std::size_t>(g.vertex_count()), 0);
        for (const auto& p : f.paths) {
            CHECK(vertex_kind(g, p.front()) == VertexKind::Entry);
            CHECK(vertex_kind(g, p.back()) == VertexKind::Exit);
            for (int v : p) {
                ++cover[static_cast<std::size_t>(v)];
            }
        }
        for (const auto& c : f.cycles) {
            for (int v : c) {
                ++cover[static_cast<std::size_t>(v)];
            }
        }
        CHECK(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));
    });
}

TEST_CASE("parity families") {
    // 4-cycle plus its reverse: two Hamiltonian factors and a pair of 2-cycles
    const Digraph mixed = make(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 4}, {4, 3}, {3, 2}, {2, 1}});
    CHECK(classify_parity_family(mixed) == ParityFamily::Neither);
    CHECK(reference::classify_parity_family(mixed) == ParityFamily::Neither);
    CHECK(is_hamiltonian(mixed));

    const Digraph tri = make(3, {{1, 2}, {2, 3}, {3, 1}, {1, 3}, {3, 2}, {2, 1}});
    CHECK(is_hamiltonian(tri));
    CHECK(classify_parity_family(tri) == ParityFamily::Odd);

    const Digraph two = disjoint_union(tri, tri);
    CHECK(graph_index(two) == 2);
    CHECK_FALSE(is_open(two));
    CHECK(classify_parity_family(two) == ParityFamily::Even);
    CHECK_THROWS_AS(open_routes(two), PreconditionError);

    CHECK_THROWS_AS(is_hamiltonian(fixtures::graph("g1")), PreconditionError);
}

TEST_CASE("factor cap") {
    const Digraph g = fixtures::graph("g5");
    CHECK_THROWS_AS(graph_index(g, 5), ResourceError);
    CHECK_NOTHROW(graph_index(g, 6));
}

TEST_CASE("route-based Hamiltonicity agrees with the oracles on random splicings") {
    const Digraph small[] = {fixtures::graph("g1"), fixtures::graph("g2"), fixtures::graph("g3"),
                           fixtures::graph("g4")};
    std::mt19937 rng(2024);
    for (int t = 0; t < 600; ++t) {
        const Digraph& f = small[rng() % 4];
        const Digraph& fp = small[rng() % 4];
        const SpliceMap m{random_perm(4, rng), random_perm(4, rng)};
        const Digraph g = spliced_graph(f, fp, m);
        const bool h = is_hamiltonian(g);
        CHECK(hamiltonicity_via_routes(f, fp, m) == h);
        CHECK(reference::hamiltonian_witness(g).has_value() == h);
        CHECK(reference::hamiltonian_backtrack(g) == h);
        CHECK(graph_index(g) == reference::graph_index(g));
        CHECK(classify_parity_family(g) == reference::classify_parity_family(g));
        if (h) {
            const auto w = hamiltonian_witness(g);
            CHECK(w->selection == reference::hamiltonian_witness(g)->selection);
            CHECK(w->cycles.front().size() == static_cast<std::size_t>(g.vertex_count()));
        }
    }
}

TEST_CASE("labeling normalisation makes a route the identity") {
    const Digraph g = fixtures::graph("gb");
    const auto l = normalize_labeling(g, route_labeling(g));
    const auto r = open_routes(g, l);
    CHECK(r.routes.contains(Perm(5)));
    CHECK(r.routes.size() == open_routes(g).routes.size());
}
