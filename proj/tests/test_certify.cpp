#include "fixtures.hpp"
#include "twodd/certify.hpp"
#include "twodd/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

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

// ACs owning the first `arcs` arcs of g.
std::vector<int> acs_of_prefix(const Digraph& g, int arcs) {
    const auto dec = ac_decompose(g);
    std::set<int> k;
    for (int a = 0; a < arcs; ++a) {
        k.insert(dec.ac_of_arc[static_cast<std::size_t>(a)]);
    }
    return {k.begin(), k.end()};
}

// Joins two 2-dds through one split vertex each.
Digraph two_splice(const Digraph& a, const Digraph& b, int va, int vb) {
    const auto sa = split(a, std::vector<int>{va});
    const auto sb = split(b, std::vector<int>{vb});
    const Digraph u = disjoint_union(sa.graph, sb.graph);
    const int off = sa.graph.vertex_count();
    const std::vector<std::pair<int, int>> pairs{{off + sb.out_vertex[0], va}, {sa.out_vertex[0], off + vb}};
    return splice_pairs(u, pairs).graph;
}

const Digraph& gi(int i) {
    static const Digraph g[] = {fixtures::graph("g1"), fixtures::graph("g2"), fixtures::graph("g3"),
                                fixtures::graph("g4")};
    return g[i];
}

} // namespace

TEST_CASE("replacement library matches the fixture graphs") {
    for (int i = 0; i < 4; ++i) {
        Digraph f = gi(i);
        f.clear_labels();
        CHECK(replacement_graph("g" + std::to_string(i + 1)) == f);
    }
    const Digraph& x = replacement_graph("single_ac");
    const auto d = ac_decompose(x);
    REQUIRE(d.size() == 1);
    CHECK(ac_is_clean(x, d.cycles[0]));
    const auto r = open_routes(x).routes;
    CHECK(r.size() == 2);
    CHECK(r.contains(Perm(3)));
    CHECK(residue(r).empty());
    CHECK_THROWS_AS(replacement_graph("nope"), PreconditionError);
}

TEST_CASE("G_5 residue certificate across the G_a / G_b boundary") {
    const Digraph g5 = fixtures::graph("g5");
    const auto k = acs_of_prefix(g5, 18);
    REQUIRE(k.size() == 3);
    std::string why;
    const auto c = certify_residue(g5, k, {}, &why);
    REQUIRE_MESSAGE(c, why);
    CHECK(c->verdict == Verdict::NonHamiltonian);
    const Step& st = c->steps.at(0);
    CHECK(st.kind == StepKind::Residue);
    CHECK_FALSE(st.boring);
    CHECK(*st.routes_q == perms(5, {"I", "(2 3 5)", "(2 4 5)", "(1 2 5)", "(1 3)(2 5)", "(1 4)(2 5)"}));
    CHECK(*st.routes_p == perms(5, {"I", "(2 5 3)", "(2 5 4)", "(1 3)(2 5)"}));
    CHECK(*st.residue_p == perms(5, {"I", "(2 3 5)", "(2 4 5)", "(2 5 3)", "(2 5 4)", "(1 2 5)", "(1 5 2)",
                                     "(1 3)(2 5)", "(1 4)(2 5)", "(2 5)(3 4)"}));
    CHECK(verify(g5, *c).ok);
}

TEST_CASE("G_5 pipeline") {
    const Digraph g5 = fixtures::graph("g5");
    CHECK_FALSE(certify_even(g5));
    CHECK_FALSE(certify_closed_ac(g5));
    CHECK_FALSE(certify_split(g5));
    CHECK_FALSE(reduce_2ac(g5));
    CHECK_FALSE(reduce_3ac(g5));
    const auto c = check(g5);
    CHECK(c.verdict == Verdict::NonHamiltonian);
    REQUIRE_FALSE(c.steps.empty());
    CHECK(c.steps.back().kind == StepKind::Residue);
    CHECK(verify(g5, c).ok);
    const auto back = certificate_from_json(nlohmann::json::parse(to_json(c).dump()));
    CHECK(to_json(back) == to_json(c));
    CHECK(verify(g5, back).ok);
}

TEST_CASE("even splicings are certified by parity") {
    const Perm id(4);
    const Digraph g = spliced_graph(gi(0), gi(0), SpliceMap{id, id});
    const auto c = certify_even(g);
    REQUIRE(c);
    CHECK(c->steps[0].kind == StepKind::EvenFamily);
    CHECK_FALSE(is_hamiltonian(g));
    CHECK(check(g).steps.back().kind == StepKind::EvenFamily);
    CHECK(verify(g, *c).ok);

    const Digraph tri = make(3, {{1, 2}, {2, 3}, {3, 1}, {1, 3}, {3, 2}, {2, 1}});
    CHECK_FALSE(certify_even(tri));
    CHECK_FALSE(certify_closed_ac(tri));
    const auto h = check(tri);
    CHECK(h.verdict == Verdict::Hamiltonian);
    CHECK(verify(tri, h).ok);
}

TEST_CASE("closed AC with short cycles") {
    // two doubled 2-cycles joined: 1<->2 twice over, 3<->4 twice over, then one swap
    const Digraph two = disjoint_union(make(2, {{1, 2}, {1, 2}, {2, 1}, {2, 1}}), make(2, {{1, 2}, {1, 2}, {2, 1}, {2, 1}}));
    const auto c = check(two);
    CHECK(c.verdict == Verdict::NonHamiltonian);
    CHECK(c.steps.back().kind == StepKind::Disconnected);
    const Digraph loopy = make(2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
    const auto cl = certify_closed_ac(loopy);
    // the two loops form one half, the 2-cycle the other: only one half is short
    CHECK_FALSE(cl);
    CHECK(is_hamiltonian(loopy));
}

TEST_CASE("split certificates") {
    const Perm id(4);
    const Digraph even = spliced_graph(gi(0), gi(0), SpliceMap{id, id});
    const Digraph odd = spliced_graph(gi(3), gi(3), SpliceMap{id, parse_cycles("(1 2)", 4)});
    REQUIRE(classify_parity_family(odd) == ParityFamily::Odd);
    REQUIRE(is_hamiltonian(odd));
    const Digraph g = two_splice(even, odd, 0, 0);
    REQUIRE(is_two_diregular(g));
    REQUIRE(is_connected(g));
    CHECK(is_2_splittable(g));
    CHECK_FALSE(is_hamiltonian(g));
    const auto c = certify_split(g);
    REQUIRE(c);
    CHECK(c->verdict == Verdict::NonHamiltonian);
    CHECK(c->steps[0].kind == StepKind::Split);
    CHECK(verify(g, *c).ok);

    const Digraph both = two_splice(odd, odd, 3, 5);
    const auto h = certify_split(both);
    REQUIRE(h);
    CHECK(h->verdict == Verdict::Hamiltonian);
    CHECK(is_hamiltonian(both));
    CHECK(verify(both, *h).ok);
}

TEST_CASE("2-splicing: Hamiltonian iff both parts are") {
    std::mt19937 rng(17);
    for (int t = 0; t < 120; ++t) {
        const Digraph a = spliced_graph(gi(static_cast<int>(rng() % 4)), gi(static_cast<int>(rng() % 4)),
                                        SpliceMap{random_perm(4, rng), random_perm(4, rng)});
        const Digraph b = spliced_graph(gi(static_cast<int>(rng() % 4)), gi(static_cast<int>(rng() % 4)),
                                        SpliceMap{random_perm(4, rng), random_perm(4, rng)});
        const Digraph g = two_splice(a, b, static_cast<int>(rng() % 12), static_cast<int>(rng() % 12));
        CHECK(is_hamiltonian(g) == (is_hamiltonian(a) && is_hamiltonian(b)));
        const auto c = check(g);
        CHECK(c.verdict == (is_hamiltonian(g) ? Verdict::Hamiltonian : Verdict::NonHamiltonian));
        CHECK(verify(g, c).ok);
    }
}

TEST_CASE("replacement keeps Hamiltonicity") {
    // replace the second side of a splicing by another graph with a biconjugate residue
    std::mt19937 rng(23);
    int replaced = 0;
    for (int t = 0; t < 300; ++t) {
        const int i = static_cast<int>(rng() % 4);
        const int j = static_cast<int>(rng() % 3); // g1..g3: singleton residues
        const SpliceMap m{random_perm(4, rng), random_perm(4, rng)};
        const Digraph g = spliced_graph(gi(i), gi(j), m);
        const auto dec = ac_decompose(g);
        std::vector<int> k;
        for (int a = 12; a < 24; ++a) {
            k.push_back(dec.ac_of_arc[static_cast<std::size_t>(a)]);
        }
        std::sort(k.begin(), k.end());
        k.erase(std::unique(k.begin(), k.end()), k.end());
        REQUIRE(k.size() == 2);
        const auto sides = sides_of_ac_subset(g, dec, k);
        const PermSet rk = residue(open_routes(sides.k_side).routes);
        for (int r = 0; r < 3; ++r) {
            const Digraph& repl = gi(r);
            const PermSet rr = residue(open_routes(repl).routes);
            const auto w = find_biconjugacy(rr, rk);
            REQUIRE(w);
            const Digraph h = replace_subgraph(g, k, repl, w->x, w->y);
            CHECK(is_two_diregular(h));
            CHECK(h.vertex_count() == g.vertex_count());
            CHECK(is_hamiltonian(h) == is_hamiltonian(g));
            ++replaced;
        }
        // a witness of the wrong orientation is rejected
        const PermSet r0 = residue(open_routes(gi(0)).routes);
        if (!(r0 == rk)) {
            CHECK_THROWS_AS(replace_subgraph(g, k, gi(0), Perm(4), Perm(4)), PreconditionError);
        }
    }
    CHECK(replaced == 900);
}

TEST_CASE("replacing a side by itself") {
    const SpliceMap m{parse_cycles("(1 2 3)", 4), parse_cycles("(2 4)", 4)};
    const Digraph g = spliced_graph(gi(1), gi(2), m);
    const auto dec = ac_decompose(g);
    const std::vector<int> k = acs_of_prefix(g, 12);
    const auto sides = sides_of_ac_subset(g, dec, k);
    const Digraph h = replace_subgraph(g, k, sides.k_side, Perm(4), Perm(4));
    CHECK(h.vertex_count() == g.vertex_count());
    CHECK(h.arc_count() == g.arc_count());
    CHECK(is_hamiltonian(h) == is_hamiltonian(g));
    CHECK(graph_index(h) == graph_index(g));
    CHECK(classify_parity_family(h) == classify_parity_family(g));
}

TEST_CASE("collapse of a unique-route subgraph") {
    // a doubled arc pair is a 2-arc AC with the single route I
    const Digraph tri = make(3, {{1, 2}, {2, 3}, {3, 1}, {1, 3}, {3, 2}, {2, 1}});
    const auto s = split(tri, std::vector<int>{0});
    // give the triangle a detour through a parallel pair u => w
    Digraph u = disjoint_union(s.graph, make(2, {{1, 2}, {1, 2}}));
    const int off = s.graph.vertex_count();
    const std::vector<std::pair<int, int>> pairs{{off, 0}, {s.out_vertex[0], off + 1}};
    const Digraph g = splice_pairs(u, pairs).graph;
    REQUIRE(is_two_diregular(g));
    const auto dec = ac_decompose(g);
    int pair_ac = -1;
    for (int k = 0; k < dec.size(); ++k) {
        if (dec.cycles[static_cast<std::size_t>(k)].arcs.size() == 2) {
            pair_ac = k;
        }
    }
    REQUIRE(pair_ac >= 0);
    const Digraph h = collapse_unique_route(g, {pair_ac});
    CHECK(h.vertex_count() == g.vertex_count() - 1);
    CHECK(is_two_diregular(h));
    CHECK(is_hamiltonian(h) == is_hamiltonian(g));
    CHECK_THROWS_AS(collapse_unique_route(fixtures::graph("g5"), acs_of_prefix(fixtures::graph("g5"), 18)),
                    PreconditionError);
}

TEST_CASE("pipeline soundness on random splicings") {
    std::mt19937 rng(99);
    CheckOptions no_bf;
    no_bf.brute_force = false;
    int certified_without_bf = 0;
    for (int t = 0; t < 400; ++t) {
        const SpliceMap m{random_perm(4, rng), random_perm(4, rng)};
        const Digraph g = spliced_graph(gi(static_cast<int>(rng() % 4)), gi(static_cast<int>(rng() % 4)), m);
        const bool h = is_hamiltonian(g);
        const auto c = check(g);
        CHECK(c.verdict == (h ? Verdict::Hamiltonian : Verdict::NonHamiltonian));
        CHECK(verify(g, c).ok);
        const auto c2 = check(g, no_bf);
        if (c2.verdict != Verdict::Undecided) {
            CHECK(c2.verdict == (h ? Verdict::Hamiltonian : Verdict::NonHamiltonian));
            CHECK(verify(g, c2).ok);
            ++certified_without_bf;
        } else {
            CHECK(h);
        }
    }
    CHECK(certified_without_bf > 0);
}

TEST_CASE("verifier rejects tampered certificates") {
    const Digraph g5 = fixtures::graph("g5");
    auto c = check(g5);
    auto bad = c;
    bad.verdict = Verdict::Hamiltonian;
    CHECK_FALSE(verify(g5, bad).ok);
    bad = c;
    bad.steps.back().routes_q = perms(5, {"I"});
    CHECK_FALSE(verify(g5, bad).ok);
    Certificate fake;
    fake.verdict = Verdict::NonHamiltonian;
    Step st;
    st.kind = StepKind::EvenFamily;
    fake.steps.push_back(st);
    CHECK_FALSE(verify(g5, fake).ok);
    fake.steps[0].kind = StepKind::BruteForce;
    fake.steps[0].witness = 0;
    fake.verdict = Verdict::Hamiltonian;
    CHECK_FALSE(verify(g5, fake).ok);
}
