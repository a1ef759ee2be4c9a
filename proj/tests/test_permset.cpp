#include "twodd/error.hpp"
#include "twodd/permset.hpp"

#include <doctest.h>

#include <random>

using namespace twodd;

namespace {

PermSet ps(int n, std::initializer_list<const char*> cyc) {
    std::vector<Perm> v;
    for (const char* c : cyc) {
        v.push_back(parse_cycles(c, n));
    }
    return PermSet(n, std::move(v));
}

Perm random_perm(int n, std::mt19937& rng) { return unrank(n, rng() % factorial(n)); }

// Random non-empty set of permutations with the given parity.
PermSet random_uniform_set(int n, int parity_bit, std::size_t k, std::mt19937& rng) {
    std::vector<Perm> v;
    while (v.size() < k) {
        const Perm p = random_perm(n, rng);
        if (parity(p) == parity_bit) {
            v.push_back(p);
        }
    }
    return PermSet(n, std::move(v));
}

} // namespace

TEST_CASE("set constructors") {
    CHECK(PermSet::all(4).size() == 24);
    CHECK(PermSet::even(4).size() == 12);
    CHECK(PermSet::odd(4).size() == 12);
    CHECK(PermSet::cyclic(5).size() == 24);
    CHECK(ps(3, {"(1 2)", "(1 2)", "I"}).size() == 2);
}

TEST_CASE("uniformity") {
    CHECK(uniformity(ps(4, {"I", "(1 2 3)"})) == Uniformity::Even);
    CHECK(uniformity(ps(4, {"(1 2)", "(1 2 3 4)"})) == Uniformity::Odd);
    CHECK(uniformity(ps(4, {"I", "(1 2)"})) == Uniformity::Mixed);
    CHECK_THROWS_AS(uniformity(PermSet(4)), PreconditionError);
}

TEST_CASE("residues of small route sets") {
    CHECK(residue(ps(4, {"I", "(1 4 3)", "(1 2 4)"})) == ps(4, {"(1 4)"}));
    CHECK(residue(ps(4, {"I", "(1 4 3)", "(1 2 3)"})) == ps(4, {"(1 3)"}));
    CHECK(residue(ps(4, {"I", "(1 4)(2 3)", "(1 2 3)", "(2 4 3)"})) == ps(4, {"(2 3)"}));
    CHECK(residue(ps(4, {"I", "(1 2)(3 4)", "(1 2 3)", "(2 3 4)"})).empty());

    // values from an independent brute force over A_5
    const PermSet p = ps(5, {"I", "(1 2 5 4 3)", "(3 5 4)", "(1 2 4)", "(1 2 5)"});
    CHECK(residue(p) == ps(5, {"(1 4 5)", "(2 4 5)", "(1 2)(4 5)", "(1 2)(3 4)", "(1 2)(3 5)"}));
    const PermSet p3 = ps(5, {"I", "(1 2 5 4 3)", "(3 5 4)", "(1 2 3)", "(1 2 5)"});
    CHECK(residue(p3) == ps(5, {"(2 3 5)", "(1 3 5)", "(1 2)(4 5)", "(1 2)(3 4)", "(1 2)(3 5)"}));
}

TEST_CASE("residue kernel matches the set-difference reference") {
    std::mt19937 rng(11);
    for (int n = 2; n <= 6; ++n) {
        for (int t = 0; t < 20; ++t) {
            const PermSet p = random_uniform_set(n, static_cast<int>(rng() % 2), 1 + rng() % 6, rng);
            CHECK(residue(p) == reference::residue(p));
            CHECK(excluded_set(p) == reference::excluded_set(p));
        }
    }
}

TEST_CASE("residue membership characterises the cyclic-product test") {
    // r lies outside E_P exactly when no p r is cyclic.
    std::mt19937 rng(5);
    for (int n = 3; n <= 6; ++n) {
        const PermSet p = random_uniform_set(n, static_cast<int>(rng() % 2), 3, rng);
        const PermSet e = excluded_set(p);
        for (const Perm& r : PermSet::all(n)) {
            bool hit = false;
            for (const Perm& q : p) {
                hit = hit || is_cyclic(compose(q, r));
            }
            CHECK(e.contains(r) == hit);
        }
    }
}

TEST_CASE("residue theorem in interesting parity cases") {
    std::mt19937 rng(3);
    int interesting = 0;
    for (int n = 3; n <= 6; ++n) {
        for (int t = 0; t < 60; ++t) {
            const PermSet p = random_uniform_set(n, static_cast<int>(rng() % 2), 1 + rng() % 4, rng);
            const PermSet q = random_uniform_set(n, static_cast<int>(rng() % 2), 1 + rng() % 4, rng);
            const Perm x = random_perm(n, rng);
            const Perm y = random_perm(n, rng);
            const auto pc = classify_parity_case(n, p, q, x, y);
            const bool meets = intersects_cyclic(p, x, q, y);
            CHECK(meets == reference::intersects_cyclic(p, x, q, y));
            if (pc.cls == ParityClass::Boring) {
                CHECK_FALSE(meets);
                CHECK_THROWS_AS(residue_theorem_check(p, x, q, y), PreconditionError);
            } else {
                ++interesting;
                CHECK(residue_theorem_check(p, x, q, y) == !meets);
            }
        }
    }
    CHECK(interesting > 0);
}

TEST_CASE("parity case table") {
    const PermSet even = ps(4, {"I"});
    const PermSet odd = ps(4, {"(1 2)"});
    const Perm e = Perm(4);
    const Perm o = parse_cycles("(1 2)", 4);
    // n even: boring iff pq_same == xy_same
    CHECK(classify_parity_case(4, even, even, e, e).cls == ParityClass::Boring);
    CHECK(classify_parity_case(4, even, odd, e, e).cls == ParityClass::Interesting);
    CHECK(classify_parity_case(4, even, odd, e, o).cls == ParityClass::Boring);
    CHECK(classify_parity_case(4, even, even, e, o).cls == ParityClass::Interesting);
    const PermSet even5 = ps(5, {"I"});
    const PermSet odd5 = ps(5, {"(1 2)"});
    const Perm e5 = Perm(5);
    const Perm o5 = parse_cycles("(1 2)", 5);
    CHECK(classify_parity_case(5, even5, even5, e5, e5).cls == ParityClass::Interesting);
    CHECK(classify_parity_case(5, even5, odd5, e5, e5).cls == ParityClass::Boring);
    CHECK(classify_parity_case(5, even5, odd5, e5, o5).cls == ParityClass::Interesting);
    CHECK(classify_parity_case(5, even5, even5, e5, o5).cls == ParityClass::Boring);
}

TEST_CASE("biconjugacy") {
    const PermSet a = ps(4, {"(1 3)"});
    const PermSet b = ps(4, {"(1 4)"});
    const auto w = find_biconjugacy(a, b);
    REQUIRE(w);
    CHECK(translate(w->x, b, w->y) == a);

    CHECK(find_biconjugacy(PermSet(4), PermSet(4)));
    CHECK_FALSE(find_biconjugacy(a, ps(4, {"I", "(1 2)"})));

    std::mt19937 rng(9);
    for (int t = 0; t < 30; ++t) {
        const int n = 4 + t % 2;
        const PermSet q = random_uniform_set(n, 0, 1 + rng() % 4, rng);
        const Perm x = random_perm(n, rng);
        const Perm y = random_perm(n, rng);
        const PermSet p = translate(x, q, y);
        const auto found = find_biconjugacy(p, q);
        REQUIRE(found);
        CHECK(translate(found->x, q, found->y) == p);
    }
    // quotients p1^-1 p2 are conjugated by y, so their cycle types must agree
    CHECK_FALSE(find_biconjugacy(ps(4, {"I", "(1 2 3)"}), ps(4, {"I", "(1 2)(3 4)"})));
}
