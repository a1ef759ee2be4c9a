#include "twodd/permset.hpp"

#include "twodd/error.hpp"

#include <algorithm>
#include <atomic>
#include <iterator>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twodd {

namespace {

void require_same_degree(const char* what, int a, int b) {
    if (a != b) {
        throw PreconditionError(std::string(what) + ": degree mismatch " + std::to_string(a) +
                                " vs " + std::to_string(b));
    }
}

// Visits the permutations of degree n with ranks in [first, last), in order.
template <typename Fn>
void for_each_perm_in_rank_range(int n, std::uint64_t first, std::uint64_t last, Fn&& fn) {
    if (first >= last) {
        return;
    }
    Perm start = unrank(n, first);
    std::vector<int> img(start.images().begin(), start.images().end());
    for (std::uint64_t r = first; r < last; ++r) {
        fn(Perm::from_images(img));
        std::next_permutation(img.begin(), img.end());
    }
}

PermSet parity_class(int n, int bit) {
    if (n > kMaxResidueDegree) {
        throw ResourceError("materialising a parity class of S_" + std::to_string(n) +
                            " exceeds the degree cap " + std::to_string(kMaxResidueDegree));
    }
    std::vector<Perm> out;
    out.reserve(factorial(n) / (n > 1 ? 2 : 1));
    for_each_perm_in_rank_range(n, 0, factorial(n), [&](const Perm& p) {
        if (parity(p) == bit) {
            out.push_back(p);
        }
    });
    return PermSet(n, std::move(out));
}

void require_residue_input(const char* what, const PermSet& p) {
    if (p.empty()) {
        throw PreconditionError(std::string(what) + ": empty set");
    }
    if (uniformity(p) == Uniformity::Mixed) {
        throw PreconditionError(std::string(what) + ": set is not uniform");
    }
    if (p.degree() > kMaxResidueDegree) {
        throw ResourceError(std::string(what) + ": degree " + std::to_string(p.degree()) +
                            " exceeds cap " + std::to_string(kMaxResidueDegree));
    }
}

// Parity bit of the permutations a residue of p is drawn from.
int residue_parity(const PermSet& p) {
    return set_parity(p) == (p.degree() & 1) ? 1 : 0;
}

} // namespace

PermSet::PermSet(int n) : n_(n) {
    if (n < 1 || n > Perm::kMaxDegree) {
        throw PreconditionError("PermSet degree out of range");
    }
}

PermSet::PermSet(int n, std::vector<Perm> elems) : PermSet(n) {
    for (const auto& p : elems) {
        require_same_degree("PermSet", n, p.degree());
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    elems_ = std::move(elems);
}

PermSet PermSet::all(int n) {
    if (n > kMaxResidueDegree) {
        throw ResourceError("S_" + std::to_string(n) + " is too large to materialise");
    }
    std::vector<Perm> out;
    for_each_perm_in_rank_range(n, 0, factorial(n), [&](const Perm& p) { out.push_back(p); });
    return PermSet(n, std::move(out));
}

PermSet PermSet::even(int n) { return parity_class(n, 0); }
PermSet PermSet::odd(int n) { return parity_class(n, 1); }
PermSet PermSet::cyclic(int n) { return PermSet(n, cyclic_permutations(n)); }

bool PermSet::contains(const Perm& p) const {
    return p.degree() == n_ && std::binary_search(elems_.begin(), elems_.end(), p);
}

std::string to_string(Uniformity u) {
    switch (u) {
    case Uniformity::Even:
        return "EVEN";
    case Uniformity::Odd:
        return "ODD";
    case Uniformity::Mixed:
        return "MIXED";
    }
    return "?";
}

Uniformity uniformity(const PermSet& p) {
    if (p.empty()) {
        throw PreconditionError("uniformity of an empty set");
    }
    bool any_even = false;
    bool any_odd = false;
    for (const auto& e : p) {
        (parity(e) ? any_odd : any_even) = true;
    }
    if (any_even && any_odd) {
        return Uniformity::Mixed;
    }
    return any_odd ? Uniformity::Odd : Uniformity::Even;
}

int set_parity(const PermSet& p) {
    const auto u = uniformity(p);
    if (u == Uniformity::Mixed) {
        throw PreconditionError("parity of a non-uniform set");
    }
    return u == Uniformity::Odd ? 1 : 0;
}

PermSet product_set(const PermSet& p, const PermSet& q) {
    require_same_degree("product_set", p.degree(), q.degree());
    std::vector<Perm> out;
    out.reserve(p.size() * q.size());
    for (const auto& a : p) {
        for (const auto& b : q) {
            out.push_back(compose(a, b));
        }
    }
    return PermSet(p.degree(), std::move(out));
}

PermSet translate(const Perm& x, const PermSet& q, const Perm& y) {
    require_same_degree("translate", x.degree(), q.degree());
    require_same_degree("translate", y.degree(), q.degree());
    std::vector<Perm> out;
    out.reserve(q.size());
    for (const auto& e : q) {
        out.push_back(compose(x, e, y));
    }
    return PermSet(q.degree(), std::move(out));
}

PermSet inverse_set(const PermSet& p) {
    std::vector<Perm> out;
    out.reserve(p.size());
    for (const auto& e : p) {
        out.push_back(inverse(e));
    }
    return PermSet(p.degree(), std::move(out));
}

PermSet set_union(const PermSet& a, const PermSet& b) {
    require_same_degree("set_union", a.degree(), b.degree());
    std::vector<Perm> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PermSet(a.degree(), std::move(out));
}

PermSet set_intersection(const PermSet& a, const PermSet& b) {
    require_same_degree("set_intersection", a.degree(), b.degree());
    std::vector<Perm> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PermSet(a.degree(), std::move(out));
}

PermSet set_difference(const PermSet& a, const PermSet& b) {
    require_same_degree("set_difference", a.degree(), b.degree());
    std::vector<Perm> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PermSet(a.degree(), std::move(out));
}

bool is_subset(const PermSet& a, const PermSet& b) {
    require_same_degree("is_subset", a.degree(), b.degree());
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

PermSet excluded_set(const PermSet& p) {
    require_residue_input("excluded_set", p);
    const auto cyc = cyclic_permutations(p.degree());
    std::vector<Perm> out;
    out.reserve(p.size() * cyc.size());
    for (const auto& e : p) {
        const Perm inv = inverse(e);
        for (const auto& c : cyc) {
            out.push_back(compose(inv, c));
        }
    }
    return PermSet(p.degree(), std::move(out));
}

PermSet residue(const PermSet& p) {
    require_residue_input("residue", p);
    const int n = p.degree();
    const int want = residue_parity(p);
    const std::uint64_t total = factorial(n);
    const auto& elems = p.elements();

    // contiguous rank blocks keep the merged output in lexicographic order
    const std::int64_t blocks = static_cast<std::int64_t>(std::min<std::uint64_t>(total, 256));
    std::vector<std::vector<Perm>> found(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < blocks; ++b) {
        const std::uint64_t lo = total * static_cast<std::uint64_t>(b) / static_cast<std::uint64_t>(blocks);
        const std::uint64_t hi =
            total * static_cast<std::uint64_t>(b + 1) / static_cast<std::uint64_t>(blocks);
        auto& out = found[static_cast<std::size_t>(b)];
        for_each_perm_in_rank_range(n, lo, hi, [&](const Perm& r) {
            if (parity(r) != want) {
                return;
            }
            for (const auto& e : elems) {
                if (is_cyclic(compose(e, r))) {
                    return;
                }
            }
            out.push_back(r);
        });
    }

    std::vector<Perm> all;
    for (auto& f : found) {
        all.insert(all.end(), f.begin(), f.end());
    }
    return PermSet(n, std::move(all));
}

std::string to_string(ParityClass c) {
    return c == ParityClass::Boring ? "BORING" : "INTERESTING";
}

ParityCase classify_parity_case(int n, const PermSet& p, const PermSet& q, const Perm& x,
                                const Perm& y) {
    require_same_degree("classify_parity_case", n, p.degree());
    require_same_degree("classify_parity_case", n, q.degree());
    require_same_degree("classify_parity_case", n, x.degree());
    require_same_degree("classify_parity_case", n, y.degree());
    ParityCase c;
    c.n_parity = n & 1;
    c.pq_same = set_parity(p) == set_parity(q);
    c.xy_same = parity(x) == parity(y);
    // n even: boring iff the two comparisons agree; n odd: iff they differ
    const bool boring = (c.pq_same == c.xy_same) != (c.n_parity == 1);
    c.cls = boring ? ParityClass::Boring : ParityClass::Interesting;
    return c;
}

bool intersects_cyclic(const PermSet& p, const Perm& x, const PermSet& q, const Perm& y) {
    require_same_degree("intersects_cyclic", p.degree(), q.degree());
    const PermSet moved = translate(x, q, y);
    const auto& ps = p.elements();
    const auto& qs = moved.elements();
    const auto np = static_cast<std::int64_t>(ps.size());
    std::atomic<bool> hit{false};

#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < np; ++i) {
        if (hit.load(std::memory_order_relaxed)) {
            continue;
        }
        for (const auto& b : qs) {
            if (is_cyclic(compose(ps[static_cast<std::size_t>(i)], b))) {
                hit.store(true, std::memory_order_relaxed);
                break;
            }
        }
    }
    return hit.load();
}

bool residue_theorem_check(const PermSet& p, const Perm& x, const PermSet& q, const Perm& y) {
    const auto c = classify_parity_case(p.degree(), p, q, x, y);
    if (c.cls != ParityClass::Interesting) {
        throw PreconditionError("residue_theorem_check: boring parity case");
    }
    return is_subset(translate(x, q, y), residue(p));
}

std::optional<Biconjugacy> find_biconjugacy(const PermSet& rp, const PermSet& rq) {
    require_same_degree("find_biconjugacy", rp.degree(), rq.degree());
    const int n = rp.degree();
    if (rp.size() != rq.size()) {
        return std::nullopt;
    }
    if (rp.empty()) {
        return Biconjugacy{Perm(n), Perm(n)};
    }
    if (rp.size() == 1) {
        // r1 = r2^{-1} * r2 * r1
        const Perm& r1 = rp.elements().front();
        const Perm& r2 = rq.elements().front();
        return Biconjugacy{inverse(r2), r1};
    }
    if (n > kMaxBiconjugacyDegree) {
        throw ResourceError("find_biconjugacy: exhaustive search above degree " +
                            std::to_string(kMaxBiconjugacyDegree));
    }
    const Perm& q0 = rq.elements().front();
    std::optional<Biconjugacy> result;
    for_each_perm_in_rank_range(n, 0, factorial(n), [&](const Perm& x) {
        if (result) {
            return;
        }
        const Perm xq0_inv = inverse(compose(x, q0));
        for (const auto& t : rp) {
            const Perm y = compose(xq0_inv, t);
            bool ok = true;
            for (const auto& e : rq) {
                if (!rp.contains(compose(x, e, y))) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                result = Biconjugacy{x, y};
                return;
            }
        }
    });
    return result;
}

namespace reference {

PermSet excluded_set(const PermSet& p) {
    require_residue_input("excluded_set", p);
    const PermSet cyc = PermSet::cyclic(p.degree());
    return product_set(inverse_set(p), cyc);
}

PermSet residue(const PermSet& p) {
    require_residue_input("residue", p);
    const int n = p.degree();
    const PermSet pool = residue_parity(p) == 1 ? PermSet::odd(n) : PermSet::even(n);
    return set_difference(pool, reference::excluded_set(p));
}

bool intersects_cyclic(const PermSet& p, const Perm& x, const PermSet& q, const Perm& y) {
    require_same_degree("intersects_cyclic", p.degree(), q.degree());
    for (const auto& a : p) {
        for (const auto& b : q) {
            if (cycle_count(compose(a, x, b, y)) == 1) {
                return true;
            }
        }
    }
    return false;
}

} // namespace reference

} // namespace twodd
