#pragma once

#include "twodd/perm.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twodd {

/// A finite subset of S_n. Elements are deduplicated and kept in
/// lexicographic order of their image sequences, so iteration and every
/// derived set are reproducible byte for byte.
class PermSet {
public:
    explicit PermSet(int n);
    PermSet(int n, std::vector<Perm> elems);

    static PermSet all(int n);
    /// A_n.
    static PermSet even(int n);
    /// S_n - A_n.
    static PermSet odd(int n);
    /// C_n.
    static PermSet cyclic(int n);

    int degree() const noexcept { return n_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    bool contains(const Perm& p) const;
    const std::vector<Perm>& elements() const noexcept { return elems_; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }

    friend bool operator==(const PermSet&, const PermSet&) = default;

private:
    int n_;
    std::vector<Perm> elems_;
};

enum class Uniformity { Even, Odd, Mixed };

std::string to_string(Uniformity u);

/// Throws PreconditionError on an empty set.
Uniformity uniformity(const PermSet& p);

/// Parity bit of a uniform set; throws on empty or mixed input.
int set_parity(const PermSet& p);

PermSet product_set(const PermSet& p, const PermSet& q);
/// The (x, y)-biconjugate xQy.
PermSet translate(const Perm& x, const PermSet& q, const Perm& y);
PermSet inverse_set(const PermSet& p);

PermSet set_union(const PermSet& a, const PermSet& b);
PermSet set_intersection(const PermSet& a, const PermSet& b);
PermSet set_difference(const PermSet& a, const PermSet& b);
bool is_subset(const PermSet& a, const PermSet& b);

/// Largest degree for which excluded sets and residues are materialised.
inline constexpr int kMaxResidueDegree = 10;

/// E_P = P^{-1} C_n for a non-empty uniform P.
PermSet excluded_set(const PermSet& p);

/// R_P: the odd permutations minus E_P when pi(P) = pi(n), otherwise the
/// even permutations minus E_P. Computed by the parallel kernel, which keeps
/// every r of the right parity with p*r non-cyclic for all p in P.
PermSet residue(const PermSet& p);

enum class ParityClass { Boring, Interesting };

std::string to_string(ParityClass c);

struct ParityCase {
    int n_parity = 0;
    bool pq_same = false;
    bool xy_same = false;
    ParityClass cls = ParityClass::Boring;
};

/// Boring rows are the four parity patterns that force PxQy to miss C_n;
/// the remaining four are interesting. Requires uniform P and Q.
ParityCase classify_parity_case(int n, const PermSet& p, const PermSet& q, const Perm& x,
                                const Perm& y);

/// Brute force: does some p x q y land in C_n?
bool intersects_cyclic(const PermSet& p, const Perm& x, const PermSet& q, const Perm& y);

/// xQy contained in R_P. Only meaningful in an interesting parity case and
/// throws PreconditionError otherwise.
bool residue_theorem_check(const PermSet& p, const Perm& x, const PermSet& q, const Perm& y);

struct Biconjugacy {
    Perm x;
    Perm y;
};

/// Largest degree for the exhaustive biconjugacy search.
inline constexpr int kMaxBiconjugacyDegree = 7;

/// Finds (x, y) with rp == translate(x, rq, y), or nullopt if none exists.
std::optional<Biconjugacy> find_biconjugacy(const PermSet& rp, const PermSet& rq);

/// Serial, definitional versions of the kernels above. Kept as independent
/// oracles for the tests and as the baseline of the benchmark.
namespace reference {

PermSet excluded_set(const PermSet& p);
/// Literal set difference against the materialised excluded set.
PermSet residue(const PermSet& p);
bool intersects_cyclic(const PermSet& p, const Perm& x, const PermSet& q, const Perm& y);

} // namespace reference

} // namespace twodd
