#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace twodd {

/// An element of the symmetric group S_n, stored as its image sequence.
///
/// Points are 0-based internally; the cycle-notation text format is 1-based.
/// Values are immutable once built and ordered lexicographically by image
/// sequence (degree first), which is the canonical iteration order of every
/// permutation set in the library.
class Perm {
public:
    static constexpr int kMaxDegree = 32;

    /// Identity of degree n.
    explicit Perm(int n = 1);

    /// Builds from 0-based images; throws PreconditionError unless the
    /// sequence is a bijection on [0, n).
    static Perm from_images(std::span<const int> images);
    static Perm from_images(std::initializer_list<int> images);
    /// Same, with 1-based images as written in the literature.
    static Perm from_one_based(std::initializer_list<int> images);

    int degree() const noexcept { return n_; }
    int operator[](int i) const noexcept { return img_[static_cast<std::size_t>(i)]; }
    std::span<const std::uint8_t> images() const noexcept { return {img_.data(), n_}; }
    bool is_identity() const noexcept;

    friend bool operator==(const Perm&, const Perm&) = default;
    friend std::strong_ordering operator<=>(const Perm&, const Perm&) = default;

private:
    friend Perm compose(const Perm& p, const Perm& q);
    friend Perm inverse(const Perm& p);

    std::uint8_t n_ = 1;
    std::array<std::uint8_t, kMaxDegree> img_{};
};

/// Left-to-right product: compose(p, q)(i) = q(p(i)). Route concatenation
/// "traverse p, then q" is this product, and every product PxQy in the
/// library uses it.
Perm compose(const Perm& p, const Perm& q);

template <typename... Rest>
Perm compose(const Perm& p, const Perm& q, const Rest&... rest) {
    return compose(compose(p, q), rest...);
}

Perm inverse(const Perm& p);

/// 0 for even permutations, 1 for odd.
int parity(const Perm& p);

/// Number of cycles including fixed points (the "size" of p).
int cycle_count(const Perm& p);

/// Single cycle through every point.
bool is_cyclic(const Perm& p);

/// Cycle lengths, ascending, fixed points included.
std::vector<int> cycle_type(const Perm& p);

/// Cycles as 0-based point lists, each starting at its smallest point,
/// ordered by that point. Fixed points are included as 1-cycles.
std::vector<std::vector<int>> cycles(const Perm& p);

/// Parses "I", "()" or a product of disjoint cycles such as "(1 4)(2,3)".
Perm parse_cycles(std::string_view text, int n);

/// Canonical text: smallest element first in each cycle, cycles ordered by
/// smallest element, fixed points omitted, identity printed as "I".
std::string format_cycles(const Perm& p);

std::uint64_t factorial(int n);

/// Position of p among all permutations of its degree in lexicographic
/// order of image sequences (Lehmer code).
std::uint64_t rank(const Perm& p);
Perm unrank(int n, std::uint64_t r);

/// Every element of C_n (single n-cycles), in lexicographic order.
std::vector<Perm> cyclic_permutations(int n);

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};

} // namespace twodd
