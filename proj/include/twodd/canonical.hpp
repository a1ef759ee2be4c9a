#pragma once

#include "twodd/digraph.hpp"

#include <cstdint>
#include <string>

namespace twodd {

/// Isomorphism-invariant code of a 2-digraph; boundary route labels are
/// ignored. automorphism_count counts arc permutations preserving incidence
/// (a doubled arc contributes a factor of 2).
struct CanonicalForm {
    std::string code;
    std::uint64_t automorphism_count = 1;

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.code == b.code; }
};

CanonicalForm canonical_form(const Digraph& g);

/// Lower-case hex of the code, for index files.
std::string to_hex(const std::string& code);

/// Exhaustive search over vertex bijections, pruned on partial arc counts;
/// for testing on graphs of at most 16 vertices.
bool isomorphic_brute_force(const Digraph& a, const Digraph& b);

} // namespace twodd
