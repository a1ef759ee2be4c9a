#pragma once

#include "twodd/digraph.hpp"
#include "twodd/factors.hpp"
#include "twodd/permset.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twodd {

enum class Verdict { NonHamiltonian, Hamiltonian, Undecided };
std::string to_string(Verdict v);

enum class StepKind { EvenFamily, Disconnected, ClosedAc, Split, Residue, Replace, Collapse, BruteForce };
std::string to_string(StepKind k);

struct Certificate;

/// One step of a certificate. Which fields are meaningful depends on kind;
/// all vertex / AC ids refer to the graph current at that step.
struct Step {
    StepKind kind = StepKind::EvenFamily;
    std::vector<int> acs;            // ClosedAc: [ac]; Residue, Replace, Collapse: K
    std::vector<int> split_set;      // Split
    std::vector<Certificate> parts;  // Split: certificates of the spliced components
    std::optional<PermSet> routes_p; // Residue: complement side; Collapse: K side
    std::optional<PermSet> routes_q; // Residue: K side
    std::optional<PermSet> residue_p;
    bool boring = false;             // Residue settled by parity alone
    std::string replacement;         // Replace: library id
    std::optional<Perm> a;
    std::optional<Perm> b;
    std::optional<std::uint64_t> witness; // BruteForce: factor selection of index 1
};

struct Certificate {
    Verdict verdict = Verdict::Undecided;
    std::vector<Step> steps;
    std::string reason; // why the pipeline stopped undecided
};

struct CheckOptions {
    bool brute_force = true;
    bool reductions = true;
    int max_factor_bits = kDefaultMaxFactorBits;
    int max_residue_acs = 12;    // exhaustive K scan up to this many ACs
    int max_residue_degree = 9;  // largest boundary size handed to the residue kernel
    int max_split_depth = 4;
    int max_reduction_steps = 64;
};

/// EVEN_FAMILY when every factor has even index.
std::optional<Certificate> certify_even(const Digraph& g, const CheckOptions& opt = {});

/// An AC both of whose halves contain a directed cycle shorter than |V|:
/// every factor then contains a short cycle.
std::optional<Certificate> certify_closed_ac(const Digraph& g);

/// Decomposes at the first minimal split-set of size <= 2 and checks the
/// spliced components; decisive when a component is non-Hamiltonian or both
/// are Hamiltonian.
std::optional<Certificate> certify_split(const Digraph& g, const CheckOptions& opt = {});

/// Residue certificate across the boundary between the ACs in K and the
/// rest. Absent (with *why filled) when a side is disconnected, closed,
/// non-uniform or too large, or when the residue test does not apply.
std::optional<Certificate> certify_residue(const Digraph& g, const std::vector<int>& k, const CheckOptions& opt = {},
                                           std::string* why = nullptr);

/// Replaces the subgraph induced by K with repl. The splice is
/// Γ(K̄, repl, b, a) under the boundary labeling of sides_of_ac_subset and
/// the route labeling of repl. Requires E(repl) = a E(K) b for the excluded
/// sets of the two open route sets, which makes the result H-equivalent.
Digraph replace_subgraph(const Digraph& g, const std::vector<int>& k, const Digraph& repl, const Perm& a,
                         const Perm& b, const CheckOptions& opt = {});

/// Removes K when its side has exactly one open route rho, joining the
/// complement exit labelled j to the complement entry labelled rho(j).
Digraph collapse_unique_route(const Digraph& g, const std::vector<int>& k, const CheckOptions& opt = {});

/// Replacement graphs by id: "single_ac" (one clean 6-arc AC, 3 entries)
/// and "g1".."g4" (two clean 6-arc ACs, 4 entries).
const Digraph& replacement_graph(const std::string& id);
std::vector<std::string> replacement_ids();

/// One reduction applied by reduce_2ac / reduce_3ac.
struct Reduction {
    Digraph graph;
    Step step;
};

/// Looks for a 2-AC subgraph with s in {3,4} saturated vertices (all ACs
/// with 6 arcs) that can be collapsed or replaced by a single AC.
std::optional<Reduction> reduce_2ac(const Digraph& g, const CheckOptions& opt = {});
/// Same for 3-AC subgraphs with s in {5,...,8}; replacements are a single AC
/// or one of the 2-AC library graphs.
std::optional<Reduction> reduce_3ac(const Digraph& g, const CheckOptions& opt = {});

/// The full pipeline: validation, connectivity, closed ACs, even family,
/// split, reductions to a fixpoint, residue over AC subsets, brute force.
Certificate check(const Digraph& g, const CheckOptions& opt = {});

struct VerifyResult {
    bool ok = false;
    std::string message;
};

/// Replays every step from its recorded data using the serial reference
/// kernels.
VerifyResult verify(const Digraph& g, const Certificate& c, const CheckOptions& opt = {});

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

} // namespace twodd
