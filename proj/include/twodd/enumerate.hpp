#pragma once

#include "twodd/canonical.hpp"
#include "twodd/digraph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace twodd {

/// A family of 2-digraphs whose ACs all have arcs_per_ac arcs.
struct FamilySpec {
    int arcs_per_ac = 6;
    int ac_count = 1;
    bool clean = true;
    bool require_connected = false;
    /// Exact number of saturated vertices; ignored when saturated_only.
    std::optional<int> saturated_count;
    /// Only 2-dds (every vertex saturated).
    bool saturated_only = false;
    /// Same-AC identifications that turn an arc into a loop (dirty families only).
    bool allow_loops = false;
    /// Named predicates, all of which must hold; see filter_names().
    std::vector<std::string> filters;
};

/// odd, even, open, non_2_splittable, no_2ac_s_gt_2, hamiltonian, non_hamiltonian.
/// odd / even mean the factor-index parity for 2-dds and AC parity otherwise.
const std::vector<std::string>& filter_names();

/// Throws PreconditionError on a malformed spec or unknown filter name.
void validate_spec(const FamilySpec& spec);

bool passes_filter(const Digraph& g, const std::string& name);

/// Some pair of ACs has more than two vertices with both in- and out-AC in the pair.
bool has_2ac_subgraph_with_s_gt_2(const Digraph& g);

struct GenerateOptions {
    /// Required for 2-dd families with more than 5 ACs and anything beyond 6.
    bool long_run = false;
    /// Worker threads; 0 keeps the OpenMP default.
    int jobs = 0;
    /// Resource cap on the number of classes kept at one level.
    std::size_t max_level_size = 4'000'000;
};

struct Generated {
    Digraph graph;
    CanonicalForm canon;
};

/// Every member of the family exactly once up to isomorphism, sorted by
/// canonical code. Throws ResourceError when a cap is exceeded.
std::vector<Generated> generate(const FamilySpec& spec, const GenerateOptions& opt = {});

/// Isomorphism classes of the partial identification states after `depth`
/// identifications, in generation order. Used to split long runs into shards.
struct Frontier {
    int depth = 0;
    std::vector<std::vector<int>> states; // exit slot -> entry slot or -1
};

Frontier generation_frontier(const FamilySpec& spec, int depth, const GenerateOptions& opt = {});

/// Members reachable from the frontier states with index % shard_count == shard.
std::vector<Generated> generate_shard(const FamilySpec& spec, const Frontier& frontier, int shard, int shard_count,
                                      const GenerateOptions& opt = {});

/// Union of shard outputs with duplicates removed, sorted by canonical code.
std::vector<Generated> merge_generated(std::vector<std::vector<Generated>> parts);

/// Uniformly random identification of every exit with an allowed entry
/// (a 2-dd of the family's AC profile before filters); retries dead ends.
Digraph random_member(const FamilySpec& spec, std::mt19937_64& rng);

/// Archive: records "# graph <i> <hex code>" followed by the graph text.
std::string format_archive(const std::vector<Generated>& graphs);
std::vector<Digraph> parse_archive(const std::string& text);
/// Index: "<i>\t<hex code>\t<automorphism count>" per line.
std::string format_index(const std::vector<Generated>& graphs);

struct GraphAnalysis {
    bool connected = false;
    bool clean = false;
    std::string parity;     // ODD / EVEN / NEITHER, n/a for boundary graphs
    std::string splittable; // yes / no / n/a
    int open_route_count = -1;
    int residue_size = -1;  // -1 when closed, boundary-free or above the degree cap
    std::string certification; // check() verdict without brute force, 2-dds only
    std::string hamiltonian;   // yes / no / n/a
};

/// Analyses: connected, clean, parity, splittable, routes, residue, certify, hamiltonian.
const std::vector<std::string>& analysis_names();

GraphAnalysis analyse(const Digraph& g, const std::vector<std::string>& analyses);

struct CensusTable {
    std::vector<std::string> columns;
    std::map<std::vector<std::string>, std::uint64_t> cells;
    std::uint64_t total = 0;

    std::string to_tsv() const;
    std::string to_json() const;
};

CensusTable census(const std::vector<Generated>& graphs, const std::vector<std::string>& analyses);

} // namespace twodd
