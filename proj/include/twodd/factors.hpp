#pragma once

#include "twodd/digraph.hpp"
#include "twodd/permset.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace twodd {

inline constexpr int kDefaultMaxFactorBits = 24;
inline constexpr int kHardMaxFactorBits = 40;

/// A factor: one half of every AC. Bit k of `selection` set means AC k
/// contributes its backward half.
struct Factor {
    std::uint64_t selection = 0;
    std::vector<std::vector<int>> cycles;
    std::vector<std::vector<int>> paths; // entry ... exit
    int index() const noexcept { return static_cast<int>(cycles.size()); }
    bool is_open() const noexcept { return cycles.empty(); }
};

/// Precomputed AC halves of a graph for fast per-selection work. The graph
/// must outlive the engine.
class FactorEngine {
public:
    explicit FactorEngine(const Digraph& g, int max_bits = kDefaultMaxFactorBits);

    const Digraph& graph() const noexcept { return *g_; }
    const AcDecomposition& decomposition() const noexcept { return dec_; }
    int ac_count() const noexcept { return dec_.size(); }
    std::uint64_t factor_count() const noexcept { return std::uint64_t{1} << dec_.size(); }

    /// Per-thread working storage.
    struct Scratch {
        std::vector<int> succ;
        std::vector<std::uint32_t> stamp;
        std::uint32_t epoch = 0;
    };
    Scratch make_scratch() const;

    /// Fills scratch.succ for the selection (-1 at exits).
    void load(std::uint64_t selection, Scratch& s) const;
    /// Cycle count of the factor.
    int index(std::uint64_t selection, Scratch& s) const;
    /// Route under the labeling when the factor is open.
    std::optional<Perm> route(std::uint64_t selection, const RouteLabeling& labels, Scratch& s) const;
    Factor factor(std::uint64_t selection) const;

private:
    const Digraph* g_;
    AcDecomposition dec_;
    std::vector<std::vector<Arc>> fwd_;
    std::vector<std::vector<Arc>> bwd_;
    std::vector<int> entries_;
};

/// Calls fn for every factor in selection order. Throws ResourceError when
/// the AC count exceeds max_bits.
void for_each_factor(const Digraph& g, const std::function<void(const Factor&)>& fn,
                     int max_bits = kDefaultMaxFactorBits);
std::vector<Factor> enumerate_factors(const Digraph& g, int max_bits = kDefaultMaxFactorBits);

int graph_index(const Digraph& g, int max_bits = kDefaultMaxFactorBits);
bool is_open(const Digraph& g, int max_bits = kDefaultMaxFactorBits);

/// Lowest-selection factor of index 1 on a 2-dd, if any.
std::optional<Factor> hamiltonian_witness(const Digraph& g, int max_bits = kDefaultMaxFactorBits);
bool is_hamiltonian(const Digraph& g, int max_bits = kDefaultMaxFactorBits);

struct RouteSet {
    RouteLabeling labeling;
    PermSet routes{1};
};

/// Distinct routes of the open factors. Throws PreconditionError when the
/// graph has no boundary or no open factor.
RouteSet open_routes(const Digraph& g, const RouteLabeling& labels, int max_bits = kDefaultMaxFactorBits);
RouteSet open_routes(const Digraph& g, int max_bits = kDefaultMaxFactorBits);

/// Relabels exits so that the route of the lowest-selection open factor is I.
RouteLabeling normalize_labeling(const Digraph& g, const RouteLabeling& labels,
                                 int max_bits = kDefaultMaxFactorBits);

enum class ParityFamily { Odd, Even, Neither };
std::string to_string(ParityFamily f);

ParityFamily classify_parity_family(const Digraph& g, int max_bits = kDefaultMaxFactorBits);

/// Decides Hamiltonicity of spliced_graph(f, fp, m) from the open route sets
/// of the two sides.
bool hamiltonicity_via_routes(const Digraph& f, const Digraph& fp, const SpliceMap& m,
                              int max_bits = kDefaultMaxFactorBits);

/// Serial versions, used as oracles and benchmark baselines.
namespace reference {

int graph_index(const Digraph& g, int max_bits = kDefaultMaxFactorBits);
std::optional<Factor> hamiltonian_witness(const Digraph& g, int max_bits = kDefaultMaxFactorBits);
ParityFamily classify_parity_family(const Digraph& g, int max_bits = kDefaultMaxFactorBits);
RouteSet open_routes(const Digraph& g, const RouteLabeling& labels, int max_bits = kDefaultMaxFactorBits);
/// Plain backtracking search for a directed Hamiltonian cycle, blind to the
/// AC structure.
bool hamiltonian_backtrack(const Digraph& g);

} // namespace reference

} // namespace twodd
