#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "snsim/cascade.hpp"
#include "snsim/graph.hpp"
#include "snsim/rng.hpp"

namespace snsim {

/// Brute-force closure of the diffusive process at p = 0: repeated
/// exhaustive passes over all non-adopters, activating any node whose
/// dual-neighbor share crosses the threshold, until a pass adds nothing.
/// Independent of the step engine by construction; returns the sorted
/// terminal adopter set.
std::vector<NodeId> fixed_point_oracle(const Graph& graph,
                                       const std::vector<NodeId>& seeds,
                                       double x2, double epsilon);

/// True iff run() at p = 0 and fixed_point_oracle agree on the terminal set.
bool oracle_compare(const Graph& graph, const std::vector<NodeId>& seeds,
                    double x2, double epsilon);

struct TheoremCheckParams {
    std::size_t trials = 100;
    std::uint32_t min_nodes = 50;
    std::uint32_t max_nodes = 200;
    double min_edge_prob = 0.01;
    double max_edge_prob = 0.05;
    double max_seed_fraction = 0.10;
    std::uint64_t rng_seed = 1;
};

struct TheoremReport {
    std::size_t trials_run = 0;
    std::vector<std::string> failures; // one description per counterexample

    bool all_passed() const { return failures.empty(); }
    std::string summary() const;
};

/// Random-graph check of the impossibility condition: samples Erdos-Renyi
/// graphs, seed sets and (epsilon, x2) pairs with epsilon >= x2 (equality
/// included), runs the engine at p = 0 and the oracle, and requires zero
/// diffusive adoptions everywhere. Any failure is an implementation bug.
TheoremReport verify_theorem1(const TheoremCheckParams& params);

struct SweepRow {
    double epsilon = 0.0;
    std::uint32_t replicate = 0;
    std::uint64_t seed = 0;          // derived rng seed for this replicate
    std::int64_t steps_to_50 = -1;   // -1: never reached
    std::int64_t steps_to_90 = -1;
    std::int64_t steps_to_full = -1;
    double terminal_fraction = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows; // ordered by (epsilon index, replicate)
};

/// Run the epsilon sweep: for each (epsilon, replicate) cell, replicate i
/// runs with seed mix_seed(base.rng_seed, i) -- the same seed across all
/// epsilon values, so comparisons along epsilon are paired.
SweepResult sweep_epsilon(const Graph& graph, const SimConfig& base_cfg,
                          const std::vector<double>& epsilons,
                          std::size_t replicates);

/// CSV columns: epsilon,replicate,seed,steps_to_50,steps_to_90,steps_to_full,terminal_fraction
void write_sweep_csv(const SweepResult& result, std::ostream& out);

/// G(n, q): each of the n(n-1)/2 possible edges present independently.
Graph make_erdos_renyi(std::uint32_t nodes, double edge_prob, Rng& rng);

/// Growing graph where each new node attaches edges_per_node edges to
/// existing nodes chosen proportionally to degree.
Graph make_preferential_attachment(std::uint32_t nodes,
                                   std::uint32_t edges_per_node, Rng& rng);

} // namespace snsim
