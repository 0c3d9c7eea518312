#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "snsim/graph.hpp"
#include "snsim/rng.hpp"

namespace snsim {

/// All parameters of one simulation run. epsilon is the attachment factor
/// of the old site, x2 the novelty share of the new one, p the per-day
/// spontaneous adoption probability, delta the daily time span.
struct SimConfig {
    double epsilon = 0.0;
    double x2 = 0.0;
    double p = 0.001;
    double delta = 1.0;
    std::uint32_t horizon = 10000;
    std::vector<NodeId> initial_seeds{};
    std::uint64_t rng_seed = 0;

    /// Throws std::invalid_argument on out-of-range parameters or seed ids.
    void validate(std::size_t node_count) const;
};

struct ExposureTimes {
    double on_old = 0.0; // T1: neighbor time remaining on the old site
    double on_new = 0.0; // T2: neighbor time drawn to the new site
};

/// Net time the node's neighbors spend on each site, given current states:
/// on_new = delta*d2*x2, on_old = delta*d - on_new. The pair is adjusted in
/// the last bit so that on_old + on_new == delta*d holds exactly.
ExposureTimes exposure_times(const Graph& graph,
                             const std::vector<NodeState>& states,
                             NodeId node, const SimConfig& cfg);

/// Threshold rule for adopting the new site: strictly more than an
/// epsilon-fraction of neighbor time has moved there.
inline bool diffusive_condition(double on_old, double on_new, double epsilon) {
    return on_new > epsilon * (on_old + on_new);
}

/// False iff epsilon >= x2, in which case no graph admits a diffusive
/// shift; true only means the shift is not ruled out.
inline bool can_diffusive_shift(double epsilon, double x2) {
    return epsilon < x2;
}

struct StepOutcome {
    std::vector<NodeState> states;
    std::size_t new_diffusive = 0;
    std::size_t new_nondiffusive = 0;
};

/// One synchronous day: threshold evaluation for every exclusive node
/// against the input states, then one Bernoulli(p) draw per remaining
/// exclusive node in ascending id order, then all adoptions applied at
/// once. Adoption is absorbing.
StepOutcome step(const Graph& graph, const std::vector<NodeState>& states,
                 const SimConfig& cfg, Rng& rng);

struct TraceRow {
    std::uint32_t step = 0;
    std::size_t adopters_total = 0;
    std::size_t new_diffusive = 0;
    std::size_t new_nondiffusive = 0;
};

/// Per-day adoption record of a run. rows[0] is the initial state; one row
/// per executed day after that. adopters_total is non-decreasing.
struct CascadeTrace {
    std::size_t node_count = 0;
    std::vector<TraceRow> rows;
    std::vector<NodeState> final_states;

    std::uint32_t terminal_step() const { return rows.back().step; }
    std::size_t terminal_adopters() const { return rows.back().adopters_total; }
    double fraction_at(std::size_t row_index) const;
    double terminal_fraction() const { return fraction_at(rows.size() - 1); }
};

/// Run the process from cfg.initial_seeds until everyone adopted, the
/// horizon is reached, or (at p = 0) a day passes with no adoption.
/// Deterministic function of (graph, cfg).
CascadeTrace run(const Graph& graph, const SimConfig& cfg);

/// Sorted ids of the Dual nodes at the end of a run.
std::vector<NodeId> terminal_dual_set(const CascadeTrace& trace);

/// CSV columns: step,adopters_total,adopters_frac,new_diffusive,new_nondiffusive
void write_trace_csv(const CascadeTrace& trace, std::ostream& out);

} // namespace snsim
