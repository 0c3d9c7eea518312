#include "snsim/cascade.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "snsim/util.hpp"

namespace snsim {

namespace {

void require_fraction(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0,1], got " +
                                    fmt_double(value));
}

// Threshold with the time span cancelled out: T2 > eps*(T1+T2) reduces to
// d2*x2 > eps*d, each side a single rounded product. Keeping it in this
// form makes traces bit-identical for every delta and preserves the
// impossibility bound even at eps == x2 with all neighbors dual.
bool crosses_threshold(std::uint32_t dual_neighbors, std::uint32_t degree,
                       double x2, double epsilon) {
    return static_cast<double>(dual_neighbors) * x2 >
           epsilon * static_cast<double>(degree);
}

} // namespace

void SimConfig::validate(std::size_t node_count) const {
    require_fraction(epsilon, "epsilon");
    require_fraction(x2, "x2");
    require_fraction(p, "p");
    if (!(delta > 0.0))
        throw std::invalid_argument("delta must be positive, got " + fmt_double(delta));
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    for (NodeId seed : initial_seeds)
        if (seed >= node_count)
            throw std::invalid_argument("seed node " + std::to_string(seed) +
                                        " out of range (n=" +
                                        std::to_string(node_count) + ")");
}

ExposureTimes exposure_times(const Graph& graph,
                             const std::vector<NodeState>& states,
                             NodeId node, const SimConfig& cfg) {
    auto part = neighbor_partition(graph, states, node);
    const double total = cfg.delta * static_cast<double>(part.degree);
    double on_new =
        cfg.delta * (static_cast<double>(part.dual_count) * cfg.x2);
    double on_old = total - on_new;
    on_new = total - on_old; // Sterbenz: the sum now reproduces total exactly
    return {on_old, on_new};
}

StepOutcome step(const Graph& graph, const std::vector<NodeState>& states,
                 const SimConfig& cfg, Rng& rng) {
    const std::size_t n = graph.node_count();
    if (states.size() != n)
        throw std::invalid_argument("state vector length does not match node count");

    StepOutcome out;
    out.states = states;

    // (a) diffusive pass, evaluated against the input states
    for (NodeId u = 0; u < n; ++u) {
        if (states[u] != NodeState::Exclusive) continue;
        auto part = neighbor_partition(graph, states, u);
        if (crosses_threshold(part.dual_count, part.degree, cfg.x2, cfg.epsilon)) {
            out.states[u] = NodeState::Dual;
            ++out.new_diffusive;
        }
    }

    // (b) one Bernoulli(p) draw per remaining exclusive node, ascending id
    for (NodeId u = 0; u < n; ++u) {
        if (out.states[u] != NodeState::Exclusive) continue;
        if (rng.bernoulli(cfg.p)) {
            out.states[u] = NodeState::Dual;
            ++out.new_nondiffusive;
        }
    }
    return out;
}

CascadeTrace run(const Graph& graph, const SimConfig& cfg) {
    const std::size_t n = graph.node_count();
    cfg.validate(n);

    CascadeTrace trace;
    trace.node_count = n;

    std::vector<NodeState> states(n, NodeState::Exclusive);
    for (NodeId seed : cfg.initial_seeds) states[seed] = NodeState::Dual;
    std::size_t adopters = static_cast<std::size_t>(
        std::count(states.begin(), states.end(), NodeState::Dual));

    trace.rows.push_back({0, adopters, 0, 0});
    Rng rng(cfg.rng_seed);

    if (adopters < n) {
        for (std::uint32_t day = 1; day <= cfg.horizon; ++day) {
            StepOutcome out = step(graph, states, cfg, rng);
            const std::size_t added = out.new_diffusive + out.new_nondiffusive;
            if (cfg.p == 0.0 && added == 0) break; // deterministic fixed point
            adopters += added;
            trace.rows.push_back({day, adopters, out.new_diffusive,
                                  out.new_nondiffusive});
            states = std::move(out.states);
            if (adopters == n) break;
        }
    }
    trace.final_states = std::move(states);
    return trace;
}

double CascadeTrace::fraction_at(std::size_t row_index) const {
    if (node_count == 0) return 0.0;
    return static_cast<double>(rows.at(row_index).adopters_total) /
           static_cast<double>(node_count);
}

std::vector<NodeId> terminal_dual_set(const CascadeTrace& trace) {
    std::vector<NodeId> dual;
    for (NodeId u = 0; u < trace.final_states.size(); ++u)
        if (trace.final_states[u] == NodeState::Dual) dual.push_back(u);
    return dual;
}

void write_trace_csv(const CascadeTrace& trace, std::ostream& out) {
    out << "step,adopters_total,adopters_frac,new_diffusive,new_nondiffusive\n";
    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
        const TraceRow& row = trace.rows[i];
        out << row.step << ',' << row.adopters_total << ','
            << fmt_double(trace.fraction_at(i)) << ',' << row.new_diffusive << ','
            << row.new_nondiffusive << '\n';
    }
}

} // namespace snsim
