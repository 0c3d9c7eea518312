#include "snsim/analysis.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "snsim/util.hpp"

namespace snsim {

std::vector<NodeId> fixed_point_oracle(const Graph& graph,
                                       const std::vector<NodeId>& seeds,
                                       double x2, double epsilon) {
    const std::size_t n = graph.node_count();
    std::vector<char> dual(n, 0);
    for (NodeId seed : seeds) {
        if (seed >= n)
            throw std::invalid_argument("seed node " + std::to_string(seed) +
                                        " out of range");
        dual[seed] = 1;
    }

    // Saturate by exhaustive passes, activating in place; the activation
    // rule is monotone in the dual set, so any order reaches the same
    // closure. Deliberately re-counts neighbors itself instead of calling
    // into the cascade engine.
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId u = 0; u < n; ++u) {
            if (dual[u]) continue;
            auto nbrs = graph.neighbors(u);
            std::uint32_t dual_neighbors = 0;
            for (NodeId v : nbrs) dual_neighbors += dual[v] ? 1u : 0u;
            if (static_cast<double>(dual_neighbors) * x2 >
                epsilon * static_cast<double>(nbrs.size())) {
                dual[u] = 1;
                changed = true;
            }
        }
    }

    std::vector<NodeId> result;
    for (NodeId u = 0; u < n; ++u)
        if (dual[u]) result.push_back(u);
    return result;
}

bool oracle_compare(const Graph& graph, const std::vector<NodeId>& seeds,
                    double x2, double epsilon) {
    SimConfig cfg;
    cfg.epsilon = epsilon;
    cfg.x2 = x2;
    cfg.p = 0.0;
    cfg.horizon = static_cast<std::uint32_t>(graph.node_count()) + 1;
    cfg.initial_seeds = seeds;
    CascadeTrace trace = run(graph, cfg);
    return terminal_dual_set(trace) == fixed_point_oracle(graph, seeds, x2, epsilon);
}

std::string TheoremReport::summary() const {
    std::ostringstream out;
    out << "theorem check: " << (trials_run - failures.size()) << "/" << trials_run
        << " trials passed";
    if (!all_passed()) {
        out << "\ncounterexamples (implementation bugs):";
        for (const auto& f : failures) out << "\n  " << f;
    }
    return out.str();
}

TheoremReport verify_theorem1(const TheoremCheckParams& params) {
    if (params.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (params.min_nodes > params.max_nodes || params.min_edge_prob > params.max_edge_prob)
        throw std::invalid_argument("empty parameter range");

    TheoremReport report;
    Rng rng(params.rng_seed);
    for (std::size_t trial = 0; trial < params.trials; ++trial) {
        const std::uint32_t n =
            params.min_nodes +
            static_cast<std::uint32_t>(rng.next_below(params.max_nodes - params.min_nodes + 1));
        const double q = params.min_edge_prob +
                         rng.next_unit() * (params.max_edge_prob - params.min_edge_prob);
        Graph graph = make_erdos_renyi(n, q, rng);

        const double x2 = rng.next_unit();
        // every fourth trial sits exactly on the boundary eps == x2
        const double epsilon =
            (trial % 4 == 0) ? x2 : x2 + rng.next_unit() * (1.0 - x2);

        const std::size_t max_seeds =
            static_cast<std::size_t>(params.max_seed_fraction * static_cast<double>(n));
        std::vector<NodeId> seeds;
        if (max_seeds > 0) {
            std::size_t want = rng.next_below(max_seeds + 1);
            std::vector<char> picked(n, 0);
            while (seeds.size() < want) {
                NodeId u = static_cast<NodeId>(rng.next_below(n));
                if (!picked[u]) {
                    picked[u] = 1;
                    seeds.push_back(u);
                }
            }
            std::sort(seeds.begin(), seeds.end());
        }

        SimConfig cfg;
        cfg.epsilon = epsilon;
        cfg.x2 = x2;
        cfg.p = 0.0;
        cfg.horizon = n + 1;
        cfg.initial_seeds = seeds;
        CascadeTrace trace = run(graph, cfg);

        bool ok = true;
        for (const TraceRow& row : trace.rows)
            if (row.new_diffusive != 0) ok = false;
        if (terminal_dual_set(trace) != seeds) ok = false;
        if (fixed_point_oracle(graph, seeds, x2, epsilon) != seeds) ok = false;

        if (!ok) {
            report.failures.push_back(
                "trial " + std::to_string(trial) + ": n=" + std::to_string(n) +
                " q=" + fmt_double(q) + " eps=" + fmt_double(epsilon) +
                " x2=" + fmt_double(x2) + " seeds=" + std::to_string(seeds.size()) +
                " produced a diffusive adoption despite eps >= x2");
        }
        ++report.trials_run;
    }
    return report;
}

namespace {

std::int64_t first_crossing(const CascadeTrace& trace, std::size_t num, std::size_t den) {
    // first step with adopters_total * den >= node_count * num
    for (const TraceRow& row : trace.rows)
        if (row.adopters_total * den >= trace.node_count * num)
            return static_cast<std::int64_t>(row.step);
    return -1;
}

} // namespace

SweepResult sweep_epsilon(const Graph& graph, const SimConfig& base_cfg,
                          const std::vector<double>& epsilons,
                          std::size_t replicates) {
    if (epsilons.empty()) throw std::invalid_argument("epsilons must be non-empty");
    if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");

    SweepResult result;
    result.rows.reserve(epsilons.size() * replicates);
    for (double epsilon : epsilons) {
        for (std::size_t rep = 0; rep < replicates; ++rep) {
            SimConfig cfg = base_cfg;
            cfg.epsilon = epsilon;
            cfg.rng_seed = mix_seed(base_cfg.rng_seed, rep);
            CascadeTrace trace = run(graph, cfg);

            SweepRow row;
            row.epsilon = epsilon;
            row.replicate = static_cast<std::uint32_t>(rep);
            row.seed = cfg.rng_seed;
            row.steps_to_50 = first_crossing(trace, 1, 2);
            row.steps_to_90 = first_crossing(trace, 9, 10);
            row.steps_to_full = first_crossing(trace, 1, 1);
            row.terminal_fraction = trace.terminal_fraction();
            result.rows.push_back(row);
        }
    }
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "epsilon,replicate,seed,steps_to_50,steps_to_90,steps_to_full,"
           "terminal_fraction\n";
    for (const SweepRow& row : result.rows) {
        out << fmt_double(row.epsilon) << ',' << row.replicate << ',' << row.seed
            << ',' << row.steps_to_50 << ',' << row.steps_to_90 << ','
            << row.steps_to_full << ',' << fmt_double(row.terminal_fraction) << '\n';
    }
}

Graph make_erdos_renyi(std::uint32_t nodes, double edge_prob, Rng& rng) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < nodes; ++u)
        for (NodeId v = u + 1; v < nodes; ++v)
            if (rng.bernoulli(edge_prob)) edges.emplace_back(u, v);
    return Graph::from_edges(nodes, edges);
}

Graph make_preferential_attachment(std::uint32_t nodes,
                                   std::uint32_t edges_per_node, Rng& rng) {
    if (edges_per_node < 1)
        throw std::invalid_argument("edges_per_node must be at least 1");
    const std::uint32_t core = edges_per_node + 1;
    if (nodes < core)
        throw std::invalid_argument("need at least edges_per_node + 1 nodes");

    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<NodeId> endpoints; // one entry per edge endpoint, degree-weighted
    for (NodeId u = 0; u < core; ++u) {
        for (NodeId v = u + 1; v < core; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    for (NodeId u = core; u < nodes; ++u) {
        std::vector<NodeId> targets;
        while (targets.size() < edges_per_node) {
            NodeId candidate = endpoints[rng.next_below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), candidate) == targets.end())
                targets.push_back(candidate);
        }
        for (NodeId t : targets) {
            edges.emplace_back(u, t);
            endpoints.push_back(u);
            endpoints.push_back(t);
        }
    }
    return Graph::from_edges(nodes, edges);
}

} // namespace snsim
