#include "tov/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "tov/errors.hpp"

namespace tov {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAugmentFloor = 1e-12;  // stop once paths carry only noise
constexpr double kDualityTol = 1e-9;
}  // namespace

FlowNetwork::FlowNetwork(int node_count, int source, int sink)
    : node_count_(node_count), source_(source), sink_(sink) {
    if (node_count < 2 || source < 0 || source >= node_count || sink < 0 ||
        sink >= node_count || source == sink)
        throw BadNetwork("invalid node count or terminals");
}

int FlowNetwork::add_arc(int from, int to, double capacity) {
    if (from < 0 || from >= node_count_ || to < 0 || to >= node_count_)
        throw BadNetwork("arc endpoint out of range");
    if (!(capacity >= 0.0))
        throw BadNetwork("negative or NaN arc capacity");
    arcs_.push_back({from, to, capacity});
    return static_cast<int>(arcs_.size()) - 1;
}

FlowResult max_flow(const FlowNetwork& net) {
    const int n = net.node_count();
    const auto& arcs = net.arcs();
    const int m = static_cast<int>(arcs.size());

    // Residual graph: forward edge 2k, reverse edge 2k+1.
    std::vector<double> residual(2 * static_cast<std::size_t>(m));
    std::vector<std::vector<int>> adj(n);
    for (int k = 0; k < m; ++k) {
        residual[2 * k] = arcs[k].capacity;
        residual[2 * k + 1] = 0.0;
        adj[arcs[k].from].push_back(2 * k);
        adj[arcs[k].to].push_back(2 * k + 1);
    }
    auto edge_head = [&](int e) { return (e & 1) ? arcs[e >> 1].from : arcs[e >> 1].to; };

    // Arcs at or below the augment floor count as saturated, both while
    // augmenting and when reading off the final cut; every accepted path then
    // carries more than noise and Edmonds-Karp termination is unaffected.
    double value = 0.0;
    std::vector<int> parent_edge(n);
    while (true) {
        std::fill(parent_edge.begin(), parent_edge.end(), -1);
        parent_edge[net.source()] = -2;
        std::queue<int> q;
        q.push(net.source());
        while (!q.empty() && parent_edge[net.sink()] == -1) {
            const int u = q.front();
            q.pop();
            for (int e : adj[u]) {
                const int v = edge_head(e);
                if (parent_edge[v] == -1 && residual[e] > kAugmentFloor) {
                    parent_edge[v] = e;
                    q.push(v);
                }
            }
        }
        if (parent_edge[net.sink()] == -1) break;

        double bottleneck = kInf;
        for (int v = net.sink(); v != net.source();) {
            const int e = parent_edge[v];
            bottleneck = std::min(bottleneck, residual[e]);
            v = (e & 1) ? arcs[e >> 1].to : arcs[e >> 1].from;
        }

        for (int v = net.sink(); v != net.source();) {
            const int e = parent_edge[v];
            residual[e] -= bottleneck;
            residual[e ^ 1] += bottleneck;
            v = (e & 1) ? arcs[e >> 1].to : arcs[e >> 1].from;
        }
        value += bottleneck;
    }

    // Source side of the final residual graph is a min cut.
    FlowResult result;
    result.min_cut = Bitset(static_cast<std::size_t>(n));
    {
        std::vector<char> vis(n, 0);
        std::queue<int> q;
        q.push(net.source());
        vis[net.source()] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            result.min_cut.set(u);
            for (int e : adj[u]) {
                const int v = edge_head(e);
                if (!vis[v] && residual[e] > kAugmentFloor) {
                    vis[v] = 1;
                    q.push(v);
                }
            }
        }
    }

    double cut_capacity = 0.0;
    for (int k = 0; k < m; ++k)
        if (result.min_cut.get(arcs[k].from) && !result.min_cut.get(arcs[k].to))
            cut_capacity += arcs[k].capacity;
    if (!(std::abs(cut_capacity - value) <= kDualityTol))
        throw AssertionFailure("max-flow duality gap " +
                               std::to_string(cut_capacity - value));

    result.value = value;
    result.arc_flow.resize(m);
    for (int k = 0; k < m; ++k) result.arc_flow[k] = residual[2 * k + 1];
    return result;
}

}  // namespace tov
