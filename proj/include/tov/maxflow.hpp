#pragma once

#include <vector>

#include "tov/bitset.hpp"

namespace tov {

// Capacitated digraph with designated source and sink. Capacities are real
// (probability masses); infinity is allowed for uncuttable arcs.
class FlowNetwork {
  public:
    struct Arc {
        int from;
        int to;
        double capacity;
    };

    FlowNetwork(int node_count, int source, int sink);

    // Returns the arc index, used to read back flow from FlowResult.
    int add_arc(int from, int to, double capacity);

    int node_count() const { return node_count_; }
    int source() const { return source_; }
    int sink() const { return sink_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

  private:
    int node_count_;
    int source_;
    int sink_;
    std::vector<Arc> arcs_;
};

struct FlowResult {
    double value = 0.0;
    std::vector<double> arc_flow;  // parallel to FlowNetwork::arcs()
    Bitset min_cut;                // source-side node set, certifies optimality
};

// Exact max flow by shortest augmenting paths (BFS). The returned min cut's
// capacity matches the flow value within 1e-9, which the solver asserts.
FlowResult max_flow(const FlowNetwork& net);

}  // namespace tov
