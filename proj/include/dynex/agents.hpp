#pragma once

#include <optional>
#include <vector>

#include "dynex/graph.hpp"

namespace dynex {

using AgentId = int;

/// Persistent per-agent variables plus the simulator-side location. Only the
/// five named variables are readable by the agent's own decision logic.
struct AgentState {
    AgentId id = 0;
    int p_est = 0;
    bool exp = false;
    std::optional<AgentId> src_id;  // absent encodes the unset source
    bool phase = false;
    NodeId location = 0;
};

/// Placement of all agents on nodes at a round boundary. Agent id lists are
/// kept sorted so serialized configurations are canonical.
struct Configuration {
    std::vector<std::vector<AgentId>> at;  // node -> sorted agent ids

    int n() const { return static_cast<int>(at.size()); }
    int k() const;
    std::vector<int> counts() const;
    std::vector<NodeId> holes() const;
    std::vector<NodeId> multinodes() const;

    static Configuration from_agents(int n, const std::vector<AgentState>& agents);
    nlohmann::json to_json() const;
};

/// Largest solvable deactivation budget for k agents on n nodes:
/// floor((k-1)/(n-2)) - 1. Requires n >= 3 and k >= n-1.
int deactivation_budget(int k, int n);

/// True iff node agent-counts form the multiset {p+1 x (n-2), 1, 0}.
bool is_cstar(const std::vector<int>& counts, int p);
bool is_cstar(const Configuration& c, int p);

}  // namespace dynex
