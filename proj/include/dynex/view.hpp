#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dynex/agents.hpp"
#include "dynex/graph.hpp"

namespace dynex {

/// The per-port observation of a 1-hop view: either the resident id set of
/// the neighbor, or a hole marker. Residents mix active and inactive agents;
/// the observer cannot tell them apart.
struct PortObservation {
    int port = 0;
    bool hole = false;
    std::vector<AgentId> ids;  // empty iff hole
};

struct LocalView {
    std::vector<AgentId> here;  // full resident set at the agent's node
    std::vector<PortObservation> per_port;  // one entry per port, in port order
};

struct AgentInfo {
    AgentId id = 0;
    int p_est = 0;
    bool exp = false;
    std::optional<AgentId> src_id;
    bool phase = false;
};

struct Broadcast {
    AgentInfo info;
    LocalView view;
};

/// 1-hop view collection for one active agent.
Broadcast phase1_collect(const Snapshot& s, const Configuration& c, const AgentState& agent);

/// The map reconstructed from one round's broadcasts. Active-occupied nodes
/// are labeled by their minimum active agent id.
struct ReconstructedMap {
    struct Node {
        AgentId label = 0;                   // minimum active agent id
        std::vector<AgentId> ids;            // full resident set
        std::vector<AgentId> active_ids;     // broadcasting residents
        std::vector<int> hole_ports;         // ports leading to holes
        // port -> resident ids of an inactive-only neighbor
        std::vector<std::pair<int, std::vector<AgentId>>> inactive_ports;
    };
    struct Edge {
        AgentId a, b;        // node labels
        int port_at_a, port_at_b;
    };
    std::vector<Node> nodes;                          // sorted by label
    std::vector<Edge> edges;                          // a < b, sorted
    std::vector<std::vector<AgentId>> inactive_only;  // distinct id sets w_j, sorted
    long observed_inactive = 0;  // the X scalar
    int max_p_est = 0;           // the Y scalar
    int tau = 0;                 // |inactive_only|

    const Node* find(AgentId label) const;
    const Node* node_of_agent(AgentId id) const;  // by residency
    std::vector<AgentId> neighbors(AgentId label) const;
    /// Connected component (set of labels) containing `label`.
    std::set<AgentId> component(AgentId label) const;
    nlohmann::json digest() const;
};

/// Builds the map from all broadcasts of one round. Throws std::runtime_error
/// ("corrupt broadcast set") if an active-active edge appears in only one
/// direction, which cannot happen under a conforming engine.
ReconstructedMap phase2_reconstruct(const std::vector<Broadcast>& broadcasts);

/// Brute-force connected components of the subgraph induced by nodes hosting
/// at least one active agent. Test oracle for phase2_reconstruct.
std::vector<std::set<NodeId>> cca_oracle(const Snapshot& s, const Configuration& c,
                                         const std::set<AgentId>& active);

/// Among all shortest src->dst paths in the map, the one minimal under
/// element-wise comparison of node-label sequences. Throws
/// std::invalid_argument("no path") for a disconnected pair.
std::vector<AgentId> lex_shortest_path(const ReconstructedMap& m, AgentId src, AgentId dst);

/// p-estimate update: max of observed inactive count and broadcast maximum.
int update_p(const AgentState& agent, const ReconstructedMap& m);

}  // namespace dynex
