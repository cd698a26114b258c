#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dynex {

using NodeId = int;

/// One round's snapshot of the dynamic graph. `ports[v][q]` is the neighbor
/// reached from node v through port q, so the port labeling is implicit in
/// the ordering. Immutable after construction.
struct Snapshot {
    int n = 0;
    long round = 0;
    std::vector<std::vector<NodeId>> ports;

    int deg(NodeId v) const { return static_cast<int>(ports[v].size()); }

    /// Sorted unordered edge list {u,v} with u < v.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    nlohmann::json to_json() const;
    static Snapshot from_json(const nlohmann::json& j);
};

struct PortRef {
    NodeId node;
    int port;
};

struct ValidationReport {
    bool ok = true;
    std::string violation;  // "disconnected", "port bijection", ...
    std::string witness;
};

ValidationReport validate_snapshot(const Snapshot& s);

/// Neighbor reached from v through port q. Throws std::out_of_range for an
/// invalid port.
NodeId neighbor_via(const Snapshot& s, NodeId v, int q);

/// The port at u whose edge leads to v; inverse of neighbor_via on edges.
/// Throws std::invalid_argument if {u,v} is not an edge.
int port_toward(const Snapshot& s, NodeId u, NodeId v);

/// Connected snapshot: uniform random spanning tree plus independent extra
/// edges with probability `density`, port labels drawn as a fresh random
/// permutation per node. Pure function of (n, seed, density). Requires n >= 3.
Snapshot generate_snapshot(int n, std::uint64_t seed, double density, long round = 0);

/// Build a snapshot from an explicit edge list, assigning seeded random port
/// permutations. Used by the constructed adversaries.
Snapshot snapshot_from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                             std::uint64_t seed, long round = 0);

int diameter(const Snapshot& s);

/// Stable seed mixer so per-round streams are decorrelated but reproducible.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace dynex
