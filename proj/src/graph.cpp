#include "dynex/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace dynex {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finalizer over seed ^ rotated salt
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<std::pair<NodeId, NodeId>> Snapshot::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId v = 0; v < n; ++v)
        for (NodeId u : ports[v])
            if (v < u) out.emplace_back(v, u);
    std::sort(out.begin(), out.end());
    return out;
}

nlohmann::json Snapshot::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["round"] = round;
    j["edges"] = edges();
    j["ports"] = ports;
    return j;
}

Snapshot Snapshot::from_json(const nlohmann::json& j) {
    Snapshot s;
    s.n = j.at("n").get<int>();
    s.round = j.at("round").get<long>();
    s.ports = j.at("ports").get<std::vector<std::vector<NodeId>>>();
    return s;
}

ValidationReport validate_snapshot(const Snapshot& s) {
    auto fail = [](std::string what, std::string witness) {
        return ValidationReport{false, std::move(what), std::move(witness)};
    };
    if (s.n < 1 || static_cast<int>(s.ports.size()) != s.n)
        return fail("shape", "ports array size != n");
    for (NodeId v = 0; v < s.n; ++v) {
        std::set<NodeId> seen;
        for (NodeId u : s.ports[v]) {
            if (u < 0 || u >= s.n) return fail("range", "node " + std::to_string(v) + " references " + std::to_string(u));
            if (u == v) return fail("self-loop", "node " + std::to_string(v));
            if (!seen.insert(u).second)
                return fail("parallel edge", "nodes {" + std::to_string(v) + "," + std::to_string(u) + "}");
        }
    }
    // the ports-as-index encoding makes labels a permutation by construction,
    // but a snapshot deserialized from elsewhere can still break symmetry
    for (NodeId v = 0; v < s.n; ++v)
        for (NodeId u : s.ports[v])
            if (std::find(s.ports[u].begin(), s.ports[u].end(), v) == s.ports[u].end())
                return fail("port bijection",
                            "edge {" + std::to_string(v) + "," + std::to_string(u) + "} one-sided");
    // connectivity
    std::vector<char> vis(s.n, 0);
    std::queue<NodeId> q;
    q.push(0);
    vis[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (NodeId u : s.ports[v])
            if (!vis[u]) {
                vis[u] = 1;
                ++reached;
                q.push(u);
            }
    }
    if (reached != s.n) {
        NodeId w = 0;
        while (vis[w]) ++w;
        return fail("disconnected", "node " + std::to_string(w) + " unreachable from 0");
    }
    return {};
}

NodeId neighbor_via(const Snapshot& s, NodeId v, int q) {
    if (v < 0 || v >= s.n) throw std::out_of_range("invalid node");
    if (q < 0 || q >= s.deg(v)) throw std::out_of_range("invalid port");
    return s.ports[v][q];
}

int port_toward(const Snapshot& s, NodeId u, NodeId v) {
    if (u < 0 || u >= s.n) throw std::out_of_range("invalid node");
    auto& pu = s.ports[u];
    auto it = std::find(pu.begin(), pu.end(), v);
    if (it == pu.end()) throw std::invalid_argument("not adjacent");
    return static_cast<int>(it - pu.begin());
}

namespace {

// assign each node's ports by a seeded random permutation of its neighbor list
std::vector<std::vector<NodeId>> assign_ports(int n, const std::vector<std::vector<NodeId>>& adj,
                                              std::mt19937_64& rng) {
    std::vector<std::vector<NodeId>> ports(n);
    for (NodeId v = 0; v < n; ++v) {
        ports[v] = adj[v];
        std::sort(ports[v].begin(), ports[v].end());
        std::shuffle(ports[v].begin(), ports[v].end(), rng);
    }
    return ports;
}

}  // namespace

Snapshot generate_snapshot(int n, std::uint64_t seed, double density, long round) {
    if (n < 3) throw std::invalid_argument("model requires n >= 3");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<NodeId>> adj(n);
    auto add = [&](NodeId a, NodeId b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    // uniform spanning tree via a random Pruefer sequence
    if (n == 3) {
        std::uniform_int_distribution<int> d(0, 2);
        int c = d(rng);
        for (int v = 0; v < 3; ++v)
            if (v != c) add(c, v);
    } else {
        std::uniform_int_distribution<int> d(0, n - 1);
        std::vector<int> pruefer(n - 2);
        for (auto& x : pruefer) x = d(rng);
        std::vector<int> degree(n, 1);
        for (int x : pruefer) ++degree[x];
        std::set<int> leaves;
        for (int v = 0; v < n; ++v)
            if (degree[v] == 1) leaves.insert(v);
        for (int x : pruefer) {
            int leaf = *leaves.begin();
            leaves.erase(leaves.begin());
            add(leaf, x);
            if (--degree[x] == 1) leaves.insert(x);
        }
        int a = *leaves.begin(), b = *std::next(leaves.begin());
        add(a, b);
    }
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (NodeId v = 0; v < n; ++v)
        for (NodeId u = v + 1; u < n; ++u) {
            bool tree_edge = std::find(adj[v].begin(), adj[v].end(), u) != adj[v].end();
            double roll = u01(rng);  // always drawn, to keep the stream position stable
            if (!tree_edge && (density >= 1.0 || roll < density)) add(v, u);
        }
    Snapshot s;
    s.n = n;
    s.round = round;
    s.ports = assign_ports(n, adj, rng);
    return s;
}

Snapshot snapshot_from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                             std::uint64_t seed, long round) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<NodeId>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    Snapshot s;
    s.n = n;
    s.round = round;
    s.ports = assign_ports(n, adj, rng);
    return s;
}

int diameter(const Snapshot& s) {
    int best = 0;
    for (NodeId src = 0; src < s.n; ++src) {
        std::vector<int> dist(s.n, -1);
        std::queue<NodeId> q;
        dist[src] = 0;
        q.push(src);
        while (!q.empty()) {
            NodeId v = q.front();
            q.pop();
            for (NodeId u : s.ports[v])
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    q.push(u);
                }
        }
        for (int d : dist) best = std::max(best, d);
    }
    return best;
}

}  // namespace dynex
