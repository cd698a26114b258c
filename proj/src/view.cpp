#include "dynex/view.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace dynex {

Broadcast phase1_collect(const Snapshot& s, const Configuration& c, const AgentState& agent) {
    Broadcast b;
    b.info = {agent.id, agent.p_est, agent.exp, agent.src_id, agent.phase};
    NodeId v = agent.location;
    b.view.here = c.at[v];
    for (int q = 0; q < s.deg(v); ++q) {
        NodeId u = s.ports[v][q];
        PortObservation obs;
        obs.port = q;
        obs.hole = c.at[u].empty();
        obs.ids = c.at[u];
        b.view.per_port.push_back(std::move(obs));
    }
    return b;
}

const ReconstructedMap::Node* ReconstructedMap::find(AgentId label) const {
    for (auto& nd : nodes)
        if (nd.label == label) return &nd;
    return nullptr;
}

const ReconstructedMap::Node* ReconstructedMap::node_of_agent(AgentId id) const {
    for (auto& nd : nodes)
        if (std::binary_search(nd.ids.begin(), nd.ids.end(), id)) return &nd;
    return nullptr;
}

std::vector<AgentId> ReconstructedMap::neighbors(AgentId label) const {
    std::vector<AgentId> out;
    for (auto& e : edges) {
        if (e.a == label) out.push_back(e.b);
        if (e.b == label) out.push_back(e.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::set<AgentId> ReconstructedMap::component(AgentId label) const {
    std::set<AgentId> comp{label};
    std::queue<AgentId> q;
    q.push(label);
    while (!q.empty()) {
        AgentId cur = q.front();
        q.pop();
        for (AgentId nb : neighbors(cur))
            if (comp.insert(nb).second) q.push(nb);
    }
    return comp;
}

nlohmann::json ReconstructedMap::digest() const {
    nlohmann::json j;
    j["nodes"] = nodes.size();
    j["edges"] = edges.size();
    j["x"] = observed_inactive;
    j["y"] = max_p_est;
    j["tau"] = tau;
    return j;
}

ReconstructedMap phase2_reconstruct(const std::vector<Broadcast>& broadcasts) {
    ReconstructedMap m;
    if (broadcasts.empty()) return m;

    // group broadcasts by node; resident id sets of distinct nodes are disjoint
    struct Group {
        std::vector<AgentId> here;
        std::vector<AgentId> active;
        const LocalView* view = nullptr;
    };
    std::map<AgentId, Group> groups;  // keyed by min resident id
    for (auto& b : broadcasts) {
        AgentId key = *std::min_element(b.view.here.begin(), b.view.here.end());
        auto& g = groups[key];
        if (!g.view) {
            g.here = b.view.here;
            std::sort(g.here.begin(), g.here.end());
            g.view = &b.view;
        }
        g.active.push_back(b.info.id);
    }

    auto group_of_idset = [&](const std::vector<AgentId>& ids) -> const Group* {
        if (ids.empty()) return nullptr;
        auto it = groups.find(*std::min_element(ids.begin(), ids.end()));
        return it == groups.end() ? nullptr : &it->second;
    };

    long inactive_at_active_nodes = 0;
    std::map<AgentId, ReconstructedMap::Node*> by_label;
    for (auto& [key, g] : groups) {
        std::sort(g.active.begin(), g.active.end());
        ReconstructedMap::Node nd;
        nd.ids = g.here;
        nd.active_ids = g.active;
        nd.label = g.active.front();
        inactive_at_active_nodes += static_cast<long>(nd.ids.size() - nd.active_ids.size());
        m.nodes.push_back(std::move(nd));
    }
    std::sort(m.nodes.begin(), m.nodes.end(),
              [](auto& a, auto& b) { return a.label < b.label; });
    for (auto& nd : m.nodes) by_label[nd.label] = &nd;

    std::vector<std::vector<AgentId>> inactive_sets;
    for (auto& [key, g] : groups) {
        AgentId label = g.active.front();
        auto* nd = by_label[label];
        for (auto& obs : g.view->per_port) {
            if (obs.hole) {
                nd->hole_ports.push_back(obs.port);
                continue;
            }
            std::vector<AgentId> there = obs.ids;
            std::sort(there.begin(), there.end());
            if (there == g.here) continue;  // cannot happen on a simple graph
            const Group* far = group_of_idset(there);
            if (far && far->here == there) {
                AgentId far_label = far->active.front();
                if (label < far_label) {
                    // find the reciprocal tuple
                    const PortObservation* back = nullptr;
                    for (auto& fo : far->view->per_port) {
                        std::vector<AgentId> fids = fo.ids;
                        std::sort(fids.begin(), fids.end());
                        if (!fo.hole && fids == g.here) {
                            back = &fo;
                            break;
                        }
                    }
                    if (!back) throw std::runtime_error("corrupt broadcast set");
                    m.edges.push_back({label, far_label, obs.port, back->port});
                }
            } else {
                nd->inactive_ports.emplace_back(obs.port, there);
                if (std::find(inactive_sets.begin(), inactive_sets.end(), there) ==
                    inactive_sets.end())
                    inactive_sets.push_back(there);
            }
        }
        std::sort(nd->hole_ports.begin(), nd->hole_ports.end());
        std::sort(nd->inactive_ports.begin(), nd->inactive_ports.end());
    }
    std::sort(m.edges.begin(), m.edges.end(), [](auto& x, auto& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    std::sort(inactive_sets.begin(), inactive_sets.end());
    m.inactive_only = std::move(inactive_sets);
    m.tau = static_cast<int>(m.inactive_only.size());

    long hidden = 0;
    for (auto& s : m.inactive_only) hidden += static_cast<long>(s.size());
    m.observed_inactive = hidden + inactive_at_active_nodes;
    m.max_p_est = 0;
    for (auto& b : broadcasts) m.max_p_est = std::max(m.max_p_est, b.info.p_est);
    return m;
}

std::vector<std::set<NodeId>> cca_oracle(const Snapshot& s, const Configuration& c,
                                         const std::set<AgentId>& active) {
    std::vector<char> hosts(s.n, 0);
    for (NodeId v = 0; v < s.n; ++v)
        for (AgentId a : c.at[v])
            if (active.count(a)) hosts[v] = 1;
    std::vector<std::set<NodeId>> comps;
    std::vector<char> seen(s.n, 0);
    for (NodeId v = 0; v < s.n; ++v) {
        if (!hosts[v] || seen[v]) continue;
        std::set<NodeId> comp;
        std::queue<NodeId> q;
        q.push(v);
        seen[v] = 1;
        while (!q.empty()) {
            NodeId cur = q.front();
            q.pop();
            comp.insert(cur);
            for (NodeId u : s.ports[cur])
                if (hosts[u] && !seen[u]) {
                    seen[u] = 1;
                    q.push(u);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<AgentId> lex_shortest_path(const ReconstructedMap& m, AgentId src, AgentId dst) {
    if (!m.find(src) || !m.find(dst)) throw std::invalid_argument("no path");
    // BFS distances from dst, then greedily walk from src picking the
    // smallest-label neighbor that stays on a shortest path
    std::map<AgentId, int> dist;
    std::queue<AgentId> q;
    dist[dst] = 0;
    q.push(dst);
    while (!q.empty()) {
        AgentId cur = q.front();
        q.pop();
        for (AgentId nb : m.neighbors(cur))
            if (!dist.count(nb)) {
                dist[nb] = dist[cur] + 1;
                q.push(nb);
            }
    }
    if (!dist.count(src)) throw std::invalid_argument("no path");
    std::vector<AgentId> path{src};
    AgentId cur = src;
    while (cur != dst) {
        int d = dist[cur];
        AgentId best = -1;
        for (AgentId nb : m.neighbors(cur)) {
            auto it = dist.find(nb);
            if (it != dist.end() && it->second == d - 1 && (best < 0 || nb < best)) best = nb;
        }
        path.push_back(best);
        cur = best;
    }
    return path;
}

int update_p(const AgentState& agent, const ReconstructedMap& m) {
    long x = m.observed_inactive;
    int y = m.max_p_est;
    return static_cast<int>(std::max({x, static_cast<long>(y), static_cast<long>(agent.p_est)}));
}

}  // namespace dynex
