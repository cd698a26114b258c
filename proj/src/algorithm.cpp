#include "dynex/algorithm.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace dynex {

namespace {

bool contains(const std::vector<AgentId>& sorted_ids, AgentId id) {
    return std::binary_search(sorted_ids.begin(), sorted_ids.end(), id);
}

// Lex-smallest shortest path from src to the minimum-label node carrying a
// port that satisfies `qualifies`; empty if no such node is in the component.
template <typename Pred>
std::vector<AgentId> path_to_min_gateway(const ReconstructedMap& m, AgentId src,
                                         const std::set<AgentId>& comp, Pred qualifies) {
    for (auto& nd : m.nodes)  // nodes are label-sorted: first hit is minimal
        if (comp.count(nd.label) && qualifies(nd)) return lex_shortest_path(m, src, nd.label);
    return {};
}

// Lex-smallest among the shortest paths that end at any qualifying gateway;
// used when the true destination lies one hop beyond the gateway.
template <typename Pred>
std::vector<AgentId> path_to_nearest(const ReconstructedMap& m, AgentId src,
                                     const std::set<AgentId>& comp, Pred qualifies) {
    std::vector<AgentId> gateways;
    for (auto& nd : m.nodes)
        if (comp.count(nd.label) && qualifies(nd)) gateways.push_back(nd.label);
    if (gateways.empty()) return {};
    std::vector<AgentId> best;
    for (AgentId g : gateways) {
        auto p = lex_shortest_path(m, src, g);
        if (best.empty() || p.size() < best.size() || (p.size() == best.size() && p < best))
            best = std::move(p);
    }
    return best;
}

int min_hole_port(const ReconstructedMap::Node& nd) { return nd.hole_ports.front(); }

int min_inactive_port(const ReconstructedMap::Node& nd) { return nd.inactive_ports.front().first; }

int port_between(const ReconstructedMap& m, AgentId from, AgentId to) {
    for (auto& e : m.edges) {
        if (e.a == from && e.b == to) return e.port_at_a;
        if (e.b == from && e.a == to) return e.port_at_b;
    }
    throw std::logic_error("pipeline path uses a non-edge");
}

}  // namespace

AgentDecision phase3_decide(const AgentState& agent, const ReconstructedMap& m,
                            const std::vector<Broadcast>& broadcasts) {
    AgentDecision d;
    d.p_est = agent.p_est;
    d.exp = agent.exp;
    d.src_id = agent.src_id;
    d.phase = agent.phase;

    for (auto& b : broadcasts)
        if (b.info.exp) {
            d.exp = true;
            return d;
        }

    const auto* mynode = m.node_of_agent(agent.id);
    if (!mynode) throw std::logic_error("active agent missing from its own map");

    bool any_phase = false;
    for (auto& b : broadcasts) any_phase |= b.info.phase;

    bool any_hole_port = false, any_inactive_port = false;
    for (auto& nd : m.nodes) {
        any_hole_port |= !nd.hole_ports.empty();
        any_inactive_port |= !nd.inactive_ports.empty();
    }

    if (!any_phase) {
        // Case 1: the budget estimate is refreshed, then either a pipeline
        // drains an overfull node or the source gets fixed.
        d.p_est = update_p(agent, m);

        std::vector<const ReconstructedMap::Node*> overfull;
        for (auto& nd : m.nodes)
            if (static_cast<int>(nd.ids.size()) >= d.p_est + 2) overfull.push_back(&nd);

        if (!overfull.empty()) {
            if (agent.id != mynode->active_ids.front()) return d;  // only minima act
            AgentId source = overfull.front()->label;              // nodes sorted by label
            auto comp = m.component(source);
            if (!comp.count(mynode->label)) return d;

            std::vector<AgentId> path;
            bool toward_hole = false;
            path = path_to_min_gateway(m, source, comp,
                                       [](auto& nd) { return !nd.hole_ports.empty(); });
            if (!path.empty()) {
                toward_hole = true;
            } else {
                if (!any_inactive_port) {
                    d.exp = true;  // no holes, no hidden nodes: everything is covered
                    return d;
                }
                path = path_to_min_gateway(m, source, comp, [](auto& nd) {
                    return !nd.inactive_ports.empty();
                });
                if (path.empty()) return d;  // target only visible from another component
            }
            for (size_t j = 0; j < path.size(); ++j) {
                if (path[j] != mynode->label) continue;
                if (j + 1 < path.size())
                    d.move_port = port_between(m, path[j], path[j + 1]);
                else
                    d.move_port = toward_hole ? min_hole_port(*mynode) : min_inactive_port(*mynode);
                return d;
            }
            return d;
        }

        // Sub-case 2: every node is at most p+1; fix the pipeline source.
        d.phase = true;
        // The announcement is justified by the correctness argument: two
        // hidden nodes rule out a hole, and with no hidden node the map must
        // also show no hole port before coverage can be declared.
        if (m.tau >= 2 || (m.tau == 0 && !any_hole_port)) {
            d.exp = true;
            return d;
        }
        size_t x = mynode->ids.size();
        for (auto& nd : m.nodes) x = std::min(x, nd.ids.size());
        if (m.tau == 1) x = std::min(x, m.inactive_only.front().size());
        AgentId src = -1;
        for (auto& nd : m.nodes)
            if (nd.ids.size() == x && (src < 0 || nd.ids.front() < src)) src = nd.ids.front();
        if (m.tau == 1 && m.inactive_only.front().size() == x) {
            AgentId cand = m.inactive_only.front().front();
            if (src < 0 || cand < src) src = cand;
        }
        d.src_id = src;
        return d;
    }

    // Case 2: the source is fixed; only source-to-hidden-node pipelines move.
    d.phase = true;
    d.p_est = update_p(agent, m);
    if (!d.src_id) {
        for (auto& b : broadcasts)
            if (b.info.phase && b.info.src_id) {
                d.src_id = b.info.src_id;  // broadcasts are id-sorted; adopt the first
                break;
            }
    }

    if (any_hole_port) {
        // Sub-case 1: a hole is adjacent to the map; fill it and announce.
        d.exp = true;
        for (auto& nd : m.nodes)
            if (!nd.hole_ports.empty()) {
                if (nd.label == mynode->label && agent.id == mynode->active_ids.front())
                    d.move_port = min_hole_port(nd);
                break;
            }
        return d;
    }

    if (!any_inactive_port) {
        d.exp = true;
        return d;
    }
    if (m.tau >= 2) {
        d.exp = true;
        return d;
    }
    if (!d.src_id) return d;  // no source known anywhere; hold position

    const auto& hidden_ids = m.inactive_only.front();
    AgentId src = *d.src_id;
    const auto* srcnode = m.node_of_agent(src);
    bool src_hidden = contains(hidden_ids, src);
    if (!srcnode && !src_hidden) {
        d.exp = true;  // the source vanished from every view: no hole remains
        return d;
    }
    if (src_hidden) return d;
    if (srcnode->ids.size() == 1) {
        d.exp = true;  // source node reduced to the lone source agent
        return d;
    }
    std::vector<AgentId> movers;
    for (AgentId a : srcnode->active_ids)
        if (a != src) movers.push_back(a);
    if (movers.empty()) return d;
    if (agent.id == src) return d;

    auto comp = m.component(srcnode->label);
    auto path = path_to_nearest(m, srcnode->label, comp, [&](auto& nd) {
        for (auto& [q, ids] : nd.inactive_ports)
            if (ids == hidden_ids) return true;
        return false;
    });
    if (path.empty()) return d;
    for (size_t j = 0; j < path.size(); ++j) {
        if (path[j] != mynode->label) continue;
        AgentId mover = (j == 0) ? movers.front() : mynode->active_ids.front();
        if (agent.id != mover) return d;
        if (j + 1 < path.size()) {
            d.move_port = port_between(m, path[j], path[j + 1]);
        } else {
            for (auto& [q, ids] : mynode->inactive_ports)
                if (ids == hidden_ids) {
                    d.move_port = q;
                    break;
                }
        }
        return d;
    }
    return d;
}

DecisionMap ExpoAlgorithm::decide(const Snapshot& s, const std::vector<AgentState>& agents,
                                  const std::set<AgentId>& active, long) const {
    Configuration c = Configuration::from_agents(s.n, agents);
    std::vector<Broadcast> broadcasts;
    for (auto& a : agents)
        if (active.count(a.id)) broadcasts.push_back(phase1_collect(s, c, a));
    std::sort(broadcasts.begin(), broadcasts.end(),
              [](auto& x, auto& y) { return x.info.id < y.info.id; });
    ReconstructedMap m = phase2_reconstruct(broadcasts);
    DecisionMap out;
    for (auto& a : agents)
        if (active.count(a.id)) out[a.id] = phase3_decide(a, m, broadcasts);
    return out;
}

DecisionMap ZeroHopScatter::decide(const Snapshot& s, const std::vector<AgentState>& agents,
                                   const std::set<AgentId>& active, long round) const {
    Configuration c = Configuration::from_agents(s.n, agents);
    DecisionMap out;
    for (auto& a : agents) {
        if (!active.count(a.id)) continue;
        AgentDecision d;
        d.p_est = a.p_est;
        d.exp = a.exp;
        d.src_id = a.src_id;
        d.phase = a.phase;
        NodeId v = a.location;
        AgentId min_active = -1;
        for (AgentId x : c.at[v])
            if (active.count(x)) {
                min_active = x;
                break;
            }
        bool lone = c.at[v].size() == 1;
        if (lone || a.id != min_active) {
            int deg = s.deg(v);
            d.move_port = static_cast<int>((a.id + round) % deg);
        }
        out[a.id] = d;
    }
    return out;
}

DecisionMap OneHopF2F::decide(const Snapshot& s, const std::vector<AgentState>& agents,
                              const std::set<AgentId>& active, long) const {
    Configuration c = Configuration::from_agents(s.n, agents);
    auto counts = c.counts();
    DecisionMap out;
    for (auto& a : agents) {
        if (!active.count(a.id)) continue;
        AgentDecision d;
        d.p_est = a.p_est;
        d.exp = a.exp;
        d.src_id = a.src_id;
        d.phase = a.phase;
        NodeId v = a.location;
        std::vector<AgentId> active_here;
        for (AgentId x : c.at[v])
            if (active.count(x)) active_here.push_back(x);

        int hole_port = -1;
        for (int q = 0; q < s.deg(v); ++q)
            if (counts[s.ports[v][q]] == 0) {
                hole_port = q;
                break;
            }
        if (hole_port >= 0 && counts[v] >= 2 && a.id == active_here.front()) {
            d.move_port = hole_port;
        } else if (counts[v] >= p_ + 2) {
            // surplus agents (largest ids first) shed toward the lightest neighbor
            int excess = counts[v] - (p_ + 1);
            int rank = 0;  // position from the top of the active id order
            for (auto it = active_here.rbegin(); it != active_here.rend(); ++it, ++rank)
                if (*it == a.id) break;
            if (rank < excess && a.id != active_here.front()) {
                int best_q = 0;
                for (int q = 1; q < s.deg(v); ++q)
                    if (counts[s.ports[v][q]] < counts[s.ports[v][best_q]]) best_q = q;
                d.move_port = best_q;
            }
        }
        out[a.id] = d;
    }
    return out;
}

DecisionMap GreedyBaseline::decide(const Snapshot& s, const std::vector<AgentState>& agents,
                                   const std::set<AgentId>& active, long) const {
    Configuration c = Configuration::from_agents(s.n, agents);
    auto counts = c.counts();
    std::vector<int> dist(s.n, -1);  // distance to the nearest hole
    std::queue<NodeId> q;
    for (NodeId v = 0; v < s.n; ++v)
        if (counts[v] == 0) {
            dist[v] = 0;
            q.push(v);
        }
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (NodeId u : s.ports[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
    }
    DecisionMap out;
    for (auto& a : agents) {
        if (!active.count(a.id)) continue;
        AgentDecision d;
        d.p_est = a.p_est;
        d.exp = a.exp;
        d.src_id = a.src_id;
        d.phase = a.phase;
        NodeId v = a.location;
        std::vector<AgentId> active_here;
        for (AgentId x : c.at[v])
            if (active.count(x)) active_here.push_back(x);
        if (dist[v] > 0 && counts[v] >= 2 && a.id != active_here.front()) {
            NodeId best = -1;
            for (NodeId u : s.ports[v])
                if (dist[u] == dist[v] - 1 && (best < 0 || u < best)) best = u;
            if (best >= 0) d.move_port = port_toward(s, v, best);
        }
        out[a.id] = d;
    }
    return out;
}

std::unique_ptr<Algorithm> make_algorithm(const std::string& name, int p) {
    if (name == "expo") return std::make_unique<ExpoAlgorithm>();
    if (name == "zero_hop") return std::make_unique<ZeroHopScatter>();
    if (name == "one_hop_f2f") return std::make_unique<OneHopF2F>(p);
    if (name == "greedy") return std::make_unique<GreedyBaseline>();
    throw std::invalid_argument("unknown algorithm: " + name);
}

}  // namespace dynex
