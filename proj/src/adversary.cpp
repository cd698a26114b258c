#include "dynex/adversary.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dynex {

namespace {

NodeId pick_hole(const std::vector<int>& counts) {
    for (int v = static_cast<int>(counts.size()) - 1; v >= 0; --v)
        if (counts[v] == 0) return v;
    throw std::runtime_error("no hole in the initial configuration");
}

/// All nodes except `skip`, largest count first, node id as tie-break.
std::vector<NodeId> sorted_by_count(const std::vector<int>& counts, NodeId skip) {
    std::vector<NodeId> order;
    for (NodeId v = 0; v < static_cast<int>(counts.size()); ++v)
        if (v != skip) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return counts[a] != counts[b] ? counts[a] > counts[b] : a < b;
    });
    return order;
}

std::vector<std::pair<NodeId, NodeId>> path_edges(const std::vector<NodeId>& u) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (size_t i = 0; i + 1 < u.size(); ++i)
        e.emplace_back(std::min(u[i], u[i + 1]), std::max(u[i], u[i + 1]));
    return e;
}

/// Occupancy after applying `d` to `agents` on `s`; inactive agents stay put.
std::vector<int> end_counts(const Snapshot& s, const std::vector<AgentState>& agents,
                            const DecisionMap& d) {
    std::vector<int> c(s.n, 0);
    for (auto& a : agents) {
        NodeId v = a.location;
        auto it = d.find(a.id);
        if (it != d.end() && it->second.move_port) v = s.ports[v][*it->second.move_port];
        ++c[v];
    }
    return c;
}

}  // namespace

RandomFair::RandomFair(int n, int p, std::uint64_t seed, double density, int fairness)
    : n_(n), p_(p), fairness_(fairness), seed_(seed), density_(density) {
    if (n < 3) throw std::invalid_argument("model requires n >= 3");
    if (p < 0 || fairness < 1) throw std::invalid_argument("bad scheduler parameters");
}

AdversaryDecision RandomFair::decide(long round, const std::vector<AgentState>& agents,
                                     const AgentOracle&) {
    AdversaryDecision d;
    d.snapshot = generate_snapshot(n_, mix_seed(seed_, 2 * round), density_, round);
    std::mt19937_64 rng(mix_seed(seed_, 2 * round + 1));
    std::vector<AgentId> eligible;
    for (auto& a : agents)
        if (streak_[a.id] < fairness_) eligible.push_back(a.id);
    std::shuffle(eligible.begin(), eligible.end(), rng);
    size_t take = std::uniform_int_distribution<size_t>(
        0, std::min<size_t>(p_, eligible.size()))(rng);
    d.deactivated.insert(eligible.begin(), eligible.begin() + take);
    for (auto& a : agents) {
        if (d.deactivated.count(a.id))
            ++streak_[a.id];
        else
            streak_[a.id] = 0;
    }
    d.meta = {{"scheduler", "random_fair"}};
    return d;
}

CliquePendant::CliquePendant(int n, int p, std::uint64_t seed) : n_(n), p_(p), seed_(seed) {
    if (n < 3) throw std::invalid_argument("model requires n >= 3");
    if (p < 1) throw std::invalid_argument("construction requires p >= 1");
}

AdversaryDecision CliquePendant::decide(long round, const std::vector<AgentState>& agents,
                                        const AgentOracle&) {
    Configuration c = Configuration::from_agents(n_, agents);
    auto counts = c.counts();
    if (target_ < 0) target_ = pick_hole(counts);
    if (counts[target_] != 0) throw std::runtime_error("protected hole was breached");

    NodeId attach = -1;
    bool other_hole = false;
    for (NodeId v = 0; v < n_; ++v)
        if (v != target_ && counts[v] == 0) {
            attach = v;
            other_hole = true;
            break;
        }
    if (!other_hole) {
        // attach to a lightly occupied node whose residents were all active
        // last round, so freezing them again keeps the schedule fair
        for (NodeId v = 0; v < n_; ++v) {
            if (v == target_ || counts[v] > p_) continue;
            bool tainted = false;
            for (AgentId a : c.at[v]) tainted |= last_deact_.count(a) > 0;
            if (!tainted) {
                attach = v;
                break;
            }
        }
        if (attach < 0) throw std::runtime_error("no admissible pendant attachment");
    }

    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId a = 0; a < n_; ++a) {
        if (a == target_) continue;
        for (NodeId b = a + 1; b < n_; ++b)
            if (b != target_) edges.emplace_back(a, b);
    }
    edges.emplace_back(std::min(target_, attach), std::max(target_, attach));

    AdversaryDecision d;
    d.snapshot = snapshot_from_edges(n_, edges, mix_seed(seed_, round), round);
    if (!other_hole) d.deactivated.insert(c.at[attach].begin(), c.at[attach].end());
    d.meta = {{"target", target_}, {"attach", attach}, {"two_holes", other_hole}};
    last_deact_ = d.deactivated;
    return d;
}

CstarBlocker::CstarBlocker(int n, int p, std::uint64_t seed) : n_(n), p_(p), seed_(seed) {
    if (n < 9) throw std::invalid_argument("construction requires n >= 9");
    if (p < 1) throw std::invalid_argument("construction requires p >= 1");
}

AdversaryDecision CstarBlocker::decide(long round, const std::vector<AgentState>& agents,
                                       const AgentOracle& oracle) {
    Configuration c = Configuration::from_agents(n_, agents);
    auto counts = c.counts();

    std::vector<NodeId> u;  // the path, target last
    std::set<AgentId> deact;
    if (target_ < 0) {
        target_ = pick_hole(counts);
        if (is_cstar(counts, p_))
            throw std::runtime_error("initial configuration is the critical one");
        u = sorted_by_count(counts, target_);
        u.push_back(target_);
        if (counts[u[n_ - 2]] >= 1)
            deact.insert(c.at[u[n_ - 2]].begin(), c.at[u[n_ - 2]].end());
        else if (counts[u[n_ - 3]] >= 1)
            deact.insert(c.at[u[n_ - 3]].front());
    } else if (counts[prev_nbr_] == 0) {
        // last round's gate node emptied; keep it next to the target
        std::vector<int> masked = counts;
        masked[prev_nbr_] = -1;  // sorts last among the non-target nodes
        u = sorted_by_count(masked, target_);
        u.push_back(target_);
        if (u[n_ - 2] != prev_nbr_) throw std::logic_error("gate ordering broken");
        if (counts[u[n_ - 3]] >= p_ + 1) {
            for (AgentId a : c.at[u[n_ - 3]])
                if (!last_deact_.count(a)) {
                    deact.insert(a);
                    break;
                }
            if (deact.empty()) throw std::logic_error("no fresh agent to freeze");
        }
    } else {
        // pick the lightest (<= p agents) node to guard the target, keep last
        // round's gate just before it, sort the rest
        NodeId guard = -1;
        for (NodeId v : sorted_by_count(counts, target_)) {
            if (v == prev_nbr_ || counts[v] > p_) continue;
            if (guard < 0 || counts[v] < counts[guard]) guard = v;
        }
        if (guard < 0) throw std::runtime_error("no admissible guard node");
        std::vector<int> masked = counts;
        masked[prev_nbr_] = -1;
        masked[guard] = -2;
        u = sorted_by_count(masked, target_);
        u.push_back(target_);
        deact.insert(c.at[guard].begin(), c.at[guard].end());
    }
    if (counts[target_] != 0) throw std::runtime_error("protected hole was breached");

    auto edges = path_edges(u);
    Snapshot cr = snapshot_from_edges(n_, edges, mix_seed(seed_, 2 * round), round);

    std::set<AgentId> active;
    for (auto& a : agents)
        if (!deact.count(a.id)) active.insert(a.id);
    bool rewired = false;
    int y = counts[u[n_ - 2]];
    if (is_cstar(end_counts(cr, agents, oracle(cr, active)), p_)) {
        // rewire away from the target so the locally unchanged agents repeat
        // their moves but no longer complete the critical configuration
        auto drop = [&](NodeId a, NodeId b) {
            auto key = std::make_pair(std::min(a, b), std::max(a, b));
            edges.erase(std::remove(edges.begin(), edges.end(), key), edges.end());
        };
        if (y >= 2) {
            drop(u[n_ - 3], u[n_ - 2]);
            edges.emplace_back(std::min(u[0], u[n_ - 2]), std::max(u[0], u[n_ - 2]));
        } else if (y == 1) {
            drop(u[n_ - 4], u[n_ - 3]);
            edges.emplace_back(std::min(u[0], u[n_ - 2]), std::max(u[0], u[n_ - 2]));
        } else {
            drop(u[n_ - 4], u[n_ - 3]);
            edges.emplace_back(std::min(u[0], u[n_ - 3]), std::max(u[0], u[n_ - 3]));
        }
        rewired = true;
        cr = snapshot_from_edges(n_, edges, mix_seed(seed_, 2 * round + 1), round);
    }

    AdversaryDecision d;
    d.snapshot = std::move(cr);
    d.deactivated = deact;
    d.meta = {{"target", target_}, {"gate", u[n_ - 2]}, {"y", y}, {"rewired", rewired}};
    prev_nbr_ = u[n_ - 2];
    last_deact_ = std::move(deact);
    return d;
}

PortSwap::PortSwap(int n, int p, std::uint64_t seed) : n_(n), p_(p), seed_(seed) {
    if (n < 3) throw std::invalid_argument("model requires n >= 3");
    if (p < 1) throw std::invalid_argument("construction requires p >= 1");
}

AdversaryDecision PortSwap::decide(long round, const std::vector<AgentState>& agents,
                                   const AgentOracle& oracle) {
    Configuration c = Configuration::from_agents(n_, agents);
    auto counts = c.counts();

    std::vector<NodeId> u;
    std::set<AgentId> deact;
    if (target_ < 0) {
        target_ = pick_hole(counts);
        u = sorted_by_count(counts, target_);
        u.push_back(target_);
        if (counts[u[n_ - 2]] >= 2)
            deact.insert(c.at[u[n_ - 2]].begin(), c.at[u[n_ - 2]].end());
    } else {
        auto order = sorted_by_count(counts, target_);
        NodeId lightest = order[n_ - 2];
        if (counts[lightest] <= 1) {
            u = order;
            u.push_back(target_);
        } else if (lightest != prev_nbr_) {
            u = order;
            u.push_back(target_);
            deact.insert(c.at[lightest].begin(), c.at[lightest].end());
        } else {
            // last round's gate is the lightest again: swap in the runner-up
            u = order;
            std::swap(u[n_ - 2], u[n_ - 3]);
            u.push_back(target_);
            deact.insert(c.at[u[n_ - 2]].begin(), c.at[u[n_ - 2]].end());
        }
    }
    if (counts[target_] != 0) throw std::runtime_error("protected hole was breached");
    if (static_cast<int>(deact.size()) > p_)
        throw std::runtime_error("guard node holds more than p agents");

    Snapshot cr = snapshot_from_edges(n_, path_edges(u), mix_seed(seed_, round), round);

    bool swapped = false;
    int y = counts[u[n_ - 2]];
    if (y == 1) {
        std::set<AgentId> active;
        for (auto& a : agents)
            if (!deact.count(a.id)) active.insert(a.id);
        DecisionMap dm = oracle(cr, active);
        for (auto& a : agents) {
            if (a.location != u[n_ - 2]) continue;
            auto it = dm.find(a.id);
            if (it != dm.end() && it->second.move_port &&
                cr.ports[a.location][*it->second.move_port] == target_) {
                // the gate node has degree 2: flip which port leads onward
                std::swap(cr.ports[u[n_ - 2]][0], cr.ports[u[n_ - 2]][1]);
                swapped = true;
            }
            break;
        }
    }

    AdversaryDecision d;
    d.snapshot = std::move(cr);
    d.deactivated = deact;
    d.meta = {{"target", target_}, {"gate", u[n_ - 2]}, {"y", y}, {"swapped", swapped}};
    prev_nbr_ = u[n_ - 2];
    last_deact_ = std::move(deact);
    return d;
}

std::unique_ptr<Adversary> make_adversary(const std::string& name, int n, int p,
                                          std::uint64_t seed, double density, int fairness) {
    if (name == "random_fair") return std::make_unique<RandomFair>(n, p, seed, density, fairness);
    if (name == "clique_pendant") return std::make_unique<CliquePendant>(n, p, seed);
    if (name == "cstar_blocker") return std::make_unique<CstarBlocker>(n, p, seed);
    if (name == "port_swap") return std::make_unique<PortSwap>(n, p, seed);
    throw std::invalid_argument("unknown adversary: " + name);
}

}  // namespace dynex
