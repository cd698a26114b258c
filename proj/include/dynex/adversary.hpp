#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>

#include "dynex/algorithm.hpp"

namespace dynex {

/// What the adversary commits to for one round: the snapshot the agents will
/// see and the set of agents withheld from activation. `meta` carries
/// construction details for traces and debugging only.
struct AdversaryDecision {
    Snapshot snapshot;
    std::set<AgentId> deactivated;
    nlohmann::json meta;
};

/// Pre-simulation hook: what would the agents decide on this snapshot with
/// this active set, given their current states? Pure; supplied by the engine.
using AgentOracle =
    std::function<DecisionMap(const Snapshot& s, const std::set<AgentId>& active)>;

/// A per-round opponent. Stateful: constructions depend on the previous
/// round's graph and deactivation set.
class Adversary {
  public:
    virtual ~Adversary() = default;
    virtual std::string name() const = 0;
    /// Max consecutive rounds any single agent may be kept inactive.
    virtual int fairness_bound() const = 0;
    /// The node a construction is defending, once chosen.
    virtual std::optional<NodeId> target() const { return std::nullopt; }
    virtual AdversaryDecision decide(long round, const std::vector<AgentState>& agents,
                                     const AgentOracle& oracle) = 0;
};

/// Benign scheduler: random connected snapshots, a uniformly chosen set of at
/// most p agents deactivated per round, never exceeding the fairness window.
class RandomFair : public Adversary {
  public:
    RandomFair(int n, int p, std::uint64_t seed, double density, int fairness);
    std::string name() const override { return "random_fair"; }
    int fairness_bound() const override { return fairness_; }
    AdversaryDecision decide(long round, const std::vector<AgentState>& agents,
                             const AgentOracle& oracle) override;

  private:
    int n_, p_, fairness_;
    std::uint64_t seed_;
    double density_;
    std::map<AgentId, int> streak_;  // consecutive inactive rounds so far
};

/// Keeps one chosen hole behind a pendant edge attached to a frozen or empty
/// node; defeats any algorithm when k <= (n-2)(p+1), regardless of the
/// agents' capabilities.
class CliquePendant : public Adversary {
  public:
    CliquePendant(int n, int p, std::uint64_t seed);
    std::string name() const override { return "clique_pendant"; }
    int fairness_bound() const override { return 1; }
    std::optional<NodeId> target() const override {
        return target_ < 0 ? std::nullopt : std::optional<NodeId>(target_);
    }
    AdversaryDecision decide(long round, const std::vector<AgentState>& agents,
                             const AgentOracle& oracle) override;

  private:
    int n_, p_;
    std::uint64_t seed_;
    NodeId target_ = -1;
    std::set<AgentId> last_deact_;
};

/// Sorted-path construction against 1-hop visibility with local-only
/// communication and k = (n-2)(p+1)+1: pre-simulates the agents and, if they
/// would land in the critical configuration, rewires two edges far from the
/// target so that locally-indistinguishable moves miss it. Requires n >= 9.
class CstarBlocker : public Adversary {
  public:
    CstarBlocker(int n, int p, std::uint64_t seed);
    std::string name() const override { return "cstar_blocker"; }
    int fairness_bound() const override { return 1; }
    std::optional<NodeId> target() const override {
        return target_ < 0 ? std::nullopt : std::optional<NodeId>(target_);
    }
    AdversaryDecision decide(long round, const std::vector<AgentState>& agents,
                             const AgentOracle& oracle) override;

  private:
    int n_, p_;
    std::uint64_t seed_;
    NodeId target_ = -1;
    NodeId prev_nbr_ = -1;  // target's neighbor in the previous snapshot
    std::set<AgentId> last_deact_;
};

/// Sorted-path construction against 0-hop visibility with global
/// communication and k = (n-2)(p+1)+1: when a lone active agent sits next to
/// the target, its two outgoing port labels are swapped so the chosen port
/// leads away from it.
class PortSwap : public Adversary {
  public:
    PortSwap(int n, int p, std::uint64_t seed);
    std::string name() const override { return "port_swap"; }
    int fairness_bound() const override { return 1; }
    std::optional<NodeId> target() const override {
        return target_ < 0 ? std::nullopt : std::optional<NodeId>(target_);
    }
    AdversaryDecision decide(long round, const std::vector<AgentState>& agents,
                             const AgentOracle& oracle) override;

  private:
    int n_, p_;
    std::uint64_t seed_;
    NodeId target_ = -1;
    NodeId prev_nbr_ = -1;
    std::set<AgentId> last_deact_;
};

std::unique_ptr<Adversary> make_adversary(const std::string& name, int n, int p,
                                          std::uint64_t seed, double density, int fairness);

}  // namespace dynex
