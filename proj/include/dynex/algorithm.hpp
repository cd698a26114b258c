#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>

#include "dynex/view.hpp"

namespace dynex {

/// One agent's outcome for a round: an optional move through a port of its
/// current node plus the new values of the persistent variables.
struct AgentDecision {
    std::optional<int> move_port;
    int p_est = 0;
    bool exp = false;
    std::optional<AgentId> src_id;
    bool phase = false;
};

using DecisionMap = std::map<AgentId, AgentDecision>;

/// A deterministic, side-effect-free decision rule for one round. `decide`
/// returns decisions for the active agents only; all observe the same
/// immutable inputs.
class Algorithm {
  public:
    virtual ~Algorithm() = default;
    virtual std::string name() const = 0;
    virtual DecisionMap decide(const Snapshot& s, const std::vector<AgentState>& agents,
                               const std::set<AgentId>& active, long round) const = 0;
};

/// Full Phase-3 decision for one active agent given the reconstructed map and
/// the round's broadcasts. Exposed separately so the decision tree is testable
/// round-by-round.
AgentDecision phase3_decide(const AgentState& agent, const ReconstructedMap& m,
                            const std::vector<Broadcast>& broadcasts);

/// The main exploration algorithm: 1-hop visibility, global communication,
/// pipeline movement with progressive estimation of the deactivation budget.
class ExpoAlgorithm : public Algorithm {
  public:
    std::string name() const override { return "expo"; }
    DecisionMap decide(const Snapshot& s, const std::vector<AgentState>& agents,
                       const std::set<AgentId>& active, long round) const override;
};

/// 0-hop-visibility variant: an agent senses only its own node (ports and
/// co-located ids) plus global broadcasts. Lone agents wander; at multinodes
/// the minimum active agent anchors and the rest scatter.
class ZeroHopScatter : public Algorithm {
  public:
    std::string name() const override { return "zero_hop"; }
    DecisionMap decide(const Snapshot& s, const std::vector<AgentState>& agents,
                       const std::set<AgentId>& active, long round) const override;
};

/// 1-hop-visibility, face-to-face-communication variant: fills visible holes
/// and sheds agents from nodes exceeding p+1 toward the lightest neighbor.
class OneHopF2F : public Algorithm {
  public:
    explicit OneHopF2F(int p) : p_(p) {}
    std::string name() const override { return "one_hop_f2f"; }
    DecisionMap decide(const Snapshot& s, const std::vector<AgentState>& agents,
                       const std::set<AgentId>& active, long round) const override;

  private:
    int p_;
};

/// Omniscient greedy baseline: surplus agents step along a shortest path to
/// the nearest hole. Deliberately naive; used to exercise the adversaries.
class GreedyBaseline : public Algorithm {
  public:
    std::string name() const override { return "greedy"; }
    DecisionMap decide(const Snapshot& s, const std::vector<AgentState>& agents,
                       const std::set<AgentId>& active, long round) const override;
};

std::unique_ptr<Algorithm> make_algorithm(const std::string& name, int p);

}  // namespace dynex
