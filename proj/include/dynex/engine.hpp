#pragma once

#include <iosfwd>
#include <optional>

#include "dynex/adversary.hpp"

namespace dynex {

/// Raised when a round's adversary decision breaks the rules of the game
/// (invalid snapshot, budget overrun, fairness window exceeded) or when a
/// construction's own invariant fails mid-run.
struct AdversaryViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Scenario {
    int n = 5;
    int k = 7;
    int p = 1;
    std::string algorithm = "expo";
    std::string adversary = "random_fair";
    std::uint64_t seed = 1;
    double density = 0.3;       // extra-edge probability for random snapshots
    int fairness = 5;           // max consecutive inactive rounds
    long max_rounds = 0;        // 0: 10*k*n for random_fair, 10^4 otherwise
    std::string placement = "stacked";  // stacked | random
    double move_bound_c = 10.0;         // positive runs must stay under c*k*D

    long effective_max_rounds() const;
    void validate() const;  // throws std::invalid_argument
    nlohmann::json to_json() const;
    static Scenario from_json(const nlohmann::json& j);
};

struct Metrics {
    long rounds = 0;
    long moves = 0;
    int visited = 0;
    bool explored = false;
    long explored_round = -1;   // first round with full coverage, -1 if never
    long all_exp_round = -1;
    int max_diameter = 0;       // measured dynamic diameter
    int max_p_est = 0;
    std::string status;         // all_exp | max_rounds | impossibility_hold
    std::optional<NodeId> target;  // construction's protected node, if any
    bool target_visited = false;   // only meaningful when target is set
    bool move_bound_ok = true;

    nlohmann::json to_json() const;
};

/// Runs the scenario to termination. If `trace` is non-null, writes one JSON
/// object per line: a header record, one record per round, and a summary.
Metrics run(const Scenario& sc, std::ostream* trace = nullptr);

struct ReplayReport {
    bool ok = true;
    long divergence_line = -1;  // 1-based line number of the first mismatch
    std::string message;
};

/// Re-executes the scenario in a trace header and compares byte-for-byte.
ReplayReport replay(std::istream& trace);

/// True iff no agent is inactive more than `fairness` consecutive rounds.
bool check_fairness(const std::vector<std::set<AgentId>>& deactivations,
                    const std::vector<AgentId>& ids, int fairness);

/// Initial placement shared by run and the tests: agent ids 1..k, either all
/// stacked on node 0 or independently uniform over nodes.
std::vector<AgentState> initial_agents(const Scenario& sc);

}  // namespace dynex
