#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynex/algorithm.hpp"

using namespace dynex;

namespace {

std::vector<AgentState> make_agents(const std::vector<std::pair<AgentId, NodeId>>& at) {
    std::vector<AgentState> agents;
    for (auto [id, v] : at) {
        AgentState a;
        a.id = id;
        a.location = v;
        agents.push_back(a);
    }
    return agents;
}

std::set<AgentId> all_ids(const std::vector<AgentState>& agents) {
    std::set<AgentId> s;
    for (auto& a : agents) s.insert(a.id);
    return s;
}

}  // namespace

TEST_CASE("coverage with no hidden nodes is announced") {
    Snapshot s = snapshot_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, 3);
    auto agents = make_agents({{1, 0}, {2, 1}, {3, 2}});
    ExpoAlgorithm algo;
    auto dm = algo.decide(s, agents, all_ids(agents), 0);
    for (auto& [id, d] : dm) {
        CHECK(d.exp);
        CHECK_FALSE(d.move_port);
    }
}

TEST_CASE("an announcement spreads before anything else") {
    Snapshot s = snapshot_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, 3);
    auto agents = make_agents({{1, 0}, {2, 1}, {3, 1}});
    agents[2].exp = true;
    ExpoAlgorithm algo;
    auto dm = algo.decide(s, agents, all_ids(agents), 0);
    for (auto& [id, d] : dm) {
        CHECK(d.exp);
        CHECK_FALSE(d.move_port);
    }
}

TEST_CASE("an overfull node drains toward the smallest hole-adjacent node") {
    Snapshot s = snapshot_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, 8);
    auto agents = make_agents({{1, 0}, {2, 0}, {3, 1}});
    ExpoAlgorithm algo;
    auto dm = algo.decide(s, agents, all_ids(agents), 0);
    // node 0 holds two agents with a zero budget estimate; its minimum active
    // agent exits through the hole port, everyone else stays
    REQUIRE(dm.at(1).move_port);
    CHECK(*dm.at(1).move_port == port_toward(s, 0, 2));
    CHECK_FALSE(dm.at(2).move_port);
    CHECK_FALSE(dm.at(3).move_port);
    CHECK_FALSE(dm.at(1).exp);
}

TEST_CASE("the source is fixed at the lightest node once counts settle") {
    Snapshot s = snapshot_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 5);
    auto agents = make_agents({{1, 0}, {2, 0}, {3, 1}, {4, 2}, {5, 2}, {6, 3}});
    std::set<AgentId> active{1, 2, 3, 4, 5};  // node 3 holds only inactive agent 6
    ExpoAlgorithm algo;
    auto dm = algo.decide(s, agents, active, 0);
    for (auto& [id, d] : dm) {
        CHECK(d.phase);
        CHECK(d.p_est == 1);
        REQUIRE(d.src_id);
        CHECK(*d.src_id == 3);  // both size-1 nodes qualify; the smaller id wins
        CHECK_FALSE(d.move_port);
        CHECK_FALSE(d.exp);
    }
}

TEST_CASE("a single pipeline feeds the hidden node in the source phase") {
    Snapshot s = snapshot_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 5);
    auto agents = make_agents({{1, 0}, {2, 0}, {3, 1}, {7, 1}, {4, 2}, {5, 2}, {6, 3}});
    for (auto& a : agents) {
        a.phase = true;
        a.src_id = 3;
        a.p_est = 1;
    }
    std::set<AgentId> active{1, 2, 3, 7, 4, 5};
    ExpoAlgorithm algo;
    auto dm = algo.decide(s, agents, active, 1);
    // source node (label 3) -> gateway node 0 (label 1) -> hidden node 3
    REQUIRE(dm.at(7).move_port);
    CHECK(*dm.at(7).move_port == port_toward(s, 1, 0));
    REQUIRE(dm.at(1).move_port);
    CHECK(*dm.at(1).move_port == port_toward(s, 0, 3));
    CHECK_FALSE(dm.at(3).move_port);  // the source agent never moves
    CHECK_FALSE(dm.at(2).move_port);
    CHECK_FALSE(dm.at(4).move_port);
    for (auto& [id, d] : dm) CHECK_FALSE(d.exp);
}

TEST_CASE("a visible hole in the source phase ends the run") {
    Snapshot s = snapshot_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, 8);
    auto agents = make_agents({{1, 0}, {2, 0}, {3, 1}});
    for (auto& a : agents) a.phase = true;
    ExpoAlgorithm algo;
    auto dm = algo.decide(s, agents, all_ids(agents), 2);
    for (auto& [id, d] : dm) CHECK(d.exp);
    REQUIRE(dm.at(1).move_port);  // minimum agent at the smallest labeled node fills it
    CHECK(*dm.at(1).move_port == port_toward(s, 0, 2));
    CHECK_FALSE(dm.at(2).move_port);
    CHECK_FALSE(dm.at(3).move_port);
}

TEST_CASE("inactive agents receive no decision") {
    Snapshot s = snapshot_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, 8);
    auto agents = make_agents({{1, 0}, {2, 0}, {3, 1}});
    ExpoAlgorithm algo;
    auto dm = algo.decide(s, agents, {1, 3}, 0);
    CHECK(dm.count(1));
    CHECK(dm.count(3));
    CHECK_FALSE(dm.count(2));
}

TEST_CASE("scatter variant: lone agents wander, anchored minima stay") {
    Snapshot s = snapshot_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 5);
    auto agents = make_agents({{1, 0}, {2, 0}, {3, 1}});
    ZeroHopScatter algo;
    auto dm = algo.decide(s, agents, all_ids(agents), 4);
    CHECK_FALSE(dm.at(1).move_port);  // minimum at a multinode anchors
    REQUIRE(dm.at(2).move_port);
    CHECK(*dm.at(2).move_port == (2 + 4) % s.deg(0));
    REQUIRE(dm.at(3).move_port);  // lone agent always moves
    CHECK(*dm.at(3).move_port == (3 + 4) % s.deg(1));
}

TEST_CASE("local variant fills a visible hole from a multinode") {
    Snapshot s = snapshot_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, 8);
    auto agents = make_agents({{1, 0}, {2, 0}, {3, 1}});
    OneHopF2F algo(1);
    auto dm = algo.decide(s, agents, all_ids(agents), 0);
    REQUIRE(dm.at(1).move_port);
    CHECK(*dm.at(1).move_port == port_toward(s, 0, 2));
    CHECK_FALSE(dm.at(3).move_port);  // singleton never abandons its node
}

TEST_CASE("greedy baseline walks surplus toward the nearest hole") {
    Snapshot s = snapshot_from_edges(4, {{0, 1}, {1, 2}, {2, 3}}, 7);
    auto agents = make_agents({{1, 0}, {2, 0}, {3, 1}, {4, 2}});
    GreedyBaseline algo;
    auto dm = algo.decide(s, agents, all_ids(agents), 0);
    REQUIRE(dm.at(2).move_port);
    CHECK(*dm.at(2).move_port == port_toward(s, 0, 1));
    CHECK_FALSE(dm.at(1).move_port);
    CHECK_FALSE(dm.at(4).move_port);
}

TEST_CASE("factory rejects unknown names") {
    CHECK(make_algorithm("expo", 1)->name() == "expo");
    CHECK(make_algorithm("zero_hop", 1)->name() == "zero_hop");
    CHECK(make_algorithm("one_hop_f2f", 2)->name() == "one_hop_f2f");
    CHECK(make_algorithm("greedy", 1)->name() == "greedy");
    CHECK_THROWS_AS(make_algorithm("nope", 1), std::invalid_argument);
}
