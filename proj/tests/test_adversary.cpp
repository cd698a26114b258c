#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dynex/engine.hpp"

using namespace dynex;

namespace {

struct Tracked {
    Metrics metrics;
    std::vector<nlohmann::json> rounds;
};

Tracked run_tracked(const Scenario& sc) {
    std::ostringstream out;
    Tracked t;
    t.metrics = run(sc, &out);
    std::istringstream in(out.str());
    for (std::string line; std::getline(in, line);) {
        auto j = nlohmann::json::parse(line);
        if (j.at("type") == "round") t.rounds.push_back(std::move(j));
    }
    return t;
}

std::vector<std::set<AgentId>> deactivations(const Tracked& t) {
    std::vector<std::set<AgentId>> d;
    for (auto& rec : t.rounds) d.push_back(rec.at("deactivated").get<std::set<AgentId>>());
    return d;
}

int snapshot_degree(const nlohmann::json& rec, NodeId v) {
    return static_cast<int>(rec.at("snapshot").at("ports").at(v).size());
}

}  // namespace

TEST_CASE("pendant construction: the target hangs off a frozen or empty node") {
    for (auto algo : {"greedy", "expo"}) {
        Scenario sc;
        sc.n = 6;
        sc.p = 1;
        sc.k = 8;  // (n-2)(p+1): below the solvable threshold
        sc.adversary = "clique_pendant";
        sc.algorithm = algo;
        sc.max_rounds = 500;
        auto t = run_tracked(sc);
        REQUIRE(t.metrics.target);
        NodeId target = *t.metrics.target;
        CHECK_FALSE(t.metrics.target_visited);
        for (auto& rec : t.rounds) {
            CHECK(snapshot_degree(rec, target) == 1);
            CHECK(rec.at("deactivated").size() <= 1);
            CHECK(rec.at("end_counts").at(target).get<int>() == 0);
        }
        std::vector<AgentId> ids;
        for (int i = 1; i <= sc.k; ++i) ids.push_back(i);
        CHECK(check_fairness(deactivations(t), ids, 1));
    }
}

TEST_CASE("path construction against local communication never yields the critical form") {
    for (int n : {9, 10}) {
        Scenario sc;
        sc.n = n;
        sc.p = 1;
        sc.k = (n - 2) * 2 + 1;
        sc.adversary = "cstar_blocker";
        sc.algorithm = "one_hop_f2f";
        sc.max_rounds = 500;
        auto t = run_tracked(sc);
        REQUIRE(t.metrics.target);
        NodeId target = *t.metrics.target;
        CHECK_FALSE(t.metrics.target_visited);
        CHECK(t.metrics.status == "impossibility_hold");
        for (auto& rec : t.rounds) {
            CHECK(snapshot_degree(rec, target) == 1);
            auto e = rec.at("end_counts").get<std::vector<int>>();
            CHECK_FALSE(is_cstar(e, sc.p));
        }
        std::vector<AgentId> ids;
        for (int i = 1; i <= sc.k; ++i) ids.push_back(i);
        CHECK(check_fairness(deactivations(t), ids, 1));
    }
}

TEST_CASE("the local-communication construction requires nine nodes") {
    CHECK_THROWS_AS(CstarBlocker(8, 1, 1), std::invalid_argument);
}

TEST_CASE("port swapping defeats blind agents on a path") {
    for (int n : {5, 8}) {
        Scenario sc;
        sc.n = n;
        sc.p = 1;
        sc.k = (n - 2) * 2 + 1;
        sc.adversary = "port_swap";
        sc.algorithm = "zero_hop";
        sc.max_rounds = 500;
        auto t = run_tracked(sc);
        REQUIRE(t.metrics.target);
        NodeId target = *t.metrics.target;
        CHECK_FALSE(t.metrics.target_visited);
        CHECK(t.metrics.status == "impossibility_hold");
        bool saw_swap = false;
        for (auto& rec : t.rounds) {
            // always a path: n-1 edges, max degree two
            int edges = 0;
            for (NodeId v = 0; v < n; ++v) {
                int deg = snapshot_degree(rec, v);
                CHECK(deg <= 2);
                edges += deg;
            }
            CHECK(edges == 2 * (n - 1));
            CHECK(snapshot_degree(rec, target) == 1);
            auto& meta = rec.at("meta");
            if (meta.at("swapped").get<bool>()) {
                saw_swap = true;
                CHECK(meta.at("y").get<int>() == 1);
                CHECK(rec.at("end_counts").at(target).get<int>() == 0);
            }
        }
        // larger paths keep a spare hole, so the rewire alone suffices there
        if (n == 5) CHECK(saw_swap);
    }
}

TEST_CASE("the benign scheduler honors budget and fairness window") {
    Scenario sc;
    sc.n = 6;
    sc.p = 2;
    sc.k = 13;
    sc.fairness = 2;
    sc.max_rounds = 200;
    auto t = run_tracked(sc);
    for (auto& rec : t.rounds) CHECK(rec.at("deactivated").size() <= 2);
    std::vector<AgentId> ids;
    for (int i = 1; i <= sc.k; ++i) ids.push_back(i);
    CHECK(check_fairness(deactivations(t), ids, 2));
}

TEST_CASE("adversary factory") {
    CHECK(make_adversary("random_fair", 5, 1, 1, 0.3, 5)->name() == "random_fair");
    CHECK(make_adversary("clique_pendant", 5, 1, 1, 0.3, 5)->fairness_bound() == 1);
    CHECK_THROWS_AS(make_adversary("nope", 5, 1, 1, 0.3, 5), std::invalid_argument);
}
