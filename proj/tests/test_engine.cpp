#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dynex/engine.hpp"

using namespace dynex;

namespace {

std::string run_trace(const Scenario& sc) {
    std::ostringstream out;
    run(sc, &out);
    return out.str();
}

}  // namespace

TEST_CASE("a solvable run covers the graph and terminates with agreement") {
    Scenario sc;  // n=5, k=7, p=1 default
    Metrics m = run(sc);
    CHECK(m.status == "all_exp");
    CHECK(m.explored);
    CHECK(m.visited == 5);
    CHECK(m.move_bound_ok);
    CHECK(m.all_exp_round >= m.explored_round);
    CHECK_FALSE(m.target);
}

TEST_CASE("identical scenarios produce byte-identical traces") {
    Scenario sc;
    sc.n = 6;
    sc.k = 11;
    sc.p = 1;
    sc.seed = 42;
    std::string a = run_trace(sc), b = run_trace(sc);
    CHECK(a == b);
    sc.seed = 43;
    CHECK(a != run_trace(sc));
}

TEST_CASE("replay accepts a faithful trace and pinpoints a tampered one") {
    Scenario sc;
    sc.seed = 7;
    std::string trace = run_trace(sc);
    {
        std::istringstream in(trace);
        auto rep = replay(in);
        CHECK(rep.ok);
    }
    // flip a digit in the third record
    std::vector<std::string> lines;
    std::istringstream split(trace);
    for (std::string line; std::getline(split, line);) lines.push_back(line);
    REQUIRE(lines.size() >= 3);
    auto pos = lines[2].find("\"moves\":");
    REQUIRE(pos != std::string::npos);
    lines[2][pos + 8] = lines[2][pos + 8] == '9' ? '8' : '9';
    std::string tampered;
    for (auto& l : lines) tampered += l + '\n';
    std::istringstream in(tampered);
    auto rep = replay(in);
    CHECK_FALSE(rep.ok);
    CHECK(rep.divergence_line == 3);
}

TEST_CASE("replay rejects garbage input") {
    std::istringstream empty("");
    CHECK_FALSE(replay(empty).ok);
    std::istringstream noise("{\"type\":\"round\"}\n");
    auto rep = replay(noise);
    CHECK_FALSE(rep.ok);
    CHECK(rep.divergence_line == 1);
}

TEST_CASE("scenario json round-trips and rejects bad configs") {
    Scenario sc;
    sc.n = 8;
    sc.k = 13;
    sc.p = 1;
    sc.placement = "random";
    Scenario back = Scenario::from_json(sc.to_json());
    CHECK(back.to_json() == sc.to_json());

    CHECK_THROWS_AS(Scenario::from_json({{"n", 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Scenario::from_json({{"bogus", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Scenario::from_json({{"n", "five"}}), std::invalid_argument);
    CHECK_THROWS_AS(Scenario::from_json({{"algorithm", "nope"}}), std::invalid_argument);
    CHECK_THROWS_AS(Scenario::from_json({{"density", 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(Scenario::from_json(nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("round limit defaults scale with the benign scheduler only") {
    Scenario sc;
    CHECK(sc.effective_max_rounds() == 10L * sc.k * sc.n);
    sc.adversary = "port_swap";
    CHECK(sc.effective_max_rounds() == 10000L);
    sc.max_rounds = 17;
    CHECK(sc.effective_max_rounds() == 17);
}

TEST_CASE("initial placement") {
    Scenario sc;
    sc.k = 9;
    auto stacked = initial_agents(sc);
    REQUIRE(stacked.size() == 9);
    for (int i = 0; i < 9; ++i) {
        CHECK(stacked[i].id == i + 1);
        CHECK(stacked[i].location == 0);
    }
    sc.placement = "random";
    auto a = initial_agents(sc), b = initial_agents(sc);
    for (int i = 0; i < 9; ++i) {
        CHECK(a[i].location == b[i].location);
        CHECK(a[i].location >= 0);
        CHECK(a[i].location < sc.n);
    }
}

TEST_CASE("fairness checker") {
    std::vector<AgentId> ids{1, 2};
    std::vector<std::set<AgentId>> d{{1}, {1}, {}, {1}};
    CHECK(check_fairness(d, ids, 2));
    CHECK_FALSE(check_fairness(d, ids, 1));
    CHECK(check_fairness({}, ids, 1));
}

TEST_CASE("a run that hits the limit without a protected node reports max_rounds") {
    Scenario sc;
    sc.algorithm = "zero_hop";  // never announces agreement
    sc.max_rounds = 20;
    Metrics m = run(sc);
    CHECK(m.status == "max_rounds");
    CHECK(m.rounds == 20);
}
