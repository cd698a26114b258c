#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynex/agents.hpp"

using namespace dynex;

TEST_CASE("deactivation budget matches the threshold arithmetic") {
    // k = (n-2)(p+1)+1 is exactly the count that tolerates budget p
    for (int n = 3; n <= 20; ++n)
        for (int p = 0; p <= 4; ++p) {
            int k = (n - 2) * (p + 1) + 1;
            CHECK(deactivation_budget(k, n) == p);
            if (p >= 1) CHECK(deactivation_budget(k - 1, n) == p - 1);
        }
    CHECK(deactivation_budget(7, 5) == 1);
    CHECK(deactivation_budget(19, 8) == 2);
}

TEST_CASE("budget preconditions") {
    CHECK_THROWS_AS(deactivation_budget(5, 2), std::invalid_argument);
    CHECK_THROWS_AS(deactivation_budget(3, 5), std::invalid_argument);
    CHECK(deactivation_budget(4, 5) == 0);  // k = n-1 is the exploration minimum
}

TEST_CASE("critical configuration recognizer") {
    CHECK(is_cstar({2, 2, 2, 1, 0}, 1));
    CHECK(is_cstar({0, 2, 1, 2, 2}, 1));          // order free
    CHECK(is_cstar({3, 3, 1, 0, 3}, 2));
    CHECK_FALSE(is_cstar({2, 2, 2, 1, 0}, 2));    // full nodes must hold p+1
    CHECK_FALSE(is_cstar({2, 2, 1, 1, 0}, 1));    // two singles
    CHECK_FALSE(is_cstar({2, 2, 2, 0, 0}, 1));    // two holes
    CHECK_FALSE(is_cstar({2, 2, 2, 1, 1}, 1));    // no hole
    CHECK_FALSE(is_cstar({4, 2, 2, 1, 0}, 1));    // an overfull node
    CHECK(is_cstar({1, 1, 1, 1, 0}, 0));          // p = 0 collapses to n-1 singles
    CHECK_FALSE(is_cstar({2, 1, 1, 0, 0}, 0));
}

TEST_CASE("configuration bookkeeping") {
    std::vector<AgentState> agents(5);
    int locs[] = {2, 0, 2, 2, 4};
    for (int i = 0; i < 5; ++i) {
        agents[i].id = 10 - i;  // unsorted ids on purpose
        agents[i].location = locs[i];
    }
    Configuration c = Configuration::from_agents(5, agents);
    CHECK(c.n() == 5);
    CHECK(c.k() == 5);
    CHECK(c.counts() == std::vector<int>{1, 0, 3, 0, 1});
    CHECK(c.holes() == std::vector<NodeId>{1, 3});
    CHECK(c.multinodes() == std::vector<NodeId>{2});
    CHECK(c.at[2] == std::vector<AgentId>{7, 8, 10});  // sorted residency
    CHECK(is_cstar(c, 2) == false);
}
