#include "dynex/agents.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dynex {

int Configuration::k() const {
    int total = 0;
    for (auto& ids : at) total += static_cast<int>(ids.size());
    return total;
}

std::vector<int> Configuration::counts() const {
    std::vector<int> c(at.size());
    for (size_t v = 0; v < at.size(); ++v) c[v] = static_cast<int>(at[v].size());
    return c;
}

std::vector<NodeId> Configuration::holes() const {
    std::vector<NodeId> h;
    for (size_t v = 0; v < at.size(); ++v)
        if (at[v].empty()) h.push_back(static_cast<NodeId>(v));
    return h;
}

std::vector<NodeId> Configuration::multinodes() const {
    std::vector<NodeId> m;
    for (size_t v = 0; v < at.size(); ++v)
        if (at[v].size() >= 2) m.push_back(static_cast<NodeId>(v));
    return m;
}

Configuration Configuration::from_agents(int n, const std::vector<AgentState>& agents) {
    Configuration c;
    c.at.assign(n, {});
    for (auto& a : agents) c.at[a.location].push_back(a.id);
    for (auto& ids : c.at) std::sort(ids.begin(), ids.end());
    return c;
}

nlohmann::json Configuration::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (size_t v = 0; v < at.size(); ++v) j.push_back({{"node", v}, {"agents", at[v]}});
    return j;
}

int deactivation_budget(int k, int n) {
    if (n < 3) throw std::invalid_argument("model requires n >= 3");
    if (k < n - 1) throw std::invalid_argument("below exploration lower bound (k >= n-1)");
    return (k - 1) / (n - 2) - 1;
}

bool is_cstar(const std::vector<int>& counts, int p) {
    int n = static_cast<int>(counts.size());
    int full = 0, single = 0, hole = 0;
    for (int c : counts) {
        if (c == 0) ++hole;
        else if (c == 1) ++single;
        else if (c == p + 1) ++full;
        else return false;
    }
    if (p == 0)  // multiset collapses to {1 x (n-1), 0}
        return single == n - 1 && hole == 1;
    return full == n - 2 && single == 1 && hole == 1;
}

bool is_cstar(const Configuration& c, int p) { return is_cstar(c.counts(), p); }

}  // namespace dynex
