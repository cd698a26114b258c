#include "dynex/engine.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace dynex {

long Scenario::effective_max_rounds() const {
    if (max_rounds > 0) return max_rounds;
    return adversary == "random_fair" ? 10L * k * n : 10000L;
}

void Scenario::validate() const {
    if (n < 3) throw std::invalid_argument("n must be >= 3");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (p < 0) throw std::invalid_argument("p must be >= 0");
    if (fairness < 1) throw std::invalid_argument("fairness must be >= 1");
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("density must be in [0,1]");
    if (max_rounds < 0) throw std::invalid_argument("max_rounds must be >= 0");
    if (move_bound_c <= 0.0) throw std::invalid_argument("move_bound_c must be positive");
    if (placement != "stacked" && placement != "random")
        throw std::invalid_argument("placement must be stacked or random");
    static const char* algos[] = {"expo", "zero_hop", "one_hop_f2f", "greedy"};
    if (std::find(std::begin(algos), std::end(algos), algorithm) == std::end(algos))
        throw std::invalid_argument("unknown algorithm: " + algorithm);
    static const char* advs[] = {"random_fair", "clique_pendant", "cstar_blocker",
                                 "port_swap"};
    if (std::find(std::begin(advs), std::end(advs), adversary) == std::end(advs))
        throw std::invalid_argument("unknown adversary: " + adversary);
}

nlohmann::json Scenario::to_json() const {
    return {{"adversary", adversary},
            {"algorithm", algorithm},
            {"density", density},
            {"fairness", fairness},
            {"k", k},
            {"max_rounds", max_rounds},
            {"move_bound_c", move_bound_c},
            {"n", n},
            {"p", p},
            {"placement", placement},
            {"seed", seed}};
}

Scenario Scenario::from_json(const nlohmann::json& j) {
    Scenario sc;
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    static const char* known[] = {"adversary", "algorithm", "density",  "fairness",
                                  "k",         "max_rounds", "move_bound_c", "n",
                                  "p",         "placement", "seed"};
    for (auto& [key, val] : j.items()) {
        (void)val;
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* s) { return key == s; }) == std::end(known))
            throw std::invalid_argument("unknown config field: " + key);
    }
    auto get = [&](const char* key, auto& out) {
        if (j.contains(key)) {
            try {
                out = j.at(key).get<std::decay_t<decltype(out)>>();
            } catch (const nlohmann::json::exception&) {
                throw std::invalid_argument(std::string("bad value for field: ") + key);
            }
        }
    };
    get("n", sc.n);
    get("k", sc.k);
    get("p", sc.p);
    get("algorithm", sc.algorithm);
    get("adversary", sc.adversary);
    get("seed", sc.seed);
    get("density", sc.density);
    get("fairness", sc.fairness);
    get("max_rounds", sc.max_rounds);
    get("placement", sc.placement);
    get("move_bound_c", sc.move_bound_c);
    sc.validate();
    return sc;
}

nlohmann::json Metrics::to_json() const {
    nlohmann::json j{{"all_exp_round", all_exp_round},
                     {"explored", explored},
                     {"explored_round", explored_round},
                     {"max_diameter", max_diameter},
                     {"max_p_est", max_p_est},
                     {"move_bound_ok", move_bound_ok},
                     {"moves", moves},
                     {"rounds", rounds},
                     {"status", status},
                     {"visited", visited}};
    if (target) {
        j["target"] = *target;
        j["target_visited"] = target_visited;
    }
    return j;
}

std::vector<AgentState> initial_agents(const Scenario& sc) {
    std::vector<AgentState> agents(sc.k);
    std::mt19937_64 rng(mix_seed(sc.seed, 0x9e3779b97f4a7c15ULL));
    std::uniform_int_distribution<int> node(0, sc.n - 1);
    for (int i = 0; i < sc.k; ++i) {
        agents[i].id = i + 1;
        agents[i].location = sc.placement == "random" ? node(rng) : 0;
    }
    return agents;
}

bool check_fairness(const std::vector<std::set<AgentId>>& deactivations,
                    const std::vector<AgentId>& ids, int fairness) {
    std::map<AgentId, int> streak;
    for (auto& round : deactivations) {
        for (AgentId id : ids) {
            if (round.count(id)) {
                if (++streak[id] > fairness) return false;
            } else {
                streak[id] = 0;
            }
        }
    }
    return true;
}

Metrics run(const Scenario& sc, std::ostream* trace) {
    sc.validate();
    auto algo = make_algorithm(sc.algorithm, sc.p);
    auto adv = make_adversary(sc.adversary, sc.n, sc.p, sc.seed, sc.density, sc.fairness);

    std::vector<AgentState> agents = initial_agents(sc);
    std::vector<char> visited(sc.n, 0);
    for (auto& a : agents) visited[a.location] = 1;

    Metrics m;
    auto visited_count = [&] {
        return static_cast<int>(std::count(visited.begin(), visited.end(), 1));
    };
    m.visited = visited_count();
    if (m.visited == sc.n) m.explored_round = 0;

    if (trace) {
        nlohmann::json h{{"scenario", sc.to_json()}, {"type", "header"}};
        *trace << h.dump() << '\n';
    }

    std::map<AgentId, int> streak;
    const long limit = sc.effective_max_rounds();
    for (long r = 0; r < limit; ++r) {
        AgentOracle oracle = [&](const Snapshot& s, const std::set<AgentId>& active) {
            return algo->decide(s, agents, active, r);
        };
        AdversaryDecision ad;
        try {
            ad = adv->decide(r, agents, oracle);
        } catch (const std::runtime_error& e) {
            throw AdversaryViolation(e.what());
        }
        auto rep = validate_snapshot(ad.snapshot);
        if (!rep.ok)
            throw AdversaryViolation("invalid snapshot at round " + std::to_string(r) +
                                     ": " + rep.violation);
        if (ad.snapshot.n != sc.n) throw AdversaryViolation("snapshot size mismatch");
        if (static_cast<int>(ad.deactivated.size()) > sc.p)
            throw AdversaryViolation("deactivation budget exceeded at round " +
                                     std::to_string(r));
        const int fbound = std::max(adv->fairness_bound(), 1);
        for (auto& a : agents) {
            if (ad.deactivated.count(a.id)) {
                if (++streak[a.id] > fbound)
                    throw AdversaryViolation("fairness window exceeded at round " +
                                             std::to_string(r));
            } else {
                streak[a.id] = 0;
            }
        }

        std::set<AgentId> active;
        for (auto& a : agents)
            if (!ad.deactivated.count(a.id)) active.insert(a.id);

        auto s_counts = Configuration::from_agents(sc.n, agents).counts();
        DecisionMap dm = algo->decide(ad.snapshot, agents, active, r);

        long round_moves = 0;
        nlohmann::json jdec = nlohmann::json::object();
        for (auto& a : agents) {
            auto it = dm.find(a.id);
            if (it == dm.end()) continue;
            const AgentDecision& d = it->second;
            a.p_est = d.p_est;
            a.exp = d.exp;
            a.src_id = d.src_id;
            a.phase = d.phase;
            if (d.move_port) {
                a.location = neighbor_via(ad.snapshot, a.location, *d.move_port);
                visited[a.location] = 1;
                ++round_moves;
            }
            m.max_p_est = std::max(m.max_p_est, a.p_est);
            if (trace) {
                nlohmann::json e{{"exp", d.exp}, {"p", d.p_est}, {"phase", d.phase}};
                if (d.move_port) e["move"] = *d.move_port;
                if (d.src_id) e["src"] = *d.src_id;
                jdec[std::to_string(a.id)] = std::move(e);
            }
        }
        m.moves += round_moves;
        m.rounds = r + 1;
        m.max_diameter = std::max(m.max_diameter, diameter(ad.snapshot));
        m.visited = visited_count();
        if (m.explored_round < 0 && m.visited == sc.n) {
            m.explored = true;
            m.explored_round = r;
        }

        if (trace) {
            auto e_counts = Configuration::from_agents(sc.n, agents).counts();
            nlohmann::json rec{{"deactivated", ad.deactivated},
                               {"decisions", jdec},
                               {"end_counts", e_counts},
                               {"meta", ad.meta},
                               {"moves", m.moves},
                               {"round", r},
                               {"snapshot", ad.snapshot.to_json()},
                               {"start_counts", s_counts},
                               {"type", "round"},
                               {"visited", m.visited}};
            *trace << rec.dump() << '\n';
        }

        bool all_exp = std::all_of(agents.begin(), agents.end(),
                                   [](const AgentState& a) { return a.exp; });
        if (all_exp) {
            m.all_exp_round = r;
            m.status = "all_exp";
            break;
        }
    }
    if (m.explored_round == 0) m.explored = true;
    m.target = adv->target();
    if (m.target) m.target_visited = visited[*m.target];
    if (m.status.empty())
        m.status = (m.target && !m.target_visited) ? "impossibility_hold" : "max_rounds";
    if (m.status == "all_exp")
        m.move_bound_ok =
            m.moves <= static_cast<long>(sc.move_bound_c * sc.k *
                                         std::max(m.max_diameter, 1));
    if (trace) {
        nlohmann::json s{{"metrics", m.to_json()}, {"type", "summary"}};
        *trace << s.dump() << '\n';
    }
    return m;
}

ReplayReport replay(std::istream& trace) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(trace, line);)
        if (!line.empty()) lines.push_back(line);
    ReplayReport rep;
    if (lines.empty()) {
        rep.ok = false;
        rep.message = "empty trace";
        return rep;
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(lines[0]);
        if (header.at("type") != "header") throw std::invalid_argument("not a header");
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.divergence_line = 1;
        rep.message = std::string("bad header: ") + e.what();
        return rep;
    }
    Scenario sc = Scenario::from_json(header.at("scenario"));
    std::ostringstream fresh;
    run(sc, &fresh);
    std::istringstream in(fresh.str());
    std::vector<std::string> expect;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) expect.push_back(line);
    for (size_t i = 0; i < std::max(lines.size(), expect.size()); ++i) {
        if (i >= lines.size() || i >= expect.size() || lines[i] != expect[i]) {
            rep.ok = false;
            rep.divergence_line = static_cast<long>(i + 1);
            rep.message = i >= lines.size()   ? "trace shorter than re-run"
                          : i >= expect.size() ? "trace longer than re-run"
                                               : "record mismatch";
            return rep;
        }
    }
    return rep;
}

}  // namespace dynex
