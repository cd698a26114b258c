#include "dynex/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace dynex {

namespace {

struct ParsedTrace {
    Scenario scenario;
    std::vector<nlohmann::json> rounds;
    nlohmann::json summary;
};

ParsedTrace run_parsed(const Scenario& sc) {
    std::ostringstream out;
    run(sc, &out);
    ParsedTrace t;
    std::istringstream in(out.str());
    for (std::string line; std::getline(in, line);) {
        auto j = nlohmann::json::parse(line);
        if (j.at("type") == "header")
            t.scenario = Scenario::from_json(j.at("scenario"));
        else if (j.at("type") == "round")
            t.rounds.push_back(std::move(j));
        else
            t.summary = std::move(j);
    }
    return t;
}

std::string seed_note(const Scenario& sc, long round) {
    std::ostringstream os;
    os << "n=" << sc.n << " k=" << sc.k << " p=" << sc.p << " algo=" << sc.algorithm
       << " adv=" << sc.adversary << " seed=" << sc.seed;
    if (round >= 0) os << " round=" << round;
    return os.str();
}

std::vector<Scenario> positive_grid() {
    std::vector<Scenario> grid;
    for (auto [n, p] : {std::pair{5, 1}, {6, 1}, {8, 2}}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Scenario sc;
            sc.n = n;
            sc.p = p;
            sc.k = (n - 2) * (p + 1) + 1;
            sc.seed = seed;
            grid.push_back(sc);
        }
    }
    return grid;
}

std::vector<Scenario> construction_grid() {
    std::vector<Scenario> grid;
    Scenario a;
    a.n = 5;
    a.p = 1;
    a.k = 3 * 2;  // (n-2)(p+1): below the solvable threshold
    a.adversary = "clique_pendant";
    a.algorithm = "greedy";
    a.max_rounds = 300;
    grid.push_back(a);
    Scenario b;
    b.n = 9;
    b.p = 1;
    b.k = 7 * 2 + 1;
    b.adversary = "cstar_blocker";
    b.algorithm = "one_hop_f2f";
    b.max_rounds = 300;
    grid.push_back(b);
    Scenario c;
    c.n = 6;
    c.p = 1;
    c.k = 4 * 2 + 1;
    c.adversary = "port_swap";
    c.algorithm = "zero_hop";
    c.max_rounds = 300;
    grid.push_back(c);
    return grid;
}

VerifyResult suite_ports() {
    VerifyResult r{"ports", true, ""};
    for (int n = 3; n <= 12; ++n) {
        for (double density : {0.0, 0.3, 1.0}) {
            for (std::uint64_t seed = 1; seed <= 25; ++seed) {
                Snapshot s = generate_snapshot(n, mix_seed(seed, n), density, 7);
                auto rep = validate_snapshot(s);
                if (!rep.ok) {
                    r.pass = false;
                    r.detail = "invalid snapshot n=" + std::to_string(n) +
                               " seed=" + std::to_string(seed) + ": " + rep.violation;
                    return r;
                }
                if (Snapshot::from_json(s.to_json()).ports != s.ports) {
                    r.pass = false;
                    r.detail = "serialization round-trip changed ports";
                    return r;
                }
                for (NodeId v = 0; v < n; ++v)
                    for (int q = 0; q < s.deg(v); ++q) {
                        NodeId u = neighbor_via(s, v, q);
                        if (neighbor_via(s, u, port_toward(s, u, v)) != v) {
                            r.pass = false;
                            r.detail = "port inversion broken n=" + std::to_string(n) +
                                       " seed=" + std::to_string(seed);
                            return r;
                        }
                    }
            }
        }
    }
    return r;
}

VerifyResult suite_conservation() {
    VerifyResult r{"conservation", true, ""};
    for (auto& sc : positive_grid()) {
        auto t = run_parsed(sc);
        std::vector<int> prev_end;
        for (auto& rec : t.rounds) {
            auto s_counts = rec.at("start_counts").get<std::vector<int>>();
            auto e_counts = rec.at("end_counts").get<std::vector<int>>();
            auto total = [](const std::vector<int>& c) {
                return std::accumulate(c.begin(), c.end(), 0);
            };
            if (total(s_counts) != sc.k || total(e_counts) != sc.k) {
                r.pass = false;
                r.detail = "agent count drift: " + seed_note(sc, rec.at("round"));
                return r;
            }
            if (!prev_end.empty() && prev_end != s_counts) {
                r.pass = false;
                r.detail = "round boundary mismatch: " + seed_note(sc, rec.at("round"));
                return r;
            }
            prev_end = std::move(e_counts);
        }
    }
    return r;
}

VerifyResult suite_map_oracle() {
    VerifyResult r{"map-oracle", true, ""};
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        std::mt19937_64 rng(mix_seed(seed, 0xabcdefULL));
        int n = 3 + static_cast<int>(rng() % 10);  // n in [3,12]
        Snapshot s = generate_snapshot(n, rng(), 0.4, 0);
        int k = 1 + static_cast<int>(rng() % (3 * n));
        std::vector<AgentState> agents(k);
        for (int i = 0; i < k; ++i) {
            agents[i].id = i + 1;
            agents[i].location = static_cast<NodeId>(rng() % n);
            agents[i].p_est = static_cast<int>(rng() % 3);
        }
        std::set<AgentId> active;
        for (auto& a : agents)
            if (rng() % 3) active.insert(a.id);
        Configuration c = Configuration::from_agents(n, agents);
        std::vector<Broadcast> bs;
        for (auto& a : agents)
            if (active.count(a.id)) bs.push_back(phase1_collect(s, c, a));
        std::sort(bs.begin(), bs.end(),
                  [](auto& x, auto& y) { return x.info.id < y.info.id; });
        ReconstructedMap m = phase2_reconstruct(bs);

        auto fail = [&](const std::string& what) {
            r.pass = false;
            r.detail = what + " (seed=" + std::to_string(seed) + ")";
            return r;
        };

        // which real node does a map label live on?
        std::map<AgentId, NodeId> label_node;
        std::set<NodeId> active_nodes;
        for (NodeId v = 0; v < n; ++v)
            for (AgentId id : c.at[v])
                if (active.count(id)) active_nodes.insert(v);
        for (auto& nd : m.nodes) {
            for (auto& a : agents)
                if (a.id == nd.label) label_node[nd.label] = a.location;
        }
        if (m.nodes.size() != active_nodes.size()) return fail("node count mismatch");
        for (auto& nd : m.nodes) {
            NodeId v = label_node[nd.label];
            if (!active_nodes.count(v)) return fail("phantom map node");
            if (nd.ids != c.at[v]) return fail("resident set mismatch");
            std::vector<int> holes, inactives;
            for (int q = 0; q < s.deg(v); ++q) {
                NodeId u = s.ports[v][q];
                if (c.at[u].empty())
                    holes.push_back(q);
                else if (!active_nodes.count(u))
                    inactives.push_back(q);
            }
            if (nd.hole_ports != holes) return fail("hole annotation mismatch");
            std::vector<int> got;
            for (auto& [q, ids] : nd.inactive_ports) {
                got.push_back(q);
                if (ids != c.at[s.ports[v][q]]) return fail("inactive id set mismatch");
            }
            if (got != inactives) return fail("inactive annotation mismatch");
        }
        size_t expected_edges = 0;
        for (auto [a, b] : s.edges())
            if (active_nodes.count(a) && active_nodes.count(b)) ++expected_edges;
        if (m.edges.size() != expected_edges) return fail("edge count mismatch");
        for (auto& e : m.edges) {
            NodeId va = label_node[e.a], vb = label_node[e.b];
            if (s.ports[va][e.port_at_a] != vb || s.ports[vb][e.port_at_b] != va)
                return fail("edge port mismatch");
        }
        std::set<std::set<NodeId>> got_comps, want_comps;
        for (auto& nd : m.nodes) {
            std::set<NodeId> comp;
            for (AgentId lbl : m.component(nd.label)) comp.insert(label_node[lbl]);
            got_comps.insert(std::move(comp));
        }
        for (auto& comp : cca_oracle(s, c, active)) want_comps.insert(comp);
        if (got_comps != want_comps) return fail("component partition mismatch");

        long x = 0;
        std::set<NodeId> seen_hidden;
        for (NodeId v : active_nodes)
            for (AgentId id : c.at[v])
                if (!active.count(id)) ++x;
        std::set<std::vector<AgentId>> hidden_sets;
        for (NodeId v : active_nodes)
            for (NodeId u : s.ports[v])
                if (!c.at[u].empty() && !active_nodes.count(u) && !seen_hidden.count(u)) {
                    seen_hidden.insert(u);
                    x += static_cast<long>(c.at[u].size());
                    hidden_sets.insert(c.at[u]);
                }
        if (m.observed_inactive != x) return fail("observable-inactive count mismatch");
        if (m.tau != static_cast<int>(hidden_sets.size())) return fail("tau mismatch");
    }
    return r;
}

VerifyResult suite_lemma_key() {
    VerifyResult r{"lemma-key", true, ""};
    for (int n = 3; n <= 7; ++n) {
        for (int p = 1; p <= 2; ++p) {
            int threshold = (n - 2) * (p + 1) + 1;
            std::vector<int> c(n, 0);
            // odometer over count vectors with entries in [0, p+1]
            while (true) {
                int holes = 0, total = 0;
                for (int v : c) {
                    if (v == 0) ++holes;
                    total += v;
                }
                if (holes == 1 && total >= threshold) {
                    // two disjoint nodes coverable by <= p inactive agents?
                    int m1 = p + 2, m2 = p + 2;
                    for (int v : c)
                        if (v > 0) {
                            if (v < m1) {
                                m2 = m1;
                                m1 = v;
                            } else if (v < m2) {
                                m2 = v;
                            }
                        }
                    if (m1 + m2 <= p) {
                        r.pass = false;
                        std::ostringstream os;
                        os << "two hidden nodes possible at n=" << n << " p=" << p
                           << " counts=[";
                        for (int v : c) os << v << ' ';
                        os << "]";
                        r.detail = os.str();
                        return r;
                    }
                }
                int i = 0;
                while (i < n && c[i] == p + 1) c[i++] = 0;
                if (i == n) break;
                ++c[i];
            }
        }
    }
    return r;
}

VerifyResult suite_fairness() {
    VerifyResult r{"fairness", true, ""};
    auto grid = construction_grid();
    {
        Scenario sc;
        sc.n = 6;
        sc.p = 2;
        sc.k = 13;
        sc.max_rounds = 400;
        grid.push_back(sc);
    }
    for (auto& sc : grid) {
        auto t = run_parsed(sc);
        std::vector<std::set<AgentId>> deact;
        for (auto& rec : t.rounds)
            deact.push_back(rec.at("deactivated").get<std::set<AgentId>>());
        std::vector<AgentId> ids;
        for (int i = 1; i <= sc.k; ++i) ids.push_back(i);
        int f = sc.adversary == "random_fair" ? sc.fairness : 1;
        if (!check_fairness(deact, ids, f)) {
            r.pass = false;
            r.detail = "fairness window exceeded: " + seed_note(sc, -1);
            return r;
        }
    }
    return r;
}

VerifyResult suite_hole_monotone() {
    VerifyResult r{"hole-monotone", true, ""};
    for (auto& sc : positive_grid()) {
        auto t = run_parsed(sc);
        bool settled = false;
        int prev_holes = sc.n + 1;
        for (auto& rec : t.rounds) {
            if (!settled)
                for (auto& [id, d] : rec.at("decisions").items()) {
                    (void)id;
                    if (d.at("phase").get<bool>()) settled = true;
                }
            auto e_counts = rec.at("end_counts").get<std::vector<int>>();
            int holes = static_cast<int>(std::count(e_counts.begin(), e_counts.end(), 0));
            if (settled) {
                if (holes > prev_holes) {
                    r.pass = false;
                    r.detail = "hole count grew: " + seed_note(sc, rec.at("round"));
                    return r;
                }
                prev_holes = holes;
            }
        }
    }
    return r;
}

VerifyResult suite_p_soundness() {
    VerifyResult r{"p-soundness", true, ""};
    auto grid = positive_grid();
    for (auto& sc : grid) {
        auto t = run_parsed(sc);
        std::map<AgentId, int> last;
        for (auto& rec : t.rounds) {
            for (auto& [id, d] : rec.at("decisions").items()) {
                int pe = d.at("p").get<int>();
                AgentId a = std::stoi(id);
                if (pe > sc.p || pe < last[a]) {
                    r.pass = false;
                    r.detail = "p-estimate unsound: agent " + id + " " +
                               seed_note(sc, rec.at("round"));
                    return r;
                }
                last[a] = pe;
            }
        }
    }
    return r;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    return {"ports",    "conservation", "map-oracle",  "lemma-key",
            "fairness", "hole-monotone", "p-soundness"};
}

VerifyResult run_verify_suite(const std::string& name) {
    if (name == "ports") return suite_ports();
    if (name == "conservation") return suite_conservation();
    if (name == "map-oracle") return suite_map_oracle();
    if (name == "lemma-key") return suite_lemma_key();
    if (name == "fairness") return suite_fairness();
    if (name == "hole-monotone") return suite_hole_monotone();
    if (name == "p-soundness") return suite_p_soundness();
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace dynex
