// Command-line front end: single runs, parameter sweeps, property suites,
// trace replay, and trace summaries. Exit codes: 0 ok, 1 property failure,
// 2 config error, 3 adversary violation.
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dynex/verify.hpp"

namespace fs = std::filesystem;
using namespace dynex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProperty = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAdversary = 3;

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
}

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<long> max_rounds;
    std::optional<int> fairness;
};

void apply(const Overrides& o, Scenario& sc) {
    if (o.seed) sc.seed = *o.seed;
    if (o.max_rounds) sc.max_rounds = *o.max_rounds;
    if (o.fairness) sc.fairness = *o.fairness;
    sc.validate();
}

void print_summary_line(const Scenario& sc, const Metrics& m) {
    std::cout << "n=" << sc.n << " k=" << sc.k << " p=" << sc.p
              << " algo=" << sc.algorithm << " adv=" << sc.adversary
              << " seed=" << sc.seed << " rounds=" << m.rounds << " moves=" << m.moves
              << " visited=" << m.visited << "/" << sc.n << " D=" << m.max_diameter
              << " status=" << m.status << "\n";
}

int cmd_run(const std::string& config, const std::string& out_dir, const Overrides& o,
            bool print_config) {
    Scenario sc = Scenario::from_json(load_json(config));
    apply(o, sc);
    if (print_config) {
        std::cout << sc.to_json().dump(2) << "\n";
        return kExitOk;
    }
    std::ofstream trace;
    std::ostream* tp = nullptr;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        trace.open(fs::path(out_dir) / "trace.jsonl");
        if (!trace) throw std::invalid_argument("cannot write to: " + out_dir);
        tp = &trace;
    }
    Metrics m = run(sc, tp);
    print_summary_line(sc, m);
    if (!m.move_bound_ok) {
        std::cerr << "move bound violated: " << m.moves << " moves for k=" << sc.k
                  << " D=" << m.max_diameter << "\n";
        return kExitProperty;
    }
    return kExitOk;
}

struct SweepCell {
    Scenario base;
    std::vector<std::uint64_t> seeds;
};

int cmd_sweep(const std::string& config, const std::string& out_dir, const Overrides& o,
              int jobs) {
    nlohmann::json j = load_json(config);
    auto as_list = [&](const char* key, auto fallback) {
        std::vector<decltype(fallback)> vals;
        if (!j.contains(key)) {
            vals.push_back(fallback);
        } else if (j.at(key).is_array()) {
            for (auto& v : j.at(key)) vals.push_back(v.get<decltype(fallback)>());
        } else {
            vals.push_back(j.at(key).get<decltype(fallback)>());
        }
        return vals;
    };
    std::vector<int> ns = as_list("n", 5);
    std::vector<int> ps = as_list("p", 1);
    int num_seeds = j.value("seeds", 10);
    int k_offset = j.value("k_offset", 1);  // k = (n-2)(p+1) + k_offset
    Scenario base;
    base.algorithm = j.value("algorithm", base.algorithm);
    base.adversary = j.value("adversary", base.adversary);
    base.density = j.value("density", base.density);
    base.fairness = j.value("fairness", base.fairness);
    base.max_rounds = j.value("max_rounds", base.max_rounds);
    base.placement = j.value("placement", base.placement);
    base.move_bound_c = j.value("move_bound_c", base.move_bound_c);

    std::vector<SweepCell> cells;
    for (int n : ns)
        for (int p : ps) {
            SweepCell cell;
            cell.base = base;
            cell.base.n = n;
            cell.base.p = p;
            cell.base.k = (n - 2) * (p + 1) + k_offset;
            if (o.max_rounds) cell.base.max_rounds = *o.max_rounds;
            if (o.fairness) cell.base.fairness = *o.fairness;
            std::uint64_t s0 = o.seed.value_or(1);
            for (int i = 0; i < num_seeds; ++i) cell.seeds.push_back(s0 + i);
            cell.base.validate();
            cells.push_back(std::move(cell));
        }

    struct Row {
        int runs = 0, ok = 0;
        long moves = 0, rounds = 0;
        int max_p_est = 0;
        bool flagged = false;
    };
    std::vector<Row> rows(cells.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < cells.size(); i = next++) {
            Row& row = rows[i];
            for (std::uint64_t seed : cells[i].seeds) {
                Scenario sc = cells[i].base;
                sc.seed = seed;
                ++row.runs;
                try {
                    Metrics m = run(sc);
                    row.moves += m.moves;
                    row.rounds += m.rounds;
                    row.max_p_est = std::max(row.max_p_est, m.max_p_est);
                    if (m.status == "all_exp" && m.explored && m.move_bound_ok) ++row.ok;
                } catch (const AdversaryViolation&) {
                    row.flagged = true;
                }
            }
        }
    };
    int nthreads = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream table;
    table << "n\tp\tk\talgorithm\tadversary\truns\tsuccess_rate\tmean_moves\t"
             "mean_rounds\tmax_p_est\tflagged\n";
    for (size_t i = 0; i < cells.size(); ++i) {
        const Scenario& sc = cells[i].base;
        const Row& row = rows[i];
        table << sc.n << '\t' << sc.p << '\t' << sc.k << '\t' << sc.algorithm << '\t'
              << sc.adversary << '\t' << row.runs << '\t'
              << (row.runs ? static_cast<double>(row.ok) / row.runs : 0.0) << '\t'
              << (row.runs ? static_cast<double>(row.moves) / row.runs : 0.0) << '\t'
              << (row.runs ? static_cast<double>(row.rounds) / row.runs : 0.0) << '\t'
              << row.max_p_est << '\t' << (row.flagged ? "yes" : "no") << '\n';
    }
    std::cout << table.str();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream f(fs::path(out_dir) / "sweep.tsv");
        f << table.str();
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite) {
    std::vector<std::string> names =
        suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
    bool ok = true;
    for (auto& name : names) {
        VerifyResult r = run_verify_suite(name);
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << " — " << r.detail;
        std::cout << "\n";
        ok &= r.pass;
    }
    return ok ? kExitOk : kExitProperty;
}

int cmd_replay(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open trace: " + path);
    ReplayReport rep = replay(in);
    if (rep.ok) {
        std::cout << "replay ok: " << path << "\n";
        return kExitOk;
    }
    std::cout << "replay divergence at line " << rep.divergence_line << ": "
              << rep.message << "\n";
    return kExitProperty;
}

int cmd_summarize(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir);
    std::vector<fs::path> traces;
    for (auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".jsonl") traces.push_back(entry.path());
    std::sort(traces.begin(), traces.end());
    std::cout << "file\tn\tk\tp\talgorithm\tadversary\trounds\tmoves\tvisited\tstatus\n";
    for (auto& path : traces) {
        std::ifstream in(path);
        std::string line, last, first;
        while (std::getline(in, line))
            if (!line.empty()) {
                if (first.empty()) first = line;
                last = line;
            }
        if (first.empty()) continue;
        auto header = nlohmann::json::parse(first);
        auto summary = nlohmann::json::parse(last);
        if (header.value("type", "") != "header" || summary.value("type", "") != "summary")
            throw std::invalid_argument("malformed trace: " + path.string());
        auto& sc = header.at("scenario");
        auto& m = summary.at("metrics");
        std::cout << path.filename().string() << '\t' << sc.at("n").get<int>() << '\t'
                  << sc.at("k").get<int>() << '\t' << sc.at("p").get<int>() << '\t'
                  << sc.at("algorithm").get<std::string>() << '\t'
                  << sc.at("adversary").get<std::string>() << '\t'
                  << m.at("rounds").get<long>() << '\t' << m.at("moves").get<long>()
                  << '\t' << m.at("visited").get<int>() << '\t'
                  << m.at("status").get<std::string>() << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic simulator for agent exploration of dynamic graphs"};
    app.require_subcommand(1);

    std::string config, out_dir, suite = "all", trace_path, summarize_dir;
    Overrides o;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    bool print_config = false;

    std::uint64_t seed_val = 0;
    long max_rounds_val = 0;
    int fairness_val = 0;
    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* copt = cmd->add_option("--config", config, "scenario config (JSON)");
        if (needs_config) copt->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed_val, "seed override")
            ->each([&](const std::string&) { o.seed = seed_val; });
        cmd->add_option("--max-rounds", max_rounds_val, "round cap override")
            ->each([&](const std::string&) { o.max_rounds = max_rounds_val; });
        cmd->add_option("--fairness", fairness_val, "fairness window override")
            ->each([&](const std::string&) { o.fairness = fairness_val; });
        cmd->add_option("--jobs", jobs, "worker threads for sweeps");
        cmd->add_flag("--print-config", print_config,
                      "print the resolved config and exit");
    };

    auto* c_run = app.add_subcommand("run", "run one scenario");
    add_common(c_run, true);
    auto* c_sweep = app.add_subcommand("sweep", "run a scenario grid");
    add_common(c_sweep, true);
    auto* c_verify = app.add_subcommand("verify", "run property suites");
    c_verify->add_option("suite", suite, "suite name or 'all'");
    auto* c_replay = app.add_subcommand("replay", "re-execute and compare a trace");
    c_replay->add_option("trace", trace_path, "trace file")->required()
        ->check(CLI::ExistingFile);
    auto* c_summarize = app.add_subcommand("summarize", "tabulate traces in a directory");
    c_summarize->add_option("dir", summarize_dir, "directory of .jsonl traces")
        ->required();

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(c_run)) return cmd_run(config, out_dir, o, print_config);
        if (app.got_subcommand(c_sweep)) return cmd_sweep(config, out_dir, o, jobs);
        if (app.got_subcommand(c_verify)) return cmd_verify(suite);
        if (app.got_subcommand(c_replay)) return cmd_replay(trace_path);
        if (app.got_subcommand(c_summarize)) return cmd_summarize(summarize_dir);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    } catch (const AdversaryViolation& e) {
        std::cerr << "adversary violation: " << e.what() << "\n";
        return kExitAdversary;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProperty;
    }
    return kExitOk;
}
