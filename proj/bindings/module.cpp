#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "dynex/engine.hpp"
#include "dynex/verify.hpp"

namespace py = pybind11;
using namespace dynex;

namespace {

nlohmann::json to_json(const py::dict& d) {
    return nlohmann::json::parse(
        py::module_::import("json").attr("dumps")(d).cast<std::string>());
}

py::object from_json(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_dynex, m) {
    m.doc() = "dynamic-graph exploration simulator core";

    m.def(
        "run",
        [](const py::dict& config, const py::object& trace_path) {
            Scenario sc = Scenario::from_json(to_json(config));
            Metrics metrics;
            if (trace_path.is_none()) {
                metrics = run(sc);
            } else {
                std::ofstream out(trace_path.cast<std::string>());
                if (!out) throw std::runtime_error("cannot open trace path");
                metrics = run(sc, &out);
            }
            return from_json(metrics.to_json());
        },
        py::arg("config"), py::arg("trace_path") = py::none(),
        "Run a scenario; returns the metrics dict, optionally writing a trace file.");

    m.def(
        "replay",
        [](const std::string& path) {
            std::ifstream in(path);
            if (!in) throw std::runtime_error("cannot open trace path");
            ReplayReport rep = replay(in);
            py::dict d;
            d["ok"] = rep.ok;
            d["divergence_line"] = rep.divergence_line;
            d["message"] = rep.message;
            return d;
        },
        py::arg("path"), "Re-run the scenario in a trace and compare byte-for-byte.");

    m.def(
        "verify",
        [](const std::string& suite) {
            VerifyResult r = run_verify_suite(suite);
            py::dict d;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            return d;
        },
        py::arg("suite"), "Run one named property suite.");

    m.def("verify_suites", [] { return verify_suite_names(); },
          "Names of the available property suites.");

    m.def("budget", &deactivation_budget, py::arg("k"), py::arg("n"),
          "Largest per-round deactivation count tolerable with k agents on n nodes.");

    m.def(
        "generate_snapshot",
        [](int n, std::uint64_t seed, double density, long round) {
            return from_json(generate_snapshot(n, seed, density, round).to_json());
        },
        py::arg("n"), py::arg("seed"), py::arg("density") = 0.3, py::arg("round") = 0,
        "Deterministically generate one connected port-labeled snapshot.");

    m.def(
        "default_config", [] { return from_json(Scenario{}.to_json()); },
        "The fully-defaulted scenario config as a dict.");
}
