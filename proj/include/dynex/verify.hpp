#pragma once

#include "dynex/engine.hpp"

namespace dynex {

struct VerifyResult {
    std::string name;
    bool pass = true;
    std::string detail;  // counterexample description when failing
};

/// Names accepted by run_verify_suite, in canonical order.
std::vector<std::string> verify_suite_names();

/// Runs one named property suite at its built-in desk scale. Throws
/// std::invalid_argument for an unknown name.
VerifyResult run_verify_suite(const std::string& name);

}  // namespace dynex
