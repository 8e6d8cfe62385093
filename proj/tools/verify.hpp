#pragma once

#include <json.hpp>
#include <padicheat/locally_constant.hpp>

#include "config.hpp"

namespace padicheat::cli {

struct VerifyResult {
  bool passed = false;
  nlohmann::json report;
};

/// Runs the invariant suites (certification, mass, positivity,
/// chapman-kolmogorov, contraction, strong-continuity, conservativity,
/// negdef, levy-probe, sampler) and assembles the JSON report.
VerifyResult run_verify(const RunConfig& config, unsigned threads);

/// The fixed nonnegative test function used by the semigroup suites.
LocallyConstantFn default_test_function(unsigned p, std::size_t n);

}  // namespace padicheat::cli
