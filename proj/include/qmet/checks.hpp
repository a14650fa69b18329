#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmet/instances.hpp"
#include "qmet/json_io.hpp"

namespace qmet {

// Result of one seeded property suite: per-property pass counts, plus
// the first counterexample found per property.
struct SuiteResult {
  std::string suite;
  long trials = 0;
  std::vector<std::pair<std::string, long>> pass_counts;
  struct Failure {
    std::string property;
    long trial;
    Json detail;
  };
  std::vector<Failure> failures;

  bool ok() const { return failures.empty(); }
  long passes(const std::string& property) const;
  Json to_json() const;
};

// Suites: axioms, duality, envelopes, monad, powerdomains, isometries,
// minimax, walley.  Each runs `trials` independent seeded rounds; when
// a space is supplied it replaces the generated one where applicable.
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, uint64_t seed, long trials,
                      const std::optional<QSpace>& space);

// "all": every suite in order, with per-suite derived seeds.
std::vector<SuiteResult> run_all_suites(uint64_t seed, long trials,
                                        const std::optional<QSpace>& space);

}  // namespace qmet
