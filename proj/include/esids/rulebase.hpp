#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esids/es.hpp"
#include "esids/fitness.hpp"
#include "esids/json.hpp"
#include "esids/rule.hpp"

namespace esids {

// How a rule was found: its evaluation on the residual dataset of the
// covering iteration that produced it, plus that iteration's derived seed.
struct RuleProvenance {
  double fitness = 0.0;
  std::size_t matched_anomalous = 0;
  std::size_t matched_normal = 0;
  std::size_t generation_found = 0;
  std::uint64_t seed = 0;

  bool operator==(const RuleProvenance&) const = default;
};

struct RuleEntry {
  Rule rule;
  RuleProvenance provenance;

  bool operator==(const RuleEntry&) const = default;
};

struct RuleBase {
  std::vector<RuleEntry> rules;

  bool operator==(const RuleBase&) const = default;
};

struct CoveringConfig {
  std::size_t max_rules = 10;
  double target_coverage = 0.95;
  // New anomalous records a candidate must cover to be accepted.
  std::size_t min_new_coverage = 1;

  void validate() const;
};

struct CoveringIteration {
  std::size_t iteration = 0;
  std::uint64_t seed = 0;
  bool accepted = false;
  std::size_t new_coverage = 0;
  std::size_t covered_after = 0;
  std::vector<TraceRow> trace;
};

struct CoveringResult {
  RuleBase rulebase;
  std::vector<CoveringIteration> iterations;
  std::size_t total_anomalous = 0;
  std::size_t covered = 0;

  double coverage() const {
    return total_anomalous == 0
               ? 1.0
               : static_cast<double>(covered) /
                     static_cast<double>(total_anomalous);
  }
};

// Repeats: evolve one rule on the residual dataset (anomalies already
// covered removed, all normals kept), accept it when it covers at least
// min_new_coverage new anomalies, mark its catches as covered. Stops on
// target coverage, max_rules, or the first rejected candidate. Iteration i
// runs with derive_seed(ecfg.seed, i).
CoveringResult sequential_covering(const CoveringConfig& ccfg,
                                   const EsConfig& ecfg,
                                   const FitnessConfig& fcfg,
                                   const Dataset& ds);

struct Verdict {
  bool flagged = false;
  // Index of the first matching rule when flagged.
  std::optional<std::size_t> rule_index;
};

std::vector<Verdict> apply_rulebase(const RuleBase& rb, const Dataset& ds);

std::vector<Rule> rules_of(const RuleBase& rb);

DetectionMetrics rulebase_metrics(const RuleBase& rb, const Dataset& ds);

Json rulebase_to_json(const RuleBase& rb);

// Throws ParseError naming the offending field path.
RuleBase rulebase_from_json(const Json& j);

// Two-space indented JSON with a trailing newline; stable byte-for-byte for
// equal rule bases.
std::string rulebase_to_string(const RuleBase& rb);

void save_rulebase_file(const std::string& path, const RuleBase& rb);
RuleBase load_rulebase_file(const std::string& path);

// Header + one row per generation per covering iteration:
// iteration,generation,best_fitness,mean_fitness,sigma,successes
std::string covering_trace_csv(const std::vector<CoveringIteration>& iterations);

}  // namespace esids
