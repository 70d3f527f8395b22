#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "esids/connection.hpp"
#include "esids/rule.hpp"

namespace esids {

// width: generality from the rule's own bounds. literal: per-record ratio sum
// averaged over the records the rule matches.
enum class HMode { width, literal };

// paper: matched anomalies only. penalized: matched anomalies minus
// beta x matched normals.
enum class MatchMode { paper, penalized };

enum class NegativeFloor { clamp_zero, allow_negative };

struct FitnessConfig {
  HMode h_mode = HMode::width;
  MatchMode match_mode = MatchMode::penalized;
  double beta = 1.0;
  NegativeFloor negative_floor = NegativeFloor::clamp_zero;

  // Throws ConfigError if beta < 0.
  void validate() const;
};

struct EvalResult {
  double match_score = 0.0;
  double generality = 0.0;
  double fitness = 0.0;
  std::size_t matched_anomalous = 0;
  std::size_t matched_normal = 0;

  bool operator==(const EvalResult&) const = default;
};

struct MatchScore {
  double score = 0.0;
  std::size_t matched_anomalous = 0;
  std::size_t matched_normal = 0;
};

struct DetectionMetrics {
  double detection_rate = 0.0;
  double false_positive_rate = 0.0;
};

// In width mode `matched` is ignored; in literal mode an empty list falls
// back to the width value. Always >= 3 and finite.
double generality(const Rule& r, HMode mode,
                  std::span<const ConnectionRecord> matched = {});

MatchScore match_score(const Rule& r, const Dataset& ds, MatchMode mode,
                       double beta);

// Combined score: fitness = match_score x generality, with the score floored
// at zero under clamp_zero.
EvalResult evaluate_rule(const Rule& r, const Dataset& ds,
                         const FitnessConfig& cfg);

// A record is flagged when any rule matches it. Ratios are 0 when their
// denominator is 0.
DetectionMetrics detection_metrics(std::span<const Rule> rules,
                                   const Dataset& ds);

}  // namespace esids
