#include "esids/fitness.hpp"

#include <algorithm>

#include "esids/error.hpp"

namespace esids {

namespace {

double width_term(const BoundPair& p) {
  return static_cast<double>(p.high + 1) / static_cast<double>(p.low + 1);
}

double ratio_pair(const BoundPair& p, std::uint64_t y) {
  return static_cast<double>(y + 1) / static_cast<double>(p.low + 1) +
         static_cast<double>(p.high + 1) / static_cast<double>(y + 1);
}

}  // namespace

void FitnessConfig::validate() const {
  if (beta < 0.0) throw ConfigError("beta must be >= 0");
}

double generality(const Rule& r, HMode mode,
                  std::span<const ConnectionRecord> matched) {
  if (mode == HMode::literal && !matched.empty()) {
    double total = 0.0;
    for (const auto& c : matched) {
      total += ratio_pair(r.src_ip_range, c.src_ip) +
               ratio_pair(r.dst_ip_range, c.dst_ip) +
               ratio_pair(r.dst_port_range, c.dst_port);
    }
    return total / static_cast<double>(matched.size());
  }
  return width_term(r.src_ip_range) + width_term(r.dst_ip_range) +
         width_term(r.dst_port_range);
}

MatchScore match_score(const Rule& r, const Dataset& ds, MatchMode mode,
                       double beta) {
  MatchScore ms;
  for (const auto& rec : ds.records()) {
    if (!matches(r, rec)) continue;
    if (rec.label == Label::anomalous)
      ++ms.matched_anomalous;
    else
      ++ms.matched_normal;
  }
  ms.score = static_cast<double>(ms.matched_anomalous);
  if (mode == MatchMode::penalized)
    ms.score -= beta * static_cast<double>(ms.matched_normal);
  return ms;
}

EvalResult evaluate_rule(const Rule& r, const Dataset& ds,
                         const FitnessConfig& cfg) {
  EvalResult res;
  std::vector<ConnectionRecord> matched;
  for (const auto& rec : ds.records()) {
    if (!matches(r, rec)) continue;
    if (rec.label == Label::anomalous)
      ++res.matched_anomalous;
    else
      ++res.matched_normal;
    if (cfg.h_mode == HMode::literal) matched.push_back(rec);
  }
  res.match_score = static_cast<double>(res.matched_anomalous);
  if (cfg.match_mode == MatchMode::penalized)
    res.match_score -= cfg.beta * static_cast<double>(res.matched_normal);
  res.generality = generality(r, cfg.h_mode, matched);
  const double score = cfg.negative_floor == NegativeFloor::clamp_zero
                           ? std::max(0.0, res.match_score)
                           : res.match_score;
  res.fitness = score * res.generality;
  return res;
}

DetectionMetrics detection_metrics(std::span<const Rule> rules,
                                   const Dataset& ds) {
  std::size_t flagged_anomalous = 0;
  std::size_t flagged_normal = 0;
  for (const auto& rec : ds.records()) {
    const bool hit = std::any_of(rules.begin(), rules.end(),
                                 [&](const Rule& r) { return matches(r, rec); });
    if (!hit) continue;
    if (rec.label == Label::anomalous)
      ++flagged_anomalous;
    else
      ++flagged_normal;
  }
  DetectionMetrics m;
  if (ds.n_anomalous() > 0)
    m.detection_rate = static_cast<double>(flagged_anomalous) /
                       static_cast<double>(ds.n_anomalous());
  if (ds.n_normal() > 0)
    m.false_positive_rate = static_cast<double>(flagged_normal) /
                            static_cast<double>(ds.n_normal());
  return m;
}

}  // namespace esids
