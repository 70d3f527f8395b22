#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "esids/error.hpp"
#include "esids/fitness.hpp"
#include "esids/rule.hpp"

using namespace esids;

namespace {

Rule rule_of(BoundPair src, BoundPair dst, BoundPair port) {
  Rule r;
  r.src_ip_range = src;
  r.dst_ip_range = dst;
  r.dst_port_range = port;
  r.action = kDefaultAction;
  return r;
}

ConnectionRecord record_of(std::uint32_t src, std::uint32_t dst,
                           std::uint16_t port, Label label) {
  ConnectionRecord c;
  c.src_ip = src;
  c.dst_ip = dst;
  c.dst_port = port;
  c.label = label;
  return c;
}

// Records with all three matched attributes inside [0, n).
Dataset tiny_dataset(std::uint32_t n) {
  std::vector<ConnectionRecord> recs;
  for (std::uint32_t s = 0; s < n; ++s)
    for (std::uint32_t d = 0; d < n; ++d)
      for (std::uint16_t p = 0; p < n; ++p)
        recs.push_back(record_of(
            s, d, p, (s + d + p) % 2 ? Label::anomalous : Label::normal));
  return Dataset(std::move(recs));
}

}  // namespace

TEST_CASE("width generality of the degenerate rule is exactly 3") {
  CHECK(generality(rule_of({0, 0}, {0, 0}, {0, 0}), HMode::width) == 3.0);
}

TEST_CASE("width generality of the full universe is exact") {
  const auto full =
      rule_of({0, 4294967295ULL}, {0, 4294967295ULL}, {0, 65535});
  CHECK(generality(full, HMode::width) == 8590000128.0);
}

TEST_CASE("width generality sums the three per-range ratios") {
  // (9+1)/(4+1) + (99+1)/(9+1) + (20+1)/(20+1) = 2 + 10 + 1
  CHECK(generality(rule_of({4, 9}, {9, 99}, {20, 20}), HMode::width) == 13.0);
}

TEST_CASE("width generality grows when any bound widens") {
  const auto base = rule_of({10, 20}, {30, 40}, {5, 9});
  const double h0 = generality(base, HMode::width);
  CHECK(generality(rule_of({9, 20}, {30, 40}, {5, 9}), HMode::width) > h0);
  CHECK(generality(rule_of({10, 21}, {30, 40}, {5, 9}), HMode::width) > h0);
  CHECK(generality(rule_of({10, 20}, {30, 40}, {5, 10}), HMode::width) > h0);
}

TEST_CASE("generality is always finite and at least 3") {
  std::vector<Rule> rules = {
      rule_of({0, 0}, {0, 0}, {0, 0}),
      rule_of({4294967295ULL, 4294967295ULL}, {0, 0}, {65535, 65535}),
      rule_of({0, 4294967295ULL}, {0, 4294967295ULL}, {0, 65535}),
      rule_of({1, 2}, {3, 4}, {5, 6}),
  };
  std::vector<ConnectionRecord> recs = {
      record_of(0, 0, 0, Label::anomalous),
      record_of(4294967295u, 4294967295u, 65535, Label::anomalous)};
  for (const auto& r : rules) {
    for (const auto mode : {HMode::width, HMode::literal}) {
      const double h = generality(r, mode, recs);
      CHECK(std::isfinite(h));
      CHECK(h >= 3.0);
    }
  }
}

TEST_CASE("literal generality follows the per-record ratio formula") {
  // Rule [0,99]^3 and a single matched record y = (49,49,49):
  // each attribute contributes (49+1)/(0+1) + (99+1)/(49+1) = 50 + 2.
  const auto r = rule_of({0, 99}, {0, 99}, {0, 99});
  std::vector<ConnectionRecord> one = {record_of(49, 49, 49, Label::anomalous)};
  CHECK(generality(r, HMode::literal, one) == doctest::Approx(156.0));
}

TEST_CASE("literal generality averages over the matched records") {
  const auto r = rule_of({0, 99}, {0, 99}, {0, 99});
  // y = (0,0,0): 3 * ((0+1)/1 + 100/1) = 303.
  // y = (99,99,99): 3 * (100/1 + 100/100) = 303.
  // y = (49,49,49): 156. Mean = (303 + 303 + 156) / 3 = 254.
  std::vector<ConnectionRecord> recs = {
      record_of(0, 0, 0, Label::anomalous),
      record_of(99, 99, 99, Label::anomalous),
      record_of(49, 49, 49, Label::anomalous)};
  CHECK(generality(r, HMode::literal, recs) == doctest::Approx(254.0));
}

TEST_CASE("literal generality with no matched records falls back to width") {
  const auto r = rule_of({4, 9}, {9, 99}, {20, 20});
  CHECK(generality(r, HMode::literal, {}) ==
        generality(r, HMode::width));
}

TEST_CASE("match score counts matched labels") {
  // 3 anomalous + 2 normal; the rule matches 2 anomalous and 1 normal.
  Dataset ds(std::vector<ConnectionRecord>{
      record_of(10, 10, 10, Label::anomalous),
      record_of(11, 10, 10, Label::anomalous),
      record_of(99, 99, 99, Label::anomalous),
      record_of(10, 10, 11, Label::normal),
      record_of(50, 50, 50, Label::normal),
  });
  const auto r = rule_of({10, 11}, {10, 10}, {10, 11});

  const auto paper = match_score(r, ds, MatchMode::paper, 1.0);
  CHECK(paper.matched_anomalous == 2);
  CHECK(paper.matched_normal == 1);
  CHECK(paper.score == 2.0);

  const auto pen1 = match_score(r, ds, MatchMode::penalized, 1.0);
  CHECK(pen1.score == 1.0);
  CHECK(match_score(r, ds, MatchMode::penalized, 2.0).score == 0.0);
  CHECK(match_score(r, ds, MatchMode::penalized, 0.5).score == 1.5);
}

TEST_CASE("evaluate_rule multiplies score by generality and floors at zero") {
  Dataset ds(std::vector<ConnectionRecord>{
      record_of(10, 10, 10, Label::anomalous),
      record_of(10, 10, 10, Label::normal),
      record_of(10, 10, 10, Label::normal),
  });
  const auto r = rule_of({10, 10}, {10, 10}, {10, 10});

  FitnessConfig cfg;  // penalized, beta 1, clamp_zero, width
  cfg.validate();
  auto res = evaluate_rule(r, ds, cfg);
  CHECK(res.matched_anomalous == 1);
  CHECK(res.matched_normal == 2);
  CHECK(res.match_score == -1.0);  // raw score reported, floor hits fitness
  CHECK(res.fitness == 0.0);

  cfg.negative_floor = NegativeFloor::allow_negative;
  res = evaluate_rule(r, ds, cfg);
  CHECK(res.match_score == -1.0);
  CHECK(res.fitness == doctest::Approx(-1.0 * res.generality));

  cfg.match_mode = MatchMode::paper;
  res = evaluate_rule(r, ds, cfg);
  CHECK(res.match_score == 1.0);
  CHECK(res.generality == doctest::Approx(generality(r, HMode::width)));
  CHECK(res.fitness == doctest::Approx(res.generality));
}

TEST_CASE("a two-anomaly degenerate match scores exactly 6") {
  Dataset ds(std::vector<ConnectionRecord>{
      record_of(0, 0, 0, Label::anomalous),
      record_of(0, 0, 0, Label::anomalous),
  });
  FitnessConfig cfg;
  const auto res = evaluate_rule(rule_of({0, 0}, {0, 0}, {0, 0}), ds, cfg);
  CHECK(res.fitness == 6.0);  // score 2 x width 3
}

TEST_CASE("empty dataset evaluates to all zeros") {
  FitnessConfig cfg;
  const auto res =
      evaluate_rule(rule_of({0, 10}, {0, 10}, {0, 10}), Dataset{}, cfg);
  CHECK(res.match_score == 0.0);
  CHECK(res.fitness == 0.0);
  CHECK(res.matched_anomalous == 0);
  CHECK(res.matched_normal == 0);
}

TEST_CASE("a rule matching nothing annihilates the fitness") {
  Dataset ds(std::vector<ConnectionRecord>{
      record_of(100, 100, 100, Label::anomalous)});
  FitnessConfig cfg;
  cfg.match_mode = MatchMode::paper;
  const auto res = evaluate_rule(rule_of({0, 1}, {0, 1}, {0, 1}), ds, cfg);
  CHECK(res.fitness == 0.0);
}

TEST_CASE("paper mode makes the full universe a global maximum") {
  // Exhaustive check on the 0-7 cube: no rule beats the one that matches
  // every anomaly with maximal width. Score is monotone in coverage and H is
  // monotone in width, so the widest all-matching rule must win.
  const auto ds = tiny_dataset(8);
  FitnessConfig cfg;
  cfg.match_mode = MatchMode::paper;
  const auto full =
      rule_of({0, 4294967295ULL}, {0, 4294967295ULL}, {0, 65535});
  const double best = evaluate_rule(full, ds, cfg).fitness;
  for (std::uint64_t sl = 0; sl < 8; ++sl)
    for (std::uint64_t sh = sl; sh < 8; ++sh)
      for (std::uint64_t dl = 0; dl < 8; ++dl)
        for (std::uint64_t dh = dl; dh < 8; ++dh)
          for (std::uint64_t pl = 0; pl < 8; ++pl)
            for (std::uint64_t ph = pl; ph < 8; ++ph) {
              const auto r = rule_of({sl, sh}, {dl, dh}, {pl, ph});
              CHECK(evaluate_rule(r, ds, cfg).fitness <= best);
            }
}

TEST_CASE("penalized mode can prefer a tight rule over the universe") {
  // One tight anomaly cluster amid many normals: matching everything pays
  // the beta penalty for every normal and loses to the cluster-only rule.
  std::vector<ConnectionRecord> recs;
  for (std::uint32_t i = 0; i < 10; ++i)
    recs.push_back(record_of(i, i, i, Label::anomalous));
  for (std::uint32_t i = 0; i < 500; ++i)
    recs.push_back(record_of(1000 + i, 1000 + i, 100, Label::normal));
  Dataset ds(std::move(recs));

  FitnessConfig cfg;  // penalized, beta 1
  const auto tight = rule_of({0, 9}, {0, 9}, {0, 9});
  const auto full =
      rule_of({0, 4294967295ULL}, {0, 4294967295ULL}, {0, 65535});
  CHECK(evaluate_rule(tight, ds, cfg).fitness >
        evaluate_rule(full, ds, cfg).fitness);
  CHECK(evaluate_rule(full, ds, cfg).fitness == 0.0);
}

TEST_CASE("fitness config rejects a negative beta") {
  FitnessConfig cfg;
  cfg.beta = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.beta = 0.0;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("detection metrics on an empty dataset are zero") {
  const auto m = detection_metrics({}, Dataset{});
  CHECK(m.detection_rate == 0.0);
  CHECK(m.false_positive_rate == 0.0);
}

TEST_CASE("detection metrics for a perfect rulebase") {
  Dataset ds(std::vector<ConnectionRecord>{
      record_of(10, 10, 10, Label::anomalous),
      record_of(11, 11, 11, Label::anomalous),
      record_of(90, 90, 90, Label::normal),
  });
  const std::vector<Rule> rules = {rule_of({10, 11}, {10, 11}, {10, 11})};
  const auto m = detection_metrics(rules, ds);
  CHECK(m.detection_rate == 1.0);
  CHECK(m.false_positive_rate == 0.0);
}

TEST_CASE("detection metrics agree with a hand scan") {
  Dataset ds(std::vector<ConnectionRecord>{
      record_of(1, 1, 1, Label::anomalous),   // hit by rule 1
      record_of(2, 2, 2, Label::anomalous),   // hit by rule 2
      record_of(9, 9, 9, Label::anomalous),   // missed
      record_of(1, 1, 1, Label::normal),      // false positive
      record_of(8, 8, 8, Label::normal),      // clean
      record_of(7, 7, 7, Label::normal),      // clean
  });
  const std::vector<Rule> rules = {rule_of({1, 1}, {1, 1}, {1, 1}),
                                   rule_of({2, 2}, {2, 2}, {2, 2})};
  const auto m = detection_metrics(rules, ds);
  CHECK(m.detection_rate == doctest::Approx(2.0 / 3.0));
  CHECK(m.false_positive_rate == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("detection metrics handle one-sided datasets") {
  Dataset all_normal(std::vector<ConnectionRecord>{
      record_of(1, 1, 1, Label::normal)});
  const std::vector<Rule> rules = {rule_of({1, 1}, {1, 1}, {1, 1})};
  auto m = detection_metrics(rules, all_normal);
  CHECK(m.detection_rate == 0.0);  // no anomalies to detect
  CHECK(m.false_positive_rate == 1.0);

  Dataset all_anom(std::vector<ConnectionRecord>{
      record_of(1, 1, 1, Label::anomalous)});
  m = detection_metrics(rules, all_anom);
  CHECK(m.detection_rate == 1.0);
  CHECK(m.false_positive_rate == 0.0);  // no normals to misflag
}
