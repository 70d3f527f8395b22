#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esids/connection.hpp"
#include "esids/json.hpp"
#include "esids/rule.hpp"

namespace esids {

// One planted anomaly cluster: a box over the three ranged attributes.
struct ClusterSpec {
  std::size_t n_anomalous = 0;
  BoundPair src_ip_range;
  BoundPair dst_ip_range;
  BoundPair dst_port_range;

  bool operator==(const ClusterSpec&) const = default;
};

struct ScenarioSpec {
  std::size_t n_normal = 0;
  std::vector<ClusterSpec> clusters;
  std::uint64_t seed = 0;

  // Throws ConfigError: cluster ranges must be ordered and inside the
  // attribute domains.
  void validate() const;

  bool operator==(const ScenarioSpec&) const = default;
};

struct SynthResult {
  Dataset dataset;
  // Normal draws that landed inside a cluster and were relabeled anomalous.
  std::size_t relabeled = 0;
};

// Draws n_normal background records uniformly over the full attribute
// domains, then each cluster's records with src/dst/dst_port confined to the
// cluster box. Background records falling inside any cluster box are
// relabeled anomalous so labels always agree with geometry. Per record the
// draw order is: src_ip, dst_ip, src_port, dst_port, duration, state,
// protocol, bytes_src, bytes_dst.
SynthResult generate(const ScenarioSpec& spec);

Json scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const Json& j);
ScenarioSpec load_scenario_file(const std::string& path);

// Canonical fixtures: one mid-domain cluster on ports 20-30 (s1); s2 adds a
// second disjoint cluster on ports 7000-7100.
ScenarioSpec scenario_s1(std::uint64_t seed);
ScenarioSpec scenario_s2(std::uint64_t seed);

}  // namespace esids
