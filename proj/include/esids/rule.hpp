#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "esids/connection.hpp"
#include "esids/json.hpp"

namespace esids {

// Search-space limits for the three ranged attributes.
struct AttributeBounds {
  ValueRange src_ip;
  ValueRange dst_ip;
  ValueRange dst_port;
};

constexpr AttributeBounds table1_bounds() {
  return AttributeBounds{kIpDomain, kIpDomain, kPortDomain};
}

inline constexpr double kDefaultSigma0 = 0.05;
inline constexpr const char* kDefaultAction = "stop the connection";

// Genotype: six genes in [0,1] (src_ip low/high, dst_ip low/high,
// dst_port low/high) plus the shared mutation step size.
struct RuleGenome {
  std::array<double, 6> genes{};
  double sigma = kDefaultSigma0;

  bool operator==(const RuleGenome&) const = default;
};

struct BoundPair {
  std::uint64_t low = 0;
  std::uint64_t high = 0;

  bool operator==(const BoundPair&) const = default;
};

// Phenotype: three inclusive integer ranges plus an annotation-only action.
struct Rule {
  BoundPair src_ip_range;
  BoundPair dst_ip_range;
  BoundPair dst_port_range;
  std::string action = kDefaultAction;

  bool operator==(const Rule&) const = default;
};

// Maps each gene to round-half-up(gene x attribute max), clamping genes into
// [0,1] and bounds into the attribute domain, then swaps any disordered pair.
// Total: every genome decodes to a valid rule.
Rule decode(const RuleGenome& g, const AttributeBounds& b,
            std::string action = kDefaultAction);

// Inverse of decode for valid rules: decode(encode(r, b), b) == r.
RuleGenome encode(const Rule& r, const AttributeBounds& b,
                  double sigma0 = kDefaultSigma0);

// True iff the record's src IP, dst IP and dst port all fall inside the
// rule's inclusive ranges.
bool matches(const Rule& r, const ConnectionRecord& c);

Json rule_to_json(const Rule& r);

// `path` prefixes error messages, e.g. "rules[2]".
Rule rule_from_json(const Json& j, const std::string& path = "rule");

}  // namespace esids
