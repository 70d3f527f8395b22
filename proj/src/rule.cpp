#include "esids/rule.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "esids/error.hpp"

namespace esids {

namespace {

std::uint64_t scale_gene(double gene, const ValueRange& domain) {
  const double g = std::clamp(gene, 0.0, 1.0);
  const double scaled = std::floor(g * static_cast<double>(domain.max) + 0.5);
  auto v = static_cast<std::uint64_t>(scaled);
  return std::clamp(v, domain.min, domain.max);
}

BoundPair decode_pair(double lo_gene, double hi_gene, const ValueRange& domain) {
  BoundPair p{scale_gene(lo_gene, domain), scale_gene(hi_gene, domain)};
  if (p.low > p.high) std::swap(p.low, p.high);
  return p;
}

double encode_bound(std::uint64_t bound, const ValueRange& domain) {
  return static_cast<double>(bound) / static_cast<double>(domain.max);
}

std::uint64_t require_bound(const Json& j, const std::string& path,
                            const char* key, const ValueRange& domain) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(path + ": missing field '" + key + "'");
  if (!it->is_number_unsigned())
    throw ParseError(path + "." + key + ": expected a non-negative integer");
  const auto v = it->get<std::uint64_t>();
  if (!domain.contains(v))
    throw ParseError(path + "." + key + ": " + std::to_string(v) +
                     " out of range (" + std::to_string(domain.min) + "~" +
                     std::to_string(domain.max) + ")");
  return v;
}

BoundPair require_pair(const Json& j, const std::string& path,
                       const char* low_key, const char* high_key,
                       const ValueRange& domain) {
  BoundPair p{require_bound(j, path, low_key, domain),
              require_bound(j, path, high_key, domain)};
  if (p.low > p.high)
    throw ParseError(path + "." + low_key + ": " + std::to_string(p.low) +
                     " exceeds " + high_key + " (" + std::to_string(p.high) + ")");
  return p;
}

}  // namespace

Rule decode(const RuleGenome& g, const AttributeBounds& b, std::string action) {
  Rule r;
  r.src_ip_range = decode_pair(g.genes[0], g.genes[1], b.src_ip);
  r.dst_ip_range = decode_pair(g.genes[2], g.genes[3], b.dst_ip);
  r.dst_port_range = decode_pair(g.genes[4], g.genes[5], b.dst_port);
  r.action = std::move(action);
  return r;
}

RuleGenome encode(const Rule& r, const AttributeBounds& b, double sigma0) {
  RuleGenome g;
  g.genes[0] = encode_bound(r.src_ip_range.low, b.src_ip);
  g.genes[1] = encode_bound(r.src_ip_range.high, b.src_ip);
  g.genes[2] = encode_bound(r.dst_ip_range.low, b.dst_ip);
  g.genes[3] = encode_bound(r.dst_ip_range.high, b.dst_ip);
  g.genes[4] = encode_bound(r.dst_port_range.low, b.dst_port);
  g.genes[5] = encode_bound(r.dst_port_range.high, b.dst_port);
  g.sigma = sigma0;
  return g;
}

bool matches(const Rule& r, const ConnectionRecord& c) {
  return r.src_ip_range.low <= c.src_ip && c.src_ip <= r.src_ip_range.high &&
         r.dst_ip_range.low <= c.dst_ip && c.dst_ip <= r.dst_ip_range.high &&
         r.dst_port_range.low <= c.dst_port && c.dst_port <= r.dst_port_range.high;
}

Json rule_to_json(const Rule& r) {
  Json j;
  j["src_ip_low"] = r.src_ip_range.low;
  j["src_ip_high"] = r.src_ip_range.high;
  j["dst_ip_low"] = r.dst_ip_range.low;
  j["dst_ip_high"] = r.dst_ip_range.high;
  j["dst_port_low"] = r.dst_port_range.low;
  j["dst_port_high"] = r.dst_port_range.high;
  j["action"] = r.action;
  return j;
}

Rule rule_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const auto b = table1_bounds();
  Rule r;
  r.src_ip_range = require_pair(j, path, "src_ip_low", "src_ip_high", b.src_ip);
  r.dst_ip_range = require_pair(j, path, "dst_ip_low", "dst_ip_high", b.dst_ip);
  r.dst_port_range =
      require_pair(j, path, "dst_port_low", "dst_port_high", b.dst_port);
  const auto it = j.find("action");
  if (it == j.end())
    throw ParseError(path + ": missing field 'action'");
  if (!it->is_string() || it->get<std::string>().empty())
    throw ParseError(path + ".action: expected a non-empty string");
  r.action = it->get<std::string>();
  return r;
}

}  // namespace esids
