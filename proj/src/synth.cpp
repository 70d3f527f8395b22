#include "esids/synth.hpp"

#include <fstream>

#include "esids/error.hpp"
#include "esids/rng.hpp"

namespace esids {

namespace {

void check_range(const BoundPair& p, const ValueRange& domain,
                 const char* name) {
  if (p.low > p.high)
    throw ConfigError(std::string(name) + ": low bound " +
                      std::to_string(p.low) + " exceeds high bound " +
                      std::to_string(p.high));
  if (!domain.contains(p.low) || !domain.contains(p.high))
    throw ConfigError(std::string(name) + " outside the attribute domain (" +
                      std::to_string(domain.min) + "~" +
                      std::to_string(domain.max) + ")");
}

bool in_cluster(const ClusterSpec& c, const ConnectionRecord& r) {
  return c.src_ip_range.low <= r.src_ip && r.src_ip <= c.src_ip_range.high &&
         c.dst_ip_range.low <= r.dst_ip && r.dst_ip <= c.dst_ip_range.high &&
         c.dst_port_range.low <= r.dst_port &&
         r.dst_port <= c.dst_port_range.high;
}

std::uint64_t draw(RandomStream& rng, const ValueRange& domain) {
  return rng.uniform_u64(domain.min, domain.max);
}

ConnectionRecord draw_record(RandomStream& rng, const BoundPair& src,
                             const BoundPair& dst, const BoundPair& port) {
  ConnectionRecord r;
  r.src_ip = static_cast<std::uint32_t>(rng.uniform_u64(src.low, src.high));
  r.dst_ip = static_cast<std::uint32_t>(rng.uniform_u64(dst.low, dst.high));
  r.src_port = static_cast<std::uint16_t>(draw(rng, kPortDomain));
  r.dst_port = static_cast<std::uint16_t>(rng.uniform_u64(port.low, port.high));
  r.duration = static_cast<std::uint32_t>(draw(rng, kDurationDomain));
  r.state = static_cast<std::uint8_t>(draw(rng, kStateDomain));
  r.protocol = static_cast<std::uint8_t>(draw(rng, kProtocolDomain));
  r.bytes_src = draw(rng, kBytesDomain);
  r.bytes_dst = draw(rng, kBytesDomain);
  return r;
}

BoundPair full_range(const ValueRange& domain) {
  return BoundPair{domain.min, domain.max};
}

std::uint64_t require_u64(const Json& j, const std::string& path,
                          const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(path + ": missing field '" + key + "'");
  if (!it->is_number_unsigned())
    throw ParseError(path + "." + key + ": expected a non-negative integer");
  return it->get<std::uint64_t>();
}

BoundPair read_pair(const Json& j, const std::string& path,
                    const char* low_key, const char* high_key) {
  return BoundPair{require_u64(j, path, low_key),
                   require_u64(j, path, high_key)};
}

}  // namespace

void ScenarioSpec::validate() const {
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto name = "clusters[" + std::to_string(i) + "]";
    check_range(clusters[i].src_ip_range, kIpDomain, (name + ".src_ip").c_str());
    check_range(clusters[i].dst_ip_range, kIpDomain, (name + ".dst_ip").c_str());
    check_range(clusters[i].dst_port_range, kPortDomain,
                (name + ".dst_port").c_str());
  }
}

SynthResult generate(const ScenarioSpec& spec) {
  spec.validate();
  RandomStream rng(spec.seed);

  std::vector<ConnectionRecord> records;
  std::size_t total = spec.n_normal;
  for (const auto& c : spec.clusters) total += c.n_anomalous;
  records.reserve(total);

  std::size_t relabeled = 0;
  const auto src_all = full_range(kIpDomain);
  const auto dst_all = full_range(kIpDomain);
  const auto port_all = full_range(kPortDomain);
  for (std::size_t i = 0; i < spec.n_normal; ++i) {
    auto rec = draw_record(rng, src_all, dst_all, port_all);
    rec.label = Label::normal;
    for (const auto& c : spec.clusters) {
      if (in_cluster(c, rec)) {
        rec.label = Label::anomalous;
        ++relabeled;
        break;
      }
    }
    records.push_back(rec);
  }
  for (const auto& c : spec.clusters) {
    for (std::size_t i = 0; i < c.n_anomalous; ++i) {
      auto rec =
          draw_record(rng, c.src_ip_range, c.dst_ip_range, c.dst_port_range);
      rec.label = Label::anomalous;
      records.push_back(rec);
    }
  }
  return SynthResult{Dataset(std::move(records)), relabeled};
}

Json scenario_to_json(const ScenarioSpec& spec) {
  Json j;
  j["n_normal"] = spec.n_normal;
  j["seed"] = spec.seed;
  j["clusters"] = Json::array();
  for (const auto& c : spec.clusters) {
    Json jc;
    jc["n_anomalous"] = c.n_anomalous;
    jc["src_ip_low"] = c.src_ip_range.low;
    jc["src_ip_high"] = c.src_ip_range.high;
    jc["dst_ip_low"] = c.dst_ip_range.low;
    jc["dst_ip_high"] = c.dst_ip_range.high;
    jc["dst_port_low"] = c.dst_port_range.low;
    jc["dst_port_high"] = c.dst_port_range.high;
    j["clusters"].push_back(std::move(jc));
  }
  return j;
}

ScenarioSpec scenario_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("scenario: expected an object");
  ScenarioSpec spec;
  spec.n_normal = require_u64(j, "scenario", "n_normal");
  spec.seed = require_u64(j, "scenario", "seed");
  const auto it = j.find("clusters");
  if (it == j.end())
    throw ParseError("scenario: missing field 'clusters'");
  if (!it->is_array())
    throw ParseError("scenario.clusters: expected an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& jc = (*it)[i];
    const auto path = "clusters[" + std::to_string(i) + "]";
    if (!jc.is_object()) throw ParseError(path + ": expected an object");
    ClusterSpec c;
    c.n_anomalous = require_u64(jc, path, "n_anomalous");
    c.src_ip_range = read_pair(jc, path, "src_ip_low", "src_ip_high");
    c.dst_ip_range = read_pair(jc, path, "dst_ip_low", "dst_ip_high");
    c.dst_port_range = read_pair(jc, path, "dst_port_low", "dst_port_high");
    spec.clusters.push_back(c);
  }
  spec.validate();
  return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("scenario: " + std::string(e.what()));
  }
  return scenario_from_json(j);
}

ScenarioSpec scenario_s1(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.n_normal = 800;
  spec.seed = seed;
  ClusterSpec c;
  c.n_anomalous = 200;
  c.src_ip_range = {2139095040, 2155872255};  // 2^24 addresses, mid-domain
  c.dst_ip_range = {2147450880, 2147516415};  // 2^16 addresses, mid-domain
  c.dst_port_range = {20, 30};
  spec.clusters.push_back(c);
  return spec;
}

ScenarioSpec scenario_s2(std::uint64_t seed) {
  auto spec = scenario_s1(seed);
  // The second cluster sits far from the first in both address dimensions
  // (src high, dst low) so that no single box can cheaply enclose both.
  ClusterSpec c;
  c.n_anomalous = 200;
  c.src_ip_range = {3985931177, 4002708392};  // 2^24 addresses near the top
  c.dst_ip_range = {300614942, 300680477};    // 2^16 addresses near the bottom
  c.dst_port_range = {7000, 7100};
  spec.clusters.push_back(c);
  return spec;
}

}  // namespace esids
