#include "esids/connection.hpp"

#include <algorithm>
#include <cctype>

#include "esids/error.hpp"

namespace esids {

std::optional<Label> parse_label(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "normal") return Label::normal;
  if (lower == "anomalous") return Label::anomalous;
  return std::nullopt;
}

std::string_view label_name(Label label) {
  return label == Label::normal ? "normal" : "anomalous";
}

namespace {

std::optional<std::string> check(std::string_view field, std::uint64_t value,
                                 ValueRange domain) {
  if (domain.contains(value)) return std::nullopt;
  return std::string(field) + " out of range (" + std::to_string(domain.min) +
         "~" + std::to_string(domain.max) + ")";
}

}  // namespace

std::optional<std::string> field_violation(const ConnectionRecord& rec) {
  if (auto e = check("src_ip", rec.src_ip, kIpDomain)) return e;
  if (auto e = check("dst_ip", rec.dst_ip, kIpDomain)) return e;
  if (auto e = check("src_port", rec.src_port, kPortDomain)) return e;
  if (auto e = check("dst_port", rec.dst_port, kPortDomain)) return e;
  if (auto e = check("duration", rec.duration, kDurationDomain)) return e;
  if (auto e = check("state", rec.state, kStateDomain)) return e;
  if (auto e = check("protocol", rec.protocol, kProtocolDomain)) return e;
  if (auto e = check("bytes_src", rec.bytes_src, kBytesDomain)) return e;
  if (auto e = check("bytes_dst", rec.bytes_dst, kBytesDomain)) return e;
  return std::nullopt;
}

Dataset::Dataset(std::vector<ConnectionRecord> records)
    : records_(std::move(records)) {
  for (const auto& rec : records_) {
    if (auto violation = field_violation(rec))
      throw ParseError("invalid record: " + *violation);
    if (rec.label == Label::normal)
      ++n_normal_;
    else
      ++n_anomalous_;
  }
}

DatasetSummary summarize(const Dataset& ds) {
  DatasetSummary summary;
  summary.n_records = ds.size();
  summary.n_normal = ds.n_normal();
  summary.n_anomalous = ds.n_anomalous();
  if (ds.empty()) return summary;

  AttributeExtrema ex;
  auto init = [](MinMax& mm, std::uint64_t v) { mm.min = mm.max = v; };
  auto widen = [](MinMax& mm, std::uint64_t v) {
    mm.min = std::min(mm.min, v);
    mm.max = std::max(mm.max, v);
  };
  const auto& first = ds.records().front();
  init(ex.src_ip, first.src_ip);
  init(ex.dst_ip, first.dst_ip);
  init(ex.src_port, first.src_port);
  init(ex.dst_port, first.dst_port);
  init(ex.duration, first.duration);
  init(ex.state, first.state);
  init(ex.protocol, first.protocol);
  init(ex.bytes_src, first.bytes_src);
  init(ex.bytes_dst, first.bytes_dst);
  for (const auto& rec : ds.records()) {
    widen(ex.src_ip, rec.src_ip);
    widen(ex.dst_ip, rec.dst_ip);
    widen(ex.src_port, rec.src_port);
    widen(ex.dst_port, rec.dst_port);
    widen(ex.duration, rec.duration);
    widen(ex.state, rec.state);
    widen(ex.protocol, rec.protocol);
    widen(ex.bytes_src, rec.bytes_src);
    widen(ex.bytes_dst, rec.bytes_dst);
  }
  summary.extrema = ex;
  return summary;
}

}  // namespace esids
