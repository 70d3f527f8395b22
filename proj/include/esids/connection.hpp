#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace esids {

// Closed integer interval; used for the attribute domains below.
struct ValueRange {
  std::uint64_t min = 0;
  std::uint64_t max = 0;

  bool contains(std::uint64_t v) const { return min <= v && v <= max; }
};

// Attribute domains for one observed connection.
inline constexpr ValueRange kIpDomain{0, 4294967295ULL};
inline constexpr ValueRange kPortDomain{0, 65535};
inline constexpr ValueRange kDurationDomain{0, 99999999};
inline constexpr ValueRange kStateDomain{1, 20};
inline constexpr ValueRange kProtocolDomain{1, 9};
inline constexpr ValueRange kBytesDomain{0, 9999999999ULL};

enum class Label : std::uint8_t { normal, anomalous };

// "normal" / "anomalous", case-insensitive. Empty optional on anything else.
std::optional<Label> parse_label(std::string_view text);
std::string_view label_name(Label label);

// One pre-classified connection.
struct ConnectionRecord {
  std::uint32_t src_ip = 0;
  std::uint32_t dst_ip = 0;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint32_t duration = 0;
  std::uint8_t state = 1;      // opaque enumeration, 1-20
  std::uint8_t protocol = 1;   // opaque enumeration, 1-9
  std::uint64_t bytes_src = 0;
  std::uint64_t bytes_dst = 0;
  Label label = Label::normal;

  bool operator==(const ConnectionRecord&) const = default;
};

// Name of the first field outside its domain, or empty when all are valid.
// (Message reads "<field> out of range (<min>~<max>)".)
std::optional<std::string> field_violation(const ConnectionRecord& rec);

// Immutable collection of labeled records. Construction rejects any record
// with an out-of-domain field, so a Dataset is valid in full or not at all.
// Safe to share across concurrent readers.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<ConnectionRecord> records);

  const std::vector<ConnectionRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t n_normal() const { return n_normal_; }
  std::size_t n_anomalous() const { return n_anomalous_; }

 private:
  std::vector<ConnectionRecord> records_;
  std::size_t n_normal_ = 0;
  std::size_t n_anomalous_ = 0;
};

struct MinMax {
  std::uint64_t min = 0;
  std::uint64_t max = 0;
};

struct AttributeExtrema {
  MinMax src_ip, dst_ip, src_port, dst_port, duration, state, protocol,
      bytes_src, bytes_dst;
};

struct DatasetSummary {
  std::size_t n_records = 0;
  std::size_t n_normal = 0;
  std::size_t n_anomalous = 0;
  std::optional<AttributeExtrema> extrema;  // absent for an empty dataset
};

DatasetSummary summarize(const Dataset& ds);

}  // namespace esids
