#include "esids/dataset_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "esids/error.hpp"
#include "esids/ip.hpp"
#include "esids/text.hpp"

namespace esids {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

std::uint64_t parse_field(std::size_t line_no, std::string_view name,
                          std::string_view text, ValueRange domain) {
  const auto value = parse_u64(text);
  if (!value) fail(line_no, "bad value '" + std::string(text) + "' for " + std::string(name));
  if (!domain.contains(*value))
    fail(line_no, std::string(name) + " out of range (" +
                      std::to_string(domain.min) + "~" +
                      std::to_string(domain.max) + ")");
  return *value;
}

std::uint32_t parse_ip_field(std::size_t line_no, std::string_view name,
                             std::string_view text) {
  try {
    return ip_to_decimal(text);
  } catch (const ParseError& e) {
    fail(line_no, std::string(name) + ": " + e.what());
  }
}

// Drops one trailing '\r' so CRLF files load cleanly.
std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

CsvData load_csv(std::istream& in, bool require_label) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError("line 1: missing header row");
  ++line_no;
  std::string_view header = trim_cr(line);
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);

  bool labeled;
  if (header == kCsvHeader) {
    labeled = true;
  } else if (!require_label && header == kCsvHeaderUnlabeled) {
    labeled = false;
  } else {
    fail(line_no, "bad header; expected '" + std::string(kCsvHeader) + "'" +
                      (require_label ? "" : " (label column optional)"));
  }
  const std::size_t n_columns = labeled ? 10 : 9;

  std::vector<ConnectionRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim_cr(line);
    if (row.empty()) continue;
    const auto fields = split(row, ',');
    if (fields.size() != n_columns)
      fail(line_no, "expected " + std::to_string(n_columns) + " columns, got " +
                        std::to_string(fields.size()));
    ConnectionRecord rec;
    rec.src_ip = parse_ip_field(line_no, "src_ip", fields[0]);
    rec.dst_ip = parse_ip_field(line_no, "dst_ip", fields[1]);
    rec.src_port = static_cast<std::uint16_t>(
        parse_field(line_no, "src_port", fields[2], kPortDomain));
    rec.dst_port = static_cast<std::uint16_t>(
        parse_field(line_no, "dst_port", fields[3], kPortDomain));
    rec.duration = static_cast<std::uint32_t>(
        parse_field(line_no, "duration", fields[4], kDurationDomain));
    rec.state = static_cast<std::uint8_t>(
        parse_field(line_no, "state", fields[5], kStateDomain));
    rec.protocol = static_cast<std::uint8_t>(
        parse_field(line_no, "protocol", fields[6], kProtocolDomain));
    rec.bytes_src = parse_field(line_no, "bytes_src", fields[7], kBytesDomain);
    rec.bytes_dst = parse_field(line_no, "bytes_dst", fields[8], kBytesDomain);
    if (labeled) {
      const auto label = parse_label(fields[9]);
      if (!label) fail(line_no, "unknown label '" + std::string(fields[9]) + "'");
      rec.label = *label;
    }
    records.push_back(rec);
  }
  return CsvData{Dataset(std::move(records)), labeled};
}

Dataset load_dataset(std::istream& in) {
  return load_csv(in, /*require_label=*/true).dataset;
}

void write_csv(std::ostream& out, const Dataset& ds) {
  out << kCsvHeader << '\n';
  for (const auto& rec : ds.records()) {
    out << decimal_to_ip(rec.src_ip) << ',' << decimal_to_ip(rec.dst_ip) << ','
        << rec.src_port << ',' << rec.dst_port << ',' << rec.duration << ','
        << unsigned(rec.state) << ',' << unsigned(rec.protocol) << ','
        << rec.bytes_src << ',' << rec.bytes_dst << ',' << label_name(rec.label)
        << '\n';
  }
}

Dataset load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_dataset(in);
}

CsvData load_csv_file(const std::string& path, bool require_label) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_csv(in, require_label);
}

void write_csv_file(const std::string& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(out, ds);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace esids
