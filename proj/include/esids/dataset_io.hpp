#pragma once

#include <iosfwd>
#include <string>

#include "esids/connection.hpp"

namespace esids {

// CSV column order. The label column is last and may be omitted for data
// that only gets scored, never trained on.
inline constexpr std::string_view kCsvHeader =
    "src_ip,dst_ip,src_port,dst_port,duration,state,protocol,bytes_src,bytes_dst,label";
inline constexpr std::string_view kCsvHeaderUnlabeled =
    "src_ip,dst_ip,src_port,dst_port,duration,state,protocol,bytes_src,bytes_dst";

struct CsvData {
  Dataset dataset;
  bool labeled = true;  // false when the label column was absent
};

// Reads the full stream. Header row is mandatory; every row is validated
// against the attribute domains before a Dataset is built, and any failure
// raises ParseError carrying the 1-based line number. Row order is kept.
// When `require_label` is false a 9-column file is accepted and all records
// get Label::normal (callers must check `labeled` before using counts).
CsvData load_csv(std::istream& in, bool require_label);

// load_csv with the label column required.
Dataset load_dataset(std::istream& in);

void write_csv(std::ostream& out, const Dataset& ds);

// File wrappers; raise IoError when the path cannot be opened.
Dataset load_dataset_file(const std::string& path);
CsvData load_csv_file(const std::string& path, bool require_label);
void write_csv_file(const std::string& path, const Dataset& ds);

}  // namespace esids
