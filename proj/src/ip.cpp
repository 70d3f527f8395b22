#include "esids/ip.hpp"

#include <array>

#include "esids/error.hpp"

namespace esids {

namespace {

[[noreturn]] void bad_octet(std::string_view addr, std::string_view octet) {
  throw ParseError("invalid IP address '" + std::string(addr) +
                   "': bad octet '" + std::string(octet) + "'");
}

}  // namespace

std::uint32_t ip_to_decimal(std::string_view addr) {
  std::array<std::uint32_t, 4> octets{};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t start = pos;
    while (pos < addr.size() && addr[pos] >= '0' && addr[pos] <= '9') ++pos;
    const std::string_view digits = addr.substr(start, pos - start);
    if (digits.empty() || digits.size() > 3) bad_octet(addr, digits);
    if (digits.size() > 1 && digits[0] == '0') bad_octet(addr, digits);  // no leading zeros
    std::uint32_t value = 0;
    for (char c : digits) value = value * 10 + static_cast<std::uint32_t>(c - '0');
    if (value > 255) bad_octet(addr, digits);
    octets[static_cast<std::size_t>(i)] = value;
    if (i < 3) {
      if (pos >= addr.size() || addr[pos] != '.')
        throw ParseError("invalid IP address '" + std::string(addr) +
                         "': expected four octets");
      ++pos;
    }
  }
  if (pos != addr.size())
    throw ParseError("invalid IP address '" + std::string(addr) +
                     "': trailing characters");
  return (octets[0] << 24) | (octets[1] << 16) | (octets[2] << 8) | octets[3];
}

std::string decimal_to_ip(std::uint32_t value) {
  return std::to_string(value >> 24) + '.' + std::to_string((value >> 16) & 0xFF) +
         '.' + std::to_string((value >> 8) & 0xFF) + '.' + std::to_string(value & 0xFF);
}

}  // namespace esids
