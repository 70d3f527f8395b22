#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace esids {

// "a.b.c.d" -> a*2^24 + b*2^16 + c*2^8 + d.
// Accepts canonical dotted quads only: four octets 0-255, no leading zeros,
// no surrounding whitespace. Throws ParseError naming the offending octet.
std::uint32_t ip_to_decimal(std::string_view addr);

// Inverse of ip_to_decimal; every 32-bit value has a canonical form.
std::string decimal_to_ip(std::uint32_t value);

}  // namespace esids
