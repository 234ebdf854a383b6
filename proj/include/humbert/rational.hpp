#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace humbert {

// Exact scalars: arbitrary-precision integers and rationals. The whole
// library computes over Q; there is no floating point anywhere.
using Integer =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline std::string to_string(const Integer& n) { return n.str(); }
inline std::string to_string(const Rational& q) { return q.str(); }

// Accepts "12", "-3", "7/2". Anything else yields nullopt.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  auto scan_int = [&](bool allow_sign) -> bool {
    if (allow_sign && pos < text.size() &&
        (text[pos] == '+' || text[pos] == '-')) {
      ++pos;
    }
    std::size_t digits = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      ++digits;
    }
    return digits > 0;
  };
  if (!scan_int(true)) return std::nullopt;
  if (pos < text.size()) {
    if (text[pos] != '/') return std::nullopt;
    ++pos;
    std::size_t den_begin = pos;
    if (!scan_int(false) || pos != text.size()) return std::nullopt;
    if (text.substr(den_begin) == "0") return std::nullopt;
  }
  return Rational(std::string(text));
}

}  // namespace humbert
