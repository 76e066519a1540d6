#include "c4free/rational.hpp"

#include <charconv>

#include "c4free/error.hpp"

namespace c4free {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::unsupported_parameter: return "unsupported-parameter";
    case ErrorKind::generation_failure: return "generation-failure";
    case ErrorKind::oracle_limit: return "oracle-limit";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::not_biregular: return "not-biregular";
    case ErrorKind::extraction_failure: return "extraction-failure";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::kernel_failure: return "kernel-failure";
    case ErrorKind::stale_certificate: return "stale-certificate";
    case ErrorKind::unsupported_scale: return "unsupported-scale";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

std::string to_string(const Rational& value) {
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t out = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorKind::parse, "malformed rational component '" + std::string(text) + "'");
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

double to_double(const Rational& value) noexcept {
  return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

std::int64_t ceil(const Rational& value) noexcept {
  const auto n = value.numerator();
  const auto d = value.denominator();  // always positive
  auto q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

}  // namespace c4free
