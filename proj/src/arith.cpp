#include "sok/arith.hpp"

#include "sok/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace sok {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::RelatorViolation: return "RelatorViolation";
    case ErrorCode::ZeroCharacter: return "ZeroCharacter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedForm: return "UnsupportedForm";
    case ErrorCode::NonInvertibleAction: return "NonInvertibleAction";
    case ErrorCode::NotFixed: return "NotFixed";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
    case ErrorCode::FiniteEnumerationCap: return "FiniteEnumerationCap";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::UnknownDegree: return "UnknownDegree";
    case ErrorCode::MissingSigma: return "MissingSigma";
    case ErrorCode::MissingInvariant: return "MissingInvariant";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::DegenerateCharacter: return "DegenerateCharacter";
    case ErrorCode::Undecidable: return "Undecidable";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

int sign(const Integer& a) { return a.sign(); }
int sign(const Rational& a) { return a.sign(); }

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw Error(ErrorCode::ParseError,
                "malformed rational '" + std::string(whole) + "'");
  }
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size() ||
      !std::all_of(text.begin() + start, text.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorCode::ParseError,
                "malformed rational '" + std::string(whole) + "'");
  }
  Integer value(std::string(text.substr(start)));
  return text[0] == '-' ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer p = parse_integer(text.substr(0, slash), text);
  std::string_view qs = text.substr(slash + 1);
  if (!qs.empty() && (qs[0] == '-' || qs[0] == '+')) {
    throw Error(ErrorCode::ParseError,
                "malformed rational '" + std::string(text) + "'");
  }
  Integer q = parse_integer(qs, text);
  if (q == 0) {
    throw Error(ErrorCode::ParseError,
                "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(p, q);
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

IntVector primitive(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  IntVector out(v.begin(), v.end());
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

IntVector primitive(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, denominator(x));
  IntVector scaled;
  scaled.reserve(v.size());
  for (const auto& x : v) scaled.push_back(numerator(x) * (l / denominator(x)));
  return primitive(std::span<const Integer>(scaled));
}

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Integer> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

RatVector to_rational(std::span<const Integer> v) {
  return RatVector(v.begin(), v.end());
}

IntVector to_integer(std::span<const Rational> v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (denominator(x) != 1) {
      throw Error(ErrorCode::ValidationFailure,
                  "expected an integer, got " + format_rational(x));
    }
    out.push_back(numerator(x));
  }
  return out;
}

std::string format_vector(std::span<const Integer> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

}  // namespace sok
