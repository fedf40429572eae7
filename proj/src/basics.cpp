#include "cusheaf/error.hpp"
#include "cusheaf/extnat.hpp"
#include "cusheaf/rational.hpp"

#include <charconv>
#include <sstream>

namespace cusheaf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NotLsc: return "not-lsc";
    case ErrorKind::CoverGap: return "cover-gap";
    case ErrorKind::ComplexMismatch: return "complex-mismatch";
    case ErrorKind::DomainMismatch: return "domain-mismatch";
    case ErrorKind::InvalidPatch: return "invalid-patch";
    case ErrorKind::MismatchOnOverlap: return "mismatch-on-overlap";
    case ErrorKind::EnumerationOverflow: return "enumeration-overflow";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::NotCompatible: return "not-compatible";
    case ErrorKind::NotDense: return "not-dense";
    case ErrorKind::NoEnlargement: return "no-enlargement";
    case ErrorKind::Multiplicity: return "multiplicity";
    case ErrorKind::Compatibility: return "compatibility";
    case ErrorKind::DifferentBasePoint: return "different-base-point";
  }
  return "unknown";
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Q parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Q(parse_int(text, text));
  auto num = parse_int(text.substr(0, slash), text);
  auto den = parse_int(text.substr(slash + 1), text);
  if (den <= 0) throw Error(ErrorKind::InvalidInput, "nonpositive denominator in '" + std::string(text) + "'");
  return Q(num, den);
}

std::string to_string(const Q& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

bool tuple_leq(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] <= b[i])) return false;
  return true;
}

bool tuple_waybelow(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!extnat_compare(a[i], b[i]).waybelow) return false;
  return true;
}

Tuple tuple_add(const Tuple& a, const Tuple& b) {
  Tuple out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::string tuple_str(const Tuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

}  // namespace cusheaf
