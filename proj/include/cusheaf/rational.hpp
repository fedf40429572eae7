#ifndef CUSHEAF_RATIONAL_HPP
#define CUSHEAF_RATIONAL_HPP

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace cusheaf {

/// Exact rational coordinate. Every offset and length in the library is one.
using Q = boost::rational<std::int64_t>;

/// Parses "p/q", "p" or "-p/q". Throws Error(InvalidInput) otherwise.
Q parse_rational(std::string_view text);

std::string to_string(const Q& q);

inline Q midpoint(const Q& a, const Q& b) { return (a + b) / 2; }

}  // namespace cusheaf

#endif
