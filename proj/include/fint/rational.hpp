#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fint {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double toDouble(const Rat& r) { return r.template convert_to<double>(); }

inline Int ratNum(const Rat& r) { return numerator(r); }
inline Int ratDen(const Rat& r) { return denominator(r); }

inline bool isInteger(const Rat& r) { return denominator(r) == 1; }

// r = p/q with q in {1, 2}?
inline bool isHalfInteger(const Rat& r) {
  const Int d = denominator(r);
  return d == 1 || d == 2;
}

std::string ratToString(const Rat& r);

// Exact rational from a decimal literal such as "0.125" or "17".
Rat ratFromDecimal(const std::string& text);

}  // namespace fint
