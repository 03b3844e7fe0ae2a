#include "fint/rational.hpp"

#include "fint/errors.hpp"

namespace fint {

std::string ratToString(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

Rat ratFromDecimal(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rat(Int(text));
  std::string whole = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  if (whole.empty() && frac.empty())
    throw SyntaxError("malformed number: " + text, 0);
  Int scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  Int w = whole.empty() ? Int(0) : Int(whole);
  Int f = frac.empty() ? Int(0) : Int(frac);
  return Rat(w * scale + f, scale);
}

}  // namespace fint
