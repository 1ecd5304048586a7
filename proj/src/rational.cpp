#include "zenolab/rational.hpp"

#include <stdexcept>

namespace zenolab {

Rational pos_part(const Rational& r) { return r > Rational(0) ? r : Rational(0); }

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      std::size_t used = 0;
      const long long p = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return Rational(p);
    }
    std::size_t used = 0;
    const long long p = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument("trailing characters");
    const std::string den = text.substr(slash + 1);
    const long long q = std::stoll(den, &used);
    if (used != den.size()) throw std::invalid_argument("trailing characters");
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: \"" + text + "\" (want \"p\" or \"p/q\")");
  }
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

}  // namespace zenolab
