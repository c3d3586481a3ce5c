#include "multiflow/rational.hpp"

#include <ostream>

namespace multiflow {

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(text));
    return Rational(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational literal: \"" + text + "\"");
  }
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace multiflow
