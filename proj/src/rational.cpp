#include "ksr/rational.hpp"

#include "ksr/errors.hpp"

namespace ksr {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("rational", "empty rational literal");
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+')
    throw InputError("rational", "malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw InputError("rational", "zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long to_long(const Rational& q) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p())
    throw ConsistencyError("rational", "expected a machine integer, got " + to_string(q));
  return q.get_num().get_si();
}

}  // namespace ksr
