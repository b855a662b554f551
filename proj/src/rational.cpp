#include "tst/rational.hpp"

#include <cctype>

namespace tst {

Rational parse_rational(const std::string& text) {
  // Strict grammar: optional sign, digits, optional /digits. mpq_class's
  // own parser is laxer (whitespace, bases), which we don't want in files.
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t num_end = digits(i);
  if (num_end == i) throw InputError("bad rational: '" + text + "'");
  i = num_end;
  if (i < text.size()) {
    if (text[i] != '/') throw InputError("bad rational: '" + text + "'");
    std::size_t den_end = digits(i + 1);
    if (den_end != text.size() || den_end == i + 1)
      throw InputError("bad rational: '" + text + "'");
  }
  // GMP's reader takes '-' but not '+'.
  Rational r(text[0] == '+' ? text.substr(1) : text, 10);
  if (r.get_den() == 0) throw InputError("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

}  // namespace tst
