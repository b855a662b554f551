#include "tst/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace tst {

Monomial::Monomial(std::vector<std::pair<int, int>> factors) {
  std::map<int, int> merged;
  for (const auto& [idx, exp] : factors) {
    if (idx < 0) throw InvariantViolation("negative variable index");
    if (exp < 0) throw InvariantViolation("negative exponent");
    if (exp != 0) merged[idx] += exp;
  }
  factors_.assign(merged.begin(), merged.end());
}

Monomial Monomial::variable(int index, int exponent) {
  return Monomial({{index, exponent}});
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [idx, exp] : factors_) {
    (void)idx;
    d += exp;
  }
  return d;
}

int Monomial::max_variable() const {
  return factors_.empty() ? -1 : factors_.back().first;
}

int Monomial::exponent_of(int index) const {
  for (const auto& [idx, exp] : factors_)
    if (idx == index) return exp;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<std::pair<int, int>> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return Monomial(std::move(all));
}

Polynomial::Polynomial(int variable_count) : variable_count_(variable_count) {
  if (variable_count < 0) throw InvariantViolation("negative variable count");
}

Polynomial Polynomial::constant(int variable_count, const Rational& c) {
  Polynomial p(variable_count);
  p.add_term(Monomial(), c);
  return p;
}

Polynomial Polynomial::variable(int variable_count, int index) {
  Polynomial p(variable_count);
  p.add_term(Monomial::variable(index), 1);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.max_variable() >= variable_count_)
    throw InvariantViolation("monomial variable out of range");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (variable_count_ != other.variable_count_)
    throw InvariantViolation("variable count mismatch");
  Polynomial out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + (-other);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (variable_count_ != other.variable_count_)
    throw InvariantViolation("variable count mismatch");
  Polynomial out(variable_count_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(variable_count_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial out(variable_count_);
  if (c == 0) return out;
  for (const auto& [m, coef] : terms_) out.terms_.emplace(m, coef * c);
  return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return variable_count_ == other.variable_count_ && terms_ == other.terms_;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    d = std::max(d, m.degree());
  }
  return d;
}

bool Polynomial::is_homogeneous(int degree) const {
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (m.degree() != degree) return false;
  }
  return true;
}

Polynomial Polynomial::partial_derivative(int index) const {
  if (index < 0 || index >= variable_count_)
    throw InvariantViolation("derivative index out of range");
  Polynomial out(variable_count_);
  for (const auto& [m, c] : terms_) {
    int e = m.exponent_of(index);
    if (e == 0) continue;
    std::vector<std::pair<int, int>> factors = m.factors();
    for (auto& [idx, exp] : factors)
      if (idx == index) exp -= 1;
    out.add_term(Monomial(std::move(factors)), c * e);
  }
  return out;
}

Rational Polynomial::operator()(const RationalVector& z) const {
  if (z.size() != variable_count_)
    throw InputError("evaluation point has wrong dimension");
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [idx, exp] : m.factors()) {
      Rational pw = z[idx];
      for (int k = 1; k < exp; ++k) pw *= z[idx];
      term *= pw;
    }
    acc += term;
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool wrote_coeff = false;
    if (a != 1 || m.factors().empty()) {
      out << tst::to_string(a);
      wrote_coeff = true;
    }
    for (std::size_t i = 0; i < m.factors().size(); ++i) {
      if (wrote_coeff || i > 0) out << "*";
      out << "x" << (m.factors()[i].first + 1);
      if (m.factors()[i].second > 1) out << "^" << m.factors()[i].second;
    }
  }
  return out.str();
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) {
    throw InputError("polynomial parse error at position " + std::to_string(i) + ": " + what);
  }
  std::string number() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == '/') {
      ++i;
      std::size_t dstart = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == dstart) fail("expected denominator digits");
    }
    if (i == start) fail("expected a number");
    return s.substr(start, i - start);
  }
  int integer() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected an integer");
    return std::stoi(s.substr(start, i - start));
  }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int variable_count) {
  // Grammar: poly := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
  // factor := rational | 'x' int ('^' int)? . An initial '-' negates the
  // first term.
  Polynomial out(variable_count);
  Cursor c{text};
  bool negate = false;
  if (c.peek() == '-') {
    negate = true;
    ++c.i;
  } else if (c.peek() == '+') {
    ++c.i;
  }
  while (true) {
    Rational coeff = negate ? Rational(-1) : Rational(1);
    std::vector<std::pair<int, int>> factors;
    bool saw_factor = false;
    while (true) {
      char ch = c.peek();
      if (ch == 'x') {
        ++c.i;
        int var = c.integer();
        if (var < 1 || var > variable_count)
          c.fail("variable x" + std::to_string(var) + " out of range");
        int exp = 1;
        if (c.peek() == '^') {
          ++c.i;
          exp = c.integer();
          if (exp < 0) c.fail("negative exponent");
        }
        factors.emplace_back(var - 1, exp);
        saw_factor = true;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        coeff *= parse_rational(c.number());
        saw_factor = true;
      } else {
        c.fail("expected a coefficient or variable");
      }
      if (c.peek() == '*') {
        ++c.i;
        continue;
      }
      break;
    }
    if (!saw_factor) c.fail("empty term");
    out.add_term(Monomial(std::move(factors)), coeff);
    if (c.done()) break;
    char ch = c.peek();
    if (ch == '+') {
      negate = false;
      ++c.i;
    } else if (ch == '-') {
      negate = true;
      ++c.i;
    } else {
      c.fail("expected '+' or '-'");
    }
    if (c.done()) c.fail("trailing operator");
  }
  return out;
}

}  // namespace tst
