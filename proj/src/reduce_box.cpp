#include "tst/reduce_box.hpp"

#include <cmath>

namespace tst {

Bq4eInstance::Bq4eInstance(int n_, Polynomial h_) : n(n_), h(std::move(h_)) {
  if (n < 1) throw InputError("instance needs at least one variable");
  if (h.variable_count() != n)
    throw InputError("polynomial variable count does not match n");
  if (h.total_degree() > 4) throw InputError("degree must be at most 4");
}

BoxWitness::BoxWitness(RationalVector xi_) : xi(std::move(xi_)) {
  for (Eigen::Index i = 0; i < xi.size(); ++i)
    if (xi[i] < -1 || xi[i] > 1) throw InputError("witness coordinate outside [-1, 1]");
}

VarLayout::VarLayout(int n, bool has_w) : n_(n), has_w_(has_w) {
  if (n < 1) throw InputError("layout needs n >= 1");
  const int m = v_count();
  pairs_.reserve(pair_count());
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) pairs_.emplace_back(a, b);
}

VarLayout VarLayout::homogeneous(int n) { return VarLayout(n, true); }
VarLayout VarLayout::affine(int n) { return VarLayout(n, false); }

int VarLayout::z_index(int i) const {
  if (i < 1 || i > n_) throw InvariantViolation("z index out of range");
  return i;
}

int VarLayout::s_index(int i) const {
  if (i < 1 || i > n_) throw InvariantViolation("s index out of range");
  return n_ + i;
}

int VarLayout::pair_index(int a, int b) const {
  const int m = v_count();
  if (a < 0 || b < a || b >= m) throw InvariantViolation("bad pair");
  // Row a starts after the a previous rows of lengths m, m-1, ...
  return a * m - a * (a - 1) / 2 + (b - a);
}

int VarLayout::w_index(int a, int b) const {
  if (!has_w_) throw InvariantViolation("affine layout has no w block");
  return v_count() + pair_count() + pair_index(a, b);
}

std::vector<Rational> evaluate_system(const QuadraticSystem& sys, const RationalVector& y) {
  if (y.size() != sys.dimension) throw InputError("point has wrong dimension");
  std::vector<Rational> vals;
  vals.reserve(sys.forms.size());
  for (std::size_t i = 0; i < sys.forms.size(); ++i) {
    Rational v = quad_eval(sys.forms[i], y);
    if (sys.mode == SystemMode::affine)
      v += sys.tails[i].linear.dot(y) + sys.tails[i].constant;
    vals.push_back(std::move(v));
  }
  return vals;
}

Polynomial homogenize(const Bq4eInstance& inst) {
  Polynomial big(inst.n + 1);
  for (const auto& [m, c] : inst.h.terms()) {
    std::vector<std::pair<int, int>> factors;
    for (const auto& [var, exp] : m.factors()) factors.emplace_back(var + 1, exp);
    int pad = 4 - m.degree();
    if (pad > 0) factors.emplace_back(0, pad);
    big.add_term(Monomial(std::move(factors)), c);
  }
  return big;
}

namespace {

// Shared between both compilers: the lifted quartic as a form over the
// u-block. Each degree-4 monomial of H, written as a sorted index tuple
// (a,b,c,d) over v-coordinates, becomes u(a,b) * u(c,d).
QuadraticForm lifted_h_form(const Bq4eInstance& inst, const VarLayout& layout,
                            int dimension) {
  Polynomial big = homogenize(inst);
  QuadraticForm q = QuadraticForm::zero(dimension);
  for (const auto& [m, c] : big.terms()) {
    std::vector<int> idx;
    for (const auto& [var, exp] : m.factors())
      for (int k = 0; k < exp; ++k) idx.push_back(var);
    if (idx.size() != 4) throw InvariantViolation("homogenization is not quartic");
    q.add_product_term(layout.u_index(idx[0], idx[1]), layout.u_index(idx[2], idx[3]), c);
  }
  return q;
}

QuadraticForm box_form(const VarLayout& layout, int dimension, int i) {
  QuadraticForm q = QuadraticForm::zero(dimension);
  q.add_product_term(layout.z_index(i), layout.z_index(i), 1);
  q.add_product_term(layout.s_index(i), layout.s_index(i), 1);
  q.add_product_term(layout.x0_index(), layout.x0_index(), -1);
  return q;
}

}  // namespace

QuadraticSystem compile_affine(const Bq4eInstance& inst) {
  VarLayout layout = VarLayout::affine(inst.n);
  const int dim = layout.dimension();
  QuadraticSystem sys{SystemMode::affine, dim, {}, {}, layout};
  RationalVector zero_lin(dim);
  zero_lin.setConstant(Rational(0));

  for (int i = 1; i <= inst.n; ++i) {
    sys.forms.push_back(box_form(layout, dim, i));
    sys.tails.push_back({zero_lin, Rational(0)});
  }
  for (const auto& [a, b] : layout.pairs()) {
    QuadraticForm q = QuadraticForm::zero(dim);
    q.add_product_term(a, b, -1);
    RationalVector lin = zero_lin;
    lin[layout.u_index(a, b)] = 1;
    sys.forms.push_back(std::move(q));
    sys.tails.push_back({std::move(lin), Rational(0)});
  }
  sys.forms.push_back(lifted_h_form(inst, layout, dim));
  sys.tails.push_back({zero_lin, Rational(0)});
  return sys;
}

QuadraticSystem compile_homogeneous(const Bq4eInstance& inst) {
  VarLayout layout = VarLayout::homogeneous(inst.n);
  const int dim = layout.dimension();
  QuadraticSystem sys{SystemMode::homogeneous, dim, {}, {}, layout};

  for (int i = 1; i <= inst.n; ++i) sys.forms.push_back(box_form(layout, dim, i));

  for (const auto& [a, b] : layout.pairs()) {
    QuadraticForm q = QuadraticForm::zero(dim);
    q.add_product_term(layout.u_index(a, b), layout.x0_index(), 1);
    q.add_product_term(a, b, -1);
    sys.forms.push_back(std::move(q));
  }

  // Ties u(0,0) = x0, u(0,a) = v_a as rank-one squares. Redundant where
  // x0 != 0 (L1 implies them) but load-bearing on the x0 = 0 slice.
  {
    RationalVector ell(dim);
    ell.setConstant(Rational(0));
    ell[layout.u_index(0, 0)] = 1;
    ell[layout.x0_index()] = -1;
    sys.forms.push_back(QuadraticForm::rank_one(ell));
  }
  for (int a = 1; a < layout.v_count(); ++a) {
    RationalVector ell(dim);
    ell.setConstant(Rational(0));
    ell[layout.u_index(0, a)] = 1;
    ell[a] = -1;
    sys.forms.push_back(QuadraticForm::rank_one(ell));
  }

  for (const auto& [a, b] : layout.pairs()) {
    QuadraticForm q = QuadraticForm::zero(dim);
    q.add_product_term(layout.u_index(0, 0), layout.u_index(0, 0), 1);
    q.add_product_term(layout.u_index(a, b), layout.u_index(a, b), -1);
    q.add_product_term(layout.w_index(a, b), layout.w_index(a, b), -1);
    sys.forms.push_back(std::move(q));
  }

  sys.forms.push_back(lifted_h_form(inst, layout, dim));
  return sys;
}

SphereWitness witness_forward(const Bq4eInstance& inst, const BoxWitness& witness) {
  if (witness.xi.size() != inst.n) throw InputError("witness has wrong dimension");
  if (inst.h(witness.xi) != 0) throw InputError("witness is not a zero of h");

  VarLayout layout = VarLayout::homogeneous(inst.n);
  const int m = layout.v_count();

  RationalVector v(m);
  v[0] = 1;
  bool exact = true;
  for (int i = 1; i <= inst.n; ++i) {
    v[layout.z_index(i)] = witness.xi[i - 1];
    Rational s2 = 1 - witness.xi[i - 1] * witness.xi[i - 1];
    if (auto s = exact_sqrt(s2)) {
      v[layout.s_index(i)] = *s;
    } else {
      exact = false;
      v[layout.s_index(i)] = rational_from_double(std::sqrt(to_double(s2)));
    }
  }

  RationalVector y(layout.dimension());
  y.setConstant(Rational(0));
  y.head(m) = v;
  for (const auto& [a, b] : layout.pairs()) y[layout.u_index(a, b)] = v[a] * v[b];
  for (const auto& [a, b] : layout.pairs()) {
    Rational w2 = 1 - y[layout.u_index(a, b)] * y[layout.u_index(a, b)];
    if (exact) {
      if (auto w = exact_sqrt(w2)) {
        y[layout.w_index(a, b)] = *w;
        continue;
      }
      exact = false;
    }
    double wf = to_double(w2);
    y[layout.w_index(a, b)] = rational_from_double(wf > 0 ? std::sqrt(wf) : 0.0);
  }
  return SphereWitness{std::move(y), exact};
}

BoxWitness witness_backward(const QuadraticSystem& sys, const SphereWitness& witness) {
  if (sys.mode != SystemMode::homogeneous)
    throw InputError("backward map is defined on homogeneous systems");
  if (!sys.layout) throw InputError("system carries no layout");
  std::vector<Rational> vals = evaluate_system(sys, witness.y);
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] != 0)
      throw InputError("constraint " + std::to_string(i) + " is nonzero at the witness");

  const VarLayout& layout = *sys.layout;
  const Rational& x0 = witness.y[layout.x0_index()];
  if (x0 == 0) throw InvariantViolation("exact zero with x0 = 0 must be the origin");
  RationalVector xi(layout.n());
  for (int i = 1; i <= layout.n(); ++i) xi[i - 1] = witness.y[layout.z_index(i)] / x0;
  return BoxWitness(std::move(xi));
}

}  // namespace tst
