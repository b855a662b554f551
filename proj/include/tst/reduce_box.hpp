#pragma once

#include "tst/quadratic_form.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tst {

// Box feasibility: does h (degree <= 4, n variables) vanish somewhere
// on [-1, 1]^n?
struct Bq4eInstance {
  int n;
  Polynomial h;

  Bq4eInstance(int n_, Polynomial h_);
};

// A point of [-1, 1]^n; bounds checked at construction.
struct BoxWitness {
  RationalVector xi;

  explicit BoxWitness(RationalVector xi_);
};

// Coordinate bookkeeping for the lifted sphere systems.
//
// v-block (size M = 2n+1): x0 at 0, z_i at i, s_i at n+i.
// u-block (size P = M(M+1)/2): one coordinate per pair a <= b of
// v-indices, lexicographic, starting at M. u(a,b) stands for the
// product v_a v_b / x0 on the solution set.
// w-block (homogeneous mode only, size P): slack per pair, after u.
class VarLayout {
 public:
  static VarLayout homogeneous(int n);
  static VarLayout affine(int n);

  int n() const { return n_; }
  bool has_w() const { return has_w_; }
  int v_count() const { return 2 * n_ + 1; }
  int pair_count() const { return v_count() * (v_count() + 1) / 2; }
  int dimension() const { return v_count() + (has_w_ ? 2 : 1) * pair_count(); }

  int x0_index() const { return 0; }
  int z_index(int i) const;  // i in 1..n
  int s_index(int i) const;  // i in 1..n
  int pair_index(int a, int b) const;
  int u_index(int a, int b) const { return v_count() + pair_index(a, b); }
  int w_index(int a, int b) const;
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  bool operator==(const VarLayout& other) const {
    return n_ == other.n_ && has_w_ == other.has_w_;
  }

 private:
  VarLayout(int n, bool has_w);

  int n_;
  bool has_w_;
  std::vector<std::pair<int, int>> pairs_;
};

enum class SystemMode { homogeneous, affine };

// Linear-plus-constant tail of an affine constraint; zero for the
// constraints that happen to be pure forms.
struct AffineTail {
  RationalVector linear;
  Rational constant;
};

// Constraint system on the unit sphere of R^dimension. In homogeneous
// mode every constraint is a pure quadratic form and the zero set is a
// cone; in affine mode constraint i is quad_eval(forms[i], y) +
// tails[i].linear . y + tails[i].constant.
struct QuadraticSystem {
  SystemMode mode;
  int dimension;
  std::vector<QuadraticForm> forms;
  std::vector<AffineTail> tails;  // parallel to forms in affine mode; empty otherwise
  std::optional<VarLayout> layout;
};

// Exact constraint values at y.
std::vector<Rational> evaluate_system(const QuadraticSystem& sys, const RationalVector& y);

// Degree-4 homogenization over (x0, z_1..z_n): variable 0 is x0 and each
// degree-k monomial of h picks up x0^(4-k). Restricting x0 = 1 recovers h.
Polynomial homogenize(const Bq4eInstance& inst);

// The lifting exactly as classically written: u_ab - v_a v_b = 0 plus box
// and lifted-h constraints. These lifting equations are affine, not
// homogeneous, so this system is a correct feasibility encoding but can
// never feed the spectral stage; it exists as a fidelity baseline.
QuadraticSystem compile_affine(const Bq4eInstance& inst);

// The homogeneous repair. Families, in fixed emission order:
//   (B1) z_i^2 + s_i^2 - x0^2                      i = 1..n
//   (L1) u(a,b) x0 - v_a v_b                       pairs lexicographic
//   (L2) rank-one forms of u(0,0) - x0, u(0,a) - v_a
//   (L3) u(0,0)^2 - u(a,b)^2 - w(a,b)^2            pairs lexicographic
//   (H)  lifted homogenization: v_a v_b v_c v_d -> u(a,b) u(c,d)
//        on each sorted degree-4 index tuple a<=b<=c<=d
// Nonzero solutions force x0 != 0 (B1+L2+L3 kill the x0 = 0 slice), and
// then L1/L2 pin u(a,b) = v_a v_b / x0, so (H) = H(v)/x0^2.
QuadraticSystem compile_homogeneous(const Bq4eInstance& inst);

// Witness on the sphere cone. Stored unnormalized (the zero set is
// scale-invariant); exact == false means the coordinates came from
// floating square roots and certify nothing.
struct SphereWitness {
  RationalVector y;
  bool exact;
};

// x0 = 1, z = xi, s_i = sqrt(1 - xi_i^2), u = products, w = slack roots.
// Exact when every needed square root is rational (coordinates in
// {0, +-1} always are); otherwise returns the floating witness flagged
// inexact. Requires h(xi) = 0 exactly.
SphereWitness witness_forward(const Bq4eInstance& inst, const BoxWitness& witness);

// Recovers xi_i = z_i / x0 from any exact zero of a homogeneous system.
// Checks the residuals itself; rejects nonzero residuals as input errors
// and x0 = 0 as an invariant violation (it cannot happen at an exact
// nonzero solution).
BoxWitness witness_backward(const QuadraticSystem& sys, const SphereWitness& witness);

}  // namespace tst
