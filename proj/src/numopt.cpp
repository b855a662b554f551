#include "tst/numopt.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <random>

namespace tst {

namespace {

using Eigen::VectorXd;

void check_config(const AscentConfig& cfg) {
  if (cfg.restarts < 1) throw InputError("restarts must be >= 1");
  if (cfg.max_iters < 1) throw InputError("max_iters must be >= 1");
  if (cfg.step_tolerance <= 0 || cfg.value_tolerance <= 0)
    throw InputError("tolerances must be positive");
}

// Seeded generator with its own Gaussian so results do not depend on a
// standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  VectorXd unit_vector(int dim) {
    VectorXd v(dim);
    while (true) {
      for (int i = 0; i < dim; ++i) v[i] = gaussian();
      double n = v.norm();
      if (n > 1e-12) return v / n;
    }
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Float mirror of one symmetric form, upper triangle only.
struct FloatForm {
  struct Ent {
    int i, j;
    double c;   // Q_ij
    double ce;  // c, doubled off the diagonal, for direct evaluation
  };
  std::vector<Ent> ents;

  static FloatForm from(const QuadraticForm& q) {
    FloatForm f;
    for (Eigen::Index i = 0; i < q.dimension(); ++i)
      for (Eigen::Index j = i; j < q.dimension(); ++j) {
        if (q(i, j) == 0) continue;
        double c = to_double(q(i, j));
        f.ents.push_back({static_cast<int>(i), static_cast<int>(j), c,
                          i == j ? c : 2.0 * c});
      }
    return f;
  }

  double eval(const VectorXd& y) const {
    double acc = 0.0;
    for (const auto& e : ents) acc += e.ce * y[e.i] * y[e.j];
    return acc;
  }

  // g += w * Q y
  void add_matvec(const VectorXd& y, double w, VectorXd& g) const {
    for (const auto& e : ents) {
      if (e.i == e.j) {
        g[e.i] += w * e.c * y[e.i];
      } else {
        g[e.i] += w * e.c * y[e.j];
        g[e.j] += w * e.c * y[e.i];
      }
    }
  }

  // row += w * 2 Q y  (Jacobian row of y^T Q y)
  void add_grad_row(const VectorXd& y, VectorXd& row) const { add_matvec(y, 2.0, row); }
};

// Float mirror of a sparse polynomial term list.
struct FloatPoly {
  struct Term {
    std::vector<std::pair<int, int>> factors;
    double c;
  };
  int dim = 0;
  std::vector<Term> terms;

  static FloatPoly from(const Polynomial& p) {
    FloatPoly f;
    f.dim = p.variable_count();
    for (const auto& [m, c] : p.terms()) f.terms.push_back({m.factors(), to_double(c)});
    return f;
  }

  double eval(const VectorXd& y) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      double prod = t.c;
      for (const auto& [v, e] : t.factors)
        for (int k = 0; k < e; ++k) prod *= y[v];
      acc += prod;
    }
    return acc;
  }
};

// Homogeneous objective with gradient, shared by both ascent methods.
struct Objective {
  int dim = 0;
  int degree = 0;
  double scale = 1.0;  // rough bound on |f| over the sphere, for the auto shift
  std::function<double(const VectorXd&)> eval;
  std::function<void(const VectorXd&, VectorXd&)> grad;  // overwrites its output
};

Objective negate(const Objective& f) {
  Objective g = f;
  g.eval = [f](const VectorXd& y) { return -f.eval(y); };
  g.grad = [f](const VectorXd& y, VectorXd& out) {
    f.grad(y, out);
    out = -out;
  };
  return g;
}

Objective quartic_objective(const QuarticCertificateData& data) {
  Objective f;
  f.dim = data.dimension;
  f.degree = 4;
  f.scale = to_double(data.B);
  if (!data.forms.empty()) {
    auto forms = std::make_shared<std::vector<FloatForm>>();
    for (const auto& q : data.forms) forms->push_back(FloatForm::from(q));
    double b = to_double(data.B);
    f.eval = [forms, b](const VectorXd& y) {
      double nsq = y.squaredNorm();
      double acc = b * nsq * nsq;
      for (const auto& q : *forms) {
        double v = q.eval(y);
        acc -= v * v;
      }
      return acc;
    };
    f.grad = [forms, b](const VectorXd& y, VectorXd& g) {
      g = 4.0 * b * y.squaredNorm() * y;
      for (const auto& q : *forms) q.add_matvec(y, -4.0 * q.eval(y), g);
    };
  } else {
    auto poly = std::make_shared<FloatPoly>(FloatPoly::from(data.p));
    auto partials = std::make_shared<std::vector<FloatPoly>>();
    for (int i = 0; i < data.dimension; ++i)
      partials->push_back(FloatPoly::from(data.p.partial_derivative(i)));
    f.eval = [poly](const VectorXd& y) { return poly->eval(y); };
    f.grad = [partials](const VectorXd& y, VectorXd& g) {
      g.resize(static_cast<Eigen::Index>(partials->size()));
      for (std::size_t i = 0; i < partials->size(); ++i)
        g[static_cast<Eigen::Index>(i)] = (*partials)[i].eval(y);
    };
  }
  return f;
}

// Entries with multiplicities folded in: f(y) = sum cm * prod y_v^e.
struct TensorEval {
  struct Ent {
    std::vector<std::pair<int, int>> vpow;
    double cm;
  };
  int dim = 0;
  int degree = 0;
  std::vector<Ent> ents;
  double coeff_norm = 0.0;

  static TensorEval from(const SymmetricTensor& t) {
    TensorEval te;
    te.dim = t.dimension();
    te.degree = t.order();
    for (const auto& [idx, v] : t.entries()) {
      Ent e;
      std::size_t i = 0;
      while (i < idx.size()) {
        std::size_t j = i;
        while (j < idx.size() && idx[j] == idx[i]) ++j;
        e.vpow.emplace_back(idx[i], static_cast<int>(j - i));
        i = j;
      }
      e.cm = to_double(v * tuple_multiplicity(idx));
      te.coeff_norm += std::abs(e.cm);
      te.ents.push_back(std::move(e));
    }
    return te;
  }

  double eval(const VectorXd& y) const {
    double acc = 0.0;
    for (const auto& e : ents) {
      double prod = e.cm;
      for (const auto& [v, p] : e.vpow)
        for (int k = 0; k < p; ++k) prod *= y[v];
      acc += prod;
    }
    return acc;
  }

  void grad(const VectorXd& y, VectorXd& g) const {
    g.setZero(dim);
    for (const auto& e : ents) {
      for (std::size_t k = 0; k < e.vpow.size(); ++k) {
        double part = e.cm * e.vpow[k].second;
        for (std::size_t j = 0; j < e.vpow.size(); ++j) {
          int reps = e.vpow[j].second - (j == k ? 1 : 0);
          for (int r = 0; r < reps; ++r) part *= y[e.vpow[j].first];
        }
        g[e.vpow[k].first] += part;
      }
    }
  }
};

Objective tensor_objective(const SymmetricTensor& t) {
  auto te = std::make_shared<TensorEval>(TensorEval::from(t));
  Objective f;
  f.dim = te->dim;
  f.degree = te->degree;
  f.scale = std::max(te->coeff_norm, 1e-6);
  f.eval = [te](const VectorXd& y) { return te->eval(y); };
  f.grad = [te](const VectorXd& y, VectorXd& g) { te->grad(y, g); };
  return f;
}

struct RunResult {
  VectorXd x;
  double v = 0.0;
  int iters = 0;
  bool converged = false;
};

RunResult ascend_gradient(const Objective& f, VectorXd x, const AscentConfig& cfg) {
  double v = f.eval(x);
  bool converged = false;
  double step = 1.0;
  int it = 0;
  VectorXd g(f.dim), cand(f.dim);
  while (it < cfg.max_iters) {
    ++it;
    f.grad(x, g);
    VectorXd gt = g - g.dot(x) * x;
    if (gt.norm() <= cfg.step_tolerance * std::max(1.0, std::abs(v))) {
      converged = true;
      break;
    }
    double eta = step;
    bool improved = false;
    double vn = v;
    while (eta >= 1e-18) {
      cand = (x + eta * gt).normalized();
      double vc = f.eval(cand);
      if (vc > v) {
        vn = vc;
        improved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) {
      converged = true;
      break;
    }
    if (vn < v) throw InvariantViolation("backtracking accepted a decrease");
    double dv = vn - v;
    x = cand;
    v = vn;
    step = std::min(eta * 2.0, 1e6);
    if (dv <= cfg.value_tolerance * std::max(1.0, std::abs(v))) {
      converged = true;
      break;
    }
  }
  return {std::move(x), v, it, converged};
}

RunResult ascend_power(const Objective& f, VectorXd x, double alpha,
                       const AscentConfig& cfg) {
  double v = f.eval(x);
  bool converged = false;
  int it = 0;
  VectorXd g(f.dim);
  while (it < cfg.max_iters) {
    ++it;
    f.grad(x, g);
    VectorXd m = g / static_cast<double>(f.degree) + alpha * x;
    double nm = m.norm();
    if (nm <= 1e-300) break;
    x = m / nm;
    double vn = f.eval(x);
    double dv = std::abs(vn - v);
    v = vn;
    if (dv <= cfg.value_tolerance * std::max(1.0, std::abs(v))) {
      converged = true;
      break;
    }
  }
  return {std::move(x), v, it, converged};
}

MaxEstimate maximize_core(const Objective& f, const AscentConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);
  const double alpha = cfg.shift >= 0 ? cfg.shift : 2.0 * f.scale;
  const Objective neg = negate(f);
  MaxEstimate best;
  best.value = -1.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    VectorXd x0 = rng.unit_vector(f.dim);
    for (const Objective* obj : {&f, &neg}) {
      for (int method = 0; method < 2; ++method) {
        RunResult res = method == 0 ? ascend_gradient(*obj, x0, cfg)
                                    : ascend_power(*obj, x0, alpha, cfg);
        double a = std::abs(res.v);
        if (a > best.value) {
          best.value = a;
          best.argmax = res.x;
          best.iterations = res.iters;
          best.converged = res.converged;
        }
      }
    }
  }
  best.restarts_used = cfg.restarts;
  if (f.degree % 2 == 1 && f.eval(best.argmax) < 0) best.argmax = -best.argmax;
  return best;
}

}  // namespace

MaxEstimate maximize_sym(const SymmetricTensor& tensor, const AscentConfig& cfg) {
  return maximize_core(tensor_objective(tensor), cfg);
}

MaxEstimate maximize_sym(const QuarticCertificateData& data, const AscentConfig& cfg) {
  return maximize_core(quartic_objective(data), cfg);
}

MultilinearEstimate maximize_multilinear(const SymmetricTensor& tensor,
                                         const AscentConfig& cfg) {
  check_config(cfg);
  const int d = tensor.order();
  const int dim = tensor.dimension();

  // Flat list of distinct permutations of every stored entry class.
  struct Perm {
    std::vector<int> idx;
    double c;
  };
  std::vector<Perm> perms;
  for (const auto& [idx, v] : tensor.entries()) {
    IndexTuple p = idx;
    double c = to_double(v);
    do {
      perms.push_back({p, c});
    } while (std::next_permutation(p.begin(), p.end()));
  }

  auto value = [&](const std::vector<VectorXd>& xs) {
    double acc = 0.0;
    for (const auto& p : perms) {
      double prod = p.c;
      for (int k = 0; k < d; ++k) prod *= xs[k][p.idx[k]];
      acc += prod;
    }
    return acc;
  };
  auto contraction = [&](const std::vector<VectorXd>& xs, int slot) {
    VectorXd m = VectorXd::Zero(dim);
    for (const auto& p : perms) {
      double prod = p.c;
      for (int k = 0; k < d; ++k)
        if (k != slot) prod *= xs[k][p.idx[k]];
      m[p.idx[slot]] += prod;
    }
    return m;
  };

  Rng rng(cfg.seed);
  MultilinearEstimate out;
  out.best.value = -1.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<VectorXd> xs(d);
    for (auto& x : xs) x = rng.unit_vector(dim);
    double v = std::abs(value(xs));
    bool converged = false;
    bool stuck = false;
    int it = 0;
    while (it < cfg.max_iters && !stuck) {
      ++it;
      for (int slot = 0; slot < d; ++slot) {
        VectorXd m = contraction(xs, slot);
        double nm = m.norm();
        if (nm <= 1e-300) {
          stuck = true;
          break;
        }
        xs[slot] = m / nm;
      }
      if (stuck) break;
      double vn = std::abs(value(xs));
      if (vn + 1e-12 * std::max(1.0, vn) < v)
        throw InvariantViolation("slot update decreased the multilinear value");
      double dv = vn - v;
      v = vn;
      if (dv <= cfg.value_tolerance * std::max(1.0, v)) {
        converged = true;
        break;
      }
    }
    if (value(xs) < 0) xs[0] = -xs[0];
    if (v > out.best.value) {
      out.best.value = v;
      out.best.iterations = it;
      out.best.converged = converged;
      out.slots = xs;
      out.best.argmax = xs[0];
    }
  }
  out.best.restarts_used = cfg.restarts;
  return out;
}

namespace {

struct ResidualModel {
  int dim = 0;
  std::vector<FloatForm> forms;
  std::vector<VectorXd> lins;  // empty in homogeneous mode
  std::vector<double> consts;

  static ResidualModel from(const QuadraticSystem& sys) {
    ResidualModel m;
    m.dim = sys.dimension;
    for (const auto& q : sys.forms) m.forms.push_back(FloatForm::from(q));
    if (sys.mode == SystemMode::affine) {
      for (const auto& t : sys.tails) {
        VectorXd l(sys.dimension);
        for (int i = 0; i < sys.dimension; ++i) l[i] = to_double(t.linear[i]);
        m.lins.push_back(std::move(l));
        m.consts.push_back(to_double(t.constant));
      }
    }
    return m;
  }

  void residuals(const VectorXd& y, VectorXd& r) const {
    r.resize(static_cast<Eigen::Index>(forms.size()));
    for (std::size_t i = 0; i < forms.size(); ++i) {
      double v = forms[i].eval(y);
      if (!lins.empty()) v += lins[i].dot(y) + consts[i];
      r[static_cast<Eigen::Index>(i)] = v;
    }
  }

  double total(const VectorXd& y) const {
    VectorXd r;
    residuals(y, r);
    return r.squaredNorm();
  }

  // grad of sum r_i^2 = sum 2 r_i (2 Q_i y + l_i)
  void grad(const VectorXd& y, VectorXd& g) const {
    VectorXd r;
    residuals(y, r);
    g.setZero(dim);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      double w = 2.0 * r[static_cast<Eigen::Index>(i)];
      forms[i].add_matvec(y, 2.0 * w, g);
      if (!lins.empty()) g += w * lins[i];
    }
  }

  Eigen::MatrixXd jacobian(const VectorXd& y) const {
    Eigen::MatrixXd j(forms.size(), dim);
    VectorXd row(dim);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      row.setZero();
      forms[i].add_grad_row(y, row);
      if (!lins.empty()) row += lins[i];
      j.row(static_cast<Eigen::Index>(i)) = row;
    }
    return j;
  }
};

}  // namespace

MaxEstimate residual_min(const QuadraticSystem& sys, const AscentConfig& cfg,
                         std::optional<int> frozen_zero) {
  check_config(cfg);
  if (sys.forms.empty()) throw InputError("system has no constraints");
  if (frozen_zero && (*frozen_zero < 0 || *frozen_zero >= sys.dimension))
    throw InputError("frozen coordinate out of range");
  if (frozen_zero && sys.dimension < 2)
    throw InputError("cannot freeze the only coordinate");

  auto model = std::make_shared<ResidualModel>(ResidualModel::from(sys));
  const int frozen = frozen_zero.value_or(-1);

  Objective f;
  f.dim = sys.dimension;
  f.degree = 4;
  f.eval = [model](const VectorXd& y) { return -model->total(y); };
  f.grad = [model, frozen](const VectorXd& y, VectorXd& g) {
    model->grad(y, g);
    g = -g;
    if (frozen >= 0) g[frozen] = 0.0;
  };

  Rng rng(cfg.seed);
  MaxEstimate best;
  best.value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    VectorXd x0 = rng.unit_vector(sys.dimension);
    if (frozen >= 0) {
      x0[frozen] = 0.0;
      double n = x0.norm();
      if (n <= 1e-12) continue;
      x0 /= n;
    }
    RunResult res = ascend_gradient(f, x0, cfg);

    // Gauss-Newton polish; each step is accepted only on decrease, so the
    // descent stays monotone even far from a zero.
    VectorXd y = res.x;
    double val = model->total(y);
    for (int it = 0; it < 40; ++it) {
      VectorXd rv;
      model->residuals(y, rv);
      Eigen::MatrixXd j = model->jacobian(y);
      if (frozen >= 0) j.col(frozen).setZero();
      Eigen::MatrixXd jtj = j.transpose() * j;
      double damp = 1e-12 * (1.0 + jtj.trace());
      jtj.diagonal().array() += damp;
      VectorXd delta = jtj.ldlt().solve(-j.transpose() * rv);
      if (frozen >= 0) delta[frozen] = 0.0;
      VectorXd yn = y + delta;
      double nn = yn.norm();
      if (nn <= 1e-12) break;
      yn /= nn;
      double vn = model->total(yn);
      if (vn >= val) break;
      y = yn;
      val = vn;
      if (val <= 1e-32) break;
    }

    if (val < best.value) {
      best.value = val;
      best.argmax = y;
      best.iterations = res.iters;
      best.converged = res.converged;
    }
  }
  best.restarts_used = cfg.restarts;
  return best;
}

Eigen::VectorXd grad_p(const QuarticCertificateData& data, const Eigen::VectorXd& z) {
  if (z.size() != data.dimension) throw InputError("point has wrong dimension");
  Objective f = quartic_objective(data);
  VectorXd g(data.dimension);
  f.grad(z, g);
  return g;
}

RationalVector rationalize(const Eigen::VectorXd& x, unsigned long den_cap) {
  if (den_cap < 1) throw InputError("denominator cap must be >= 1");
  RationalVector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double v = x[i];
    if (!std::isfinite(v)) throw InputError("cannot rationalize a non-finite value");
    bool neg = v < 0;
    double a = std::abs(v);
    // Convergents of the continued fraction of |v|, capped by denominator.
    unsigned long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = a;
    for (int it = 0; it < 64; ++it) {
      if (frac > 1e15) break;
      unsigned long long ai = static_cast<unsigned long long>(std::floor(frac));
      unsigned long long p2 = ai * p1 + p0;
      unsigned long long q2 = ai * q1 + q0;
      if (q2 > den_cap) break;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      double rem = frac - std::floor(frac);
      if (rem < 1e-15) break;
      frac = 1.0 / rem;
    }
    if (q1 == 0) {  // first convergent already over the cap
      p1 = 0;
      q1 = 1;
    }
    Rational r(mpz_class(static_cast<unsigned long>(p1)),
               mpz_class(static_cast<unsigned long>(q1)));
    r.canonicalize();
    out[i] = neg ? Rational(-r) : r;
  }
  return out;
}

}  // namespace tst
