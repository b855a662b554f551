#include "tst/io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>

namespace tst {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

int int_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_number_integer()) bad(std::string("field '") + name + "' must be an integer");
  return f.get<int>();
}

Json header(const char* kind) {
  Json j;
  j["version"] = kFileVersion;
  j["kind"] = kind;
  return j;
}

void check_header(const Json& j, const std::string& kind) {
  if (!j.is_object()) bad("instance file must hold a JSON object");
  if (int_field(j, "version") != kFileVersion) bad("unsupported file version");
  if (!kind.empty() && json_kind(j) != kind)
    bad("expected kind '" + kind + "', found '" + json_kind(j) + "'");
}

}  // namespace

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) bad("rationals are encoded as strings");
  return parse_rational(j.get<std::string>());
}

Json polynomial_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json term;
    std::vector<int> exps(p.variable_count(), 0);
    for (const auto& [var, e] : m.factors()) exps[var] = e;
    term["exponents"] = exps;
    term["coeff"] = rational_to_json(c);
    terms.push_back(std::move(term));
  }
  return terms;
}

Polynomial polynomial_from_json(const Json& j, int variable_count) {
  if (!j.is_array()) bad("polynomial must be an array of terms");
  Polynomial p(variable_count);
  for (const Json& term : j) {
    const Json& exps = field(term, "exponents");
    if (!exps.is_array() || static_cast<int>(exps.size()) != variable_count)
      bad("term exponent row must list every variable");
    std::vector<std::pair<int, int>> factors;
    for (int v = 0; v < variable_count; ++v) {
      if (!exps[v].is_number_integer() || exps[v].get<int>() < 0)
        bad("exponents must be nonnegative integers");
      int e = exps[v].get<int>();
      if (e > 0) factors.emplace_back(v, e);
    }
    p.add_term(Monomial(std::move(factors)), rational_from_json(field(term, "coeff")));
  }
  return p;
}

Json form_to_json(const QuadraticForm& q) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < q.dimension(); ++i)
    for (Eigen::Index j = 0; j < q.dimension(); ++j)
      rows.push_back(rational_to_json(q(i, j)));
  return rows;
}

QuadraticForm form_from_json(const Json& j, int dimension) {
  if (!j.is_array() || static_cast<int>(j.size()) != dimension * dimension)
    bad("form must be a dense row-major array of dimension^2 entries");
  RationalMatrix m(dimension, dimension);
  for (int r = 0; r < dimension; ++r)
    for (int c = 0; c < dimension; ++c)
      m(r, c) = rational_from_json(j[static_cast<std::size_t>(r) * dimension + c]);
  return QuadraticForm(std::move(m));
}

Json bq4e_to_json(const Bq4eInstance& inst) {
  Json j = header("bq4e");
  j["n"] = inst.n;
  j["h"] = polynomial_to_json(inst.h);
  return j;
}

Bq4eInstance bq4e_from_json(const Json& j) {
  check_header(j, "bq4e");
  int n = int_field(j, "n");
  if (n < 1) bad("n must be positive");
  return Bq4eInstance(n, polynomial_from_json(field(j, "h"), n));
}

namespace {

Json layout_to_json(const VarLayout& layout) {
  Json j;
  j["n"] = layout.n();
  j["v_count"] = layout.v_count();
  j["x0"] = layout.x0_index();
  Json zs = Json::array(), ss = Json::array();
  for (int i = 1; i <= layout.n(); ++i) {
    zs.push_back(layout.z_index(i));
    ss.push_back(layout.s_index(i));
  }
  j["z"] = std::move(zs);
  j["s"] = std::move(ss);
  Json pairs = Json::array();
  for (const auto& [a, b] : layout.pairs()) pairs.push_back(Json::array({a, b}));
  j["pairs"] = std::move(pairs);
  j["u_begin"] = layout.v_count();
  if (layout.has_w())
    j["w_begin"] = layout.v_count() + layout.pair_count();
  else
    j["w_begin"] = nullptr;
  return j;
}

VarLayout layout_from_json(const Json& j) {
  int n = int_field(j, "n");
  bool has_w = !field(j, "w_begin").is_null();
  VarLayout layout = has_w ? VarLayout::homogeneous(n) : VarLayout::affine(n);
  // The index maps are derivable from n; reject files that disagree.
  if (int_field(j, "v_count") != layout.v_count() ||
      static_cast<int>(field(j, "pairs").size()) != layout.pair_count())
    bad("layout fields inconsistent with n");
  return layout;
}

}  // namespace

Json system_to_json(const QuadraticSystem& sys) {
  Json j = header("system");
  j["N"] = sys.dimension;
  j["mode"] = sys.mode == SystemMode::homogeneous ? "homogeneous" : "affine";
  j["layout"] = sys.layout ? layout_to_json(*sys.layout) : Json(nullptr);
  Json forms = Json::array();
  for (const auto& q : sys.forms) forms.push_back(form_to_json(q));
  j["forms"] = std::move(forms);
  if (sys.mode == SystemMode::affine) {
    Json tails = Json::array();
    for (const auto& t : sys.tails) {
      Json tail;
      Json lin = Json::array();
      for (Eigen::Index i = 0; i < t.linear.size(); ++i)
        lin.push_back(rational_to_json(t.linear[i]));
      tail["linear"] = std::move(lin);
      tail["constant"] = rational_to_json(t.constant);
      tails.push_back(std::move(tail));
    }
    j["tails"] = std::move(tails);
  }
  return j;
}

QuadraticSystem system_from_json(const Json& j) {
  check_header(j, "system");
  QuadraticSystem sys;
  sys.dimension = int_field(j, "N");
  const std::string mode = field(j, "mode").get<std::string>();
  if (mode == "homogeneous")
    sys.mode = SystemMode::homogeneous;
  else if (mode == "affine")
    sys.mode = SystemMode::affine;
  else
    bad("mode must be homogeneous or affine");
  if (!field(j, "layout").is_null()) sys.layout = layout_from_json(field(j, "layout"));
  for (const Json& f : field(j, "forms"))
    sys.forms.push_back(form_from_json(f, sys.dimension));
  if (sys.mode == SystemMode::affine) {
    for (const Json& t : field(j, "tails")) {
      const Json& lin = field(t, "linear");
      if (static_cast<int>(lin.size()) != sys.dimension) bad("tail has wrong dimension");
      AffineTail tail;
      tail.linear.resize(sys.dimension);
      for (int i = 0; i < sys.dimension; ++i)
        tail.linear[i] = rational_from_json(lin[i]);
      tail.constant = rational_from_json(field(t, "constant"));
      sys.tails.push_back(std::move(tail));
    }
    if (sys.tails.size() != sys.forms.size())
      bad("affine systems need one tail per form");
  }
  return sys;
}

Json quartic_to_json(const QuarticCertificateData& data) {
  Json j = header("quartic");
  j["N"] = data.dimension;
  j["C"] = rational_to_json(data.C);
  j["B"] = rational_to_json(data.B);
  j["p"] = polynomial_to_json(data.p);
  return j;
}

QuarticCertificateData quartic_from_json(const Json& j) {
  check_header(j, "quartic");
  QuarticCertificateData data;
  data.dimension = int_field(j, "N");
  if (data.dimension < 1) bad("N must be positive");
  data.C = rational_from_json(field(j, "C"));
  data.B = rational_from_json(field(j, "B"));
  if (data.B != data.C + 1) bad("B must equal C + 1");
  data.p = polynomial_from_json(field(j, "p"), data.dimension);
  return data;
}

namespace {

Json entries_to_json(const SymmetricTensor& t) {
  Json entries = Json::array();
  for (const auto& [idx, v] : t.entries()) {
    Json e;
    e["idx"] = idx;
    e["coeff"] = rational_to_json(v);
    entries.push_back(std::move(e));
  }
  return entries;
}

SymmetricTensor entries_from_json(const Json& j) {
  int n = int_field(j, "n");
  int d = int_field(j, "d");
  SymmetricTensor t(n, d);
  for (const Json& e : field(j, "entries")) {
    const Json& idx = field(e, "idx");
    IndexTuple tuple;
    for (const Json& k : idx) {
      if (!k.is_number_integer()) bad("tensor indices must be integers");
      tuple.push_back(k.get<int>());
    }
    IndexTuple sorted = tuple;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != tuple) bad("tensor index tuples must be sorted");
    if (t.entry(tuple) != 0) bad("duplicate tensor entry");
    t.set_entry(std::move(tuple), rational_from_json(field(e, "coeff")));
  }
  return t;
}

}  // namespace

Json tensor_to_json(const SymmetricTensor& t) {
  Json j = header("tensor");
  j["n"] = t.dimension();
  j["d"] = t.order();
  j["entries"] = entries_to_json(t);
  return j;
}

SymmetricTensor tensor_from_json(const Json& j) {
  check_header(j, "tensor");
  return entries_from_json(j);
}

Json threshold_to_json(const ThresholdInstance& inst) {
  Json j = header("threshold");
  j["n"] = inst.tensor().dimension();
  j["d"] = inst.order();
  j["entries"] = entries_to_json(inst.tensor());
  j["B"] = rational_to_json(inst.threshold_base());
  j["gamma_sq"] = rational_to_json(inst.gamma_sq());
  return j;
}

ThresholdInstance threshold_from_json(const Json& j) {
  check_header(j, "threshold");
  SymmetricTensor t = entries_from_json(j);
  ThresholdInstance inst(std::move(t), rational_from_json(field(j, "B")));
  if (rational_from_json(field(j, "gamma_sq")) != inst.gamma_sq())
    bad("stored gamma_sq disagrees with the order");
  return inst;
}

Json witness_to_json(const SphereWitness& w) {
  Json j = header("witness");
  Json y = Json::array();
  for (Eigen::Index i = 0; i < w.y.size(); ++i) y.push_back(rational_to_json(w.y[i]));
  j["y"] = std::move(y);
  j["exact"] = w.exact;
  return j;
}

SphereWitness witness_from_json(const Json& j) {
  check_header(j, "witness");
  const Json& y = field(j, "y");
  if (!y.is_array() || y.empty()) bad("witness must list coordinates");
  SphereWitness w;
  w.y.resize(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i)
    w.y[static_cast<Eigen::Index>(i)] = rational_from_json(y[i]);
  const Json& e = field(j, "exact");
  if (!e.is_boolean()) bad("'exact' must be a boolean");
  w.exact = e.get<bool>();
  return w;
}

Json estimate_to_json(const MaxEstimate& e) {
  Json j;
  j["value"] = e.value;
  Json arg = Json::array();
  for (Eigen::Index i = 0; i < e.argmax.size(); ++i) arg.push_back(e.argmax[i]);
  j["argmax"] = std::move(arg);
  j["iterations"] = e.iterations;
  j["restarts_used"] = e.restarts_used;
  j["converged"] = e.converged;
  return j;
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw InputError("failed writing '" + path + "'");
}

Json load_json(const std::string& path, const std::string& expected_kind) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("invalid JSON in '" + path + "': " + e.what());
  }
  check_header(j, expected_kind);
  return j;
}

std::string json_kind(const Json& j) {
  auto it = j.find("kind");
  if (it == j.end() || !it->is_string()) bad("missing 'kind' tag");
  return it->get<std::string>();
}

std::string digest(const Json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace tst
