#include "orbifrob/frobenius.hpp"

#include <array>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace orbifrob {

using nlohmann::json;
using nlohmann::ordered_json;

void Surjection::validate() const {
  std::vector<bool> hit(target_size, false);
  for (std::size_t j = 0; j < map.size(); ++j) {
    if (map[j] >= target_size)
      throw NotSurjective("source " + std::to_string(j) + " maps outside the target set");
    hit[map[j]] = true;
  }
  for (std::size_t t = 0; t < target_size; ++t)
    if (!hit[t]) throw NotSurjective("target " + std::to_string(t) + " has an empty fiber");
}

std::vector<std::vector<std::size_t>> Surjection::fibers() const {
  validate();
  std::vector<std::vector<std::size_t>> out(target_size);
  for (std::size_t j = 0; j < map.size(); ++j) out[map[j]].push_back(j);
  return out;
}

TensorVec tensor_product(const std::vector<Vec>& factors) {
  TensorVec out;
  std::vector<std::size_t> key(factors.size());
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t pos, const Rational& c) {
    if (pos == factors.size()) {
      out.add(key, c);
      return;
    }
    for (const auto& [k, v] : factors[pos]) {
      key[pos] = k;
      rec(pos + 1, c * v);
    }
  };
  for (const auto& f : factors)
    if (f.empty()) return out;
  rec(0, Rational(1));
  return out;
}

FrobeniusAlgebra::FrobeniusAlgebra(Data data) : data_(std::move(data)) {
  const std::size_t n = data_.labels.size();
  if (data_.degrees.size() != n || data_.structure.size() != n * n || data_.metric.size() != n)
    throw InvalidInstance("inconsistent algebra shape");
  for (std::size_t i = 0; i < n; ++i)
    if (!index_.emplace(data_.labels[i], i).second)
      throw InvalidInstance("duplicate label '" + data_.labels[i] + "'");
  auto check_keys = [n](const Vec& v) {
    for (const auto& [k, c] : v)
      if (k >= n) throw InvalidInstance("basis index out of range");
  };
  check_keys(data_.unit);
  for (const auto& v : data_.structure) check_keys(v);

  if (auto inv = inverse(data_.metric)) {
    std::vector<Vec> dual(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) dual[j].add(i, (*inv)(i, j));
    dual_ = std::move(dual);
  }
}

std::size_t FrobeniusAlgebra::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw UnknownLabel(label);
  return it->second;
}

Vec FrobeniusAlgebra::multiply(const Vec& x, const Vec& y) const {
  Vec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) out.add_scaled(product(i, j), a * b);
  return out;
}

Vec FrobeniusAlgebra::multi_product(const std::vector<Vec>& xs) const {
  if (xs.empty()) return unit();
  Vec acc = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) acc = multiply(acc, xs[k]);
  return acc;
}

Rational FrobeniusAlgebra::metric(const Vec& x, const Vec& y) const {
  Rational out = 0;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      const Rational& m = data_.metric(i, j);
      if (!is_zero(m)) out += a * b * m;
    }
  return out;
}

Rational FrobeniusAlgebra::tensor_metric(const TensorVec& x, const TensorVec& y) const {
  Rational out = 0;
  for (const auto& [kx, a] : x)
    for (const auto& [ky, b] : y) {
      if (kx.size() != ky.size()) throw std::invalid_argument("tensor ranks differ");
      Rational p = a * b;
      for (std::size_t t = 0; t < kx.size() && !is_zero(p); ++t) p *= data_.metric(kx[t], ky[t]);
      out += p;
    }
  return out;
}

const std::vector<Vec>& FrobeniusAlgebra::dual_basis() const {
  if (!dual_) throw SingularMetric("metric of '" + name() + "' is degenerate");
  return *dual_;
}

std::vector<TensorVec> FrobeniusAlgebra::comultiply_basis_all(unsigned r, const Limits& limits) const {
  if (r == 0) throw std::invalid_argument("comultiply needs r >= 1");
  const std::size_t n = dim();
  limits.require(sat_pow(n, r), "comultiply tuples");
  const auto& dual = dual_basis();

  // coefficient of b^{i1}⊗...⊗b^{ir} in m_*(b_x) is eta(b_x, b_i1 ... b_ir)
  std::vector<TensorVec> coarse(n);
  std::vector<std::size_t> key(r);
  std::function<void(unsigned, const Vec&)> rec = [&](unsigned pos, const Vec& prefix) {
    if (prefix.empty()) return;  // every extension vanishes
    if (pos == r) {
      for (std::size_t x = 0; x < n; ++x) {
        Rational c = 0;
        for (const auto& [k, v] : prefix) {
          const Rational& m = data_.metric(x, k);
          if (!is_zero(m)) c += v * m;
        }
        coarse[x].add(key, c);
      }
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      key[pos] = i;
      Vec next;
      if (pos == 0) {
        next = Vec::basis(i);
      } else {
        for (const auto& [k, v] : prefix) next.add_scaled(product(k, i), v);
      }
      rec(pos + 1, next);
    }
  };
  rec(0, unit());

  // expand dual-basis tuples into plain basis tuples
  std::vector<TensorVec> out(n);
  for (std::size_t x = 0; x < n; ++x)
    for (const auto& [tuple, c] : coarse[x]) {
      std::vector<Vec> factors;
      factors.reserve(r);
      for (std::size_t i : tuple) factors.push_back(dual[i]);
      out[x].add_scaled(tensor_product(factors), c);
    }
  return out;
}

TensorVec FrobeniusAlgebra::comultiply(const Vec& x, unsigned r, const Limits& limits) const {
  const auto all = comultiply_basis_all(r, limits);
  TensorVec out;
  for (const auto& [k, c] : x) out.add_scaled(all[k], c);
  return out;
}

TensorVec FrobeniusAlgebra::phi_star(const Surjection& phi, const TensorVec& x) const {
  const auto fib = phi.fibers();
  TensorVec out;
  for (const auto& [tuple, c] : x) {
    if (tuple.size() != phi.map.size()) throw std::invalid_argument("tensor rank does not match surjection");
    std::vector<Vec> factors(fib.size());
    for (std::size_t t = 0; t < fib.size(); ++t) {
      std::vector<Vec> parts;
      for (std::size_t j : fib[t]) parts.push_back(Vec::basis(tuple[j]));
      factors[t] = multi_product(parts);
    }
    out.add_scaled(tensor_product(factors), c);
  }
  return out;
}

TensorVec FrobeniusAlgebra::phi_lower(const Surjection& phi, const TensorVec& y, const Limits& limits) const {
  const auto fib = phi.fibers();
  std::vector<std::vector<TensorVec>> co(fib.size());  // per target: m_* of every basis element
  for (std::size_t t = 0; t < fib.size(); ++t)
    co[t] = comultiply_basis_all(static_cast<unsigned>(fib[t].size()), limits);

  TensorVec out;
  std::vector<std::size_t> key(phi.map.size());
  for (const auto& [tuple, c] : y) {
    if (tuple.size() != fib.size()) throw std::invalid_argument("tensor rank does not match surjection");
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t t, const Rational& acc) {
      if (t == fib.size()) {
        out.add(key, acc);
        return;
      }
      for (const auto& [part, v] : co[t][tuple[t]]) {
        for (std::size_t s = 0; s < part.size(); ++s) key[fib[t][s]] = part[s];
        rec(t + 1, acc * v);
      }
    };
    rec(0, c);
  }
  return out;
}

Vec FrobeniusAlgebra::euler_class(const Limits& limits) const {
  const TensorVec m = comultiply(unit(), 2, limits);
  Vec out;
  for (const auto& [tuple, c] : m) out.add_scaled(product(tuple[0], tuple[1]), c);
  return out;
}

FrobeniusAlgebra FrobeniusAlgebra::relabeled(const std::vector<std::size_t>& perm) const {
  const std::size_t n = dim();
  if (perm.size() != n) throw std::invalid_argument("relabeling has wrong size");
  auto move = [&](const Vec& v) {
    Vec out;
    for (const auto& [k, c] : v) out.add(perm[k], c);
    return out;
  };
  Data d;
  d.name = data_.name;
  d.d = data_.d;
  d.labels.resize(n);
  d.degrees.resize(n);
  d.structure.resize(n * n);
  d.metric = DenseMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.labels[perm[i]] = data_.labels[i];
    d.degrees[perm[i]] = data_.degrees[i];
  }
  d.unit = move(data_.unit);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d.structure[perm[i] * n + perm[j]] = move(product(i, j));
      d.metric(perm[i], perm[j]) = data_.metric(i, j);
    }
  return FrobeniusAlgebra(std::move(d));
}

namespace {

Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError("expected a rational, got " + v.dump());
}

std::string json_label(const json& v) {
  if (!v.is_string()) throw ParseError("expected a label string, got " + v.dump());
  return v.get<std::string>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

const json& array_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return v;
}

void require_arity(const json& entry, std::size_t n, const char* what) {
  if (!entry.is_array() || entry.size() != n)
    throw ParseError(std::string(what) + " entry must have " + std::to_string(n) + " items: " + entry.dump());
}

ordered_json vec_json(const FrobeniusAlgebra& a, const Vec& v) {
  ordered_json out = ordered_json::array();
  for (const auto& [k, c] : v) out.push_back({a.label(k), to_string(c)});
  return out;
}

}  // namespace

Vec FrobeniusAlgebra::parse_vec(const json& terms) const {
  if (!terms.is_array()) throw ParseError("element must be an array of [label, coeff] pairs");
  Vec out;
  std::set<std::size_t> seen;
  for (const auto& t : terms) {
    require_arity(t, 2, "element");
    const std::size_t i = index(json_label(t[0]));
    if (!seen.insert(i).second) throw ParseError("duplicate term for '" + label(i) + "'");
    out.add(i, json_rational(t[1]));
  }
  return out;
}

FrobeniusAlgebra frobenius_from_json(const json& j) {
  FrobeniusAlgebra::Data d;
  d.name = field(j, "name").is_string() ? field(j, "name").get<std::string>() : throw ParseError("name must be text");
  d.d = json_rational(field(j, "d"));
  const json& basis = array_field(j, "basis");
  if (basis.empty()) throw ParseError("basis is empty");
  std::unordered_map<std::string, std::size_t> idx;
  for (const auto& b : basis) {
    const std::string lab = json_label(field(b, "label"));
    if (!idx.emplace(lab, d.labels.size()).second) throw ParseError("duplicate label '" + lab + "'");
    d.labels.push_back(lab);
    d.degrees.push_back(json_rational(field(b, "degree")));
  }
  const std::size_t n = d.labels.size();
  auto lookup = [&](const json& v) {
    const std::string lab = json_label(v);
    auto it = idx.find(lab);
    if (it == idx.end()) throw UnknownLabel(lab);
    return it->second;
  };

  std::set<std::size_t> unit_seen;
  for (const auto& t : array_field(j, "unit")) {
    require_arity(t, 2, "unit");
    const std::size_t i = lookup(t[0]);
    if (!unit_seen.insert(i).second) throw ParseError("duplicate unit entry for '" + d.labels[i] + "'");
    d.unit.add(i, json_rational(t[1]));
  }

  d.metric = DenseMatrix(n);
  std::set<std::pair<std::size_t, std::size_t>> metric_seen;
  for (const auto& t : array_field(j, "metric")) {
    require_arity(t, 3, "metric");
    const std::size_t a = lookup(t[0]), b = lookup(t[1]);
    if (!metric_seen.insert({a, b}).second)
      throw ParseError("duplicate metric entry (" + d.labels[a] + ", " + d.labels[b] + ")");
    d.metric(a, b) = json_rational(t[2]);
  }

  d.structure.assign(n * n, Vec{});
  std::set<std::vector<std::size_t>> seen;
  for (const auto& t : array_field(j, "structure")) {
    require_arity(t, 4, "structure");
    const std::size_t a = lookup(t[0]), b = lookup(t[1]), c = lookup(t[2]);
    if (!seen.insert({a, b, c}).second)
      throw ParseError("duplicate structure entry (" + d.labels[a] + ", " + d.labels[b] + ", " + d.labels[c] + ")");
    d.structure[a * n + b].add(c, json_rational(t[3]));
  }
  return FrobeniusAlgebra(std::move(d));
}

ordered_json frobenius_to_json(const FrobeniusAlgebra& a) {
  ordered_json j;
  j["name"] = a.name();
  j["d"] = to_string(a.d());
  j["basis"] = ordered_json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) j["basis"].push_back({{"label", a.label(i)}, {"degree", to_string(a.degree(i))}});
  j["unit"] = vec_json(a, a.unit());
  j["metric"] = ordered_json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!is_zero(a.metric(i, k))) j["metric"].push_back({a.label(i), a.label(k), to_string(a.metric(i, k))});
  j["structure"] = ordered_json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      for (const auto& [c, v] : a.product(i, k))
        j["structure"].push_back({a.label(i), a.label(k), a.label(c), to_string(v)});
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

bool FrobeniusReport::all_pass() const {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

ordered_json FrobeniusReport::to_json() const {
  ordered_json j = ordered_json::object();
  for (const auto& v : verdicts) {
    if (v.pass)
      j[v.axiom] = "pass";
    else
      j[v.axiom] = {{"witness", v.witness}};
  }
  return j;
}

FrobeniusReport check_frobenius_axioms(const FrobeniusAlgebra& a, std::size_t exhaustive_dim, std::size_t samples) {
  const std::size_t n = a.dim();
  const auto lab = [&](std::size_t i) { return a.label(i); };
  FrobeniusReport rep;
  auto verdict = [&](const std::string& name) -> AxiomVerdict& {
    rep.verdicts.push_back({name, true, nullptr});
    return rep.verdicts.back();
  };
  auto fail = [](AxiomVerdict& v, ordered_json w) {
    if (!v.pass) return;
    v.pass = false;
    v.witness = std::move(w);
  };

  // triples to test: all, or a deterministic sample
  std::vector<std::array<std::size_t, 3>> triples;
  if (n <= exhaustive_dim) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) triples.push_back({i, j, k});
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) triples.push_back({pick(rng), pick(rng), pick(rng)});
  }

  auto& assoc = verdict("associativity");
  for (const auto& [i, j, k] : triples) {
    const Vec lhs = a.multiply(a.product(i, j), Vec::basis(k));
    const Vec rhs = a.multiply(Vec::basis(i), a.product(j, k));
    if (!(lhs == rhs)) {
      fail(assoc, {{"a", lab(i)}, {"b", lab(j)}, {"c", lab(k)}});
      break;
    }
  }

  auto& comm = verdict("commutativity");
  for (std::size_t i = 0; i < n && comm.pass; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(a.product(i, j) == a.product(j, i))) {
        fail(comm, {{"a", lab(i)}, {"b", lab(j)}});
        break;
      }

  auto& unit = verdict("unit");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec b = Vec::basis(i);
    if (!(a.multiply(a.unit(), b) == b) || !(a.multiply(b, a.unit()) == b)) {
      fail(unit, {{"a", lab(i)}});
      break;
    }
  }

  auto& sym = verdict("metric_symmetry");
  for (std::size_t i = 0; i < n && sym.pass; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a.metric(i, j) != a.metric(j, i)) {
        fail(sym, {{"a", lab(i)}, {"b", lab(j)}, {"eta_ab", to_string(a.metric(i, j))},
                   {"eta_ba", to_string(a.metric(j, i))}});
        break;
      }

  auto& nondeg = verdict("nondegeneracy");
  {
    std::vector<Vec> rows(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i].add(j, a.metric(i, j));
    const std::size_t r = rank(rows);
    if (r != n) fail(nondeg, {{"rank", r}, {"dim", n}});
  }

  auto& inv = verdict("invariance");
  for (const auto& [i, j, k] : triples) {
    if (a.metric(a.product(i, j), Vec::basis(k)) != a.metric(Vec::basis(i), a.product(j, k))) {
      fail(inv, {{"a", lab(i)}, {"b", lab(j)}, {"c", lab(k)}});
      break;
    }
  }

  auto& grad = verdict("grading");
  const Rational top = 2 * a.d();
  for (std::size_t i = 0; i < n && grad.pass; ++i)
    if (a.degree(i) < 0 || a.degree(i) > top) fail(grad, {{"a", lab(i)}, {"degree", to_string(a.degree(i))}});
  for (const auto& [k, c] : a.unit())
    if (!is_zero(a.degree(k))) fail(grad, {{"unit_component", lab(k)}});
  for (std::size_t i = 0; i < n && grad.pass; ++i)
    for (std::size_t j = 0; j < n && grad.pass; ++j) {
      for (const auto& [k, c] : a.product(i, j))
        if (a.degree(k) != a.degree(i) + a.degree(j)) {
          fail(grad, {{"a", lab(i)}, {"b", lab(j)}, {"component", lab(k)}});
          break;
        }
      if (grad.pass && !is_zero(a.metric(i, j)) && a.degree(i) + a.degree(j) != top)
        fail(grad, {{"a", lab(i)}, {"b", lab(j)}, {"reason", "metric pairs degrees not summing to 2d"}});
    }
  return rep;
}

FrobeniusAlgebra load_frobenius(const std::string& path) {
  FrobeniusAlgebra a = frobenius_from_json(read_json_file(path));
  const FrobeniusReport rep = check_frobenius_axioms(a);
  if (!rep.all_pass()) throw InvalidInstance("'" + path + "' fails Frobenius axioms: " + rep.to_json().dump());
  return a;
}

}  // namespace orbifrob
