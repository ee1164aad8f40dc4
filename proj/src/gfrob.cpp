#include "orbifrob/gfrob.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "orbifrob/parallel.hpp"

namespace orbifrob {

using nlohmann::json;
using nlohmann::ordered_json;

Vec GFrobeniusAlgebra::multiply(const Vec& x, const Vec& y) const {
  Vec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) out.add_scaled(multiply_basis(i, j), a * b);
  return out;
}

Vec GFrobeniusAlgebra::act(Elt g, const Vec& v) const {
  Vec out;
  for (const auto& [i, a] : v) out.add_scaled(act_basis(g, i), a);
  return out;
}

Rational GFrobeniusAlgebra::metric(const Vec& x, const Vec& y) const {
  Rational out = 0;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      const Rational m = metric_basis(i, j);
      if (!is_zero(m)) out += a * b * m;
    }
  return out;
}

// ---------------------------------------------------------------- tables

TabulatedGFrobenius::TabulatedGFrobenius(Data data) : data_(std::move(data)) {
  const std::size_t n = data_.labels.size();
  if (!data_.group) throw InvalidInstance("missing group");
  const std::uint64_t order = data_.group->order();
  if (data_.sectors.size() != n || data_.degrees.size() != n || data_.products.size() != n * n ||
      data_.actions.size() != order * n || data_.metric.size() != n)
    throw InvalidInstance("inconsistent G-Frobenius table shape");
  for (Elt s : data_.sectors)
    if (s >= order) throw InvalidInstance("sector is not a group element");
}

std::size_t TabulatedGFrobenius::index(const std::string& label) const {
  for (std::size_t i = 0; i < data_.labels.size(); ++i)
    if (data_.labels[i] == label) return i;
  throw UnknownLabel(label);
}

GroupAlgebra::GroupAlgebra(GroupPtr group, const Limits& limits) : group_(std::move(group)) {
  group_->require_enumerable(limits);
}

namespace {

// Integer coefficients whose products and sums stay inside int64.
bool small_integral(const Vec& x, const Vec& y) {
  std::uint64_t mx = 0, my = 0;
  for (const auto& [k, c] : x) {
    if (!is_integer(c) || !c.get_num().fits_slong_p()) return false;
    mx = std::max<std::uint64_t>(mx, std::labs(c.get_num().get_si()));
  }
  for (const auto& [k, c] : y) {
    if (!is_integer(c) || !c.get_num().fits_slong_p()) return false;
    my = std::max<std::uint64_t>(my, std::labs(c.get_num().get_si()));
  }
  const std::uint64_t bound = sat_mul(sat_mul(mx, my), sat_mul(x.size(), y.size()));
  return bound < (std::uint64_t{1} << 62);
}

}  // namespace

Vec GroupAlgebra::multiply(const Vec& x, const Vec& y) const {
  if (!small_integral(x, y)) return GFrobeniusAlgebra::multiply(x, y);
  std::vector<std::pair<Elt, long>> xs, ys;
  for (const auto& [k, c] : x) xs.emplace_back(k, c.get_num().get_si());
  for (const auto& [k, c] : y) ys.emplace_back(k, c.get_num().get_si());
  std::unordered_map<Elt, long> acc;
  acc.reserve(xs.size() * ys.size());
  for (const auto& [i, a] : xs)
    for (const auto& [j, b] : ys) acc[group_->mul(i, j)] += a * b;
  std::vector<std::pair<Elt, long>> sorted(acc.begin(), acc.end());
  std::sort(sorted.begin(), sorted.end());
  Vec out;
  for (const auto& [k, c] : sorted) out.add(k, Rational(c));
  return out;
}

Rational GroupAlgebra::metric(const Vec& x, const Vec& y) const {
  Rational out = 0;
  for (const auto& [i, a] : x) {
    const Rational b = y.coeff(group_->inv(i));
    if (!is_zero(b)) out += a * b;
  }
  return out;
}

TabulatedGFrobenius tabulate(const GFrobeniusAlgebra& h, GroupPtr group, const Limits& limits) {
  const std::size_t n = h.dim();
  limits.require(sat_mul(n, n), "tabulate products");
  limits.require(sat_mul(group->order(), n), "tabulate actions");
  TabulatedGFrobenius::Data d;
  d.name = h.name();
  d.group = std::move(group);
  d.d = h.d();
  d.unit = h.unit();
  d.metric = DenseMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.labels.push_back(h.label(i));
    d.sectors.push_back(h.sector(i));
    d.degrees.push_back(h.degree(i));
  }
  d.products.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d.products[i * n + j] = h.multiply_basis(i, j);
      d.metric(i, j) = h.metric_basis(i, j);
    }
  d.actions.resize(d.group->order() * n);
  for (Elt g = 0; g < d.group->order(); ++g)
    for (std::size_t i = 0; i < n; ++i) d.actions[g * n + i] = h.act_basis(g, i);
  return TabulatedGFrobenius(std::move(d));
}

TabulatedGFrobenius from_frobenius(const FrobeniusAlgebra& a) {
  TabulatedGFrobenius::Data d;
  const auto& src = a.data();
  const std::size_t n = a.dim();
  d.name = src.name;
  d.group = make_cyclic(1);
  d.labels = src.labels;
  d.sectors.assign(n, 0);
  d.degrees = src.degrees;
  d.d = src.d;
  d.unit = src.unit;
  d.products = src.structure;
  d.metric = src.metric;
  for (std::size_t i = 0; i < n; ++i) d.actions.push_back(Vec::basis(i));
  return TabulatedGFrobenius(std::move(d));
}

// ---------------------------------------------------------------- checker

bool GFrobReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const AxiomVerdict& v) { return v.pass; });
}

const AxiomVerdict& GFrobReport::verdict(const std::string& axiom) const {
  for (const auto& v : verdicts)
    if (v.axiom == axiom) return v;
  throw std::out_of_range("no verdict for axiom " + axiom);
}

ordered_json GFrobReport::to_json() const {
  ordered_json j = ordered_json::object();
  for (const auto& v : verdicts) {
    if (v.pass)
      j[v.axiom] = "pass";
    else
      j[v.axiom] = {{"witness", v.witness}};
  }
  return j;
}

namespace {

using Witness = std::optional<ordered_json>;

bool in_sector(const GFrobeniusAlgebra& h, const Vec& v, Elt m) {
  for (const auto& [k, c] : v)
    if (h.sector(k) != m) return false;
  return true;
}

bool homogeneous(const GFrobeniusAlgebra& h, const Vec& v, const Rational& deg) {
  for (const auto& [k, c] : v)
    if (h.degree(k) != deg) return false;
  return true;
}

struct CaseLists {
  std::vector<Elt> elems;                                  // group elements
  std::vector<std::pair<Elt, Elt>> elem_pairs;
  std::vector<std::pair<Elt, std::size_t>> elem_basis;
  std::vector<std::array<std::size_t, 2>> pairs;           // basis pairs
  std::vector<std::array<std::size_t, 3>> triples;         // basis triples
  std::vector<std::tuple<Elt, std::size_t, std::size_t>> elem_pairs_basis;
  std::vector<std::tuple<Elt, Elt, std::size_t>> action_law;
};

CaseLists build_cases(const GFrobeniusAlgebra& h, const GFrobCheckOptions& o) {
  CaseLists c;
  const std::uint64_t order = h.group().order();
  const std::size_t n = h.dim();
  std::mt19937_64 rng(o.seed);
  auto elem = [&]() { return std::uniform_int_distribution<Elt>(0, order - 1)(rng); };
  auto idx = [&]() { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const bool all_elems = order <= o.exhaustive_group;
  const bool all_basis = n <= o.exhaustive_dim;

  if (all_elems) {
    for (Elt g = 0; g < order; ++g) c.elems.push_back(g);
    for (Elt a = 0; a < order; ++a)
      for (Elt b = 0; b < order; ++b) c.elem_pairs.emplace_back(a, b);
  } else {
    c.elems.push_back(0);
    for (std::size_t s = 0; s < o.samples; ++s) c.elems.push_back(elem());
    for (std::size_t s = 0; s < o.samples; ++s) c.elem_pairs.emplace_back(elem(), elem());
  }
  if (all_basis) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        c.pairs.push_back({i, j});
        for (std::size_t k = 0; k < n; ++k) c.triples.push_back({i, j, k});
      }
  } else {
    for (std::size_t s = 0; s < o.samples; ++s) c.pairs.push_back({idx(), idx()});
    for (std::size_t s = 0; s < o.samples; ++s) c.triples.push_back({idx(), idx(), idx()});
  }
  if (all_elems && all_basis) {
    for (Elt g : c.elems)
      for (std::size_t i = 0; i < n; ++i) {
        c.elem_basis.emplace_back(g, i);
        for (std::size_t j = 0; j < n; ++j) c.elem_pairs_basis.emplace_back(g, i, j);
      }
    for (const auto& [a, b] : c.elem_pairs)
      for (std::size_t i = 0; i < n; ++i) c.action_law.emplace_back(a, b, i);
    // keep the cubic lists bounded
    if (c.action_law.size() > 200000) {
      std::shuffle(c.action_law.begin(), c.action_law.end(), rng);
      c.action_law.resize(200000);
    }
    if (c.elem_pairs_basis.size() > 200000) {
      std::shuffle(c.elem_pairs_basis.begin(), c.elem_pairs_basis.end(), rng);
      c.elem_pairs_basis.resize(200000);
    }
  } else {
    for (Elt g : c.elems)
      for (std::size_t s = 0; s < std::min<std::size_t>(n, 8); ++s) c.elem_basis.emplace_back(g, all_basis ? s : idx());
    for (std::size_t s = 0; s < o.samples; ++s) {
      c.elem_pairs_basis.emplace_back(elem(), idx(), idx());
      c.action_law.emplace_back(elem(), elem(), idx());
    }
  }
  return c;
}

}  // namespace

GFrobReport check_axioms(const GFrobeniusAlgebra& h, const GFrobCheckOptions& o) {
  const FiniteGroup& G = h.group();
  const std::size_t n = h.dim();
  const int jobs = o.jobs;
  const CaseLists cs = build_cases(h, o);
  auto L = [&](std::size_t i) { return h.label(i); };
  auto E = [&](Elt g) { return G.format(g); };
  auto B = [](std::size_t i) { return Vec::basis(i); };

  std::map<std::string, Witness> found;
  auto want = [&](const char* ax) {
    return o.only.empty() || std::find(o.only.begin(), o.only.end(), ax) != o.only.end();
  };

  // i) graded module, right action, rho(1) = id
  if (want("i")) {
    Witness w = first_failure<ordered_json>(cs.elem_basis.size(), jobs, [&](std::size_t c) -> Witness {
      const auto [g, i] = cs.elem_basis[c];
      const Elt target = G.conj(h.sector(i), g);
      if (!in_sector(h, h.act_basis(g, i), target))
        return ordered_json{{"gamma", E(g)}, {"v", L(i)}, {"expected_sector", E(target)}};
      if (g == 0 && !(h.act_basis(0, i) == B(i))) return ordered_json{{"gamma", E(0)}, {"v", L(i)}};
      return std::nullopt;
    });
    if (!w)
      w = first_failure<ordered_json>(cs.action_law.size(), jobs, [&](std::size_t c) -> Witness {
        const auto [a, b, i] = cs.action_law[c];
        if (h.act_basis(G.mul(a, b), i) == h.act(b, h.act_basis(a, i))) return std::nullopt;
        return ordered_json{{"g1", E(a)}, {"g2", E(b)}, {"v", L(i)}, {"reason", "rho(g1 g2) != rho(g2) rho(g1)"}};
      });
    found["i"] = w;
  }

  // ii) self-invariance
  if (want("ii")) found["ii"] = first_failure<ordered_json>(n, jobs, [&](std::size_t i) -> Witness {
    if (h.act_basis(h.sector(i), i) == B(i)) return std::nullopt;
    return ordered_json{{"gamma", E(h.sector(i))}, {"v", L(i)}};
  });

  // iii) symmetric, sector pairing, non-degenerate
  if (want("iii")) {
    Witness w = first_failure<ordered_json>(cs.pairs.size(), jobs, [&](std::size_t c) -> Witness {
      const auto [i, j] = cs.pairs[c];
      const Rational m = h.metric_basis(i, j);
      if (m != h.metric_basis(j, i)) return ordered_json{{"a", L(i)}, {"b", L(j)}, {"reason", "asymmetric"}};
      if (!is_zero(m) && G.mul(h.sector(i), h.sector(j)) != 0)
        return ordered_json{{"a", L(i)}, {"b", L(j)}, {"reason", "pairs sectors with m1 m2 != 1"}};
      return std::nullopt;
    });
    if (!w) {
      auto rows = parallel_map<Vec>(n, jobs, [&](std::size_t i) {
        Vec r;
        if (n <= o.exhaustive_dim) {
          for (std::size_t j = 0; j < n; ++j) r.add(j, h.metric_basis(i, j));
        } else {
          // sector pairing already checked on samples; only the inverse sector can pair
          for (std::size_t j = 0; j < n; ++j)
            if (G.mul(h.sector(i), h.sector(j)) == 0) r.add(j, h.metric_basis(i, j));
        }
        return r;
      });
      const std::size_t r = rank(rows);
      if (r != n) w = ordered_json{{"rank", r}, {"dim", n}, {"reason", "degenerate"}};
    }
    found["iii"] = w;
  }

  // iv) graded multiplication
  if (want("iv")) found["iv"] = first_failure<ordered_json>(cs.pairs.size(), jobs, [&](std::size_t c) -> Witness {
    const auto [i, j] = cs.pairs[c];
    const Elt m = G.mul(h.sector(i), h.sector(j));
    if (in_sector(h, h.multiply_basis(i, j), m)) return std::nullopt;
    return ordered_json{{"a", L(i)}, {"b", L(j)}, {"expected_sector", E(m)}};
  });

  // v) associativity
  if (want("v")) found["v"] = first_failure<ordered_json>(cs.triples.size(), jobs, [&](std::size_t c) -> Witness {
    const auto [i, j, k] = cs.triples[c];
    if (h.multiply(h.multiply_basis(i, j), B(k)) == h.multiply(B(i), h.multiply_basis(j, k))) return std::nullopt;
    return ordered_json{{"a", L(i)}, {"b", L(j)}, {"c", L(k)}};
  });

  // vi) braided commutativity
  if (want("vi")) found["vi"] = first_failure<ordered_json>(cs.pairs.size(), jobs, [&](std::size_t c) -> Witness {
    const auto [i, j] = cs.pairs[c];
    const Vec lhs = h.multiply_basis(i, j);
    const Vec rhs = h.multiply(h.act_basis(G.inv(h.sector(i)), j), B(i));
    if (lhs == rhs) return std::nullopt;
    return ordered_json{{"a", L(i)}, {"b", L(j)}};
  });

  // vii) equivariance of the product
  if (want("vii")) found["vii"] = first_failure<ordered_json>(cs.elem_pairs_basis.size(), jobs, [&](std::size_t c) -> Witness {
    const auto [g, i, j] = cs.elem_pairs_basis[c];
    if (h.multiply(h.act_basis(g, i), h.act_basis(g, j)) == h.act(g, h.multiply_basis(i, j))) return std::nullopt;
    return ordered_json{{"gamma", E(g)}, {"a", L(i)}, {"b", L(j)}};
  });

  // viii) G-invariance of the metric
  if (want("viii")) found["viii"] = first_failure<ordered_json>(cs.elem_pairs_basis.size(), jobs, [&](std::size_t c) -> Witness {
    const auto [g, i, j] = cs.elem_pairs_basis[c];
    if (h.metric(h.act_basis(g, i), h.act_basis(g, j)) == h.metric_basis(i, j)) return std::nullopt;
    return ordered_json{{"gamma", E(g)}, {"a", L(i)}, {"b", L(j)}};
  });

  // ix) invariance of the metric
  if (want("ix")) found["ix"] = first_failure<ordered_json>(cs.triples.size(), jobs, [&](std::size_t c) -> Witness {
    const auto [i, j, k] = cs.triples[c];
    if (h.metric(h.multiply_basis(i, j), B(k)) == h.metric(B(i), h.multiply_basis(j, k))) return std::nullopt;
    return ordered_json{{"a", L(i)}, {"b", L(j)}, {"c", L(k)}};
  });

  // x) invariant identity
  if (want("x")) {
    const Vec one = h.unit();
    Witness w;
    if (one.empty() || !in_sector(h, one, 0)) w = ordered_json{{"reason", "unit not in the identity sector"}};
    if (!w)
      w = first_failure<ordered_json>(n, jobs, [&](std::size_t i) -> Witness {
        if (h.multiply(one, B(i)) == B(i) && h.multiply(B(i), one) == B(i)) return std::nullopt;
        return ordered_json{{"v", L(i)}, {"reason", "unit does not act as identity"}};
      });
    if (!w)
      w = first_failure<ordered_json>(cs.elems.size(), jobs, [&](std::size_t c) -> Witness {
        const Elt g = cs.elems[c];
        if (h.act(g, one) == one) return std::nullopt;
        return ordered_json{{"gamma", E(g)}, {"reason", "unit not invariant"}};
      });
    found["x"] = w;
  }

  // Q-grading (also needed by xi)
  if (want("q_grading") || want("xi")) {
    Witness w;
    if (h.d() < 0) w = ordered_json{{"reason", "d < 0"}};
    const Rational top = 2 * h.d();
    if (!w)
      w = first_failure<ordered_json>(n, jobs, [&](std::size_t i) -> Witness {
        if (h.degree(i) >= 0 && h.degree(i) <= top) return std::nullopt;
        return ordered_json{{"v", L(i)}, {"degree", to_string(h.degree(i))}, {"reason", "degree outside [0, 2d]"}};
      });
    if (!w && !homogeneous(h, h.unit(), 0)) w = ordered_json{{"reason", "unit not of degree 0"}};
    if (!w)
      w = first_failure<ordered_json>(cs.pairs.size(), jobs, [&](std::size_t c) -> Witness {
        const auto [i, j] = cs.pairs[c];
        if (!homogeneous(h, h.multiply_basis(i, j), h.degree(i) + h.degree(j)))
          return ordered_json{{"a", L(i)}, {"b", L(j)}, {"reason", "product not of summed degree"}};
        if (!is_zero(h.metric_basis(i, j)) && h.degree(i) + h.degree(j) != top)
          return ordered_json{{"a", L(i)}, {"b", L(j)}, {"reason", "metric pairs degrees not summing to 2d"}};
        return std::nullopt;
      });
    if (!w)
      w = first_failure<ordered_json>(cs.elem_basis.size(), jobs, [&](std::size_t c) -> Witness {
        const auto [g, i] = cs.elem_basis[c];
        if (homogeneous(h, h.act_basis(g, i), h.degree(i))) return std::nullopt;
        return ordered_json{{"gamma", E(g)}, {"v", L(i)}, {"reason", "action changes degree"}};
      });
    found["q_grading"] = w;
  }

  // xi) trace axiom. A v of nonzero degree shifts degree, so both traces
  // vanish once the grading is known to hold.
  if (want("xi")) {
    const bool graded = !found["q_grading"];
    std::map<Elt, std::vector<std::size_t>> by_sector;
    for (std::size_t i = 0; i < n; ++i) by_sector[h.sector(i)].push_back(i);
    const std::vector<std::size_t> none;
    auto members = [&](Elt m) -> const std::vector<std::size_t>& {
      auto it = by_sector.find(m);
      return it == by_sector.end() ? none : it->second;
    };
    found["xi"] = first_failure<ordered_json>(cs.elem_pairs.size(), jobs, [&](std::size_t c) -> Witness {
      const auto [a, b] = cs.elem_pairs[c];
      const Elt comm = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)));
      for (std::size_t v : members(comm)) {
        if (graded && !is_zero(h.degree(v))) continue;
        const Vec bv = B(v);
        Rational lhs = 0, rhs = 0;
        const Elt binv = G.inv(b);
        for (std::size_t i : members(a)) lhs += h.multiply(bv, h.act_basis(binv, i)).coeff(i);
        for (std::size_t j : members(b)) rhs += h.act(a, h.multiply_basis(v, j)).coeff(j);
        if (lhs != rhs)
          return ordered_json{{"a", E(a)}, {"b", E(b)}, {"v", L(v)}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
      }
      return std::nullopt;
    });
  }

  GFrobReport rep;
  for (const char* ax : {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "q_grading"}) {
    if (!want(ax)) continue;
    const Witness& w = found[ax];
    rep.verdicts.push_back({ax, !w.has_value(), w ? *w : ordered_json(nullptr)});
  }
  return rep;
}

// ---------------------------------------------------------------- presentations

SemidirectPresentation wreath_presentation(const std::shared_ptr<const WreathProduct>& w) {
  SemidirectPresentation p;
  p.ambient = w;
  p.complement = make_symmetric(w->degree());
  for (std::uint64_t code = 0; code < w->normal_order(); ++code) p.normal.push_back(w->normal_element(code));
  std::sort(p.normal.begin(), p.normal.end());
  // g.sigma = (g.id)(1.sigma); both sides index permutations by lexicographic rank
  p.embed = [w](Elt l) { return w->perm_element(lex_unrank(w->degree(), l)); };
  p.decompose = [w](Elt x) { return std::pair<Elt, Elt>{w->normal_element(w->component_code(x)), w->perm_rank(x)}; };
  return p;
}

SemidirectPresentation direct_presentation(GroupPtr k, GroupPtr l) {
  auto prod = std::make_shared<DirectProduct>(k, l);
  SemidirectPresentation p;
  p.ambient = prod;
  p.complement = l;
  for (Elt a = 0; a < k->order(); ++a) p.normal.push_back(prod->join(a, 0));
  p.embed = [prod](Elt b) { return prod->join(0, b); };
  p.decompose = [prod](Elt x) {
    const auto [a, b] = prod->split(x);
    return std::pair<Elt, Elt>{prod->join(a, 0), b};
  };
  return p;
}

SemidirectPresentation trivial_normal_presentation(GroupPtr gamma) {
  SemidirectPresentation p;
  p.ambient = gamma;
  p.complement = gamma;
  p.normal = {0};
  p.embed = [](Elt l) { return l; };
  p.decompose = [](Elt x) { return std::pair<Elt, Elt>{0, x}; };
  return p;
}

SemidirectPresentation full_normal_presentation(GroupPtr gamma) {
  SemidirectPresentation p;
  p.ambient = gamma;
  p.complement = make_cyclic(1);
  for (Elt x = 0; x < gamma->order(); ++x) p.normal.push_back(x);
  p.embed = [](Elt) { return Elt{0}; };
  p.decompose = [](Elt x) { return std::pair<Elt, Elt>{x, 0}; };
  return p;
}

std::optional<std::string> check_presentation(const SemidirectPresentation& p, const Limits& limits) {
  const FiniteGroup& G = *p.ambient;
  G.require_enumerable(limits);
  const std::set<Elt> K(p.normal.begin(), p.normal.end());
  if (sat_mul(K.size(), p.complement->order()) != G.order()) return "|K| |L| != |Gamma|";
  std::set<std::pair<Elt, Elt>> seen;
  for (Elt x = 0; x < G.order(); ++x) {
    const auto [k, l] = p.decompose(x);
    if (!K.count(k)) return "decompose(" + G.format(x) + ") has a K-part outside K";
    if (G.mul(k, p.embed(l)) != x) return "decompose(" + G.format(x) + ") does not recombine";
    if (!seen.insert({k, l}).second) return "decompose is not injective at " + G.format(x);
  }
  for (Elt k : p.normal)
    for (Elt l = 0; l < p.complement->order(); ++l)
      if (!K.count(G.conj(k, p.embed(l)))) return "K is not normalized by L";
  // (k1 l1)(k2 l2) = (k1 k2^{l1^-1})(l1 l2), k^l = l^-1 k l
  const FiniteGroup& Lg = *p.complement;
  const std::uint64_t budget = std::min<std::uint64_t>(G.order(), 64);
  for (Elt x = 0; x < budget; ++x)
    for (Elt y = 0; y < G.order(); y += 1 + G.order() / 64) {
      const auto [k1, l1] = p.decompose(x);
      const auto [k2, l2] = p.decompose(y);
      const Elt k2l = G.conj(k2, p.embed(Lg.inv(l1)));
      const Elt expect = G.mul(G.mul(k1, k2l), p.embed(Lg.mul(l1, l2)));
      if (G.mul(x, y) != expect) return "product law fails at (" + G.format(x) + ", " + G.format(y) + ")";
    }
  return std::nullopt;
}

// ---------------------------------------------------------------- coinvariants

Vec pi_K(const GFrobeniusAlgebra& h, const SemidirectPresentation& p, const Vec& v) {
  Vec out;
  for (Elt k : p.normal) out += h.act(k, v);
  out *= Rational(1, static_cast<unsigned long>(p.normal.size()));
  return out;
}

Vec Coinvariants::coordinates(const Vec& v) const {
  const auto c = echelon.coordinates(v);
  if (!c) throw InternalInvariantViolation("vector is not K-invariant");
  Vec out;
  for (std::size_t k = 0; k < c->size(); ++k) out.add(k, (*c)[k]);
  return out;
}

Coinvariants coinvariants(const GFrobeniusAlgebra& h, const SemidirectPresentation& p, int jobs,
                          const Limits& limits) {
  const FiniteGroup& G = h.group();
  if (G.name() != p.ambient->name() || G.order() != p.ambient->order())
    throw PresentationMismatch("algebra group " + G.name() + " is not the presentation's " + p.ambient->name());
  const std::size_t n = h.dim();
  limits.require(sat_mul(p.normal.size(), n), "coinvariant averaging");

  // sum_k rho(k) b_i; the 1/|K| is absorbed by the pivot normalization
  const auto sums = parallel_map<Vec>(n, jobs, [&](std::size_t i) {
    Vec s;
    for (Elt k : p.normal) s += h.act_basis(k, i);
    return s;
  });
  Coinvariants out;
  for (const auto& s : sums) out.echelon.insert(s);
  out.basis = out.echelon.rows();
  out.pivots = out.echelon.pivots();
  const std::size_t m = out.basis.size();
  limits.require(sat_mul(m, m), "coinvariant products");
  const Rational inv_k(1, static_cast<unsigned long>(p.normal.size()));

  TabulatedGFrobenius::Data d;
  d.name = h.name() + "^K";
  d.group = p.complement;
  d.d = h.d();
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t piv = out.pivots[r];
    d.labels.push_back("[" + h.label(piv) + "]");
    d.sectors.push_back(p.decompose(h.sector(piv)).second);
    d.degrees.push_back(h.degree(piv));
  }
  d.unit = out.coordinates(h.unit());
  d.products = parallel_map<Vec>(m * m, jobs, [&](std::size_t c) {
    return out.coordinates(h.multiply(out.basis[c / m], out.basis[c % m]));
  });
  const std::uint64_t lorder = p.complement->order();
  d.actions = parallel_map<Vec>(lorder * m, jobs, [&](std::size_t c) {
    return out.coordinates(h.act(p.embed(c / m), out.basis[c % m]));
  });
  const auto metric = parallel_map<Rational>(m * m, jobs, [&](std::size_t c) -> Rational {
    return h.metric(out.basis[c / m], out.basis[c % m]) * inv_k;
  });
  d.metric = DenseMatrix(m);
  for (std::size_t c = 0; c < m * m; ++c) d.metric(c / m, c % m) = metric[c];
  out.algebra = std::make_unique<TabulatedGFrobenius>(std::move(d));
  return out;
}

// ---------------------------------------------------------------- JSON

TabulatedGFrobenius gfrob_from_json(const json& j, const Limits& limits) {
  const FrobeniusAlgebra base = frobenius_from_json(j);
  if (!j.contains("group") || !j.at("group").is_string()) throw ParseError("missing field 'group'");
  GroupPtr group = parse_group_spec(j.at("group").get<std::string>());
  group->require_enumerable(limits);
  const std::size_t n = base.dim();
  limits.require(sat_mul(group->order(), n), "instance action table");

  TabulatedGFrobenius::Data d;
  const auto& src = base.data();
  d.name = src.name;
  d.group = group;
  d.labels = src.labels;
  d.degrees = src.degrees;
  d.d = src.d;
  d.unit = src.unit;
  d.products = src.structure;
  d.metric = src.metric;
  d.sectors.assign(n, 0);

  auto read_elt = [&](const json& v) -> Elt {
    std::uint64_t e;
    if (v.is_number_unsigned()) {
      e = v.get<std::uint64_t>();
    } else if (v.is_string()) {
      const std::string s = v.get<std::string>();
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad element index '" + s + "'");
      e = std::stoull(s);
    } else {
      throw ParseError("bad element index " + v.dump());
    }
    if (e >= group->order()) throw ParseError("element index " + std::to_string(e) + " out of range");
    return e;
  };

  if (j.contains("sector")) {
    if (!j.at("sector").is_array()) throw ParseError("'sector' must be an array");
    std::set<std::size_t> seen;
    for (const auto& t : j.at("sector")) {
      if (!t.is_array() || t.size() != 2) throw ParseError("sector entry must be [label, index]: " + t.dump());
      if (!t[0].is_string()) throw ParseError("sector label must be text");
      const std::size_t i = base.index(t[0].get<std::string>());
      if (!seen.insert(i).second) throw ParseError("duplicate sector entry for '" + d.labels[i] + "'");
      d.sectors[i] = read_elt(t[1]);
    }
  }

  d.actions.assign(group->order() * n, Vec{});
  std::vector<bool> have(group->order(), false);
  if (j.contains("action")) {
    if (!j.at("action").is_object()) throw ParseError("'action' must be an object");
    for (const auto& [key, entries] : j.at("action").items()) {
      const Elt g = read_elt(json(key));
      if (!entries.is_array()) throw ParseError("action of " + key + " must be an array");
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& t : entries) {
        if (!t.is_array() || t.size() != 3) throw ParseError("action entry must be [source, target, q]: " + t.dump());
        if (!t[0].is_string() || !t[1].is_string()) throw ParseError("action labels must be text");
        const std::size_t s = base.index(t[0].get<std::string>());
        const std::size_t r = base.index(t[1].get<std::string>());
        if (!seen.insert({s, r}).second) throw ParseError("duplicate action entry in element " + key);
        const Rational q = t[2].is_string() ? parse_rational(t[2].get<std::string>())
                                            : t[2].is_number_integer() ? Rational(t[2].get<long>())
                                                                       : throw ParseError("bad coefficient " + t[2].dump());
        d.actions[g * n + s].add(r, q);
      }
      have[g] = true;
    }
  }
  if (!have[0])
    for (std::size_t i = 0; i < n; ++i) d.actions[i] = Vec::basis(i);
  for (Elt g = 1; g < group->order(); ++g)
    if (!have[g]) throw ParseError("action missing for element " + std::to_string(g));
  return TabulatedGFrobenius(std::move(d));
}

ordered_json gfrob_to_json(const GFrobeniusAlgebra& h) {
  const std::size_t n = h.dim();
  ordered_json j;
  j["name"] = h.name();
  j["group"] = h.group().name();
  j["d"] = to_string(h.d());
  j["basis"] = ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) j["basis"].push_back({{"label", h.label(i)}, {"degree", to_string(h.degree(i))}});
  j["unit"] = ordered_json::array();
  for (const auto& [k, c] : h.unit()) j["unit"].push_back({h.label(k), to_string(c)});
  j["metric"] = ordered_json::array();
  j["structure"] = ordered_json::array();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Rational m = h.metric_basis(a, b);
      if (!is_zero(m)) j["metric"].push_back({h.label(a), h.label(b), to_string(m)});
      for (const auto& [c, v] : h.multiply_basis(a, b))
        j["structure"].push_back({h.label(a), h.label(b), h.label(c), to_string(v)});
    }
  j["sector"] = ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) j["sector"].push_back({h.label(i), h.sector(i)});
  j["action"] = ordered_json::object();
  for (Elt g = 0; g < h.group().order(); ++g) {
    ordered_json entries = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [r, c] : h.act_basis(g, i)) entries.push_back({h.label(i), h.label(r), to_string(c)});
    j["action"][std::to_string(g)] = entries;
  }
  return j;
}

}  // namespace orbifrob
