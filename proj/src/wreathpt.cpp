#include "orbifrob/wreathpt.hpp"

#include <algorithm>
#include <chrono>

#include "orbifrob/kernels.hpp"
#include "orbifrob/parallel.hpp"
#include "orbifrob/wreath_combinatorics.hpp"

namespace orbifrob {

using nlohmann::ordered_json;

std::shared_ptr<const FrobeniusAlgebra> center_algebra(const GroupPtr& g, const Limits& limits) {
  const FiniteGroup& G = *g;
  G.require_enumerable(limits);
  const ConjugacyClasses cc = conjugacy_classes(G, limits);
  const std::size_t k = cc.classes.size();
  limits.require(sat_mul(G.order(), G.order()), "class sum convolution");

  FrobeniusAlgebra::Data d;
  d.name = "ZQ[" + G.name() + "]";
  d.d = 0;
  for (const auto& cls : cc.classes) {
    d.labels.push_back(G.format(cls.front()));
    d.degrees.push_back(0);
  }
  d.unit = Vec::basis(0);
  d.structure.assign(k * k, Vec{});
  d.metric = DenseMatrix(k);
  std::vector<std::uint64_t> count(G.order());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::fill(count.begin(), count.end(), 0);
      for (Elt x : cc.classes[i])
        for (Elt y : cc.classes[j]) ++count[G.mul(x, y)];
      for (std::size_t c = 0; c < k; ++c) d.structure[i * k + j].add(c, Rational(count[cc.classes[c].front()]));
      d.metric(i, j) = Rational(count[0]) / Rational(G.order());
    }
  return std::make_shared<FrobeniusAlgebra>(std::move(d));
}

std::vector<Vec> idempotent_basis(const GroupPtr& g, const Limits& limits) {
  const FiniteGroup& G = *g;
  G.require_enumerable(limits);
  for (Elt x = 0; x < G.order(); ++x)
    if (G.mul(x, x) != 0) throw NotElementaryAbelian2(G.name() + " has an element of order > 2");
  if (!G.is_abelian()) throw NotElementaryAbelian2(G.name() + " is not abelian");

  // greedy generating set; coords[x] is the bit vector of x over it
  std::vector<Elt> gens;
  std::vector<std::uint64_t> coords(G.order(), UINT64_MAX);
  coords[0] = 0;
  std::vector<Elt> span{0};
  for (Elt x = 1; x < G.order(); ++x) {
    if (coords[x] != UINT64_MAX) continue;
    const std::uint64_t bit = std::uint64_t{1} << gens.size();
    gens.push_back(x);
    const std::size_t old = span.size();
    for (std::size_t s = 0; s < old; ++s) {
      const Elt y = G.mul(span[s], x);
      coords[y] = coords[span[s]] | bit;
      span.push_back(y);
    }
  }
  const auto cc = conjugacy_classes(G, limits);
  const Rational scale(1, static_cast<unsigned long>(G.order()));
  std::vector<Vec> out;
  for (std::uint64_t k = 0; k < G.order(); ++k) {
    Vec u;
    for (Elt x = 0; x < G.order(); ++x) {
      const bool odd = __builtin_popcountll(coords[x] & k) & 1;
      u.add(cc.class_of[x], odd ? Rational(-scale) : scale);
    }
    out.push_back(std::move(u));
  }

  const auto A = center_algebra(g, limits);
  const Rational expect_metric = scale * scale;
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = 0; b < out.size(); ++b) {
      const Vec p = A->multiply(out[a], out[b]);
      if (!(a == b ? p == out[a] : p.empty()))
        throw InternalInvariantViolation("idempotents " + std::to_string(a) + ", " + std::to_string(b) + " not orthogonal");
      if (A->metric(out[a], out[b]) != (a == b ? expect_metric : Rational(0)))
        throw InternalInvariantViolation("idempotent metric mismatch");
    }
  return out;
}

Vec CanonicalIso::image(const LSElt& v) const {
  Vec out;
  for (const auto& [k, c] : v)
    for (Elt x : orbit[key_index.at(k)]) out.add(x, c);
  return out;
}

LSElt CanonicalIso::preimage(const Vec& w) const {
  LSElt out;
  std::vector<bool> done(keys.size(), false);
  for (const auto& [x, c] : w) {
    const std::size_t k = key_of[x];
    if (done[k]) continue;
    done[k] = true;
    for (Elt y : orbit[k])
      if (w.coeff(y) != c) throw InternalInvariantViolation("vector is not constant on the orbit of " + wreath->format(x));
    out.add(keys[k], c);
  }
  return out;
}

CanonicalIso canonical_iso(const GroupPtr& g, std::size_t n, const Limits& limits) {
  CanonicalIso iso;
  iso.group = g;
  iso.center = center_algebra(g, limits);
  iso.ls = std::make_unique<LSAlgebra>(iso.center, n, limits);
  iso.wreath = wreath_product(g, n);
  const WreathProduct& W = *iso.wreath;
  W.require_enumerable(limits);
  iso.keys = iso.ls->basis();
  for (std::size_t k = 0; k < iso.keys.size(); ++k) iso.key_index.emplace(iso.keys[k], k);

  const ConjugacyClasses cc = conjugacy_classes(*g, limits);
  iso.orbit.assign(iso.keys.size(), {});
  iso.key_of.assign(W.order(), 0);
  for (Elt x = 0; x < W.order(); ++x) {
    const LSKey key{W.decode(x).sigma, class_signature(W, x, cc)};
    const std::size_t k = iso.key_index.at(key);
    iso.key_of[x] = k;
    iso.orbit[k].push_back(x);
  }

  // |O| = |G|^n / prod_a |Z_G(frak_a)|
  std::vector<std::uint64_t> zsize(cc.classes.size());
  for (std::size_t c = 0; c < cc.classes.size(); ++c) zsize[c] = g->order() / cc.classes[c].size();
  for (std::size_t k = 0; k < iso.keys.size(); ++k) {
    std::uint64_t expect = W.normal_order();
    for (std::size_t c : iso.keys[k].assign) expect /= zsize[c];
    if (iso.orbit[k].size() != expect)
      throw InternalInvariantViolation("orbit of " + iso.ls->key_to_string(iso.keys[k]) + " has size " +
                                       std::to_string(iso.orbit[k].size()) + ", expected " + std::to_string(expect));
  }
  return iso;
}

ordered_json RingIsoReport::to_json(bool include_timing) const {
  ordered_json j;
  j["group"] = group;
  j["n"] = n;
  j["pairs_checked"] = pairs_checked;
  j["product_mismatches"] = product_mismatches;
  j["metric_mismatches"] = metric_mismatches;
  j["action_mismatches"] = action_mismatches;
  if (include_timing) j["elapsed_ms"] = elapsed_ms;
  return j;
}

RingIsoReport verify_ring_iso(const GroupPtr& g, std::size_t n, const RingIsoOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const CanonicalIso iso = canonical_iso(g, n, options.limits);
  const WreathProduct& W = *iso.wreath;
  const LSAlgebra& ls = *iso.ls;
  const std::size_t dim = iso.keys.size();
  const Rational inv_k(1, static_cast<unsigned long>(W.normal_order()));

  RingIsoReport rep;
  rep.group = g->name();
  rep.n = n;
  rep.pairs_checked = static_cast<std::uint64_t>(dim) * dim;

  // wreath side: all orbit-sum products at once
  OrbitSums sums{iso.orbit, iso.key_of};
  const auto table = orbit_products_omp(W, sums, options.jobs);
  const std::size_t unit_key = iso.key_of[W.identity()];

  using Bad = std::pair<std::vector<ordered_json>, std::vector<ordered_json>>;
  auto per_u = parallel_map<Bad>(dim, options.jobs, [&](std::size_t u) {
    Bad res;
    for (std::size_t v = 0; v < dim; ++v) {
      const OrbitProduct& w = table[u * dim + v];
      const LSElt ls_prod = ls.multiply(iso.keys[u], iso.keys[v]);
      LSElt wreath_prod;
      for (const auto& [k, c] : w.terms) wreath_prod.add(iso.keys[k], Rational(c));
      const auto uv = [&] { return ordered_json{{"u", ls.key_to_string(iso.keys[u])}, {"v", ls.key_to_string(iso.keys[v])}}; };
      if (!w.invariant || ls_prod != wreath_prod) {
        ordered_json m = uv();
        m["ls"] = ls.elt_to_json(ls_prod);
        m["wreath"] = ls.elt_to_json(wreath_prod);
        if (!w.invariant) m["reason"] = "wreath product is not a combination of orbit sums";
        res.first.push_back(std::move(m));
      }
      std::int64_t at_one = 0;
      for (const auto& [k, c] : w.terms)
        if (k == unit_key) at_one = c;
      const Rational wreath_metric = Rational(at_one) * inv_k;
      const Rational ls_metric = ls.metric(iso.keys[u], iso.keys[v]);
      if (wreath_metric != ls_metric) {
        ordered_json m = uv();
        m["ls"] = to_string(ls_metric);
        m["wreath"] = to_string(wreath_metric);
        res.second.push_back(std::move(m));
      }
    }
    return res;
  });
  for (auto& r : per_u) {
    for (auto& m : r.first) rep.product_mismatches.push_back(std::move(m));
    for (auto& m : r.second) rep.metric_mismatches.push_back(std::move(m));
  }

  // Sigma_n actions: phi(rho(tau) u) = rho(1.tau) phi(u)
  const auto perms = all_perms(n);
  auto per_tau = parallel_map<std::vector<ordered_json>>(perms.size(), options.jobs, [&](std::size_t t) {
    std::vector<ordered_json> bad;
    const Elt lift = W.perm_element(perms[t]);
    for (std::size_t u = 0; u < dim; ++u) {
      const std::size_t target = iso.key_index.at(ls.act(perms[t], iso.keys[u]));
      std::vector<Elt> moved;
      for (Elt x : iso.orbit[u]) moved.push_back(W.conj(x, lift));
      std::sort(moved.begin(), moved.end());
      if (moved != iso.orbit[target])
        bad.push_back({{"tau", perms[t].to_string()}, {"u", ls.key_to_string(iso.keys[u])}});
    }
    return bad;
  });
  for (auto& b : per_tau)
    for (auto& m : b) rep.action_mismatches.push_back(std::move(m));

  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace orbifrob
