#include "orbifrob/wreath_combinatorics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace orbifrob {

namespace {

void check_reps(const OrbitPartition& orb, const std::vector<unsigned>& reps) {
  if (reps.size() != orb.size())
    throw BadRepresentative("expected " + std::to_string(orb.size()) + " representatives, got " +
                            std::to_string(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a)
    if (reps[a] >= orb.degree() || orb.block_of(reps[a]) != a)
      throw BadRepresentative("representative " + std::to_string(reps[a] + 1) + " is not in orbit " +
                              std::to_string(a));
}

void check_map(const GMap& g, std::size_t n, const FiniteGroup& G) {
  if (g.size() != n) throw std::invalid_argument("mapping has wrong length");
  for (Elt x : g)
    if (x >= G.order()) throw std::invalid_argument("mapping value is not a group element");
}

// Decodes a base-|G| code into components, g_1 most significant.
GMap components(std::uint64_t code, std::size_t n, std::uint64_t base) {
  GMap g(n);
  for (std::size_t i = n; i-- > 0;) {
    g[i] = code % base;
    code /= base;
  }
  return g;
}

}  // namespace

std::vector<unsigned> default_representatives(const OrbitPartition& orbits) {
  std::vector<unsigned> reps;
  reps.reserve(orbits.size());
  for (const auto& b : orbits.blocks()) reps.push_back(b.front());
  return reps;
}

GMap cycle_product(const FiniteGroup& G, const GMap& g, const Perm& sigma, const std::vector<unsigned>& reps) {
  const OrbitPartition orb = orbits(sigma);
  check_reps(orb, reps);
  check_map(g, sigma.degree(), G);
  GMap out(orb.size());
  for (std::size_t a = 0; a < orb.size(); ++a) {
    Elt acc = G.identity();
    unsigned i = reps[a];
    for (std::size_t k = 0; k < orb.block(a).size(); ++k) {
      acc = G.mul(g[i], acc);  // newer factors multiply on the left
      i = sigma(i);
    }
    out[a] = acc;
  }
  return out;
}

GMap cycle_product(const FiniteGroup& G, const GMap& g, const Perm& sigma) {
  return cycle_product(G, g, sigma, default_representatives(orbits(sigma)));
}

GMap nu(const FiniteGroup& G, const GMap& g, const Perm& sigma, const std::vector<unsigned>& reps) {
  const OrbitPartition orb = orbits(sigma);
  check_reps(orb, reps);
  check_map(g, sigma.degree(), G);
  GMap out(sigma.degree());
  for (std::size_t a = 0; a < orb.size(); ++a) {
    Elt acc = G.identity();
    unsigned i = reps[a];
    for (std::size_t m = 0; m < orb.block(a).size(); ++m) {
      acc = G.mul(g[i], acc);
      out[i] = acc;
      i = sigma(i);
    }
  }
  return out;
}

GMap epsilon(const FiniteGroup& G, const GMap& frak, const Perm& sigma, const std::vector<unsigned>& reps) {
  const OrbitPartition orb = orbits(sigma);
  check_reps(orb, reps);
  check_map(frak, orb.size(), G);
  GMap out(sigma.degree(), G.identity());
  for (std::size_t a = 0; a < orb.size(); ++a) out[reps[a]] = frak[a];
  return out;
}

std::vector<std::size_t> class_signature(const WreathProduct& W, Elt x, const ConjugacyClasses& base_classes) {
  const WreathElt w = W.decode(x);
  const GMap psi = cycle_product(W.base(), w.g, w.sigma);
  std::vector<std::size_t> sig(psi.size());
  for (std::size_t a = 0; a < psi.size(); ++a) sig[a] = base_classes.class_of[psi[a]];
  return sig;
}

std::vector<Elt> orbit_O(const WreathProduct& W, const GMap& frak, const Perm& sigma, const Limits& limits) {
  limits.require(W.normal_order(), "enumerate coset G^I sigma");
  const FiniteGroup& G = W.base();
  const OrbitPartition orb = orbits(sigma);
  check_map(frak, orb.size(), G);
  const ConjugacyClasses cc = conjugacy_classes(G, limits);
  std::vector<std::size_t> want(frak.size());
  for (std::size_t a = 0; a < frak.size(); ++a) want[a] = cc.class_of[frak[a]];

  std::vector<Elt> out;
  for (std::uint64_t code = 0; code < W.normal_order(); ++code) {
    const GMap g = components(code, W.degree(), G.order());
    const GMap psi = cycle_product(G, g, sigma);
    bool match = true;
    for (std::size_t a = 0; a < psi.size() && match; ++a) match = cc.class_of[psi[a]] == want[a];
    if (match) out.push_back(W.encode(g, sigma));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elt> normal_conjugation_orbit(const WreathProduct& W, Elt x, const Limits& limits) {
  limits.require(W.normal_order(), "enumerate G^I");
  std::set<Elt> seen;
  for (std::uint64_t code = 0; code < W.normal_order(); ++code) seen.insert(W.conj(x, W.normal_element(code)));
  return {seen.begin(), seen.end()};
}

std::vector<Elt> normal_centralizer(const WreathProduct& W, Elt x, const Limits& limits) {
  limits.require(W.normal_order(), "enumerate G^I");
  std::vector<Elt> out;
  for (std::uint64_t code = 0; code < W.normal_order(); ++code) {
    const Elt f = W.normal_element(code);
    if (W.mul(f, x) == W.mul(x, f)) out.push_back(f);
  }
  return out;
}

bool centralizer_formula_check(const WreathProduct& W, const GMap& frak, const Perm& sigma, const Limits& limits) {
  const FiniteGroup& G = W.base();
  const OrbitPartition orb = orbits(sigma);
  const auto reps = default_representatives(orb);
  const Elt x = W.encode(epsilon(G, frak, sigma, reps), sigma);
  const std::vector<Elt> brute = normal_centralizer(W, x, limits);

  // prod_a Delta^a_{Z_G(frak_a)}: constant on each orbit, valued in the centralizer.
  std::vector<std::vector<Elt>> local(orb.size());
  for (std::size_t a = 0; a < orb.size(); ++a) local[a] = centralizer(G, {frak[a]}, limits);
  std::vector<Elt> formula;
  std::vector<std::size_t> idx(orb.size(), 0);
  for (;;) {
    GMap f(W.degree());
    for (std::size_t a = 0; a < orb.size(); ++a)
      for (unsigned i : orb.block(a)) f[i] = local[a][idx[a]];
    formula.push_back(W.encode(f, Perm(W.degree())));
    std::size_t a = 0;
    while (a < orb.size() && ++idx[a] == local[a].size()) idx[a++] = 0;
    if (a == orb.size()) break;
  }
  std::sort(formula.begin(), formula.end());
  return formula == brute;
}

bool FiberProfile::fibers_equal() const {
  if (fibers.empty()) return false;
  const auto first = fibers.begin()->second;
  return std::all_of(fibers.begin(), fibers.end(), [&](const auto& kv) { return kv.second == first; });
}

bool FiberProfile::matches_prediction() const {
  if (!fibers_equal() || fibers.begin()->second != predicted_fiber) return false;
  return fibers.size() == predicted_target_elements && targets == predicted_targets;
}

FiberProfile fiber_profile(const WreathProduct& W, const GMap& frak_g, const Perm& sigma, const GMap& frak_h,
                           const Perm& tau, const Limits& limits) {
  const FiniteGroup& G = W.base();
  if (!G.is_abelian()) throw NotAbelian("fiber_profile requires an abelian base group, got " + G.name());
  if (joint_orbits(sigma, tau).size() != 1)
    throw NotTransitive("<" + sigma.to_string() + ", " + tau.to_string() + "> is not transitive");

  const std::vector<Elt> left = orbit_O(W, frak_g, sigma, limits);
  const std::vector<Elt> right = orbit_O(W, frak_h, tau, limits);
  limits.require(sat_mul(left.size(), right.size()), "fiber_profile source pairs");
  const Perm st = sigma * tau;
  const std::size_t n = W.degree();
  const std::size_t r = orbits(st).size();

  FiberProfile out;
  std::set<GMap> hit;
  for (Elt x : left)
    for (Elt y : right) {
      const Elt z = W.mul(x, y);
      ++out.fibers[z];
      ++out.pairs;
    }
  for (const auto& [z, count] : out.fibers) hit.insert(cycle_product(G, W.decode(z).g, st));
  out.targets.assign(hit.begin(), hit.end());

  Elt total = G.identity();
  for (Elt a : frak_g) total = G.mul(total, a);
  for (Elt b : frak_h) total = G.mul(total, b);
  const std::uint64_t combos = sat_pow(G.order(), r);
  limits.require(combos, "fiber_profile target enumeration");
  for (std::uint64_t code = 0; code < combos; ++code) {
    const GMap w = components(code, r, G.order());
    Elt prod = G.identity();
    for (Elt c : w) prod = G.mul(prod, c);
    if (prod == total) out.predicted_targets.push_back(w);
  }
  std::sort(out.predicted_targets.begin(), out.predicted_targets.end());

  const long exponent = static_cast<long>(n) + 1 - static_cast<long>(orbits(sigma).size()) -
                        static_cast<long>(orbits(tau).size());
  out.predicted_target_elements =
      sat_mul(out.predicted_targets.size(), sat_pow(G.order(), static_cast<std::uint64_t>(n - r)));
  out.predicted_fiber = exponent < 0 ? 0 : sat_pow(G.order(), static_cast<std::uint64_t>(exponent));
  return out;
}

}  // namespace orbifrob
