#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "orbifrob/groups.hpp"
#include "orbifrob/perm.hpp"

namespace orbifrob {

/// A mapping from an index set (I, or the orbit set o(sigma)) into G.
using GMap = std::vector<Elt>;

/// One representative per block of orbits(sigma); the default picks the smallest member.
std::vector<unsigned> default_representatives(const OrbitPartition& orbits);

/// Cycle product psi^sigma(g): for the orbit a with representative i,
/// g_{sigma^{|a|-1}(i)} ... g_{sigma(i)} g_i. Indexed like orbits(sigma).
/// Throws BadRepresentative if reps[a] is not in block a.
GMap cycle_product(const FiniteGroup& G, const GMap& g, const Perm& sigma, const std::vector<unsigned>& reps);
GMap cycle_product(const FiniteGroup& G, const GMap& g, const Perm& sigma);

/// nu^sigma(g)_{sigma^m(i_a)} = g_{sigma^m(i_a)} ... g_{i_a}.
GMap nu(const FiniteGroup& G, const GMap& g, const Perm& sigma, const std::vector<unsigned>& reps);

/// epsilon_frak: frak_a at the representative i_a of each orbit, 1 elsewhere.
GMap epsilon(const FiniteGroup& G, const GMap& frak, const Perm& sigma, const std::vector<unsigned>& reps);

/// Componentwise conjugacy classes of psi^sigma(g) for x = g.sigma, default representatives.
std::vector<std::size_t> class_signature(const WreathProduct& W, Elt x, const ConjugacyClasses& base_classes);

/// O_frak.sigma = { g.sigma : classes of psi^sigma(g) match those of frak }, sorted.
std::vector<Elt> orbit_O(const WreathProduct& W, const GMap& frak, const Perm& sigma, const Limits& limits = {});

/// Brute-force orbit of x under conjugation by G^I, sorted.
std::vector<Elt> normal_conjugation_orbit(const WreathProduct& W, Elt x, const Limits& limits = {});

/// Brute-force Z_{G^I}(x), as sorted wreath indices of elements g.id.
std::vector<Elt> normal_centralizer(const WreathProduct& W, Elt x, const Limits& limits = {});

/// Z_{G^I}(epsilon_frak sigma) == prod_a Delta^a_{Z_G(frak_a)}.
bool centralizer_formula_check(const WreathProduct& W, const GMap& frak, const Perm& sigma,
                               const Limits& limits = {});

struct FiberProfile {
  std::uint64_t pairs = 0;
  /// Number of source pairs landing on each target element (all target elements hit).
  std::map<Elt, std::uint64_t> fibers;
  /// The cycle products frak_w (o(sigma tau) -> G) of the targets that were hit.
  std::vector<GMap> targets;
  /// Every frak_w with prod_c w_c = prod_a g_a * prod_b h_b.
  std::vector<GMap> predicted_targets;
  /// |G|^{n + 1 - |o(sigma)| - |o(tau)|}.
  std::uint64_t predicted_fiber = 0;
  /// Size of the predicted target set: |predicted_targets| * |G|^{n - |o(sigma tau)|}.
  std::uint64_t predicted_target_elements = 0;

  bool fibers_equal() const;
  bool matches_prediction() const;
};

/// Multiplication O_g.sigma x O_h.tau -> union_w O_w.sigma tau, grouped by target.
/// Requires G abelian (NotAbelian) and <sigma,tau> transitive (NotTransitive).
FiberProfile fiber_profile(const WreathProduct& W, const GMap& frak_g, const Perm& sigma, const GMap& frak_h,
                           const Perm& tau, const Limits& limits = {});

}  // namespace orbifrob
