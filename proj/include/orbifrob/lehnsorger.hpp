#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbifrob/frobenius.hpp"
#include "orbifrob/gfrob.hpp"
#include "orbifrob/perm.hpp"

namespace orbifrob {

/// Basis term x.sigma: assign[a] is the base label index on the a-th orbit of
/// sigma (orbits ordered by smallest member).
struct LSKey {
  Perm sigma;
  std::vector<std::size_t> assign;
  auto operator<=>(const LSKey&) const = default;
  bool operator==(const LSKey&) const = default;
};

using LSElt = SparseVec<LSKey>;

/// Precomputed orbit bookkeeping for one ordered pair (sigma, tau).
struct PairPlan {
  Perm product;  // sigma tau
  struct Block {
    std::vector<std::size_t> sigma_orbits;    // indices into orbits(sigma)
    std::vector<std::size_t> tau_orbits;      // indices into orbits(tau)
    std::vector<std::size_t> product_orbits;  // indices into orbits(sigma tau)
    unsigned gd = 0;
  };
  std::vector<Block> blocks;  // one per joint orbit
  std::size_t product_orbit_count = 0;
};

PairPlan make_pair_plan(const Perm& sigma, const Perm& tau);

/// The Lehn-Sorger algebra A{Sigma_n} over a Frobenius algebra A. Products are
/// computed term by term; no global structure tensor is ever built.
class LSAlgebra {
 public:
  LSAlgebra(std::shared_ptr<const FrobeniusAlgebra> base, std::size_t n, const Limits& limits = {});

  const FrobeniusAlgebra& base() const { return *base_; }
  const std::shared_ptr<const FrobeniusAlgebra>& base_ptr() const { return base_; }
  std::size_t degree_n() const { return n_; }
  const Limits& limits() const { return limits_; }

  /// sum_sigma dim(A)^{|o(sigma)|}, saturating.
  std::uint64_t dimension() const;
  /// Every basis key, sorted. Throws SizeLimit above the cap.
  std::vector<LSKey> basis() const;
  std::vector<LSKey> sector_basis(const Perm& sigma) const;
  /// Checks that the assignment has one valid label per orbit of sigma.
  void validate(const LSKey& key) const;

  /// 1^{⊗n}.id
  LSElt unit() const;

  /// deg x + d l_sigma.
  Rational degree(const LSKey& key) const;
  /// deg x + d l_sigma / 2, kept for comparison only.
  Rational degree_literal(const LSKey& key) const;

  /// rho(pi): the term over tau moves to pi^-1 tau pi, orbit a to pi^-1(a).
  LSKey act(const Perm& pi, const LSKey& key) const;
  LSElt act(const Perm& pi, const LSElt& v) const;

  LSElt multiply(const LSKey& x, const LSKey& y) const;
  LSElt multiply(const LSElt& u, const LSElt& v) const;

  Rational metric(const LSKey& x, const LSKey& y) const;
  Rational metric(const LSElt& u, const LSElt& v) const;

  /// e^k, with e^0 the unit.
  const Vec& euler_power(unsigned k) const;
  /// m_* of every base basis element into r factors.
  const std::vector<TensorVec>& comultiply_table(std::size_t r) const { return comult_.at(r); }

  const PairPlan& plan(const Perm& sigma, const Perm& tau, PairPlan& scratch) const;

  std::string key_to_string(const LSKey& key) const;
  /// "label,label@(cycles)"; labels in orbit order.
  LSKey parse_key(const std::string& text) const;

  LSElt elt_from_json(const nlohmann::json& j) const;
  nlohmann::ordered_json elt_to_json(const LSElt& v) const;

 private:
  std::shared_ptr<const FrobeniusAlgebra> base_;
  std::size_t n_;
  Limits limits_;
  std::vector<Vec> euler_;                  // powers 0..n
  std::vector<std::vector<TensorVec>> comult_;  // [r][x], r = 1..n
  std::vector<PairPlan> plans_;             // [rank(sigma) * n! + rank(tau)] when cached
  std::uint64_t perm_count_;
};

/// A{Sigma_n} viewed as a Sigma_n-Frobenius algebra on the explicit basis.
class LSGFrobeniusView final : public GFrobeniusAlgebra {
 public:
  explicit LSGFrobeniusView(const LSAlgebra& ls);

  std::string name() const override;
  const FiniteGroup& group() const override { return *group_; }
  std::size_t dim() const override { return keys_.size(); }
  std::string label(std::size_t i) const override { return ls_.key_to_string(keys_[i]); }
  Elt sector(std::size_t i) const override { return lex_rank(keys_[i].sigma); }
  Rational degree(std::size_t i) const override { return ls_.degree(keys_[i]); }
  Rational d() const override;
  Vec unit() const override { return to_vec(ls_.unit()); }
  Vec multiply_basis(std::size_t i, std::size_t j) const override;
  Vec act_basis(Elt g, std::size_t i) const override;
  Rational metric_basis(std::size_t i, std::size_t j) const override;

  const std::vector<LSKey>& keys() const { return keys_; }
  std::size_t index(const LSKey& k) const { return index_.at(k); }
  Vec to_vec(const LSElt& v) const;
  LSElt from_vec(const Vec& v) const;

 private:
  const LSAlgebra& ls_;
  std::shared_ptr<const SymmetricGroup> group_;
  std::vector<LSKey> keys_;
  std::map<LSKey, std::size_t> index_;
};

struct SplittingOptions {
  std::size_t exhaustive_pairs = 200000;  // all pairs of the spanning set up to this many
  std::size_t samples = 5000;
  std::uint64_t seed = 11;
};

struct SplittingReport {
  bool ok = true;
  std::uint64_t pairs_checked = 0;
  std::string witness;
};

/// For a partition lambda of {0..n-1}: A{Sigma_n}(lambda), spanned by terms whose
/// permutation preserves every block, is closed under the product and its
/// structure constants are those of the tensor product of the A{Sigma_d}.
SplittingReport splitting_check(const LSAlgebra& ls, const std::vector<std::vector<unsigned>>& lambda,
                                const SplittingOptions& options = {});

}  // namespace orbifrob
