#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "orbifrob/frobenius.hpp"
#include "orbifrob/groups.hpp"
#include "orbifrob/linalg.hpp"
#include "orbifrob/sparse.hpp"

namespace orbifrob {

/// Gamma-graded Gamma-module with product, unit and metric, given on a basis
/// whose elements are each homogeneous for the Gamma-grading.
///
/// Action convention: act(g, v) is rho(g)v and rho is a right action,
/// rho(g1 g2) = rho(g2) o rho(g1). rho(g) takes sector m to g^-1 m g.
class GFrobeniusAlgebra {
 public:
  virtual ~GFrobeniusAlgebra() = default;

  virtual std::string name() const = 0;
  virtual const FiniteGroup& group() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::string label(std::size_t i) const = 0;
  virtual Elt sector(std::size_t i) const = 0;
  virtual Rational degree(std::size_t i) const = 0;
  virtual Rational d() const = 0;
  virtual Vec unit() const = 0;
  virtual Vec multiply_basis(std::size_t i, std::size_t j) const = 0;
  virtual Vec act_basis(Elt g, std::size_t i) const = 0;
  virtual Rational metric_basis(std::size_t i, std::size_t j) const = 0;

  virtual Vec multiply(const Vec& x, const Vec& y) const;
  virtual Vec act(Elt g, const Vec& v) const;
  virtual Rational metric(const Vec& x, const Vec& y) const;
};

/// Explicit tables: products for every basis pair, rho(g) for every element.
class TabulatedGFrobenius final : public GFrobeniusAlgebra {
 public:
  struct Data {
    std::string name;
    GroupPtr group;
    std::vector<std::string> labels;
    std::vector<Elt> sectors;
    std::vector<Rational> degrees;
    Rational d;
    Vec unit;
    std::vector<Vec> products;  // [i * dim + j]
    std::vector<Vec> actions;   // [g * dim + i] = rho(g) b_i
    DenseMatrix metric;
  };

  explicit TabulatedGFrobenius(Data data);

  std::string name() const override { return data_.name; }
  const FiniteGroup& group() const override { return *data_.group; }
  std::size_t dim() const override { return data_.labels.size(); }
  std::string label(std::size_t i) const override { return data_.labels.at(i); }
  Elt sector(std::size_t i) const override { return data_.sectors.at(i); }
  Rational degree(std::size_t i) const override { return data_.degrees.at(i); }
  Rational d() const override { return data_.d; }
  Vec unit() const override { return data_.unit; }
  Vec multiply_basis(std::size_t i, std::size_t j) const override { return data_.products[i * dim() + j]; }
  Vec act_basis(Elt g, std::size_t i) const override { return data_.actions[g * dim() + i]; }
  Rational metric_basis(std::size_t i, std::size_t j) const override { return data_.metric(i, j); }

  const Data& data() const { return data_; }
  const GroupPtr& group_ptr() const { return data_.group; }
  /// Throws UnknownLabel.
  std::size_t index(const std::string& label) const;

 private:
  Data data_;
};

/// Q[Gamma]: basis Gamma, sector(g) = g, rho(h) g = h^-1 g h,
/// eta(g, h) = 1 iff gh = 1, all degrees 0.
class GroupAlgebra final : public GFrobeniusAlgebra {
 public:
  explicit GroupAlgebra(GroupPtr group, const Limits& limits = {});

  std::string name() const override { return "Q[" + group_->name() + "]"; }
  const FiniteGroup& group() const override { return *group_; }
  std::size_t dim() const override { return static_cast<std::size_t>(group_->order()); }
  std::string label(std::size_t i) const override { return group_->format(i); }
  Elt sector(std::size_t i) const override { return i; }
  Rational degree(std::size_t) const override { return 0; }
  Rational d() const override { return 0; }
  Vec unit() const override { return Vec::basis(0); }
  Vec multiply_basis(std::size_t i, std::size_t j) const override { return Vec::basis(group_->mul(i, j)); }
  Vec act_basis(Elt g, std::size_t i) const override { return Vec::basis(group_->conj(i, g)); }
  Rational metric_basis(std::size_t i, std::size_t j) const override { return group_->mul(i, j) == 0 ? 1 : 0; }

  /// Convolution; integer coefficients take a machine-integer path.
  Vec multiply(const Vec& x, const Vec& y) const override;
  Rational metric(const Vec& x, const Vec& y) const override;

  const GroupPtr& group_ptr() const { return group_; }

 private:
  GroupPtr group_;
};

/// Copies every product, action and metric entry into explicit tables.
TabulatedGFrobenius tabulate(const GFrobeniusAlgebra& h, GroupPtr group, const Limits& limits = {});

/// The trivial-group algebra underlying a Frobenius algebra.
TabulatedGFrobenius from_frobenius(const FrobeniusAlgebra& a);

struct GFrobCheckOptions {
  std::size_t exhaustive_dim = 64;        // all basis pairs/triples up to this dimension
  std::uint64_t exhaustive_group = 64;    // all group elements up to this order
  std::size_t samples = 2000;             // cases per axiom otherwise
  std::uint64_t seed = 7;
  int jobs = 1;
  std::vector<std::string> only;          // subset of axiom names; empty means all
};

struct GFrobReport {
  /// In order: i .. xi, q_grading.
  std::vector<AxiomVerdict> verdicts;
  bool all_pass() const;
  const AxiomVerdict& verdict(const std::string& axiom) const;
  nlohmann::ordered_json to_json() const;
};

/// Checks the eleven G-Frobenius axioms and the Q-grading. Each failing
/// axiom carries the first failing case as its witness.
GFrobReport check_axioms(const GFrobeniusAlgebra& h, const GFrobCheckOptions& options = {});

/// Gamma = K x| L. Elements of K are given as ambient indices.
struct SemidirectPresentation {
  GroupPtr ambient;
  GroupPtr complement;            // L
  std::vector<Elt> normal;        // K, sorted ambient indices
  std::function<Elt(Elt)> embed;  // L -> Gamma
  /// gamma -> (k, l) with gamma = k * embed(l); k an ambient index.
  std::function<std::pair<Elt, Elt>(Elt)> decompose;
};

/// K = G^I, L = Sigma_I.
SemidirectPresentation wreath_presentation(const std::shared_ptr<const WreathProduct>& w);
/// Gamma = K x L (direct).
SemidirectPresentation direct_presentation(GroupPtr k, GroupPtr l);
/// K = 1, L = Gamma.
SemidirectPresentation trivial_normal_presentation(GroupPtr gamma);
/// K = Gamma, L = 1.
SemidirectPresentation full_normal_presentation(GroupPtr gamma);

/// Checks decomposition is a bijection and the product law
/// (k1 l1)(k2 l2) = (k1 k2^{l1^-1})(l1 l2). Returns the first violation.
std::optional<std::string> check_presentation(const SemidirectPresentation& p, const Limits& limits = {});

/// (1/|K|) sum_k rho(k) v.
Vec pi_K(const GFrobeniusAlgebra& h, const SemidirectPresentation& p, const Vec& v);

/// Coinvariant algebra H^K as an L-Frobenius algebra.
///
/// Basis: the reduced row echelon basis of pi_K(H) (pivot coefficient 1,
/// pivots ascending), so for a group algebra each basis vector is a plain
/// orbit sum. Sector of a basis vector is the L-part of its pivot's sector,
/// metric is eta_H / |K|. Throws PresentationMismatch.
struct Coinvariants {
  std::unique_ptr<TabulatedGFrobenius> algebra;
  std::vector<Vec> basis;            // basis vectors in H
  std::vector<std::size_t> pivots;   // pivot basis index in H
  RowEchelon echelon;

  /// Coordinates of a K-invariant vector of H. Throws InternalInvariantViolation if not in the image.
  Vec coordinates(const Vec& v) const;
};

Coinvariants coinvariants(const GFrobeniusAlgebra& h, const SemidirectPresentation& p, int jobs = 1,
                          const Limits& limits = {});

/// Instance JSON: the Frobenius schema plus "group", "sector": [[label, index]],
/// "action": { "index": [[source, target, q]] } (rho(g) b_source has coefficient q on b_target).
TabulatedGFrobenius gfrob_from_json(const nlohmann::json& j, const Limits& limits = {});
nlohmann::ordered_json gfrob_to_json(const GFrobeniusAlgebra& h);

}  // namespace orbifrob
