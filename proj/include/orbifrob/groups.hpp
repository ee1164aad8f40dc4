#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbifrob/errors.hpp"
#include "orbifrob/perm.hpp"

namespace orbifrob {

/// Elements of a finite group are the indices 0 .. order()-1. Index 0 is the
/// identity and index order follows the documented per-family encoding, which
/// gives every report a deterministic element order.
using Elt = std::uint64_t;

class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;

  /// Canonical group-spec text, e.g. "wreath:cyclic:3,n=2".
  virtual std::string name() const = 0;
  virtual std::uint64_t order() const = 0;
  virtual Elt mul(Elt a, Elt b) const = 0;
  virtual Elt inv(Elt a) const = 0;
  virtual std::string format(Elt a) const = 0;
  virtual bool is_abelian() const;

  Elt identity() const { return 0; }
  Elt conj(Elt x, Elt by) const { return mul(inv(by), mul(x, by)); }  // by^-1 x by
  Elt pow(Elt a, std::uint64_t k) const;

  /// Throws SizeLimit if order() exceeds the cap.
  void require_enumerable(const Limits& limits) const;
  /// All elements in index order; throws SizeLimit above the cap.
  std::vector<Elt> elements(const Limits& limits = {}) const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Z/n with element k = a^k.
class CyclicGroup final : public FiniteGroup {
 public:
  explicit CyclicGroup(std::uint64_t n);
  std::string name() const override { return "cyclic:" + std::to_string(n_); }
  std::uint64_t order() const override { return n_; }
  Elt mul(Elt a, Elt b) const override { return (a + b) % n_; }
  Elt inv(Elt a) const override { return (n_ - a) % n_; }
  std::string format(Elt a) const override;
  bool is_abelian() const override { return true; }

 private:
  std::uint64_t n_;
};

/// Symmetric group on n points; element index is the lexicographic rank.
class SymmetricGroup final : public FiniteGroup {
 public:
  explicit SymmetricGroup(std::size_t n);
  std::string name() const override { return "sym:" + std::to_string(n_); }
  std::uint64_t order() const override { return order_; }
  Elt mul(Elt a, Elt b) const override;
  Elt inv(Elt a) const override;
  std::string format(Elt a) const override { return perm(a).to_string(); }
  bool is_abelian() const override { return n_ <= 2; }

  std::size_t degree() const { return n_; }
  Perm perm(Elt a) const;
  Elt index(const Perm& p) const { return lex_rank(p); }

 private:
  std::size_t n_;
  std::uint64_t order_;
  std::vector<Perm> perms_;         // filled for n <= 7
  std::vector<std::uint32_t> mul_;  // filled for n <= 6
  std::vector<std::uint32_t> inv_;
};

/// G x H, element (a, b) encoded as a * |H| + b.
class DirectProduct final : public FiniteGroup {
 public:
  DirectProduct(GroupPtr left, GroupPtr right);
  std::string name() const override { return "prod:" + left_->name() + "," + right_->name(); }
  std::uint64_t order() const override { return order_; }
  Elt mul(Elt a, Elt b) const override;
  Elt inv(Elt a) const override;
  std::string format(Elt a) const override;
  bool is_abelian() const override { return left_->is_abelian() && right_->is_abelian(); }

  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }
  std::pair<Elt, Elt> split(Elt a) const { return {a / right_->order(), a % right_->order()}; }
  Elt join(Elt l, Elt r) const { return l * right_->order() + r; }

 private:
  GroupPtr left_, right_;
  std::uint64_t order_;
};

/// Structural element g.sigma of G^I x| Sigma_I.
struct WreathElt {
  std::vector<Elt> g;
  Perm sigma;
  bool operator==(const WreathElt&) const = default;
};

/// Wreath product G^I x| Sigma_I with law g.s * h.t = (g h^{s^-1}) (s t),
/// (h^s)_i = h_{s(i)}. Elements are never tabulated: the index encodes the
/// components (g_1 most significant, base-|G| digits) followed by the
/// lexicographic rank of sigma, so index order is lexicographic on
/// (g_1, ..., g_n, sigma).
class WreathProduct final : public FiniteGroup {
 public:
  static constexpr std::size_t kMaxDegree = 12;

  WreathProduct(GroupPtr base, std::size_t n);
  std::string name() const override { return "wreath:" + base_->name() + ",n=" + std::to_string(n_); }
  std::uint64_t order() const override { return order_; }
  Elt mul(Elt a, Elt b) const override;
  Elt inv(Elt a) const override;
  std::string format(Elt a) const override;
  bool is_abelian() const override;

  const FiniteGroup& base() const { return *base_; }
  const GroupPtr& base_ptr() const { return base_; }
  std::size_t degree() const { return n_; }
  std::uint64_t normal_order() const { return normal_order_; }  // |G|^n

  WreathElt decode(Elt a) const;
  Elt encode(const WreathElt& x) const;
  Elt encode(const std::vector<Elt>& g, const Perm& sigma) const { return encode(WreathElt{g, sigma}); }
  /// Index of the element g.id (the G^I part).
  Elt normal_element(std::uint64_t gcode) const { return gcode * perm_count_; }
  /// Index of the element 1.sigma.
  Elt perm_element(const Perm& sigma) const { return lex_rank(sigma); }
  std::uint64_t perm_rank(Elt a) const { return a % perm_count_; }
  std::uint64_t component_code(Elt a) const { return a / perm_count_; }

 private:
  Perm perm_of(std::uint64_t rank) const;
  std::uint64_t compose_rank(std::uint64_t s, std::uint64_t t) const;

  GroupPtr base_;
  std::size_t n_;
  std::uint64_t base_order_;
  std::uint64_t perm_count_;
  std::uint64_t normal_order_;
  std::uint64_t order_;
  std::vector<Perm> perms_;          // filled for n <= 7
  std::vector<std::uint32_t> comp_;  // filled for n <= 6
};

GroupPtr make_cyclic(std::uint64_t n);
GroupPtr make_symmetric(std::size_t n);
GroupPtr direct_product(GroupPtr g, GroupPtr h);
std::shared_ptr<const WreathProduct> wreath_product(GroupPtr g, std::size_t n);

/// Parses "cyclic:4", "sym:3", "prod:<spec>,<spec>", "wreath:<spec>,n=<k>".
/// Case-sensitive, no whitespace. Throws ParseError.
GroupPtr parse_group_spec(std::string_view text);

struct ConjugacyClasses {
  /// Classes sorted by smallest member; class 0 is {1}; members ascending.
  std::vector<std::vector<Elt>> classes;
  std::vector<std::size_t> class_of;
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& g, const Limits& limits = {});

/// Elements commuting with every member of subset (brute force).
std::vector<Elt> centralizer(const FiniteGroup& g, const std::vector<Elt>& subset, const Limits& limits = {});

/// Exhaustive group-axiom check for order <= exhaustive_order, sampled above.
/// Returns a description of the first violation, if any.
std::optional<std::string> check_group_axioms(const FiniteGroup& g, std::uint64_t exhaustive_order = 64,
                                              std::size_t samples = 2000, std::uint64_t seed = 7);

}  // namespace orbifrob
