#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbifrob/frobenius.hpp"
#include "orbifrob/groups.hpp"
#include "orbifrob/lehnsorger.hpp"

namespace orbifrob {

/// Z Q[G] on the class sums (ordered like conjugacy_classes), labels are the
/// formatted smallest class member, eta(x, y) = coeff of 1 in xy over |G|.
std::shared_ptr<const FrobeniusAlgebra> center_algebra(const GroupPtr& g, const Limits& limits = {});

/// The |G| idempotents u_k = (1/|G|) sum_g chi_k(g) g of an elementary abelian
/// 2-group, in the class-sum basis of center_algebra(g). Characters are indexed
/// by k in [0, |G|) read as a bit vector over a greedily chosen generating set.
/// Throws NotElementaryAbelian2.
std::vector<Vec> idempotent_basis(const GroupPtr& g, const Limits& limits = {});

/// Basis correspondence between Z Q[G]{Sigma_n} and the G^n-coinvariants of
/// Q[G wr Sigma_n]: class-sum tensor x.sigma <-> orbit sum of O_frak.sigma.
struct CanonicalIso {
  GroupPtr group;
  std::shared_ptr<const FrobeniusAlgebra> center;
  std::unique_ptr<LSAlgebra> ls;
  std::shared_ptr<const WreathProduct> wreath;
  std::vector<LSKey> keys;                // LS basis, sorted
  std::map<LSKey, std::size_t> key_index;
  std::vector<std::vector<Elt>> orbit;    // orbit[k], sorted wreath indices
  std::vector<std::size_t> key_of;        // wreath element -> key index

  /// Unnormalized orbit sums.
  Vec image(const LSElt& v) const;
  /// Inverse on G^n-invariant vectors; throws InternalInvariantViolation otherwise.
  LSElt preimage(const Vec& w) const;
};

CanonicalIso canonical_iso(const GroupPtr& g, std::size_t n, const Limits& limits = {});

struct RingIsoOptions {
  int jobs = 1;
  Limits limits;
};

struct RingIsoReport {
  std::string group;
  std::size_t n = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<nlohmann::ordered_json> product_mismatches;
  std::vector<nlohmann::ordered_json> metric_mismatches;
  std::vector<nlohmann::ordered_json> action_mismatches;
  double elapsed_ms = 0;

  bool ok() const { return product_mismatches.empty() && metric_mismatches.empty() && action_mismatches.empty(); }
  nlohmann::ordered_json to_json(bool include_timing = true) const;
};

/// Compares, for every pair of LS basis elements, the LS product and metric
/// with direct convolution of the image orbit sums in Q[G wr Sigma_n] (metric
/// scaled by 1/|G|^n), and the Sigma_n actions on every basis element.
RingIsoReport verify_ring_iso(const GroupPtr& g, std::size_t n, const RingIsoOptions& options = {});

}  // namespace orbifrob
