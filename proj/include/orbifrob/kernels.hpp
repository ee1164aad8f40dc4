#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orbifrob/groups.hpp"

namespace orbifrob {

/// Structure constants of a family of disjoint orbit sums in Q[G]: for every
/// ordered pair (u, v) the coefficients of (sum O_u)(sum O_v) on the orbit
/// sums, read off at each orbit. `invariant` is false if some orbit was hit
/// unevenly, or some product landed outside every orbit.
struct OrbitProduct {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;  // sorted by orbit
  bool invariant = true;
  bool operator==(const OrbitProduct&) const = default;
};

struct OrbitSums {
  std::vector<std::vector<Elt>> orbit;  // sorted element lists
  std::vector<std::size_t> orbit_of;    // element -> orbit, SIZE_MAX if none
};

/// Plain triple loop, one pair at a time. Kept as the reference.
std::vector<OrbitProduct> orbit_products_serial(const FiniteGroup& g, const OrbitSums& sums);

/// Same table; rows u spread over `jobs` OpenMP threads, each thread with its
/// own count buffer. Output is identical to the serial kernel for any jobs.
std::vector<OrbitProduct> orbit_products_omp(const FiniteGroup& g, const OrbitSums& sums, int jobs);

/// Full convolution counts of two element lists (multiset product).
std::vector<std::int64_t> convolve_serial(const FiniteGroup& g, const std::vector<Elt>& a, const std::vector<Elt>& b);
/// Splits `a` across threads, private buffers, fixed-order reduction.
std::vector<std::int64_t> convolve_omp(const FiniteGroup& g, const std::vector<Elt>& a, const std::vector<Elt>& b,
                                       int jobs);

}  // namespace orbifrob
