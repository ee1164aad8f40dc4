#include "orbifrob/kernels.hpp"

#include <algorithm>
#include <cstdint>

#include <omp.h>

namespace orbifrob {

namespace {

struct Scratch {
  std::vector<std::int64_t> count;  // zero between pairs
  std::vector<char> seen;           // per orbit, zero between pairs
  std::vector<Elt> touched;
  Scratch(std::size_t order, std::size_t k) : count(order, 0), seen(k, 0) {}
};

void orbit_row(const FiniteGroup& g, const OrbitSums& sums, std::size_t u, Scratch& s, OrbitProduct* row) {
  auto& count = s.count;
  auto& seen = s.seen;
  auto& touched = s.touched;
  const std::size_t k = sums.orbit.size();
  for (std::size_t v = 0; v < k; ++v) {
    touched.clear();
    for (Elt x : sums.orbit[u])
      for (Elt y : sums.orbit[v]) {
        const Elt z = g.mul(x, y);
        if (count[z]++ == 0) touched.push_back(z);
      }
    OrbitProduct& out = row[v];
    std::sort(touched.begin(), touched.end());
    for (Elt z : touched) {
      const std::size_t o = sums.orbit_of[z];
      if (o == SIZE_MAX) {
        out.invariant = false;
        continue;
      }
      if (seen[o]) continue;
      seen[o] = 1;
      const std::int64_t c = count[sums.orbit[o].front()];
      for (Elt w : sums.orbit[o])
        if (count[w] != c) out.invariant = false;
      out.terms.emplace_back(o, c);
    }
    std::sort(out.terms.begin(), out.terms.end());
    for (const auto& t : out.terms) seen[t.first] = 0;
    for (Elt z : touched) count[z] = 0;
  }
}

}  // namespace

std::vector<OrbitProduct> orbit_products_serial(const FiniteGroup& g, const OrbitSums& sums) {
  const std::size_t k = sums.orbit.size();
  std::vector<OrbitProduct> table(k * k);
  Scratch s(g.order(), k);
  for (std::size_t u = 0; u < k; ++u) orbit_row(g, sums, u, s, &table[u * k]);
  return table;
}

std::vector<OrbitProduct> orbit_products_omp(const FiniteGroup& g, const OrbitSums& sums, int jobs) {
  if (jobs <= 1) return orbit_products_serial(g, sums);
  const std::size_t k = sums.orbit.size();
  std::vector<OrbitProduct> table(k * k);
  const long rows = static_cast<long>(k);
#pragma omp parallel num_threads(jobs)
  {
    Scratch s(g.order(), k);
#pragma omp for schedule(dynamic, 1)
    for (long u = 0; u < rows; ++u) orbit_row(g, sums, static_cast<std::size_t>(u), s, &table[u * k]);
  }
  return table;
}

std::vector<std::int64_t> convolve_serial(const FiniteGroup& g, const std::vector<Elt>& a, const std::vector<Elt>& b) {
  std::vector<std::int64_t> count(g.order(), 0);
  for (Elt x : a)
    for (Elt y : b) ++count[g.mul(x, y)];
  return count;
}

std::vector<std::int64_t> convolve_omp(const FiniteGroup& g, const std::vector<Elt>& a, const std::vector<Elt>& b,
                                       int jobs) {
  if (jobs <= 1) return convolve_serial(g, a, b);
  const std::size_t order = g.order();
  std::vector<std::vector<std::int64_t>> partial(jobs);
  const long na = static_cast<long>(a.size());
#pragma omp parallel num_threads(jobs)
  {
    auto& mine = partial[omp_get_thread_num()];
    mine.assign(order, 0);
#pragma omp for schedule(static)
    for (long i = 0; i < na; ++i)
      for (Elt y : b) ++mine[g.mul(a[i], y)];
  }
  // integer sums, so reduction order cannot change the result
  std::vector<std::int64_t> count(order, 0);
  for (const auto& p : partial)
    for (std::size_t z = 0; z < p.size(); ++z) count[z] += p[z];
  return count;
}

}  // namespace orbifrob
