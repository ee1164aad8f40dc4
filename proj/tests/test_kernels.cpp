#include <random>

#include "doctest.h"
#include "orbifrob/groups.hpp"
#include "orbifrob/kernels.hpp"
#include "orbifrob/parallel.hpp"
#include "orbifrob/wreathpt.hpp"

using namespace orbifrob;

TEST_CASE("orbit product kernels agree with the serial reference") {
  for (const char* spec : {"cyclic:2", "sym:3", "cyclic:4"})
    for (std::size_t n : {2u, 3u}) {
      const CanonicalIso iso = canonical_iso(parse_group_spec(spec), n);
      const OrbitSums sums{iso.orbit, iso.key_of};
      const auto ref = orbit_products_serial(*iso.wreath, sums);
      for (int jobs : {1, 2, 8}) CHECK(orbit_products_omp(*iso.wreath, sums, jobs) == ref);
      for (const auto& p : ref) REQUIRE(p.invariant);
    }
}

TEST_CASE("orbit product kernel flags a family that is not closed") {
  const auto g = make_symmetric(3);
  OrbitSums sums;
  sums.orbit = {{0}, {1}};  // the identity and one transposition
  sums.orbit_of.assign(6, SIZE_MAX);
  sums.orbit_of[0] = 0;
  sums.orbit_of[1] = 1;
  const auto t = orbit_products_serial(*g, sums);
  CHECK(t[0].invariant);
  const Elt sq = g->mul(1, 1);
  CHECK(t[3].invariant == (sq == 0));
}

TEST_CASE("convolution kernels agree") {
  const auto w = wreath_product(make_symmetric(3), 3);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Elt> pick(0, w->order() - 1);
  std::vector<Elt> a(300), b(200);
  for (auto& x : a) x = pick(rng);
  for (auto& x : b) x = pick(rng);
  const auto ref = convolve_serial(*w, a, b);
  std::int64_t total = 0;
  for (auto c : ref) total += c;
  CHECK(total == 300 * 200);
  for (int jobs : {2, 3, 8}) CHECK(convolve_omp(*w, a, b, jobs) == ref);
}

TEST_CASE("parallel_map matches serial_map and rethrows the first error") {
  auto f = [](std::size_t i) { return static_cast<long>(i * i % 97); };
  CHECK(parallel_map<long>(1000, 8, f) == serial_map<long>(1000, f));
  auto g = [](std::size_t i) -> long {
    if (i == 10 || i == 500) throw std::runtime_error("at " + std::to_string(i));
    return 0;
  };
  try {
    parallel_map<long>(1000, 8, g);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "at 10");
  }
  auto h = [](std::size_t i) -> std::optional<int> {
    if (i % 1000 == 777) return static_cast<int>(i);
    return std::nullopt;
  };
  CHECK(first_failure<int>(5000, 8, h, 64) == 777);
  CHECK(first_failure<int>(5000, 1, h) == 777);
}
