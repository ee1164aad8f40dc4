#pragma once

#include <memory>
#include <random>
#include <string>

#include "orbifrob/frobenius.hpp"
#include "orbifrob/lehnsorger.hpp"
#include "orbifrob/perm.hpp"

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(ORBIFROB_FIXTURES) + "/" + name; }

inline std::shared_ptr<const orbifrob::FrobeniusAlgebra> torus() {
  static auto a = std::make_shared<const orbifrob::FrobeniusAlgebra>(orbifrob::load_frobenius(fixture("torus_z2.json")));
  return a;
}

inline orbifrob::Perm cyc(const std::string& text, std::size_t n) { return orbifrob::parse_cycles(text, n); }

inline orbifrob::Perm random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<unsigned> img(n);
  for (unsigned i = 0; i < n; ++i) img[i] = i;
  std::shuffle(img.begin(), img.end(), rng);
  return orbifrob::Perm(img);
}

inline orbifrob::Vec random_vec(std::size_t dim, std::mt19937_64& rng, int terms = 3) {
  orbifrob::Vec v;
  std::uniform_int_distribution<std::size_t> idx(0, dim - 1);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
  for (int t = 0; t < terms; ++t) {
    orbifrob::Rational q(num(rng), den(rng));
    q.canonicalize();
    v.add(idx(rng), q);
  }
  return v;
}

}  // namespace testing
