#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "orbifrob/errors.hpp"
#include "orbifrob/perm.hpp"

using namespace orbifrob;
using testing::cyc;

namespace {
using Blocks = std::vector<std::vector<unsigned>>;
}

TEST_CASE("orbits of explicit permutations") {
  // 1->3, 2->1, 3->2, 4->5, 5->4 (0-based below)
  const Perm s(std::vector<unsigned>{2, 0, 1, 4, 3});
  CHECK(orbits(s).blocks() == Blocks{{0, 1, 2}, {3, 4}});
  CHECK(orbits(Perm(4)).blocks() == Blocks{{0}, {1}, {2}, {3}});
  CHECK(orbits(cyc("(1 2)(3 4)", 4)).blocks() == Blocks{{0, 1}, {2, 3}});
}

TEST_CASE("joint orbits") {
  CHECK(joint_orbits(cyc("(1 2)", 3), cyc("(2 3)", 3)).blocks() == Blocks{{0, 1, 2}});
  CHECK(joint_orbits(Perm(2), Perm(2)).blocks() == Blocks{{0}, {1}});
  CHECK(joint_orbits(cyc("(1 2)", 4), cyc("(3 4)", 4)).blocks() == Blocks{{0, 1}, {2, 3}});
}

TEST_CASE("length") {
  CHECK(length(Perm(5)) == 0);
  CHECK(length(cyc("(1 2 3 4 5 6)", 6)) == 5);
  CHECK(length(cyc("(1 2)(3 4)", 4)) == 2);
}

TEST_CASE("graph defect examples") {
  CHECK(graph_defect(cyc("(1 2 3)", 3), cyc("(1 2 3)", 3)) == std::vector<unsigned>{1});
  CHECK(graph_defect(cyc("(1 2)", 2), Perm(2)) == std::vector<unsigned>{0});
  CHECK(graph_defect(cyc("(1 2)", 3), cyc("(2 3)", 3)) == std::vector<unsigned>{0});
  // one value per joint orbit
  CHECK(graph_defect(cyc("(1 2)", 4), cyc("(1 2)(3 4)", 4)).size() == 2);
}

TEST_CASE("composition applies the right factor first") {
  const Perm s = cyc("(1 2)", 3), t = cyc("(2 3)", 3);
  const Perm st = s * t;
  for (unsigned i = 0; i < 3; ++i) CHECK(st(i) == s(t(i)));
  CHECK(st.to_string() == "(1 2 3)");
}

TEST_CASE("cycle parser") {
  CHECK(cyc("()", 3).is_identity());
  CHECK(cyc("(1 3 2)(4 5)", 5).to_string() == "(1 3 2)(4 5)");
  CHECK(cyc("(2 3 1)", 3) == cyc("(1 2 3)", 3));
  CHECK_THROWS_AS(cyc("(1 2", 3), ParseError);
  CHECK_THROWS_AS(cyc("(1 4)", 3), ParseError);
  CHECK_THROWS_AS(cyc("(1 2)(2 3)", 3), ParseError);
  CHECK_THROWS_AS(cyc("(0 1)", 3), ParseError);
}

TEST_CASE("lexicographic ranking round-trips") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = all_perms(n);
    REQUIRE(all.size() == factorial(n));
    for (std::uint64_t r = 0; r < all.size(); ++r) {
      CHECK(lex_rank(all[r]) == r);
      CHECK(lex_unrank(n, r) == all[r]);
    }
  }
}

TEST_CASE("graph defect is a non-negative integer and the Betti identity holds, n <= 6") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto all = all_perms(n);
    std::size_t transitive = 0;
    for (const Perm& s : all)
      for (const Perm& t : all) {
        const auto gd = graph_defect(s, t);  // throws on a negative or odd numerator
        if (gd.size() != 1) continue;
        ++transitive;
        const long lhs = static_cast<long>(length(s) + length(t)) + 1 - static_cast<long>(n);
        const long rhs = 2 * static_cast<long>(gd[0]) + static_cast<long>(orbits(s * t).size()) - 1;
        REQUIRE(lhs == rhs);
      }
    CHECK(transitive > 0);
  }
}

TEST_CASE("graph defect on random pairs, n = 7, 8") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {7u, 8u})
    for (int k = 0; k < 1000; ++k) CHECK_NOTHROW(graph_defect(testing::random_perm(n, rng), testing::random_perm(n, rng)));
}

TEST_CASE("orbit properties") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    const Perm s = testing::random_perm(6, rng), t = testing::random_perm(6, rng);
    CHECK(orbits(s) == orbits(s.inverse()));
    CHECK(joint_orbits(s, t) == joint_orbits(t, s));
    CHECK(joint_orbits(s, t) == joint_orbits(s.inverse(), t.inverse()));
    CHECK(length(s * t) <= length(s) + length(t));
    CHECK(orbits(s).refines(joint_orbits(s, t)));
  }
}
