#include "doctest.h"
#include "helpers.hpp"
#include "orbifrob/wreath_combinatorics.hpp"
#include "orbifrob/wreathpt.hpp"

using namespace orbifrob;
using testing::cyc;

TEST_CASE("center algebras") {
  const auto z2 = center_algebra(make_cyclic(2));
  CHECK(z2->labels() == std::vector<std::string>{"1", "a"});
  CHECK(z2->metric(1, 1) == Rational(1, 2));
  CHECK(z2->metric(0, 1) == 0);

  const auto triv = center_algebra(make_cyclic(1));
  CHECK(triv->dim() == 1);
  CHECK(triv->metric(0, 0) == 1);

  const auto s3 = center_algebra(make_symmetric(3));
  const std::size_t t = s3->index("(2 3)"), r = s3->index("(1 2 3)");
  CHECK(s3->product(t, t) == Vec::basis(0, 3) + Vec::basis(r, 3));
  CHECK(s3->product(r, r) == Vec::basis(0, 2) + Vec::basis(r, 1));
  CHECK(check_frobenius_axioms(*s3).all_pass());
}

TEST_CASE("idempotents") {
  const auto z2 = idempotent_basis(make_cyclic(2));
  REQUIRE(z2.size() == 2);
  CHECK(z2[0] == Vec::basis(0, Rational(1, 2)) + Vec::basis(1, Rational(1, 2)));
  CHECK(z2[1] == Vec::basis(0, Rational(1, 2)) + Vec::basis(1, Rational(-1, 2)));
  CHECK(idempotent_basis(make_cyclic(1)) == std::vector<Vec>{Vec::basis(0)});
  const auto v4 = parse_group_spec("prod:cyclic:2,cyclic:2");
  const auto u = idempotent_basis(v4);
  const auto a = center_algebra(v4);
  REQUIRE(u.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(a->multiply(u[i], u[j]) == (i == j ? u[i] : Vec{}));
  CHECK_THROWS_AS(idempotent_basis(make_cyclic(4)), NotElementaryAbelian2);
  CHECK_THROWS_AS(idempotent_basis(make_symmetric(3)), NotElementaryAbelian2);
}

TEST_CASE("canonical isomorphism on bases") {
  const CanonicalIso iso = canonical_iso(make_cyclic(2), 2);
  const Perm s = cyc("(1 2)", 2);
  const LSElt x = LSElt::basis(iso.ls->parse_key("a@(1 2)"));
  const WreathProduct& W = *iso.wreath;
  CHECK(iso.image(x) == Vec::basis(W.encode({1, 0}, s)) + Vec::basis(W.encode({0, 1}, s)));
  CHECK(iso.preimage(iso.image(x)) == x);
  CHECK(iso.image(LSElt::basis(iso.ls->parse_key("a,1@()"))) == Vec::basis(W.encode({1, 0}, Perm(2))));
  CHECK_THROWS_AS(iso.preimage(Vec::basis(W.encode({1, 0}, s))), InternalInvariantViolation);

  const CanonicalIso s3 = canonical_iso(make_symmetric(3), 2);
  CHECK(s3.image(LSElt::basis(s3.ls->parse_key("(2 3)@(1 2)"))).size() == 18);
  CHECK(s3.keys.size() == 12);
}

TEST_CASE("ring isomorphism, small cases") {
  for (const char* spec : {"cyclic:1", "cyclic:2", "cyclic:3", "sym:3"})
    for (std::size_t n : {1u, 2u}) {
      CAPTURE(spec);
      CAPTURE(n);
      const RingIsoReport rep = verify_ring_iso(parse_group_spec(spec), n);
      CHECK(rep.ok());
    }
  const RingIsoReport r = verify_ring_iso(make_cyclic(1), 3);
  CHECK(r.ok());
  CHECK(r.pairs_checked == 36);
}

TEST_CASE("hand computation for Z2, n = 2") {
  const CanonicalIso iso = canonical_iso(make_cyclic(2), 2);
  const WreathProduct& W = *iso.wreath;
  const Perm s = cyc("(1 2)", 2);
  const Elt e1 = W.encode({1, 0}, s), e2 = W.encode({0, 1}, s);
  // S = (a,1)(1 2) + (1,a)(1 2); S^2 = 2 (1,1) + 2 (a,a)
  Vec sq;
  for (Elt x : {e1, e2})
    for (Elt y : {e1, e2}) sq.add(W.mul(x, y), 1);
  CHECK(sq == Vec::basis(W.encode({0, 0}, Perm(2)), 2) + Vec::basis(W.encode({1, 1}, Perm(2)), 2));
  const LSElt x = LSElt::basis(iso.ls->parse_key("a@(1 2)"));
  CHECK(iso.image(iso.ls->multiply(x, x)) == sq);
  // metric: coefficient of 1 over |K|
  CHECK(iso.ls->metric(x, x) == Rational(sq.coeff(0)) / Rational(4));
}

TEST_CASE("ring isomorphism report JSON") {
  const RingIsoReport rep = verify_ring_iso(make_cyclic(2), 2);
  const auto j = rep.to_json(false);
  CHECK(j.dump() == R"({"group":"cyclic:2","n":2,"pairs_checked":36,"product_mismatches":[],"metric_mismatches":[],"action_mismatches":[]})");
  CHECK(rep.to_json(true).contains("elapsed_ms"));
}

TEST_CASE("Euler class of a center") {
  for (const char* spec : {"cyclic:2", "cyclic:3", "prod:cyclic:2,cyclic:2", "sym:3", "sym:4"}) {
    const auto g = parse_group_spec(spec);
    const auto e = center_algebra(g)->euler_class();
    std::uint64_t commuting = 0;
    for (Elt x = 0; x < g->order(); ++x) commuting += centralizer(*g, {x}).size();
    CHECK(e.coeff(0) == Rational(commuting));
    if (g->is_abelian()) CHECK(e == Vec::basis(0, Rational(g->order() * g->order())));
  }
}
