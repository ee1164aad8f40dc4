#include <fstream>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "orbifrob/frobenius.hpp"
#include "orbifrob/groups.hpp"
#include "orbifrob/wreathpt.hpp"

using namespace orbifrob;
using nlohmann::json;

namespace {

Vec at(const FrobeniusAlgebra& a, const std::string& label, Rational c = 1) { return Vec::basis(a.index(label), c); }

TensorVec pure(const FrobeniusAlgebra& a, const std::vector<std::string>& labels, Rational c = 1) {
  std::vector<std::size_t> key;
  for (const auto& l : labels) key.push_back(a.index(l));
  return TensorVec::basis(key, c);
}

json torus_json() { return read_json_file(testing::fixture("torus_z2.json")); }

}  // namespace

TEST_CASE("torus products") {
  const auto& A = *testing::torus();
  CHECK(A.dim() == 24);
  CHECK(A.multiply(at(A, "phi3"), at(A, "phi4")) == at(A, "phi2"));
  CHECK(A.multiply(at(A, "phi4"), at(A, "phi3")) == at(A, "phi2"));
  CHECK(A.multiply(at(A, "phi9"), at(A, "phi9")) == at(A, "phi2"));
  CHECK(A.multiply(at(A, "phi9"), at(A, "phi10")).empty());
  CHECK(A.multiply(at(A, "phi3"), at(A, "phi3")).empty());
  CHECK(A.multi_product({}) == A.unit());
  CHECK(A.multi_product({at(A, "phi5"), at(A, "phi1"), at(A, "phi6")}) == at(A, "phi2"));
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const Vec x = testing::random_vec(A.dim(), rng);
    REQUIRE(A.multiply(x, A.unit()) == x);
  }
}

TEST_CASE("dual bases") {
  const auto Z2 = center_algebra(make_cyclic(2));
  CHECK(Z2->metric(1, 1) == Rational(1, 2));
  CHECK(Z2->dual_basis()[0] == Vec::basis(0, 2));
  CHECK(Z2->dual_basis()[1] == Vec::basis(1, 2));

  const auto& T = *testing::torus();
  CHECK(T.dual_basis()[T.index("phi1")] == at(T, "phi2", 2));
  CHECK(T.dual_basis()[T.index("phi9")] == at(T, "phi9", 2));

  // orthonormal metric: the basis is self-dual
  FrobeniusAlgebra::Data d;
  d.name = "Q2";
  d.labels = {"e", "f"};
  d.degrees = {0, 0};
  d.d = 0;
  d.unit = Vec::basis(0) + Vec::basis(1);
  d.structure = {Vec::basis(0), {}, {}, Vec::basis(1)};
  d.metric = DenseMatrix(2);
  d.metric(0, 0) = 1;
  d.metric(1, 1) = 1;
  const FrobeniusAlgebra Q2(std::move(d));
  CHECK(Q2.dual_basis()[0] == Vec::basis(0));
  CHECK(Q2.dual_basis()[1] == Vec::basis(1));

  FrobeniusAlgebra::Data s = Q2.data();
  s.metric(1, 1) = 0;
  CHECK_THROWS_AS(FrobeniusAlgebra(std::move(s)).dual_basis(), SingularMetric);
}

TEST_CASE("comultiplication") {
  const auto& T = *testing::torus();
  CHECK(T.comultiply(at(T, "phi2"), 2) == pure(T, {"phi2", "phi2"}, 2));
  CHECK(T.comultiply(at(T, "phi7"), 1) == pure(T, {"phi7"}));

  const auto Z2 = center_algebra(make_cyclic(2));
  TensorVec want = pure(*Z2, {"1", "1"}, 2);
  want += pure(*Z2, {"a", "a"}, 2);
  CHECK(Z2->comultiply(Z2->unit(), 2) == want);

  CHECK_THROWS_AS(T.comultiply(T.unit(), 5, Limits{1000}), SizeLimit);
}

TEST_CASE("comultiplication closed forms on the torus") {
  const auto& T = *testing::torus();
  // m_*(phi2) = 2^{r-1} phi2^{⊗r}
  for (unsigned r = 1; r <= 3; ++r) {
    const TensorVec m = T.comultiply(at(T, "phi2"), r);
    REQUIRE(m.size() == 1);
    CHECK(m.begin()->first == std::vector<std::size_t>(r, T.index("phi2")));
    CHECK(m.begin()->second == Rational(1 << (r - 1)));
  }
  // m_*(phi9) at r = 3: phi9 in one slot, phi2 in the others
  const TensorVec m9 = T.comultiply(at(T, "phi9"), 3);
  CHECK(m9.size() == 3);
  for (const auto& [k, c] : m9) {
    CHECK(c == 4);
    CHECK(std::count(k.begin(), k.end(), T.index("phi9")) == 1);
  }
}

TEST_CASE("phi_star and phi_lower") {
  const auto& T = *testing::torus();
  const Surjection phi{{0, 0, 1}, 2};
  CHECK(T.phi_star(phi, pure(T, {"phi3", "phi4", "phi9"})) == pure(T, {"phi2", "phi9"}));
  // bijection relabels
  const Surjection swap{{1, 0}, 2};
  CHECK(T.phi_star(swap, pure(T, {"phi3", "phi9"})) == pure(T, {"phi9", "phi3"}));
  CHECK_THROWS_AS((Surjection{{0, 0}, 2}.validate()), NotSurjective);
  CHECK_THROWS_AS(T.phi_star(Surjection{{0, 2}, 2}, pure(T, {"phi3", "phi9"})), NotSurjective);

  // adjointness on random pairs
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const TensorVec x = tensor_product({testing::random_vec(24, rng, 2), testing::random_vec(24, rng, 2),
                                        testing::random_vec(24, rng, 2)});
    const TensorVec y = tensor_product({testing::random_vec(24, rng, 3), testing::random_vec(24, rng, 3)});
    REQUIRE(T.tensor_metric(T.phi_lower(phi, y), x) == T.tensor_metric(y, T.phi_star(phi, x)));
  }
}

TEST_CASE("adjointness and coassociativity of m_*") {
  std::mt19937_64 rng(10);
  std::vector<std::shared_ptr<const FrobeniusAlgebra>> algebras{
      testing::torus(), center_algebra(make_cyclic(2)), center_algebra(make_symmetric(3)),
      center_algebra(parse_group_spec("prod:cyclic:2,cyclic:2"))};
  for (const auto& a : algebras) {
    const FrobeniusAlgebra& A = *a;
    for (int k = 0; k < 100; ++k) {
      const Vec x = testing::random_vec(A.dim(), rng);
      for (unsigned r = 1; r <= 3; ++r) {
        std::vector<Vec> ys;
        for (unsigned i = 0; i < r; ++i) ys.push_back(testing::random_vec(A.dim(), rng, 2));
        REQUIRE(A.tensor_metric(A.comultiply(x, r), tensor_product(ys)) == A.metric(x, A.multi_product(ys)));
      }
      const TensorVec m2 = A.comultiply(x, 2), m3 = A.comultiply(x, 3);
      REQUIRE(A.phi_lower(Surjection{{0, 0, 1}, 2}, m2) == m3);
      REQUIRE(A.phi_lower(Surjection{{0, 1, 1}, 2}, m2) == m3);
    }
  }
}

TEST_CASE("Euler classes") {
  const auto& T = *testing::torus();
  CHECK(T.euler_class() == at(T, "phi2", 48));
  CHECK(center_algebra(make_cyclic(2))->euler_class() == Vec::basis(0, 4));
  const auto S3 = center_algebra(make_symmetric(3));
  const Vec e = S3->euler_class();
  CHECK(e.coeff(0) == 18);
  CHECK(e.coeff(S3->index("(1 2 3)")) == 9);
  CHECK(e.coeff(S3->index("(2 3)")) == 0);
  // abelian G: |G|^2
  CHECK(center_algebra(make_cyclic(5))->euler_class() == Vec::basis(0, 25));

  // relabeling commutes with e
  std::vector<std::size_t> perm(24);
  for (std::size_t i = 0; i < 24; ++i) perm[i] = (i * 7 + 3) % 24;
  const FrobeniusAlgebra R = T.relabeled(perm);
  CHECK(R.euler_class() == Vec::basis(perm[T.index("phi2")], 48));
  // the automorphism phi3 <-> phi4 fixes e
  std::vector<std::size_t> sw(24);
  for (std::size_t i = 0; i < 24; ++i) sw[i] = i;
  std::swap(sw[2], sw[3]);
  const FrobeniusAlgebra S = T.relabeled(sw);
  CHECK(S.euler_class() == T.euler_class());
  CHECK(check_frobenius_axioms(S).all_pass());
}

TEST_CASE("axiom checker on the fixtures and mutants") {
  CHECK(check_frobenius_axioms(*testing::torus()).all_pass());
  CHECK(check_frobenius_axioms(*center_algebra(make_symmetric(3))).all_pass());

  json j = torus_json();
  j["metric"].push_back({"phi3", "phi5", "1"});
  const FrobeniusReport r = check_frobenius_axioms(frobenius_from_json(j));
  CHECK_FALSE(r.all_pass());
  const auto rj = r.to_json();
  REQUIRE(rj["metric_symmetry"].is_object());
  const std::string w = rj["metric_symmetry"]["witness"].dump();
  CHECK(w.find("phi3") != std::string::npos);
  CHECK(w.find("phi5") != std::string::npos);

  json k = torus_json();
  for (auto& e : k["structure"])
    if (e[0] == "phi3" && e[1] == "phi4") e[3] = "2";
  CHECK_FALSE(check_frobenius_axioms(frobenius_from_json(k)).all_pass());

  json g = torus_json();
  g["basis"][4]["degree"] = "1";
  CHECK(check_frobenius_axioms(frobenius_from_json(g)).to_json()["grading"].is_object());
}

TEST_CASE("instance JSON round trip and errors") {
  const auto& T = *testing::torus();
  const FrobeniusAlgebra back = frobenius_from_json(json::parse(frobenius_to_json(T).dump()));
  CHECK(back.labels() == T.labels());
  for (std::size_t i = 0; i < 24; ++i)
    for (std::size_t k = 0; k < 24; ++k) {
      REQUIRE(back.product(i, k) == T.product(i, k));
      REQUIRE(back.metric(i, k) == T.metric(i, k));
    }

  json e = torus_json();
  e["basis"] = json::array();
  CHECK_THROWS_AS(frobenius_from_json(e), ParseError);
  json dup = torus_json();
  dup["metric"].push_back(dup["metric"][0]);
  CHECK_THROWS_AS(frobenius_from_json(dup), ParseError);
  json unk = torus_json();
  unk["structure"].push_back({"phi1", "phi99", "phi1", "1"});
  CHECK_THROWS_AS(frobenius_from_json(unk), UnknownLabel);
  json bad = torus_json();
  bad["d"] = "1/0";
  CHECK_THROWS_AS(frobenius_from_json(bad), ParseError);

  const std::string path = "frobenius_bad_syntax.json";
  std::ofstream(path) << "{\n  \"name\": \"x\",\n  \"d\": 0,, \n}\n";
  try {
    read_json_file(path);
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(std::string(err.what()).find(":3:") != std::string::npos);
  }
}
