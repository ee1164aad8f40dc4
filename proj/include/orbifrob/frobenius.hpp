#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "orbifrob/errors.hpp"
#include "orbifrob/linalg.hpp"
#include "orbifrob/rational.hpp"
#include "orbifrob/sparse.hpp"

namespace orbifrob {

/// A surjection J1 -> J2 of finite sets {0..|J1|-1} -> {0..|J2|-1}.
struct Surjection {
  std::vector<std::size_t> map;
  std::size_t target_size = 0;

  /// Throws NotSurjective if some target has an empty fiber or a value is out of range.
  void validate() const;
  /// Fibers in increasing source order, indexed by target.
  std::vector<std::vector<std::size_t>> fibers() const;
};

/// v_1 ⊗ ... ⊗ v_r expanded into tuple keys.
TensorVec tensor_product(const std::vector<Vec>& factors);

/// Q-graded commutative Frobenius algebra given by structure constants.
///
/// Construction only checks shapes; the algebraic axioms are checked by
/// check_frobenius_axioms (and enforced by load_frobenius).
class FrobeniusAlgebra {
 public:
  struct Data {
    std::string name;
    std::vector<std::string> labels;
    std::vector<Rational> degrees;
    Rational d;                 // half the top degree
    Vec unit;
    std::vector<Vec> structure; // row-major: structure[i * dim + j] = b_i * b_j
    DenseMatrix metric;
  };

  explicit FrobeniusAlgebra(Data data);

  const std::string& name() const { return data_.name; }
  std::size_t dim() const { return data_.labels.size(); }
  const std::string& label(std::size_t i) const { return data_.labels.at(i); }
  const std::vector<std::string>& labels() const { return data_.labels; }
  /// Throws UnknownLabel.
  std::size_t index(const std::string& label) const;
  const Rational& degree(std::size_t i) const { return data_.degrees[i]; }
  const Rational& d() const { return data_.d; }
  const Vec& unit() const { return data_.unit; }
  const Data& data() const { return data_; }

  const Vec& product(std::size_t i, std::size_t j) const { return data_.structure[i * dim() + j]; }
  Vec multiply(const Vec& x, const Vec& y) const;
  /// Left fold; the empty product is the unit.
  Vec multi_product(const std::vector<Vec>& xs) const;

  const Rational& metric(std::size_t i, std::size_t j) const { return data_.metric(i, j); }
  Rational metric(const Vec& x, const Vec& y) const;
  /// Factorwise metric on A^{⊗r}.
  Rational tensor_metric(const TensorVec& x, const TensorVec& y) const;

  /// b^i with eta(b_i, b^j) = delta_ij. Throws SingularMetric.
  const std::vector<Vec>& dual_basis() const;

  /// m_*(b_x) into r factors for every basis element x (index x of the result).
  /// Throws SizeLimit if dim^r exceeds the cap.
  std::vector<TensorVec> comultiply_basis_all(unsigned r, const Limits& limits = {}) const;
  /// m_*(x) = sum over r-tuples of eta(x, b_i1 ... b_ir) b^i1 ⊗ ... ⊗ b^ir.
  TensorVec comultiply(const Vec& x, unsigned r, const Limits& limits = {}) const;

  /// Multiplies the factors within each fiber of phi.
  TensorVec phi_star(const Surjection& phi, const TensorVec& x) const;
  /// Metric adjoint of phi_star: comultiplies each target factor into its fiber.
  TensorVec phi_lower(const Surjection& phi, const TensorVec& y, const Limits& limits = {}) const;

  /// mu(m_*(1)) into two factors.
  Vec euler_class(const Limits& limits = {}) const;

  /// Same algebra with basis element i renamed to position perm[i].
  FrobeniusAlgebra relabeled(const std::vector<std::size_t>& perm) const;

  Vec parse_vec(const nlohmann::json& terms) const;

 private:
  Data data_;
  std::unordered_map<std::string, std::size_t> index_;
  std::optional<std::vector<Vec>> dual_;
};

/// One verdict per Frobenius axiom, in a fixed order.
struct AxiomVerdict {
  std::string axiom;
  bool pass = true;
  nlohmann::ordered_json witness;
};

struct FrobeniusReport {
  std::vector<AxiomVerdict> verdicts;
  bool all_pass() const;
  /// { axiom: "pass" | {"witness": ...} }
  nlohmann::ordered_json to_json() const;
};

/// Checks associativity, commutativity, unit, metric symmetry, non-degeneracy,
/// invariance and grading. Exhaustive over basis triples for dim <= exhaustive_dim,
/// sampled (deterministically) above.
FrobeniusReport check_frobenius_axioms(const FrobeniusAlgebra& a, std::size_t exhaustive_dim = 64,
                                       std::size_t samples = 50000);

/// Instance JSON: { "name", "d", "basis": [{"label","degree"}], "unit": [[label,q]],
/// "metric": [[label,label,q]], "structure": [[label,label,label,q]] }.
/// Throws ParseError on schema errors.
FrobeniusAlgebra frobenius_from_json(const nlohmann::json& j);
nlohmann::ordered_json frobenius_to_json(const FrobeniusAlgebra& a);

/// Reads and parses a JSON document, reporting line/column on syntax errors.
nlohmann::json read_json_file(const std::string& path);

/// Parses, then rejects (InvalidInstance) any instance failing an axiom.
FrobeniusAlgebra load_frobenius(const std::string& path);

}  // namespace orbifrob
