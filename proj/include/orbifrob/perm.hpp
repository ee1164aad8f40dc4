#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orbifrob {

/// Permutation of the index set {0, ..., n-1}. Displayed 1-based in cycle notation.
///
/// Composition applies the right factor first: (s * t)(i) = s(t(i)).
class Perm {
 public:
  Perm() = default;
  /// Identity on n points.
  explicit Perm(std::size_t n);
  /// Throws std::invalid_argument unless images is a bijection of {0..n-1}.
  explicit Perm(std::vector<unsigned> images);

  static Perm identity(std::size_t n) { return Perm(n); }
  /// Product of the given cycles (0-based points) on n points.
  static Perm from_cycles(std::size_t n, const std::vector<std::vector<unsigned>>& cycles);

  std::size_t degree() const { return images_.size(); }
  unsigned operator()(unsigned i) const { return images_[i]; }
  const std::vector<unsigned>& images() const { return images_; }
  bool is_identity() const;

  Perm inverse() const;
  Perm pow(long k) const;
  friend Perm operator*(const Perm& s, const Perm& t);

  /// Cycle notation over 1-based points, fixed points omitted; identity is "()".
  std::string to_string() const;

  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<unsigned> images_;
};

/// Disjoint blocks covering {0..n-1}; blocks sorted by their smallest member,
/// members sorted ascending. The default representative of a block is its front().
class OrbitPartition {
 public:
  OrbitPartition() = default;
  explicit OrbitPartition(std::vector<std::vector<unsigned>> blocks);

  std::size_t size() const { return blocks_.size(); }
  std::size_t degree() const { return block_of_.size(); }
  const std::vector<std::vector<unsigned>>& blocks() const { return blocks_; }
  const std::vector<unsigned>& block(std::size_t b) const { return blocks_[b]; }
  /// Index of the block containing point i.
  std::size_t block_of(unsigned i) const { return block_of_[i]; }
  /// True iff every block of this partition lies inside a block of other.
  bool refines(const OrbitPartition& other) const;

  bool operator==(const OrbitPartition& o) const { return blocks_ == o.blocks_; }

 private:
  std::vector<std::vector<unsigned>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// <sigma>-orbits.
OrbitPartition orbits(const Perm& sigma);

/// Orbits of the group generated by all inputs (union-find over i ~ p(i)).
OrbitPartition joint_orbits(const std::vector<Perm>& perms);
OrbitPartition joint_orbits(const Perm& sigma, const Perm& tau);

/// |I| - |o(sigma)|, the minimal number of transpositions.
std::size_t length(const Perm& sigma);

/// Graph defect per joint orbit of <sigma, tau>, indexed like joint_orbits(sigma, tau).
/// gd_c = (|c| + 2 - |c/<sigma>| - |c/<tau>| - |c/<sigma tau>|) / 2.
/// Throws InternalInvariantViolation on a negative or odd numerator.
std::vector<unsigned> graph_defect(const Perm& sigma, const Perm& tau);

/// Parses "(1 2 3)(4 5)" or "()" on n points (1-based). Throws ParseError.
Perm parse_cycles(std::string_view text, std::size_t n);

/// All permutations of n points in lexicographic order of their image sequences.
std::vector<Perm> all_perms(std::size_t n);

/// Lexicographic rank of the image sequence, in [0, n!).
std::uint64_t lex_rank(const Perm& p);
Perm lex_unrank(std::size_t n, std::uint64_t rank);
std::uint64_t factorial(std::size_t n);

}  // namespace orbifrob
