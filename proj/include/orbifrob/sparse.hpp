#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "orbifrob/rational.hpp"

namespace orbifrob {

/// Exact linear combination over an ordered basis of keys. Zero coefficients
/// are never stored, so two vectors are equal iff their term maps are equal.
template <class Key>
class SparseVec {
 public:
  using key_type = Key;
  using map_type = std::map<Key, Rational>;
  using const_iterator = typename map_type::const_iterator;

  SparseVec() = default;

  static SparseVec basis(Key key, Rational coeff = 1) {
    SparseVec v;
    v.add(std::move(key), coeff);
    return v;
  }

  void add(const Key& key, const Rational& coeff) {
    if (is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  void add_scaled(const SparseVec& other, const Rational& scale) {
    if (is_zero(scale)) return;
    for (const auto& [k, c] : other.terms_) add(k, c * scale);
  }

  Rational coeff(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const { return terms_; }

  SparseVec& operator+=(const SparseVec& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  SparseVec& operator-=(const SparseVec& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  SparseVec& operator*=(const Rational& s) {
    if (is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(SparseVec a, const Rational& s) { return a *= s; }
  friend SparseVec operator*(const Rational& s, SparseVec a) { return a *= s; }
  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.terms_ == b.terms_; }

 private:
  map_type terms_;
};

/// Element of an algebra in its own basis (keys are basis indices).
using Vec = SparseVec<std::size_t>;

/// Element of a tensor power A^{⊗r}; keys are r-tuples of basis indices.
using TensorVec = SparseVec<std::vector<std::size_t>>;

}  // namespace orbifrob
