#include "orbifrob/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "orbifrob/errors.hpp"

namespace orbifrob {

Perm::Perm(std::size_t n) : images_(n) { std::iota(images_.begin(), images_.end(), 0u); }

Perm::Perm(std::vector<unsigned> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (unsigned v : images_) {
    if (v >= images_.size() || seen[v]) throw std::invalid_argument("images are not a bijection");
    seen[v] = true;
  }
}

Perm Perm::from_cycles(std::size_t n, const std::vector<std::vector<unsigned>>& cycles) {
  Perm p(n);
  for (const auto& cyc : cycles) {
    // apply each cycle after the ones already accumulated: p <- cyc * p
    std::vector<unsigned> c(n);
    std::iota(c.begin(), c.end(), 0u);
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (cyc[k] >= n) throw std::invalid_argument("cycle point out of range");
      c[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    p = Perm(c) * p;
  }
  return p;
}

bool Perm::is_identity() const {
  for (unsigned i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<unsigned> inv(images_.size());
  for (unsigned i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  Perm out;
  out.images_ = std::move(inv);
  return out;
}

Perm Perm::pow(long k) const {
  Perm base = k < 0 ? inverse() : *this;
  Perm out(degree());
  for (long e = k < 0 ? -k : k; e > 0; --e) out = base * out;
  return out;
}

Perm operator*(const Perm& s, const Perm& t) {
  if (s.degree() != t.degree()) throw std::invalid_argument("degree mismatch in composition");
  Perm out;
  out.images_.resize(s.degree());
  for (unsigned i = 0; i < s.degree(); ++i) out.images_[i] = s.images_[t.images_[i]];
  return out;
}

std::string Perm::to_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (unsigned i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    unsigned j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = images_[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

OrbitPartition::OrbitPartition(std::vector<std::vector<unsigned>> blocks) {
  std::size_t n = 0;
  for (auto& b : blocks) {
    std::sort(b.begin(), b.end());
    n += b.size();
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  block_of_.assign(n, n);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].empty()) throw std::invalid_argument("empty block");
    for (unsigned i : blocks[k]) {
      if (i >= n || block_of_[i] != n) throw std::invalid_argument("blocks do not partition the index set");
      block_of_[i] = k;
    }
  }
  blocks_ = std::move(blocks);
}

bool OrbitPartition::refines(const OrbitPartition& other) const {
  for (const auto& b : blocks_) {
    const std::size_t target = other.block_of(b.front());
    for (unsigned i : b)
      if (other.block_of(i) != target) return false;
  }
  return true;
}

namespace {

unsigned find_root(std::vector<unsigned>& parent, unsigned i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

OrbitPartition partition_from_roots(std::vector<unsigned>& parent) {
  const auto n = static_cast<unsigned>(parent.size());
  std::vector<std::vector<unsigned>> by_root(n);
  for (unsigned i = 0; i < n; ++i) by_root[find_root(parent, i)].push_back(i);
  std::vector<std::vector<unsigned>> blocks;
  for (auto& b : by_root)
    if (!b.empty()) blocks.push_back(std::move(b));
  return OrbitPartition(std::move(blocks));
}

}  // namespace

OrbitPartition orbits(const Perm& sigma) { return joint_orbits(std::vector<Perm>{sigma}); }

OrbitPartition joint_orbits(const std::vector<Perm>& perms) {
  if (perms.empty()) throw std::invalid_argument("joint_orbits needs at least one permutation");
  const auto n = static_cast<unsigned>(perms.front().degree());
  std::vector<unsigned> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  for (const auto& p : perms) {
    if (p.degree() != n) throw std::invalid_argument("joint_orbits: domain mismatch");
    for (unsigned i = 0; i < n; ++i) {
      unsigned a = find_root(parent, i), b = find_root(parent, p(i));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  return partition_from_roots(parent);
}

OrbitPartition joint_orbits(const Perm& sigma, const Perm& tau) {
  return joint_orbits(std::vector<Perm>{sigma, tau});
}

std::size_t length(const Perm& sigma) { return sigma.degree() - orbits(sigma).size(); }

std::vector<unsigned> graph_defect(const Perm& sigma, const Perm& tau) {
  const OrbitPartition joint = joint_orbits(sigma, tau);
  const OrbitPartition os = orbits(sigma), ot = orbits(tau), ost = orbits(sigma * tau);
  std::vector<long> twice(joint.size(), 2);
  for (std::size_t c = 0; c < joint.size(); ++c) twice[c] += static_cast<long>(joint.block(c).size());
  for (const auto* part : {&os, &ot, &ost})
    for (const auto& b : part->blocks()) --twice[joint.block_of(b.front())];

  std::vector<unsigned> out(joint.size());
  for (std::size_t c = 0; c < joint.size(); ++c) {
    if (twice[c] < 0 || twice[c] % 2 != 0)
      throw InternalInvariantViolation("graph defect numerator " + std::to_string(twice[c]) + " for " +
                                       sigma.to_string() + ", " + tau.to_string());
    out[c] = static_cast<unsigned>(twice[c] / 2);
  }
  return out;
}

Perm parse_cycles(std::string_view text, std::size_t n) {
  std::vector<std::vector<unsigned>> cycles;
  std::vector<bool> used(n, false);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("cycle notation '" + std::string(text) + "' at position " + std::to_string(pos) + ": " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip_ws();
  if (pos == text.size()) fail("empty input");
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<unsigned> cyc;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a point");
      unsigned long v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<unsigned>(text[pos] - '0');
        if (v > n) fail("point exceeds domain size " + std::to_string(n));
        ++pos;
      }
      if (v == 0) fail("points are 1-based");
      if (used[v - 1]) fail("point " + std::to_string(v) + " repeated");
      used[v - 1] = true;
      cyc.push_back(static_cast<unsigned>(v - 1));
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return Perm::from_cycles(n, cycles);
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f = sat_mul(f, k);
  return f;
}

std::vector<Perm> all_perms(std::size_t n) {
  std::vector<unsigned> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<Perm> out;
  out.reserve(factorial(n));
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

std::uint64_t lex_rank(const Perm& p) {
  const std::size_t n = p.degree();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (p(static_cast<unsigned>(j)) < p(static_cast<unsigned>(i))) ++smaller;
    rank += smaller * factorial(n - 1 - i);
  }
  return rank;
}

Perm lex_unrank(std::size_t n, std::uint64_t rank) {
  std::vector<unsigned> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<unsigned> img;
  img.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t f = factorial(n - 1 - i);
    const auto k = static_cast<std::size_t>(rank / f);
    rank %= f;
    img.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return Perm(std::move(img));
}

}  // namespace orbifrob
