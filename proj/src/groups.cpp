#include "orbifrob/groups.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

namespace orbifrob {

// ---------------------------------------------------------------------------
// FiniteGroup

bool FiniteGroup::is_abelian() const {
  const std::uint64_t n = order();
  for (Elt a = 0; a < n; ++a)
    for (Elt b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

Elt FiniteGroup::pow(Elt a, std::uint64_t k) const {
  Elt out = identity();
  for (std::uint64_t i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

void FiniteGroup::require_enumerable(const Limits& limits) const {
  limits.require(order(), "enumerate group " + name());
}

std::vector<Elt> FiniteGroup::elements(const Limits& limits) const {
  require_enumerable(limits);
  std::vector<Elt> out(order());
  for (Elt a = 0; a < out.size(); ++a) out[a] = a;
  return out;
}

// ---------------------------------------------------------------------------
// Cyclic

CyclicGroup::CyclicGroup(std::uint64_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("cyclic group order must be >= 1");
}

std::string CyclicGroup::format(Elt a) const {
  if (a == 0) return "1";
  if (a == 1) return "a";
  return "a^" + std::to_string(a);
}

// ---------------------------------------------------------------------------
// Symmetric

SymmetricGroup::SymmetricGroup(std::size_t n) : n_(n), order_(factorial(n)) {
  if (n == 0) throw std::invalid_argument("symmetric group needs at least one point");
  if (n <= 7) perms_ = all_perms(n);
  if (n <= 6) {
    mul_.resize(order_ * order_);
    inv_.resize(order_);
    for (Elt a = 0; a < order_; ++a) {
      inv_[a] = static_cast<std::uint32_t>(lex_rank(perms_[a].inverse()));
      for (Elt b = 0; b < order_; ++b)
        mul_[a * order_ + b] = static_cast<std::uint32_t>(lex_rank(perms_[a] * perms_[b]));
    }
  }
}

Perm SymmetricGroup::perm(Elt a) const { return perms_.empty() ? lex_unrank(n_, a) : perms_[a]; }

Elt SymmetricGroup::mul(Elt a, Elt b) const {
  if (!mul_.empty()) return mul_[a * order_ + b];
  return lex_rank(perm(a) * perm(b));
}

Elt SymmetricGroup::inv(Elt a) const {
  if (!inv_.empty()) return inv_[a];
  return lex_rank(perm(a).inverse());
}

// ---------------------------------------------------------------------------
// Direct product

DirectProduct::DirectProduct(GroupPtr left, GroupPtr right)
    : left_(std::move(left)), right_(std::move(right)), order_(sat_mul(left_->order(), right_->order())) {
  if (order_ == UINT64_MAX) throw SizeLimit("direct product order", order_, UINT64_MAX - 1);
}

Elt DirectProduct::mul(Elt a, Elt b) const {
  auto [a1, a2] = split(a);
  auto [b1, b2] = split(b);
  return join(left_->mul(a1, b1), right_->mul(a2, b2));
}

Elt DirectProduct::inv(Elt a) const {
  auto [a1, a2] = split(a);
  return join(left_->inv(a1), right_->inv(a2));
}

std::string DirectProduct::format(Elt a) const {
  auto [a1, a2] = split(a);
  return "(" + left_->format(a1) + "," + right_->format(a2) + ")";
}

// ---------------------------------------------------------------------------
// Wreath product

WreathProduct::WreathProduct(GroupPtr base, std::size_t n)
    : base_(std::move(base)), n_(n), base_order_(base_->order()), perm_count_(factorial(n)) {
  if (n == 0) throw std::invalid_argument("wreath product needs |I| >= 1");
  if (n > kMaxDegree) throw SizeLimit("wreath product degree", n, kMaxDegree);
  normal_order_ = sat_pow(base_order_, n);
  order_ = sat_mul(normal_order_, perm_count_);
  if (order_ == UINT64_MAX) throw SizeLimit("wreath product order", order_, UINT64_MAX - 1);
  if (n <= 7) perms_ = all_perms(n);
  if (n <= 6) {
    comp_.resize(perm_count_ * perm_count_);
    for (std::uint64_t s = 0; s < perm_count_; ++s)
      for (std::uint64_t t = 0; t < perm_count_; ++t)
        comp_[s * perm_count_ + t] = static_cast<std::uint32_t>(lex_rank(perms_[s] * perms_[t]));
  }
}

Perm WreathProduct::perm_of(std::uint64_t rank) const {
  return perms_.empty() ? lex_unrank(n_, rank) : perms_[rank];
}

std::uint64_t WreathProduct::compose_rank(std::uint64_t s, std::uint64_t t) const {
  if (!comp_.empty()) return comp_[s * perm_count_ + t];
  return lex_rank(perm_of(s) * perm_of(t));
}

WreathElt WreathProduct::decode(Elt a) const {
  WreathElt x{std::vector<Elt>(n_), perm_of(a % perm_count_)};
  std::uint64_t code = a / perm_count_;
  for (std::size_t i = n_; i-- > 0;) {
    x.g[i] = code % base_order_;
    code /= base_order_;
  }
  return x;
}

Elt WreathProduct::encode(const WreathElt& x) const {
  if (x.g.size() != n_ || x.sigma.degree() != n_) throw std::invalid_argument("wreath element has wrong degree");
  std::uint64_t code = 0;
  for (Elt gi : x.g) code = code * base_order_ + gi;
  return code * perm_count_ + lex_rank(x.sigma);
}

Elt WreathProduct::mul(Elt a, Elt b) const {
  const std::uint64_t sa = a % perm_count_, sb = b % perm_count_;
  std::uint64_t ca = a / perm_count_, cb = b / perm_count_;
  std::array<Elt, kMaxDegree> g{}, h{};
  for (std::size_t i = n_; i-- > 0;) {
    g[i] = ca % base_order_;
    ca /= base_order_;
    h[i] = cb % base_order_;
    cb /= base_order_;
  }
  // (g h^{s^-1})_i = g_i h_{s^-1(i)}, i.e. component s(j) picks up h_j.
  std::array<Elt, kMaxDegree> out{};
  if (!perms_.empty()) {
    const Perm& s = perms_[sa];
    for (unsigned j = 0; j < n_; ++j) out[s(j)] = base_->mul(g[s(j)], h[j]);
  } else {
    const Perm s = perm_of(sa);
    for (unsigned j = 0; j < n_; ++j) out[s(j)] = base_->mul(g[s(j)], h[j]);
  }
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n_; ++i) code = code * base_order_ + out[i];
  return code * perm_count_ + compose_rank(sa, sb);
}

Elt WreathProduct::inv(Elt a) const {
  // (g s)^-1 = (g^s)^-1 s^-1, since g s * (g^s)^-1 s^-1 = g ((g^s)^-1)^{s^-1} = 1.
  WreathElt x = decode(a);
  WreathElt y{std::vector<Elt>(n_), x.sigma.inverse()};
  for (unsigned i = 0; i < n_; ++i) y.g[i] = base_->inv(x.g[x.sigma(i)]);
  return encode(y);
}

std::string WreathProduct::format(Elt a) const {
  WreathElt x = decode(a);
  std::string out = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) out += ',';
    out += base_->format(x.g[i]);
  }
  return out + "]" + x.sigma.to_string();
}

bool WreathProduct::is_abelian() const {
  if (n_ == 1) return base_->is_abelian();
  return base_order_ == 1 && n_ == 2;
}

// ---------------------------------------------------------------------------
// Factories and spec parsing

GroupPtr make_cyclic(std::uint64_t n) { return std::make_shared<CyclicGroup>(n); }
GroupPtr make_symmetric(std::size_t n) { return std::make_shared<SymmetricGroup>(n); }
GroupPtr direct_product(GroupPtr g, GroupPtr h) { return std::make_shared<DirectProduct>(std::move(g), std::move(h)); }
std::shared_ptr<const WreathProduct> wreath_product(GroupPtr g, std::size_t n) {
  return std::make_shared<WreathProduct>(std::move(g), n);
}

namespace {

struct SpecParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("group spec '" + std::string(text) + "' at position " + std::to_string(pos) + ": " + why);
  }

  bool take(std::string_view lit) {
    if (text.substr(pos, lit.size()) == lit) {
      pos += lit.size();
      return true;
    }
    return false;
  }

  std::uint64_t number() {
    const std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > 1'000'000'000ULL) fail("number too large");
      ++pos;
    }
    if (pos == start) fail("expected a number");
    if (v == 0) fail("expected a positive number");
    return v;
  }

  GroupPtr group() {
    if (take("cyclic:")) return make_cyclic(number());
    if (take("sym:")) {
      const auto n = number();
      if (n > 10) fail("symmetric degree too large");
      return make_symmetric(n);
    }
    if (take("prod:")) {
      GroupPtr left = group();
      if (!take(",")) fail("expected ','");
      GroupPtr right = group();
      return direct_product(std::move(left), std::move(right));
    }
    if (take("wreath:")) {
      GroupPtr base = group();
      if (!take(",n=")) fail("expected ',n='");
      const auto n = number();
      if (n > WreathProduct::kMaxDegree) fail("wreath degree too large");
      return wreath_product(std::move(base), n);
    }
    fail("expected cyclic:, sym:, prod: or wreath:");
  }
};

}  // namespace

GroupPtr parse_group_spec(std::string_view text) {
  SpecParser p{text};
  GroupPtr g = p.group();
  if (p.pos != text.size()) p.fail("trailing characters");
  return g;
}

// ---------------------------------------------------------------------------
// Conjugacy and centralizers

ConjugacyClasses conjugacy_classes(const FiniteGroup& g, const Limits& limits) {
  g.require_enumerable(limits);
  const std::uint64_t n = g.order();
  ConjugacyClasses out;
  constexpr std::size_t kUnset = SIZE_MAX;
  out.class_of.assign(n, kUnset);
  for (Elt x = 0; x < n; ++x) {
    if (out.class_of[x] != kUnset) continue;
    const std::size_t id = out.classes.size();
    std::vector<Elt> cls;
    for (Elt y = 0; y < n; ++y) {
      const Elt c = g.conj(x, y);
      if (out.class_of[c] == kUnset) {
        out.class_of[c] = id;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

std::vector<Elt> centralizer(const FiniteGroup& g, const std::vector<Elt>& subset, const Limits& limits) {
  g.require_enumerable(limits);
  std::vector<Elt> out;
  for (Elt z = 0; z < g.order(); ++z) {
    bool commutes = true;
    for (Elt s : subset)
      if (g.mul(z, s) != g.mul(s, z)) {
        commutes = false;
        break;
      }
    if (commutes) out.push_back(z);
  }
  return out;
}

std::optional<std::string> check_group_axioms(const FiniteGroup& g, std::uint64_t exhaustive_order,
                                              std::size_t samples, std::uint64_t seed) {
  const std::uint64_t n = g.order();
  auto describe = [&](const std::string& what, std::initializer_list<Elt> xs) {
    std::string s = what + " fails at";
    for (Elt x : xs) s += " " + g.format(x);
    return s;
  };
  auto check_one = [&](Elt a) -> std::optional<std::string> {
    if (g.mul(g.identity(), a) != a || g.mul(a, g.identity()) != a) return describe("identity", {a});
    if (g.mul(a, g.inv(a)) != g.identity() || g.mul(g.inv(a), a) != g.identity()) return describe("inverse", {a});
    return std::nullopt;
  };
  auto check_three = [&](Elt a, Elt b, Elt c) -> std::optional<std::string> {
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return describe("associativity", {a, b, c});
    return std::nullopt;
  };
  bool abelian_seen = true;
  if (n <= exhaustive_order) {
    for (Elt a = 0; a < n; ++a) {
      if (auto f = check_one(a)) return f;
      for (Elt b = 0; b < n; ++b) {
        if (g.mul(a, b) >= n) return describe("closure", {a, b});
        if (g.mul(a, b) != g.mul(b, a)) abelian_seen = false;
        for (Elt c = 0; c < n; ++c)
          if (auto f = check_three(a, b, c)) return f;
      }
    }
    if (abelian_seen != g.is_abelian()) return std::string("is_abelian flag disagrees with commutation");
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> pick(0, n - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const Elt a = pick(rng), b = pick(rng), c = pick(rng);
    if (auto f = check_one(a)) return f;
    if (auto f = check_three(a, b, c)) return f;
    if (g.is_abelian() && g.mul(a, b) != g.mul(b, a)) return describe("commutation", {a, b});
  }
  return std::nullopt;
}

}  // namespace orbifrob
