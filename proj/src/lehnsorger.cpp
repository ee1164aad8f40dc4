#include "orbifrob/lehnsorger.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace orbifrob {

using nlohmann::json;
using nlohmann::ordered_json;

PairPlan make_pair_plan(const Perm& sigma, const Perm& tau) {
  PairPlan p;
  p.product = sigma * tau;
  const OrbitPartition joint = joint_orbits(sigma, tau);
  const std::vector<unsigned> gd = graph_defect(sigma, tau);
  const OrbitPartition os = orbits(sigma), ot = orbits(tau), ost = orbits(p.product);
  p.blocks.resize(joint.size());
  for (std::size_t d = 0; d < joint.size(); ++d) p.blocks[d].gd = gd[d];
  for (std::size_t a = 0; a < os.size(); ++a) p.blocks[joint.block_of(os.block(a).front())].sigma_orbits.push_back(a);
  for (std::size_t b = 0; b < ot.size(); ++b) p.blocks[joint.block_of(ot.block(b).front())].tau_orbits.push_back(b);
  for (std::size_t c = 0; c < ost.size(); ++c)
    p.blocks[joint.block_of(ost.block(c).front())].product_orbits.push_back(c);
  p.product_orbit_count = ost.size();
  return p;
}

LSAlgebra::LSAlgebra(std::shared_ptr<const FrobeniusAlgebra> base, std::size_t n, const Limits& limits)
    : base_(std::move(base)), n_(n), limits_(limits) {
  if (n_ == 0) throw std::invalid_argument("LS algebra needs n >= 1");
  if (n_ > 8) throw SizeLimit("LS index set", n_, 8);
  perm_count_ = factorial(n_);
  euler_.push_back(base_->unit());
  const Vec e = base_->euler_class(limits_);
  for (std::size_t k = 1; k <= n_; ++k) euler_.push_back(base_->multiply(euler_.back(), e));
  comult_.resize(n_ + 1);
  for (std::size_t r = 1; r <= n_; ++r) comult_[r] = base_->comultiply_basis_all(static_cast<unsigned>(r), limits_);
  if (n_ <= 5) {
    const auto perms = all_perms(n_);
    plans_.reserve(perms.size() * perms.size());
    for (const auto& s : perms)
      for (const auto& t : perms) plans_.push_back(make_pair_plan(s, t));
  }
}

std::uint64_t LSAlgebra::dimension() const {
  std::uint64_t total = 0;
  for (const auto& s : all_perms(n_)) {
    const std::uint64_t add = sat_pow(base_->dim(), orbits(s).size());
    total = total > UINT64_MAX - add ? UINT64_MAX : total + add;
  }
  return total;
}

std::vector<LSKey> LSAlgebra::sector_basis(const Perm& sigma) const {
  const std::size_t r = orbits(sigma).size();
  const std::size_t m = base_->dim();
  limits_.require(sat_pow(m, r), "LS sector basis");
  std::vector<LSKey> out;
  std::vector<std::size_t> assign(r, 0);
  for (;;) {
    out.push_back({sigma, assign});
    std::size_t k = r;
    while (k > 0 && ++assign[k - 1] == m) assign[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

std::vector<LSKey> LSAlgebra::basis() const {
  limits_.require(dimension(), "LS basis");
  std::vector<LSKey> out;
  for (const auto& s : all_perms(n_)) {
    auto part = sector_basis(s);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

void LSAlgebra::validate(const LSKey& key) const {
  if (key.sigma.degree() != n_) throw ParseError("permutation has the wrong degree");
  if (key.assign.size() != orbits(key.sigma).size())
    throw ParseError("assignment does not match the orbits of " + key.sigma.to_string());
  for (std::size_t x : key.assign)
    if (x >= base_->dim()) throw ParseError("label index out of range");
}

LSElt LSAlgebra::unit() const {
  const TensorVec t = tensor_product(std::vector<Vec>(n_, base_->unit()));
  LSElt out;
  for (const auto& [tuple, c] : t) out.add({Perm(n_), tuple}, c);
  return out;
}

Rational LSAlgebra::degree(const LSKey& key) const {
  Rational deg = base_->d() * static_cast<unsigned long>(length(key.sigma));
  for (std::size_t x : key.assign) deg += base_->degree(x);
  return deg;
}

Rational LSAlgebra::degree_literal(const LSKey& key) const {
  Rational deg = base_->d() * static_cast<unsigned long>(length(key.sigma)) / 2;
  for (std::size_t x : key.assign) deg += base_->degree(x);
  return deg;
}

LSKey LSAlgebra::act(const Perm& pi, const LSKey& key) const {
  const Perm pinv = pi.inverse();
  const Perm moved = pinv * key.sigma * pi;
  const OrbitPartition from = orbits(key.sigma), to = orbits(moved);
  std::vector<std::size_t> assign(to.size());
  for (std::size_t a = 0; a < from.size(); ++a) assign[to.block_of(pinv(from.block(a).front()))] = key.assign[a];
  return {moved, std::move(assign)};
}

LSElt LSAlgebra::act(const Perm& pi, const LSElt& v) const {
  LSElt out;
  for (const auto& [k, c] : v) out.add(act(pi, k), c);
  return out;
}

const PairPlan& LSAlgebra::plan(const Perm& sigma, const Perm& tau, PairPlan& scratch) const {
  if (!plans_.empty()) return plans_[lex_rank(sigma) * perm_count_ + lex_rank(tau)];
  scratch = make_pair_plan(sigma, tau);
  return scratch;
}

const Vec& LSAlgebra::euler_power(unsigned k) const {
  if (k >= euler_.size()) throw std::out_of_range("Euler power beyond n");
  return euler_[k];
}

LSElt LSAlgebra::multiply(const LSKey& x, const LSKey& y) const {
  PairPlan scratch;
  const PairPlan& p = plan(x.sigma, y.sigma, scratch);
  const FrobeniusAlgebra& A = *base_;

  // f1*(x) f2*(y) e^gd on each joint orbit, then m_* into its sigma tau orbits
  std::vector<TensorVec> parts(p.blocks.size());
  for (std::size_t d = 0; d < p.blocks.size(); ++d) {
    const auto& blk = p.blocks[d];
    Vec acc = A.unit();
    auto times = [&](std::size_t label) {
      Vec next;
      for (const auto& [k, c] : acc) next.add_scaled(A.product(k, label), c);
      acc = std::move(next);
    };
    for (std::size_t a : blk.sigma_orbits) {
      times(x.assign[a]);
      if (acc.empty()) return {};
    }
    for (std::size_t b : blk.tau_orbits) {
      times(y.assign[b]);
      if (acc.empty()) return {};
    }
    if (blk.gd > 0) {
      acc = A.multiply(acc, euler_power(blk.gd));
      if (acc.empty()) return {};
    }
    const auto& table = comult_[blk.product_orbits.size()];
    for (const auto& [k, c] : acc) parts[d].add_scaled(table[k], c);
    if (parts[d].empty()) return {};
  }

  LSElt out;
  std::vector<std::size_t> assign(p.product_orbit_count);
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t d, const Rational& c) {
    if (d == parts.size()) {
      out.add({p.product, assign}, c);
      return;
    }
    const auto& pos = p.blocks[d].product_orbits;
    for (const auto& [tuple, v] : parts[d]) {
      for (std::size_t s = 0; s < pos.size(); ++s) assign[pos[s]] = tuple[s];
      rec(d + 1, c * v);
    }
  };
  rec(0, Rational(1));
  return out;
}

LSElt LSAlgebra::multiply(const LSElt& u, const LSElt& v) const {
  LSElt out;
  for (const auto& [x, a] : u)
    for (const auto& [y, b] : v) out.add_scaled(multiply(x, y), a * b);
  return out;
}

Rational LSAlgebra::metric(const LSKey& x, const LSKey& y) const {
  if (!(x.sigma * y.sigma).is_identity()) return 0;
  const LSElt prod = multiply(x, y);
  const Vec& one = base_->unit();
  Rational out = 0;
  for (const auto& [k, c] : prod) {
    Rational term = c;
    for (std::size_t lab : k.assign) {
      term *= base_->metric(one, Vec::basis(lab));
      if (is_zero(term)) break;
    }
    out += term;
  }
  return out;
}

Rational LSAlgebra::metric(const LSElt& u, const LSElt& v) const {
  Rational out = 0;
  for (const auto& [x, a] : u)
    for (const auto& [y, b] : v) {
      const Rational m = metric(x, y);
      if (!is_zero(m)) out += a * b * m;
    }
  return out;
}

std::string LSAlgebra::key_to_string(const LSKey& key) const {
  std::string s;
  for (std::size_t a = 0; a < key.assign.size(); ++a) {
    if (a) s += ',';
    s += base_->label(key.assign[a]);
  }
  return s + "@" + key.sigma.to_string();
}

LSKey LSAlgebra::parse_key(const std::string& text) const {
  const auto at = text.rfind('@');
  if (at == std::string::npos) throw ParseError("term '" + text + "' lacks '@<cycles>'");
  LSKey key{parse_cycles(text.substr(at + 1), n_), {}};
  const std::string labels = text.substr(0, at);
  // split on commas outside brackets, so labels like "(1,a)" survive
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= labels.size(); ++i) {
    if (i == labels.size() || (labels[i] == ',' && depth == 0)) {
      key.assign.push_back(base_->index(labels.substr(start, i - start)));
      start = i + 1;
    } else if (labels[i] == '(' || labels[i] == '[') {
      ++depth;
    } else if (labels[i] == ')' || labels[i] == ']') {
      --depth;
    }
  }
  validate(key);
  return key;
}

LSElt LSAlgebra::elt_from_json(const json& j) const {
  if (!j.is_array()) throw ParseError("LS element must be an array of terms");
  LSElt out;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("sigma") || !t.contains("assign") || !t.contains("coeff"))
      throw ParseError("LS term needs sigma, assign and coeff: " + t.dump());
    if (!t["sigma"].is_string()) throw ParseError("sigma must be cycle text");
    LSKey key{parse_cycles(t["sigma"].get<std::string>(), n_), {}};
    const OrbitPartition orb = orbits(key.sigma);
    key.assign.assign(orb.size(), 0);
    std::vector<bool> seen(orb.size(), false);
    if (!t["assign"].is_array()) throw ParseError("assign must be an array");
    for (const auto& e : t["assign"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_string())
        throw ParseError("assign entry must be [point, label]: " + e.dump());
      const auto point = e[0].get<std::uint64_t>();
      if (point < 1 || point > n_) throw ParseError("point " + std::to_string(point) + " out of range");
      const std::size_t a = orb.block_of(static_cast<unsigned>(point - 1));
      if (seen[a]) throw ParseError("orbit of point " + std::to_string(point) + " assigned twice");
      seen[a] = true;
      key.assign[a] = base_->index(e[1].get<std::string>());
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw ParseError("every orbit of " + key.sigma.to_string() + " needs a label");
    const json& c = t["coeff"];
    out.add(key, c.is_string() ? parse_rational(c.get<std::string>())
                               : c.is_number_integer() ? Rational(c.get<long>())
                                                       : throw ParseError("bad coefficient " + c.dump()));
  }
  return out;
}

ordered_json LSAlgebra::elt_to_json(const LSElt& v) const {
  ordered_json out = ordered_json::array();
  for (const auto& [k, c] : v) {
    const OrbitPartition orb = orbits(k.sigma);
    ordered_json assign = ordered_json::array();
    for (std::size_t a = 0; a < orb.size(); ++a) assign.push_back({orb.block(a).front() + 1, base_->label(k.assign[a])});
    out.push_back({{"sigma", k.sigma.to_string()}, {"assign", assign}, {"coeff", to_string(c)}});
  }
  return out;
}

// ---------------------------------------------------------------- view

LSGFrobeniusView::LSGFrobeniusView(const LSAlgebra& ls)
    : ls_(ls), group_(std::make_shared<SymmetricGroup>(ls.degree_n())), keys_(ls.basis()) {
  for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
}

std::string LSGFrobeniusView::name() const {
  return ls_.base().name() + "{S" + std::to_string(ls_.degree_n()) + "}";
}

Rational LSGFrobeniusView::d() const { return ls_.base().d() * static_cast<unsigned long>(ls_.degree_n()); }

Vec LSGFrobeniusView::to_vec(const LSElt& v) const {
  Vec out;
  for (const auto& [k, c] : v) out.add(index_.at(k), c);
  return out;
}

LSElt LSGFrobeniusView::from_vec(const Vec& v) const {
  LSElt out;
  for (const auto& [i, c] : v) out.add(keys_[i], c);
  return out;
}

Vec LSGFrobeniusView::multiply_basis(std::size_t i, std::size_t j) const {
  return to_vec(ls_.multiply(keys_[i], keys_[j]));
}

Vec LSGFrobeniusView::act_basis(Elt g, std::size_t i) const {
  return Vec::basis(index_.at(ls_.act(group_->perm(g), keys_[i])));
}

Rational LSGFrobeniusView::metric_basis(std::size_t i, std::size_t j) const { return ls_.metric(keys_[i], keys_[j]); }

// ---------------------------------------------------------------- splitting

namespace {

bool preserves(const Perm& s, const std::vector<std::vector<unsigned>>& lambda, const std::vector<std::size_t>& block_of) {
  for (const auto& blk : lambda)
    for (unsigned i : blk)
      if (block_of[s(i)] != block_of[i]) return false;
  return true;
}

}  // namespace

SplittingReport splitting_check(const LSAlgebra& ls, const std::vector<std::vector<unsigned>>& lambda,
                                const SplittingOptions& options) {
  const std::size_t n = ls.degree_n();
  std::vector<std::size_t> block_of(n, SIZE_MAX);
  std::vector<std::vector<unsigned>> blocks = lambda;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::sort(blocks[b].begin(), blocks[b].end());
    for (unsigned i : blocks[b]) {
      if (i >= n || block_of[i] != SIZE_MAX) throw std::invalid_argument("lambda is not a partition of the index set");
      block_of[i] = b;
    }
  }
  for (std::size_t b : block_of)
    if (b == SIZE_MAX) throw std::invalid_argument("lambda is not a partition of the index set");

  // one small LS algebra per block size
  std::map<std::size_t, std::unique_ptr<LSAlgebra>> local;
  for (const auto& blk : blocks)
    if (!local.count(blk.size())) local[blk.size()] = std::make_unique<LSAlgebra>(ls.base_ptr(), blk.size(), ls.limits());

  auto restrict = [&](const LSKey& key) {
    const OrbitPartition orb = orbits(key.sigma);
    std::vector<LSKey> parts;
    for (const auto& blk : blocks) {
      std::vector<unsigned> img(blk.size());
      for (std::size_t j = 0; j < blk.size(); ++j)
        img[j] = static_cast<unsigned>(std::lower_bound(blk.begin(), blk.end(), key.sigma(blk[j])) - blk.begin());
      LSKey k{Perm(img), {}};
      const OrbitPartition local_orb = orbits(k.sigma);
      for (const auto& o : local_orb.blocks()) k.assign.push_back(key.assign[orb.block_of(blk[o.front()])]);
      parts.push_back(std::move(k));
    }
    return parts;
  };
  auto embed = [&](const std::vector<LSKey>& parts) {
    std::vector<unsigned> img(n);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (std::size_t j = 0; j < blocks[b].size(); ++j) img[blocks[b][j]] = blocks[b][parts[b].sigma(j)];
    LSKey k{Perm(img), {}};
    const OrbitPartition orb = orbits(k.sigma);
    for (const auto& o : orb.blocks()) {
      const std::size_t b = block_of[o.front()];
      const auto& blk = blocks[b];
      const unsigned lj = static_cast<unsigned>(std::lower_bound(blk.begin(), blk.end(), o.front()) - blk.begin());
      k.assign.push_back(parts[b].assign[orbits(parts[b].sigma).block_of(lj)]);
    }
    return k;
  };

  std::vector<LSKey> span;
  for (const auto& s : all_perms(n))
    if (preserves(s, blocks, block_of)) {
      auto part = ls.sector_basis(s);
      span.insert(span.end(), part.begin(), part.end());
    }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (sat_mul(span.size(), span.size()) <= options.exhaustive_pairs) {
    for (std::size_t i = 0; i < span.size(); ++i)
      for (std::size_t j = 0; j < span.size(); ++j) pairs.emplace_back(i, j);
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, span.size() - 1);
    for (std::size_t s = 0; s < options.samples; ++s) pairs.emplace_back(pick(rng), pick(rng));
  }

  SplittingReport rep;
  for (const auto& [i, j] : pairs) {
    ++rep.pairs_checked;
    const LSElt full = ls.multiply(span[i], span[j]);
    for (const auto& [k, c] : full)
      if (!preserves(k.sigma, blocks, block_of)) {
        rep.ok = false;
        rep.witness = ls.key_to_string(span[i]) + " * " + ls.key_to_string(span[j]) + " leaves the subalgebra";
        return rep;
      }
    const auto xs = restrict(span[i]), ys = restrict(span[j]);
    std::vector<LSElt> factors;
    for (std::size_t b = 0; b < blocks.size(); ++b) factors.push_back(local[blocks[b].size()]->multiply(xs[b], ys[b]));
    LSElt combined;
    std::vector<LSKey> cur(blocks.size());
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t b, const Rational& c) {
      if (b == blocks.size()) {
        combined.add(embed(cur), c);
        return;
      }
      for (const auto& [k, v] : factors[b]) {
        cur[b] = k;
        rec(b + 1, c * v);
      }
    };
    rec(0, Rational(1));
    if (!(combined == full)) {
      rep.ok = false;
      rep.witness = ls.key_to_string(span[i]) + " * " + ls.key_to_string(span[j]) + " does not factor over the blocks";
      return rep;
    }
  }
  return rep;
}

}  // namespace orbifrob
