// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [A1 A2 ...]   (no arguments runs everything)

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbifrob/frobenius.hpp"
#include "orbifrob/gfrob.hpp"
#include "orbifrob/groups.hpp"
#include "orbifrob/lehnsorger.hpp"
#include "orbifrob/perm.hpp"
#include "orbifrob/wreath_combinatorics.hpp"
#include "orbifrob/wreathpt.hpp"

using namespace orbifrob;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fixture(const std::string& name) { return std::string(ORBIFROB_FIXTURES) + "/" + name; }

std::shared_ptr<const FrobeniusAlgebra> torus() {
  static auto a = std::make_shared<const FrobeniusAlgebra>(load_frobenius(fixture("torus_z2.json")));
  return a;
}

int jobs() { return omp_get_max_threads(); }

// every map from m points into a group of the given order
std::vector<GMap> all_maps(std::size_t m, Elt order) {
  std::vector<GMap> out{GMap(m, 0)};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<GMap> next;
    for (const GMap& g : out)
      for (Elt x = 0; x < order; ++x) {
        GMap h = g;
        h[i] = x;
        next.push_back(std::move(h));
      }
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------- A1

Outcome a1() {
  Outcome o;
  std::vector<std::pair<std::string, std::size_t>> cases;
  for (const char* g : {"cyclic:2", "cyclic:3", "cyclic:4", "prod:cyclic:2,cyclic:2", "sym:3"})
    for (std::size_t n : {2u, 3u}) cases.emplace_back(g, n);
  cases.emplace_back("cyclic:2", 4);
  std::uint64_t pairs = 0;
  std::ostringstream bad;
  for (const auto& [spec, n] : cases) {
    RingIsoOptions opt;
    opt.jobs = jobs();
    const RingIsoReport r = verify_ring_iso(parse_group_spec(spec), n, opt);
    pairs += r.pairs_checked;
    if (!r.ok()) {
      o.pass = false;
      bad << " " << spec << "/n=" << n << ": " << r.product_mismatches.size() << "/" << r.metric_mismatches.size() << "/"
          << r.action_mismatches.size();
    }
  }
  o.detail = std::to_string(cases.size()) + " cases, " + std::to_string(pairs) + " basis pairs" + bad.str();
  return o;
}

// ---------------------------------------------------------------- A2

Outcome a2() {
  const CanonicalIso iso = canonical_iso(make_cyclic(2), 2);
  const WreathProduct& W = *iso.wreath;
  const LSKey x = iso.ls->parse_key("a@(1 2)");
  const Rational ls_metric = iso.ls->metric(x, x);
  const Vec s = iso.image(LSElt::basis(x));
  Vec sq;
  for (const auto& [u, cu] : s)
    for (const auto& [v, cv] : s) sq.add(W.mul(u, v), cu * cv);
  const Rational wreath_metric = sq.coeff(W.identity()) / Rational(static_cast<unsigned long>(W.normal_order()));
  Outcome o;
  o.pass = ls_metric == Rational(1, 2) && wreath_metric == ls_metric;
  o.detail = "eta_LS = " + to_string(ls_metric) + ", wreath/|K| = " + to_string(wreath_metric);
  return o;
}

// ---------------------------------------------------------------- A3

Outcome a3() {
  Outcome o;
  std::uint64_t profiles = 0;
  for (std::size_t order : {2u, 3u}) {
    const auto G = make_cyclic(order);
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto W = wreath_product(G, n);
      const auto perms = all_perms(n);
      for (const Perm& s : perms)
        for (const Perm& t : perms) {
          if (joint_orbits(s, t).size() != 1) continue;
          const std::size_t ls = orbits(s).size(), lt = orbits(t).size();
          std::uint64_t expect = 1;
          for (std::size_t k = 0; k < n + 1 - ls - lt; ++k) expect *= order;
          for (const GMap& g : all_maps(ls, order))
            for (const GMap& h : all_maps(lt, order)) {
              const FiberProfile p = fiber_profile(*W, g, s, h, t);
              ++profiles;
              bool ok = p.predicted_fiber == expect && p.matches_prediction();
              for (const auto& [z, k] : p.fibers) ok = ok && k == expect;
              if (!ok && o.pass) {
                o.pass = false;
                o.detail = "first failure: Z" + std::to_string(order) + " sigma=" + s.to_string() + " tau=" + t.to_string() + "; ";
              }
            }
        }
    }
  }
  o.detail += std::to_string(profiles) + " fiber profiles";
  return o;
}

// ---------------------------------------------------------------- A4

Outcome a4() {
  Outcome o;
  std::uint64_t pairs = 0, transitive = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto all = all_perms(n);
    for (const Perm& s : all)
      for (const Perm& t : all) {
        ++pairs;
        std::vector<unsigned> gd;
        try {
          gd = graph_defect(s, t);
        } catch (const std::exception& e) {
          o.pass = false;
          o.detail = std::string("graph defect not a non-negative integer: ") + e.what() + "; ";
          continue;
        }
        if (gd.size() != 1) continue;
        ++transitive;
        const long b1 = static_cast<long>(length(s) + length(t)) + 1 - static_cast<long>(n);
        if (b1 != 2 * static_cast<long>(gd[0]) + static_cast<long>(orbits(s * t).size()) - 1) o.pass = false;
      }
  }
  o.detail += std::to_string(pairs) + " pairs, " + std::to_string(transitive) + " transitive";
  return o;
}

// ---------------------------------------------------------------- A5

// Closed forms on the torus fixture: phi1 the unit, phi2 the point class,
// phi3..phi24 degree 2 with complements 3<->4, 5<->6, 7<->8 and 9..24 self-dual.
struct TorusForms {
  std::size_t one, top;
  std::vector<std::size_t> comp;  // by base index

  explicit TorusForms(const FrobeniusAlgebra& t) : one(t.index("phi1")), top(t.index("phi2")), comp(t.dim()) {
    auto at = [&](int k) { return t.index("phi" + std::to_string(k)); };
    comp[one] = top;
    comp[top] = one;
    for (int k = 3; k <= 8; k += 2) {
      comp[at(k)] = at(k + 1);
      comp[at(k + 1)] = at(k);
    }
    for (int k = 9; k <= 24; ++k) comp[at(k)] = at(k);
  }

  using Tensor = std::map<std::vector<std::size_t>, Rational>;

  Tensor m_top(std::size_t r) const { return {{std::vector<std::size_t>(r, top), Rational(1u << (r - 1))}}; }

  Tensor m_mid(std::size_t k, std::size_t r) const {
    Tensor out;
    for (std::size_t p = 0; p < r; ++p) {
      std::vector<std::size_t> t(r, top);
      t[p] = k;
      out[t] = Rational(1u << (r - 1));
    }
    return out;
  }

  // distinct tuples of the multisets {2,..,2,l,l^c}
  Tensor m_one(std::size_t r) const {
    std::set<std::vector<std::size_t>> tuples;
    for (std::size_t l = 0; l < comp.size(); ++l)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          if (i == j) continue;
          std::vector<std::size_t> t(r, top);
          t[i] = l;
          t[j] = comp[l];
          tuples.insert(t);
        }
    if (r == 1) tuples.insert({one});
    Tensor out;
    for (const auto& t : tuples) out[t] = Rational(1u << (r - 1));
    return out;
  }

  Tensor block(const std::vector<std::size_t>& factors, unsigned gd, std::size_t r) const {
    std::vector<std::size_t> rest;
    for (std::size_t f : factors)
      if (f != one) rest.push_back(f);
    if (gd >= 2) return {};
    if (gd == 1) {
      if (!rest.empty()) return {};
      Tensor t = m_top(r);
      for (auto& [k, c] : t) c *= 48;
      return t;
    }
    if (rest.empty()) return m_one(r);
    if (rest.size() == 1) return rest[0] == top ? m_top(r) : m_mid(rest[0], r);
    if (rest.size() == 2 && comp[rest[0]] == rest[1]) return m_top(r);
    return {};
  }

  LSElt predict(const LSKey& x, const LSKey& y, const PairPlan& plan) const {
    const std::size_t m = plan.product_orbit_count;
    std::vector<std::pair<std::vector<std::size_t>, Rational>> acc{{std::vector<std::size_t>(m), Rational(1)}};
    for (const auto& b : plan.blocks) {
      std::vector<std::size_t> factors;
      for (std::size_t a : b.sigma_orbits) factors.push_back(x.assign[a]);
      for (std::size_t a : b.tau_orbits) factors.push_back(y.assign[a]);
      const Tensor t = block(factors, b.gd, b.product_orbits.size());
      std::vector<std::pair<std::vector<std::size_t>, Rational>> next;
      for (const auto& [assign, c] : acc)
        for (const auto& [tuple, d] : t) {
          std::vector<std::size_t> a = assign;
          for (std::size_t p = 0; p < tuple.size(); ++p) a[b.product_orbits[p]] = tuple[p];
          next.emplace_back(std::move(a), c * d);
        }
      acc = std::move(next);
    }
    LSElt out;
    for (auto& [assign, c] : acc) out.add(LSKey{plan.product, std::move(assign)}, c);
    return out;
  }
};

// Visits basis pairs of the torus LS algebra: all pairs at n = 2; at n = 3
// every transitive pair plus `samples` random non-transitive ones.
void torus_pairs(const LSAlgebra& ls, std::size_t samples,
                 const std::function<void(const LSKey&, const LSKey&, const PairPlan&)>& visit) {
  const std::size_t n = ls.degree_n();
  const auto perms = all_perms(n);
  std::vector<std::vector<LSKey>> sector(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) sector[i] = ls.sector_basis(perms[i]);
  std::vector<std::pair<std::size_t, std::size_t>> loose;
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = 0; j < perms.size(); ++j) {
      const PairPlan plan = make_pair_plan(perms[i], perms[j]);
      if (n <= 2 || plan.blocks.size() == 1) {
        for (const LSKey& x : sector[i])
          for (const LSKey& y : sector[j]) visit(x, y, plan);
      } else {
        loose.emplace_back(i, j);
      }
    }
  std::mt19937_64 rng(5);
  for (std::size_t k = 0; k < samples && !loose.empty(); ++k) {
    const auto [i, j] = loose[std::uniform_int_distribution<std::size_t>(0, loose.size() - 1)(rng)];
    const auto& si = sector[i];
    const auto& sj = sector[j];
    const LSKey& x = si[std::uniform_int_distribution<std::size_t>(0, si.size() - 1)(rng)];
    const LSKey& y = sj[std::uniform_int_distribution<std::size_t>(0, sj.size() - 1)(rng)];
    visit(x, y, make_pair_plan(x.sigma, y.sigma));
  }
}

Outcome a5() {
  Outcome o;
  const auto& T = *torus();
  const TorusForms forms(T);
  const bool euler = T.euler_class() == Vec::basis(forms.top, 48);
  if (!euler) {
    o.pass = false;
    o.detail = "e != 48 phi2; ";
  }
  // the closed forms themselves against m_*
  for (std::size_t r = 1; r <= 3; ++r) {
    const std::vector<std::pair<std::size_t, TorusForms::Tensor>> cases{
        {forms.one, forms.m_one(r)}, {forms.top, forms.m_top(r)}, {T.index("phi3"), forms.m_mid(T.index("phi3"), r)},
        {T.index("phi9"), forms.m_mid(T.index("phi9"), r)}};
    for (const auto& [x, t] : cases) {
      TensorVec expect;
      for (const auto& [k, c] : t) expect.add(k, c);
      if (T.comultiply(Vec::basis(x), static_cast<unsigned>(r)) != expect) {
        o.pass = false;
        o.detail += "m_* closed form differs for " + T.label(x) + " r=" + std::to_string(r) + "; ";
      }
    }
  }
  std::uint64_t checked = 0, zero = 0, gd1 = 0;
  for (std::size_t n : {2u, 3u}) {
    const LSAlgebra ls(torus(), n);
    torus_pairs(ls, 200000, [&](const LSKey& x, const LSKey& y, const PairPlan& plan) {
      ++checked;
      for (const auto& b : plan.blocks) gd1 += b.gd == 1;
      const LSElt got = ls.multiply(x, y);
      zero += got.empty();
      if (got != forms.predict(x, y, plan) && o.pass) {
        o.pass = false;
        o.detail += "first mismatch " + ls.key_to_string(x) + " * " + ls.key_to_string(y) + "; ";
      }
    });
  }
  o.detail += "e = 48 phi2, " + std::to_string(checked) + " products (" + std::to_string(zero) + " zero, " +
              std::to_string(gd1) + " gd=1 orbits)";
  return o;
}

// ---------------------------------------------------------------- A6

Outcome a6() {
  Outcome o;
  std::ostringstream d;
  for (const char* spec : {"cyclic:2", "sym:3"})
    for (std::size_t n : {2u, 3u}) {
      const auto w = wreath_product(parse_group_spec(spec), n);
      const Coinvariants c = coinvariants(GroupAlgebra(w), wreath_presentation(w), jobs());
      GFrobCheckOptions opt;
      opt.jobs = jobs();
      const GFrobReport r = check_axioms(*c.algebra, opt);
      if (!r.all_pass()) o.pass = false;
      d << spec << "/n=" << n << " dim " << c.algebra->dim() << (r.all_pass() ? " ok" : " FAIL") << ", ";
    }
  // one perturbed structure constant
  const auto w = wreath_product(make_cyclic(2), 2);
  const Coinvariants c = coinvariants(GroupAlgebra(w), wreath_presentation(w));
  TabulatedGFrobenius::Data data = c.algebra->data();
  const std::size_t dim = data.labels.size();
  data.products[(dim - 1) * dim + (dim - 1)].add(0, 1);
  const GFrobReport r = check_axioms(TabulatedGFrobenius(std::move(data)));
  std::string failed;
  for (const auto& v : r.verdicts)
    if (!v.pass && v.witness.is_object()) failed += (failed.empty() ? "" : ",") + v.axiom;
  if (failed.empty()) o.pass = false;
  d << "mutant fails {" << failed << "}";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- A7

Outcome a7() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::uint64_t checks = 0;
  auto rvec = [&](std::size_t dim, int terms) {
    Vec v;
    std::uniform_int_distribution<std::size_t> idx(0, dim - 1);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    for (int t = 0; t < terms; ++t) {
      Rational q(num(rng), den(rng));
      q.canonicalize();
      v.add(idx(rng), q);
    }
    return v;
  };
  const std::vector<std::shared_ptr<const FrobeniusAlgebra>> algebras{
      torus(), center_algebra(make_cyclic(2)), center_algebra(make_symmetric(3)),
      center_algebra(parse_group_spec("prod:cyclic:2,cyclic:2"))};
  for (const auto& a : algebras) {
    const FrobeniusAlgebra& A = *a;
    for (int k = 0; k < 100; ++k) {
      const Vec x = rvec(A.dim(), 3);
      for (unsigned r = 1; r <= 3; ++r) {
        std::vector<Vec> ys;
        for (unsigned i = 0; i < r; ++i) ys.push_back(rvec(A.dim(), 2));
        ++checks;
        if (A.tensor_metric(A.comultiply(x, r), tensor_product(ys)) != A.metric(x, A.multi_product(ys))) o.pass = false;
      }
      const TensorVec m2 = A.comultiply(x, 2), m3 = A.comultiply(x, 3);
      checks += 2;
      if (A.phi_lower(Surjection{{0, 0, 1}, 2}, m2) != m3 || A.phi_lower(Surjection{{0, 1, 1}, 2}, m2) != m3)
        o.pass = false;
    }
  }
  o.detail = std::to_string(algebras.size()) + " algebras x 100 inputs, " + std::to_string(checks) + " identities";
  return o;
}

// ---------------------------------------------------------------- A8

Outcome a8() {
  const Vec z2 = center_algebra(make_cyclic(2))->euler_class();
  const Vec s3 = center_algebra(make_symmetric(3))->euler_class();
  const auto& T = *torus();
  const Vec t = T.euler_class();
  Outcome o;
  o.pass = z2 == Vec::basis(0, 4) && s3.coeff(0) == 18 && t == Vec::basis(T.index("phi2"), 48);
  o.detail = "Z2: " + to_string(z2.coeff(0)) + "*1, S3: " + to_string(s3.coeff(0)) + "*1, torus: " +
             to_string(t.coeff(T.index("phi2"))) + "*phi2";
  return o;
}

// ---------------------------------------------------------------- A9

Outcome a9() {
  Outcome o;
  std::uint64_t checked = 0;
  for (std::size_t n : {1u, 2u, 3u}) {
    const LSAlgebra ls(torus(), n);
    torus_pairs(ls, 200000, [&](const LSKey& x, const LSKey& y, const PairPlan&) {
      ++checked;
      const Rational want = ls.degree(x) + ls.degree(y);
      for (const auto& [k, c] : ls.multiply(x, y))
        if (ls.degree(k) != want && o.pass) {
          o.pass = false;
          o.detail = "inhomogeneous: " + ls.key_to_string(x) + " * " + ls.key_to_string(y) + "; ";
        }
    });
  }
  // the literal convention breaks on (phi1 (1 2))^2
  const LSAlgebra ls(torus(), 2);
  const LSKey w = ls.parse_key("phi1@(1 2)");
  const LSElt sq = ls.multiply(w, w);
  bool literal_fails = false;
  for (const auto& [k, c] : sq) literal_fails = literal_fails || ls.degree_literal(k) != 2 * ls.degree_literal(w);
  if (sq.empty() || !literal_fails) {
    o.pass = false;
    o.detail += "literal convention unexpectedly graded on the witness; ";
  }
  o.detail += std::to_string(checked) + " products homogeneous; literal: deg(w) = " + to_string(ls.degree_literal(w)) +
              ", deg(w^2) = " + to_string(ls.degree_literal(sq.begin()->first));
  return o;
}

// ---------------------------------------------------------------- A10

std::string run(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  status = pclose(p);
  return out;
}

Outcome a10() {
  Outcome o;
  const std::string cli = ORBIFROB_CLI;
  const std::vector<std::string> commands{
      "wreath-verify --group sym:3 --n 3 --no-timing",
      "wreath-verify --group cyclic:2 --n 4 --no-timing",
      "gfa-check --input " + fixture("q_s3.json"),
      "gfa-check --input " + fixture("qz2_trace_mutant.json"),
      "gen-coinvariants --group sym:3 --n 2",
      "ls --group cyclic:3 --n 3",
  };
  std::size_t runs = 0;
  for (const auto& c : commands) {
    std::string ref;
    int ref_status = 0;
    for (int jobs : {1, 8, 1, 8}) {
      int status = 0;
      const std::string out = run(cli + " --jobs " + std::to_string(jobs) + " " + c + " 2>&1", status);
      ++runs;
      if (runs % 4 == 1) {
        ref = out;
        ref_status = status;
        if (out.empty()) o.pass = false;
      } else if (out != ref || status != ref_status) {
        o.pass = false;
        o.detail += "differs: " + c + " with --jobs " + std::to_string(jobs) + "; ";
      }
    }
  }
  o.detail += std::to_string(commands.size()) + " commands x 4 runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
      {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}};
  std::set<std::string> want(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!want.empty() && !want.count(name)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%-4s %s  %s (%.2f s)\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
