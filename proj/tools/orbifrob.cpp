#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "orbifrob/frobenius.hpp"
#include "orbifrob/gfrob.hpp"
#include "orbifrob/groups.hpp"
#include "orbifrob/lehnsorger.hpp"
#include "orbifrob/perm.hpp"
#include "orbifrob/wreathpt.hpp"

using namespace orbifrob;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kMath = 1, kInput = 2, kCap = 3 };

struct RunConfig {
  std::string input;
  std::string group;
  std::size_t n = 0;
  std::string lhs, rhs;
  std::string out;
  std::uint64_t cap = Limits::kDefaultCap;
  int jobs = 1;
  std::string format = "json";
  std::string sector;
  std::string degree;
  bool no_timing = false;

  Limits limits() const { return Limits{cap}; }
};

// any input problem the library did not already classify
struct InputError : Error {
  using Error::Error;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

void emit_json(const RunConfig& cfg, const ordered_json& j) { emit(cfg, j.dump(2) + "\n"); }

void require_json_format(const RunConfig& cfg) {
  if (cfg.format != "json") throw InputError("--format csv is only available for ls tables");
}

void require_n(const RunConfig& cfg) {
  if (cfg.n < 1) throw InputError("--n must be at least 1");
}

int cmd_fa_check(const RunConfig& cfg) {
  require_json_format(cfg);
  const FrobeniusAlgebra a = frobenius_from_json(read_json_file(cfg.input));
  cfg.limits().require(a.dim(), "basis dimension");
  const FrobeniusReport rep = check_frobenius_axioms(a);
  ordered_json j;
  j["name"] = a.name();
  j["dim"] = a.dim();
  j["axioms"] = rep.to_json();
  emit_json(cfg, j);
  return rep.all_pass() ? kOk : kMath;
}

int cmd_gfa_check(const RunConfig& cfg) {
  require_json_format(cfg);
  const TabulatedGFrobenius h = gfrob_from_json(read_json_file(cfg.input), cfg.limits());
  cfg.limits().require(h.dim(), "basis dimension");
  GFrobCheckOptions opt;
  opt.jobs = cfg.jobs;
  const GFrobReport rep = check_axioms(h, opt);
  ordered_json j;
  j["name"] = h.name();
  j["group"] = h.group().name();
  j["dim"] = h.dim();
  j["axioms"] = rep.to_json();
  emit_json(cfg, j);
  return rep.all_pass() ? kOk : kMath;
}

std::shared_ptr<const FrobeniusAlgebra> ls_base(const RunConfig& cfg) {
  if (!cfg.input.empty() && !cfg.group.empty()) throw InputError("give either --input or --group, not both");
  if (!cfg.group.empty()) return center_algebra(parse_group_spec(cfg.group), cfg.limits());
  if (cfg.input.empty()) throw InputError("ls needs a base algebra (--input or --group)");
  return std::make_shared<FrobeniusAlgebra>(load_frobenius(cfg.input));
}

// JSON term list, a file holding one, or a single key "l1,l2@(cycles)"
LSElt parse_ls_arg(const LSAlgebra& ls, const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    try {
      return ls.elt_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("element JSON: ") + e.what());
    }
  }
  if (text.find('@') == std::string::npos && std::filesystem::is_regular_file(text))
    return ls.elt_from_json(read_json_file(text));
  LSElt v;
  v.add(ls.parse_key(text), Rational(1));
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int cmd_ls(const RunConfig& cfg) {
  require_n(cfg);
  const auto base = ls_base(cfg);
  const LSAlgebra ls(base, cfg.n, cfg.limits());

  if (!cfg.lhs.empty() && !cfg.rhs.empty()) {
    const LSElt x = parse_ls_arg(ls, cfg.lhs), y = parse_ls_arg(ls, cfg.rhs);
    const LSElt p = ls.multiply(x, y);
    if (cfg.format == "csv") {
      std::string text = "term,coeff\n";
      for (const auto& [k, c] : p) text += csv_field(ls.key_to_string(k)) + "," + to_string(c) + "\n";
      emit(cfg, text);
      return kOk;
    }
    ordered_json j;
    j["base"] = base->name();
    j["n"] = cfg.n;
    j["lhs"] = ls.elt_to_json(x);
    j["rhs"] = ls.elt_to_json(y);
    j["product"] = ls.elt_to_json(p);
    j["metric"] = to_string(ls.metric(x, y));
    emit_json(cfg, j);
    return kOk;
  }

  // table: lhs over a slice (or the one given element), rhs over the basis
  std::vector<LSKey> rows;
  if (!cfg.lhs.empty() || !cfg.rhs.empty()) {
    const LSElt fixed = parse_ls_arg(ls, cfg.lhs.empty() ? cfg.rhs : cfg.lhs);
    if (fixed.size() != 1 || fixed.begin()->second != 1)
      throw InputError("a single --lhs/--rhs must be one basis key for a table");
    rows.push_back(fixed.begin()->first);
  } else {
    rows = cfg.sector.empty() ? ls.basis() : ls.sector_basis(parse_cycles(cfg.sector, cfg.n));
  }
  if (!cfg.degree.empty()) {
    const Rational want = parse_rational(cfg.degree);
    std::erase_if(rows, [&](const LSKey& k) { return ls.degree(k) != want; });
  }
  const std::vector<LSKey> cols = ls.basis();
  cfg.limits().require(sat_mul(rows.size(), cols.size()), "ls table entries");
  const bool rhs_fixed = cfg.lhs.empty() && !cfg.rhs.empty();

  std::string csv = "lhs,rhs,term,coeff\n";
  ordered_json entries = ordered_json::array();
  for (const LSKey& r : rows)
    for (const LSKey& c : cols) {
      const LSKey& a = rhs_fixed ? c : r;
      const LSKey& b = rhs_fixed ? r : c;
      const LSElt p = ls.multiply(a, b);
      if (p.empty()) continue;
      if (cfg.format == "csv") {
        for (const auto& [k, q] : p)
          csv += csv_field(ls.key_to_string(a)) + "," + csv_field(ls.key_to_string(b)) + "," +
                 csv_field(ls.key_to_string(k)) + "," + to_string(q) + "\n";
      } else {
        entries.push_back({{"lhs", ls.key_to_string(a)}, {"rhs", ls.key_to_string(b)}, {"product", ls.elt_to_json(p)}});
      }
    }
  if (cfg.format == "csv") {
    emit(cfg, csv);
  } else {
    ordered_json j;
    j["base"] = base->name();
    j["n"] = cfg.n;
    j["entries"] = std::move(entries);
    emit_json(cfg, j);
  }
  return kOk;
}

int cmd_wreath_verify(const RunConfig& cfg) {
  require_json_format(cfg);
  require_n(cfg);
  if (cfg.group.empty()) throw InputError("wreath-verify needs --group");
  RingIsoOptions opt;
  opt.jobs = cfg.jobs;
  opt.limits = cfg.limits();
  const RingIsoReport rep = verify_ring_iso(parse_group_spec(cfg.group), cfg.n, opt);
  emit_json(cfg, rep.to_json(!cfg.no_timing));
  return rep.ok() ? kOk : kMath;
}

int cmd_perm_gd(const RunConfig& cfg) {
  require_json_format(cfg);
  require_n(cfg);
  const Perm sigma = parse_cycles(cfg.lhs.empty() ? "()" : cfg.lhs, cfg.n);
  const Perm tau = parse_cycles(cfg.rhs.empty() ? "()" : cfg.rhs, cfg.n);
  const OrbitPartition joint = joint_orbits(sigma, tau);
  const std::vector<unsigned> gd = graph_defect(sigma, tau);
  const Perm st = sigma * tau;
  const OrbitPartition os = orbits(sigma), ot = orbits(tau), ost = orbits(st);

  ordered_json j;
  j["sigma"] = sigma.to_string();
  j["tau"] = tau.to_string();
  j["sigma_tau"] = st.to_string();
  j["n"] = cfg.n;
  j["orbits"] = ordered_json::array();
  bool ok = true;
  for (std::size_t c = 0; c < joint.size(); ++c) {
    const auto& block = joint.block(c);
    auto count_in = [&](const OrbitPartition& p) {
      std::size_t k = 0;
      for (const auto& b : p.blocks())
        if (joint.block_of(b.front()) == c) ++k;
      return static_cast<long>(k);
    };
    const long size = static_cast<long>(block.size());
    // b1 = l_sigma + l_tau + 1 - |c| must equal 2 gd + |c/<sigma tau>| - 1
    const long b1 = (size - count_in(os)) + (size - count_in(ot)) + 1 - size;
    const long rhs = 2 * static_cast<long>(gd[c]) + count_in(ost) - 1;
    ok = ok && b1 == rhs;
    ordered_json pts = ordered_json::array();
    for (unsigned p : block) pts.push_back(p + 1);
    j["orbits"].push_back({{"points", pts}, {"gd", gd[c]}, {"betti", b1}, {"betti_check", b1 == rhs}});
  }
  j["transitive"] = joint.size() == 1;
  emit_json(cfg, j);
  return ok ? kOk : kMath;
}

int cmd_gen_center(const RunConfig& cfg) {
  require_json_format(cfg);
  if (cfg.group.empty()) throw InputError("gen-center needs --group");
  emit_json(cfg, frobenius_to_json(*center_algebra(parse_group_spec(cfg.group), cfg.limits())));
  return kOk;
}

int cmd_gen_group_algebra(const RunConfig& cfg) {
  require_json_format(cfg);
  if (cfg.group.empty()) throw InputError("gen-group-algebra needs --group");
  const GroupPtr g = parse_group_spec(cfg.group);
  cfg.limits().require(sat_mul(g->order(), g->order()), "group algebra table");
  const GroupAlgebra a(g, cfg.limits());
  emit_json(cfg, gfrob_to_json(a));
  return kOk;
}

int cmd_gen_coinvariants(const RunConfig& cfg) {
  require_json_format(cfg);
  require_n(cfg);
  if (cfg.group.empty()) throw InputError("gen-coinvariants needs --group");
  const auto w = wreath_product(parse_group_spec(cfg.group), cfg.n);
  w->require_enumerable(cfg.limits());
  const GroupAlgebra a(w, cfg.limits());
  const Coinvariants c = coinvariants(a, wreath_presentation(w), cfg.jobs, cfg.limits());
  emit_json(cfg, gfrob_to_json(*c.algebra));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbifrob: exact G-Frobenius, Lehn-Sorger and wreath product computations"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--cap", cfg.cap, "element/dimension cap")->envname("ORBIFROB_CAP")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--out", cfg.out, "write the report here instead of stdout");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  CLI::App* fa = sub("fa-check", "check the Frobenius axioms of a JSON instance");
  fa->add_option("--input", cfg.input)->required();
  CLI::App* gfa = sub("gfa-check", "check the G-Frobenius axioms of a JSON instance");
  gfa->add_option("--input", cfg.input)->required();
  CLI::App* ls = sub("ls", "Lehn-Sorger product, or a product table over a sector/degree slice");
  ls->add_option("--input", cfg.input, "base Frobenius algebra JSON");
  ls->add_option("--group", cfg.group, "use Z Q[G] as the base");
  ls->add_option("--n", cfg.n)->required();
  ls->add_option("--lhs", cfg.lhs, "key 'l1,l2@(cycles)', term JSON, or a JSON file");
  ls->add_option("--rhs", cfg.rhs);
  ls->add_option("--sector", cfg.sector, "restrict table rows to this permutation");
  ls->add_option("--degree", cfg.degree, "restrict table rows to this degree");
  CLI::App* wv = sub("wreath-verify", "compare Z Q[G]{S_n} with the coinvariants of Q[G wr S_n]");
  wv->add_option("--group", cfg.group)->required();
  wv->add_option("--n", cfg.n)->required();
  wv->add_flag("--no-timing", cfg.no_timing, "omit elapsed_ms");
  CLI::App* gd = sub("perm-gd", "joint orbits and graph defect of a pair");
  gd->add_option("--sigma,--lhs", cfg.lhs, "cycle text")->required();
  gd->add_option("--tau,--rhs", cfg.rhs, "cycle text")->required();
  gd->add_option("--n", cfg.n)->required();
  CLI::App* gc = sub("gen-center", "write Z Q[G] as a Frobenius instance");
  gc->add_option("--group", cfg.group)->required();
  CLI::App* gg = sub("gen-group-algebra", "write Q[G] as a G-Frobenius instance");
  gg->add_option("--group", cfg.group)->required();
  CLI::App* gk = sub("gen-coinvariants", "write the coinvariants of Q[G wr S_n] as an S_n-Frobenius instance");
  gk->add_option("--group", cfg.group)->required();
  gk->add_option("--n", cfg.n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*fa) return cmd_fa_check(cfg);
    if (*gfa) return cmd_gfa_check(cfg);
    if (*ls) return cmd_ls(cfg);
    if (*wv) return cmd_wreath_verify(cfg);
    if (*gd) return cmd_perm_gd(cfg);
    if (*gc) return cmd_gen_center(cfg);
    if (*gg) return cmd_gen_group_algebra(cfg);
    if (*gk) return cmd_gen_coinvariants(cfg);
  } catch (const SizeLimit& e) {
    std::cerr << "orbifrob: size limit: " << e.what() << "\n";
    return kCap;
  } catch (const InternalInvariantViolation& e) {
    std::cerr << "orbifrob: invariant violated: " << e.what() << "\n";
    return kMath;
  } catch (const Error& e) {
    std::cerr << "orbifrob: " << e.what() << "\n";
    return kInput;
  } catch (const std::bad_alloc&) {
    std::cerr << "orbifrob: out of memory\n";
    return kCap;
  }
  return kInput;
}
