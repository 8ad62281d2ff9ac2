#include "waldkit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "waldkit/additivity.hpp"
#include "waldkit/qcat.hpp"

namespace waldkit {

json SuiteConfig::to_json() const {
  return {{"instance", instance}, {"size", size},       {"n_max", n_max},
          {"m_max", m_max},       {"k_max", k_max},     {"trunc", trunc},
          {"formulation", formulation}, {"grid_budget", grid_budget}, {"map_budget", map_budget}};
}

SuiteConfig config_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  SuiteConfig c;
  for (const auto& [k, v] : j.items()) {
    auto need_int = [&](auto& field) {
      if (!v.is_number_integer()) throw ConfigError(where + ": key '" + k + "': expected an integer");
      if (v.template get<long long>() < 0) throw ConfigError(where + ": key '" + k + "': must be non-negative");
      field = v.template get<std::remove_reference_t<decltype(field)>>();
    };
    auto need_str = [&](std::string& field) {
      if (!v.is_string()) throw ConfigError(where + ": key '" + k + "': expected a string");
      field = v.get<std::string>();
    };
    if (k == "instance") need_str(c.instance);
    else if (k == "size") need_int(c.size);
    else if (k == "n_max") need_int(c.n_max);
    else if (k == "m_max") need_int(c.m_max);
    else if (k == "k_max") need_int(c.k_max);
    else if (k == "trunc") need_int(c.trunc);
    else if (k == "formulation") need_str(c.formulation);
    else if (k == "grid_budget") need_int(c.grid_budget);
    else if (k == "map_budget") need_int(c.map_budget);
    else if (k == "out") need_str(c.out);
    else throw ConfigError(where + ": unknown key '" + k + "'");
  }
  return c;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(j, path);
}

void validate_config(const SuiteConfig& c) {
  if (c.instance != "pointed_sets" && c.instance != "vect_f2")
    throw ConfigError("instance: expected pointed_sets or vect_f2, got '" + c.instance + "'");
  if (c.size < 1) throw ConfigError("size: must be positive");
  if (c.n_max < 1) throw ConfigError("n_max: must be positive");
  if (c.k_max < 1) throw ConfigError("k_max: must be positive");
  if (c.trunc < c.n_max + 1) throw ConfigError("trunc: must be at least n_max + 1");
  if (c.formulation != "modern" && c.formulation != "classical" && c.formulation != "both")
    throw ConfigError("formulation: expected modern, classical or both");
  if (c.grid_budget == 0 || c.map_budget == 0) throw ConfigError("budgets must be positive");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "sdot", "additivity", "qcat-compare", "k0"};
  return names;
}

namespace {

struct Section {
  Report report;
  json detail = json::object();
};

int count_evidence(const Report& r) {
  int n = 0;
  for (const auto& c : r.clauses) n += c.evidence;
  return n;
}

void axioms_suite(const SuiteConfig& cfg, const Waldhausen& w, Section& s) {
  s.report.merge(check_category_laws(w.c()), "category.");
  s.report.merge(verify_axioms(w), "axioms.");
  s.detail["objects"] = w.c().objects();
  s.detail["morphisms"] = w.c().morphisms();

  std::vector<char> all(w.c().objects(), 1);
  auto seq = build_universal_sequence(w, all, all);
  s.report.merge(verify_split_exact(seq), "split_exact.");
  auto phi = phi_comparison(seq, cfg.map_budget);
  s.report.merge(phi.report, "phi.");
  s.detail["E_objects"] = seq.e.c().objects();

  auto gate_of = [](const PhiResult& r) { return r.report.first_failure() ? r.report.first_failure()->name : ""; };
  auto mutant = [&](const char* name, const char* gate, auto build) {
    std::optional<SplitExact> m;
    try {
      m = build();
    } catch (const std::invalid_argument& e) {
      s.report.add(name, false, std::string("not applicable: ") + e.what(), true);
      return;
    }
    auto got = gate_of(phi_comparison(*m, cfg.map_budget));
    s.report.add(name, got == gate, got);
  };
  mutant("mutant.gate1_fails_at_gate1", "gate1_counit_cofibrations", [&] { return gate1_mutant(seq); });
  mutant("mutant.gate2_fails_at_gate2", "gate2_induced_cofibrations", [&] { return gate2_mutant(seq); });
  mutant("mutant.gate3_fails_at_gate3", "gate3_trivial_quotient_iso", [] { return degenerate_split(instance_m()); });
}

void sdot_suite(const SuiteConfig& cfg, const Waldhausen& w, Section& s) {
  json grids = json::array();
  for (int n = 0; n <= cfg.n_max; ++n) {
    auto sn = s_n_category(w, n, cfg.grid_budget);
    std::string p = "S" + std::to_string(n) + ".";
    grids.push_back(sn.grids.size());
    s.report.merge(check_category_laws(sn.w.c()), p + "category.");
    s.report.merge(verify_axioms(sn.w), p + "axioms.");
    s.report.merge(check_sn_s2_swap(w, n), p + "s2_swap.");
  }
  s.detail["grids"] = grids;
  auto obj = object_simplicial_set(w, cfg.trunc, cfg.grid_budget);
  s.report.merge(validate_simplicial_identities(obj), "object_sset.");
  s.detail["object_sset_levels"] = obj.level_sizes();
  auto wn = diagonal_nerve_w(w, cfg.n_max, cfg.grid_budget);
  s.report.merge(validate_bisimplicial(wn.bi), "wS_nerve.");
  s.report.merge(validate_simplicial_identities(wn.diag), "wS_diagonal.");
  auto h = homology(wn.diag, 0);
  s.detail["wS_diagonal_levels"] = wn.diag.level_sizes();
  s.report.add("wS_diagonal.connected", h.valid_upto >= 0 && h.groups[0] == AbelianGroup{1, {}},
               h.valid_upto >= 0 ? "H0 = " + h.groups[0].str() : "", true);
}

std::vector<char> keep_of(const Waldhausen& ambient, const Waldhausen& small) {
  std::vector<char> keep(ambient.c().objects(), 0);
  for (int x = 0; x < ambient.c().objects(); ++x)
    for (const auto& n : small.c().obj_name) keep[x] = keep[x] || ambient.c().obj_name[x] == n;
  return keep;
}

void additivity_section(const SuiteConfig& cfg, const Waldhausen& w, Section& s) {
  AdditivityBounds b;
  b.m_max = cfg.m_max;
  b.n_max = cfg.n_max;
  b.modern = cfg.formulation != "classical";
  b.classical = cfg.formulation != "modern";
  // The homotopy needs pushouts one size up, so the run sits inside the next
  // instance with A = B = the configured objects.
  auto ambient = make_instance(cfg.instance, cfg.size + 1);
  auto keep = keep_of(ambient, w);
  auto r = additivity_suite(ambient, keep, keep, b);
  s.report.merge(r.report, "");
  for (const auto& [k, v] : r.detail.items()) s.detail[k] = v;
  s.detail["ambient"] = ambient.name;

  AdditivityBounds lb = b;
  lb.n_max = std::min(b.n_max, 1);
  std::vector<char> all(w.c().objects(), 1);
  auto lit = additivity_suite(w, all, all, lb);
  const Clause* f = lit.report.first_failure();
  s.report.add("unextended_instance", f == nullptr, f ? f->name + ": " + f->witness : "", true);
}

void qcat_suite(const SuiteConfig& cfg, const Waldhausen& w, Section& s) {
  json corpus = json::array();
  for (const auto& c : category_corpus()) {
    std::string p = "corpus." + c.name + ".";
    s.report.merge(check_tau1_nerve(c, cfg.trunc), p + "tau1.");
    s.report.merge(check_nerve_equiv(c, cfg.trunc), p + "equiv.");
    auto hr = is_quasicategory(nerve(c, cfg.trunc), cfg.trunc);
    s.report.merge(hr.report, p + "horns.");
    corpus.push_back({{"name", c.name}, {"horns", hr.horns}, {"unique", hr.unique}});
  }
  s.detail["corpus"] = corpus;

  const Category& c = w.c();
  int spans = 0, exact = 0;
  std::string wit;
  for (int g = 0; g < c.morphisms(); ++g) {
    if (!w.cof[g]) continue;
    for (int f : c.out[c.src[g]]) {
      ++spans;
      auto ps = quasicat_pushout(c, f, g, cfg.trunc);
      if (ps.exact) ++exact;
      else if (wit.empty()) wit = c.mor_name[f] + " <- " + c.obj_name[c.src[g]] + " -> " + c.mor_name[g];
    }
  }
  s.report.add("pushouts.match_categorical", exact == spans, wit);
  s.detail["pushout_spans"] = spans;
  int eq_spans = 0;
  s.report.merge(check_pushout_of_equivalences(c, cfg.trunc, &eq_spans), "pushouts.");
  s.detail["equivalence_spans"] = eq_spans;
  s.report.merge(check_cofibration_nerve(w, cfg.trunc), "cofibrations.");
  for (int n = 0; n <= cfg.n_max; ++n)
    s.report.merge(compare_equiv_constructions(w, n, cfg.k_max, cfg.m_max), "S" + std::to_string(n) + ".");
}

void k0_suite(const SuiteConfig&, const Waldhausen& w, Section& s) {
  int no = w.c().objects();
  std::vector<char> all(no, 1), zero(no, 0);
  zero[w.zero] = 1;
  s.detail["K0"] = k0(w).group.str();
  s.report.merge(k0_additivity(w, all, all), "C_C_C.");
  s.report.merge(k0_additivity(w, zero, all), "0_C_C.");
  s.detail["K0_E"] = k0(e_category(w, all, all, "E").w).group.str();
}

void run_one(const std::string& name, const SuiteConfig& cfg, const Waldhausen& w, Section& s) {
  if (name == "axioms") axioms_suite(cfg, w, s);
  else if (name == "sdot") sdot_suite(cfg, w, s);
  else if (name == "additivity") additivity_section(cfg, w, s);
  else if (name == "qcat-compare") qcat_suite(cfg, w, s);
  else if (name == "k0") k0_suite(cfg, w, s);
  else throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& config, const std::string& suite) {
  validate_config(config);
  std::vector<std::string> names;
  if (suite == "all") names = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) names = {suite};
  else throw ConfigError("unknown suite '" + suite + "'");

  auto w = make_instance(config.instance, config.size);
  SuiteResult out;
  json& r = out.report;
  r["schema"] = kReportSchema;
  r["versions"] = {{"waldkit", kVersion}, {"simpset", 1}, {"catkit", 1}, {"waldcat", 1},
                   {"sdot", 1},           {"additivity", 1}, {"qcat", 1}, {"cli", 1}};
  r["config"] = config.to_json();
  r["suite"] = suite;
  r["instance"] = w.name;
  r["sections"] = json::object();
  bool failed = false, overflow = false;
  for (const auto& n : names) {
    json sec;
    Section s;
    try {
      run_one(n, config, w, s);
    } catch (const BudgetExceeded& e) {
      sec["budget_exceeded"] = e.what();
      overflow = true;
    }
    sec["ok"] = s.report.ok() && !sec.contains("budget_exceeded");
    sec["clauses"] = s.report.to_json();
    sec["evidence_clauses"] = count_evidence(s.report);
    sec["detail"] = s.detail;
    failed = failed || !s.report.ok();
    r["sections"][n] = sec;
  }
  out.exit_code = overflow ? 3 : failed ? 1 : 0;
  r["status"] = overflow ? "budget_exceeded" : failed ? "fail" : "pass";
  r["exit_code"] = out.exit_code;
  return out;
}

std::string summarize(const json& report) {
  std::ostringstream os;
  os << "waldkit " << report["versions"]["waldkit"].get<std::string>() << "  suite " << report["suite"].get<std::string>()
     << "  instance " << report["instance"].get<std::string>() << "\n";
  for (const auto& [name, sec] : report["sections"].items()) {
    bool budget = sec.contains("budget_exceeded");
    int hard = 0, bad = 0;
    for (const auto& [cn, c] : sec["clauses"].items()) {
      if (c.contains("evidence")) continue;
      ++hard;
      bad += !c["pass"].get<bool>();
    }
    os << "  " << name << ": " << (budget ? "BUDGET" : sec["ok"].get<bool>() ? "PASS" : "FAIL") << "  " << hard - bad
       << "/" << hard << " checks, " << sec["evidence_clauses"].get<int>() << " evidence\n";
    if (budget) os << "    [partial]  " << sec["budget_exceeded"].get<std::string>() << "\n";
    for (const auto& [cn, c] : sec["clauses"].items()) {
      bool ev = c.contains("evidence");
      if (c["pass"].get<bool>()) continue;
      os << "    " << (ev ? "[evidence] " : "[failed]   ") << cn;
      if (c.contains("witness")) os << ": " << c["witness"].get<std::string>();
      os << "\n";
    }
  }
  os << "status: " << report["status"].get<std::string>() << "\n";
  return os.str();
}

}  // namespace waldkit
