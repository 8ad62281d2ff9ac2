// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "waldkit/additivity.hpp"
#include "waldkit/qcat.hpp"

using namespace waldkit;

namespace {

constexpr double kIdentitySuiteSeconds = 300.0;
constexpr int kMinEquivalenceSpans = 10;
constexpr int kNerveDepth = 3;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int mor(const Category& c, const std::string& name) {
  return static_cast<int>(std::find(c.mor_name.begin(), c.mor_name.end(), name) - c.mor_name.begin());
}

std::shared_ptr<const AdditivitySetup> setup(const Waldhausen& c, std::vector<char> keep, int trunc) {
  return std::make_shared<const AdditivitySetup>(additivity_setup(c, keep, keep, trunc));
}

std::string name_of(const Report& r) {
  auto f = r.first_failure();
  return f ? f->name + (f->witness.empty() ? "" : ": " + f->witness) : "";
}

Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  // Pointed sets <= 2 inside pointed sets <= 3.
  auto c = instance_pointed_sets(3);
  auto s = setup(c, {1, 1, 0}, 4);
  long checked = 0, failed = 0;
  // d_0 h^j by class of j: 0, 1, 2..n, n+1.
  long d0[4] = {0, 0, 0, 0}, d0_bad = 0;
  std::vector<std::string> ids;
  bool names_ok = true;
  for (int m = 0; m <= 1; ++m)
    for (int y = 0; y < s->sa.size(m); ++y) {
      FiberHomotopy h(s, m, y);
      for (auto form : {Formulation::modern, Formulation::classical}) {
        auto cert = verify_homotopy_identities(h, form, 2);
        checked += cert.checked;
        failed += cert.failed + !cert.report.ok();
        if (m == 1 && y == 1)
          for (const auto& cl : cert.report.clauses) ids.push_back(cl.name);
      }
      const SSet& x = h.fiber().set;
      for (int n = 1; n <= 2; ++n)
        for (int e = 0; e < x.size(n); ++e)
          for (int j = 0; j <= n + 1; ++j) {
            int hj = h.modern(n, j, e);
            int lhs = hj < 0 ? -1 : x.d(n, hj, 0);
            int rhs = h.modern(n - 1, j == 0 ? 0 : j - 1, x.d(n, e, 0));
            ++d0[j == 0 ? 0 : j == 1 ? 1 : j <= n ? 2 : 3];
            d0_bad += lhs != rhs || lhs < 0;
          }
    }
  for (auto id : {"d_i h^j = h^{j-1} d_i (i<j)", "d_i h^j = h^j d_i (i>=j)", "s_i h^j = h^{j+1} s_i (i<j)",
                  "s_i h^j = h^j s_i (i>=j)", "d_0 h_0 = iota r", "d_{n+1} h_n = Id", "d_i h_j = h_{j-1} d_i (i<j)",
                  "d_j h_j = d_j h_{j-1} (j>0)", "d_i h_j = h_j d_{i-1} (i>j+1)", "s_i h_j = h_{j+1} s_i (i<=j)",
                  "s_i h_j = h_j s_{i-1} (i>j)"})
    names_ok = names_ok && std::find(ids.begin(), ids.end(), id) != ids.end();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome o;
  o.pass = failed == 0 && checked > 0 && names_ok && d0_bad == 0 && std::all_of(d0, d0 + 4, [](long v) { return v > 0; }) &&
           secs < kIdentitySuiteSeconds;
  std::ostringstream os;
  os << checked << " identity instances, " << failed << " failures, d_0 classes " << d0[0] << "/" << d0[1] << "/" << d0[2]
     << "/" << d0[3] << " with " << d0_bad << " failures, " << (names_ok ? "all identities named" : "identity missing")
     << ", " << static_cast<int>(secs + 0.5) << " s";
  o.detail = os.str();
  return o;
}

Outcome criterion2() {
  Outcome o;
  int fibers = 0;
  for (auto [c, keep] : {std::pair{instance_pointed_sets(3), std::vector<char>{1, 1, 0}},
                         std::pair{instance_vect_f2(2), std::vector<char>{1, 1, 0}}}) {
    auto s = setup(c, keep, 3);
    for (int m = 0; m <= 1; ++m)
      for (int y = 0; y < s->sa.size(m); ++y) {
        FiberHomotopy h(s, m, y);
        auto r = verify_retraction(h);
        ++fibers;
        for (auto cl : {"r_iota_identity", "cut_0_is_iota_r", "full_cut_is_identity"})
          if (!r.find(cl)) o.pass = false, o.detail = std::string("missing ") + cl;
        if (!r.ok() && o.pass) o.pass = false, o.detail = c.name + " m=" + std::to_string(m) + ": " + name_of(r);
      }
  }
  if (o.pass) o.detail = std::to_string(fibers) + " fibers, r iota = Id, h^0 = iota r, h^{n+1} = Id";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::ostringstream os;
  for (auto c : {instance_pointed_sets(3), instance_vect_f2(2)}) {
    int no = c.c().objects();
    std::vector<char> all(no, 1), zero(no, 0);
    zero[c.zero] = 1;
    for (const auto* keep : {&all, &zero}) {
      auto r = k0_additivity(c, *keep, all);
      if (!r.ok() && o.pass) o.pass = false, o.detail = c.name + ": " + name_of(r);
    }
    auto e = k0(e_category(c, all, all, "E").w).group;
    auto sum = direct_sum(k0(c).group, k0(c).group);
    os << c.name << " K0(E) = " << e.str() << " vs " << sum.str() << "; ";
    o.pass = o.pass && e == sum && e == AbelianGroup{2, {}};
  }
  if (o.pass) o.detail = os.str() + "both splittings";
  return o;
}

Outcome criterion4() {
  Outcome o;
  int n = 0;
  for (const auto& c : category_corpus()) {
    ++n;
    auto r = check_tau1_nerve(c, kNerveDepth);
    if (!r.ok() && o.pass) o.pass = false, o.detail = c.name + ": " + name_of(r);
  }
  if (o.pass) o.detail = std::to_string(n) + " corpus categories";
  return o;
}

Outcome criterion5() {
  Outcome o;
  int n = 0;
  for (const auto& c : category_corpus()) {
    ++n;
    auto r = check_nerve_equiv(c, kNerveDepth);
    if (!r.ok() && o.pass) o.pass = false, o.detail = c.name + ": " + name_of(r);
  }
  if (o.pass) o.detail = std::to_string(n) + " corpus categories through dimension " + std::to_string(kNerveDepth);
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto w = instance_pointed_sets(2);
  for (int n = 0; n <= 2; ++n) {
    auto r = compare_equiv_constructions(w, n, 2, 2);
    for (auto cl : {"nerve_sn_is_gap", "commutes_with_operators", "nerve_wsn_is_gap_equiv", "cotensor_identity"})
      if (!r.find(cl) && o.pass) o.pass = false, o.detail = std::string("missing ") + cl;
    if (!r.ok() && o.pass) o.pass = false, o.detail = "n=" + std::to_string(n) + ": " + name_of(r);
  }
  if (o.pass) o.detail = "n <= 2 with operators, J[m] cotensor for m <= 2";
  return o;
}

Outcome criterion7() {
  Outcome o;
  int spans = 0;
  for (auto w : {instance_pointed_sets(2), instance_pointed_sets(3)}) {
    const Category& c = w.c();
    for (int g = 0; g < c.morphisms(); ++g) {
      if (!w.cof[g]) continue;
      for (int f : c.out[c.src[g]]) {
        ++spans;
        auto ps = quasicat_pushout(c, f, g);
        if (!ps.exact && o.pass) o.pass = false, o.detail = c.mor_name[f] + " <- . -> " + c.mor_name[g];
      }
    }
  }
  int eq = 0;
  auto r = check_pushout_of_equivalences(instance_pointed_sets(3).c(), kNerveDepth, &eq);
  if (!r.ok() && o.pass) o.pass = false, o.detail = name_of(r);
  if (eq < kMinEquivalenceSpans && o.pass) o.pass = false, o.detail = "only " + std::to_string(eq) + " equivalence spans";
  if (o.pass)
    o.detail = std::to_string(spans) + " spans match categorical pushouts, " + std::to_string(eq) + " equivalence spans";
  return o;
}

Outcome criterion8() {
  Outcome o;
  auto c = instance_pointed_sets(3);
  std::vector<char> all(3, 1);
  auto s = build_universal_sequence(c, all, all);
  auto phi = phi_comparison(s);
  bool gates = true;
  for (auto g : {"gate1_counit_cofibrations", "gate2_induced_cofibrations", "gate3_trivial_quotient_iso"})
    gates = gates && phi.report.find(g) && phi.report.find(g)->pass;
  if (!phi.report.ok() || !phi.phi || !gates) return {false, "phi: " + name_of(phi.report)};
  if (!phi.report.find("waldhausen_equivalence.reflects_cof")) return {false, "no equivalence certificate"};

  auto gate = [](const PhiResult& r) { return r.report.first_failure() ? r.report.first_failure()->name : ""; };
  std::string g1 = gate(phi_comparison(gate1_mutant(s)));
  std::string g2 = gate(phi_comparison(gate2_mutant(s)));
  std::string g3 = gate(phi_comparison(degenerate_split(instance_m())));
  o.pass = g1 == "gate1_counit_cofibrations" && g2 == "gate2_induced_cofibrations" && g3 == "gate3_trivial_quotient_iso";
  o.detail = "phi certified; mutants fail at " + g1 + ", " + g2 + ", " + g3;
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::vector<std::string> got;
  if (!is_quasicategory(boundary_simplex(2, 2), 2).report.ok()) got.push_back("boundary of Delta[2] not a quasicategory");

  SSet x = product(standard_simplex(1, 3), standard_simplex(1, 3));
  x.faces[2][3][1] = x.faces[2][3][0] == 0 ? 1 : 0;
  SSet y = standard_simplex(2, 3);
  int edge = y.find(1, {0, 1});
  y.degens[1][edge][1] = y.degens[1][edge][0];
  if (!validate_simplicial_identities(x).ok() && !validate_simplicial_identities(y).ok())
    got.push_back("corrupted face and degeneracy tables rejected");

  auto c = instance_pointed_sets(3);
  auto s = setup(c, {1, 1, 0}, 4);
  int sw = mor(c.c(), "3->3[*,2,1]");
  const Waldhausen& w = *s->c;
  PushoutPicker pick = [&w, sw](int f, int g, int row, int) -> std::optional<Cocone> {
    auto p = w.chooser(f, g);
    if (p && p->obj == 2 && row % 2 == 1) {
      p->leg_b = w.c().c(sw, p->leg_b);
      p->leg_c = w.c().c(sw, p->leg_c);
    }
    return p;
  };
  FiberHomotopy h(s, 1, 1, pick);
  auto cert = verify_homotopy_identities(h, Formulation::modern, 2);
  if (cert.failed > 0) got.push_back("position-dependent chooser breaks " + std::to_string(cert.failed) + " identities");

  o.pass = got.size() == 3;
  for (const auto& g : got) o.detail += (o.detail.empty() ? "" : "; ") + g;
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10() {
  auto dir = std::filesystem::temp_directory_path() / "waldkit_acceptance";
  std::filesystem::create_directories(dir);
  std::string out[2];
  for (int t = 0; t < 2; ++t) {
    auto p = dir / ("all" + std::to_string(t) + ".json");
    std::filesystem::remove(p);
    std::string cmd = std::string(WALDKIT_CLI) + " run all --out " + p.string() + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) return {false, "run all exited with " + std::to_string(WEXITSTATUS(rc))};
    out[t] = slurp(p);
  }
  if (out[0].empty()) return {false, "empty report"};
  return {out[0] == out[1], std::to_string(out[0].size()) + " bytes, " + (out[0] == out[1] ? "identical" : "different")};
}

}  // namespace

int main() {
  Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                             criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return failed ? 1 : 0;
}
