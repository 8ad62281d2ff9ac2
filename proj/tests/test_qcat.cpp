#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "waldkit/qcat.hpp"

using namespace waldkit;

namespace {

int mor(const Category& c, const std::string& name) {
  return static_cast<int>(std::find(c.mor_name.begin(), c.mor_name.end(), name) - c.mor_name.begin());
}

// eta: F => G as a map N C x Delta[1] -> N C.
SMap homotopy_of(const Category& c, const SSet& x, const Functor& f, const Functor& g, const std::vector<int>& eta) {
  SSet p = product(x, standard_simplex(1, x.trunc));
  SSet d1 = standard_simplex(1, x.trunc);
  SMap m;
  m.at.resize(x.trunc + 1);
  for (int n = 0; n <= x.trunc; ++n)
    for (const auto& k : p.keys[n]) {
      const Key& s = x.keys[n][k[0]];
      const Key& b = d1.keys[n][k[1]];
      if (n == 0) {
        m.at[0].push_back(x.find(0, {b[0] ? g.obj[s[0]] : f.obj[s[0]]}));
        continue;
      }
      Key img;
      for (int t = 0; t < n; ++t) {
        if (b[t] == 0 && b[t + 1] == 0) img.push_back(f.mor[s[t]]);
        else if (b[t] == 1) img.push_back(g.mor[s[t]]);
        else img.push_back(c.c(g.mor[s[t]], eta[c.src[s[t]]]));
      }
      m.at[n].push_back(x.find(n, img));
    }
  return m;
}

Functor swap_conjugation(const Category& c) {
  int sw = mor(c, "3->3[*,2,1]");
  auto sigma = [&](int o) { return o == 2 ? sw : c.ident[o]; };
  Functor f = identity_functor(c);
  for (int m = 0; m < c.morphisms(); ++m) f.mor[m] = c.c(c.c(sigma(c.tgt[m]), m), sigma(c.src[m]));
  return f;
}

}  // namespace

TEST_CASE("nerves of the corpus are quasicategories with unique fillers") {
  for (const auto& c : category_corpus()) {
    CAPTURE(c.name);
    auto hr = is_quasicategory(nerve(c, 3), 3);
    CHECK(hr.report.ok());
    CHECK(hr.horns > 0);
    CHECK(hr.unique == hr.horns);
  }
  auto hr4 = is_quasicategory(nerve(ordinal(2), 4), 4);
  CHECK(hr4.report.ok());
  CHECK(hr4.unique == hr4.horns);
}

TEST_CASE("horn filling on small complexes") {
  auto b = is_quasicategory(boundary_simplex(2, 2), 2);
  CHECK_FALSE(b.report.ok());
  CHECK(b.report.first_failure()->witness == "Lambda^1[2] on edges <0,1> <1,2>");
  CHECK(is_quasicategory(interval_groupoid(1, 3), 3).report.ok());
  CHECK(is_quasicategory(standard_simplex(2, 3), 3).report.ok());
  // The horn itself misses its own filler.
  CHECK_FALSE(is_quasicategory(horn(2, 1, 2), 2).report.ok());
  CHECK_THROWS_AS(is_quasicategory(boundary_simplex(2, 2), 3), std::invalid_argument);
  auto d2 = standard_simplex(2, 4);
  d2.cosk.reset();
  CHECK_THROWS_AS(is_quasicategory(d2, 4), std::invalid_argument);
}

TEST_CASE("tau1 of nerves and equivalence subcomplexes") {
  for (const auto& c : category_corpus()) {
    CAPTURE(c.name);
    CHECK(check_tau1_nerve(c, 3).ok());
    CHECK(check_nerve_equiv(c, 3).ok());
  }
}

TEST_CASE("groupoid nerves are their own equivalence subcomplex") {
  for (auto x : {interval_groupoid(2, 3), nerve(contractible_groupoid(1), 3)}) {
    auto p = make_probe(x);
    for (auto m : {EquivMethod::tau1_full, EquivMethod::j_hom}) CHECK(equivalence_subcomplex(p, m).level_sizes() == x.level_sizes());
  }
  // Only identities are invertible in [2].
  auto p = make_probe(nerve(ordinal(2), 3));
  CHECK(equivalence_subcomplex(p, EquivMethod::tau1_full).level_sizes() == std::vector<int>{3, 3, 3, 3});
  auto d = make_probe(standard_simplex(2, 3));
  d.x.cosk.reset();
  CHECK_THROWS_AS(equivalence_subcomplex(d, EquivMethod::j_hom), std::invalid_argument);
}

TEST_CASE("natural equivalences") {
  auto w = instance_pointed_sets(3);
  const Category& c = w.c();
  SSet x = nerve(c, 2);
  auto y = make_probe(x);
  auto id = identity_functor(c);
  std::vector<int> ids(c.ident.begin(), c.ident.end());
  CHECK(natural_equivalence_check(x, y, homotopy_of(c, x, id, id, ids)).ok());

  auto sw = swap_conjugation(c);
  std::vector<int> eta = ids;
  eta[2] = mor(c, "3->3[*,2,1]");
  auto r = natural_equivalence_check(x, y, homotopy_of(c, x, id, sw, eta));
  CHECK(r.ok());
  CHECK(r.find("extends_to_J1")->pass);

  Functor zero;
  for (int o = 0; o < c.objects(); ++o) zero.obj.push_back(w.zero);
  for (int m = 0; m < c.morphisms(); ++m) zero.mor.push_back(c.ident[w.zero]);
  std::vector<int> to_zero;
  for (int o = 0; o < c.objects(); ++o) to_zero.push_back(w.to_zero(o));
  auto bad = natural_equivalence_check(x, y, homotopy_of(c, x, id, zero, to_zero));
  CHECK_FALSE(bad.ok());
  CHECK(bad.first_failure()->witness.rfind("{*,1}", 0) == 0);
  CHECK_FALSE(bad.find("extends_to_J1")->pass);
  CHECK(bad.find("criteria_agree")->pass);
}

TEST_CASE("slices under spans and mapping spaces") {
  auto c = instance_pointed_sets(3).c();
  int f = mor(c, "2->1[*,*]"), g = mor(c, "2->3[*,1]");
  SSet s = slice_under_span(c, f, g, 3);
  CHECK(validate_simplicial_identities(s).ok());
  CHECK(is_quasicategory(s, 3).report.ok());
  // Cocones: maps {*,1,2} -> P killing 1.
  int cocones = 0;
  for (int p = 0; p < c.objects(); ++p)
    for (int h : c.hom(2, p)) cocones += c.c(h, g) == c.c(c.hom(0, p).front(), f);
  CHECK(s.size(0) == cocones);

  SSet x = nerve(c, 3);
  for (int a = 0; a < c.objects(); ++a)
    for (int b = 0; b < c.objects(); ++b) {
      SSet m = mapping_space(x, a, b);
      CHECK(m.size(0) == static_cast<int>(c.hom(a, b).size()));
      CHECK(validate_simplicial_identities(m).ok());
      // Hom spaces of a nerve are discrete.
      CHECK(m.size(1) == m.size(0));
    }
}

TEST_CASE("pushouts in the nerve") {
  auto c = instance_pointed_sets(3).c();
  int f = mor(c, "2->1[*,*]"), g = mor(c, "2->3[*,1]");
  auto ps = quasicat_pushout(c, f, g);
  CHECK(ps.report.ok());
  CHECK(ps.exact);
  // The quotient {*,2} has no automorphisms, so the pushout is unique.
  REQUIRE(ps.initial.size() == 1);
  for (const auto& p : ps.initial) CHECK(is_pushout(c, f, g, p));

  // {*,1} <- {*} -> {*,1} needs three points.
  auto c2 = instance_pointed_sets(2).c();
  int z = c2.hom(0, 1).front();
  auto none = quasicat_pushout(c2, z, z);
  CHECK_FALSE(none.report.ok());
  CHECK(none.report.first_failure()->witness == "no candidate within truncation");
  CHECK(none.exact);

  int spans = 0;
  CHECK(check_pushout_of_equivalences(c, 3, &spans).ok());
  CHECK(spans >= 10);
}

TEST_CASE("cofibrations in the nerve") {
  for (auto w : {instance_pointed_sets(3), instance_vect_f2(2)}) CHECK(check_cofibration_nerve(w, 3).ok());
  auto w = instance_pointed_sets(3);
  w.cof[mor(w.c(), "3->3[*,2,1]")] = 0;
  auto r = check_cofibration_nerve(w, 3);
  CHECK_FALSE(r.find("contains_equivalences")->pass);
}

TEST_CASE("gap levels") {
  auto w = instance_pointed_sets(3);
  auto g0 = gap_sn_nerve(w, 0, 2);
  CHECK(g0.set.level_sizes() == std::vector<int>{1, 1, 1});
  for (int n = 1; n <= 2; ++n) {
    auto g = gap_sn_nerve(w, n, 1);
    CHECK(g.set.size(0) == static_cast<int>(enumerate_grids(w, n).size()));
    CHECK(validate_simplicial_identities(g.set).ok());
    for (int v = 0; v < g.set.size(0); ++v) CHECK(certify_grid(w, gap_vertex_grid(g, v)).ok());
  }
}

TEST_CASE("nerve comparisons for the S-construction") {
  auto w = instance_pointed_sets(2);
  for (int n = 0; n <= 2; ++n) {
    auto r = compare_equiv_constructions(w, n);
    CAPTURE(n);
    CHECK(r.ok());
  }
  auto p3 = instance_pointed_sets(3);
  CHECK(compare_equiv_constructions(p3, 1).ok());
  CHECK(compare_equiv_constructions(instance_vect_f2(1), 2).ok());
}

TEST_CASE("dropping an isomorphism from the weak equivalences") {
  auto w = instance_pointed_sets(3);
  w.weq[mor(w.c(), "3->3[*,2,1]")] = 0;
  auto r = compare_equiv_constructions(w, 1);
  CHECK_FALSE(r.find("weq_are_isomorphisms")->pass);
  CHECK_FALSE(r.ok());
  REQUIRE(r.first_failure());
  CHECK(r.first_failure()->name == "nerve_wsn_is_gap_equiv");
  CHECK(r.first_failure()->witness.rfind("level 1", 0) == 0);
}
