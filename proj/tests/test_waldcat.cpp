#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waldkit/waldcat.hpp"

using namespace waldkit;

namespace {

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Injective based maps {*,..k-1} -> {*,..,l-1}: falling factorial (l-1)_(k-1).
long injective_based(int k, int l) {
  long r = 1;
  for (int i = 0; i < k - 1; ++i) r *= (l - 1 - i);
  return r < 0 ? 0 : r;
}

// Injective linear maps F2^d -> F2^e.
long injective_f2(int d, int e) {
  long r = 1;
  for (int i = 0; i < d; ++i) r *= ipow(2, e) - ipow(2, i);
  return r < 0 ? 0 : r;
}

int count(const std::vector<int>& homs, const std::vector<char>& pred) {
  int n = 0;
  for (int f : homs) n += pred[f];
  return n;
}

int mor(const Waldhausen& w, const std::string& name) {
  const auto& n = w.c().mor_name;
  return static_cast<int>(std::find(n.begin(), n.end(), name) - n.begin());
}

}  // namespace

TEST_CASE("pointed sets hom and cofibration counts") {
  for (int n = 1; n <= 3; ++n) {
    auto w = instance_pointed_sets(n);
    CHECK(w.c().objects() == n);
    CHECK(check_category_laws(w.c()).ok());
    for (int k = 1; k <= n; ++k)
      for (int l = 1; l <= n; ++l) {
        CHECK(static_cast<long>(w.c().hom(k - 1, l - 1).size()) == ipow(l, k - 1));
        CHECK(count(w.c().hom(k - 1, l - 1), w.cof) == injective_based(k, l));
      }
  }
  // Two identities, the collapse {*,1} -> {*}, the inclusion {*} -> {*,1}, and
  // the constant endomap of {*,1}.
  CHECK(instance_pointed_sets(2).c().morphisms() == 5);
  CHECK_THROWS_AS(instance_pointed_sets(0), ConfigError);
}

TEST_CASE("vector space hom and cofibration counts") {
  auto w = instance_vect_f2(2);
  CHECK(check_category_laws(w.c()).ok());
  for (int d = 0; d <= 2; ++d)
    for (int e = 0; e <= 2; ++e) {
      CHECK(static_cast<long>(w.c().hom(d, e).size()) == ipow(2, d * e));
      CHECK(count(w.c().hom(d, e), w.cof) == injective_f2(d, e));
    }
  CHECK(w.c().hom(2, 2).size() == 16);
  CHECK(instance_vect_f2(1).c().hom(1, 1).size() == 2);
  CHECK_THROWS_AS(instance_vect_f2(4), ConfigError);
}

TEST_CASE("canonical pushouts") {
  auto w = instance_pointed_sets(3);
  const Category& c = w.c();
  int inc = mor(w, "1->2[*]");
  auto p = w.chooser(inc, inc);
  REQUIRE(p);
  CHECK(c.obj_name[p->obj] == "{*,1,2}");
  CHECK(c.mor_name[p->leg_b] == "2->3[*,1]");
  CHECK(c.mor_name[p->leg_c] == "2->3[*,2]");
  CHECK(is_pushout(c, inc, inc, *p));
  // Identity cofibration: B itself with legs (id, f).
  int collapse = mor(w, "2->2[*,*]");
  auto q = w.chooser(collapse, c.ident[1]);
  REQUIRE(q);
  CHECK(q->obj == 1);
  CHECK(q->leg_b == c.ident[1]);
  CHECK(q->leg_c == collapse);
  // Coproduct beyond the size cap.
  auto big = w.chooser(mor(w, "1->3[*]"), inc);
  CHECK_FALSE(big);
  CHECK(all_pushouts(c, mor(w, "1->3[*]"), inc).empty());

  auto v = instance_vect_f2(2);
  int z1 = v.c().hom(0, 1).front();
  auto pv = v.chooser(z1, z1);
  REQUIRE(pv);
  CHECK(pv->obj == 2);
  CHECK(is_pushout(v.c(), z1, z1, *pv));
}

TEST_CASE("chooser is functorial on maps of spans") {
  auto w = instance_pointed_sets(3);
  const Category& c = w.c();
  struct S {
    int f, g;
    Cocone p;
  };
  std::vector<S> spans;
  for (int g = 0; g < c.morphisms(); ++g)
    if (w.cof[g])
      for (int f : c.out[c.src[g]])
        if (auto p = w.chooser(f, g)) spans.push_back({f, g, *p});
  long maps = 0;
  for (const auto& s1 : spans)
    for (const auto& s2 : spans)
      for (int x : c.hom(c.src[s1.g], c.src[s2.g]))
        for (int y : c.hom(c.tgt[s1.f], c.tgt[s2.f]))
          for (int z : c.hom(c.tgt[s1.g], c.tgt[s2.g])) {
            if (c.c(s2.f, x) != c.c(y, s1.f) || c.c(s2.g, x) != c.c(z, s1.g)) continue;
            int h = mediate(c, s1.p, c.c(s2.p.leg_b, y), c.c(s2.p.leg_c, z));
            CHECK(h >= 0);
            ++maps;
          }
  CHECK(maps > 100);
}

TEST_CASE("axioms on instances and mutants") {
  CHECK(verify_axioms(instance_pointed_sets(3)).ok());
  CHECK(verify_axioms(instance_vect_f2(2)).ok());
  CHECK(verify_axioms(instance_point()).ok());
  CHECK(verify_axioms(instance_m()).ok());

  auto w = instance_pointed_sets(3);
  w.cof[mor(w, "2->3[*,1]")] = 0;
  auto r = verify_axioms(w);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.find("cof_closed")->pass);
  CHECK_FALSE(r.find("pushout_far_leg_cof")->pass);

  // Every map a weak equivalence: the induced maps are then weak equivalences
  // too, so no clause fails.
  auto all = instance_pointed_sets(3);
  std::fill(all.weq.begin(), all.weq.end(), 1);
  CHECK(verify_axioms(all).ok());

  // A weak equivalence that is not closed under composition.
  auto v = instance_vect_f2(1);
  auto bad = v;
  bad.weq[mor(v, "1->1[1]")] = 0;
  CHECK_FALSE(verify_axioms(bad).find("isos_are_cof_and_weq")->pass);
}

TEST_CASE("K0 presentations") {
  auto p = k0(instance_pointed_sets(3));
  CHECK(p.group == AbelianGroup{1, {}});
  CHECK(k0(instance_vect_f2(2)).group == AbelianGroup{1, {}});
  CHECK(k0(instance_point()).group == AbelianGroup{0, {}});
  // Relation rows are independent of order.
  auto q = p;
  std::reverse(q.relations.entries.begin(), q.relations.entries.end());
  CHECK(cokernel(q.relations) == p.group);
}

TEST_CASE("exact functors") {
  auto w = instance_pointed_sets(2);
  CHECK(verify_exact_functor(identity_functor(w.c()), w, w).ok());
  // Collapse to the zero object.
  Functor z;
  z.obj.assign(w.c().objects(), w.zero);
  z.mor.assign(w.c().morphisms(), w.c().ident[w.zero]);
  CHECK(verify_exact_functor(z, w, w).ok());
}

TEST_CASE("universal split-exact sequence") {
  auto c = instance_pointed_sets(3);
  std::vector<char> all(3, 1), star{1, 0, 0};
  auto s = build_universal_sequence(c, all, all);
  CHECK(verify_split_exact(s).ok());
  CHECK(verify_axioms(s.e).ok());
  // s and q are exact.
  CHECK(verify_exact_functor(s.j, s.e, s.a).ok());
  CHECK(verify_exact_functor(s.f, s.e, s.b).ok());
  // Objects: 4 with A = *, 1 for the identity of {*,1}, 2 + 2 for the
  // injections into {*,1,2}.
  CHECK(s.e.c().objects() == 9);
  // Triangle components are identities.
  for (int a = 0; a < s.a.c().objects(); ++a) {
    CHECK(s.e.c().is_identity(s.eps_ij.comp[s.i.obj[a]]));
    CHECK(s.a.c().is_identity(s.j.mor[s.eps_ij.comp[s.i.obj[a]]]));
  }
  CHECK(direct_sum(k0(s.a).group, k0(s.b).group) == k0(s.e).group);

  auto t = build_universal_sequence(c, star, all);
  CHECK(verify_split_exact(t).ok());
  for (int x = 0; x < t.e.c().objects(); ++x) CHECK(t.ecat->s.obj[x] == 0);
  CHECK(direct_sum(k0(t.a).group, k0(t.b).group) == k0(t.e).group);

  // A counit that is not natural.
  auto bad = s;
  for (int x = 0; x < bad.e.c().objects(); ++x)
    if (!bad.e.c().is_identity(bad.eps_ij.comp[x])) {
      bad.eps_ij.comp[x] = bad.e.c().ident[x];
      break;
    }
  CHECK_FALSE(verify_split_exact(bad).ok());

  CHECK(verify_split_exact(degenerate_split(c)).ok());
  CHECK_THROWS(build_universal_sequence(c, {0, 1, 1}, all));
}

TEST_CASE("Waldhausen equivalences") {
  auto w = instance_vect_f2(2);
  CHECK(check_waldhausen_equivalence(identity_functor(w.c()), w, w).ok());
  auto more = w;
  for (int f = 0; f < w.c().morphisms(); ++f)
    if (w.c().src[f] == 0) more.cof[f] = 1;
  more.cof[mor(w, "1->1[0]")] = 1;
  auto r = check_waldhausen_equivalence(identity_functor(w.c()), w, more);
  CHECK_FALSE(r.find("reflects_cof")->pass);
}

TEST_CASE("phi comparison gates") {
  auto c = instance_pointed_sets(3);
  std::vector<char> all(3, 1);
  auto s = build_universal_sequence(c, all, all);
  auto ok = phi_comparison(s);
  CHECK(ok.report.ok());
  REQUIRE(ok.phi);
  // The induced map of a zero morphism is not a cofibration in general.
  CHECK_FALSE(ok.report.find("gate2_all_morphisms")->pass);

  auto g3 = phi_comparison(degenerate_split(instance_m()));
  CHECK_FALSE(g3.report.find("gate3_trivial_quotient_iso")->pass);
  CHECK(g3.report.find("gate3_trivial_quotient_iso")->witness == "m");
  CHECK_FALSE(g3.phi);

  auto g1 = phi_comparison(gate1_mutant(s));
  REQUIRE(g1.report.first_failure());
  CHECK(g1.report.first_failure()->name == "gate1_counit_cofibrations");
  auto g2 = phi_comparison(gate2_mutant(s));
  REQUIRE(g2.report.first_failure());
  CHECK(g2.report.first_failure()->name == "gate2_induced_cofibrations");
  CHECK_FALSE(g2.phi);
}
