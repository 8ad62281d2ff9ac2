#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waldkit/sdot.hpp"

using namespace waldkit;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Cofiber sequences of based sets of sizes <= k: injections A -> C times the
// bijections of C \ A onto the non-base points of the quotient.
long cofiber_sequence_count(int k) {
  long r = 0;
  for (int a = 1; a <= k; ++a)
    for (int c = a; c <= k; ++c) {
      long inj = 1;
      for (int i = 0; i < a - 1; ++i) inj *= (c - 1 - i);
      r += inj * factorial(c - a);
    }
  return r;
}

int mor(const Category& c, const std::string& name) {
  return static_cast<int>(std::find(c.mor_name.begin(), c.mor_name.end(), name) - c.mor_name.begin());
}

// Conjugation by the swap of {*,1,2}.
Functor swap_conjugation(const Waldhausen& w) {
  const Category& c = w.c();
  int sw = mor(c, "3->3[*,2,1]");
  auto sigma = [&](int o) { return o == 2 ? sw : c.ident[o]; };
  Functor f;
  for (int o = 0; o < c.objects(); ++o) f.obj.push_back(o);
  for (int m = 0; m < c.morphisms(); ++m) f.mor.push_back(c.c(c.c(sigma(c.tgt[m]), m), sigma(c.src[m])));
  return f;
}

}  // namespace

TEST_CASE("arrow categories") {
  CHECK(arrow_category(0).objects() == 1);
  CHECK(arrow_category(2).objects() == 6);
  auto a3 = arrow_category(3);
  CHECK(a3.objects() == 10);
  CHECK(check_category_laws(a3).ok());
  // Comparable pairs in Ar[1]: three identities and three strict relations.
  CHECK(arrow_category(1).morphisms() == 6);
  // Hasse arrows: right steps at j < n and down steps at i < j, 6 + 6.
  int hasse = 0;
  for (int f = 0; f < a3.morphisms(); ++f) {
    if (a3.is_identity(f)) continue;
    bool factors = false;
    for (int g = 0; g < a3.morphisms() && !factors; ++g)
      if (a3.src[g] == a3.src[f] && !a3.is_identity(g))
        for (int h : a3.hom(a3.tgt[g], a3.tgt[f]))
          if (!a3.is_identity(h) && a3.c(h, g) == f) factors = true;
    hasse += !factors;
  }
  CHECK(hasse == 12);
}

TEST_CASE("grid counts") {
  auto p2 = instance_pointed_sets(2);
  auto p3 = instance_pointed_sets(3);
  CHECK(enumerate_grids(p3, 0).size() == 1);
  CHECK(static_cast<int>(enumerate_grids(p2, 1).size()) == p2.c().objects());
  CHECK(static_cast<int>(enumerate_grids(p3, 1).size()) == p3.c().objects());
  CHECK(static_cast<long>(enumerate_grids(p2, 2).size()) == cofiber_sequence_count(2));
  CHECK(static_cast<long>(enumerate_grids(p3, 2).size()) == cofiber_sequence_count(3));
  std::vector<char> all(3, 1);
  CHECK(e_category(p3, all, all, "E").seq.size() == enumerate_grids(p3, 2).size());
  for (const auto& g : enumerate_grids(p3, 3)) CHECK(certify_grid(p3, g).ok());
  CHECK_THROWS_AS(enumerate_grids(p3, 3, 5), BudgetExceeded);
}

TEST_CASE("face and degeneracy operators") {
  auto w = instance_pointed_sets(3);
  const Category& c = w.c();
  for (const auto& g : enumerate_grids(w, 2)) {
    int a = g.obj[grid_pos(2, 0, 1)], cc = g.obj[grid_pos(2, 0, 2)], b = g.obj[grid_pos(2, 1, 2)];
    auto d0 = simplicial_operator(w, g, true, 0);
    CHECK(d0.obj[grid_pos(1, 0, 1)] == b);
    auto d1 = simplicial_operator(w, g, true, 1);
    CHECK(d1.obj[grid_pos(1, 0, 1)] == cc);
    auto d2 = simplicial_operator(w, g, true, 2);
    CHECK(d2.obj[grid_pos(1, 0, 1)] == a);
    CHECK(d2.h[grid_pos(1, 0, 0)] == w.from_zero(a));
    for (int i = 0; i <= 2; ++i) {
      CHECK(simplicial_operator(w, simplicial_operator(w, g, false, i), true, i) == g);
      CHECK(simplicial_operator(w, simplicial_operator(w, g, false, i), true, i + 1) == g);
    }
  }
  auto g = enumerate_grids(w, 1).back();
  CHECK_THROWS_AS(simplicial_operator(w, g, true, 2), std::out_of_range);
  CHECK(grid_to_json(c, g)["objects"]["0,1"] == c.obj_name[2]);
}

TEST_CASE("object simplicial set") {
  for (auto w : {instance_pointed_sets(3), instance_vect_f2(1)}) {
    auto s = object_simplicial_set(w, 3);
    CHECK(s.size(0) == 1);
    CHECK(s.size(1) == w.c().objects());
    CHECK(validate_simplicial_identities(s).ok());
  }
}

TEST_CASE("S_n Waldhausen structure") {
  for (auto w : {instance_pointed_sets(2), instance_pointed_sets(3), instance_vect_f2(1)})
    for (int n = 0; n <= 2; ++n) {
      auto s = s_n_category(w, n);
      CAPTURE(s.w.name);
      CHECK(check_category_laws(s.w.c()).ok());
      CHECK(verify_axioms(s.w).ok());
      const Category& c = w.c();
      for (int f = 0; f < s.w.c().morphisms(); ++f) {
        bool all_weq = true, all_cof = true;
        for (int comp : s.comps[f]) {
          all_weq = all_weq && w.weq[comp];
          all_cof = all_cof && w.cof[comp];
        }
        CHECK(s.w.weq[f] == all_weq);
        if (s.w.cof[f]) CHECK(all_cof);
      }
      if (n == 0) CHECK(s.w.c().objects() == 1);
      if (n == 1) CHECK(s.w.c().objects() == c.objects());
    }
}

TEST_CASE("cofibrations are stricter than componentwise") {
  // Pushout-morphism cofibrations are among the componentwise ones.
  auto w = instance_pointed_sets(3);
  auto s = s_n_category(w, 2);
  int strict = 0, comp = 0;
  for (int f = 0; f < s.w.c().morphisms(); ++f) {
    bool all_cof = true;
    for (int cmp : s.comps[f]) all_cof = all_cof && w.cof[cmp];
    comp += all_cof;
    strict += s.w.cof[f];
  }
  CHECK(strict <= comp);
  CHECK(strict > 0);
}

TEST_CASE("S_n S_2 and S_2 S_n agree") {
  auto w = instance_pointed_sets(2);
  for (int n = 0; n <= 2; ++n) {
    auto r = check_sn_s2_swap(w, n);
    CAPTURE(n);
    CHECK(r.ok());
  }
  CHECK(check_sn_s2_swap(instance_pointed_sets(3), 1).ok());
}

TEST_CASE("levelwise nerve of wS") {
  auto w = instance_pointed_sets(3);
  auto wn = diagonal_nerve_w(w, 2);
  CHECK(validate_bisimplicial(wn.bi).ok());
  CHECK(validate_simplicial_identities(wn.diag).ok());
  for (int n = 0; n <= 2; ++n) CHECK(wn.bi.size(n, 0) == static_cast<int>(enumerate_grids(w, n).size()));
  // Chains of k bijections: automorphism groups of sizes 1, 1, 2.
  for (int k = 0; k <= 2; ++k) CHECK(wn.bi.size(1, k) == 2 + (1 << k));

  auto small = diagonal_nerve_w(instance_pointed_sets(2), 2);
  auto h = homology(small.diag, 1);
  REQUIRE(h.valid_upto >= 0);
  CHECK(h.groups[0] == AbelianGroup{1, {}});
  CHECK(homology(wn.diag, 1).groups[0] == AbelianGroup{1, {}});
}

TEST_CASE("wS_n of Waldhausen equivalences") {
  auto w = instance_pointed_sets(3);
  for (const auto& f : {identity_functor(w.c()), swap_conjugation(w)}) {
    REQUIRE(check_waldhausen_equivalence(f, w, w).ok());
    for (int n = 0; n <= 2; ++n) {
      auto s = s_n_category(w, n);
      auto sf = s_n_functor(f, s, s);
      CHECK(check_functor(sf, s.w.c(), s.w.c()).ok());
      auto ws = w_s_n(s);
      Functor wf;
      for (int x : sf.obj) wf.obj.push_back(ws.obj_back[x]);
      for (int m = 0; m < ws.cat.morphisms(); ++m) wf.mor.push_back(ws.mor_back[sf.mor[ws.inclusion.mor[m]]]);
      CHECK(check_equivalence_of_categories(wf, ws.cat, ws.cat).ok());
    }
  }
}
