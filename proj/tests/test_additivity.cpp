#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "waldkit/additivity.hpp"

using namespace waldkit;

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int mor(const Category& c, const std::string& name) {
  return static_cast<int>(std::find(c.mor_name.begin(), c.mor_name.end(), name) - c.mor_name.begin());
}

std::shared_ptr<const AdditivitySetup> setup(const Waldhausen& c, std::vector<char> a, std::vector<char> b, int trunc) {
  return std::make_shared<const AdditivitySetup>(additivity_setup(c, a, b, trunc));
}

// Pushouts onto {*,1,2} get the swap of 1 and 2 on odd rows.
PushoutPicker swap_on_odd_rows(const Waldhausen& w) {
  int sw = mor(w.c(), "3->3[*,2,1]");
  return [&w, sw](int f, int g, int row, int) -> std::optional<Cocone> {
    auto p = w.chooser(f, g);
    if (!p) return p;
    if (p->obj == 2 && row % 2 == 1) {
      p->leg_b = w.c().c(sw, p->leg_b);
      p->leg_c = w.c().c(sw, p->leg_c);
    }
    return p;
  };
}

}  // namespace

TEST_CASE("left fiber of the identity is the simplex") {
  auto s = object_simplicial_set(instance_pointed_sets(2), 3);
  auto id = identity_map(s);
  for (int m = 0; m <= 2; ++m)
    for (int y = 0; y < s.size(m); ++y) {
      auto lf = left_fiber(s, id, s, m, y);
      for (int n = 0; n <= 3; ++n) CHECK(lf.set.size(n) == binom(m + n + 1, n + 1));
      CHECK(validate_simplicial_identities(lf.set).ok());
      CHECK(check_simplicial_map(lf.set, s, lf.pi).ok());
    }
  CHECK_THROWS_AS(left_fiber(s, id, s, 1, 99), std::invalid_argument);
}

TEST_CASE("E-grids unpack into triples and back") {
  auto c = instance_pointed_sets(3);
  auto s = setup(c, {1, 1, 0}, {1, 1, 0}, 3);
  for (int n = 0; n <= 3; ++n)
    for (const auto& k : s->se.keys[n]) {
      auto g = grid_from_key(k);
      auto t = triple_of(*s->e, g);
      CHECK(certify_grid(c, t.a).ok());
      CHECK(certify_grid(c, t.c).ok());
      CHECK(certify_grid(c, t.b).ok());
      auto back = egrid_of(*s->e, t);
      REQUIRE(back);
      CHECK(*back == g);
    }
  CHECK(check_simplicial_map(s->se, s->sa, s->f).ok());
  CHECK(check_simplicial_map(s->se, s->sb, s->g).ok());
}

TEST_CASE("homotopy identities on pointed sets") {
  auto c = instance_pointed_sets(3);
  auto s = setup(c, {1, 1, 0}, {1, 1, 0}, 4);
  long checked = 0;
  for (int m = 0; m <= 1; ++m)
    for (int y = 0; y < s->sa.size(m); ++y) {
      FiberHomotopy h(s, m, y);
      CAPTURE(m);
      CAPTURE(y);
      CHECK(validate_simplicial_identities(h.fiber().set).ok());
      CHECK(verify_retraction(h).ok());
      for (auto form : {Formulation::modern, Formulation::classical}) {
        auto cert = verify_homotopy_identities(h, form, 2);
        CHECK(cert.failed == 0);
        CHECK(cert.report.ok());
        checked += cert.checked;
      }
    }
  // 98 + 364 + 568 modern and 92 + 338 + 525 classical instances.
  CHECK(checked == 1985);
}

TEST_CASE("homotopy identities on F2 vector spaces") {
  auto c = instance_vect_f2(2);
  auto s = setup(c, {1, 1, 0}, {1, 1, 0}, 3);
  for (int m = 0; m <= 1; ++m)
    for (int y = 0; y < s->sa.size(m); ++y) {
      FiberHomotopy h(s, m, y);
      CHECK(verify_retraction(h).ok());
      CHECK(verify_homotopy_identities(h, Formulation::modern, 2).failed == 0);
      CHECK(verify_homotopy_identities(h, Formulation::classical, 1).failed == 0);
    }
}

TEST_CASE("identity lists name every case") {
  auto c = instance_pointed_sets(3);
  auto s = setup(c, {1, 1, 0}, {1, 1, 0}, 4);
  FiberHomotopy h(s, 1, 1);
  auto modern = verify_homotopy_identities(h, Formulation::modern, 2);
  for (auto id : {"d_i h^j = h^{j-1} d_i (i<j)", "d_i h^j = h^j d_i (i>=j)", "s_i h^j = h^{j+1} s_i (i<j)",
                  "s_i h^j = h^j s_i (i>=j)"})
    CHECK(modern.report.find(id));
  auto classical = verify_homotopy_identities(h, Formulation::classical, 2);
  for (auto id : {"d_0 h_0 = iota r", "d_{n+1} h_n = Id", "d_i h_j = h_{j-1} d_i (i<j)", "d_j h_j = d_j h_{j-1} (j>0)",
                  "d_i h_j = h_j d_{i-1} (i>j+1)", "s_i h_j = h_{j+1} s_i (i<=j)", "s_i h_j = h_j s_{i-1} (i>j)"})
    CHECK(classical.report.find(id));
}

TEST_CASE("classical h_j is the modern homotopy on a degeneracy") {
  auto c = instance_pointed_sets(3);
  auto s = setup(c, {1, 1, 0}, {1, 1, 0}, 4);
  FiberHomotopy h(s, 1, 1);
  const SSet& x = h.fiber().set;
  for (int n = 0; n <= 2; ++n)
    for (int e = 0; e < x.size(n); ++e)
      for (int j = 0; j <= n; ++j) CHECK(h.classical(n, j, e) == h.modern(n + 1, j + 1, x.s(n, e, j)));
}

TEST_CASE("literal reindexing breaks identities") {
  auto c = instance_pointed_sets(3);
  auto s = setup(c, {1, 1, 0}, {1, 1, 0}, 3);
  FiberHomotopy h(s, 1, 1, {}, AlphaRule::literal);
  auto cert = verify_homotopy_identities(h, Formulation::modern, 2);
  CHECK(cert.failed == 12);
  CHECK_FALSE(cert.report.find("d_i h^j = h^{j-1} d_i (i<j)")->pass);
  CHECK_FALSE(verify_retraction(h).ok());
  // Over a vertex every reindexing agrees.
  FiberHomotopy v(s, 0, 0, {}, AlphaRule::literal);
  CHECK(verify_homotopy_identities(v, Formulation::modern, 2).failed == 0);
}

TEST_CASE("position-dependent pushout choice breaks identities") {
  auto c = instance_pointed_sets(3);
  auto s = setup(c, {1, 1, 0}, {1, 1, 0}, 4);
  FiberHomotopy h(s, 1, 1, swap_on_odd_rows(*s->c));
  auto cert = verify_homotopy_identities(h, Formulation::modern, 2);
  CHECK(cert.failed > 0);
  CHECK_FALSE(cert.counterexamples.empty());
}

TEST_CASE("truncation without pushouts leaves h undefined") {
  auto c = instance_pointed_sets(2);
  auto s = setup(c, {1, 1}, {1, 1}, 3);
  FiberHomotopy h(s, 1, 1);
  auto cert = verify_homotopy_identities(h, Formulation::modern, 2);
  REQUIRE(cert.report.find("defined"));
  CHECK_FALSE(cert.report.find("defined")->pass);
  int undefined = 0;
  for (int e = 0; e < h.fiber().set.size(1); ++e) {
    std::string why;
    if (!h.build(h.decode(1, e), 1, &why)) {
      ++undefined;
      CHECK(why.rfind("no pushout", 0) == 0);
    }
  }
  CHECK(undefined > 0);
}

TEST_CASE("fibers over the zero vertex and with A trivial") {
  auto c = instance_pointed_sets(3);
  {
    auto s = setup(c, {1, 1, 0}, {1, 1, 0}, 3);
    FiberHomotopy h(s, 0, 0);
    for (int n = 0; n <= 3; ++n) CHECK(h.fiber().set.size(n) == s->sb.size(n));
  }
  auto s = setup(c, {1, 0, 0}, {1, 1, 1}, 3);
  for (int m = 0; m <= 1; ++m)
    for (int y = 0; y < s->sa.size(m); ++y) {
      FiberHomotopy h(s, m, y);
      // Quotients are any isomorphism C -> B, so r is onto but not injective.
      for (int n = 0; n <= 3; ++n) {
        std::vector<int> img;
        for (int e = 0; e < h.fiber().set.size(n); ++e) img.push_back(h.r(n, e));
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        CHECK(static_cast<int>(img.size()) == s->sb.size(n));
      }
      CHECK(h.fiber().set.size(1) > s->sb.size(1));
      CHECK(verify_retraction(h).ok());
      CHECK(verify_homotopy_identities(h, Formulation::modern, 2).failed == 0);
    }
}

TEST_CASE("K0 additivity") {
  for (auto c : {instance_pointed_sets(3), instance_vect_f2(2)}) {
    int no = c.c().objects();
    std::vector<char> all(no, 1), zero(no, 0);
    zero[c.zero] = 1;
    CAPTURE(c.name);
    CHECK(k0_additivity(c, all, all).ok());
    CHECK(k0_additivity(c, zero, all).ok());
    auto e = e_category(c, all, all, "E");
    CHECK(k0(e.w).group == AbelianGroup{2, {}});
    CHECK(k0(c).group == AbelianGroup{1, {}});
  }
}

TEST_CASE("additivity suite") {
  auto c = instance_pointed_sets(3);
  auto r = additivity_suite(c, {1, 1, 0}, {1, 1, 0}, {});
  CHECK(r.report.ok());
  CHECK(r.report.find("pi0_bijection")->pass);
  CHECK(r.report.find("homology_agrees")->pass);
  CHECK(r.detail["fibers"].size() == 3);
  CHECK(r.detail["totals"]["modern"]["failed"] == 0);
  // The kept objects are not closed under pushouts in C.
  CHECK_FALSE(r.report.find("A_conditions")->pass);
  auto bad = additivity_suite(c, {1, 1, 0}, {1, 1, 0}, {}, {}, AlphaRule::literal);
  CHECK_FALSE(bad.report.ok());
}
