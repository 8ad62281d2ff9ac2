#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waldkit/catkit.hpp"

using namespace waldkit;

TEST_CASE("ordinal and groupoid laws") {
  for (int n = 0; n <= 3; ++n) {
    CHECK(check_category_laws(ordinal(n)).ok());
    CHECK(check_category_laws(contractible_groupoid(n)).ok());
  }
}

TEST_CASE("nerve of small categories") {
  SSet n0 = nerve(ordinal(0), 3);
  CHECK(n0.level_sizes() == std::vector<int>{1, 1, 1, 1});
  SSet n1 = nerve(ordinal(1), 3);
  CHECK(n1.level_sizes() == standard_simplex(1, 3).level_sizes());
  CHECK(validate_simplicial_identities(n1).ok());
  SSet nj = nerve(contractible_groupoid(1), 4);
  CHECK(nj.level_sizes() == interval_groupoid(1, 4).level_sizes());
  CHECK(validate_simplicial_identities(nj).ok());
  CHECK(nj.cosk == 2);
}

TEST_CASE("tau1 of simplices, groupoids and nerves") {
  auto t = tau1(standard_simplex(1, 3));
  CHECK(t.cat.objects() == 2);
  CHECK(t.cat.morphisms() == 3);
  auto tj = tau1(interval_groupoid(1, 3));
  CHECK(tj.cat.objects() == 2);
  CHECK(tj.cat.morphisms() == 4);
  for (int f = 0; f < 4; ++f) CHECK(is_iso(tj.cat, f));
  // The free category on 0 -> 1 -> 2 plus 0 -> 2 has two parallel arrows 0 -> 2.
  auto tb = tau1(boundary_simplex(2, 3));
  CHECK(tb.cat.hom(0, 2).size() == 2);
  for (int n = 0; n <= 3; ++n) {
    CHECK(check_tau1_nerve(ordinal(n), 3).ok());
    CHECK(check_tau1_nerve(contractible_groupoid(n), 3).ok());
  }
}

TEST_CASE("maximal groupoid") {
  auto g = maximal_groupoid(ordinal(1));
  CHECK(g.cat.morphisms() == 2);
  auto j = maximal_groupoid(contractible_groupoid(2));
  CHECK(j.cat.morphisms() == 9);
}

TEST_CASE("equivalences") {
  Category c = contractible_groupoid(2);
  auto er = check_equivalence_of_categories(identity_functor(c), c, c);
  CHECK(er.ok());
  // Skeleton inclusion: a point into the contractible groupoid.
  Category pt = ordinal(0);
  Functor inc{{1}, {c.ident[1]}};
  auto ei = check_equivalence_of_categories(inc, pt, c);
  CHECK(ei.ok());
  REQUIRE(ei.inverse);
  // Composite of two verified equivalences.
  auto comp = compose(*ei.inverse, inc);
  CHECK(check_equivalence_of_categories(comp, pt, pt).ok());
  // Constant functor onto a discrete two-object category.
  CategoryBuilder b("disc2");
  b.add_object("a");
  b.add_object("b");
  b.set_identity(0, b.add_morphism(0, 0, "1a"));
  b.set_identity(1, b.add_morphism(1, 1, "1b"));
  Category disc = b.finish([](int g, int) { return g; });
  Functor cst{{0}, {0}};
  auto ec = check_equivalence_of_categories(cst, pt, disc);
  CHECK_FALSE(ec.report.find("essentially_surjective")->pass);
}

TEST_CASE("nerve preserves pullbacks") {
  Category c = ordinal(1);
  Category e = ordinal(0);
  Functor f{{0, 0}, {0, 0, 0}};
  auto pb = category_pullback(c, f, c, f, e);
  CHECK(check_category_laws(pb.cat).ok());
  SSet nc = nerve(c, 3), ne = nerve(e, 3), npb = nerve(pb.cat, 3);
  SMap nf;
  for (int n = 0; n <= 3; ++n) nf.at.emplace_back(nc.size(n), 0);
  auto spb = pullback(nc, nf, nc, nf, ne);
  CHECK(spb.set.level_sizes() == npb.level_sizes());
}
