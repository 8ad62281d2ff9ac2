#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "waldkit/simpset.hpp"

using namespace waldkit;

namespace {

// Independent count of monotone maps [m] -> [n]: binomial(m + n + 1, m + 1).
long binom(int a, int b) {
  long r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

TEST_CASE("standard simplex level sizes") {
  SSet d1 = standard_simplex(1, 3);
  CHECK(d1.level_sizes() == std::vector<int>{2, 3, 4, 5});
  for (int n = 0; n <= 4; ++n) {
    SSet d = standard_simplex(n, 4);
    for (int m = 0; m <= 4; ++m) CHECK(d.size(m) == binom(m + n + 1, m + 1));
  }
}

TEST_CASE("constructors satisfy the simplicial identities") {
  for (int n = 0; n <= 3; ++n) {
    CHECK(validate_simplicial_identities(standard_simplex(n, 4)).ok());
    CHECK(validate_simplicial_identities(boundary_simplex(n, 4)).ok());
    CHECK(validate_simplicial_identities(interval_groupoid(n, 3)).ok());
    for (int k = 0; k <= n; ++k) CHECK(validate_simplicial_identities(horn(n, k, 4)).ok());
  }
  CHECK(check_eilenberg_zilber(standard_simplex(2, 4)).ok());
  CHECK(check_eilenberg_zilber(interval_groupoid(1, 4)).ok());
  CHECK(check_eilenberg_zilber(boundary_simplex(3, 4)).ok());
}

TEST_CASE("horn errors") {
  CHECK_THROWS(basic_complex(ComplexKind::horn, 2, std::nullopt, 3));
  CHECK_THROWS(horn(2, 3, 3));
}

TEST_CASE("boundary of the 2-simplex is a circle") {
  SSet b = boundary_simplex(2, 3);
  for (int n = 2; n <= 3; ++n) {
    auto nd = nondegenerate(b, n);
    CHECK(std::count(nd.begin(), nd.end(), 1) == 0);
  }
  auto h = homology(b, 2);
  CHECK(h.groups[0] == AbelianGroup{1, {}});
  CHECK(h.groups[1] == AbelianGroup{1, {}});
  CHECK(h.groups[2] == AbelianGroup{0, {}});
}

TEST_CASE("interval groupoid counts and homology") {
  SSet j = interval_groupoid(1, 4);
  for (int n = 0; n <= 4; ++n) CHECK(j.size(n) == (1 << (n + 1)));
  auto h = homology(j, 3);
  CHECK(h.groups[0] == AbelianGroup{1, {}});
  for (int k = 1; k <= 3; ++k) CHECK(h.groups[k] == AbelianGroup{0, {}});
  CHECK(j.cosk == 2);
}

TEST_CASE("standard simplex is acyclic") {
  for (int n = 0; n <= 4; ++n) {
    auto h = homology(standard_simplex(n, 4), 3);
    CHECK(h.groups[0] == AbelianGroup{1, {}});
    for (int k = 1; k <= 3; ++k) CHECK(h.groups[k] == AbelianGroup{0, {}});
  }
  CHECK_THROWS(homology(standard_simplex(1, 3), 3));
}

TEST_CASE("product") {
  SSet d1 = standard_simplex(1, 3);
  SSet pr = product(d1, d1);
  // Pairs of monotone maps [2] -> [1]: 4 * 4.
  CHECK(pr.size(2) == 16);
  CHECK(validate_simplicial_identities(pr).ok());
  SSet pt = standard_simplex(0, 3);
  SSet b = boundary_simplex(2, 3);
  SSet pb = product(b, pt);
  CHECK(pb.level_sizes() == b.level_sizes());
  CHECK(homology(pb, 2).groups[1] == AbelianGroup{1, {}});
  CHECK_THROWS(product(d1, standard_simplex(1, 2)));
  // Delta[1] x Delta[1] is contractible.
  auto h = homology(pr, 2);
  CHECK(h.groups[0] == AbelianGroup{1, {}});
  CHECK(h.groups[1] == AbelianGroup{0, {}});
}

TEST_CASE("pullback against a constant map gives preimages of degeneracies") {
  SSet x = standard_simplex(2, 3);
  SSet pt = standard_simplex(0, 3);
  // f = identity on X, g = constant at vertex 1.
  SMap id = identity_map(x);
  SMap c;
  for (int n = 0; n <= 3; ++n) c.at.push_back({x.find(n, Key(n + 1, 1))});
  auto pb = pullback(x, id, pt, c, x);
  for (int n = 0; n <= 3; ++n) CHECK(pb.set.size(n) == 1);
  CHECK(validate_simplicial_identities(pb.set).ok());
  auto pid = pullback(x, id, x, id, x);
  CHECK(pid.set.level_sizes() == x.level_sizes());
}

TEST_CASE("corrupted face table is caught") {
  SSet x = product(standard_simplex(1, 3), standard_simplex(1, 3));
  x.faces[2][3][1] = x.faces[2][3][0] == 0 ? 1 : 0;
  auto r = validate_simplicial_identities(x);
  CHECK_FALSE(r.ok());
  CHECK(r.first_failure()->witness.find("level") != std::string::npos);
}

TEST_CASE("external product diagonal") {
  SSet d1 = standard_simplex(1, 3);
  BiSSet b = external_product(d1, d1);
  CHECK(validate_bisimplicial(b).ok());
  SSet dg = diagonal(b);
  SSet pr = product(d1, d1);
  CHECK(dg.level_sizes() == pr.level_sizes());
  CHECK(validate_simplicial_identities(dg).ok());
  // Operators agree under (a, b) -> a * |Y_n| + b.
  for (int n = 1; n <= 3; ++n)
    for (int x = 0; x < pr.size(n); ++x)
      for (int i = 0; i <= n; ++i) {
        const Key& k = pr.keys[n][x];
        int f = pr.d(n, x, i);
        CHECK(dg.d(n, k[0] * d1.size(n) + k[1], i) == pr.keys[n - 1][f][0] * d1.size(n - 1) + pr.keys[n - 1][f][1]);
      }
}

TEST_CASE("apply_op matches direct composition") {
  SSet d = standard_simplex(3, 4);
  int top = d.find(3, {0, 1, 2, 3});
  CHECK(d.keys[2][apply_op(d, 3, top, {0, 2, 3})] == Key{0, 2, 3});
  CHECK(d.keys[4][apply_op(d, 3, top, {0, 1, 1, 2, 3})] == Key{0, 1, 1, 2, 3});
  CHECK(d.keys[2][apply_op(d, 3, top, {1, 1, 3})] == Key{1, 1, 3});
}

TEST_CASE("cotensor") {
  SSet x = standard_simplex(1, 3);
  SSet pt = standard_simplex(0, 3);
  SSet c = cotensor_into_coskeletal(pt, x, 3);
  CHECK(c.level_sizes() == x.level_sizes());
  CHECK(validate_simplicial_identities(c).ok());
  CHECK_THROWS(cotensor_into_coskeletal(pt, boundary_simplex(2, 3), 1));
  // Maps J[1] -> Delta[1] are the two constant ones.
  SSet cj = cotensor_into_coskeletal(interval_groupoid(1, 3), x, 2);
  CHECK(cj.size(0) == 2);
  CHECK(validate_simplicial_identities(cj).ok());
}

TEST_CASE("json round trip") {
  SSet x = horn(2, 1, 3);
  json j = to_json(x);
  SSet y = sset_from_json(j);
  CHECK(to_json(y).dump() == j.dump());
  CHECK(validate_simplicial_identities(y).ok());
}

TEST_CASE("smith normal form") {
  SparseMatrix m;
  m.rows = 2;
  m.cols = 2;
  m.entries = {{0, 0, 2}, {0, 1, 4}, {1, 0, 6}, {1, 1, 8}};
  auto r = smith_normal_form(m);
  CHECK(r.rank == 2);
  CHECK(r.torsion == std::vector<std::int64_t>{2, 4});
  SparseMatrix z;
  z.rows = 3;
  z.cols = 3;
  z.entries = {{0, 0, 4}, {1, 1, 6}};
  CHECK(cokernel(z) == AbelianGroup{1, {2, 12}});
  // Forces the wide path: products beyond 64 bits.
  SparseMatrix big;
  big.rows = big.cols = 2;
  big.entries = {{0, 0, 3037000499LL}, {0, 1, 3037000493LL}, {1, 0, 3037000493LL}, {1, 1, 3037000453LL}};
  auto rb = smith_normal_form(big);
  CHECK(rb.rank == 2);
}
