#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "waldkit/common.hpp"
#include "waldkit/simpset.hpp"

namespace waldkit {

// Finite category. Composition is stored per morphism f over the morphisms
// leaving tgt(f): comp_after[f][local[g]] = g o f.
struct Category {
  std::string name;
  std::vector<std::string> obj_name, mor_name;
  std::vector<int> src, tgt, ident;
  std::vector<std::vector<int>> out;  // morphisms leaving each object, ascending
  std::vector<int> local;             // position of g in out[src g]
  std::vector<std::vector<int>> comp_after;
  std::vector<std::vector<int>> homs;  // [a * objects + b]

  int objects() const { return static_cast<int>(obj_name.size()); }
  int morphisms() const { return static_cast<int>(src.size()); }
  // g o f; -1 if not composable.
  int c(int g, int f) const {
    if (tgt[f] != src[g]) return -1;
    return comp_after[f][local[g]];
  }
  const std::vector<int>& hom(int a, int b) const { return homs[static_cast<std::size_t>(a) * objects() + b]; }
  bool is_identity(int f) const { return ident[src[f]] == f; }
};

class CategoryBuilder {
 public:
  explicit CategoryBuilder(std::string name) { cat_.name = std::move(name); }
  int add_object(std::string name);
  int add_morphism(int s, int t, std::string name);
  void set_identity(int obj, int mor);
  int objects() const { return cat_.objects(); }
  int morphisms() const { return cat_.morphisms(); }
  // compose(g, f) must return g o f for every composable pair.
  Category finish(const std::function<int(int g, int f)>& compose);

 private:
  Category cat_;
};

struct Functor {
  std::vector<int> obj, mor;
};

struct NatTrans {
  std::vector<int> comp;  // per source object
};

Report check_category_laws(const Category& c);
Report check_functor(const Functor& f, const Category& c, const Category& d);
Report check_natural(const NatTrans& a, const Functor& f, const Functor& g, const Category& c, const Category& d);
bool nat_iso(const NatTrans& a, const Category& d);

Functor identity_functor(const Category& c);
Functor compose(const Functor& g, const Functor& f);

// Inverse of f or -1.
int inverse_of(const Category& c, int f);
bool is_iso(const Category& c, int f);
std::vector<int> inverse_table(const Category& c);

struct SubcategoryResult {
  Category cat;
  Functor inclusion;
  std::vector<int> obj_back;  // ambient object -> sub object or -1
  std::vector<int> mor_back;
};

SubcategoryResult full_subcategory(const Category& c, const std::vector<char>& keep_obj, std::string name);
// Wide subcategory on the kept morphisms (must contain identities and be closed).
SubcategoryResult wide_subcategory(const Category& c, const std::vector<char>& keep_mor, std::string name);

SSet nerve(const Category& c, int trunc, std::size_t budget = 4'000'000);

struct Tau1Result {
  Category cat;
  std::vector<int> edge_to_mor;  // per edge of X
};

// Homotopy category by enumerating path classes; throws BudgetExceeded
// when a path longer than cap would be needed.
Tau1Result tau1(const SSet& x, int cap = 12);

SubcategoryResult maximal_groupoid(const Category& c);

struct EquivalenceReport {
  Report report;
  std::optional<Functor> inverse;
  std::optional<NatTrans> unit;    // Id -> G F
  std::optional<NatTrans> counit;  // F G -> Id
  bool ok() const { return report.ok(); }
};

EquivalenceReport check_equivalence_of_categories(const Functor& f, const Category& c, const Category& d);

// Fiber product C x_E D of F: C -> E, G: D -> E.
struct CategoryPullback {
  Category cat;
  Functor p1, p2;
};
CategoryPullback category_pullback(const Category& c, const Functor& f, const Category& d, const Functor& g, const Category& e);

// Free-standing objects: [n] as a poset, the contractible groupoid on n+1 objects.
Category ordinal(int n);
Category contractible_groupoid(int n);

// Canonical identity-on-objects isomorphism check between C and tau1(N C).
Report check_tau1_nerve(const Category& c, int trunc);

json to_json(const Category& c);
json to_json(const Functor& f, const Category& c, const Category& d);

}  // namespace waldkit
