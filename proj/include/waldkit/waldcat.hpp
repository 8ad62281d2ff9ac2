#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "waldkit/catkit.hpp"
#include "waldkit/common.hpp"
#include "waldkit/snf.hpp"

namespace waldkit {

// Cocone over a span B <-f- A -g-> C: legs B -> obj and C -> obj.
struct Cocone {
  int obj = -1;
  int leg_b = -1;
  int leg_c = -1;
  bool operator==(const Cocone&) const = default;
};

// Partial pushout choice for f: A -> B along a cofibration g: A -> C.
using Chooser = std::function<std::optional<Cocone>(int f, int g)>;

struct Waldhausen {
  std::string name;
  std::shared_ptr<const Category> cat;
  int zero = 0;
  std::vector<char> cof, weq;
  Chooser chooser;

  const Category& c() const { return *cat; }
  int from_zero(int a) const { return c().hom(zero, a).front(); }
  int to_zero(int a) const { return c().hom(a, zero).front(); }
};

Waldhausen instance_pointed_sets(int max_card);
Waldhausen instance_vect_f2(int max_dim);
Waldhausen instance_point();
// Builds an instance from a config descriptor ("pointed_sets" | "vect_f2").
Waldhausen make_instance(const std::string& kind, int size);

// Universal property by hom counting against every object.
bool is_pushout(const Category& c, int f, int g, const Cocone& p);
// All certified pushouts, ordered by (obj, leg_b, leg_c).
std::vector<Cocone> all_pushouts(const Category& c, int f, int g);
// The unique h: p.obj -> X with h leg_b = b and h leg_c = c, or -1.
int mediate(const Category& c, const Cocone& p, int b, int c_leg);
// First certified pushout, memoized; for derived categories.
Chooser generic_chooser(std::shared_ptr<const Category> c);

Report verify_axioms(const Waldhausen& w);
Report verify_exact_functor(const Functor& f, const Waldhausen& from, const Waldhausen& to);

// A cofibration m: A -> C with a certified quotient n: C -> B.
struct CofiberSeq {
  int m = -1, n = -1;
};
std::vector<CofiberSeq> cofiber_sequences(const Waldhausen& w);

struct K0Presentation {
  std::vector<std::string> generators;
  SparseMatrix relations;
  AbelianGroup group;
  json to_json() const;
};
K0Presentation k0(const Waldhausen& w);

// Full sub Waldhausen category on kept objects. A morphism is a cofibration
// if it is one in the ambient category and its quotient is kept.
struct SubWaldhausen {
  Waldhausen w;
  SubcategoryResult sub;
  Report condition;
};
SubWaldhausen sub_waldhausen(const Waldhausen& c, const std::vector<char>& keep, const std::string& name);

// E(A, C, B) for object predicates on C.
struct ECat {
  Waldhausen w;
  std::shared_ptr<const Waldhausen> base;
  std::vector<CofiberSeq> seq;               // per object
  std::vector<std::array<int, 3>> comp;      // per morphism: (alpha, gamma, beta)
  KeyMap<int> seq_index, mor_index;
  Functor s, mid, q;                         // into the base category
  int find(int m, int n) const;
  std::vector<std::array<int, 2>> ends;      // per morphism: (source, target)
  int find_mor(int x, int y, int a, int g, int b) const;
  int src_of(int f) const { return ends[f][0]; }
  int tgt_of(int f) const { return ends[f][1]; }
};
ECat e_category(const Waldhausen& c, const std::vector<char>& a_keep, const std::vector<char>& b_keep,
                const std::string& name, std::size_t budget = 5'000'000);

struct SplitExact {
  Waldhausen a, e, b;
  Functor i, f, j, g;
  NatTrans eta;     // Id_A -> j i
  NatTrans eps_ij;  // i j -> Id_E
  NatTrans eta_fg;  // Id_E -> g f
  NatTrans eps;     // f g -> Id_B
  std::shared_ptr<const ECat> ecat;  // set by build_universal_sequence
};

Report verify_split_exact(const SplitExact& s);
SplitExact build_universal_sequence(const Waldhausen& c, const std::vector<char>& a_keep,
                                    const std::vector<char>& b_keep, Report* condition = nullptr);
// A = E = w, B = {*} with the identity and collapse functors.
SplitExact degenerate_split(const Waldhausen& w);

struct PhiResult {
  Report report;
  std::optional<Functor> phi;
  std::shared_ptr<const ECat> target;
};
PhiResult phi_comparison(const SplitExact& s, std::size_t budget = 5'000'000);

// Hypothesis mutants for phi_comparison. Gate 1 drops a non-iso counit
// component from the cofibrations of E; gate 2 drops an induced map of a
// cofibration that is neither a counit component nor the cofibration itself.
SplitExact gate1_mutant(const SplitExact& s);
SplitExact gate2_mutant(const SplitExact& s);

Report check_waldhausen_equivalence(const Functor& f, const Waldhausen& c, const Waldhausen& d);

// Test fixture: objects {0, a, b}, a cofibration m: a -> b with quotient 0.
Waldhausen instance_m();

}  // namespace waldkit
