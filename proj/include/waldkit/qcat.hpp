#pragma once

#include <string>
#include <vector>

#include "waldkit/sdot.hpp"

namespace waldkit {

// Small categories used by the nerve checks.
std::vector<Category> category_corpus();

struct HornReport {
  Report report;
  long horns = 0, unique = 0;
};

// Searches a filler for every inner horn Lambda^k[n] -> X, n <= up_to_dim.
// Horns with n >= 4 need X flagged <= 2-coskeletal.
HornReport is_quasicategory(const SSet& x, int up_to_dim);

struct QuasicategoryProbe {
  SSet x;
  Tau1Result tau;
  std::vector<char> equiv_edge;  // per edge of X: invertible in tau1
};
QuasicategoryProbe make_probe(SSet x, int cap = 12);

enum class EquivMethod { tau1_full, j_hom };

// X_equiv as a subcomplex of X (same keys). j_hom needs a <= 2-coskeletal X.
SSet equivalence_subcomplex(const QuasicategoryProbe& p, EquivMethod method);

// Levelwise key equality of N(C_iso) and (NC)_equiv through dimension trunc.
Report check_nerve_equiv(const Category& c, int trunc);

// alpha: X x Delta[1] -> Y on product(x, standard_simplex(1, x.trunc)).
Report natural_equivalence_check(const SSet& x, const QuasicategoryProbe& y, const SMap& alpha);

// Right mapping space: level n = (n+1)-simplices with last vertex b and
// front face the degenerate simplex on a.
SSet mapping_space(const SSet& x, int a, int b);

// Cones under the span B <-f- A -g-> C in a nerve: level n keys [b0, c0, p1, ..., pn].
SSet slice_under_span(const Category& c, int f, int g, int trunc);

struct PushoutSearch {
  Report report;
  std::vector<Cocone> initial;  // vertices of the slice passing the initiality evidence
  bool exact = false;           // initial set equals the categorical pushouts
};
PushoutSearch quasicat_pushout(const Category& c, int f, int g, int trunc = 3);

// Pushouts of spans whose left leg is an isomorphism have invertible far legs.
Report check_pushout_of_equivalences(const Category& c, int trunc, int* spans = nullptr);

// co(NC) = N(co C) against the Waldhausen quasicategory conditions.
Report check_cofibration_nerve(const Waldhausen& w, int trunc);

// Gap([n], NC): maps N Ar[n] x Delta[k] -> NC whose vertices are [n]-complexes.
struct GapLevel {
  int n = 0;
  SSet set;          // k-simplices, k <= k_max; keys are flattened 2-skeleton images
  SSet nc;           // the nerve used as target
  SSet arrows;       // N Ar[n] truncated at 2
  std::vector<SSet> shapes;  // N Ar[n] x Delta[k], indexing the flattened keys
  std::vector<LevelImages> complexes;  // the vertices as maps N Ar[n] -> NC
  Report certification;
};
GapLevel gap_sn_nerve(const Waldhausen& w, int n, int k_max, std::size_t budget = 5'000'000);

// Grid of an [n]-complex vertex of the gap level.
Grid gap_vertex_grid(const GapLevel& g, int v);

// N(S_n C) = S^inf_n(NC), N(wS_n C) = (S^inf_n NC)_equiv and the J[m] cotensor identity.
Report compare_equiv_constructions(const Waldhausen& w, int n, int k_max = 2, int m_max = 2);

}  // namespace waldkit
