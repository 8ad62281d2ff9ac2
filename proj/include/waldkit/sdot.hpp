#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "waldkit/catkit.hpp"
#include "waldkit/common.hpp"
#include "waldkit/simpset.hpp"
#include "waldkit/waldcat.hpp"

namespace waldkit {

// Number of positions (i, j), 0 <= i <= j <= n, and their row-major index.
int grid_positions(int n);
int grid_pos(int n, int i, int j);

// A functor Ar[n] -> C on Hasse arrows. h[pos(i,j)]: (i,j) -> (i,j+1),
// v[pos(i,j)]: (i,j) -> (i+1,j); -1 where the arrow does not exist.
struct Grid {
  int n = 0;
  std::vector<int> obj, h, v;
  Key key() const;
  bool operator==(const Grid&) const = default;
};

Grid grid_from_key(const Key& k);

// delta^i: [n-1] -> [n] and sigma^i: [n+1] -> [n] as value sequences.
std::vector<int> face_theta(int n, int i);
std::vector<int> degen_theta(int n, int i);

Category arrow_category(int n);

// The composite (i,j) -> (k,l) in the grid.
int mor_between(const Category& c, const Grid& g, int i, int j, int k, int l);
// theta^* g for a monotone theta: [m] -> [n] given by its values.
Grid restrict_grid(const Category& c, const Grid& g, const std::vector<int>& theta);
Report certify_grid(const Waldhausen& w, const Grid& g);

// Cofibration chains from * with every certified quotient completion.
std::vector<Grid> enumerate_grids(const Waldhausen& w, int n, std::size_t budget = 200'000);

struct SnCat {
  int n = 0;
  std::vector<Grid> grids;
  KeyMap<int> grid_index;
  std::vector<std::vector<int>> comps;  // per morphism, one component per position
  KeyMap<int> mor_index;                // [source, target, components...]
  std::vector<std::array<int, 2>> ends;  // per morphism: (source, target)
  Waldhausen w;
  std::shared_ptr<const Waldhausen> base;

  int find_grid(const Grid& g) const;
  int find_mor(int x, int y, const std::vector<int>& comps) const;
};

SnCat s_n_category(const Waldhausen& c, int n, std::size_t budget = 200'000);

// Image of a grid morphism under a monotone theta, as a morphism of `to`.
int restrict_morphism(const SnCat& from, const SnCat& to, int f, const std::vector<int>& theta);
// S_n F for an exact functor F: C -> D, levelwise on grids.
Functor s_n_functor(const Functor& f, const SnCat& from, const SnCat& to);
// wS_n C: the wide subcategory of weak equivalences.
SubcategoryResult w_s_n(const SnCat& s);

// d_i or s_i on a grid; throws std::logic_error if the result fails certification.
Grid simplicial_operator(const Waldhausen& w, const Grid& g, bool face, int i);

// Level n = grids of S_n C, n <= n_max.
SSet object_simplicial_set(const Waldhausen& w, int n_max, std::size_t budget = 200'000);

// Compares grids of S_n(S_2 C) and S_2(S_n C) as functors Ar[n] x Ar[2] -> C.
Report check_sn_s2_swap(const Waldhausen& w, int n);

// (p, q) -> N(wS_p C)_q for p, q <= n_max, and its diagonal.
struct WNerve {
  BiSSet bi;
  SSet diag;
  std::vector<SnCat> levels;
};
WNerve diagonal_nerve_w(const Waldhausen& w, int n_max, std::size_t budget = 200'000);

json grid_to_json(const Category& c, const Grid& g);

}  // namespace waldkit
