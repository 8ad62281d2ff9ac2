#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "waldkit/common.hpp"
#include "waldkit/snf.hpp"

namespace waldkit {

// Levels 0..trunc of a simplicial set with explicit operator tables.
// faces[n][x][i] = d_i x (n >= 1); degens[n][x][i] = s_i x (n < trunc).
struct SSet {
  int trunc = 0;
  std::optional<int> cosk;
  std::vector<std::vector<Key>> keys;
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<std::vector<int>>> faces;
  std::vector<std::vector<std::vector<int>>> degens;
  std::vector<KeyMap<int>> index;

  int size(int n) const { return static_cast<int>(keys[n].size()); }
  int d(int n, int x, int i) const { return faces[n][x][i]; }
  int s(int n, int x, int i) const { return degens[n][x][i]; }
  int find(int n, const Key& k) const {
    auto it = index[n].find(k);
    return it == index[n].end() ? -1 : it->second;
  }
  std::vector<int> level_sizes() const;
};

// Per-level assignment; at[n][x] is the image of x in the target.
struct SMap {
  std::vector<std::vector<int>> at;
};

// Description of a simplicial set by keys and operators on keys.
struct SimplicialModel {
  int trunc = 0;
  std::optional<int> cosk;
  std::vector<std::vector<Key>> levels;
  std::function<Key(int n, const Key& x, int i)> face;
  std::function<Key(int n, const Key& x, int i)> degen;
  std::function<std::string(int n, const Key& x)> name;
};

// Tabulates a model. Throws std::logic_error if an operator leaves the levels.
SSet build_sset(const SimplicialModel& model);

enum class ComplexKind { standard, boundary, horn, interval_groupoid };

SSet basic_complex(ComplexKind kind, int n, std::optional<int> k, int trunc);
SSet standard_simplex(int n, int trunc);
SSet boundary_simplex(int n, int trunc);
SSet horn(int n, int k, int trunc);
SSet interval_groupoid(int n, int trunc);

SSet truncate(const SSet& x, int trunc);

// Product with keys [x, y]; projections optional.
SSet product(const SSet& x, const SSet& y, SMap* p1 = nullptr, SMap* p2 = nullptr);

struct PullbackResult {
  SSet set;
  SMap p1, p2;
};

// Fiber product of f: X -> Z and g: Y -> Z with keys [x, y].
PullbackResult pullback(const SSet& x, const SMap& f, const SSet& y, const SMap& g, const SSet& z);

// Sub simplicial set on the simplices with keep[n][x]; throws if not closed.
SSet subcomplex(const SSet& x, const std::vector<std::vector<char>>& keep, SMap* inclusion = nullptr);

SMap identity_map(const SSet& x);
SMap compose(const SMap& g, const SMap& f);
Report check_simplicial_map(const SSet& x, const SSet& y, const SMap& f);

// alpha^* x for a monotone alpha: [k] -> [n] given by its values.
int apply_op(const SSet& x, int n, int simplex, const std::vector<int>& alpha);

std::vector<char> nondegenerate(const SSet& x, int n);

Report validate_simplicial_identities(const SSet& x);
Report check_eilenberg_zilber(const SSet& x);

struct HomologyResult {
  std::vector<AbelianGroup> groups;  // degrees 0..valid_upto
  int valid_upto = -1;
  std::string str() const;
  json to_json() const;
};

// Integral homology of the normalized complex through max_degree <= trunc-1.
HomologyResult homology(const SSet& x, int max_degree);

// pi_0 as a component label per vertex.
std::vector<int> components(const SSet& x, int* count = nullptr);

// Doubly indexed levels with horizontal (first index) and vertical operators.
struct BiSSet {
  int t1 = 0, t2 = 0;
  std::vector<std::vector<std::vector<std::string>>> names;
  std::vector<std::vector<std::vector<std::vector<int>>>> hface, vface, hdeg, vdeg;
  int size(int p, int q) const { return static_cast<int>(names[p][q].size()); }
};

SSet diagonal(const BiSSet& b);
BiSSet external_product(const SSet& x, const SSet& y);
Report validate_bisimplicial(const BiSSet& b);

// Maps tr_k S -> tr_k X for k = min(2, S.trunc). A map is the vector of
// images per level 0..k. fixed (optional) prescribes images, -1 = free.
// The callback returns false to stop.
using LevelImages = std::vector<std::vector<int>>;
void for_each_map(const SSet& s, const SSet& x, const LevelImages* fixed,
                  const std::function<bool(const LevelImages&)>& visit, std::size_t budget = 5'000'000);

// Unique simplex of a coskeletal X at level n with the given 2-skeleton
// (images of vertices, edges, triangles of Delta[n] in lexicographic order).
// Returns -1 if none exists.
int extend_from_skeleton(const SSet& x, int n, const LevelImages& skeleton);

// X^A with level m = maps A x Delta[m] -> X stored on levels 0..2.
// With `vertices`, only maps whose slices A x {j} are among the given maps
// (images on levels 0..2 of A) are kept; vertex j of Delta[m] is the j-th factor.
SSet cotensor_into_coskeletal(const SSet& a, const SSet& x, int up_to,
                              const std::vector<LevelImages>* vertices = nullptr);

json to_json(const SSet& x);
SSet sset_from_json(const json& j);

}  // namespace waldkit
