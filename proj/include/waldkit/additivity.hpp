#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "waldkit/sdot.hpp"

namespace waldkit {

// f/(m, y): pullback of f: X -> Y along y: Delta[m] -> Y. Keys are [x, a]
// with a a simplex of Delta[m] (monotone value sequence).
struct LeftFiber {
  SSet set;
  SMap pi;
  SSet delta;
  int m = 0, y = -1;
};
LeftFiber left_fiber(const SSet& x, const SMap& f, const SSet& y, int m, int simplex);

// s_. and q_. on object simplicial sets of E(A, C, B).
struct AdditivitySetup {
  std::shared_ptr<const Waldhausen> c;
  SubWaldhausen a, b;
  std::shared_ptr<const ECat> e;
  SSet se, sa, sb;
  SMap f, g;
  int trunc = 0;
};
AdditivitySetup additivity_setup(const Waldhausen& c, const std::vector<char>& a_keep, const std::vector<char>& b_keep,
                                 int trunc, std::size_t budget = 200'000);

// A grid in E(A, C, B) unpacked into three C-grids and the column maps.
struct Triple {
  Grid a, c, b;
  std::vector<int> m, q;
  bool operator==(const Triple&) const = default;
};
Triple triple_of(const ECat& e, const Grid& g);
std::optional<Grid> egrid_of(const ECat& e, const Triple& t);

struct FiberSimplex {
  Triple t;
  Key alpha;
};

enum class Formulation { modern, classical };

// Reindexing of the top row in h: to_top sends the replaced columns to m,
// literal sends them to alpha(n).
enum class AlphaRule { to_top, literal };

// Pushout of f: A -> B along g: A >-> C for the middle-row entry (row, col).
using PushoutPicker = std::function<std::optional<Cocone>(int f, int g, int row, int col)>;

class FiberHomotopy {
 public:
  FiberHomotopy(std::shared_ptr<const AdditivitySetup> s, int m, int y, PushoutPicker pick = {},
                AlphaRule rule = AlphaRule::to_top);

  const LeftFiber& fiber() const { return fiber_; }
  const AdditivitySetup& setup() const { return *s_; }
  int m() const { return fiber_.m; }

  FiberSimplex decode(int n, int e) const;
  // Index in the fiber or -1 if t is not a fiber simplex.
  int encode(int n, const FiberSimplex& t) const;
  FiberSimplex restrict(const FiberSimplex& e, const std::vector<int>& theta) const;

  int r(int n, int e) const;
  int iota(int n, int b) const;
  // h^j_n with h^0 = iota r and h^{n+1} = Id; -1 when the result is not a fiber simplex.
  int modern(int n, int j, int e) const;
  // h_j: level n -> level n + 1, 0 <= j <= n.
  int classical(int n, int j, int e) const;
  // The region diagram: columns < cut from e, columns >= cut pushed out along the top.
  std::optional<FiberSimplex> build(const FiberSimplex& e, int cut, std::string* why = nullptr) const;

 private:
  std::shared_ptr<const AdditivitySetup> s_;
  LeftFiber fiber_;
  Grid top_;  // y as a C-grid
  PushoutPicker pick_;
  AlphaRule rule_;
  mutable std::vector<std::vector<std::vector<int>>> memo_modern_, memo_classical_;
};

struct HomotopyCertificate {
  Report report;
  long checked = 0, failed = 0;
  std::vector<std::string> counterexamples;  // first few, verbatim
  json to_json() const;
};

// Every identity instance with both sides inside the truncation, on levels n <= n_max.
HomotopyCertificate verify_homotopy_identities(const FiberHomotopy& h, Formulation form, int n_max);

// r iota = Id, r and iota simplicial, h^0 = iota r and h^{n+1} = Id.
Report verify_retraction(const FiberHomotopy& h);

struct AdditivityBounds {
  int m_max = 1, n_max = 2;
  bool modern = true, classical = true;
};

struct AdditivityReport {
  Report report;
  json detail;
};
AdditivityReport additivity_suite(const Waldhausen& c, const std::vector<char>& a_keep,
                                  const std::vector<char>& b_keep, const AdditivityBounds& bounds,
                                  PushoutPicker pick = {}, AlphaRule rule = AlphaRule::to_top);

// K_0(E(A, C, B)) against K_0(A) + K_0(B).
Report k0_additivity(const Waldhausen& c, const std::vector<char>& a_keep, const std::vector<char>& b_keep);

}  // namespace waldkit
