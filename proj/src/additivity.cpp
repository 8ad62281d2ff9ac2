#include "waldkit/additivity.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace waldkit {

namespace {

Grid translate(const Grid& g, const std::vector<int>& obj, const std::vector<int>& mor) {
  Grid r = g;
  for (auto& o : r.obj) o = obj[o];
  for (auto& f : r.h)
    if (f >= 0) f = mor[f];
  for (auto& f : r.v)
    if (f >= 0) f = mor[f];
  return r;
}

Grid translate_checked(const Grid& g, const std::vector<int>& obj, const std::vector<int>& mor) {
  Grid r = translate(g, obj, mor);
  for (int p = 0; p < grid_positions(g.n); ++p)
    if (r.obj[p] < 0 || (g.h[p] >= 0 && r.h[p] < 0) || (g.v[p] >= 0 && r.v[p] < 0))
      throw std::logic_error("grid leaves the subcategory");
  return r;
}

Key const_seq(int n, int v) { return Key(static_cast<std::size_t>(n + 1), v); }

}  // namespace

LeftFiber left_fiber(const SSet& x, const SMap& f, const SSet& y, int m, int simplex) {
  if (m < 0 || m > y.trunc || simplex < 0 || simplex >= y.size(m)) throw std::invalid_argument("left_fiber: no such simplex");
  LeftFiber out;
  out.m = m;
  out.y = simplex;
  out.delta = standard_simplex(m, x.trunc);
  SMap ymap;
  ymap.at.resize(out.delta.trunc + 1);
  for (int n = 0; n <= out.delta.trunc; ++n)
    for (const auto& k : out.delta.keys[n]) ymap.at[n].push_back(apply_op(y, m, simplex, k));
  auto pb = pullback(x, f, out.delta, ymap, y);
  out.set = std::move(pb.set);
  out.pi = std::move(pb.p1);
  return out;
}

Triple triple_of(const ECat& e, const Grid& g) {
  const Category& c = e.base->c();
  Triple t;
  t.a = t.c = t.b = g;
  int np = grid_positions(g.n);
  t.m.resize(np);
  t.q.resize(np);
  for (int p = 0; p < np; ++p) {
    const auto& s = e.seq[g.obj[p]];
    t.a.obj[p] = c.src[s.m];
    t.c.obj[p] = c.tgt[s.m];
    t.b.obj[p] = c.tgt[s.n];
    t.m[p] = s.m;
    t.q[p] = s.n;
    if (g.h[p] >= 0) {
      t.a.h[p] = e.comp[g.h[p]][0];
      t.c.h[p] = e.comp[g.h[p]][1];
      t.b.h[p] = e.comp[g.h[p]][2];
    }
    if (g.v[p] >= 0) {
      t.a.v[p] = e.comp[g.v[p]][0];
      t.c.v[p] = e.comp[g.v[p]][1];
      t.b.v[p] = e.comp[g.v[p]][2];
    }
  }
  return t;
}

std::optional<Grid> egrid_of(const ECat& e, const Triple& t) {
  Grid g = t.a;
  int n = g.n;
  for (int p = 0; p < grid_positions(n); ++p) {
    g.obj[p] = e.find(t.m[p], t.q[p]);
    if (g.obj[p] < 0) return std::nullopt;
  }
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      int p = grid_pos(n, i, j);
      if (j < n) {
        g.h[p] = e.find_mor(g.obj[p], g.obj[grid_pos(n, i, j + 1)], t.a.h[p], t.c.h[p], t.b.h[p]);
        if (g.h[p] < 0) return std::nullopt;
      }
      if (i < j) {
        g.v[p] = e.find_mor(g.obj[p], g.obj[grid_pos(n, i + 1, j)], t.a.v[p], t.c.v[p], t.b.v[p]);
        if (g.v[p] < 0) return std::nullopt;
      }
    }
  return g;
}

AdditivitySetup additivity_setup(const Waldhausen& c, const std::vector<char>& a_keep, const std::vector<char>& b_keep,
                                 int trunc, std::size_t budget) {
  AdditivitySetup s;
  s.c = std::make_shared<Waldhausen>(c);
  s.trunc = trunc;
  s.a = sub_waldhausen(c, a_keep, "A");
  s.b = sub_waldhausen(c, b_keep, "B");
  s.e = std::make_shared<ECat>(e_category(c, a_keep, b_keep, "E(A,C,B)"));
  s.se = object_simplicial_set(s.e->w, trunc, budget);
  s.sa = object_simplicial_set(s.a.w, trunc, budget);
  s.sb = object_simplicial_set(s.b.w, trunc, budget);
  s.f.at.resize(trunc + 1);
  s.g.at.resize(trunc + 1);
  for (int n = 0; n <= trunc; ++n)
    for (const auto& k : s.se.keys[n]) {
      auto t = triple_of(*s.e, grid_from_key(k));
      int fa = s.sa.find(n, translate_checked(t.a, s.a.sub.obj_back, s.a.sub.mor_back).key());
      int gb = s.sb.find(n, translate_checked(t.b, s.b.sub.obj_back, s.b.sub.mor_back).key());
      if (fa < 0 || gb < 0) throw std::logic_error("additivity_setup: row is not a grid of the subcategory");
      s.f.at[n].push_back(fa);
      s.g.at[n].push_back(gb);
    }
  return s;
}

FiberHomotopy::FiberHomotopy(std::shared_ptr<const AdditivitySetup> s, int m, int y, PushoutPicker pick, AlphaRule rule)
    : s_(std::move(s)), pick_(std::move(pick)), rule_(rule) {
  fiber_ = left_fiber(s_->se, s_->f, s_->sa, m, y);
  top_ = translate(grid_from_key(s_->sa.keys[m][y]), s_->a.sub.inclusion.obj, s_->a.sub.inclusion.mor);
  if (!pick_) {
    auto c = s_->c;
    pick_ = [c](int f, int g, int, int) -> std::optional<Cocone> {
      if (auto p = c->chooser(f, g)) return p;
      auto all = all_pushouts(c->c(), f, g);
      if (all.empty()) return std::nullopt;
      return all.front();
    };
  }
  int t = fiber_.set.trunc;
  memo_modern_.resize(t + 1);
  memo_classical_.resize(t + 1);
  for (int n = 0; n <= t; ++n) {
    memo_modern_[n].assign(n + 2, std::vector<int>(fiber_.set.size(n), -2));
    memo_classical_[n].assign(n + 1, std::vector<int>(fiber_.set.size(n), -2));
  }
}

FiberSimplex FiberHomotopy::decode(int n, int e) const {
  const Key& k = fiber_.set.keys[n][e];
  return {triple_of(*s_->e, grid_from_key(s_->se.keys[n][k[0]])), fiber_.delta.keys[n][k[1]]};
}

int FiberHomotopy::encode(int n, const FiberSimplex& t) const {
  auto g = egrid_of(*s_->e, t.t);
  if (!g || n > fiber_.set.trunc) return -1;
  int x = s_->se.find(n, g->key());
  int a = fiber_.delta.find(n, t.alpha);
  if (x < 0 || a < 0) return -1;
  return fiber_.set.find(n, {x, a});
}

FiberSimplex FiberHomotopy::restrict(const FiberSimplex& e, const std::vector<int>& theta) const {
  const Category& c = s_->c->c();
  FiberSimplex r;
  r.t.a = restrict_grid(c, e.t.a, theta);
  r.t.c = restrict_grid(c, e.t.c, theta);
  r.t.b = restrict_grid(c, e.t.b, theta);
  int n = e.t.a.n, k = static_cast<int>(theta.size()) - 1;
  r.t.m.resize(grid_positions(k));
  r.t.q.resize(grid_positions(k));
  for (int i = 0; i <= k; ++i)
    for (int j = i; j <= k; ++j) {
      r.t.m[grid_pos(k, i, j)] = e.t.m[grid_pos(n, theta[i], theta[j])];
      r.t.q[grid_pos(k, i, j)] = e.t.q[grid_pos(n, theta[i], theta[j])];
    }
  for (int v : theta) r.alpha.push_back(e.alpha[v]);
  return r;
}

int FiberHomotopy::r(int n, int e) const { return s_->g.at[n][fiber_.set.keys[n][e][0]]; }

int FiberHomotopy::iota(int n, int b) const {
  const Waldhausen& w = *s_->c;
  const Category& c = w.c();
  FiberSimplex t;
  t.t.b = translate(grid_from_key(s_->sb.keys[n][b]), s_->b.sub.inclusion.obj, s_->b.sub.inclusion.mor);
  t.t.c = t.t.b;
  t.alpha = const_seq(n, fiber_.m);
  t.t.a = restrict_grid(c, top_, t.alpha);
  for (int p = 0; p < grid_positions(n); ++p) {
    t.t.m.push_back(w.from_zero(t.t.b.obj[p]));
    t.t.q.push_back(c.ident[t.t.b.obj[p]]);
  }
  return encode(n, t);
}

std::optional<FiberSimplex> FiberHomotopy::build(const FiberSimplex& e, int cut, std::string* why) const {
  const Waldhausen& w = *s_->c;
  const Category& c = w.c();
  const Triple& t = e.t;
  int n = t.a.n;
  const Key& al = e.alpha;
  int top = rule_ == AlphaRule::to_top ? fiber_.m : al.back();
  auto pos = [n](int i, int j) { return grid_pos(n, i, j); };
  auto fail = [&](const std::string& s) -> std::optional<FiberSimplex> {
    if (why) *why = s;
    return std::nullopt;
  };

  FiberSimplex out;
  for (int s = 0; s <= n; ++s) out.alpha.push_back(s < cut ? al[s] : top);
  Triple& u = out.t;
  u.a = restrict_grid(c, top_, out.alpha);
  u.b = t.b;
  u.c = t.c;
  u.m = t.m;
  u.q = t.q;

  // Pushouts for region II: s < cut <= k.
  std::vector<std::vector<Cocone>> P(n + 1, std::vector<Cocone>(n + 1));
  auto amap = [&](int s, int k) { return mor_between(c, top_, al[s], al[k], al[s], top); };
  auto tilde = [&](int s) { return mor_between(c, top_, al[s], top, al[s + 1], top); };
  for (int s = 0; s < cut; ++s)
    for (int k = std::max(cut, s); k <= n; ++k) {
      auto p = pick_(amap(s, k), t.m[pos(s, k)], s, k);
      if (!p) return fail("no pushout at (" + join_ints({s, k}) + ")");
      P[s][k] = *p;
    }

  for (int s = 0; s <= n; ++s)
    for (int k = s; k <= n; ++k) {
      int p = pos(s, k);
      if (k < cut) continue;  // region I
      if (s < cut) {          // region II
        const Cocone& x = P[s][k];
        int at = top_.obj[grid_pos(top_.n, al[s], top)];
        u.c.obj[p] = x.obj;
        u.m[p] = x.leg_b;
        u.q[p] = mediate(c, x, c.c(w.from_zero(t.b.obj[p]), w.to_zero(at)), t.q[p]);
        if (u.q[p] < 0) return fail("no quotient at (" + join_ints({s, k}) + ")");
      } else {  // region III
        u.c.obj[p] = t.b.obj[p];
        u.m[p] = w.from_zero(t.b.obj[p]);
        u.q[p] = c.ident[t.b.obj[p]];
      }
    }

  for (int s = 0; s <= n; ++s)
    for (int k = s; k <= n; ++k) {
      int p = pos(s, k);
      if (k < n) {
        int k1 = k + 1;
        if (s >= cut)
          u.c.h[p] = t.b.h[p];
        else if (k1 < cut)
          u.c.h[p] = t.c.h[p];
        else if (k < cut)
          u.c.h[p] = c.c(P[s][k1].leg_c, t.c.h[p]);
        else
          u.c.h[p] = mediate(c, P[s][k], P[s][k1].leg_b, c.c(P[s][k1].leg_c, t.c.h[p]));
        if (u.c.h[p] < 0) return fail("no horizontal map at (" + join_ints({s, k}) + ")");
      }
      if (s < k) {
        int s1 = s + 1;
        if (k < cut)
          u.c.v[p] = t.c.v[p];
        else if (s >= cut)
          u.c.v[p] = t.b.v[p];
        else if (s1 >= cut)
          u.c.v[p] = c.c(t.b.v[p], u.q[p]);
        else
          u.c.v[p] = mediate(c, P[s][k], c.c(P[s1][k].leg_b, tilde(s)), c.c(P[s1][k].leg_c, t.c.v[p]));
        if (u.c.v[p] < 0) return fail("no vertical map at (" + join_ints({s, k}) + ")");
      }
    }
  return out;
}

int FiberHomotopy::modern(int n, int j, int e) const {
  int& slot = memo_modern_[n][j][e];
  if (slot != -2) return slot;
  if (j == 0)
    slot = iota(n, r(n, e));
  else if (j == n + 1)
    slot = e;
  else {
    auto b = build(decode(n, e), j);
    slot = b ? encode(n, *b) : -1;
  }
  return slot;
}

int FiberHomotopy::classical(int n, int j, int e) const {
  if (n + 1 > fiber_.set.trunc) throw std::out_of_range("classical: level beyond truncation");
  int& slot = memo_classical_[n][j][e];
  if (slot != -2) return slot;
  auto b = build(restrict(decode(n, e), degen_theta(n, j)), j + 1);
  slot = b ? encode(n + 1, *b) : -1;
  return slot;
}

json HomotopyCertificate::to_json() const {
  return {{"checked", checked}, {"failed", failed}, {"counterexamples", counterexamples}, {"clauses", report.to_json()}};
}

namespace {

struct Tally {
  long checked = 0, failed = 0;
  std::string first;
};

}  // namespace

HomotopyCertificate verify_homotopy_identities(const FiberHomotopy& h, Formulation form, int n_max) {
  const SSet& x = h.fiber().set;
  int T = x.trunc;
  std::map<std::string, Tally> tally;
  std::vector<std::string> order;
  HomotopyCertificate cert;
  auto record = [&](const std::string& id, int n, int e, int lhs, int rhs, const std::string& what) {
    if (!tally.count(id)) order.push_back(id);
    auto& t = tally[id];
    ++t.checked;
    ++cert.checked;
    if (lhs >= 0 && lhs == rhs) return;
    ++t.failed;
    ++cert.failed;
    std::string ce = id + " " + what + " at n=" + std::to_string(n) + " e=" + x.names[n][e] + " (" +
                     std::to_string(lhs) + " vs " + std::to_string(rhs) + ")";
    if (t.first.empty()) t.first = ce;
    if (cert.counterexamples.size() < 8) cert.counterexamples.push_back(ce);
  };
  auto defined = [&](const std::string& id, int n, int e, int v, const std::string& what) {
    if (v >= 0) return true;
    record(id, n, e, -1, -1, what);
    return false;
  };
  auto tag = [](const char* op, int i, const char* hj, int j) {
    return std::string(op) + std::to_string(i) + " " + hj + std::to_string(j);
  };

  if (form == Formulation::modern) {
    for (int n = 0; n <= std::min(n_max, T); ++n)
      for (int e = 0; e < x.size(n); ++e)
        for (int j = 0; j <= n + 1; ++j) {
          int H = h.modern(n, j, e);
          if (!defined("defined", n, e, H, "h^" + std::to_string(j))) continue;
          if (n >= 1)
            for (int i = 0; i <= n; ++i) {
              int de = x.d(n, e, i);
              int rhs = i < j ? h.modern(n - 1, j - 1, de) : h.modern(n - 1, j, de);
              std::string id = i < j ? "d_i h^j = h^{j-1} d_i (i<j)" : "d_i h^j = h^j d_i (i>=j)";
              record(id, n, e, x.d(n, H, i), rhs, tag("d", i, "h^", j));
            }
          if (n + 1 <= T)
            for (int i = 0; i <= n; ++i) {
              int se = x.s(n, e, i);
              int rhs = i < j ? h.modern(n + 1, j + 1, se) : h.modern(n + 1, j, se);
              std::string id = i < j ? "s_i h^j = h^{j+1} s_i (i<j)" : "s_i h^j = h^j s_i (i>=j)";
              record(id, n, e, x.s(n, H, i), rhs, tag("s", i, "h^", j));
            }
        }
  } else {
    for (int n = 0; n <= std::min(n_max, T - 1); ++n)
      for (int e = 0; e < x.size(n); ++e)
        for (int j = 0; j <= n; ++j) {
          int H = h.classical(n, j, e);
          if (!defined("defined", n, e, H, "h_" + std::to_string(j))) continue;
          for (int i = 0; i <= n + 1; ++i) {
            int lhs = x.d(n + 1, H, i);
            std::string what = tag("d", i, "h_", j);
            if (i == 0 && j == 0)
              record("d_0 h_0 = iota r", n, e, lhs, h.modern(n, 0, e), what);
            else if (i == n + 1 && j == n)
              record("d_{n+1} h_n = Id", n, e, lhs, e, what);
            else if (i < j)
              record("d_i h_j = h_{j-1} d_i (i<j)", n, e, lhs, h.classical(n - 1, j - 1, x.d(n, e, i)), what);
            else if (i == j) {
              int prev = h.classical(n, j - 1, e);
              record("d_j h_j = d_j h_{j-1} (j>0)", n, e, lhs, prev < 0 ? -1 : x.d(n + 1, prev, j), what);
            } else if (i > j + 1)
              record("d_i h_j = h_j d_{i-1} (i>j+1)", n, e, lhs, h.classical(n - 1, j, x.d(n, e, i - 1)), what);
          }
          if (n + 2 <= T)
            for (int i = 0; i <= n + 1; ++i) {
              int lhs = x.s(n + 1, H, i);
              std::string what = tag("s", i, "h_", j);
              if (i <= j)
                record("s_i h_j = h_{j+1} s_i (i<=j)", n, e, lhs, h.classical(n + 1, j + 1, x.s(n, e, i)), what);
              else
                record("s_i h_j = h_j s_{i-1} (i>j)", n, e, lhs, h.classical(n + 1, j, x.s(n, e, i - 1)), what);
            }
        }
  }
  for (const auto& id : order) {
    const auto& t = tally[id];
    cert.report.add(id, t.failed == 0,
                    t.failed ? std::to_string(t.failed) + "/" + std::to_string(t.checked) + " fail; " + t.first
                             : std::to_string(t.checked) + " instances");
  }
  return cert;
}

Report verify_retraction(const FiberHomotopy& h) {
  const SSet& x = h.fiber().set;
  const SSet& b = h.setup().sb;
  Report rep;
  SMap r, io;
  r.at.resize(x.trunc + 1);
  io.at.resize(x.trunc + 1);
  std::string wit;
  for (int n = 0; n <= x.trunc; ++n) {
    for (int e = 0; e < x.size(n); ++e) r.at[n].push_back(h.r(n, e));
    for (int y = 0; y < b.size(n); ++y) {
      int v = h.iota(n, y);
      io.at[n].push_back(v);
      if (wit.empty() && (v < 0 || h.r(n, v) != y)) wit = "n=" + std::to_string(n) + " " + b.names[n][y];
    }
  }
  rep.add("r_iota_identity", wit.empty(), wit);
  if (!wit.empty()) return rep;
  rep.merge(check_simplicial_map(x, b, r), "r.");
  rep.merge(check_simplicial_map(b, x, io), "iota.");

  std::string w0, wt;
  for (int n = 0; n <= x.trunc; ++n)
    for (int e = 0; e < x.size(n); ++e) {
      auto d = h.decode(n, e);
      auto b0 = h.build(d, 0);
      if (w0.empty() && (!b0 || h.encode(n, *b0) != h.iota(n, h.r(n, e)))) w0 = x.names[n][e];
      auto bt = h.build(d, n + 1);
      if (wt.empty() && (!bt || h.encode(n, *bt) != e)) wt = x.names[n][e];
    }
  rep.add("cut_0_is_iota_r", w0.empty(), w0);
  rep.add("full_cut_is_identity", wt.empty(), wt);
  return rep;
}

Report k0_additivity(const Waldhausen& c, const std::vector<char>& a_keep, const std::vector<char>& b_keep) {
  auto a = sub_waldhausen(c, a_keep, "A");
  auto b = sub_waldhausen(c, b_keep, "B");
  auto e = e_category(c, a_keep, b_keep, "E(A,C,B)");
  auto ke = k0(e.w).group, ka = k0(a.w).group, kb = k0(b.w).group;
  Report r;
  r.add("k0_E_is_A_plus_B", ke == direct_sum(ka, kb), "K0(E)=" + ke.str() + " K0(A)+K0(B)=" + direct_sum(ka, kb).str());
  return r;
}

AdditivityReport additivity_suite(const Waldhausen& c, const std::vector<char>& a_keep,
                                  const std::vector<char>& b_keep, const AdditivityBounds& bounds,
                                  PushoutPicker pick, AlphaRule rule) {
  int T = bounds.n_max + (bounds.classical ? 2 : 1);
  auto s = std::make_shared<const AdditivitySetup>(additivity_setup(c, a_keep, b_keep, T));
  AdditivityReport out;
  Report& rep = out.report;
  rep.add("A_conditions", s->a.condition.ok(), s->a.condition.first_failure() ? s->a.condition.first_failure()->name : "",
          true);
  rep.add("B_conditions", s->b.condition.ok(), s->b.condition.first_failure() ? s->b.condition.first_failure()->name : "",
          true);
  out.detail = json::object();
  out.detail["levels"] = {{"sE", s->se.level_sizes()}, {"sA", s->sa.level_sizes()}, {"sB", s->sb.level_sizes()}};
  json fibers = json::array();

  bool retract_ok = true, modern_ok = true, classical_ok = true, pi0_ok = true, h_ok = true;
  std::string retract_w, modern_w, classical_w, pi0_w, h_w;
  long m_checked = 0, m_failed = 0, c_checked = 0, c_failed = 0;
  for (int m = 0; m <= std::min(bounds.m_max, T); ++m)
    for (int y = 0; y < s->sa.size(m); ++y) {
      FiberHomotopy h(s, m, y, pick, rule);
      std::string label = "m=" + std::to_string(m) + " y=" + s->sa.names[m][y];
      json fj = {{"m", m}, {"y", s->sa.names[m][y]}, {"levels", h.fiber().set.level_sizes()}};
      auto ret = verify_retraction(h);
      fj["retraction"] = ret.to_json();
      if (!ret.ok() && retract_ok) {
        retract_ok = false;
        retract_w = label + ": " + ret.first_failure()->name + " " + ret.first_failure()->witness;
      }
      if (bounds.modern) {
        auto cert = verify_homotopy_identities(h, Formulation::modern, bounds.n_max);
        m_checked += cert.checked;
        m_failed += cert.failed;
        fj["modern"] = cert.to_json();
        if (cert.failed && modern_ok) {
          modern_ok = false;
          modern_w = label + ": " + cert.counterexamples.front();
        }
      }
      if (bounds.classical) {
        auto cert = verify_homotopy_identities(h, Formulation::classical, bounds.n_max);
        c_checked += cert.checked;
        c_failed += cert.failed;
        fj["classical"] = cert.to_json();
        if (cert.failed && classical_ok) {
          classical_ok = false;
          classical_w = label + ": " + cert.counterexamples.front();
        }
      }
      int cf = 0, cb = 0;
      auto comp_f = components(h.fiber().set, &cf);
      auto comp_b = components(s->sb, &cb);
      std::vector<int> image(cf, -1);
      bool bij = cf == cb;
      for (int v = 0; v < h.fiber().set.size(0) && bij; ++v) {
        int t = comp_b[h.r(0, v)];
        if (image[comp_f[v]] < 0)
          image[comp_f[v]] = t;
        else if (image[comp_f[v]] != t)
          bij = false;
      }
      std::vector<int> sorted = image;
      std::sort(sorted.begin(), sorted.end());
      bij = bij && std::unique(sorted.begin(), sorted.end()) == sorted.end() && (sorted.empty() || sorted.front() >= 0);
      fj["pi0"] = {{"fiber", cf}, {"B", cb}, {"bijection", bij}};
      if (!bij && pi0_ok) {
        pi0_ok = false;
        pi0_w = label;
      }
      int deg = std::min(1, T - 1);
      auto hf = homology(h.fiber().set, deg), hb = homology(s->sb, deg);
      json hj = json::array();
      for (int d = 0; d <= std::min(hf.valid_upto, hb.valid_upto); ++d) {
        hj.push_back({{"degree", d}, {"fiber", hf.groups[d].str()}, {"B", hb.groups[d].str()}});
        if (hf.groups[d] != hb.groups[d] && h_ok) {
          h_ok = false;
          h_w = label + " H" + std::to_string(d);
        }
      }
      fj["homology"] = hj;
      fibers.push_back(fj);
    }
  rep.add("retraction", retract_ok, retract_w);
  if (bounds.modern)
    rep.add("identities_modern", modern_ok,
            modern_ok ? std::to_string(m_checked) + " instances" : std::to_string(m_failed) + " failures; " + modern_w);
  if (bounds.classical)
    rep.add("identities_classical", classical_ok,
            classical_ok ? std::to_string(c_checked) + " instances"
                         : std::to_string(c_failed) + " failures; " + classical_w);
  rep.add("pi0_bijection", pi0_ok, pi0_w, true);
  rep.add("homology_agrees", h_ok, h_w, true);
  rep.merge(k0_additivity(c, a_keep, b_keep), "");
  out.detail["fibers"] = fibers;
  out.detail["totals"] = {{"modern", {{"checked", m_checked}, {"failed", m_failed}}},
                          {"classical", {{"checked", c_checked}, {"failed", c_failed}}}};
  return out;
}

}  // namespace waldkit
