#include "waldkit/sdot.hpp"

#include <algorithm>
#include <stdexcept>

namespace waldkit {

int grid_positions(int n) { return (n + 1) * (n + 2) / 2; }

int grid_pos(int n, int i, int j) { return i * (n + 1) - i * (i - 1) / 2 + (j - i); }

Key Grid::key() const {
  Key k{n};
  k.insert(k.end(), obj.begin(), obj.end());
  k.insert(k.end(), h.begin(), h.end());
  k.insert(k.end(), v.begin(), v.end());
  return k;
}

namespace {

Grid empty_grid(int n) {
  Grid g;
  g.n = n;
  int np = grid_positions(n);
  g.obj.assign(np, -1);
  g.h.assign(np, -1);
  g.v.assign(np, -1);
  return g;
}

std::optional<Cocone> some_pushout(const Waldhausen& w, int f, int g) {
  if (auto p = w.chooser(f, g)) return p;
  auto all = all_pushouts(w.c(), f, g);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::string grid_name(const Category& c, const Grid& g) {
  std::string s = "S" + std::to_string(g.n) + "(";
  for (int j = 0; j < g.n; ++j) s += (j ? " " : "") + c.mor_name[g.h[grid_pos(g.n, 0, j)]];
  std::string q;
  for (int k = 2; k <= g.n; ++k)
    for (int j = 1; j < k; ++j) q += (q.empty() ? "" : " ") + c.mor_name[mor_between(c, g, 0, k, j, k)];
  if (!q.empty()) s += " | " + q;
  return s + ")";
}

int lookup(const KeyMap<int>& m, const Key& k) {
  auto it = m.find(k);
  return it == m.end() ? -1 : it->second;
}

}  // namespace

Grid grid_from_key(const Key& k) {
  Grid g;
  g.n = k[0];
  auto np = static_cast<std::size_t>(grid_positions(g.n));
  g.obj.assign(k.begin() + 1, k.begin() + 1 + np);
  g.h.assign(k.begin() + 1 + np, k.begin() + 1 + 2 * np);
  g.v.assign(k.begin() + 1 + 2 * np, k.begin() + 1 + 3 * np);
  return g;
}

std::vector<int> face_theta(int n, int i) {
  std::vector<int> t;
  for (int a = 0; a <= n; ++a)
    if (a != i) t.push_back(a);
  return t;
}

std::vector<int> degen_theta(int n, int i) {
  std::vector<int> t;
  for (int a = 0; a <= n; ++a) {
    t.push_back(a);
    if (a == i) t.push_back(a);
  }
  return t;
}

Category arrow_category(int n) {
  CategoryBuilder b("Ar[" + std::to_string(n) + "]");
  std::vector<std::array<int, 2>> at;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      b.add_object("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      at.push_back({i, j});
    }
  KeyMap<int> idx;
  int np = grid_positions(n);
  for (int x = 0; x < np; ++x)
    for (int y = 0; y < np; ++y)
      if (at[x][0] <= at[y][0] && at[x][1] <= at[y][1]) {
        int f = b.add_morphism(x, y, "(" + join_ints({at[x][0], at[x][1]}) + ")<=(" + join_ints({at[y][0], at[y][1]}) + ")");
        idx.emplace(Key{x, y}, f);
        if (x == y) b.set_identity(x, f);
      }
  std::vector<std::array<int, 2>> ends;
  for (int x = 0; x < np; ++x)
    for (int y = 0; y < np; ++y)
      if (at[x][0] <= at[y][0] && at[x][1] <= at[y][1]) ends.push_back({x, y});
  return b.finish([&](int g, int f) { return lookup(idx, {ends[f][0], ends[g][1]}); });
}

int mor_between(const Category& c, const Grid& g, int i, int j, int k, int l) {
  int f = c.ident[g.obj[grid_pos(g.n, i, j)]];
  for (int t = j; t < l; ++t) f = c.c(g.h[grid_pos(g.n, i, t)], f);
  for (int s = i; s < k; ++s) f = c.c(g.v[grid_pos(g.n, s, l)], f);
  return f;
}

Grid restrict_grid(const Category& c, const Grid& g, const std::vector<int>& theta) {
  int m = static_cast<int>(theta.size()) - 1;
  Grid r = empty_grid(m);
  for (int a = 0; a <= m; ++a)
    for (int b = a; b <= m; ++b) {
      int p = grid_pos(m, a, b);
      r.obj[p] = g.obj[grid_pos(g.n, theta[a], theta[b])];
      if (b < m) r.h[p] = mor_between(c, g, theta[a], theta[b], theta[a], theta[b + 1]);
      if (a < b) r.v[p] = mor_between(c, g, theta[a], theta[b], theta[a + 1], theta[b]);
    }
  return r;
}

Report certify_grid(const Waldhausen& w, const Grid& g) {
  const Category& c = w.c();
  Report r;
  int n = g.n;
  std::string wit;
  for (int i = 0; i <= n && wit.empty(); ++i)
    if (g.obj[grid_pos(n, i, i)] != w.zero) wit = "(" + join_ints({i, i}) + ")";
  r.add("zero_diagonal", wit.empty(), wit);

  wit.clear();
  for (int i = 0; i <= n && wit.empty(); ++i)
    for (int j = i; j <= n && wit.empty(); ++j) {
      int p = grid_pos(n, i, j);
      if (j < n) {
        int f = g.h[p];
        if (f < 0 || c.src[f] != g.obj[p] || c.tgt[f] != g.obj[grid_pos(n, i, j + 1)]) wit = "h(" + join_ints({i, j}) + ")";
      }
      if (i < j) {
        int f = g.v[p];
        if (f < 0 || c.src[f] != g.obj[p] || c.tgt[f] != g.obj[grid_pos(n, i + 1, j)]) wit = "v(" + join_ints({i, j}) + ")";
      }
    }
  r.add("arrows_typed", wit.empty(), wit);
  if (!wit.empty()) return r;

  for (int i = 0; i < n && wit.empty(); ++i)
    for (int j = i + 1; j < n && wit.empty(); ++j)
      if (c.c(g.v[grid_pos(n, i, j + 1)], g.h[grid_pos(n, i, j)]) !=
          c.c(g.h[grid_pos(n, i + 1, j)], g.v[grid_pos(n, i, j)]))
        wit = "(" + join_ints({i, j}) + ")";
  r.add("functorial", wit.empty(), wit);

  for (int i = 0; i <= n && wit.empty(); ++i)
    for (int j = i; j <= n && wit.empty(); ++j)
      for (int k = j + 1; k <= n && wit.empty(); ++k)
        if (!w.cof[mor_between(c, g, i, j, i, k)]) wit = "(" + join_ints({i, j, k}) + ")";
  r.add("cofibrations", wit.empty(), wit);

  for (int i = 0; i <= n && wit.empty(); ++i)
    for (int j = i + 1; j <= n && wit.empty(); ++j)
      for (int k = j + 1; k <= n && wit.empty(); ++k) {
        Cocone p{g.obj[grid_pos(n, j, k)], mor_between(c, g, j, j, j, k), mor_between(c, g, i, k, j, k)};
        if (!is_pushout(c, mor_between(c, g, i, j, j, j), mor_between(c, g, i, j, i, k), p))
          wit = "(" + join_ints({i, j, k}) + ")";
      }
  r.add("pushout_squares", wit.empty(), wit);
  return r;
}

std::vector<Grid> enumerate_grids(const Waldhausen& w, int n, std::size_t budget) {
  const Category& c = w.c();
  std::vector<Grid> out;
  if (n == 0) {
    Grid g = empty_grid(0);
    g.obj[0] = w.zero;
    out.push_back(g);
    return out;
  }
  std::vector<std::array<int, 2>> pairs;  // (j, k), 1 <= j < k <= n
  for (int k = 2; k <= n; ++k)
    for (int j = 1; j < k; ++j) pairs.push_back({j, k});

  std::vector<int> chain;
  std::size_t visited = 0;
  auto complete = [&]() {
    std::vector<int> a{w.zero};
    for (int f : chain) a.push_back(c.tgt[f]);
    auto u = [&](int j, int k) {
      int f = c.ident[a[j]];
      for (int t = j; t < k; ++t) f = c.c(chain[t], f);
      return f;
    };
    std::vector<std::vector<Cocone>> options;
    for (auto [j, k] : pairs) {
      options.push_back(all_pushouts(c, w.to_zero(a[j]), u(j, k)));
      if (options.back().empty()) return;
    }
    std::vector<std::size_t> pick(pairs.size(), 0);
    while (true) {
      charge(++visited, budget, "enumerate_grids");
      // P[i][k]: cocone under A0i -> *, A0i -> A0k, leg_c = quotient A0k -> A(i,k).
      std::vector<std::vector<Cocone>> cone(n + 1, std::vector<Cocone>(n + 1));
      for (std::size_t t = 0; t < pairs.size(); ++t) cone[pairs[t][0]][pairs[t][1]] = options[t][pick[t]];
      for (int k = 1; k <= n; ++k) cone[k][k] = {w.zero, c.ident[w.zero], w.to_zero(a[k])};
      Grid g = empty_grid(n);
      bool ok = true;
      for (int i = 0; i <= n && ok; ++i)
        for (int k = i; k <= n && ok; ++k) {
          int p = grid_pos(n, i, k);
          g.obj[p] = i == 0 ? a[k] : cone[i][k].obj;
          if (k < n) {
            if (i == 0)
              g.h[p] = chain[k];
            else if (i == k)
              g.h[p] = w.from_zero(cone[i][k + 1].obj);
            else
              g.h[p] = mediate(c, cone[i][k], w.from_zero(cone[i][k + 1].obj), c.c(cone[i][k + 1].leg_c, chain[k]));
          }
          if (i < k) {
            if (i == 0)
              g.v[p] = cone[1][k].leg_c;
            else
              g.v[p] = mediate(c, cone[i][k], w.from_zero(cone[i + 1][k].obj), cone[i + 1][k].leg_c);
          }
          ok = (k == n || g.h[p] >= 0) && (i == k || g.v[p] >= 0);
        }
      if (ok && certify_grid(w, g).ok()) out.push_back(std::move(g));
      std::size_t t = 0;
      while (t < pick.size() && ++pick[t] == options[t].size()) pick[t++] = 0;
      if (t == pick.size()) break;
    }
  };
  std::function<void(int)> grow = [&](int from) {
    if (static_cast<int>(chain.size()) == n) {
      complete();
      return;
    }
    for (int f : c.out[from])
      if (w.cof[f]) {
        chain.push_back(f);
        grow(c.tgt[f]);
        chain.pop_back();
      }
  };
  grow(w.zero);
  return out;
}

int SnCat::find_grid(const Grid& g) const { return lookup(grid_index, g.key()); }

int SnCat::find_mor(int x, int y, const std::vector<int>& cs) const {
  Key k{x, y};
  k.insert(k.end(), cs.begin(), cs.end());
  return lookup(mor_index, k);
}

SnCat s_n_category(const Waldhausen& cw, int n, std::size_t budget) {
  const Category& c = cw.c();
  SnCat s;
  s.n = n;
  s.base = std::make_shared<Waldhausen>(cw);
  s.grids = enumerate_grids(cw, n, budget);
  std::string name = "S_" + std::to_string(n) + "(" + cw.name + ")";
  CategoryBuilder b(name);
  for (std::size_t x = 0; x < s.grids.size(); ++x) {
    s.grid_index.emplace(s.grids[x].key(), static_cast<int>(x));
    b.add_object(grid_name(c, s.grids[x]));
  }
  int np = grid_positions(n);
  int ng = static_cast<int>(s.grids.size());
  std::size_t used = s.grids.size();
  for (int x = 0; x < ng; ++x)
    for (int y = 0; y < ng; ++y) {
      const Grid& gx = s.grids[x];
      const Grid& gy = s.grids[y];
      std::vector<int> cs(np, -1);
      // Positions in row-major order: left and upper neighbours come first.
      std::function<void(int, int)> place = [&](int i, int j) {
        if (i > n) {
          charge(++used, budget, "s_n_category");
          int id = b.add_morphism(x, y, std::to_string(x) + "->" + std::to_string(y) + ":[" + [&] {
            std::string r;
            for (int t = 1; t <= n; ++t) r += (t > 1 ? "," : "") + c.mor_name[cs[grid_pos(n, 0, t)]];
            return r;
          }() + "]");
          Key k{x, y};
          k.insert(k.end(), cs.begin(), cs.end());
          s.mor_index.emplace(k, id);
          s.comps.push_back(cs);
          s.ends.push_back({x, y});
          if (x == y && std::all_of(cs.begin(), cs.end(), [&](int f) { return c.is_identity(f); })) b.set_identity(x, id);
          return;
        }
        int ni = j == n ? i + 1 : i;
        int nj = j == n ? i + 1 : j + 1;
        int p = grid_pos(n, i, j);
        for (int f : c.hom(gx.obj[p], gy.obj[p])) {
          if (j > i) {
            int q = grid_pos(n, i, j - 1);
            if (c.c(f, gx.h[q]) != c.c(gy.h[q], cs[q])) continue;
          }
          if (i > 0) {
            int q = grid_pos(n, i - 1, j);
            if (c.c(f, gx.v[q]) != c.c(gy.v[q], cs[q])) continue;
          }
          cs[p] = f;
          place(ni, nj);
        }
        cs[p] = -1;
      };
      place(0, 0);
    }
  auto cat = std::make_shared<Category>(b.finish([&](int g, int f) {
    std::vector<int> cs(np);
    for (int p = 0; p < np; ++p) cs[p] = c.c(s.comps[g][p], s.comps[f][p]);
    return s.find_mor(s.ends[f][0], s.ends[g][1], cs);
  }));
  Waldhausen& w = s.w;
  w.name = name;
  w.cat = cat;
  Grid z = empty_grid(n);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      int p = grid_pos(n, i, j);
      z.obj[p] = cw.zero;
      if (j < n) z.h[p] = c.ident[cw.zero];
      if (i < j) z.v[p] = c.ident[cw.zero];
    }
  w.zero = s.find_grid(z);
  if (w.zero < 0) throw std::logic_error("s_n_category: zero grid missing");
  int nm = cat->morphisms();
  w.cof.assign(nm, 0);
  w.weq.assign(nm, 0);
  for (int f = 0; f < nm; ++f) {
    const Grid& gx = s.grids[s.ends[f][0]];
    const Grid& gy = s.grids[s.ends[f][1]];
    bool weq = true, cof = true;
    for (int j = 1; j <= n; ++j) {
      weq = weq && cw.weq[s.comps[f][grid_pos(n, 0, j)]];
      if (!cof) continue;
      int prev = grid_pos(n, 0, j - 1);
      auto p = some_pushout(cw, s.comps[f][prev], gx.h[prev]);
      int h = p ? mediate(c, *p, gy.h[prev], s.comps[f][grid_pos(n, 0, j)]) : -1;
      cof = h >= 0 && cw.cof[h];
    }
    w.weq[f] = weq;
    w.cof[f] = cof;
  }
  w.chooser = generic_chooser(cat);
  return s;
}

int restrict_morphism(const SnCat& from, const SnCat& to, int f, const std::vector<int>& theta) {
  const Category& c = from.base->c();
  int m = static_cast<int>(theta.size()) - 1;
  int x = to.find_grid(restrict_grid(c, from.grids[from.ends[f][0]], theta));
  int y = to.find_grid(restrict_grid(c, from.grids[from.ends[f][1]], theta));
  std::vector<int> cs(grid_positions(m));
  for (int a = 0; a <= m; ++a)
    for (int b = a; b <= m; ++b) cs[grid_pos(m, a, b)] = from.comps[f][grid_pos(from.n, theta[a], theta[b])];
  return to.find_mor(x, y, cs);
}

Functor s_n_functor(const Functor& f, const SnCat& from, const SnCat& to) {
  Functor r;
  for (const Grid& g : from.grids) {
    Grid h = g;
    for (auto& o : h.obj) o = f.obj[o];
    for (auto& a : h.h) a = a < 0 ? a : f.mor[a];
    for (auto& a : h.v) a = a < 0 ? a : f.mor[a];
    int y = to.find_grid(h);
    if (y < 0) throw std::logic_error("s_n_functor: image of " + grid_name(from.base->c(), g) + " is not a grid");
    r.obj.push_back(y);
  }
  for (std::size_t m = 0; m < from.comps.size(); ++m) {
    std::vector<int> cs = from.comps[m];
    for (auto& a : cs) a = f.mor[a];
    r.mor.push_back(to.find_mor(r.obj[from.ends[m][0]], r.obj[from.ends[m][1]], cs));
  }
  return r;
}

SubcategoryResult w_s_n(const SnCat& s) {
  return wide_subcategory(s.w.c(), s.w.weq, "wS_" + std::to_string(s.n) + "(" + s.base->name + ")");
}

Grid simplicial_operator(const Waldhausen& w, const Grid& g, bool face, int i) {
  if (i < 0 || i > g.n || (face && g.n == 0)) throw std::out_of_range("simplicial_operator: index out of range");
  Grid r = restrict_grid(w.c(), g, face ? face_theta(g.n, i) : degen_theta(g.n, i));
  auto cert = certify_grid(w, r);
  if (!cert.ok()) throw std::logic_error("simplicial_operator: output fails " + cert.first_failure()->name);
  return r;
}

SSet object_simplicial_set(const Waldhausen& w, int n_max, std::size_t budget) {
  const Category& c = w.c();
  SimplicialModel m;
  m.trunc = n_max;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Key> lv;
    for (const auto& g : enumerate_grids(w, n, budget)) lv.push_back(g.key());
    m.levels.push_back(std::move(lv));
  }
  m.face = [&w](int, const Key& k, int i) { return simplicial_operator(w, grid_from_key(k), true, i).key(); };
  m.degen = [&w](int, const Key& k, int i) { return simplicial_operator(w, grid_from_key(k), false, i).key(); };
  m.name = [&c](int, const Key& k) { return grid_name(c, grid_from_key(k)); };
  return build_sset(m);
}

namespace {

// Functor Ar[n] x Ar[2] -> C as a flat key: objects, then the four arrow families.
Key bigrid_key(int n, const std::function<int(int, int)>& obj, const std::function<int(int, int)>& hn,
               const std::function<int(int, int)>& vn, const std::function<int(int, int)>& h2,
               const std::function<int(int, int)>& v2) {
  Key k;
  int pn = grid_positions(n), p2 = grid_positions(2);
  for (const auto* fam : {&obj, &hn, &vn, &h2, &v2})
    for (int p = 0; p < pn; ++p)
      for (int q = 0; q < p2; ++q) k.push_back((*fam)(p, q));
  return k;
}

}  // namespace

Report check_sn_s2_swap(const Waldhausen& w, int n) {
  Report r;
  // Side one: S_n of S_2 C.
  SnCat s2 = s_n_category(w, 2);
  SnCat outer1 = s_n_category(s2.w, n);
  // Side two: S_2 of S_n C.
  SnCat sn = s_n_category(w, n);
  SnCat outer2 = s_n_category(sn.w, 2);

  std::vector<Key> one, two;
  for (const Grid& g : outer1.grids)
    one.push_back(bigrid_key(
        n, [&](int p, int q) { return s2.grids[g.obj[p]].obj[q]; },
        [&](int p, int q) { return g.h[p] < 0 ? -1 : s2.comps[g.h[p]][q]; },
        [&](int p, int q) { return g.v[p] < 0 ? -1 : s2.comps[g.v[p]][q]; },
        [&](int p, int q) { return s2.grids[g.obj[p]].h[q]; }, [&](int p, int q) { return s2.grids[g.obj[p]].v[q]; }));
  for (const Grid& g : outer2.grids)
    two.push_back(bigrid_key(
        n, [&](int p, int q) { return sn.grids[g.obj[q]].obj[p]; }, [&](int p, int q) { return sn.grids[g.obj[q]].h[p]; },
        [&](int p, int q) { return sn.grids[g.obj[q]].v[p]; },
        [&](int p, int q) { return g.h[q] < 0 ? -1 : sn.comps[g.h[q]][p]; },
        [&](int p, int q) { return g.v[q] < 0 ? -1 : sn.comps[g.v[q]][p]; }));
  r.add("count_sn_s2", true, std::to_string(one.size()), true);
  r.add("count_s2_sn", true, std::to_string(two.size()), true);
  auto a = one, b = two;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  bool distinct = std::adjacent_find(a.begin(), a.end()) == a.end() && std::adjacent_find(b.begin(), b.end()) == b.end();
  r.add("keys_distinct", distinct);
  std::string wit;
  if (a != b) {
    std::vector<Key> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    wit = std::to_string(diff.size()) + " unmatched";
  }
  r.add("bijection", a == b, wit);
  return r;
}

WNerve diagonal_nerve_w(const Waldhausen& w, int n_max, std::size_t budget) {
  WNerve out;
  std::vector<SubcategoryResult> ws;
  std::vector<SSet> nerves;
  for (int p = 0; p <= n_max; ++p) {
    out.levels.push_back(s_n_category(w, p, budget));
    ws.push_back(w_s_n(out.levels.back()));
    nerves.push_back(nerve(ws.back().cat, n_max));
  }
  BiSSet& b = out.bi;
  b.t1 = b.t2 = n_max;
  auto dims = [&](auto& v) {
    v.assign(n_max + 1, {});
    for (auto& row : v) row.resize(n_max + 1);
  };
  dims(b.names);
  dims(b.hface);
  dims(b.vface);
  dims(b.hdeg);
  dims(b.vdeg);
  // Image of a nerve simplex of wS_p under theta^*, as a simplex of N(wS_m).
  auto move = [&](int p, int q, int x, const std::vector<int>& theta) {
    int m = static_cast<int>(theta.size()) - 1;
    const Key& k = nerves[p].keys[q][x];
    Key img;
    const Category& c = w.c();
    for (int e : k) {
      if (q == 0) {
        img.push_back(out.levels[m].find_grid(restrict_grid(c, out.levels[p].grids[e], theta)));
      } else {
        int f = restrict_morphism(out.levels[p], out.levels[m], ws[p].inclusion.mor[e], theta);
        img.push_back(f < 0 ? -1 : ws[m].mor_back[f]);
      }
    }
    int y = nerves[m].find(q, img);
    if (y < 0) throw std::logic_error("diagonal_nerve_w: operator leaves the nerve");
    return y;
  };
  for (int p = 0; p <= n_max; ++p)
    for (int q = 0; q <= n_max; ++q)
      for (int x = 0; x < nerves[p].size(q); ++x) {
        b.names[p][q].push_back(nerves[p].names[q][x]);
        std::vector<int> hf, hd;
        for (int i = 0; p >= 1 && i <= p; ++i) hf.push_back(move(p, q, x, face_theta(p, i)));
        for (int i = 0; p < n_max && i <= p; ++i) hd.push_back(move(p, q, x, degen_theta(p, i)));
        b.hface[p][q].push_back(std::move(hf));
        b.hdeg[p][q].push_back(std::move(hd));
        b.vface[p][q].push_back(q >= 1 ? nerves[p].faces[q][x] : std::vector<int>{});
        b.vdeg[p][q].push_back(q < n_max ? nerves[p].degens[q][x] : std::vector<int>{});
      }
  out.diag = diagonal(b);
  return out;
}

json grid_to_json(const Category& c, const Grid& g) {
  json objects = json::object(), arrows = json::object();
  for (int i = 0; i <= g.n; ++i)
    for (int j = i; j <= g.n; ++j) {
      int p = grid_pos(g.n, i, j);
      std::string at = std::to_string(i) + "," + std::to_string(j);
      objects[at] = c.obj_name[g.obj[p]];
      if (j < g.n) arrows[at + "->" + std::to_string(i) + "," + std::to_string(j + 1)] = c.mor_name[g.h[p]];
      if (i < j) arrows[at + "->" + std::to_string(i + 1) + "," + std::to_string(j)] = c.mor_name[g.v[p]];
    }
  return {{"n", g.n}, {"objects", objects}, {"arrows", arrows}};
}

}  // namespace waldkit
