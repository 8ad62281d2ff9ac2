#include "waldkit/qcat.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace waldkit {

namespace {

Category poset(const std::string& name, int n, const std::function<bool(int, int)>& le) {
  CategoryBuilder b(name);
  for (int i = 0; i < n; ++i) b.add_object(std::to_string(i));
  KeyMap<int> idx;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le(i, j)) {
        int f = b.add_morphism(i, j, std::to_string(i) + "<=" + std::to_string(j));
        idx.emplace(Key{i, j}, f);
        if (i == j) b.set_identity(i, f);
      }
  std::vector<Key> ends(idx.size());
  for (const auto& [k, f] : idx) ends[f] = k;
  return b.finish([&](int g, int f) { return idx.at({ends[f][0], ends[g][1]}); });
}

// One object; table[g][f] = g o f, element 0 the identity.
Category monoid(const std::string& name, const std::vector<std::string>& elems, const std::vector<std::vector<int>>& table) {
  CategoryBuilder b(name);
  b.add_object("*");
  for (const auto& e : elems) b.add_morphism(0, 0, e);
  b.set_identity(0, 0);
  return b.finish([&](int g, int f) { return table[g][f]; });
}

Category parallel_pair() {
  CategoryBuilder b("parallel_pair");
  b.add_object("a");
  b.add_object("b");
  b.set_identity(0, b.add_morphism(0, 0, "1a"));
  b.set_identity(1, b.add_morphism(1, 1, "1b"));
  b.add_morphism(0, 1, "f");
  b.add_morphism(0, 1, "g");
  return b.finish([](int g, int f) { return g <= 1 ? f : g; });
}

bool coskeletal(const SSet& x) { return x.cosk && *x.cosk <= 2; }

// Increasing d-subsets of [n], d <= 2, in lexicographic order per dimension.
std::vector<std::vector<Key>> skeleton_keys(int n) {
  std::vector<std::vector<Key>> out(std::min(2, n) + 1);
  for (int d = 0; d < static_cast<int>(out.size()); ++d) {
    Key cur(d + 1);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos > d) {
        out[d].push_back(cur);
        return;
      }
      for (int v = lo; v <= n; ++v) {
        cur[pos] = v;
        rec(pos + 1, v + 1);
      }
    };
    rec(0, 0);
  }
  return out;
}

Key iota_key(int n) {
  Key k(n + 1);
  for (int i = 0; i <= n; ++i) k[i] = i;
  return k;
}

// Image of the simplex <0..n> of S (sequence keys, as in Delta or J) under a
// map S -> X into a <= 2-coskeletal X.
int image_of_simplex(const SSet& s, const SSet& x, const LevelImages& li, int n) {
  if (n <= 2) return li[n][s.find(n, iota_key(n))];
  LevelImages sk;
  for (const auto& lv : skeleton_keys(n)) {
    sk.emplace_back();
    for (const auto& k : lv) sk.back().push_back(li[k.size() - 1][s.find(static_cast<int>(k.size()) - 1, k)]);
  }
  return extend_from_skeleton(x, n, sk);
}

Key flatten(const LevelImages& li) {
  Key k;
  for (const auto& lv : li) k.insert(k.end(), lv.begin(), lv.end());
  return k;
}

std::string set_witness(int level, std::size_t a, std::size_t b) {
  return "level " + std::to_string(level) + ": " + std::to_string(a) + " vs " + std::to_string(b);
}

}  // namespace

std::vector<Category> category_corpus() {
  std::vector<Category> out;
  for (int n = 0; n <= 3; ++n) out.push_back(ordinal(n));
  out.push_back(contractible_groupoid(1));
  out.push_back(contractible_groupoid(2));
  out.push_back(monoid("Z/2", {"e", "t"}, {{0, 1}, {1, 0}}));
  out.push_back(monoid("idempotent", {"1", "e"}, {{0, 1}, {1, 1}}));
  out.push_back(poset("span", 3, [](int i, int j) { return i == j || i == 0; }));
  out.push_back(poset("square", 4, [](int i, int j) { return (i & j) == i; }));
  out.push_back(parallel_pair());
  out.push_back(instance_pointed_sets(2).c());
  out.push_back(instance_pointed_sets(3).c());
  out.push_back(instance_vect_f2(1).c());
  out.push_back(instance_vect_f2(2).c());
  return out;
}

HornReport is_quasicategory(const SSet& x, int up_to_dim) {
  if (up_to_dim > x.trunc) throw std::invalid_argument("is_quasicategory: level " + std::to_string(up_to_dim) + " not stored");
  if (x.trunc < 2) throw std::invalid_argument("is_quasicategory: needs levels 0..2");
  HornReport hr;
  std::string wit;
  for (int n = 2; n <= up_to_dim && wit.empty(); ++n) {
    if (n >= 4 && !coskeletal(x)) throw std::invalid_argument("is_quasicategory: horns above dimension 3 need a coskeletal X");
    for (int k = 1; k < n && wit.empty(); ++k) {
      SSet h = horn(n, k, 2);
      KeyMap<std::vector<int>> by_faces;
      if (n <= 3)
        for (int a = 0; a < x.size(n); ++a) {
          Key f = x.faces[n][a];
          f[k] = -1;
          by_faces[f].push_back(a);
        }
      for_each_map(h, x, nullptr, [&](const LevelImages& li) {
        ++hr.horns;
        int fillers = 0;
        if (n <= 3) {
          Key f(n + 1, -1);
          for (int i = 0; i <= n; ++i)
            if (i != k) f[i] = li[n - 1][h.find(n - 1, face_theta(n, i))];
          auto it = by_faces.find(f);
          fillers = it == by_faces.end() ? 0 : static_cast<int>(it->second.size());
        } else {
          fillers = image_of_simplex(h, x, li, n) >= 0 ? 1 : 0;
        }
        if (fillers == 1) ++hr.unique;
        if (fillers == 0) {
          wit = "Lambda^" + std::to_string(k) + "[" + std::to_string(n) + "] on edges";
          for (int e = 0; e < h.size(1); ++e)
            if (h.keys[1][e][0] != h.keys[1][e][1]) wit += " " + x.names[1][li[1][e]];
          return false;
        }
        return true;
      });
    }
  }
  hr.report.add("inner_horn_fillers", wit.empty(), wit);
  hr.report.add("unique_fillers", hr.unique == hr.horns, std::to_string(hr.unique) + "/" + std::to_string(hr.horns), true);
  return hr;
}

QuasicategoryProbe make_probe(SSet x, int cap) {
  QuasicategoryProbe p;
  p.tau = tau1(x, cap);
  for (int e = 0; e < x.size(1); ++e) p.equiv_edge.push_back(is_iso(p.tau.cat, p.tau.edge_to_mor[e]));
  p.x = std::move(x);
  return p;
}

SSet equivalence_subcomplex(const QuasicategoryProbe& p, EquivMethod method) {
  const SSet& x = p.x;
  std::vector<std::vector<char>> keep(x.trunc + 1);
  for (int n = 0; n <= x.trunc; ++n) keep[n].assign(x.size(n), 0);
  if (method == EquivMethod::tau1_full) {
    for (int n = 0; n <= x.trunc; ++n)
      for (int a = 0; a < x.size(n); ++a) {
        bool ok = true;
        for (int i = 0; i <= n && ok; ++i)
          for (int j = i + 1; j <= n && ok; ++j) ok = p.equiv_edge[apply_op(x, n, a, {i, j})];
        keep[n][a] = ok;
      }
  } else {
    if (!coskeletal(x)) throw std::invalid_argument("equivalence_subcomplex: J-hom method needs a coskeletal X");
    for (int n = 0; n <= x.trunc; ++n) {
      SSet j = interval_groupoid(n, 2);
      for_each_map(j, x, nullptr, [&](const LevelImages& li) {
        int a = image_of_simplex(j, x, li, n);
        if (a < 0) throw std::logic_error("equivalence_subcomplex: map from J[n] has no top simplex");
        keep[n][a] = 1;
        return true;
      });
    }
  }
  SSet out = subcomplex(x, keep);
  out.cosk = x.cosk;
  return out;
}

Report check_nerve_equiv(const Category& c, int trunc) {
  Report r;
  SSet nc = nerve(c, trunc);
  auto probe = make_probe(nc);
  SSet full = equivalence_subcomplex(probe, EquivMethod::tau1_full);
  SSet jh = equivalence_subcomplex(probe, EquivMethod::j_hom);
  auto g = maximal_groupoid(c);
  SSet ng = nerve(g.cat, trunc);
  std::string w_methods, w_iso;
  json sizes = json::array();
  for (int n = 0; n <= trunc; ++n) {
    std::set<Key> a(full.keys[n].begin(), full.keys[n].end()), b(jh.keys[n].begin(), jh.keys[n].end()), iso;
    for (const auto& k : ng.keys[n]) {
      Key m = k;
      for (int& v : m) v = n == 0 ? g.inclusion.obj[v] : g.inclusion.mor[v];
      iso.insert(m);
    }
    if (w_methods.empty() && a != b) w_methods = set_witness(n, a.size(), b.size());
    if (w_iso.empty() && a != iso) w_iso = set_witness(n, a.size(), iso.size());
    sizes.push_back(a.size());
  }
  r.add("equiv_methods_agree", w_methods.empty(), w_methods);
  r.add("equiv_is_nerve_of_isos", w_iso.empty(), w_iso.empty() ? "sizes " + sizes.dump() : w_iso);
  return r;
}

Report natural_equivalence_check(const SSet& x, const QuasicategoryProbe& y, const SMap& alpha) {
  Report r;
  SSet d1 = standard_simplex(1, x.trunc);
  SSet p = product(x, d1);
  int up = d1.find(1, {0, 1});
  std::string wit;
  for (int v = 0; v < x.size(0) && wit.empty(); ++v) {
    int e = alpha.at[1][p.find(1, {x.s(0, v, 0), up})];
    if (!y.equiv_edge[e]) wit = x.names[0][v] + ": " + y.x.names[1][e];
  }
  bool comps = wit.empty();
  r.add("components_invertible", comps, wit);
  if (!coskeletal(y.x) || x.trunc < 2) return r;

  SSet j1 = interval_groupoid(1, 2);
  SSet q = product(truncate(x, 2), j1);
  LevelImages fixed(3);
  for (int n = 0; n <= 2; ++n)
    for (const auto& k : q.keys[n]) {
      int b = d1.find(n, j1.keys[n][k[1]]);
      fixed[n].push_back(b < 0 ? -1 : alpha.at[n][p.find(n, {k[0], b})]);
    }
  bool extends = false;
  for_each_map(q, y.x, &fixed, [&](const LevelImages&) {
    extends = true;
    return false;
  });
  r.add("extends_to_J1", extends, "", true);
  r.add("criteria_agree", extends == comps, extends ? "extension without invertible components" : "");
  return r;
}

SSet mapping_space(const SSet& x, int a, int b) {
  if (x.trunc < 1) throw std::invalid_argument("mapping_space: needs level 1");
  SimplicialModel m;
  m.trunc = x.trunc - 1;
  for (int n = 0; n <= m.trunc; ++n) {
    int front = apply_op(x, 0, a, Key(n + 1, 0));
    std::vector<Key> lv;
    for (int s = 0; s < x.size(n + 1); ++s)
      if (apply_op(x, n + 1, s, {n + 1}) == b && apply_op(x, n + 1, s, iota_key(n)) == front) lv.push_back({s});
    m.levels.push_back(std::move(lv));
  }
  m.face = [&x](int n, const Key& k, int i) { return Key{x.d(n + 1, k[0], i)}; };
  m.degen = [&x](int n, const Key& k, int i) { return Key{x.s(n + 1, k[0], i)}; };
  m.name = [&x](int n, const Key& k) { return x.names[n + 1][k[0]]; };
  return build_sset(m);
}

SSet slice_under_span(const Category& c, int f, int g, int trunc) {
  if (c.src[f] != c.src[g]) throw std::invalid_argument("slice_under_span: not a span");
  SimplicialModel m;
  m.trunc = trunc;
  m.cosk = 2;
  std::vector<Key> lv0;
  for (int p = 0; p < c.objects(); ++p)
    for (int b : c.hom(c.tgt[f], p))
      for (int cc : c.hom(c.tgt[g], p))
        if (c.c(b, f) == c.c(cc, g)) lv0.push_back({b, cc});
  m.levels.push_back(lv0);
  for (int n = 1; n <= trunc; ++n) {
    std::vector<Key> lv;
    for (const auto& k : m.levels[n - 1]) {
      int last = k.size() == 2 ? c.tgt[k[0]] : c.tgt[k.back()];
      for (int h : c.out[last]) {
        Key e = k;
        e.push_back(h);
        lv.push_back(std::move(e));
      }
    }
    m.levels.push_back(std::move(lv));
  }
  m.face = [&c](int n, const Key& k, int i) -> Key {
    if (i == 0) {
      Key out{c.c(k[2], k[0]), c.c(k[2], k[1])};
      out.insert(out.end(), k.begin() + 3, k.end());
      return out;
    }
    Key out = k;
    if (i == n) {
      out.pop_back();
      return out;
    }
    out[i + 1] = c.c(k[i + 2], k[i + 1]);
    out.erase(out.begin() + i + 2);
    return out;
  };
  m.degen = [&c](int, const Key& k, int i) -> Key {
    int v = i == 0 ? c.tgt[k[0]] : c.tgt[k[i + 1]];
    Key out = k;
    out.insert(out.begin() + i + 2, c.ident[v]);
    return out;
  };
  m.name = [&c](int, const Key& k) {
    std::string s = "(" + c.mor_name[k[0]] + "; " + c.mor_name[k[1]] + ")";
    for (std::size_t p = 2; p < k.size(); ++p) s += "|" + c.mor_name[k[p]];
    return s;
  };
  return build_sset(m);
}

PushoutSearch quasicat_pushout(const Category& c, int f, int g, int trunc) {
  if (trunc < 2) throw std::invalid_argument("quasicat_pushout: needs trunc >= 2");
  PushoutSearch ps;
  SSet s = slice_under_span(c, f, g, trunc);
  int deg = std::min(2, trunc - 2);
  for (int v = 0; v < s.size(0); ++v) {
    bool initial = true;
    for (int w = 0; w < s.size(0) && initial; ++w) {
      SSet ms = mapping_space(s, v, w);
      int count = 0;
      components(ms, &count);
      initial = count == 1;
      if (initial && deg >= 1) {
        auto h = homology(ms, deg);
        for (int d = 1; d <= std::min(deg, h.valid_upto) && initial; ++d) initial = h.groups[d] == AbelianGroup{};
      }
    }
    if (initial) {
      const Key& k = s.keys[0][v];
      ps.initial.push_back({c.tgt[k[0]], k[0], k[1]});
    }
  }
  ps.report.add("candidate_found", !ps.initial.empty(), ps.initial.empty() ? "no candidate within truncation" : "");
  auto cat = all_pushouts(c, f, g);
  std::set<std::array<int, 3>> a, b;
  for (const auto& p : ps.initial) a.insert({p.obj, p.leg_b, p.leg_c});
  for (const auto& p : cat) b.insert({p.obj, p.leg_b, p.leg_c});
  ps.exact = a == b;
  ps.report.add("initial_evidence", !ps.initial.empty(), std::to_string(ps.initial.size()) + " initial vertices", true);
  ps.report.add("matches_categorical_pushouts", ps.exact, std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  return ps;
}

Report check_pushout_of_equivalences(const Category& c, int trunc, int* spans) {
  Report r;
  auto probe = make_probe(nerve(c, std::max(2, trunc)));
  int count = 0;
  std::string wit;
  for (int f = 0; f < c.morphisms(); ++f) {
    if (!probe.equiv_edge[f]) continue;
    for (int g : c.out[c.src[f]]) {
      auto ps = quasicat_pushout(c, f, g, trunc);
      if (ps.initial.empty()) {
        if (wit.empty()) wit = "no pushout for " + c.mor_name[f] + ", " + c.mor_name[g];
        continue;
      }
      ++count;
      for (const auto& p : ps.initial)
        if (!probe.equiv_edge[p.leg_c] && wit.empty()) wit = c.mor_name[f] + ", " + c.mor_name[g] + " -> " + c.mor_name[p.leg_c];
    }
  }
  if (spans) *spans = count;
  r.add("far_leg_invertible", wit.empty(), wit.empty() ? std::to_string(count) + " spans" : wit);
  return r;
}

Report check_cofibration_nerve(const Waldhausen& w, int trunc) {
  const Category& c = w.c();
  Report r;
  auto probe = make_probe(nerve(c, std::max(2, trunc)));
  auto co = wide_subcategory(c, w.cof, c.name + "_co");
  SSet nco = nerve(co.cat, std::max(2, trunc));
  std::set<Key> in_co;
  for (int n = 1; n <= nco.trunc; ++n)
    for (const auto& k : nco.keys[n]) {
      Key m = k;
      for (int& v : m) v = co.inclusion.mor[v];
      in_co.insert(m);
    }
  auto cof = [&](int f) { return in_co.count(Key{f}) > 0; };
  std::string wit;
  for (int f = 0; f < c.morphisms() && wit.empty(); ++f)
    if (probe.equiv_edge[f] && !cof(f)) wit = c.mor_name[f];
  r.add("contains_equivalences", wit.empty(), wit);
  wit.clear();
  for (int a = 0; a < c.objects() && wit.empty(); ++a)
    if (!cof(w.from_zero(a))) wit = c.mor_name[w.from_zero(a)];
  r.add("maps_from_zero", wit.empty(), wit);
  wit.clear();
  for (int f = 0; f < c.morphisms() && wit.empty(); ++f)
    for (int u : c.out[c.src[f]])
      for (int v : c.out[c.tgt[f]]) {
        if (!probe.equiv_edge[u] || !probe.equiv_edge[v]) continue;
        int f2 = c.c(c.c(v, f), inverse_of(c, u));
        if (cof(f) != cof(f2) && wit.empty()) wit = c.mor_name[f] + " ~ " + c.mor_name[f2];
      }
  r.add("homotopy_replete", wit.empty(), wit);
  wit.clear();
  for (int f = 0; f < c.morphisms() && wit.empty(); ++f)
    for (int g : c.out[c.tgt[f]])
      if (cof(f) && cof(g) && !in_co.count(Key{f, g}) && wit.empty()) wit = c.mor_name[f] + "|" + c.mor_name[g];
  r.add("composable_cofibrations_span_triangles", wit.empty(), wit);
  return r;
}

namespace {

// The grid of a map N Ar[n] -> NC given by its images on levels 0..2.
Grid map_grid(const GapLevel& g, const LevelImages& li) {
  int n = g.n;
  Category arc = arrow_category(n);
  Grid out;
  out.n = n;
  int np = grid_positions(n);
  out.obj.assign(np, -1);
  out.h.assign(np, -1);
  out.v.assign(np, -1);
  auto edge = [&](int p, int q) { return g.nc.keys[1][li[1][g.arrows.find(1, {arc.hom(p, q).front()})]][0]; };
  for (int p = 0; p < np; ++p) out.obj[p] = g.nc.keys[0][li[0][p]][0];
  for (int i = 0; i <= n; ++i)
    for (int l = i; l <= n; ++l) {
      int p = grid_pos(n, i, l);
      if (l < n) out.h[p] = edge(p, grid_pos(n, i, l + 1));
      if (i < l) out.v[p] = edge(p, grid_pos(n, i + 1, l));
    }
  return out;
}

// Images on levels 0..2 of N Ar[n] from a flattened key over shape = N Ar[n] x Delta[0].
LevelImages unflatten_vertex(const SSet& shape, const Key& flat) {
  LevelImages li(3);
  int off = 0;
  for (int l = 0; l <= 2; ++l) {
    li[l].resize(shape.size(l));
    for (int i = 0; i < shape.size(l); ++i) li[l][shape.keys[l][i][0]] = flat[off + i];
    off += shape.size(l);
  }
  return li;
}

}  // namespace

GapLevel gap_sn_nerve(const Waldhausen& w, int n, int k_max, std::size_t budget) {
  if (k_max < 0) throw std::invalid_argument("gap_sn_nerve: negative k_max");
  GapLevel g;
  g.n = n;
  g.nc = nerve(w.c(), 2);
  g.arrows = nerve(arrow_category(n), 2);
  for (int k = 0; k <= k_max; ++k) g.shapes.push_back(product(g.arrows, standard_simplex(k, 2)));
  // The diagonal is fixed to the zero object; the other conditions are certified.
  LevelImages diag(3);
  for (int l = 0; l <= 2; ++l) diag[l].assign(g.arrows.size(l), -1);
  for (int i = 0; i <= n; ++i) diag[0][grid_pos(n, i, i)] = g.nc.find(0, {w.zero});
  long functors = 0;
  for_each_map(
      g.arrows, g.nc, &diag,
      [&](const LevelImages& li) {
        ++functors;
        if (certify_grid(w, map_grid(g, li)).ok()) g.complexes.push_back(li);
        return true;
      },
      budget);
  std::size_t tuples = 1;
  for (int k = 0; k <= k_max; ++k) tuples *= std::max<std::size_t>(1, g.complexes.size());
  charge(tuples, budget, "gap_sn_nerve");
  g.set = cotensor_into_coskeletal(g.arrows, g.nc, k_max, &g.complexes);
  for (int k = 0; k <= k_max; ++k)
    for (int s = 0; s < g.set.size(k); ++s) g.set.names[k][s] = "gap" + std::to_string(k) + "." + std::to_string(s);
  g.certification.add("vertices_are_complexes", true,
                      std::to_string(g.complexes.size()) + " of " + std::to_string(functors) + " functors with zero diagonal", true);
  return g;
}

Grid gap_vertex_grid(const GapLevel& g, int v) { return map_grid(g, unflatten_vertex(g.shapes[0], g.set.keys[0][v])); }

namespace {

// Flattened images of a chain of S_n C morphisms as a map N Ar[n] x Delta[k] -> NC.
Key chain_image(const GapLevel& g, const SnCat& s, const SSet& ns, int k, int x) {
  const Category& c = s.base->c();
  const Category& sc = s.w.c();
  const SSet& shape = g.shapes[k];
  const Key& key = ns.keys[k][x];
  SSet dk = standard_simplex(k, 2);
  Category arc = arrow_category(g.n);
  std::vector<int> verts;
  if (k == 0)
    verts.push_back(key[0]);
  else {
    verts.push_back(sc.src[key[0]]);
    for (int f : key) verts.push_back(sc.tgt[f]);
  }
  auto chain = [&](int i, int j) {
    int f = sc.ident[verts[i]];
    for (int t = i; t < j; ++t) f = sc.c(key[t], f);
    return f;
  };
  auto pos_of = [&](int p) {
    for (int i = 0; i <= g.n; ++i)
      for (int l = i; l <= g.n; ++l)
        if (grid_pos(g.n, i, l) == p) return std::array<int, 2>{i, l};
    return std::array<int, 2>{-1, -1};
  };
  auto edge = [&](int m, int i, int j) {
    auto P = pos_of(arc.src[m]), Q = pos_of(arc.tgt[m]);
    const Grid& gj = s.grids[verts[j]];
    int comp = s.comps[chain(i, j)][arc.src[m]];
    return c.c(mor_between(c, gj, P[0], P[1], Q[0], Q[1]), comp);
  };
  LevelImages li(3);
  for (const auto& kk : shape.keys[0]) li[0].push_back(s.grids[verts[dk.keys[0][kk[1]][0]]].obj[kk[0]]);
  for (const auto& kk : shape.keys[1]) {
    int m = g.arrows.keys[1][kk[0]][0];
    const Key& b = dk.keys[1][kk[1]];
    li[1].push_back(g.nc.find(1, {edge(m, b[0], b[1])}));
  }
  for (const auto& kk : shape.keys[2]) {
    const Key& a = g.arrows.keys[2][kk[0]];
    const Key& b = dk.keys[2][kk[1]];
    li[2].push_back(g.nc.find(2, {edge(a[0], b[0], b[1]), edge(a[1], b[1], b[2])}));
  }
  return flatten(li);
}

}  // namespace

Report compare_equiv_constructions(const Waldhausen& w, int n, int k_max, int m_max) {
  const Category& c = w.c();
  Report r;
  std::string hyp;
  for (int f = 0; f < c.morphisms() && hyp.empty(); ++f)
    if (static_cast<bool>(w.weq[f]) != is_iso(c, f)) hyp = c.mor_name[f];
  r.add("weq_are_isomorphisms", hyp.empty(), hyp, true);

  auto s = s_n_category(w, n);
  SSet ns = nerve(s.w.c(), k_max);
  GapLevel g = gap_sn_nerve(w, n, k_max);
  r.merge(g.certification, "gap.");

  std::vector<std::vector<int>> phi(k_max + 1);
  std::string wit;
  json sizes = json::array();
  for (int k = 0; k <= k_max; ++k) {
    std::vector<char> hit(g.set.size(k), 0);
    for (int x = 0; x < ns.size(k); ++x) {
      int y = g.set.find(k, chain_image(g, s, ns, k, x));
      phi[k].push_back(y);
      if (y < 0) {
        if (wit.empty()) wit = "level " + std::to_string(k) + ": " + ns.names[k][x] + " has no image";
      } else if (hit[y]++ && wit.empty()) {
        wit = "level " + std::to_string(k) + ": not injective";
      }
    }
    if (wit.empty() && ns.size(k) != g.set.size(k)) wit = set_witness(k, ns.size(k), g.set.size(k));
    sizes.push_back({{"level", k}, {"nerve_sn", ns.size(k)}, {"gap", g.set.size(k)}});
  }
  r.add("nerve_sn_is_gap", wit.empty(), wit.empty() ? sizes.dump() : wit);
  if (!wit.empty()) return r;

  wit.clear();
  for (int k = 0; k <= k_max && wit.empty(); ++k)
    for (int x = 0; x < ns.size(k) && wit.empty(); ++x) {
      for (int i = 0; k >= 1 && i <= k; ++i)
        if (phi[k - 1][ns.d(k, x, i)] != g.set.d(k, phi[k][x], i)) wit = "d" + std::to_string(i) + " at " + ns.names[k][x];
      for (int i = 0; k < k_max && i <= k; ++i)
        if (phi[k + 1][ns.s(k, x, i)] != g.set.s(k, phi[k][x], i)) wit = "s" + std::to_string(i) + " at " + ns.names[k][x];
    }
  r.add("commutes_with_operators", wit.empty(), wit);

  auto probe = make_probe(g.set);
  SSet eq = equivalence_subcomplex(probe, EquivMethod::tau1_full);
  SSet eqj = equivalence_subcomplex(probe, EquivMethod::j_hom);
  auto ws = w_s_n(s);
  SSet nws = nerve(ws.cat, k_max);
  std::string wm, weq;
  json esizes = json::array();
  for (int k = 0; k <= k_max; ++k) {
    std::set<Key> a(eq.keys[k].begin(), eq.keys[k].end()), b(eqj.keys[k].begin(), eqj.keys[k].end()), im;
    for (const auto& kk : nws.keys[k]) {
      Key m = kk;
      for (int& v : m) v = k == 0 ? ws.inclusion.obj[v] : ws.inclusion.mor[v];
      im.insert(g.set.keys[k][phi[k][ns.find(k, m)]]);
    }
    if (wm.empty() && a != b) wm = set_witness(k, a.size(), b.size());
    if (weq.empty() && a != im) weq = set_witness(k, im.size(), a.size());
    esizes.push_back({{"level", k}, {"nerve_wsn", im.size()}, {"gap_equiv", a.size()}});
  }
  r.add("equiv_methods_agree", wm.empty(), wm);
  r.add("nerve_wsn_is_gap_equiv", weq.empty(), weq.empty() ? esizes.dump() : weq);

  // Vertices of S^inf_n(D^{J[m]}) restricted along Delta[m] -> J[m].
  wit.clear();
  json csizes = json::array();
  for (int m = 0; m <= std::min(m_max, k_max) && wit.empty(); ++m) {
    SSet jm = interval_groupoid(m, 2);
    SSet dm = standard_simplex(m, 2);
    SSet shape = product(g.arrows, jm);
    std::set<Key> image;
    long count = 0;
    std::vector<std::size_t> pick(m + 1, 0);
    while (!g.complexes.empty()) {
      LevelImages fixed(3);
      for (int l = 0; l <= 2; ++l)
        for (const auto& kk : shape.keys[l]) {
          const Key& b = jm.keys[l][kk[1]];
          bool flat = std::all_of(b.begin(), b.end(), [&](int v) { return v == b[0]; });
          fixed[l].push_back(flat ? g.complexes[pick[b[0]]][l][kk[0]] : -1);
        }
      for_each_map(shape, g.nc, &fixed, [&](const LevelImages& li) {
        ++count;
        LevelImages res(3);
        for (int l = 0; l <= 2; ++l)
          for (const auto& kk : g.shapes[m].keys[l]) res[l].push_back(li[l][shape.find(l, {kk[0], jm.find(l, dm.keys[l][kk[1]])})]);
        image.insert(flatten(res));
        return true;
      });
      int j = m;
      while (j >= 0 && ++pick[j] == g.complexes.size()) pick[j--] = 0;
      if (j < 0) break;
    }
    std::set<Key> target(eq.keys[m].begin(), eq.keys[m].end());
    if (static_cast<long>(image.size()) != count) wit = "level " + std::to_string(m) + ": restriction not injective";
    else if (image != target) wit = set_witness(m, image.size(), target.size());
    csizes.push_back({{"m", m}, {"cotensor_vertices", count}, {"gap_equiv", target.size()}});
  }
  r.add("cotensor_identity", wit.empty(), wit.empty() ? csizes.dump() : wit);
  return r;
}

}  // namespace waldkit
