#include "waldkit/catkit.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace waldkit {

int CategoryBuilder::add_object(std::string name) {
  cat_.obj_name.push_back(std::move(name));
  cat_.ident.push_back(-1);
  return cat_.objects() - 1;
}

int CategoryBuilder::add_morphism(int s, int t, std::string name) {
  cat_.src.push_back(s);
  cat_.tgt.push_back(t);
  cat_.mor_name.push_back(std::move(name));
  return cat_.morphisms() - 1;
}

void CategoryBuilder::set_identity(int obj, int mor) { cat_.ident[obj] = mor; }

Category CategoryBuilder::finish(const std::function<int(int, int)>& compose) {
  Category& c = cat_;
  int o = c.objects(), m = c.morphisms();
  for (int a = 0; a < o; ++a)
    if (c.ident[a] < 0) throw std::logic_error("CategoryBuilder: missing identity for " + c.obj_name[a]);
  c.out.assign(o, {});
  c.local.assign(m, -1);
  c.homs.assign(static_cast<std::size_t>(o) * o, {});
  for (int f = 0; f < m; ++f) {
    c.local[f] = static_cast<int>(c.out[c.src[f]].size());
    c.out[c.src[f]].push_back(f);
    c.homs[static_cast<std::size_t>(c.src[f]) * o + c.tgt[f]].push_back(f);
  }
  c.comp_after.assign(m, {});
  for (int f = 0; f < m; ++f) {
    const auto& gs = c.out[c.tgt[f]];
    c.comp_after[f].resize(gs.size());
    for (std::size_t k = 0; k < gs.size(); ++k) {
      int h = compose(gs[k], f);
      if (h < 0 || h >= m) throw std::logic_error("CategoryBuilder: composite missing in " + c.name);
      c.comp_after[f][k] = h;
    }
  }
  return std::move(cat_);
}

Report check_category_laws(const Category& c) {
  Report r;
  for (int f = 0; f < c.morphisms(); ++f) {
    if (c.c(f, c.ident[c.src[f]]) != f || c.c(c.ident[c.tgt[f]], f) != f) {
      r.add("unit_laws", false, c.mor_name[f]);
      return r;
    }
    for (int g : c.out[c.tgt[f]]) {
      int gf = c.c(g, f);
      if (c.src[gf] != c.src[f] || c.tgt[gf] != c.tgt[g]) {
        r.add("composite_endpoints", false, c.mor_name[g] + " o " + c.mor_name[f]);
        return r;
      }
      for (int h : c.out[c.tgt[g]])
        if (c.c(h, gf) != c.c(c.c(h, g), f)) {
          r.add("associativity", false, c.mor_name[h] + " o " + c.mor_name[g] + " o " + c.mor_name[f]);
          return r;
        }
    }
  }
  r.add("category_laws", true);
  return r;
}

Report check_functor(const Functor& f, const Category& c, const Category& d) {
  Report r;
  if (static_cast<int>(f.obj.size()) != c.objects() || static_cast<int>(f.mor.size()) != c.morphisms()) {
    r.add("functor_shape", false);
    return r;
  }
  for (int a = 0; a < c.objects(); ++a)
    if (f.mor[c.ident[a]] != d.ident[f.obj[a]]) {
      r.add("preserves_identities", false, c.obj_name[a]);
      return r;
    }
  for (int m = 0; m < c.morphisms(); ++m) {
    int fm = f.mor[m];
    if (d.src[fm] != f.obj[c.src[m]] || d.tgt[fm] != f.obj[c.tgt[m]]) {
      r.add("preserves_endpoints", false, c.mor_name[m]);
      return r;
    }
    for (int g : c.out[c.tgt[m]])
      if (f.mor[c.c(g, m)] != d.c(f.mor[g], fm)) {
        r.add("preserves_composition", false, c.mor_name[g] + " o " + c.mor_name[m]);
        return r;
      }
  }
  r.add("functor_laws", true);
  return r;
}

Report check_natural(const NatTrans& a, const Functor& f, const Functor& g, const Category& c, const Category& d) {
  Report r;
  for (int x = 0; x < c.objects(); ++x) {
    int ax = a.comp[x];
    if (d.src[ax] != f.obj[x] || d.tgt[ax] != g.obj[x]) {
      r.add("component_endpoints", false, c.obj_name[x]);
      return r;
    }
  }
  for (int m = 0; m < c.morphisms(); ++m)
    if (d.c(a.comp[c.tgt[m]], f.mor[m]) != d.c(g.mor[m], a.comp[c.src[m]])) {
      r.add("naturality", false, c.mor_name[m]);
      return r;
    }
  r.add("naturality", true);
  return r;
}

bool nat_iso(const NatTrans& a, const Category& d) {
  for (int m : a.comp)
    if (!is_iso(d, m)) return false;
  return true;
}

Functor identity_functor(const Category& c) {
  Functor f;
  f.obj.resize(c.objects());
  f.mor.resize(c.morphisms());
  std::iota(f.obj.begin(), f.obj.end(), 0);
  std::iota(f.mor.begin(), f.mor.end(), 0);
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  Functor h;
  for (int o : f.obj) h.obj.push_back(g.obj[o]);
  for (int m : f.mor) h.mor.push_back(g.mor[m]);
  return h;
}

int inverse_of(const Category& c, int f) {
  for (int g : c.hom(c.tgt[f], c.src[f]))
    if (c.c(g, f) == c.ident[c.src[f]] && c.c(f, g) == c.ident[c.tgt[f]]) return g;
  return -1;
}

bool is_iso(const Category& c, int f) { return inverse_of(c, f) >= 0; }

std::vector<int> inverse_table(const Category& c) {
  std::vector<int> inv(c.morphisms());
  for (int f = 0; f < c.morphisms(); ++f) inv[f] = inverse_of(c, f);
  return inv;
}

namespace {

SubcategoryResult sub_from(const Category& c, const std::vector<char>& keep_obj, const std::vector<char>& keep_mor,
                           std::string name) {
  SubcategoryResult r;
  CategoryBuilder b(std::move(name));
  r.obj_back.assign(c.objects(), -1);
  r.mor_back.assign(c.morphisms(), -1);
  for (int a = 0; a < c.objects(); ++a)
    if (keep_obj[a]) {
      r.obj_back[a] = b.add_object(c.obj_name[a]);
      r.inclusion.obj.push_back(a);
    }
  for (int f = 0; f < c.morphisms(); ++f)
    if (keep_mor[f] && keep_obj[c.src[f]] && keep_obj[c.tgt[f]]) {
      r.mor_back[f] = b.add_morphism(r.obj_back[c.src[f]], r.obj_back[c.tgt[f]], c.mor_name[f]);
      r.inclusion.mor.push_back(f);
    }
  for (int a = 0; a < c.objects(); ++a)
    if (keep_obj[a]) {
      if (r.mor_back[c.ident[a]] < 0) throw std::logic_error("subcategory: identity dropped");
      b.set_identity(r.obj_back[a], r.mor_back[c.ident[a]]);
    }
  const auto& incl = r.inclusion.mor;
  const auto& back = r.mor_back;
  r.cat = b.finish([&](int g, int f) {
    int h = back[c.c(incl[g], incl[f])];
    if (h < 0) throw std::logic_error("subcategory: not closed under composition");
    return h;
  });
  return r;
}

}  // namespace

SubcategoryResult full_subcategory(const Category& c, const std::vector<char>& keep_obj, std::string name) {
  return sub_from(c, keep_obj, std::vector<char>(c.morphisms(), 1), std::move(name));
}

SubcategoryResult wide_subcategory(const Category& c, const std::vector<char>& keep_mor, std::string name) {
  return sub_from(c, std::vector<char>(c.objects(), 1), keep_mor, std::move(name));
}

SSet nerve(const Category& c, int trunc, std::size_t budget) {
  SimplicialModel m;
  m.trunc = trunc;
  m.cosk = 2;
  std::vector<Key> lv0;
  for (int a = 0; a < c.objects(); ++a) lv0.push_back({a});
  m.levels.push_back(lv0);
  std::size_t total = lv0.size();
  if (trunc >= 1) {
    std::vector<Key> lv1;
    for (int f = 0; f < c.morphisms(); ++f) lv1.push_back({f});
    m.levels.push_back(lv1);
    total += lv1.size();
  }
  for (int n = 2; n <= trunc; ++n) {
    std::vector<Key> lv;
    for (const auto& k : m.levels[n - 1])
      for (int g : c.out[c.tgt[k.back()]]) {
        Key e = k;
        e.push_back(g);
        lv.push_back(std::move(e));
      }
    total += lv.size();
    charge(total, budget, "nerve");
    m.levels.push_back(std::move(lv));
  }
  m.face = [&c](int n, const Key& k, int i) -> Key {
    if (n == 1) return Key{i == 0 ? c.tgt[k[0]] : c.src[k[0]]};
    Key out;
    if (i == 0) return Key(k.begin() + 1, k.end());
    if (i == n) return Key(k.begin(), k.end() - 1);
    for (int p = 0; p < n; ++p) {
      if (p == i - 1) {
        out.push_back(c.c(k[i], k[i - 1]));
        ++p;
      } else {
        out.push_back(k[p]);
      }
    }
    return out;
  };
  m.degen = [&c](int n, const Key& k, int i) -> Key {
    if (n == 0) return Key{c.ident[k[0]]};
    int v = i == 0 ? c.src[k[0]] : c.tgt[k[i - 1]];
    Key out = k;
    out.insert(out.begin() + i, c.ident[v]);
    return out;
  };
  m.name = [&c](int n, const Key& k) {
    if (n == 0) return c.obj_name[k[0]];
    std::string s;
    for (std::size_t p = 0; p < k.size(); ++p) {
      if (p) s += "|";
      s += c.mor_name[k[p]];
    }
    return s;
  };
  return build_sset(m);
}

Tau1Result tau1(const SSet& x, int cap) {
  if (x.trunc < 2) throw std::invalid_argument("tau1: needs levels 0..2");
  int nv = x.size(0), ne = x.size(1);
  std::vector<std::vector<int>> out_edges(nv);
  std::vector<int> eloc(ne);
  for (int e = 0; e < ne; ++e) {
    int s = x.d(1, e, 1);
    eloc[e] = static_cast<int>(out_edges[s].size());
    out_edges[s].push_back(e);
  }
  struct Relation {
    std::vector<int> lhs, rhs;
  };
  std::vector<std::vector<Relation>> rel(nv);
  for (int v = 0; v < nv; ++v) rel[v].push_back({{x.s(0, v, 0)}, {}});
  auto nd2 = nondegenerate(x, 2);
  for (int t = 0; t < x.size(2); ++t) {
    if (!nd2[t]) continue;
    int e2 = x.d(2, t, 2), e0 = x.d(2, t, 0), e1 = x.d(2, t, 1);
    rel[x.d(1, e2, 1)].push_back({{e2, e0}, {e1}});
  }

  std::vector<int> base, head, depth, parent;
  std::vector<std::vector<int>> act, word;
  auto find = [&](int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  auto make = [&](int b, int h, int d, std::vector<int> w) {
    if (d > cap) throw BudgetExceeded("tau1: path-length cap " + std::to_string(cap) + " reached without closure");
    base.push_back(b);
    head.push_back(h);
    depth.push_back(d);
    parent.push_back(static_cast<int>(parent.size()));
    act.emplace_back(out_edges[h].size(), -1);
    word.push_back(std::move(w));
    return static_cast<int>(parent.size()) - 1;
  };
  auto step = [&](int a, int e) {
    a = find(a);
    int& slot = act[a][eloc[e]];
    if (slot >= 0) return find(slot);
    std::vector<int> w = word[a];
    w.push_back(e);
    int fresh = make(base[a], x.d(1, e, 0), depth[a] + 1, std::move(w));
    act[a][eloc[e]] = fresh;
    return fresh;
  };
  auto coincide = [&](int a, int b) {
    std::deque<std::pair<int, int>> q{{a, b}};
    while (!q.empty()) {
      auto [p, r] = q.front();
      q.pop_front();
      p = find(p);
      r = find(r);
      if (p == r) continue;
      if (r < p) std::swap(p, r);
      parent[r] = p;
      for (std::size_t k = 0; k < act[r].size(); ++k) {
        if (act[r][k] < 0) continue;
        if (act[p][k] < 0)
          act[p][k] = act[r][k];
        else
          q.emplace_back(act[p][k], act[r][k]);
      }
    }
  };
  for (int v = 0; v < nv; ++v) make(v, v, 0, {});
  for (std::size_t i = 0; i < parent.size(); ++i) {
    int a = static_cast<int>(i);
    if (find(a) != a) continue;
    for (const auto& r : rel[head[a]]) {
      if (find(a) != a) break;
      int l = a, rr = a;
      for (int e : r.lhs) l = step(l, e);
      for (int e : r.rhs) rr = step(rr, e);
      coincide(l, rr);
    }
    if (find(a) != a) continue;
    for (int e : out_edges[head[a]]) step(a, e);
  }

  CategoryBuilder b("tau1");
  for (int v = 0; v < nv; ++v) b.add_object(x.names[0][v]);
  std::vector<int> mor_of(parent.size(), -1), elem_of;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    int a = static_cast<int>(i);
    if (find(a) != a) continue;
    std::string nm;
    if (word[a].empty()) {
      nm = "id_" + x.names[0][base[a]];
    } else {
      for (std::size_t p = 0; p < word[a].size(); ++p) {
        if (p) nm += ".";
        nm += x.names[1][word[a][p]];
      }
    }
    mor_of[a] = b.add_morphism(base[a], head[a], nm);
    elem_of.push_back(a);
  }
  for (int v = 0; v < nv; ++v) b.set_identity(v, mor_of[find(v)]);
  Tau1Result res;
  res.cat = b.finish([&](int g, int f) {
    int a = elem_of[f];
    for (int e : word[elem_of[g]]) {
      int nxt = act[find(a)][eloc[e]];
      if (nxt < 0) throw std::logic_error("tau1: incomplete action table");
      a = find(nxt);
    }
    return mor_of[find(a)];
  });
  for (int e = 0; e < ne; ++e) res.edge_to_mor.push_back(mor_of[find(act[find(x.d(1, e, 1))][eloc[e]])]);
  return res;
}

SubcategoryResult maximal_groupoid(const Category& c) {
  std::vector<char> keep(c.morphisms());
  for (int f = 0; f < c.morphisms(); ++f) keep[f] = is_iso(c, f);
  return wide_subcategory(c, keep, c.name + "_iso");
}

EquivalenceReport check_equivalence_of_categories(const Functor& f, const Category& c, const Category& d) {
  EquivalenceReport er;
  Report& r = er.report;
  auto fr = check_functor(f, c, d);
  if (!fr.ok()) {
    r.merge(fr, "functor.");
    return er;
  }
  bool ff = true;
  std::string ffw;
  for (int a = 0; a < c.objects() && ff; ++a)
    for (int b = 0; b < c.objects() && ff; ++b) {
      const auto& h = c.hom(a, b);
      const auto& t = d.hom(f.obj[a], f.obj[b]);
      std::vector<int> img;
      for (int m : h) img.push_back(f.mor[m]);
      std::sort(img.begin(), img.end());
      if (img.size() != t.size() || std::adjacent_find(img.begin(), img.end()) != img.end()) {
        ff = false;
        ffw = c.obj_name[a] + " -> " + c.obj_name[b];
      }
    }
  r.add("fully_faithful", ff, ffw);
  std::vector<int> pre(d.objects(), -1), phi(d.objects(), -1);
  bool es = true;
  std::string esw;
  for (int y = 0; y < d.objects(); ++y) {
    for (int a = 0; a < c.objects() && pre[y] < 0; ++a)
      for (int m : d.hom(f.obj[a], y))
        if (is_iso(d, m)) {
          pre[y] = a;
          phi[y] = m;
          break;
        }
    if (pre[y] < 0 && es) {
      es = false;
      esw = d.obj_name[y];
    }
  }
  r.add("essentially_surjective", es, esw);
  if (!ff || !es) return er;

  // F restricted to each hom set is a bijection; invert it.
  auto preimage = [&](int a, int b, int m) {
    for (int k : c.hom(a, b))
      if (f.mor[k] == m) return k;
    return -1;
  };
  Functor g;
  g.obj = pre;
  g.mor.resize(d.morphisms());
  for (int m = 0; m < d.morphisms(); ++m) {
    int s = d.src[m], t = d.tgt[m];
    int target = d.c(inverse_of(d, phi[t]), d.c(m, phi[s]));
    g.mor[m] = preimage(pre[s], pre[t], target);
  }
  NatTrans counit{phi};
  NatTrans unit;
  for (int a = 0; a < c.objects(); ++a) unit.comp.push_back(preimage(a, pre[f.obj[a]], inverse_of(d, phi[f.obj[a]])));
  auto gr = check_functor(g, d, c);
  r.merge(gr, "inverse.");
  if (gr.ok()) {
    auto fg = compose(f, g), gf = compose(g, f);
    auto idd = identity_functor(d), idc = identity_functor(c);
    auto cn = check_natural(counit, fg, idd, d, d);
    auto un = check_natural(unit, idc, gf, c, c);
    r.add("counit_natural_iso", cn.ok() && nat_iso(counit, d), cn.ok() ? "" : cn.first_failure()->witness);
    r.add("unit_natural_iso", un.ok() && nat_iso(unit, c), un.ok() ? "" : un.first_failure()->witness);
    er.inverse = g;
    er.unit = unit;
    er.counit = counit;
  }
  return er;
}

CategoryPullback category_pullback(const Category& c, const Functor& f, const Category& d, const Functor& g, const Category& e) {
  (void)e;
  CategoryPullback pb;
  CategoryBuilder b("pullback");
  KeyIndex objs, mors;
  for (int x = 0; x < c.objects(); ++x)
    for (int y = 0; y < d.objects(); ++y)
      if (f.obj[x] == g.obj[y]) {
        objs.insert({x, y});
        b.add_object("(" + c.obj_name[x] + "," + d.obj_name[y] + ")");
        pb.p1.obj.push_back(x);
        pb.p2.obj.push_back(y);
      }
  for (int m = 0; m < c.morphisms(); ++m)
    for (int n = 0; n < d.morphisms(); ++n)
      if (f.mor[m] == g.mor[n]) {
        int s = objs.find({c.src[m], d.src[n]}), t = objs.find({c.tgt[m], d.tgt[n]});
        mors.insert({m, n});
        b.add_morphism(s, t, "(" + c.mor_name[m] + "," + d.mor_name[n] + ")");
        pb.p1.mor.push_back(m);
        pb.p2.mor.push_back(n);
      }
  for (int o = 0; o < objs.size(); ++o) {
    const Key& k = objs.key(o);
    b.set_identity(o, mors.find({c.ident[k[0]], d.ident[k[1]]}));
  }
  pb.cat = b.finish([&](int q, int p) {
    const Key &kp = mors.key(p), &kq = mors.key(q);
    return mors.find({c.c(kq[0], kp[0]), d.c(kq[1], kp[1])});
  });
  return pb;
}

Category ordinal(int n) {
  CategoryBuilder b("[" + std::to_string(n) + "]");
  for (int i = 0; i <= n; ++i) b.add_object(std::to_string(i));
  KeyIndex mors;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      mors.insert({i, j});
      b.add_morphism(i, j, std::to_string(i) + "<=" + std::to_string(j));
    }
  for (int i = 0; i <= n; ++i) b.set_identity(i, mors.find({i, i}));
  return b.finish([&](int g, int f) { return mors.find({mors.key(f)[0], mors.key(g)[1]}); });
}

Category contractible_groupoid(int n) {
  CategoryBuilder b("J" + std::to_string(n));
  for (int i = 0; i <= n; ++i) b.add_object(std::to_string(i));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) b.add_morphism(i, j, std::to_string(i) + "~" + std::to_string(j));
  for (int i = 0; i <= n; ++i) b.set_identity(i, i * (n + 1) + i);
  return b.finish([n](int g, int f) { return (f / (n + 1)) * (n + 1) + g % (n + 1); });
}

Report check_tau1_nerve(const Category& c, int trunc) {
  Report r;
  SSet nc = nerve(c, std::max(2, trunc));
  Tau1Result t = tau1(nc);
  if (t.cat.objects() != c.objects() || t.cat.morphisms() != c.morphisms()) {
    r.add("tau1_nerve_iso", false,
          "sizes " + std::to_string(t.cat.objects()) + "/" + std::to_string(t.cat.morphisms()) + " vs " +
              std::to_string(c.objects()) + "/" + std::to_string(c.morphisms()));
    return r;
  }
  Functor f = identity_functor(c);
  for (int m = 0; m < c.morphisms(); ++m) f.mor[m] = t.edge_to_mor[nc.find(1, {m})];
  auto fr = check_functor(f, c, t.cat);
  std::vector<int> sorted = f.mor;
  std::sort(sorted.begin(), sorted.end());
  bool bij = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  r.add("tau1_nerve_iso", fr.ok() && bij, fr.ok() ? (bij ? "" : "not bijective on morphisms") : fr.first_failure()->witness);
  return r;
}

json to_json(const Category& c) {
  json j;
  j["name"] = c.name;
  j["objects"] = c.obj_name;
  json mors = json::array();
  for (int f = 0; f < c.morphisms(); ++f)
    mors.push_back({{"name", c.mor_name[f]}, {"source", c.obj_name[c.src[f]]}, {"target", c.obj_name[c.tgt[f]]}});
  j["morphisms"] = mors;
  json ids = json::object();
  for (int a = 0; a < c.objects(); ++a) ids[c.obj_name[a]] = c.mor_name[c.ident[a]];
  j["identities"] = ids;
  json comp = json::array();
  for (int f = 0; f < c.morphisms(); ++f)
    for (int g : c.out[c.tgt[f]]) comp.push_back({c.mor_name[g], c.mor_name[f], c.mor_name[c.c(g, f)]});
  j["composition"] = comp;
  return j;
}

json to_json(const Functor& f, const Category& c, const Category& d) {
  json j;
  json om = json::object(), mm = json::object();
  for (int a = 0; a < c.objects(); ++a) om[c.obj_name[a]] = d.obj_name[f.obj[a]];
  for (int m = 0; m < c.morphisms(); ++m) mm[c.mor_name[m]] = d.mor_name[f.mor[m]];
  j["source"] = c.name;
  j["target"] = d.name;
  j["objects"] = om;
  j["morphisms"] = mm;
  return j;
}

}  // namespace waldkit
