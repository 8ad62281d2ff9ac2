#include "waldkit/simpset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace waldkit {

std::vector<int> SSet::level_sizes() const {
  std::vector<int> out;
  for (int n = 0; n <= trunc; ++n) out.push_back(size(n));
  return out;
}

SSet build_sset(const SimplicialModel& m) {
  if (static_cast<int>(m.levels.size()) != m.trunc + 1) throw std::invalid_argument("build_sset: level count mismatch");
  SSet s;
  s.trunc = m.trunc;
  s.cosk = m.cosk;
  s.keys = m.levels;
  s.index.resize(m.trunc + 1);
  s.names.resize(m.trunc + 1);
  s.faces.resize(m.trunc + 1);
  s.degens.resize(m.trunc + 1);
  for (int n = 0; n <= m.trunc; ++n) {
    for (int x = 0; x < s.size(n); ++x) {
      if (!s.index[n].emplace(s.keys[n][x], x).second) throw std::logic_error("build_sset: duplicate simplex");
      s.names[n].push_back(m.name ? m.name(n, s.keys[n][x]) : "(" + join_ints(s.keys[n][x]) + ")");
    }
  }
  for (int n = 0; n <= m.trunc; ++n) {
    s.faces[n].resize(s.size(n));
    s.degens[n].resize(s.size(n));
    for (int x = 0; x < s.size(n); ++x) {
      if (n >= 1)
        for (int i = 0; i <= n; ++i) {
          int f = s.find(n - 1, m.face(n, s.keys[n][x], i));
          if (f < 0) throw std::logic_error("build_sset: face leaves the model at level " + std::to_string(n));
          s.faces[n][x].push_back(f);
        }
      if (n < m.trunc)
        for (int i = 0; i <= n; ++i) {
          int g = s.find(n + 1, m.degen(n, s.keys[n][x], i));
          if (g < 0) throw std::logic_error("build_sset: degeneracy leaves the model at level " + std::to_string(n));
          s.degens[n][x].push_back(g);
        }
    }
  }
  return s;
}

namespace {

Key erase_at(const Key& k, int i) {
  Key out = k;
  out.erase(out.begin() + i);
  return out;
}

Key dup_at(const Key& k, int i) {
  Key out = k;
  out.insert(out.begin() + i, k[i]);
  return out;
}

std::string seq_name(int, const Key& k) { return "<" + join_ints(k) + ">"; }

SSet sequences(int trunc, const std::function<std::vector<Key>(int)>& level, std::optional<int> cosk) {
  SimplicialModel m;
  m.trunc = trunc;
  m.cosk = cosk;
  for (int n = 0; n <= trunc; ++n) m.levels.push_back(level(n));
  m.face = [](int, const Key& k, int i) { return erase_at(k, i); };
  m.degen = [](int, const Key& k, int i) { return dup_at(k, i); };
  m.name = seq_name;
  return build_sset(m);
}

std::vector<Key> all_functions(int n, int target) {
  std::vector<Key> out;
  Key cur(n + 1, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos > n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= target; ++v) {
      cur[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

SSet standard_simplex(int n, int trunc) {
  if (n < 0) throw std::invalid_argument("standard_simplex: n < 0");
  return sequences(trunc, [n](int k) { return monotone_maps(k, n); }, 2);
}

SSet boundary_simplex(int n, int trunc) {
  if (n < 0) throw std::invalid_argument("boundary_simplex: n < 0");
  return sequences(
      trunc,
      [n](int k) {
        std::vector<Key> out;
        for (auto& a : monotone_maps(k, n)) {
          std::set<int> img(a.begin(), a.end());
          if (static_cast<int>(img.size()) < n + 1) out.push_back(a);
        }
        return out;
      },
      std::nullopt);
}

SSet horn(int n, int k, int trunc) {
  if (n < 0) throw std::invalid_argument("horn: n < 0");
  if (k < 0 || k > n) throw std::invalid_argument("horn: k out of range");
  return sequences(
      trunc,
      [n, k](int l) {
        std::vector<Key> out;
        for (auto& a : monotone_maps(l, n)) {
          std::set<int> img(a.begin(), a.end());
          img.insert(k);
          if (static_cast<int>(img.size()) < n + 1) out.push_back(a);
        }
        return out;
      },
      std::nullopt);
}

SSet interval_groupoid(int n, int trunc) {
  if (n < 0) throw std::invalid_argument("interval_groupoid: n < 0");
  return sequences(trunc, [n](int k) { return all_functions(k, n); }, 2);
}

SSet basic_complex(ComplexKind kind, int n, std::optional<int> k, int trunc) {
  switch (kind) {
    case ComplexKind::standard:
      return standard_simplex(n, trunc);
    case ComplexKind::boundary:
      return boundary_simplex(n, trunc);
    case ComplexKind::horn:
      if (!k) throw std::invalid_argument("horn: missing k");
      return horn(n, *k, trunc);
    case ComplexKind::interval_groupoid:
      return interval_groupoid(n, trunc);
  }
  throw std::invalid_argument("basic_complex: unknown kind");
}

SSet truncate(const SSet& x, int trunc) {
  if (trunc > x.trunc || trunc < 0) throw std::invalid_argument("truncate: bad dimension");
  SSet out = x;
  out.trunc = trunc;
  out.keys.resize(trunc + 1);
  out.names.resize(trunc + 1);
  out.faces.resize(trunc + 1);
  out.degens.resize(trunc + 1);
  out.index.resize(trunc + 1);
  for (auto& v : out.degens[trunc]) v.clear();
  return out;
}

SSet product(const SSet& x, const SSet& y, SMap* p1, SMap* p2) {
  if (x.trunc != y.trunc) throw std::invalid_argument("product: mismatched truncation");
  SimplicialModel m;
  m.trunc = x.trunc;
  if (x.cosk && y.cosk) m.cosk = std::max(*x.cosk, *y.cosk);
  for (int n = 0; n <= x.trunc; ++n) {
    std::vector<Key> lv;
    lv.reserve(static_cast<std::size_t>(x.size(n)) * y.size(n));
    for (int a = 0; a < x.size(n); ++a)
      for (int b = 0; b < y.size(n); ++b) lv.push_back({a, b});
    m.levels.push_back(std::move(lv));
  }
  m.face = [&](int n, const Key& k, int i) { return Key{x.d(n, k[0], i), y.d(n, k[1], i)}; };
  m.degen = [&](int n, const Key& k, int i) { return Key{x.s(n, k[0], i), y.s(n, k[1], i)}; };
  m.name = [&](int n, const Key& k) { return "(" + x.names[n][k[0]] + "," + y.names[n][k[1]] + ")"; };
  SSet out = build_sset(m);
  if (p1 || p2) {
    SMap a, b;
    for (int n = 0; n <= out.trunc; ++n) {
      a.at.emplace_back();
      b.at.emplace_back();
      for (auto& k : out.keys[n]) {
        a.at[n].push_back(k[0]);
        b.at[n].push_back(k[1]);
      }
    }
    if (p1) *p1 = std::move(a);
    if (p2) *p2 = std::move(b);
  }
  return out;
}

PullbackResult pullback(const SSet& x, const SMap& f, const SSet& y, const SMap& g, const SSet& z) {
  if (x.trunc != y.trunc || x.trunc != z.trunc) throw std::invalid_argument("pullback: mismatched truncation");
  if (f.at.size() != static_cast<std::size_t>(z.trunc + 1) || g.at.size() != f.at.size())
    throw std::invalid_argument("pullback: codomain mismatch");
  SimplicialModel m;
  m.trunc = x.trunc;
  if (x.cosk && y.cosk && z.cosk) m.cosk = std::max({*x.cosk, *y.cosk, *z.cosk});
  for (int n = 0; n <= x.trunc; ++n) {
    std::vector<std::vector<int>> bucket(z.size(n));
    for (int b = 0; b < y.size(n); ++b) bucket[g.at[n][b]].push_back(b);
    std::vector<Key> lv;
    for (int a = 0; a < x.size(n); ++a)
      for (int b : bucket[f.at[n][a]]) lv.push_back({a, b});
    m.levels.push_back(std::move(lv));
  }
  m.face = [&](int n, const Key& k, int i) { return Key{x.d(n, k[0], i), y.d(n, k[1], i)}; };
  m.degen = [&](int n, const Key& k, int i) { return Key{x.s(n, k[0], i), y.s(n, k[1], i)}; };
  m.name = [&](int n, const Key& k) { return "(" + x.names[n][k[0]] + "," + y.names[n][k[1]] + ")"; };
  PullbackResult r;
  r.set = build_sset(m);
  for (int n = 0; n <= r.set.trunc; ++n) {
    r.p1.at.emplace_back();
    r.p2.at.emplace_back();
    for (auto& k : r.set.keys[n]) {
      r.p1.at[n].push_back(k[0]);
      r.p2.at[n].push_back(k[1]);
    }
  }
  return r;
}

SSet subcomplex(const SSet& x, const std::vector<std::vector<char>>& keep, SMap* inclusion) {
  SSet out;
  out.trunc = x.trunc;
  out.cosk = std::nullopt;
  std::vector<std::vector<int>> newid(x.trunc + 1);
  out.keys.resize(x.trunc + 1);
  out.names.resize(x.trunc + 1);
  out.index.resize(x.trunc + 1);
  out.faces.resize(x.trunc + 1);
  out.degens.resize(x.trunc + 1);
  for (int n = 0; n <= x.trunc; ++n) {
    newid[n].assign(x.size(n), -1);
    for (int a = 0; a < x.size(n); ++a)
      if (keep[n][a]) {
        newid[n][a] = static_cast<int>(out.keys[n].size());
        out.index[n].emplace(x.keys[n][a], newid[n][a]);
        out.keys[n].push_back(x.keys[n][a]);
        out.names[n].push_back(x.names[n][a]);
      }
  }
  for (int n = 0; n <= x.trunc; ++n)
    for (int a = 0; a < x.size(n); ++a) {
      if (!keep[n][a]) continue;
      std::vector<int> fs, ds;
      if (n >= 1)
        for (int f : x.faces[n][a]) {
          if (newid[n - 1][f] < 0) throw std::logic_error("subcomplex: not closed under faces");
          fs.push_back(newid[n - 1][f]);
        }
      if (n < x.trunc)
        for (int g : x.degens[n][a]) {
          if (newid[n + 1][g] < 0) throw std::logic_error("subcomplex: not closed under degeneracies");
          ds.push_back(newid[n + 1][g]);
        }
      out.faces[n].push_back(std::move(fs));
      out.degens[n].push_back(std::move(ds));
    }
  if (inclusion) {
    inclusion->at.assign(x.trunc + 1, {});
    for (int n = 0; n <= x.trunc; ++n)
      for (int a = 0; a < x.size(n); ++a)
        if (keep[n][a]) inclusion->at[n].push_back(a);
  }
  return out;
}

SMap identity_map(const SSet& x) {
  SMap f;
  for (int n = 0; n <= x.trunc; ++n) {
    f.at.emplace_back(x.size(n));
    std::iota(f.at[n].begin(), f.at[n].end(), 0);
  }
  return f;
}

SMap compose(const SMap& g, const SMap& f) {
  SMap h;
  for (std::size_t n = 0; n < f.at.size(); ++n) {
    h.at.emplace_back();
    for (int v : f.at[n]) h.at[n].push_back(g.at[n][v]);
  }
  return h;
}

Report check_simplicial_map(const SSet& x, const SSet& y, const SMap& f) {
  Report r;
  if (x.trunc != y.trunc || f.at.size() != static_cast<std::size_t>(x.trunc + 1)) {
    r.add("shape", false, "truncation mismatch");
    return r;
  }
  for (int n = 0; n <= x.trunc; ++n)
    if (static_cast<int>(f.at[n].size()) != x.size(n)) {
      r.add("shape", false, "level " + std::to_string(n) + " size");
      return r;
    }
  for (int n = 0; n <= x.trunc; ++n)
    for (int a = 0; a < x.size(n); ++a) {
      for (int i = 0; n >= 1 && i <= n; ++i)
        if (f.at[n - 1][x.d(n, a, i)] != y.d(n, f.at[n][a], i)) {
          r.add("commutes_with_faces", false, "level " + std::to_string(n) + " " + x.names[n][a] + " d" + std::to_string(i));
          return r;
        }
      for (int i = 0; n < x.trunc && i <= n; ++i)
        if (f.at[n + 1][x.s(n, a, i)] != y.s(n, f.at[n][a], i)) {
          r.add("commutes_with_degeneracies", false, "level " + std::to_string(n) + " " + x.names[n][a] + " s" + std::to_string(i));
          return r;
        }
    }
  r.add("commutes_with_operators", true);
  return r;
}

int apply_op(const SSet& x, int n, int simplex, const std::vector<int>& alpha) {
  int k = static_cast<int>(alpha.size()) - 1;
  if (k > x.trunc) throw std::invalid_argument("apply_op: target level beyond truncation");
  std::vector<char> in_image(n + 1, 0);
  for (int v : alpha) {
    if (v < 0 || v > n) throw std::invalid_argument("apply_op: value out of range");
    in_image[v] = 1;
  }
  for (int i = 1; i <= k; ++i)
    if (alpha[i] < alpha[i - 1]) throw std::invalid_argument("apply_op: not monotone");
  int cur = simplex, level = n;
  for (int v = n; v >= 0; --v)
    if (!in_image[v]) {
      cur = x.d(level, cur, v);
      --level;
    }
  // Now cur sits at level |image|-1; insert repeats left to right.
  for (int p = 0; p < k; ++p)
    if (alpha[p] == alpha[p + 1]) {
      cur = x.s(level, cur, p);
      ++level;
    }
  return cur;
}

std::vector<char> nondegenerate(const SSet& x, int n) {
  std::vector<char> nd(x.size(n), 1);
  if (n == 0) return nd;
  for (int y = 0; y < x.size(n - 1); ++y)
    for (int g : x.degens[n - 1][y]) nd[g] = 0;
  return nd;
}

namespace {

std::string loc(const SSet& x, int n, int a) { return "level " + std::to_string(n) + " simplex " + x.names[n][a]; }

}  // namespace

Report validate_simplicial_identities(const SSet& x) {
  Report r;
  auto fail = [&](const std::string& w) {
    r.add("simplicial_identities", false, w);
    return r;
  };
  for (int n = 0; n <= x.trunc; ++n) {
    if (static_cast<int>(x.faces[n].size()) != x.size(n) || static_cast<int>(x.degens[n].size()) != x.size(n))
      return fail("level " + std::to_string(n) + " table size");
    for (int a = 0; a < x.size(n); ++a) {
      if (static_cast<int>(x.faces[n][a].size()) != (n >= 1 ? n + 1 : 0)) return fail(loc(x, n, a) + " face arity");
      if (static_cast<int>(x.degens[n][a].size()) != (n < x.trunc ? n + 1 : 0)) return fail(loc(x, n, a) + " degeneracy arity");
      for (int f : x.faces[n][a])
        if (f < 0 || f >= x.size(n - 1)) return fail(loc(x, n, a) + " face out of range");
      for (int g : x.degens[n][a])
        if (g < 0 || g >= x.size(n + 1)) return fail(loc(x, n, a) + " degeneracy out of range");
    }
  }
  for (int n = 0; n <= x.trunc; ++n)
    for (int a = 0; a < x.size(n); ++a) {
      for (int j = 1; n >= 2 && j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (x.d(n - 1, x.d(n, a, j), i) != x.d(n - 1, x.d(n, a, i), j - 1))
            return fail(loc(x, n, a) + " d" + std::to_string(i) + "d" + std::to_string(j) + "=d" + std::to_string(j - 1) + "d" + std::to_string(i));
      if (n >= x.trunc) continue;
      for (int j = 0; j <= n; ++j) {
        int sj = x.s(n, a, j);
        for (int i = 0; i <= n + 1; ++i) {
          int lhs = x.d(n + 1, sj, i);
          std::string id = " d" + std::to_string(i) + "s" + std::to_string(j);
          if (i < j) {
            if (lhs != x.s(n - 1, x.d(n, a, i), j - 1)) return fail(loc(x, n, a) + id + "=s" + std::to_string(j - 1) + "d" + std::to_string(i));
          } else if (i == j || i == j + 1) {
            if (lhs != a) return fail(loc(x, n, a) + id + "=id");
          } else {
            if (lhs != x.s(n - 1, x.d(n, a, i - 1), j)) return fail(loc(x, n, a) + id + "=s" + std::to_string(j) + "d" + std::to_string(i - 1));
          }
        }
      }
      if (n + 1 >= x.trunc) continue;
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          if (x.s(n + 1, x.s(n, a, j), i) != x.s(n + 1, x.s(n, a, i), j + 1))
            return fail(loc(x, n, a) + " s" + std::to_string(i) + "s" + std::to_string(j) + "=s" + std::to_string(j + 1) + "s" + std::to_string(i));
    }
  for (int n = 0; n < x.trunc; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<char> hit(x.size(n + 1), 0);
      for (int a = 0; a < x.size(n); ++a) {
        int g = x.s(n, a, i);
        if (hit[g]) return fail(loc(x, n, a) + " s" + std::to_string(i) + " not injective");
        hit[g] = 1;
      }
    }
  r.add("simplicial_identities", true);
  return r;
}

Report check_eilenberg_zilber(const SSet& x) {
  Report r;
  std::vector<std::vector<int>> hits(x.trunc + 1);
  for (int n = 0; n <= x.trunc; ++n) hits[n].assign(x.size(n), 0);
  std::function<void(int, int, int)> rec = [&](int level, int cur, int last) {
    ++hits[level][cur];
    if (level >= x.trunc) return;
    for (int j = last + 1; j <= level; ++j) rec(level + 1, x.s(level, cur, j), j);
  };
  for (int n = 0; n <= x.trunc; ++n) {
    auto nd = nondegenerate(x, n);
    for (int a = 0; a < x.size(n); ++a)
      if (nd[a]) rec(n, a, -1);
  }
  for (int n = 0; n <= x.trunc; ++n)
    for (int a = 0; a < x.size(n); ++a)
      if (hits[n][a] != 1) {
        r.add("eilenberg_zilber", false, loc(x, n, a) + " has " + std::to_string(hits[n][a]) + " representations");
        return r;
      }
  r.add("eilenberg_zilber", true);
  return r;
}

std::string HomologyResult::str() const {
  std::string s = "[";
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (k) s += ", ";
    s += groups[k].str();
  }
  return s + "]";
}

json HomologyResult::to_json() const {
  json j = json::array();
  for (const auto& g : groups) j.push_back(g.str());
  return j;
}

HomologyResult homology(const SSet& x, int max_degree) {
  if (max_degree > x.trunc - 1 || max_degree < 0)
    throw std::invalid_argument("homology: degree beyond reliable range (unknown, truncated)");
  int top = max_degree + 1;
  std::vector<std::vector<int>> nid(top + 1);
  std::vector<int> count(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    auto nd = nondegenerate(x, n);
    nid[n].assign(x.size(n), -1);
    for (int a = 0; a < x.size(n); ++a)
      if (nd[a]) nid[n][a] = count[n]++;
  }
  std::vector<SNFResult> bd(top + 2);
  for (int n = 1; n <= top; ++n) {
    SparseMatrix m;
    m.rows = count[n];
    m.cols = count[n - 1];
    for (int a = 0; a < x.size(n); ++a) {
      if (nid[n][a] < 0) continue;
      for (int i = 0; i <= n; ++i) {
        int f = nid[n - 1][x.d(n, a, i)];
        if (f >= 0) m.entries.emplace_back(nid[n][a], f, (i % 2) ? -1 : 1);
      }
    }
    bd[n] = smith_normal_form(m);
  }
  HomologyResult res;
  res.valid_upto = max_degree;
  for (int k = 0; k <= max_degree; ++k) {
    int rk_out = k >= 1 ? bd[k].rank : 0;
    AbelianGroup g;
    g.free_rank = count[k] - rk_out - bd[k + 1].rank;
    g.torsion = bd[k + 1].torsion;
    res.groups.push_back(g);
  }
  return res;
}

std::vector<int> components(const SSet& x, int* count) {
  std::vector<int> parent(x.size(0));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
  if (x.trunc >= 1)
    for (int e = 0; e < x.size(1); ++e) {
      int a = root(x.d(1, e, 0)), b = root(x.d(1, e, 1));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> label(x.size(0), -1), rootlabel(x.size(0), -1);
  int c = 0;
  for (int v = 0; v < x.size(0); ++v) {
    int r = root(v);
    if (rootlabel[r] < 0) rootlabel[r] = c++;
    label[v] = rootlabel[r];
  }
  if (count) *count = c;
  return label;
}

SSet diagonal(const BiSSet& b) {
  if (b.t1 != b.t2) throw std::invalid_argument("diagonal: truncations differ");
  SSet s;
  s.trunc = b.t1;
  s.keys.resize(s.trunc + 1);
  s.names.resize(s.trunc + 1);
  s.index.resize(s.trunc + 1);
  s.faces.resize(s.trunc + 1);
  s.degens.resize(s.trunc + 1);
  for (int n = 0; n <= s.trunc; ++n) {
    for (int a = 0; a < b.size(n, n); ++a) {
      s.keys[n].push_back({a});
      s.index[n].emplace(Key{a}, a);
      s.names[n].push_back(b.names[n][n][a]);
      std::vector<int> fs, ds;
      for (int i = 0; n >= 1 && i <= n; ++i) fs.push_back(b.hface[n][n - 1][b.vface[n][n][a][i]][i]);
      for (int i = 0; n < s.trunc && i <= n; ++i) ds.push_back(b.hdeg[n][n + 1][b.vdeg[n][n][a][i]][i]);
      s.faces[n].push_back(std::move(fs));
      s.degens[n].push_back(std::move(ds));
    }
  }
  return s;
}

BiSSet external_product(const SSet& x, const SSet& y) {
  BiSSet b;
  b.t1 = x.trunc;
  b.t2 = y.trunc;
  auto dims = [&](auto& v) {
    v.assign(b.t1 + 1, {});
    for (auto& row : v) row.resize(b.t2 + 1);
  };
  dims(b.names);
  dims(b.hface);
  dims(b.vface);
  dims(b.hdeg);
  dims(b.vdeg);
  for (int p = 0; p <= b.t1; ++p)
    for (int q = 0; q <= b.t2; ++q)
      for (int a = 0; a < x.size(p); ++a)
        for (int c = 0; c < y.size(q); ++c) {
          b.names[p][q].push_back("(" + x.names[p][a] + "," + y.names[q][c] + ")");
          std::vector<int> hf, vf, hd, vd;
          for (int i = 0; p >= 1 && i <= p; ++i) hf.push_back(x.d(p, a, i) * y.size(q) + c);
          for (int i = 0; q >= 1 && i <= q; ++i) vf.push_back(a * y.size(q - 1) + y.d(q, c, i));
          for (int i = 0; p < b.t1 && i <= p; ++i) hd.push_back(x.s(p, a, i) * y.size(q) + c);
          for (int i = 0; q < b.t2 && i <= q; ++i) vd.push_back(a * y.size(q + 1) + y.s(q, c, i));
          b.hface[p][q].push_back(std::move(hf));
          b.vface[p][q].push_back(std::move(vf));
          b.hdeg[p][q].push_back(std::move(hd));
          b.vdeg[p][q].push_back(std::move(vd));
        }
  return b;
}

namespace {

SSet raw_sset(int trunc, std::vector<std::vector<std::string>> names, std::vector<std::vector<std::vector<int>>> faces,
              std::vector<std::vector<std::vector<int>>> degens) {
  SSet s;
  s.trunc = trunc;
  s.names = std::move(names);
  s.faces = std::move(faces);
  s.degens = std::move(degens);
  s.keys.resize(trunc + 1);
  s.index.resize(trunc + 1);
  for (int n = 0; n <= trunc; ++n)
    for (int a = 0; a < static_cast<int>(s.names[n].size()); ++a) {
      s.keys[n].push_back({a});
      s.index[n].emplace(Key{a}, a);
    }
  return s;
}

}  // namespace

Report validate_bisimplicial(const BiSSet& b) {
  Report r;
  for (int q = 0; q <= b.t2; ++q) {
    std::vector<std::vector<std::string>> nm;
    std::vector<std::vector<std::vector<int>>> fs, ds;
    for (int p = 0; p <= b.t1; ++p) {
      nm.push_back(b.names[p][q]);
      fs.push_back(b.hface[p][q]);
      ds.push_back(b.hdeg[p][q]);
    }
    auto rep = validate_simplicial_identities(raw_sset(b.t1, nm, fs, ds));
    if (!rep.ok()) {
      r.add("horizontal_identities", false, "column " + std::to_string(q) + ": " + rep.first_failure()->witness);
      return r;
    }
  }
  for (int p = 0; p <= b.t1; ++p) {
    auto rep = validate_simplicial_identities(raw_sset(b.t2, b.names[p], b.vface[p], b.vdeg[p]));
    if (!rep.ok()) {
      r.add("vertical_identities", false, "row " + std::to_string(p) + ": " + rep.first_failure()->witness);
      return r;
    }
  }
  for (int p = 0; p <= b.t1; ++p)
    for (int q = 0; q <= b.t2; ++q)
      for (int a = 0; a < b.size(p, q); ++a) {
        std::string w = "(" + std::to_string(p) + "," + std::to_string(q) + ") " + b.names[p][q][a];
        for (int i = 0; p >= 1 && i <= p; ++i)
          for (int j = 0; q >= 1 && j <= q; ++j)
            if (b.vface[p - 1][q][b.hface[p][q][a][i]][j] != b.hface[p][q - 1][b.vface[p][q][a][j]][i]) {
              r.add("operators_commute", false, w + " dh/dv");
              return r;
            }
        for (int i = 0; p < b.t1 && i <= p; ++i)
          for (int j = 0; q < b.t2 && j <= q; ++j)
            if (b.vdeg[p + 1][q][b.hdeg[p][q][a][i]][j] != b.hdeg[p][q + 1][b.vdeg[p][q][a][j]][i]) {
              r.add("operators_commute", false, w + " sh/sv");
              return r;
            }
        for (int i = 0; p >= 1 && i <= p; ++i)
          for (int j = 0; q < b.t2 && j <= q; ++j)
            if (b.vdeg[p - 1][q][b.hface[p][q][a][i]][j] != b.hface[p][q + 1][b.vdeg[p][q][a][j]][i]) {
              r.add("operators_commute", false, w + " dh/sv");
              return r;
            }
        for (int i = 0; p < b.t1 && i <= p; ++i)
          for (int j = 0; q >= 1 && j <= q; ++j)
            if (b.vface[p + 1][q][b.hdeg[p][q][a][i]][j] != b.hdeg[p][q - 1][b.vface[p][q][a][j]][i]) {
              r.add("operators_commute", false, w + " sh/dv");
              return r;
            }
      }
  r.add("bisimplicial_identities", true);
  return r;
}

void for_each_map(const SSet& s, const SSet& x, const LevelImages* fixed,
                  const std::function<bool(const LevelImages&)>& visit, std::size_t budget) {
  int top = std::min(2, s.trunc);
  if (x.trunc < top) throw std::invalid_argument("for_each_map: target truncated below source skeleton");
  std::vector<std::vector<char>> nd(top + 1);
  for (int n = 0; n <= top; ++n) nd[n] = nondegenerate(s, n);

  // Candidate lookup in X by face tuple.
  std::vector<KeyMap<std::vector<int>>> by_faces(top + 1);
  for (int n = 1; n <= top; ++n)
    for (int a = 0; a < x.size(n); ++a) by_faces[n][x.faces[n][a]].push_back(a);

  // Static order: a nondegenerate simplex is placed once all its faces are known.
  std::vector<std::pair<int, int>> order;
  std::vector<std::vector<char>> known(top + 1);
  std::vector<std::vector<int>> missing(top + 1);
  std::vector<std::vector<std::vector<int>>> cofaces(top + 1);
  for (int n = 0; n <= top; ++n) {
    known[n].assign(s.size(n), 0);
    missing[n].assign(s.size(n), n >= 1 ? n + 1 : 0);
    cofaces[n].resize(s.size(n));
  }
  for (int n = 1; n <= top; ++n)
    for (int a = 0; a < s.size(n); ++a)
      if (nd[n][a])
        for (int i = 0; i <= n; ++i) cofaces[n - 1][s.d(n, a, i)].push_back(a);
  std::vector<std::pair<int, int>> ready;
  std::function<void(int, int)> mark = [&](int n, int a) {
    if (known[n][a]) return;
    known[n][a] = 1;
    for (int c : cofaces[n][a])
      if (--missing[n + 1][c] == 0) ready.emplace_back(n + 1, c);
    if (n < top)
      for (int g : s.degens[n][a]) mark(n + 1, g);
  };
  for (int v = 0; v < s.size(0); ++v) {
    order.emplace_back(0, v);
    mark(0, v);
    while (!ready.empty()) {
      auto item = ready.back();
      ready.pop_back();
      if (known[item.first][item.second]) continue;
      order.emplace_back(item);
      mark(item.first, item.second);
    }
  }

  LevelImages img(top + 1);
  for (int n = 0; n <= top; ++n) img[n].assign(s.size(n), -1);
  std::vector<std::pair<int, int>> trail;
  std::size_t steps = 0;
  bool stop = false;

  std::function<bool(int, int, int)> assign = [&](int n, int a, int val) {
    if (img[n][a] >= 0) return img[n][a] == val;
    if (fixed && (*fixed)[n][a] >= 0 && (*fixed)[n][a] != val) return false;
    img[n][a] = val;
    trail.emplace_back(n, a);
    if (n < top)
      for (int i = 0; i <= n; ++i)
        if (!assign(n + 1, s.s(n, a, i), x.s(n, val, i))) return false;
    return true;
  };
  auto undo = [&](std::size_t mark_at) {
    while (trail.size() > mark_at) {
      img[trail.back().first][trail.back().second] = -1;
      trail.pop_back();
    }
  };
  static const std::vector<int> kEmpty;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (stop) return;
    if (pos == order.size()) {
      if (!visit(img)) stop = true;
      return;
    }
    auto [n, a] = order[pos];
    const std::vector<int>* cands;
    std::vector<int> all;
    if (n == 0) {
      all.resize(x.size(0));
      std::iota(all.begin(), all.end(), 0);
      cands = &all;
    } else {
      std::vector<int> f(n + 1);
      for (int i = 0; i <= n; ++i) f[i] = img[n - 1][s.d(n, a, i)];
      auto it = by_faces[n].find(f);
      cands = it == by_faces[n].end() ? &kEmpty : &it->second;
    }
    for (int c : *cands) {
      charge(++steps, budget, "map enumeration");
      std::size_t at = trail.size();
      if (assign(n, a, c)) rec(pos + 1);
      undo(at);
      if (stop) return;
    }
  };
  rec(0);
}

namespace {

// Nondegenerate simplices of Delta[n] of dimension <= 2 in lexicographic order.
std::vector<Key> skeleton_simplices(int n) {
  std::vector<Key> out;
  for (int d = 0; d <= std::min(2, n); ++d) {
    Key cur(d + 1);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos > d) {
        out.push_back(cur);
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

}  // namespace

int extend_from_skeleton(const SSet& x, int n, const LevelImages& skeleton) {
  // skeleton[d] lists images of the nondegenerate d-simplices of Delta[n].
  if (n > x.trunc) return -1;
  auto sk = skeleton_simplices(n);
  Key want;
  for (const auto& lv : skeleton)
    for (int v : lv) want.push_back(v);
  if (want.size() != sk.size()) throw std::invalid_argument("extend_from_skeleton: wrong skeleton size");
  int found = -1;
  for (int a = 0; a < x.size(n); ++a) {
    bool ok = true;
    for (std::size_t t = 0; t < sk.size() && ok; ++t) ok = apply_op(x, n, a, sk[t]) == want[t];
    if (ok) {
      if (found >= 0) throw std::logic_error("extend_from_skeleton: target is not 2-coskeletal");
      found = a;
    }
  }
  return found;
}

SSet cotensor_into_coskeletal(const SSet& a, const SSet& x, int up_to, const std::vector<LevelImages>* vertices) {
  if (!x.cosk || *x.cosk > 2) throw std::invalid_argument("cotensor_into_coskeletal: target not flagged <=2-coskeletal");
  if (a.trunc < 2 || x.trunc < 2) throw std::invalid_argument("cotensor_into_coskeletal: need levels 0..2");
  if (up_to < 0) throw std::invalid_argument("cotensor_into_coskeletal: negative level");
  SSet a2 = truncate(a, 2);
  std::vector<SSet> delta, prod;
  for (int m = 0; m <= up_to; ++m) {
    delta.push_back(standard_simplex(m, 2));
    prod.push_back(product(a2, delta[m]));
  }
  auto flatten = [](const LevelImages& li) {
    Key k;
    for (const auto& lv : li) k.insert(k.end(), lv.begin(), lv.end());
    return k;
  };
  std::vector<KeyIndex> levels(up_to + 1);
  auto record = [&](int m) {
    return [&levels, &flatten, m](const LevelImages& li) {
      levels[m].insert(flatten(li));
      return true;
    };
  };
  for (int m = 0; m <= up_to; ++m) {
    if (!vertices) {
      for_each_map(prod[m], x, nullptr, record(m));
      continue;
    }
    // Slices A x {j} fixed to a tuple of allowed vertex maps.
    std::vector<std::size_t> pick(m + 1, 0);
    while (!vertices->empty()) {
      LevelImages fixed(3);
      for (int l = 0; l <= 2; ++l)
        for (const auto& k : prod[m].keys[l]) {
          const Key& b = delta[m].keys[l][k[1]];
          bool flat = std::all_of(b.begin(), b.end(), [&](int v) { return v == b[0]; });
          fixed[l].push_back(flat ? (*vertices)[pick[b[0]]][l][k[0]] : -1);
        }
      for_each_map(prod[m], x, &fixed, record(m));
      int j = m;
      while (j >= 0 && ++pick[j] == vertices->size()) pick[j--] = 0;
      if (j < 0) break;
    }
  }
  // Reindexing tables: position in prod[m'] flattened key -> position in prod[m].
  auto table = [&](int from, int to, const std::function<Key(const Key&)>& op) {
    std::vector<int> offs_to(4, 0), offs_from(4, 0);
    for (int l = 0; l < 3; ++l) {
      offs_to[l + 1] = offs_to[l] + prod[to].size(l);
      offs_from[l + 1] = offs_from[l] + prod[from].size(l);
    }
    std::vector<int> t;
    for (int l = 0; l <= 2; ++l)
      for (const auto& k : prod[from].keys[l]) {
        Key b = op(delta[from].keys[l][k[1]]);
        int bi = delta[to].find(l, b);
        int pi = prod[to].find(l, Key{k[0], bi});
        t.push_back(offs_to[l] + pi);
      }
    return t;
  };
  SSet out;
  out.trunc = up_to;
  out.cosk = 2;
  out.keys.resize(up_to + 1);
  out.names.resize(up_to + 1);
  out.index.resize(up_to + 1);
  out.faces.resize(up_to + 1);
  out.degens.resize(up_to + 1);
  for (int m = 0; m <= up_to; ++m) {
    out.keys[m] = levels[m].keys();
    for (int i = 0; i < levels[m].size(); ++i) {
      out.index[m].emplace(out.keys[m][i], i);
      out.names[m].push_back("f" + std::to_string(m) + "." + std::to_string(i));
    }
  }
  for (int m = 0; m <= up_to; ++m) {
    out.faces[m].resize(out.size(m));
    out.degens[m].resize(out.size(m));
    for (int i = 0; m >= 1 && i <= m; ++i) {
      auto t = table(m - 1, m, [i](const Key& b) {
        Key c = b;
        for (int& v : c)
          if (v >= i) ++v;
        return c;
      });
      for (int f = 0; f < out.size(m); ++f) {
        Key nk(t.size());
        for (std::size_t p = 0; p < t.size(); ++p) nk[p] = out.keys[m][f][t[p]];
        int id = levels[m - 1].find(nk);
        if (id < 0) throw std::logic_error("cotensor: face not found");
        out.faces[m][f].push_back(id);
      }
    }
    for (int i = 0; m < up_to && i <= m; ++i) {
      auto t = table(m + 1, m, [i](const Key& b) {
        Key c = b;
        for (int& v : c)
          if (v > i) --v;
        return c;
      });
      for (int f = 0; f < out.size(m); ++f) {
        Key nk(t.size());
        for (std::size_t p = 0; p < t.size(); ++p) nk[p] = out.keys[m][f][t[p]];
        int id = levels[m + 1].find(nk);
        if (id < 0) throw std::logic_error("cotensor: degeneracy not found");
        out.degens[m][f].push_back(id);
      }
    }
  }
  return out;
}

json to_json(const SSet& x) {
  json j;
  j["trunc_dim"] = x.trunc;
  json levels = json::array();
  for (int n = 0; n <= x.trunc; ++n) levels.push_back(x.names[n]);
  j["levels"] = levels;
  json faces = json::object(), degens = json::object();
  for (int n = 0; n <= x.trunc; ++n) {
    if (n >= 1) {
      json lv = json::array();
      for (int a = 0; a < x.size(n); ++a) {
        json row = json::array();
        for (int f : x.faces[n][a]) row.push_back(x.names[n - 1][f]);
        lv.push_back(row);
      }
      faces[std::to_string(n)] = lv;
    }
    if (n < x.trunc) {
      json lv = json::array();
      for (int a = 0; a < x.size(n); ++a) {
        json row = json::array();
        for (int g : x.degens[n][a]) row.push_back(x.names[n + 1][g]);
        lv.push_back(row);
      }
      degens[std::to_string(n)] = lv;
    }
  }
  j["faces"] = faces;
  j["degeneracies"] = degens;
  j["coskeletal_bound"] = x.cosk ? json(*x.cosk) : json(nullptr);
  return j;
}

SSet sset_from_json(const json& j) {
  int trunc = j.at("trunc_dim").get<int>();
  std::vector<std::vector<std::string>> names(trunc + 1);
  std::vector<std::unordered_map<std::string, int>> lookup(trunc + 1);
  for (int n = 0; n <= trunc; ++n) {
    names[n] = j.at("levels").at(n).get<std::vector<std::string>>();
    for (int a = 0; a < static_cast<int>(names[n].size()); ++a)
      if (!lookup[n].emplace(names[n][a], a).second) throw std::invalid_argument("sset_from_json: duplicate id");
  }
  std::vector<std::vector<std::vector<int>>> faces(trunc + 1), degens(trunc + 1);
  for (int n = 0; n <= trunc; ++n) {
    faces[n].resize(names[n].size());
    degens[n].resize(names[n].size());
    if (n >= 1) {
      const auto& lv = j.at("faces").at(std::to_string(n));
      for (std::size_t a = 0; a < names[n].size(); ++a)
        for (const auto& f : lv.at(a)) faces[n][a].push_back(lookup[n - 1].at(f.get<std::string>()));
    }
    if (n < trunc) {
      const auto& lv = j.at("degeneracies").at(std::to_string(n));
      for (std::size_t a = 0; a < names[n].size(); ++a)
        for (const auto& g : lv.at(a)) degens[n][a].push_back(lookup[n + 1].at(g.get<std::string>()));
    }
  }
  SSet s = raw_sset(trunc, std::move(names), std::move(faces), std::move(degens));
  if (!j.at("coskeletal_bound").is_null()) s.cosk = j.at("coskeletal_bound").get<int>();
  return s;
}

}  // namespace waldkit
