#include "waldkit/snf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace waldkit {
namespace {

struct Overflow {};

using Big = boost::multiprecision::cpp_int;

// Checked 64-bit arithmetic; Big falls through to plain operators.
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t neg(std::int64_t a) {
  if (a == INT64_MIN) throw Overflow{};
  return -a;
}
inline Big add(const Big& a, const Big& b) { return a + b; }
inline Big mul(const Big& a, const Big& b) { return a * b; }
inline Big neg(const Big& a) { return -a; }

template <class T>
T tabs(const T& a) {
  return a < 0 ? neg(a) : a;
}

template <class T>
using Row = std::vector<std::pair<int, T>>;

// x*a + y*b for sparse rows.
template <class T>
Row<T> combine(const T& x, const Row<T>& a, const T& y, const Row<T>& b) {
  Row<T> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int ca = i < a.size() ? a[i].first : INT32_MAX;
    int cb = j < b.size() ? b[j].first : INT32_MAX;
    T v = 0;
    int c;
    if (ca == cb) {
      v = add(mul(x, a[i].second), mul(y, b[j].second));
      c = ca;
      ++i;
      ++j;
    } else if (ca < cb) {
      v = mul(x, a[i].second);
      c = ca;
      ++i;
    } else {
      v = mul(y, b[j].second);
      c = cb;
      ++j;
    }
    if (v != 0) out.emplace_back(c, v);
  }
  return out;
}

template <class T>
void ext_gcd(const T& a, const T& b, T& g, T& x, T& y) {
  // Keep the pivot row when it already divides; otherwise alternation can cycle.
  if (b % a == 0) {
    g = tabs(a);
    x = a < 0 ? T(-1) : T(1);
    y = 0;
    return;
  }
  T old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    T q = old_r / r;
    T tmp = add(old_r, neg(mul(q, r)));
    old_r = r;
    r = tmp;
    tmp = add(old_s, neg(mul(q, s)));
    old_s = s;
    s = tmp;
    tmp = add(old_t, neg(mul(q, t)));
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = neg(old_r);
    old_s = neg(old_s);
    old_t = neg(old_t);
  }
  g = old_r;
  x = old_s;
  y = old_t;
}

// Row echelon form by unimodular row operations; zero rows dropped.
template <class T>
std::vector<Row<T>> echelon(std::vector<Row<T>> rows) {
  std::map<int, std::vector<Row<T>>> buckets;
  for (auto& r : rows)
    if (!r.empty()) buckets[r.front().first].push_back(std::move(r));
  std::vector<Row<T>> out;
  while (!buckets.empty()) {
    auto it = buckets.begin();
    int c = it->first;
    std::vector<Row<T>> group = std::move(it->second);
    buckets.erase(it);
    Row<T> pivot = std::move(group[0]);
    for (std::size_t k = 1; k < group.size(); ++k) {
      const Row<T>& r = group[k];
      T a = pivot.front().second, b = r.front().second, g, x, y;
      ext_gcd(a, b, g, x, y);
      Row<T> np = combine(x, pivot, y, r);
      Row<T> nr = combine(T(b / g), pivot, neg(T(a / g)), r);
      pivot = std::move(np);
      if (!nr.empty()) {
        if (nr.front().first == c) throw std::logic_error("echelon: elimination left a leading entry");
        buckets[nr.front().first].push_back(std::move(nr));
      }
    }
    out.push_back(std::move(pivot));
  }
  return out;
}

template <class T>
std::vector<Row<T>> transpose(const std::vector<Row<T>>& rows) {
  std::map<int, Row<T>> cols;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) cols[c].emplace_back(static_cast<int>(r), v);
  std::vector<Row<T>> out;
  for (auto& [c, row] : cols) out.push_back(std::move(row));
  return out;
}

template <class T>
std::vector<T> diagonal(const SparseMatrix& m) {
  std::vector<Row<T>> rows(m.rows);
  std::vector<std::map<int, T>> acc(m.rows);
  for (const auto& [r, c, v] : m.entries) {
    if (r < 0 || r >= m.rows || c < 0 || c >= m.cols) throw std::out_of_range("smith_normal_form: entry out of range");
    acc[r][c] = add(acc[r][c], T(v));
  }
  for (int r = 0; r < m.rows; ++r)
    for (auto& [c, v] : acc[r])
      if (v != 0) rows[r].emplace_back(c, v);
  for (int round = 0; round < 10000; ++round) {
    rows = echelon(std::move(rows));
    bool diag = std::all_of(rows.begin(), rows.end(), [](const Row<T>& r) { return r.size() == 1; });
    if (diag) {
      std::vector<T> d;
      for (auto& r : rows) d.push_back(tabs(r.front().second));
      return d;
    }
    rows = transpose(rows);
  }
  throw std::logic_error("smith_normal_form: no convergence");
}

template <class T>
T tgcd(T a, T b) {
  while (b != 0) {
    T t = a % b;
    a = b;
    b = t;
  }
  return a;
}

template <class T>
SNFResult finish(std::vector<T> d) {
  // Pairwise gcd/lcm until every entry divides the next.
  std::sort(d.begin(), d.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j) {
        if (d[j] % d[i] == 0) continue;
        T g = tgcd(d[i], d[j]);
        T l = mul(T(d[i] / g), d[j]);
        d[i] = g;
        d[j] = l;
        changed = true;
      }
    std::sort(d.begin(), d.end());
  }
  SNFResult res;
  res.rank = static_cast<int>(d.size());
  for (const T& v : d) {
    if (v == 1) continue;
    if (v > T(INT64_MAX)) throw std::overflow_error("smith_normal_form: invariant factor exceeds 64 bits");
    res.torsion.push_back(static_cast<std::int64_t>(v));
  }
  return res;
}

}  // namespace

SNFResult smith_normal_form(const SparseMatrix& m) {
  try {
    return finish(diagonal<std::int64_t>(m));
  } catch (const Overflow&) {
    return finish(diagonal<Big>(m));
  }
}

std::string AbelianGroup::str() const {
  std::string s;
  if (free_rank == 0 && torsion.empty()) return "0";
  if (free_rank > 0) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  for (auto t : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + std::to_string(t);
  }
  return s;
}

AbelianGroup cokernel(const SparseMatrix& relations) {
  SNFResult r = smith_normal_form(relations);
  return {relations.cols - r.rank, r.torsion};
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  // Normalize the combined torsion through a diagonal matrix.
  SparseMatrix m;
  m.rows = m.cols = static_cast<int>(a.torsion.size() + b.torsion.size());
  int i = 0;
  for (auto t : a.torsion) m.entries.emplace_back(i, i, t), ++i;
  for (auto t : b.torsion) m.entries.emplace_back(i, i, t), ++i;
  SNFResult r = smith_normal_form(m);
  return {a.free_rank + b.free_rank, r.torsion};
}

}  // namespace waldkit
