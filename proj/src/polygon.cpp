#include "twinlab/polygon.hpp"

#include <algorithm>
#include <set>

#include "twinlab/error.hpp"

namespace twinlab {

namespace {

void require_rank(int r) {
  if (r < 5) throw Error("right-angled r-gon tilings need r >= 5");
}

// One fold of the insertion normal form.  Returns true if a cancellation
// happened (caller reruns the fold until none do).
bool insert_pass(int r, const PWord& in, PWord& out) {
  bool cancelled = false;
  out.clear();
  for (int s : in) {
    // cancellation scan: s reaches any equal letter across a commuting run
    int stop = -1;
    bool gone = false;
    for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
      if (out[i] == s) {
        out.erase(out.begin() + i);
        gone = true;
        cancelled = true;
        break;
      }
      if (!polygon_commutes(r, out[i], s)) { stop = i; break; }
    }
    if (gone) continue;
    // s may sit at any position in (stop, end]; the lex-least choice is the
    // leftmost reachable slot currently holding a letter larger than s
    int pos = static_cast<int>(out.size());
    for (int i = stop + 1; i < static_cast<int>(out.size()); ++i)
      if (out[i] > s) { pos = i; break; }
    out.insert(out.begin() + pos, s);
  }
  return cancelled;
}

}  // namespace

bool polygon_commutes(int r, int x, int y) {
  if (x == y) return false;
  int d = ((x - y) % r + r) % r;
  return d == 1 || d == r - 1;
}

PWord polygon_reduce(int r, const PWord& w) {
  require_rank(r);
  for (int s : w)
    if (s < 0 || s >= r) throw Error("generator index out of range");
  PWord cur = w, next;
  while (insert_pass(r, cur, next)) cur.swap(next);
  return next;
}

PWord polygon_mul(int r, const PWord& a, const PWord& b) {
  PWord w = a;
  w.insert(w.end(), b.begin(), b.end());
  return polygon_reduce(r, w);
}

// representative of w^-1 (generators are involutions); not canonical itself
PWord polygon_inverse(PWord w) {
  std::reverse(w.begin(), w.end());
  return w;
}

std::string pword_str(const PWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += "r" + std::to_string(w[i]);
  }
  return s;
}

std::vector<PWord> polygon_ball(int r, int radius) {
  require_rank(r);
  // budget: d_n = r(r-2)^{n-1} words of length n, ~24 bytes+letters each
  {
    long double est = 1;
    long double layer = 1;
    for (int n = 1; n <= radius; ++n) {
      layer = (n == 1) ? r : layer * (r - 2);
      est += layer;
    }
    check_budget(static_cast<std::size_t>(est * (sizeof(PWord) + radius + 8)), "polygon_ball");
  }
  std::vector<PWord> all{{}};
  std::set<PWord> seen{{}};
  std::size_t frontier_begin = 0;
  for (int n = 1; n <= radius; ++n) {
    std::size_t frontier_end = all.size();
    for (std::size_t idx = frontier_begin; idx < frontier_end; ++idx) {
      PWord w = all[idx];
      for (int s = 0; s < r; ++s) {
        PWord nf = polygon_reduce(r, [&] { PWord v = w; v.push_back(s); return v; }());
        if (nf.size() == w.size() + 1 && seen.insert(nf).second) all.push_back(nf);
      }
    }
    frontier_begin = frontier_end;
  }
  return all;
}

std::vector<long long> growth_series(int r, int N) {
  require_rank(r);
  std::vector<long long> d(N + 1);
  d[0] = 1;
  if (N >= 1) d[1] = r;
  for (int n = 2; n <= N; ++n) d[n] = d[n - 1] * (r - 2);
  return d;
}

CheckReport growth_series_check(int r, int N) {
  CheckReport rep;
  rep.name = "growth_series_check r=" + std::to_string(r);
  auto d = growth_series(r, N);
  auto ball = polygon_ball(r, N);
  std::vector<long long> counts(N + 1, 0);
  for (const auto& w : ball) counts[w.size()]++;
  for (int n = 0; n <= N; ++n) {
    rep.bump("lengths_checked");
    if (counts[n] != d[n])
      rep.fail("d_" + std::to_string(n) + ": BFS " + std::to_string(counts[n]) +
               " vs formula " + std::to_string(d[n]));
  }
  return rep;
}

Covolume covolume(int r, long long q) {
  require_rank(r);
  if (q < 2) throw Error("thickness parameter q must be >= 2");
  if (q < r - 1) return {true, Rat()};
  // 1 + r/q + sum_{n>=2} r(r-2)^{n-1} q^{-n} = 1 + r/q + r(r-2)/(q(q-r+2))
  Rat v = Rat(1) + Rat(r, q) + Rat(static_cast<long long>(r) * (r - 2), q * (q - r + 2));
  return {false, v};
}

Rat covolume_partial(int r, long long q, int N) {
  auto d = growth_series(r, N);
  Rat sum(0);
  Rat qpow(1);
  for (int n = 0; n <= N; ++n) {
    sum = sum + Rat(d[n]) / qpow;
    if (n < N) qpow = qpow * Rat(q);
  }
  return sum;
}

PolygonRoot polygon_root(int r, const PWord& w, int i) {
  require_rank(r);
  if (i < 0 || i >= r) throw Error("root type out of range");
  PWord cur = polygon_reduce(r, w);
  const int j0 = ((i - 1) % r + r) % r, j1 = (i + 1) % r;
  // greedy descent to the minimal-length representative of w<r_{i-1}, r_{i+1}>
  bool moved = true;
  while (moved) {
    moved = false;
    for (int s : {j0, j1}) {
      PWord cand = cur;
      cand.push_back(s);
      cand = polygon_reduce(r, cand);
      if (cand.size() < cur.size()) {
        cur.swap(cand);
        moved = true;
      }
    }
  }
  return {cur, i};
}

PolygonRoot polygon_opposite(int r, const PolygonRoot& a) {
  PWord w = a.w;
  w.push_back(a.i);
  return polygon_root(r, w, a.i);
}

PolygonRoot polygon_reflect(int r, int j, const PolygonRoot& a) {
  PWord w{j};
  w.insert(w.end(), a.w.begin(), a.w.end());
  return polygon_root(r, w, a.i);
}

PolygonRoot polygon_apply_word(int r, const PWord& v, const PolygonRoot& a) {
  PWord w = v;
  w.insert(w.end(), a.w.begin(), a.w.end());
  return polygon_root(r, w, a.i);
}

bool polygon_chamber_in_root(int r, const PWord& c, const PolygonRoot& a) {
  // c in w.a_i  <=>  w^-1 c in a_i  <=>  l(r_i w^-1 c) > l(w^-1 c)
  PWord u = polygon_mul(r, polygon_inverse(a.w), c);
  PWord ru = u;
  ru.insert(ru.begin(), a.i);
  return polygon_reduce(r, ru).size() > u.size();
}

bool polygon_root_positive(int r, const PolygonRoot& a) {
  return polygon_chamber_in_root(r, {}, a);
}

int polygon_epsilon(const PolygonRoot& a) {
  // the wall crossed at step k of the canonical gallery has type w[k]
  int m = 0;
  for (int s : a.w)
    if (s == a.i) ++m;
  return (m % 2 == 0) ? 1 : -1;
}

bool polygon_same_wall(int r, const PolygonRoot& a, const PolygonRoot& b) {
  if (a.i != b.i) return false;  // wall type is well defined
  return a == b || polygon_opposite(r, a) == b;
}

bool polygon_orthogonal_walls(int r, const PolygonRoot& a, const PolygonRoot& b) {
  if (polygon_same_wall(r, a, b)) return false;
  // reflections rho = w r_i w^-1 commute iff the walls cross (at right angles here)
  PWord rho_a = polygon_mul(r, a.w, polygon_mul(r, {a.i}, polygon_inverse(a.w)));
  PWord rho_b = polygon_mul(r, b.w, polygon_mul(r, {b.i}, polygon_inverse(b.w)));
  return polygon_mul(r, polygon_mul(r, rho_a, rho_b), polygon_mul(r, rho_a, rho_b)).empty();
}

bool polygon_contains(int r, const PolygonRoot& outer, const PolygonRoot& inner) {
  if (outer == inner) return true;
  if (polygon_same_wall(r, outer, inner)) return false;  // opposite halves
  int radius = static_cast<int>(outer.w.size() + inner.w.size()) + 2;
  for (const auto& c : polygon_ball(r, radius))
    if (polygon_chamber_in_root(r, c, inner) && !polygon_chamber_in_root(r, c, outer))
      return false;  // found a chamber of inner outside outer
  return true;
}

bool polygon_prenilpotent(int r, const PolygonRoot& a, const PolygonRoot& b) {
  if (polygon_same_wall(r, a, b)) return a == b;
  if (polygon_orthogonal_walls(r, a, b)) return true;
  return polygon_contains(r, a, b) || polygon_contains(r, b, a);
}

std::vector<PolygonRoot> polygon_positive_roots(int r, int radius) {
  std::set<PolygonRoot> roots;
  for (const auto& c : polygon_ball(r, radius))
    for (int i = 0; i < r; ++i) {
      PolygonRoot a = polygon_root(r, c, i);
      if (static_cast<int>(a.w.size()) <= radius && polygon_root_positive(r, a)) roots.insert(a);
    }
  return {roots.begin(), roots.end()};
}

}  // namespace twinlab
