#ifndef TWINLAB_POLYGON_HPP
#define TWINLAB_POLYGON_HPP

#include <optional>
#include <string>
#include <vector>

#include "twinlab/rational.hpp"
#include "twinlab/report.hpp"

namespace twinlab {

// The right-angled Fuchsian reflection group of the regular r-gon tiling
// of H^2 (r >= 5): generators r_0..r_{r-1} indexed by Z/r, with r_i^2 = 1
// and r_i r_{i+1} = r_{i+1} r_i for cyclically adjacent indices only.
// Words are kept in ShortLex normal form (generator order 0 < 1 < ... <
// r-1): geodesic, with every commuting adjacent pair sorted.
using PWord = std::vector<int>;

bool polygon_commutes(int r, int x, int y);

// ShortLex normal form; throws for r < 5.  Idempotent; the length of the
// result is the Coxeter length.
PWord polygon_reduce(int r, const PWord& w);
PWord polygon_mul(int r, const PWord& a, const PWord& b);
PWord polygon_inverse(PWord w);
std::string pword_str(const PWord& w);

// all canonical words of length <= radius (BFS ball around the identity)
std::vector<PWord> polygon_ball(int r, int radius);

// growth series of W: d_0 = 1, d_1 = r, d_n = r(r-2)^{n-1}
std::vector<long long> growth_series(int r, int N);
// BFS word-enumeration cross-check of the formula
CheckReport growth_series_check(int r, int N);

// covolume of the Borel subgroup: sum_n d_n / q^n; finite iff q >= r-1
struct Covolume {
  bool divergent = false;
  Rat value;  // meaningful when !divergent
  std::string str() const { return divergent ? "divergent" : value.str(); }
};
Covolume covolume(int r, long long q);
// partial sum of the series through term N (for cross-checks)
Rat covolume_partial(int r, long long q, int N);

// A root w.a_i of the tiling, stored by its type i and the minimal-length
// (= ShortLex-least) representative of the coset w<r_{i-1}, r_{i+1}>.
struct PolygonRoot {
  PWord w;
  int i = 0;

  bool operator==(const PolygonRoot& o) const { return i == o.i && w == o.w; }
  bool operator!=(const PolygonRoot& o) const { return !(*this == o); }
  bool operator<(const PolygonRoot& o) const {
    if (w.size() != o.w.size()) return w.size() < o.w.size();
    if (w != o.w) return w < o.w;
    return i < o.i;
  }
  std::string str() const { return pword_str(w) + ".a" + std::to_string(i); }
};

PolygonRoot polygon_root(int r, const PWord& w, int i);  // canonicalizes
inline PolygonRoot polygon_simple_root(int i) { return {{}, i}; }
PolygonRoot polygon_opposite(int r, const PolygonRoot& a);
PolygonRoot polygon_reflect(int r, int j, const PolygonRoot& a);
PolygonRoot polygon_apply_word(int r, const PWord& v, const PolygonRoot& a);

// chamber membership: c in w.a_i
bool polygon_chamber_in_root(int r, const PWord& c, const PolygonRoot& a);
bool polygon_root_positive(int r, const PolygonRoot& a);

// sign epsilon_a: parity of the number of walls of type iota(a) crossed
// by a minimal gallery from the base chamber to the canonical chamber
// adjacent to the wall of a
int polygon_epsilon(const PolygonRoot& a);

// wall relations (any two walls of the tiling are equal, orthogonal, or parallel)
bool polygon_same_wall(int r, const PolygonRoot& a, const PolygonRoot& b);
bool polygon_orthogonal_walls(int r, const PolygonRoot& a, const PolygonRoot& b);

// half-space containment a <= b, decided on the chamber window of radius
// len(w_a) + len(w_b) + 2 (both walls lie inside; relations between them
// are determined there)
bool polygon_contains(int r, const PolygonRoot& outer, const PolygonRoot& inner);
// prenilpotent iff walls orthogonal or roots nested
bool polygon_prenilpotent(int r, const PolygonRoot& a, const PolygonRoot& b);

// positive roots whose canonical representative has length <= radius
std::vector<PolygonRoot> polygon_positive_roots(int r, int radius);

}  // namespace twinlab

#endif
