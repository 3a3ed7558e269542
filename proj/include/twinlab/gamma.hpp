#ifndef TWINLAB_GAMMA_HPP
#define TWINLAB_GAMMA_HPP

#include <map>
#include <string>
#include <vector>

#include "twinlab/polygon.hpp"
#include "twinlab/report.hpp"

namespace twinlab {

// The Bourdon lattice of the constant-thickness right-angled Fuchsian
// building: the graph product over the r-cycle of cyclic groups of order
// q+1,
//   Gamma_{r,1+q} = < gamma_0..gamma_{r-1} | gamma_i^{q+1} = 1,
//                                            [gamma_i, gamma_{i+1}] = 1 >.
// Normal form: syllables (i, e) with e in 1..q, no adjacent equal
// indices, and among consecutive commuting syllables (cyclically
// adjacent indices) the smaller index first.  It acts simply
// transitively on the chambers of the building, so ball chambers are
// just group elements.
struct GammaWord {
  std::vector<std::pair<int, int>> syllables;
  bool operator==(const GammaWord& o) const { return syllables == o.syllables; }
  bool operator!=(const GammaWord& o) const { return !(*this == o); }
  bool is_identity() const { return syllables.empty(); }
  std::string str() const;
};

GammaWord gamma_canonicalize(int r, long long q, std::vector<std::pair<int, int>> sylls);
GammaWord gamma_mul(int r, long long q, const GammaWord& x, const GammaWord& y);
GammaWord gamma_inverse(int r, long long q, const GammaWord& x);
GammaWord gamma_gen(int r, long long q, int i, int e);

// chamber complex of the ball of syllable radius R
struct FuchsianBall {
  int r = 0;
  long long q = 0;
  int radius = 0;
  std::vector<GammaWord> chambers;  // sorted by (syllable length, lex)
  std::map<std::string, int> index;
  struct Panel {
    int type;
    std::vector<int> chamber_ids;
    bool interior;
  };
  std::vector<Panel> panels;
  struct Vertex {
    int type;  // the corner (type, type+1)
    std::vector<int> chamber_ids;
    bool interior;
  };
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> adjacency;

  int id_of(const GammaWord& w) const;
};

FuchsianBall build_fuchsian_ball(int r, long long q, int radius);

// every interior vertex link is the complete bipartite K_{1+q,1+q}
CheckReport verify_links(const FuchsianBall& ball);
// every edge-loop of combinatorial length <= maxlen in the chamber graph
// contracts through panel chords and commuting squares
CheckReport verify_small_loops(const FuchsianBall& ball, int maxlen);

std::string fuchsian_ball_json(const FuchsianBall& ball);
std::string fuchsian_ball_dot(const FuchsianBall& ball);
// Poincare-disk rendering of the standard apartment; chambers of the
// W-ball of the given radius are shaded
std::string apartment_svg(int r, int depth, int shade_radius);

}  // namespace twinlab

#endif
