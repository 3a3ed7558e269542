#ifndef TWINLAB_TREETWIN_HPP
#define TWINLAB_TREETWIN_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "twinlab/birkhoff.hpp"

namespace twinlab {

// A chamber of the positive (or negative) building at desk scale is its
// canonical coset representative: the alternating coset-letter sequence
// of the amalgam normal form.
using Chamber = std::vector<CosetLetter>;

std::string chamber_key(const Chamber& c);
LambdaWord chamber_word(const TreeConfig& cfg, const Chamber& c);
// negative chambers g B^-: representatives built from u_{-a_i}(r) m_i letters
LambdaWord neg_chamber_word(const TreeConfig& cfg, const Chamber& c);

// Ball of the twin tree: all chambers with at most `radius` letters,
// together with its panels.  A panel of type i is the set of chambers
// sharing the type-i wall; interior panels carry exactly 1 + q_i
// chambers (the building is semi-homogeneous of valencies 1+q_0, 1+q_1).
struct TreeBall {
  int radius = 0;
  std::vector<Chamber> chambers;              // sorted by (length, letters)
  std::map<std::string, int> index;           // chamber_key -> id
  struct Panel {
    int type = 0;
    std::vector<int> chamber_ids;
    bool interior = false;
  };
  std::vector<Panel> panels;
  std::vector<std::vector<int>> adjacency;    // chamber graph (shared panel)

  int id_of(const Chamber& c) const;
};

TreeBall tree_build_ball(const TreeConfig& cfg, int radius);

// W-distance between chambers: the Weyl part of gamma'^-1 gamma''
// (reduced because coset letters alternate)
std::vector<int> tree_w_distance(const TreeConfig& cfg, const Chamber& c, const Chamber& d);

// chamber image under the Lambda action, c -> letters of g * c
Chamber tree_act(const TreeConfig& cfg, const LambdaWord& g, const Chamber& c);

// --- verification suites ---

// TRD0-TRD4 inside a window of roots at distance <= W from E
CheckReport verify_trd(const TreeConfig& cfg, int window);
// twin axioms TW1-TW3 on all chamber pairs with <= window letters each
CheckReport verify_tw(const TreeConfig& cfg, int window);
// birkhoff_part vs the bounded membership oracle on random elements
CheckReport verify_birkhoff_oracle(const TreeConfig& cfg, long long samples, std::uint64_t seed);
// Moufang property at every panel of the radius-R ball
CheckReport verify_moufang(const TreeConfig& cfg, int radius);
// two words act identically on the ball iff they differ by a torus
// element with lambda^2 = 1 in both components (kernel of the action)
CheckReport verify_action_kernel(const TreeConfig& cfg, int radius, long long samples,
                                 std::uint64_t seed);
// (RT2c): U_+ = U_s (U_+ cap s^-1 U_+ s) on windowed truncations
CheckReport verify_rt2c(const TreeConfig& cfg, int window, long long samples, std::uint64_t seed);
// |{chambers at W-distance w}| = prod q_{iota(a)} over Phi_{w^-1}, l(w) <= maxlen
CheckReport verify_uw_factorization(const TreeConfig& cfg, int maxlen);

// --- parahoric restriction (1.C) ---

enum class TreeFacet { Vertex0, Vertex1, Edge };

struct ParahoricReport {
  CheckReport rep;
  // orders of sampled kernel elements of E_{m+1} -> E_m, per level m
  std::map<int, std::set<long long>> kernel_orders;
};
ParahoricReport parahoric_restrict(const TreeConfig& cfg, TreeFacet facet, int depth,
                                   long long samples, std::uint64_t seed);

// --- commensurability (1.B.3) ---

// Phi_{w^-1} as concrete roots
std::vector<TreeRoot> phi_w_inverse(const std::vector<int>& w);
// [Gamma : Gamma cap w Gamma w^-1] = prod q_{iota(a)}
long long commensurability_index(const TreeConfig& cfg, const std::vector<int>& w);
// cross-check against chamber counting and the Borel orbit on the ball
CheckReport commensurability_check(const TreeConfig& cfg, int maxlen);

// --- emitters ---

std::string tree_ball_json(const TreeConfig& cfg, const TreeBall& ball, char sign);
std::string tree_ball_dot(const TreeConfig& cfg, const TreeBall& ball, char sign);

}  // namespace twinlab

#endif
