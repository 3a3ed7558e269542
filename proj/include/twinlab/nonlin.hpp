#ifndef TWINLAB_NONLIN_HPP
#define TWINLAB_NONLIN_HPP

#include <string>
#include <vector>

#include "twinlab/fuchsian.hpp"

namespace twinlab {

// Finite certificates behind the non-linearity theorem: two exponent-p
// subgroups V_i, V_j of U_+ supported on translated root sequences
// a_i(n) = (s_i s_{i+2})^n a_i along parallel walls with different
// characteristics, their free product inside B at bounded syllable
// length, and the unbounded growth of (v v')^n.
struct NonlinWitness {
  int i = 0;
  int j = 0;
  std::vector<PolygonRoot> roots_i;
  std::vector<PolygonRoot> roots_j;
};

// root sequence a_i(0..depth); the builder checks the nesting a_i(n+1)
// strictly contains a_i(n) and pairwise prenilpotency
std::vector<PolygonRoot> build_vi_roots(const FuchsianCtx& cfg, int i, int depth);

// picks (i, j) with parallel walls and different characteristics
// (default preference j = i + 2), validating the cross pairs are not
// prenilpotent
NonlinWitness build_witness(const FuchsianCtx& cfg, int depth);

struct FreeProductReport {
  CheckReport rep;
  int checked_to = 0;
  long long words_checked = 0;
  long long collisions = 0;
};
// all alternating words in nontrivial V_i / V_j syllables up to syllable
// length L have pairwise distinct normal forms
FreeProductReport certify_free_product(const FuchsianCtx& cfg, const NonlinWitness& w, int L);

struct OrderGrowthReport {
  CheckReport rep;
  std::vector<long long> lengths;  // syllable lengths of (v v')^n
  bool v_exponent_ok = false;      // v^{p_i} = 1
  bool vp_exponent_ok = false;     // v'^{p_j} = 1
};
// (v v')^n has syllable length exactly 2n for n <= N
OrderGrowthReport certify_infinite_order(const FuchsianCtx& cfg, const NonlinWitness& w,
                                         const FuchsianUWord& v, const FuchsianUWord& vp, int N);

// exponent p elements: every element of <V_i> raised to p_i is trivial
CheckReport verify_exponent(const FuchsianCtx& cfg, const std::vector<PolygonRoot>& roots);

// JSON report for the CLI
std::string nonlin_report_json(const FuchsianCtx& cfg, const NonlinWitness& w,
                               const FreeProductReport& fp, const OrderGrowthReport& og);

}  // namespace twinlab

#endif
