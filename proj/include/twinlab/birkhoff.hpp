#ifndef TWINLAB_BIRKHOFF_HPP
#define TWINLAB_BIRKHOFF_HPP

#include <set>
#include <vector>

#include "twinlab/lambda.hpp"

namespace twinlab {

// Birkhoff normal form of a Lambda element: the sign-mixing double coset
// decompositions Lambda = |_| U_+ w T U_-  (plus shape) and
// Lambda = |_| U_- w T U_+ (minus shape).  Only the Weyl part w is a
//bijective invariant; the unipotent parts are kept as letter lists.
struct NegLetter {
  TreeRoot root;  // stored positive; stands for u_{-root}(k)
  FieldElem k;
};

struct BirkhoffForm {
  std::vector<int> w;  // reduced D-infinity word
  UPlusWord pos;
  TreeTorus torus;
  std::vector<NegLetter> neg;
};

// Rewrites g into the requested shape by multiplying the normalized state
// one letter at a time: wrong-side letters are resolved against the end
// of the reduced Weyl word through the rank-one 2x2 identities, and
// transported across it by the 2.C conjugations and the (mirror) Levi
// actions.  Every collision shortens the Weyl word or transports cleanly,
// so the procedure terminates structurally.
BirkhoffForm birkhoff_plus(const TreeConfig& cfg, const LambdaWord& g);
BirkhoffForm birkhoff_minus(const TreeConfig& cfg, const LambdaWord& g);

// Weyl part of g in U_+ w T U_-
std::vector<int> birkhoff_part(const TreeConfig& cfg, const LambdaWord& g);

// codistance d*(c_+, c_-) for chambers c_+ = g B and c_- = h B^-
std::vector<int> codistance(const TreeConfig& cfg, const LambdaWord& g, const LambdaWord& h);
// codistance d*(c_-, c_+), computed independently through the minus shape
std::vector<int> codistance_minus_first(const TreeConfig& cfg, const LambdaWord& h,
                                        const LambdaWord& g);

// Bounded brute-force membership oracle: searches u+ . w-word . t . u- = g
// over enumerated balls of U_+ and U_- words; returns true iff a witness
// is found within the bound.
bool birkhoff_membership_oracle(const TreeConfig& cfg, const LambdaWord& g,
                                const std::vector<int>& w, int root_window, int max_letters);

// same oracle with the balls enumerated once and reused across queries
class BirkhoffOracle {
public:
  BirkhoffOracle(const TreeConfig& cfg, int root_window, int max_letters);
  bool contains(const LambdaWord& g, const std::vector<int>& w) const;

private:
  const TreeConfig cfg_;
  std::vector<LambdaWord> uplus_;
  std::set<std::string> uminus_keys_;
};

}  // namespace twinlab

#endif
