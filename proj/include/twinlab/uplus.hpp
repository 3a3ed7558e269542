#ifndef TWINLAB_UPLUS_HPP
#define TWINLAB_UPLUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "twinlab/gfield.hpp"
#include "twinlab/report.hpp"
#include "twinlab/sl2.hpp"
#include "twinlab/tree_roots.hpp"

namespace twinlab {

// Ground data for the tree construction: two fields K_0, K_1, one per
// vertex type.  They may coincide or have different characteristics.
struct TreeConfig {
  const FieldCtx* K[2];

  const FieldCtx* field_of(const TreeRoot& a) const { return K[a.type()]; }
  std::uint32_t q(int i) const { return K[i]->q; }
  std::uint32_t q_min() const { return std::min(K[0]->q, K[1]->q); }
  std::uint32_t q_max() const { return std::max(K[0]->q, K[1]->q); }
};

// T = K_0^x x K_1^x
struct TreeTorus {
  FieldElem l[2];

  bool is_identity() const { return l[0].v == 1 && l[1].v == 1; }
  bool operator==(const TreeTorus& o) const { return l[0] == o.l[0] && l[1] == o.l[1]; }
  bool operator!=(const TreeTorus& o) const { return !(*this == o); }
};
TreeTorus torus_identity(const TreeConfig& cfg);
TreeTorus torus_mul(const TreeTorus& a, const TreeTorus& b);
TreeTorus torus_inverse(const TreeTorus& t);

// An element of U_+ = A_0 * A_1 in free-product normal form: alternating
// blocks, each a finite supported sum over the root groups of P(a_i).
// Block supports are sorted by (wall distance from E, direction); values
// are nonzero; the empty word is the identity.
struct UBlock {
  int factor = 0;                                     // i of A_i
  std::vector<std::pair<TreeRoot, FieldElem>> entries;  // sorted, nonzero
};

struct UPlusWord {
  std::vector<UBlock> blocks;

  bool is_identity() const { return blocks.empty(); }
  bool operator==(const UPlusWord& o) const;
  bool operator!=(const UPlusWord& o) const { return !(*this == o); }
  std::string str() const;
};

bool root_order_less(const TreeRoot& a, const TreeRoot& b);

UPlusWord uplus_letter(const TreeConfig& cfg, const TreeRoot& a, FieldElem k);
UPlusWord uplus_mul(const TreeConfig& cfg, const UPlusWord& u, const UPlusWord& v);
UPlusWord uplus_inverse(const TreeConfig& cfg, const UPlusWord& u);
// (3B1): scales every supported entry by lambda_{iota(a)}^{2 eps_a}
UPlusWord torus_act(const TreeConfig& cfg, const TreeTorus& t, const UPlusWord& u);

// B = T |x U_+, written t * u with the torus on the left; the pair is a
// normal form.
struct BorelElem {
  TreeTorus t;
  UPlusWord u;

  bool operator==(const BorelElem& o) const { return t == o.t && u == o.u; }
  bool operator!=(const BorelElem& o) const { return !(*this == o); }
  bool is_identity() const { return t.is_identity() && u.is_identity(); }
};
BorelElem borel_identity(const TreeConfig& cfg);
BorelElem borel_mul(const TreeConfig& cfg, const BorelElem& a, const BorelElem& b);
BorelElem borel_inverse(const TreeConfig& cfg, const BorelElem& b);

// Generators of U^i (the normal closure in U_+ of all positive root
// groups except U_{a_i}):
//   first type:  u_i(r) u_a(k) u_i(r)^-1  with a in P(a_{1-i}), r in K_i
//   second type: u_a(k)                    with a in P(a_i) \ {a_i}
// The tuple (type, r, a, k) is a faithful representation.
struct TreeGenerator {
  enum class Type { First, Second };
  int side = 0;  // the i of U^i
  Type type = Type::Second;
  FieldElem conj_r;  // first type only (zero allowed)
  TreeRoot root;
  FieldElem k;  // nonzero

  bool operator==(const TreeGenerator& o) const {
    if (side != o.side || type != o.type || root != o.root || !(k == o.k)) return false;
    return type == Type::Second || conj_r == o.conj_r;
  }
  bool operator!=(const TreeGenerator& o) const { return !(*this == o); }
  std::string str() const;
};

TreeGenerator make_first(const TreeConfig& cfg, int side, FieldElem r, const TreeRoot& a, FieldElem k);
TreeGenerator make_second(const TreeConfig& cfg, int side, const TreeRoot& a, FieldElem k);

// Conjugation action of the Levi factor L_i = SL_2(K_i) x K_{1-i}^x on
// the generators of U^i: g is decomposed into u_i / m_i / t_i letters and
// the (3C1)-(3C4), (3B1) table is applied innermost letter first.  The
// degenerate first-type input with r = 0 routes through (3C3).
TreeGenerator levi_act(const TreeConfig& cfg, const Sl2Elem& g, int side, const TreeGenerator& x);
// action of the K_{1-i}^x factor of L_i
TreeGenerator levi_torus_act(const TreeConfig& cfg, FieldElem mu, int side, const TreeGenerator& x);

// expand a generator back into U_+ (and a word of generators likewise)
UPlusWord gen_to_uplus(const TreeConfig& cfg, const TreeGenerator& g);
UPlusWord gens_to_uplus(const TreeConfig& cfg, const std::vector<TreeGenerator>& gens);

// semidirect split U_+ = U_i |x U^i: u = u_i(c) * (product of generators)
struct UiSplit {
  FieldElem c;
  std::vector<TreeGenerator> gens;
};
UiSplit split_ui(const TreeConfig& cfg, const UPlusWord& u, int side);
// the right-handed split u = (product of generators) * u_i(c)
UiSplit split_ui_right(const TreeConfig& cfg, const UPlusWord& u, int side);

// The negative unipotent group U_- mirrors U_+ block for block: a word in
// the same data structure whose entry (a, k) stands for u_{-a}(k).  The
// same split applies, U_- = U_{-a_i} |x U^{-i}, with TreeGenerator tuples
// read as u_{-a_i}(r) u_{-a}(k) u_{-a_i}(r)^-1 resp. u_{-a}(k).  The Levi
// factor L_i also acts on U^{-i}; mirror_levi_act applies that action by
// decomposing g into u_{-i} / m_{-i} / t_i letters (2.B gives
// u_i(s) = u_{-i}(-1/s) m_{-i}(1/s) u_{-i}(-1/s) and m_{-i}(lam) =
// m_i(lam^-1), so any g decomposes).
TreeGenerator mirror_levi_act(const TreeConfig& cfg, const Sl2Elem& g, int side,
                              const TreeGenerator& x);
TreeGenerator mirror_levi_torus_act(const TreeConfig& cfg, FieldElem mu, int side,
                                    const TreeGenerator& x);

// Mechanized 3.D check: g (h v h^-1) g^-1 = (gh) v (gh)^-1 for g, h over
// the five Bruhat product cases in L_i, v over both generator types,
// covering the S = 0 and R - mu^2 S^-1 = 0 sub-branches.  Exhaustive mode
// requires q_0, q_1 <= 3; sampled mode draws `samples` tuples per side.
CheckReport verify_product_relation(const TreeConfig& cfg, bool exhaustive,
                                    long long samples = 0, std::uint64_t seed = 0);

}  // namespace twinlab

#endif
