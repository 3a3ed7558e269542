#ifndef TWINLAB_LAMBDA_HPP
#define TWINLAB_LAMBDA_HPP

#include <string>
#include <vector>

#include "twinlab/uplus.hpp"

namespace twinlab {

// An element of the amalgam Lambda = P_0 *_B P_1 in normal form
//
//   (u_{i_1}(r_1) m_{i_1}) (u_{i_2}(r_2) m_{i_2}) ... (u_{i_k}(r_k) m_{i_k)) * tail
//
// with alternating indices i_j != i_{j+1} and tail in B.  The coset
// representatives of B in P_i are {1} u {u_i(r) m_i : r in K_i} with
// m_i = m_i(1), so the letter list is exactly the chamber address of the
// positive building and the normal form is unique.
struct CosetLetter {
  int i = 0;
  FieldElem r;

  bool operator==(const CosetLetter& o) const { return i == o.i && r == o.r; }
  bool operator!=(const CosetLetter& o) const { return !(*this == o); }
};

struct LambdaWord {
  std::vector<CosetLetter> letters;
  BorelElem tail;

  bool operator==(const LambdaWord& o) const { return letters == o.letters && tail == o.tail; }
  bool operator!=(const LambdaWord& o) const { return !(*this == o); }
  bool is_identity() const { return letters.empty() && tail.is_identity(); }
  std::string str() const;
  // stable byte encoding, usable as a hash/map key
  std::string encode() const;
};

LambdaWord lambda_identity(const TreeConfig& cfg);
LambdaWord lambda_of_borel(const TreeConfig& cfg, const BorelElem& b);
LambdaWord lambda_of_uplus(const TreeConfig& cfg, const UPlusWord& u);
LambdaWord lambda_of_torus(const TreeConfig& cfg, const TreeTorus& t);
// u_{a_i}(k) for a positive root, as a group element
LambdaWord lambda_of_root_letter(const TreeConfig& cfg, const TreeRoot& a, FieldElem k);
// m_i(lam) = (coset letter (i, 0)) * t_i(lam^-1)
LambdaWord lambda_m(const TreeConfig& cfg, int i, FieldElem lam);
// u_{-a}(k) for a positive root a: simple roots expand through the big
// cell, u_{-a_j}(k) = u_j(-1/k) m_j(1/k) u_j(-1/k); other roots peel off
// reflections with unit parameter, u_{-a} = m_j u_{-s_j a} m_j^-1.
LambdaWord lambda_of_neg_root_letter(const TreeConfig& cfg, const TreeRoot& a, FieldElem k);

LambdaWord lambda_mul(const TreeConfig& cfg, const LambdaWord& x, const LambdaWord& y);
LambdaWord lambda_inverse(const TreeConfig& cfg, const LambdaWord& x);
LambdaWord lambda_conj(const TreeConfig& cfg, const LambdaWord& g, const LambdaWord& x);

// peeling word for a positive root: a = s_{j_1} ... s_{j_t} a_simple with
// every intermediate root positive
std::vector<int> tree_peel_word(const TreeRoot& a);

}  // namespace twinlab

#endif
