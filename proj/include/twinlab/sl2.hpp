#ifndef TWINLAB_SL2_HPP
#define TWINLAB_SL2_HPP

#include <string>
#include <vector>

#include "twinlab/gfield.hpp"
#include "twinlab/report.hpp"

namespace twinlab {

// SL_2 over a field context in Bruhat normal form.  An element is either
// in the Borel subgroup, written u(r) t(lam), or in the big cell, written
// u(r) m(lam) u(r2), with
//
//   u(r)   = [[1, r], [0, 1]]          (upper unipotent)
//   t(lam) = [[lam, 0], [0, 1/lam]]
//   m(lam) = [[0, lam], [-1/lam, 0]]
//
// The form is unique, so structural equality is group equality.  Products
// are computed case by case from the Bruhat data; 2x2 matrices exist only
// as a test oracle (`Mat2`).
struct Sl2Elem {
  enum class Cell { Borel, BigCell };
  const FieldCtx* ctx = nullptr;
  Cell cell = Cell::Borel;
  FieldElem r, lam, r2;  // r2 meaningful in the big cell only

  bool operator==(const Sl2Elem& o) const {
    if (ctx != o.ctx || cell != o.cell || !(r == o.r) || !(lam == o.lam)) return false;
    return cell == Cell::Borel || r2 == o.r2;
  }
  bool operator!=(const Sl2Elem& o) const { return !(*this == o); }
  bool is_identity() const {
    return cell == Cell::Borel && r.is_zero() && lam.v == 1;
  }
};

Sl2Elem sl2_identity(const FieldCtx* K);
Sl2Elem sl2_u(const FieldCtx* K, FieldElem r);          // u(r)
Sl2Elem sl2_u_minus(const FieldCtx* K, FieldElem r);    // [[1,0],[-r,1]]
Sl2Elem sl2_t(const FieldCtx* K, FieldElem lam);        // t(lam), lam != 0
Sl2Elem sl2_m(const FieldCtx* K, FieldElem lam);        // m(lam), lam != 0

// Five-case product formula; never multiplies matrices.
Sl2Elem sl2_mul(const Sl2Elem& g, const Sl2Elem& h);
Sl2Elem sl2_inverse(const Sl2Elem& g);
Sl2Elem sl2_pow(const Sl2Elem& g, long long e);

// Matrix image (row major a,b,c,d) and oracle-side constructors.
struct Mat2 {
  FieldElem a, b, c, d;
  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
};
Mat2 sl2_matrix(const Sl2Elem& g);
Mat2 mat2_mul(const FieldCtx* K, const Mat2& x, const Mat2& y);
// Bruhat form with the stated matrix image; requires det = 1.
Sl2Elem sl2_from_matrix(const FieldCtx* K, FieldElem a, FieldElem b, FieldElem c, FieldElem d);

std::string sl2_str(const Sl2Elem& g);

// All group elements of SL_2(K); |SL_2(F_q)| = q(q-1)(q+1).
std::vector<Sl2Elem> sl2_all(const FieldCtx* K);

// Exhaustive check of the relation catalogue
//   m(lam)^-1 = m(-lam)
//   m(lam) u(r) m(lam)^-1 = u_-(lam^-2 r)
//   m(lam) u_-(r) m(lam)^-1 = u(lam^2 r)
//   m(lam) t(mu) m(lam)^-1 = t(mu)^-1
//   m(lam) m(mu) = t(-lam mu^-1)
//   t(lam) u(r) t(lam)^-1 = u(lam^2 r)
// over all parameter values, plus agreement of sl2_mul with the matrix
// oracle on every pair.  Requires q <= 16.
CheckReport sl2_relation_suite(const FieldCtx* K);

}  // namespace twinlab

#endif
