#ifndef TWINLAB_GFIELD_HPP
#define TWINLAB_GFIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "twinlab/error.hpp"

namespace twinlab {

class FieldCtx;

// An element of GF(p^k).  The coefficient vector (c_0,...,c_{k-1}) over
// GF(p) is packed base p into `v`, constant coefficient least significant,
// so v ranges over [0, q).  Elements of different contexts never mix;
// arithmetic across contexts throws.
struct FieldElem {
  const FieldCtx* ctx = nullptr;
  std::uint32_t v = 0;

  bool operator==(const FieldElem& o) const { return ctx == o.ctx && v == o.v; }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
  bool is_zero() const { return v == 0; }
};

// Exact arithmetic context for GF(p^k), q = p^k <= 2^16.  The modulus is
// the smallest monic irreducible of degree k over GF(p), where "smallest"
// compares the non-leading coefficient vector read as a base-p integer.
// For k = 1 the modulus is the placeholder x.  Contexts are interned:
// field_new(p, k) returns one canonical instance per (p, k), so pointer
// equality is context identity.
class FieldCtx {
public:
  std::uint32_t p, k, q;
  std::vector<std::uint32_t> modulus;  // degree-k monic: k+1 coefficients

  FieldElem zero() const { return {this, 0}; }
  FieldElem one() const { return {this, 1}; }
  FieldElem from_int(std::uint64_t n) const;  // packed value mod field structure (reduces digits mod p)
  FieldElem elem(std::uint32_t packed) const {
    if (packed >= q) throw Error("field element value out of range");
    return {this, packed};
  }

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem pow(FieldElem a, long long e) const;

  std::string to_string(FieldElem a) const { return std::to_string(a.v); }
  std::string name() const {
    return k == 1 ? std::to_string(p) : std::to_string(p) + "^" + std::to_string(k);
  }

private:
  friend const FieldCtx* field_new(std::uint32_t, std::uint32_t);
  FieldCtx() = default;
  void require_same(FieldElem a, FieldElem b) const;
};

// Returns the interned context for GF(p^k).  Throws on non-prime p,
// k < 1, or p^k > 2^16.
const FieldCtx* field_new(std::uint32_t p, std::uint32_t k = 1);

// Parses a CLI field spec "p" or "p^k", e.g. "2", "3", "2^2".
const FieldCtx* parse_field(const std::string& spec);

}  // namespace twinlab

#endif
