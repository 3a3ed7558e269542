#ifndef TWINLAB_FUCHSIAN_HPP
#define TWINLAB_FUCHSIAN_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "twinlab/gfield.hpp"
#include "twinlab/polygon.hpp"
#include "twinlab/report.hpp"
#include "twinlab/sl2.hpp"

namespace twinlab {

// Ground data for the rank-r Fuchsian construction: one field per panel
// type around the right-angled r-gon.  Holds memo caches for the polygon
// combinatorics (reflections and prenilpotency decisions are pure but
// expensive; the caches are value-transparent).
class FuchsianCtx {
public:
  int r;
  std::vector<const FieldCtx*> fields;

  FuchsianCtx(int rank, std::vector<const FieldCtx*> f);
  // copies share the configuration and start with fresh memo caches
  FuchsianCtx(const FuchsianCtx& o) : r(o.r), fields(o.fields) {}
  FuchsianCtx& operator=(const FuchsianCtx&) = delete;

  const FieldCtx* field_of(int type) const { return fields[((type % r) + r) % r]; }
  const FieldCtx* field_of(const PolygonRoot& a) const { return field_of(a.i); }
  std::uint32_t q(int type) const { return field_of(type)->q; }

  PolygonRoot reflect(int j, const PolygonRoot& a) const;
  bool prenilpotent(const PolygonRoot& a, const PolygonRoot& b) const;
  bool orthogonal(const PolygonRoot& a, const PolygonRoot& b) const;

private:
  mutable std::mutex mu_;  // guards the memo caches; results are value-pure
  mutable std::map<std::pair<int, PolygonRoot>, PolygonRoot> reflect_cache_;
  mutable std::map<std::pair<PolygonRoot, PolygonRoot>, bool> prenil_cache_;
  mutable std::map<std::pair<PolygonRoot, PolygonRoot>, bool> ortho_cache_;
};

// canonical order on roots used by the normal form
bool froot_less(const PolygonRoot& a, const PolygonRoot& b);

// An element of U_+ = lim U_w as a word of root-group letters in the
// partial-commutation normal form: adjacent letters on the same root
// merge additively; adjacent letters whose roots form a prenilpotent
// pair (nested or orthogonal walls) commute and are sorted; letters on
// non-prenilpotent roots never reorder (their groups generate freely).
struct FLetter {
  PolygonRoot root;
  FieldElem k;
  bool operator==(const FLetter& o) const { return root == o.root && k == o.k; }
};

struct FuchsianUWord {
  std::vector<FLetter> letters;
  bool operator==(const FuchsianUWord& o) const { return letters == o.letters; }
  bool operator!=(const FuchsianUWord& o) const { return !(*this == o); }
  bool is_identity() const { return letters.empty(); }
  std::string str() const;
};

FuchsianUWord fuchsian_letter(const FuchsianCtx& cfg, const PolygonRoot& a, FieldElem k);
FuchsianUWord fuchsian_umul(const FuchsianCtx& cfg, const FuchsianUWord& u,
                            const FuchsianUWord& v);
FuchsianUWord fuchsian_uinverse(const FuchsianCtx& cfg, const FuchsianUWord& u);
// canonicalize an arbitrary letter sequence (used by the confluence tests)
FuchsianUWord fuchsian_canonicalize(const FuchsianCtx& cfg, std::vector<FLetter> letters);
// t_j(lam) scaling on every letter of matching type
FuchsianUWord fuchsian_torus_act(const FuchsianCtx& cfg, const std::vector<FieldElem>& lams,
                                 const FuchsianUWord& u);

// The four generator shapes of U^{i,i+1} relative to the corner (i,i+1):
//   first:  u_i(v) u_{i+1}(t) u_a(k) u_{i+1}(t)^-1 u_i(v)^-1, wall in Q
//   second: u_i(v) u_a(k) u_i(v)^-1, wall in s_{i+1} Q (or touching da_{i+1} there)
//   third:  u_{i+1}(t) u_a(k) u_{i+1}(t)^-1, wall in s_i Q (or touching da_i there)
//   fourth: u_a(k), wall in s_i s_{i+1} Q (or touching either wall there)
enum class GenType { First, Second, Third, Fourth };

struct UGenerator {
  int pair_i = 0;  // the corner (i, i+1)
  GenType type = GenType::Fourth;
  FieldElem v;  // K_i conjugator (first/second)
  FieldElem t;  // K_{i+1} conjugator (first/third)
  PolygonRoot root;
  FieldElem k;  // nonzero

  bool operator==(const UGenerator& o) const;
  std::string str() const;
};

// classify a positive root relative to the corner (i, i+1); throws when
// the root lies on one of the corner walls
GenType classify_root(const FuchsianCtx& cfg, int i, const PolygonRoot& a);
UGenerator make_generator(const FuchsianCtx& cfg, int i, GenType gt, FieldElem v, FieldElem t,
                          const PolygonRoot& a, FieldElem k);
// expansion into U_+ (conjugators spelled out)
FuchsianUWord generator_to_uword(const FuchsianCtx& cfg, const UGenerator& g);

// conjugation action of the SL_2(K_{i+fi}) factor (fi = 0 or 1) of the
// Levi L_{i,i+1} on the generators, per the 4.C table
UGenerator fuchsian_levi_act(const FuchsianCtx& cfg, const Sl2Elem& g, int fi,
                             const UGenerator& x);
// action of the toric factor t_j(lam), j not in {i, i+1}
UGenerator fuchsian_levi_torus_act(const FuchsianCtx& cfg, int j, FieldElem lam,
                                   const UGenerator& x);

// 4.D: product relation for both SL_2 factors over all five Bruhat
// product cases and all four generator types, plus commutation of the
// two factors with each other and with the toric factors
CheckReport verify_fuchsian_product_relation(const FuchsianCtx& cfg, bool exhaustive,
                                             long long samples = 0, std::uint64_t seed = 0);

// windowed exhaustiveness/disjointness of the generator classification,
// including agreement with the sector-membership reading of 4.B
CheckReport verify_generator_classification(const FuchsianCtx& cfg, int window);

// local structure of the building: the link at a vertex of type (i,i+1)
// is complete bipartite K_{1+q_i, 1+q_{i+1}}; thicknesses are projective
// line cardinalities
struct LinkSpec {
  int i;
  long long left;   // 1 + q_i
  long long right;  // 1 + q_{i+1}
};
std::vector<LinkSpec> local_structure(const FuchsianCtx& cfg);

}  // namespace twinlab

#endif
