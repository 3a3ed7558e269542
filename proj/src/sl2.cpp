#include "twinlab/sl2.hpp"

#include <sstream>

namespace twinlab {

std::string CheckReport::summary() const {
  std::ostringstream os;
  os << name << ": " << (pass ? "pass" : "FAIL");
  for (const auto& [k, v] : counters) os << " " << k << "=" << v;
  if (!pass) os << "  first counterexample: " << first_counterexample;
  return os.str();
}

Sl2Elem sl2_identity(const FieldCtx* K) {
  return {K, Sl2Elem::Cell::Borel, K->zero(), K->one(), K->zero()};
}

Sl2Elem sl2_u(const FieldCtx* K, FieldElem r) {
  return {K, Sl2Elem::Cell::Borel, r, K->one(), K->zero()};
}

Sl2Elem sl2_t(const FieldCtx* K, FieldElem lam) {
  if (lam.is_zero()) throw Error("t(0) is not a torus element");
  return {K, Sl2Elem::Cell::Borel, K->zero(), lam, K->zero()};
}

Sl2Elem sl2_m(const FieldCtx* K, FieldElem lam) {
  if (lam.is_zero()) throw Error("m(0) is not defined");
  return {K, Sl2Elem::Cell::BigCell, K->zero(), lam, K->zero()};
}

Sl2Elem sl2_u_minus(const FieldCtx* K, FieldElem s) {
  // u_-(s) = u(-1/s) m(1/s) u(-1/s) for s != 0
  if (s.is_zero()) return sl2_identity(K);
  FieldElem si = K->inv(s);
  FieldElem msi = K->neg(si);
  return {K, Sl2Elem::Cell::BigCell, msi, si, msi};
}

Sl2Elem sl2_mul(const Sl2Elem& g, const Sl2Elem& h) {
  if (g.ctx != h.ctx) throw Error("SL2 context mismatch");
  const FieldCtx* K = g.ctx;
  const bool gb = g.cell == Sl2Elem::Cell::Borel;
  const bool hb = h.cell == Sl2Elem::Cell::Borel;
  // conventions: g = u(r) m(lam) u(r') or u(r) t(lam); h = u(s) m(mu) u(s') or u(s) t(mu)
  FieldElem r = g.r, lam = g.lam, rp = g.r2;
  FieldElem s = h.r, mu = h.lam, sp = h.r2;
  if (!gb && !hb) {
    FieldElem R = K->add(rp, s);
    if (!R.is_zero()) {
      // big * big in the big cell
      FieldElem Ri = K->inv(R);
      FieldElem nr = K->sub(r, K->mul(K->mul(lam, lam), Ri));
      FieldElem nl = K->neg(K->mul(K->mul(lam, mu), Ri));
      FieldElem nrp = K->sub(sp, K->mul(K->mul(mu, mu), Ri));
      return {K, Sl2Elem::Cell::BigCell, nr, nl, nrp};
    }
    // big * big in the Borel: u(r + lam^2 mu^-2 s') t(-lam/mu)
    FieldElem lt = K->neg(K->mul(lam, K->inv(mu)));
    FieldElem nr = K->add(r, K->mul(K->mul(lt, lt), sp));
    return {K, Sl2Elem::Cell::Borel, nr, lt, K->zero()};
  }
  if (gb && !hb) {
    // Borel * big: u(r + lam^2 s) m(lam mu) u(s')
    FieldElem nr = K->add(r, K->mul(K->mul(lam, lam), s));
    return {K, Sl2Elem::Cell::BigCell, nr, K->mul(lam, mu), sp};
  }
  if (!gb && hb) {
    // big * Borel: u(r) m(lam/mu) u(mu^-2 (r' + s))
    FieldElem mi = K->inv(mu);
    FieldElem nrp = K->mul(K->mul(mi, mi), K->add(rp, s));
    return {K, Sl2Elem::Cell::BigCell, r, K->mul(lam, mi), nrp};
  }
  // Borel * Borel
  FieldElem nr = K->add(r, K->mul(K->mul(lam, lam), s));
  return {K, Sl2Elem::Cell::Borel, nr, K->mul(lam, mu), K->zero()};
}

Sl2Elem sl2_inverse(const Sl2Elem& g) {
  const FieldCtx* K = g.ctx;
  if (g.cell == Sl2Elem::Cell::Borel) {
    // (u(r) t(lam))^-1 = u(-lam^-2 r) t(lam^-1)
    FieldElem li = K->inv(g.lam);
    return {K, Sl2Elem::Cell::Borel, K->neg(K->mul(K->mul(li, li), g.r)), li, K->zero()};
  }
  // (u(r) m(lam) u(r'))^-1 = u(-r') m(-lam) u(-r)
  return {K, Sl2Elem::Cell::BigCell, K->neg(g.r2), K->neg(g.lam), K->neg(g.r)};
}

Sl2Elem sl2_pow(const Sl2Elem& g, long long e) {
  Sl2Elem base = e < 0 ? sl2_inverse(g) : g;
  if (e < 0) e = -e;
  Sl2Elem acc = sl2_identity(g.ctx);
  while (e) {
    if (e & 1) acc = sl2_mul(acc, base);
    base = sl2_mul(base, base);
    e >>= 1;
  }
  return acc;
}

Mat2 sl2_matrix(const Sl2Elem& g) {
  const FieldCtx* K = g.ctx;
  if (g.cell == Sl2Elem::Cell::Borel) {
    // u(r) t(lam) = [[lam, r/lam], [0, 1/lam]]
    FieldElem li = K->inv(g.lam);
    return {g.lam, K->mul(g.r, li), K->zero(), li};
  }
  // u(r) m(lam) u(r') = [[-r/lam, lam - r r'/lam], [-1/lam, -r'/lam]]
  FieldElem li = K->inv(g.lam);
  FieldElem a = K->neg(K->mul(g.r, li));
  FieldElem b = K->sub(g.lam, K->mul(K->mul(g.r, g.r2), li));
  FieldElem c = K->neg(li);
  FieldElem d = K->neg(K->mul(g.r2, li));
  return {a, b, c, d};
}

Mat2 mat2_mul(const FieldCtx* K, const Mat2& x, const Mat2& y) {
  return {K->add(K->mul(x.a, y.a), K->mul(x.b, y.c)),
          K->add(K->mul(x.a, y.b), K->mul(x.b, y.d)),
          K->add(K->mul(x.c, y.a), K->mul(x.d, y.c)),
          K->add(K->mul(x.c, y.b), K->mul(x.d, y.d))};
}

Sl2Elem sl2_from_matrix(const FieldCtx* K, FieldElem a, FieldElem b, FieldElem c, FieldElem d) {
  FieldElem det = K->sub(K->mul(a, d), K->mul(b, c));
  if (det.v != 1) throw Error("matrix determinant is not 1");
  if (c.is_zero()) {
    // [[lam, r/lam], [0, 1/lam]]: lam = a, r = a b
    return {K, Sl2Elem::Cell::Borel, K->mul(a, b), a, K->zero()};
  }
  // lam = -1/c, r = a/c, r' = d/c
  FieldElem ci = K->inv(c);
  return {K, Sl2Elem::Cell::BigCell, K->mul(a, ci), K->neg(ci), K->mul(d, ci)};
}

std::string sl2_str(const Sl2Elem& g) {
  std::ostringstream os;
  if (g.cell == Sl2Elem::Cell::Borel)
    os << "u(" << g.r.v << ")t(" << g.lam.v << ")";
  else
    os << "u(" << g.r.v << ")m(" << g.lam.v << ")u(" << g.r2.v << ")";
  return os.str();
}

std::vector<Sl2Elem> sl2_all(const FieldCtx* K) {
  std::vector<Sl2Elem> out;
  out.reserve(static_cast<std::size_t>(K->q) * (K->q - 1) * (K->q + 1));
  for (std::uint32_t r = 0; r < K->q; ++r)
    for (std::uint32_t l = 1; l < K->q; ++l) {
      out.push_back({K, Sl2Elem::Cell::Borel, K->elem(r), K->elem(l), K->zero()});
      for (std::uint32_t r2 = 0; r2 < K->q; ++r2)
        out.push_back({K, Sl2Elem::Cell::BigCell, K->elem(r), K->elem(l), K->elem(r2)});
    }
  return out;
}

CheckReport sl2_relation_suite(const FieldCtx* K) {
  CheckReport rep;
  rep.name = "sl2_relation_suite GF(" + K->name() + ")";
  if (K->q > 16) throw Error("sl2_relation_suite is exhaustive; q <= 16 required");

  auto conj = [&](const Sl2Elem& g, const Sl2Elem& x) {
    return sl2_mul(sl2_mul(g, x), sl2_inverse(g));
  };
  auto expect = [&](const Sl2Elem& got, const Sl2Elem& want, const std::string& what) {
    rep.bump("identities");
    if (got != want) rep.fail(what + ": got " + sl2_str(got) + ", want " + sl2_str(want));
  };

  for (std::uint32_t lv = 1; lv < K->q; ++lv) {
    FieldElem lam = K->elem(lv);
    Sl2Elem m = sl2_m(K, lam);
    // m(lam)^-1 = m(-lam)
    expect(sl2_mul(m, sl2_m(K, K->neg(lam))), sl2_identity(K), "m(lam)m(-lam)=1");
    for (std::uint32_t rv = 0; rv < K->q; ++rv) {
      FieldElem r = K->elem(rv);
      FieldElem l2i = K->inv(K->mul(lam, lam));
      // m(lam) u(r) m(lam)^-1 = u_-(lam^-2 r)
      expect(conj(m, sl2_u(K, r)), sl2_u_minus(K, K->mul(l2i, r)), "m u m^-1 = u_-(lam^-2 r)");
      // m(lam) u_-(r) m(lam)^-1 = u(lam^2 r)
      expect(conj(m, sl2_u_minus(K, r)), sl2_u(K, K->mul(K->mul(lam, lam), r)),
             "m u_- m^-1 = u(lam^2 r)");
      // t(lam) u(r) t(lam)^-1 = u(lam^2 r)
      expect(conj(sl2_t(K, lam), sl2_u(K, r)), sl2_u(K, K->mul(K->mul(lam, lam), r)),
             "t u t^-1 = u(lam^2 r)");
    }
    for (std::uint32_t mv = 1; mv < K->q; ++mv) {
      FieldElem mu = K->elem(mv);
      // m(lam) t(mu) m(lam)^-1 = t(mu)^-1
      expect(conj(m, sl2_t(K, mu)), sl2_t(K, K->inv(mu)), "m t m^-1 = t^-1");
      // m(lam) m(mu) = t(-lam mu^-1)
      expect(sl2_mul(m, sl2_m(K, mu)), sl2_t(K, K->neg(K->mul(lam, K->inv(mu)))),
             "m(lam)m(mu) = t(-lam/mu)");
    }
  }

  // product formula vs. matrix oracle, all pairs
  auto all = sl2_all(K);
  for (const auto& g : all)
    for (const auto& h : all) {
      rep.bump("oracle_pairs");
      Sl2Elem gh = sl2_mul(g, h);
      Mat2 want = mat2_mul(K, sl2_matrix(g), sl2_matrix(h));
      if (!(sl2_matrix(gh) == want)) {
        rep.fail("product formula mismatch at g=" + sl2_str(g) + " h=" + sl2_str(h));
        return rep;
      }
      // 2.D headings: cell bookkeeping
      bool gb = g.cell == Sl2Elem::Cell::Borel, hb = h.cell == Sl2Elem::Cell::Borel;
      const char* key = gb ? (hb ? "case_2D5" : "case_2D3")
                           : (hb ? "case_2D4" : (K->add(g.r2, h.r).is_zero() ? "case_2D2" : "case_2D1"));
      rep.bump(key);
    }
  return rep;
}

}  // namespace twinlab
