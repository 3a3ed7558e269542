#include "twinlab/fuchsian.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "twinlab/error.hpp"

namespace twinlab {

FuchsianCtx::FuchsianCtx(int rank, std::vector<const FieldCtx*> f)
    : r(rank), fields(std::move(f)) {
  if (r < 5) throw Error("Fuchsian construction needs r >= 5");
  if (static_cast<int>(fields.size()) != r) throw Error("need one field per panel type");
}

PolygonRoot FuchsianCtx::reflect(int j, const PolygonRoot& a) const {
  auto key = std::make_pair(j, a);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = reflect_cache_.find(key);
    if (it != reflect_cache_.end()) return it->second;
  }
  PolygonRoot out = polygon_reflect(r, j, a);
  std::lock_guard<std::mutex> lock(mu_);
  reflect_cache_.emplace(key, out);
  return out;
}

bool FuchsianCtx::prenilpotent(const PolygonRoot& a, const PolygonRoot& b) const {
  auto key = std::make_pair(std::min(a, b), std::max(a, b));
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = prenil_cache_.find(key);
    if (it != prenil_cache_.end()) return it->second;
  }
  bool out = polygon_prenilpotent(r, a, b);
  std::lock_guard<std::mutex> lock(mu_);
  prenil_cache_.emplace(key, out);
  return out;
}

bool FuchsianCtx::orthogonal(const PolygonRoot& a, const PolygonRoot& b) const {
  auto key = std::make_pair(std::min(a, b), std::max(a, b));
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ortho_cache_.find(key);
    if (it != ortho_cache_.end()) return it->second;
  }
  bool out = polygon_orthogonal_walls(r, a, b);
  std::lock_guard<std::mutex> lock(mu_);
  ortho_cache_.emplace(key, out);
  return out;
}

bool froot_less(const PolygonRoot& a, const PolygonRoot& b) { return a < b; }

std::string FuchsianUWord::str() const {
  if (letters.empty()) return "1";
  std::string s;
  for (const auto& l : letters) s += "u_" + l.root.str() + "(" + std::to_string(l.k.v) + ") ";
  return s;
}

FuchsianUWord fuchsian_letter(const FuchsianCtx& cfg, const PolygonRoot& a, FieldElem k) {
  if (k.ctx != cfg.field_of(a)) throw Error("letter coefficient field does not match root type");
  FuchsianUWord w;
  if (!k.is_zero()) w.letters.push_back({a, k});
  return w;
}

FuchsianUWord fuchsian_canonicalize(const FuchsianCtx& cfg, std::vector<FLetter> letters) {
  // bubble to the least word: merge equal adjacent roots, sort commuting
  // (= prenilpotent) adjacent pairs; everything else is frozen
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t p = 0; p + 1 < letters.size();) {
      if (letters[p].k.is_zero()) {
        letters.erase(letters.begin() + p);
        moved = true;
        continue;
      }
      if (letters[p + 1].k.is_zero()) {
        letters.erase(letters.begin() + p + 1);
        moved = true;
        continue;
      }
      if (letters[p].root == letters[p + 1].root) {
        letters[p].k = letters[p].k.ctx->add(letters[p].k, letters[p + 1].k);
        letters.erase(letters.begin() + p + 1);
        if (letters[p].k.is_zero()) letters.erase(letters.begin() + p);
        moved = true;
        if (p > 0) --p;
        continue;
      }
      if (froot_less(letters[p + 1].root, letters[p].root) &&
          cfg.prenilpotent(letters[p].root, letters[p + 1].root)) {
        std::swap(letters[p], letters[p + 1]);
        moved = true;
        if (p > 0) --p;
        continue;
      }
      ++p;
    }
  }
  if (!letters.empty() && letters.front().k.is_zero()) letters.erase(letters.begin());
  return {std::move(letters)};
}

FuchsianUWord fuchsian_umul(const FuchsianCtx& cfg, const FuchsianUWord& u,
                            const FuchsianUWord& v) {
  std::vector<FLetter> all = u.letters;
  all.insert(all.end(), v.letters.begin(), v.letters.end());
  return fuchsian_canonicalize(cfg, std::move(all));
}

FuchsianUWord fuchsian_uinverse(const FuchsianCtx& cfg, const FuchsianUWord& u) {
  std::vector<FLetter> rev;
  for (auto it = u.letters.rbegin(); it != u.letters.rend(); ++it)
    rev.push_back({it->root, it->k.ctx->neg(it->k)});
  return fuchsian_canonicalize(cfg, std::move(rev));
}

FuchsianUWord fuchsian_torus_act(const FuchsianCtx& cfg, const std::vector<FieldElem>& lams,
                                 const FuchsianUWord& u) {
  if (static_cast<int>(lams.size()) != cfg.r) throw Error("torus needs r components");
  FuchsianUWord out = u;
  for (auto& l : out.letters) {
    FieldElem lam = lams[l.root.i];
    l.k = l.k.ctx->mul(l.k, cfg.field_of(l.root)->pow(lam, 2 * polygon_epsilon(l.root)));
  }
  return out;
}

bool UGenerator::operator==(const UGenerator& o) const {
  if (pair_i != o.pair_i || type != o.type || root != o.root || !(k == o.k)) return false;
  bool hv = type == GenType::First || type == GenType::Second;
  bool ht = type == GenType::First || type == GenType::Third;
  if (hv && !(v == o.v)) return false;
  if (ht && !(t == o.t)) return false;
  return true;
}

std::string UGenerator::str() const {
  std::ostringstream os;
  os << "[pair " << pair_i << " type " << static_cast<int>(type);
  if (type == GenType::First || type == GenType::Second) os << " v=" << v.v;
  if (type == GenType::First || type == GenType::Third) os << " t=" << t.v;
  os << " u_" << root.str() << "(" << k.v << ")]";
  return os.str();
}

GenType classify_root(const FuchsianCtx& cfg, int i, const PolygonRoot& a) {
  const int r = cfg.r;
  i = ((i % r) + r) % r;
  PolygonRoot ai = polygon_simple_root(i);
  PolygonRoot aip = polygon_simple_root((i + 1) % r);
  if (polygon_same_wall(r, a, ai) || polygon_same_wall(r, a, aip))
    throw Error("root lies on a corner wall");
  bool oi = cfg.orthogonal(a, ai);
  bool oip = cfg.orthogonal(a, aip);
  if (oi && oip) throw Error("wall orthogonal to both corner walls (impossible in H^2)");
  // a wall parallel to a corner wall lies on one side of it; the
  // canonical adjacent chamber decides which
  PWord near = a.w;
  auto side_of = [&](const PolygonRoot& corner) {
    return polygon_chamber_in_root(r, near, corner);
  };
  if (!oi && !oip) {
    bool si = side_of(ai), sip = side_of(aip);
    if (si && sip) return GenType::First;
    if (si) return GenType::Second;
    if (sip) return GenType::Third;
    return GenType::Fourth;
  }
  if (oip) return side_of(ai) ? GenType::Second : GenType::Fourth;
  return side_of(aip) ? GenType::Third : GenType::Fourth;
}

UGenerator make_generator(const FuchsianCtx& cfg, int i, GenType gt, FieldElem v, FieldElem t,
                          const PolygonRoot& a, FieldElem k) {
  const int r = cfg.r;
  i = ((i % r) + r) % r;
  if (k.is_zero()) throw Error("trivial generator");
  if (k.ctx != cfg.field_of(a)) throw Error("coefficient field does not match root type");
  GenType expect = classify_root(cfg, i, a);
  if (expect != gt) throw Error("generator type does not match the root position");
  bool hv = gt == GenType::First || gt == GenType::Second;
  bool ht = gt == GenType::First || gt == GenType::Third;
  if (hv && v.ctx != cfg.field_of(i)) throw Error("v conjugator field mismatch");
  if (ht && t.ctx != cfg.field_of(i + 1)) throw Error("t conjugator field mismatch");
  UGenerator g;
  g.pair_i = i;
  g.type = gt;
  g.v = hv ? v : cfg.field_of(i)->zero();
  g.t = ht ? t : cfg.field_of(i + 1)->zero();
  g.root = a;
  g.k = k;
  return g;
}

FuchsianUWord generator_to_uword(const FuchsianCtx& cfg, const UGenerator& g) {
  const int r = cfg.r;
  PolygonRoot ai = polygon_simple_root(g.pair_i);
  PolygonRoot aip = polygon_simple_root((g.pair_i + 1) % r);
  FuchsianUWord w;
  bool hv = g.type == GenType::First || g.type == GenType::Second;
  bool ht = g.type == GenType::First || g.type == GenType::Third;
  if (hv) w = fuchsian_umul(cfg, w, fuchsian_letter(cfg, ai, g.v));
  if (ht) w = fuchsian_umul(cfg, w, fuchsian_letter(cfg, aip, g.t));
  w = fuchsian_umul(cfg, w, fuchsian_letter(cfg, g.root, g.k));
  if (ht) w = fuchsian_umul(cfg, w, fuchsian_letter(cfg, aip, g.t.ctx->neg(g.t)));
  if (hv) w = fuchsian_umul(cfg, w, fuchsian_letter(cfg, ai, g.v.ctx->neg(g.v)));
  return w;
}

namespace {

bool has_v_slot(GenType t) { return t == GenType::First || t == GenType::Second; }
bool has_t_slot(GenType t) { return t == GenType::First || t == GenType::Third; }

FieldElem fscale(const FuchsianCtx& cfg, FieldElem k, const PolygonRoot& a, int type,
                 FieldElem lam, int sign) {
  type = ((type % cfg.r) + cfg.r) % cfg.r;
  if (a.i != type) return k;
  return k.ctx->mul(k, cfg.field_of(type)->pow(lam, sign * 2 * polygon_epsilon(a)));
}

UGenerator conj_u_letter(int fi, FieldElem s, UGenerator x) {
  if (fi == 0) {
    if (has_v_slot(x.type)) x.v = s.ctx->add(x.v, s);
  } else {
    if (has_t_slot(x.type)) x.t = s.ctx->add(x.t, s);
  }
  return x;
}

UGenerator conj_t_letter(const FuchsianCtx& cfg, int fi, FieldElem lam, UGenerator x) {
  int type = x.pair_i + fi;
  if (fi == 0 && has_v_slot(x.type)) x.v = x.v.ctx->mul(x.v, x.v.ctx->mul(lam, lam));
  if (fi == 1 && has_t_slot(x.type)) x.t = x.t.ctx->mul(x.t, x.t.ctx->mul(lam, lam));
  x.k = fscale(cfg, x.k, x.root, type, lam, +1);
  return x;
}

UGenerator conj_m_letter(const FuchsianCtx& cfg, int fi, FieldElem lam, UGenerator x) {
  const int r = cfg.r;
  int type = ((x.pair_i + fi) % r + r) % r;
  const FieldCtx* K = cfg.field_of(type);
  FieldElem slot = fi == 0 ? x.v : x.t;
  bool slot_active = fi == 0 ? has_v_slot(x.type) : has_t_slot(x.type);

  if (slot_active && !slot.is_zero()) {
    // (3C4) shape: conjugator -> -lam^2/slot, k *= (-lam/slot)^(2 eps delta)
    FieldElem base = K->neg(K->mul(lam, K->inv(slot)));
    x.k = fscale(cfg, x.k, x.root, type, base, +1);
    FieldElem ns = K->neg(K->mul(K->mul(lam, lam), K->inv(slot)));
    if (fi == 0)
      x.v = ns;
    else
      x.t = ns;
    return x;
  }
  // (3C3) shape: the root reflects across the corner wall.  Roots whose
  // wall is orthogonal to the mirror are fixed by it (boundary cases of
  // the classification), so the sector can also stay put; what must be
  // preserved is the other conjugator slot.
  x.k = fscale(cfg, x.k, x.root, type, lam, -1);
  x.root = cfg.reflect(type, x.root);
  GenType nt = classify_root(cfg, x.pair_i, x.root);
  bool slot_ok = fi == 0 ? has_t_slot(nt) == has_t_slot(x.type)
                         : has_v_slot(nt) == has_v_slot(x.type);
  if (!slot_ok)
    throw Error("reflected generator lost its conjugator slot: " + x.str());
  x.type = nt;
  if (!has_v_slot(nt) || fi == 0) x.v = cfg.field_of(x.pair_i)->zero();
  if (!has_t_slot(nt) || fi == 1) x.t = cfg.field_of((x.pair_i + 1) % r)->zero();
  return x;
}

}  // namespace

UGenerator fuchsian_levi_act(const FuchsianCtx& cfg, const Sl2Elem& g, int fi,
                             const UGenerator& x) {
  int type = ((x.pair_i + fi) % cfg.r + cfg.r) % cfg.r;
  if (g.ctx != cfg.field_of(type)) throw Error("Levi factor field mismatch");
  UGenerator y = x;
  if (g.cell == Sl2Elem::Cell::Borel) {
    y = conj_t_letter(cfg, fi, g.lam, y);
    y = conj_u_letter(fi, g.r, y);
  } else {
    y = conj_u_letter(fi, g.r2, y);
    y = conj_m_letter(cfg, fi, g.lam, y);
    y = conj_u_letter(fi, g.r, y);
  }
  return y;
}

UGenerator fuchsian_levi_torus_act(const FuchsianCtx& cfg, int j, FieldElem lam,
                                   const UGenerator& x) {
  const int r = cfg.r;
  j = ((j % r) + r) % r;
  if (j == x.pair_i || j == (x.pair_i + 1) % r)
    throw Error("toric factor index collides with the SL2 factors");
  UGenerator y = x;
  y.k = fscale(cfg, y.k, y.root, j, lam, +1);
  return y;
}

CheckReport verify_fuchsian_product_relation(const FuchsianCtx& cfg, bool exhaustive,
                                             long long samples, std::uint64_t seed) {
  CheckReport rep;
  rep.name = "Fuchsian product relation r=" + std::to_string(cfg.r);
  if (exhaustive)
    for (int i = 0; i < cfg.r; ++i)
      if (cfg.q(i) > 3) throw Error("exhaustive mode needs all q_i <= 3");
  if (!exhaustive && samples <= 0) throw Error("sampled mode needs a positive sample count");
  std::mt19937_64 rng(seed);

  auto roots = polygon_positive_roots(cfg.r, 4);

  for (int i = 0; i < cfg.r; ++i) {
    const FieldCtx* Ki = cfg.field_of(i);
    const FieldCtx* Kip = cfg.field_of(i + 1);

    std::vector<UGenerator> pool;
    std::map<GenType, int> found;
    for (const auto& a : roots) {
      if (polygon_same_wall(cfg.r, a, polygon_simple_root(i)) ||
          polygon_same_wall(cfg.r, a, polygon_simple_root((i + 1) % cfg.r)))
        continue;
      GenType gt = classify_root(cfg, i, a);
      if (found[gt] >= 2) continue;
      ++found[gt];
      const FieldCtx* Ka = cfg.field_of(a);
      bool hv = has_v_slot(gt), ht = has_t_slot(gt);
      for (std::uint32_t vv = 0; vv < (hv ? Ki->q : 1); ++vv)
        for (std::uint32_t tv = 0; tv < (ht ? Kip->q : 1); ++tv)
          for (std::uint32_t kv = 1; kv < Ka->q; ++kv)
            pool.push_back(make_generator(cfg, i, gt, Ki->elem(hv ? vv : 0),
                                          Kip->elem(ht ? tv : 0), a, Ka->elem(kv)));
    }
    for (auto gt : {GenType::First, GenType::Second, GenType::Third, GenType::Fourth}) {
      rep.bump("gen_type_" + std::to_string(static_cast<int>(gt)) + "_roots", found[gt]);
      if (found[gt] == 0) rep.fail("no generator of one type found in the window");
    }

    for (int fi = 0; fi < 2; ++fi) {
      const FieldCtx* K = fi == 0 ? Ki : Kip;
      auto sl2 = sl2_all(K);
      auto check_one = [&](const Sl2Elem& g, const Sl2Elem& h, const UGenerator& v) {
        bool gb = g.cell == Sl2Elem::Cell::Borel, hb = h.cell == Sl2Elem::Cell::Borel;
        const char* key = gb ? (hb ? "case_2D5" : "case_2D3")
                             : (hb ? "case_2D4"
                                   : (K->add(g.r2, h.r).is_zero() ? "case_2D2" : "case_2D1"));
        rep.bump(key);
        UGenerator lhs = fuchsian_levi_act(cfg, g, fi, fuchsian_levi_act(cfg, h, fi, v));
        UGenerator rhs = fuchsian_levi_act(cfg, sl2_mul(g, h), fi, v);
        if (!(lhs == rhs))
          rep.fail("pair " + std::to_string(i) + " factor " + std::to_string(fi) + ": g=" +
                   sl2_str(g) + " h=" + sl2_str(h) + " v=" + v.str());
      };
      if (exhaustive) {
        for (const auto& g : sl2)
          for (const auto& h : sl2)
            for (const auto& v : pool) check_one(g, h, v);
      } else {
        std::uniform_int_distribution<std::size_t> pg(0, sl2.size() - 1), pv(0, pool.size() - 1);
        for (long long s = 0; s < samples; ++s)
          check_one(sl2[pg(rng)], sl2[pg(rng)], pool[pv(rng)]);
      }
    }

    // the two SL_2 factors commute with each other and with the torus
    auto sl2i = sl2_all(Ki);
    auto sl2ip = sl2_all(Kip);
    long long commute_budget =
        exhaustive ? static_cast<long long>(sl2i.size()) * static_cast<long long>(sl2ip.size())
                   : samples;
    std::uniform_int_distribution<std::size_t> pgi(0, sl2i.size() - 1), pgp(0, sl2ip.size() - 1),
        pv(0, pool.size() - 1);
    for (long long s = 0; s < commute_budget; ++s) {
      const Sl2Elem& g = exhaustive ? sl2i[s % sl2i.size()] : sl2i[pgi(rng)];
      const Sl2Elem& h = exhaustive ? sl2ip[s / sl2i.size()] : sl2ip[pgp(rng)];
      const UGenerator& v = pool[s % pool.size()];
      rep.bump("factor_commutation");
      UGenerator ab = fuchsian_levi_act(cfg, g, 0, fuchsian_levi_act(cfg, h, 1, v));
      UGenerator ba = fuchsian_levi_act(cfg, h, 1, fuchsian_levi_act(cfg, g, 0, v));
      if (!(ab == ba))
        rep.fail("SL2 factors fail to commute at pair " + std::to_string(i) + ": " + v.str());
      int j = (i + 2) % cfg.r;
      if (j != i && j != (i + 1) % cfg.r) {
        const FieldCtx* Kj = cfg.field_of(j);
        FieldElem lam = Kj->elem(1 + static_cast<std::uint32_t>(s % (Kj->q - 1)));
        rep.bump("torus_commutation");
        UGenerator tg = fuchsian_levi_torus_act(cfg, j, lam, fuchsian_levi_act(cfg, g, 0, v));
        UGenerator gt2 = fuchsian_levi_act(cfg, g, 0, fuchsian_levi_torus_act(cfg, j, lam, v));
        if (!(tg == gt2)) rep.fail("torus factor fails to commute at pair " + std::to_string(i));
      }
    }
  }
  return rep;
}

CheckReport verify_generator_classification(const FuchsianCtx& cfg, int window) {
  CheckReport rep;
  rep.name = "generator classification, window " + std::to_string(window);
  auto roots = polygon_positive_roots(cfg.r, window);
  for (int i = 0; i < cfg.r; ++i) {
    PolygonRoot ai = polygon_simple_root(i);
    PolygonRoot aip = polygon_simple_root((i + 1) % cfg.r);
    for (const auto& a : roots) {
      if (polygon_same_wall(cfg.r, a, ai) || polygon_same_wall(cfg.r, a, aip)) continue;
      rep.bump("roots_classified");
      GenType gt;
      try {
        gt = classify_root(cfg, i, a);
      } catch (const Error& e) {
        rep.fail(std::string("classification anomaly: ") + e.what() + " at " + a.str());
        continue;
      }
      // both chambers flanking the canonical panel of the wall lie on the
      // same side of each parallel corner wall
      PWord c1 = a.w;
      PWord c2 = polygon_mul(cfg.r, a.w, {a.i});
      bool in_i_1 = polygon_chamber_in_root(cfg.r, c1, ai);
      bool in_ip_1 = polygon_chamber_in_root(cfg.r, c1, aip);
      bool in_i_2 = polygon_chamber_in_root(cfg.r, c2, ai);
      bool in_ip_2 = polygon_chamber_in_root(cfg.r, c2, aip);
      bool oi = cfg.orthogonal(a, ai), oip = cfg.orthogonal(a, aip);
      if (!oi && in_i_1 != in_i_2) rep.fail("parallel wall straddles the a_i wall at " + a.str());
      if (!oip && in_ip_1 != in_ip_2)
        rep.fail("parallel wall straddles the a_{i+1} wall at " + a.str());
      bool expect_side_i = gt == GenType::First || gt == GenType::Second;
      bool expect_side_ip = gt == GenType::First || gt == GenType::Third;
      if (!oi && in_i_1 != expect_side_i) rep.fail("side of a_i contradicts class at " + a.str());
      if (!oip && in_ip_1 != expect_side_ip)
        rep.fail("side of a_{i+1} contradicts class at " + a.str());
      if (gt == GenType::Second && cfg.prenilpotent(a, ai))
        rep.fail("second-type root prenilpotent with a_i at " + a.str());
      if (gt == GenType::Third && cfg.prenilpotent(a, aip))
        rep.fail("third-type root prenilpotent with a_{i+1} at " + a.str());
    }
  }
  return rep;
}

std::vector<LinkSpec> local_structure(const FuchsianCtx& cfg) {
  std::vector<LinkSpec> out;
  for (int i = 0; i < cfg.r; ++i)
    out.push_back({i, 1 + static_cast<long long>(cfg.q(i)),
                   1 + static_cast<long long>(cfg.q(i + 1))});
  return out;
}

}  // namespace twinlab
