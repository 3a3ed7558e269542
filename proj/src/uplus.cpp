#include "twinlab/uplus.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace twinlab {

TreeTorus torus_identity(const TreeConfig& cfg) {
  return {{cfg.K[0]->one(), cfg.K[1]->one()}};
}

TreeTorus torus_mul(const TreeTorus& a, const TreeTorus& b) {
  return {{a.l[0].ctx->mul(a.l[0], b.l[0]), a.l[1].ctx->mul(a.l[1], b.l[1])}};
}

TreeTorus torus_inverse(const TreeTorus& t) {
  return {{t.l[0].ctx->inv(t.l[0]), t.l[1].ctx->inv(t.l[1])}};
}

bool root_order_less(const TreeRoot& a, const TreeRoot& b) {
  auto dist = [](const TreeRoot& r) { return r.vertex <= 0 ? -r.vertex : r.vertex - 1; };
  if (dist(a) != dist(b)) return dist(a) < dist(b);
  return a.toward_plus < b.toward_plus;
}

bool UPlusWord::operator==(const UPlusWord& o) const {
  if (blocks.size() != o.blocks.size()) return false;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].factor != o.blocks[i].factor) return false;
    if (blocks[i].entries != o.blocks[i].entries) return false;
  }
  return true;
}

std::string UPlusWord::str() const {
  if (blocks.empty()) return "1";
  std::ostringstream os;
  for (const auto& b : blocks) {
    os << "[";
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
      if (i) os << " ";
      os << "u_" << b.entries[i].first.str() << "(" << b.entries[i].second.v << ")";
    }
    os << "]";
  }
  return os.str();
}

namespace {

void check_root_field(const TreeConfig& cfg, const TreeRoot& a, FieldElem k) {
  if (k.ctx != cfg.field_of(a)) throw Error("root coefficient field does not match root type");
}

// pointwise field addition of supports, dropping zeros
void merge_entries(std::vector<std::pair<TreeRoot, FieldElem>>& into,
                   const std::vector<std::pair<TreeRoot, FieldElem>>& from) {
  for (const auto& [root, k] : from) {
    auto it = std::lower_bound(
        into.begin(), into.end(), root,
        [](const auto& e, const TreeRoot& r) { return root_order_less(e.first, r); });
    if (it != into.end() && it->first == root) {
      FieldElem sum = k.ctx->add(it->second, k);
      if (sum.is_zero())
        into.erase(it);
      else
        it->second = sum;
    } else {
      into.insert(it, {root, k});
    }
  }
}

}  // namespace

UPlusWord uplus_letter(const TreeConfig& cfg, const TreeRoot& a, FieldElem k) {
  if (!a.is_positive()) throw Error("uplus_letter needs a positive root");
  check_root_field(cfg, a, k);
  UPlusWord w;
  if (!k.is_zero()) w.blocks.push_back({a.contains(tree_simple_root(0)) ? 0 : 1, {{a, k}}});
  return w;
}

UPlusWord uplus_mul(const TreeConfig& cfg, const UPlusWord& u, const UPlusWord& v) {
  (void)cfg;
  UPlusWord out = u;
  for (const auto& b : v.blocks) {
    if (b.entries.empty()) continue;
    if (!out.blocks.empty() && out.blocks.back().factor == b.factor) {
      merge_entries(out.blocks.back().entries, b.entries);
      // a vanished boundary block exposes two same-factor neighbours
      while (!out.blocks.empty() && out.blocks.back().entries.empty()) {
        out.blocks.pop_back();
        if (out.blocks.size() >= 2 &&
            out.blocks[out.blocks.size() - 2].factor == out.blocks.back().factor) {
          UBlock last = std::move(out.blocks.back());
          out.blocks.pop_back();
          merge_entries(out.blocks.back().entries, last.entries);
        }
      }
    } else {
      out.blocks.push_back(b);
    }
  }
  return out;
}

UPlusWord uplus_inverse(const TreeConfig& cfg, const UPlusWord& u) {
  (void)cfg;
  UPlusWord out;
  for (auto it = u.blocks.rbegin(); it != u.blocks.rend(); ++it) {
    UBlock b{it->factor, it->entries};
    for (auto& [root, k] : b.entries) k = k.ctx->neg(k);
    out.blocks.push_back(std::move(b));
  }
  return out;
}

UPlusWord torus_act(const TreeConfig& cfg, const TreeTorus& t, const UPlusWord& u) {
  UPlusWord out = u;
  for (auto& b : out.blocks)
    for (auto& [root, k] : b.entries) {
      FieldElem lam = t.l[root.type()];
      k = k.ctx->mul(k, cfg.field_of(root)->pow(lam, 2 * tree_epsilon(root)));
    }
  return out;
}

BorelElem borel_identity(const TreeConfig& cfg) { return {torus_identity(cfg), {}}; }

BorelElem borel_mul(const TreeConfig& cfg, const BorelElem& a, const BorelElem& b) {
  // (t1 u1)(t2 u2) = (t1 t2) (t2^-1 u1 t2) u2
  return {torus_mul(a.t, b.t),
          uplus_mul(cfg, torus_act(cfg, torus_inverse(b.t), a.u), b.u)};
}

BorelElem borel_inverse(const TreeConfig& cfg, const BorelElem& b) {
  return {torus_inverse(b.t), torus_act(cfg, b.t, uplus_inverse(cfg, b.u))};
}

std::string TreeGenerator::str() const {
  std::ostringstream os;
  if (type == Type::First)
    os << "u" << side << "(" << conj_r.v << ") u_" << root.str() << "(" << k.v << ") u" << side
       << "(..)^-1";
  else
    os << "u_" << root.str() << "(" << k.v << ")";
  return os.str();
}

TreeGenerator make_first(const TreeConfig& cfg, int side, FieldElem r, const TreeRoot& a,
                         FieldElem k) {
  if (!a.contains(tree_simple_root(1 - side))) throw Error("first-type root must contain a_{1-i}");
  check_root_field(cfg, a, k);
  if (k.is_zero()) throw Error("trivial generator");
  if (r.ctx != cfg.K[side]) throw Error("conjugator field mismatch");
  return {side, TreeGenerator::Type::First, r, a, k};
}

TreeGenerator make_second(const TreeConfig& cfg, int side, const TreeRoot& a, FieldElem k) {
  if (a == tree_simple_root(side) || !a.contains(tree_simple_root(side)))
    throw Error("second-type root must lie in P(a_i) minus {a_i}");
  check_root_field(cfg, a, k);
  if (k.is_zero()) throw Error("trivial generator");
  return {side, TreeGenerator::Type::Second, cfg.K[side]->zero(), a, k};
}

namespace {

// k * lam^(sign * 2 eps_a) when iota(a) = i, else k
FieldElem scale_k(const TreeConfig& cfg, FieldElem k, const TreeRoot& a, int i, FieldElem lam,
                  int sign) {
  if (a.type() != i) return k;
  return k.ctx->mul(k, cfg.K[i]->pow(lam, sign * 2 * tree_epsilon(a)));
}

// u_i(s) x u_i(s)^-1: (3C1) fixes second type, (3C2) shifts the conjugator
TreeGenerator conj_u(const TreeConfig&, int, FieldElem s, TreeGenerator x) {
  if (x.type == TreeGenerator::Type::First) x.conj_r = s.ctx->add(x.conj_r, s);
  return x;
}

// t_i(lam) x t_i(lam)^-1: 2.C on the conjugator, (3B1) on the parameter
TreeGenerator conj_t(const TreeConfig& cfg, int side, FieldElem lam, TreeGenerator x) {
  if (x.type == TreeGenerator::Type::First)
    x.conj_r = x.conj_r.ctx->mul(x.conj_r, x.conj_r.ctx->mul(lam, lam));
  x.k = scale_k(cfg, x.k, x.root, side, lam, +1);
  return x;
}

// m_i(lam) x m_i(lam)^-1
TreeGenerator conj_m(const TreeConfig& cfg, int side, FieldElem lam, TreeGenerator x) {
  if (x.type == TreeGenerator::Type::Second) {
    // (3C3): root reflects into P(a_{1-i}); becomes first type with r = 0
    FieldElem k = scale_k(cfg, x.k, x.root, side, lam, -1);
    return make_first(cfg, side, cfg.K[side]->zero(), tree_reflect(side, x.root), k);
  }
  if (x.conj_r.is_zero()) {
    // degenerate (3C4) input routes through (3C3)
    FieldElem k = scale_k(cfg, x.k, x.root, side, lam, -1);
    return make_second(cfg, side, tree_reflect(side, x.root), k);
  }
  // (3C4): conjugator -lam^2/r, parameter scaled by (-lam/r)^(2 eps delta)
  const FieldCtx* Ki = cfg.K[side];
  FieldElem base = Ki->neg(Ki->mul(lam, Ki->inv(x.conj_r)));
  FieldElem k = x.k;
  if (x.root.type() == side) k = k.ctx->mul(k, Ki->pow(base, 2 * tree_epsilon(x.root)));
  FieldElem new_r = Ki->neg(Ki->mul(Ki->mul(lam, lam), Ki->inv(x.conj_r)));
  return make_first(cfg, side, new_r, x.root, k);
}

}  // namespace

TreeGenerator levi_act(const TreeConfig& cfg, const Sl2Elem& g, int side, const TreeGenerator& x) {
  if (x.side != side) throw Error("generator side mismatch");
  if (g.ctx != cfg.K[side]) throw Error("Levi factor field mismatch");
  TreeGenerator y = x;
  if (g.cell == Sl2Elem::Cell::Borel) {
    y = conj_t(cfg, side, g.lam, y);
    y = conj_u(cfg, side, g.r, y);
  } else {
    y = conj_u(cfg, side, g.r2, y);
    y = conj_m(cfg, side, g.lam, y);
    y = conj_u(cfg, side, g.r, y);
  }
  return y;
}

TreeGenerator levi_torus_act(const TreeConfig& cfg, FieldElem mu, int side,
                             const TreeGenerator& x) {
  if (mu.ctx != cfg.K[1 - side]) throw Error("Levi torus factor field mismatch");
  TreeGenerator y = x;
  y.k = scale_k(cfg, y.k, y.root, 1 - side, mu, +1);
  return y;
}

UPlusWord gen_to_uplus(const TreeConfig& cfg, const TreeGenerator& g) {
  if (g.type == TreeGenerator::Type::Second) return uplus_letter(cfg, g.root, g.k);
  TreeRoot ai = tree_simple_root(g.side);
  UPlusWord w = uplus_letter(cfg, ai, g.conj_r);
  w = uplus_mul(cfg, w, uplus_letter(cfg, g.root, g.k));
  w = uplus_mul(cfg, w, uplus_letter(cfg, ai, g.conj_r.ctx->neg(g.conj_r)));
  return w;
}

UPlusWord gens_to_uplus(const TreeConfig& cfg, const std::vector<TreeGenerator>& gens) {
  UPlusWord w;
  for (const auto& g : gens) w = uplus_mul(cfg, w, gen_to_uplus(cfg, g));
  return w;
}

UiSplit split_ui(const TreeConfig& cfg, const UPlusWord& u, int side) {
  const FieldCtx* Ki = cfg.K[side];
  TreeRoot ai = tree_simple_root(side);
  UiSplit out{Ki->zero(), {}};
  for (const auto& b : u.blocks) {
    if (b.factor == side) {
      FieldElem k0 = Ki->zero();
      std::vector<TreeGenerator> others;
      for (const auto& [root, k] : b.entries) {
        if (root == ai)
          k0 = k;
        else
          others.push_back(make_second(cfg, side, root, k));
      }
      if (!k0.is_zero()) {
        // u_i(c) y u_i(k0) = u_i(c + k0) (u_i(-k0) y u_i(k0))
        for (auto& g : out.gens) g = conj_u(cfg, side, Ki->neg(k0), g);
        out.c = Ki->add(out.c, k0);
      }
      out.gens.insert(out.gens.end(), others.begin(), others.end());
    } else {
      for (const auto& [root, k] : b.entries)
        out.gens.push_back(make_first(cfg, side, Ki->zero(), root, k));
    }
  }
  return out;
}

UiSplit split_ui_right(const TreeConfig& cfg, const UPlusWord& u, int side) {
  const FieldCtx* Ki = cfg.K[side];
  TreeRoot ai = tree_simple_root(side);
  UiSplit out{Ki->zero(), {}};
  for (auto bit = u.blocks.rbegin(); bit != u.blocks.rend(); ++bit) {
    const auto& b = *bit;
    std::vector<TreeGenerator> chunk;
    if (b.factor == side) {
      FieldElem k0 = Ki->zero();
      for (const auto& [root, k] : b.entries) {
        if (root == ai)
          k0 = k;
        else
          chunk.push_back(make_second(cfg, side, root, k));
      }
      if (!k0.is_zero()) {
        // y u_i(k0) G u_i(c) = y (u_i(k0) G u_i(-k0)) u_i(k0 + c)
        for (auto& g : out.gens)
          if (g.type == TreeGenerator::Type::First) g.conj_r = Ki->add(g.conj_r, k0);
        out.c = Ki->add(out.c, k0);
      }
    } else {
      for (const auto& [root, k] : b.entries)
        chunk.push_back(make_first(cfg, side, Ki->zero(), root, k));
    }
    out.gens.insert(out.gens.begin(), chunk.begin(), chunk.end());
  }
  return out;
}

namespace {

// mirror conjugations on generators of U^{-i}

// u_{-a_i}(s) x u_{-a_i}(s)^-1
TreeGenerator mirror_conj_u(FieldElem s, TreeGenerator x) {
  if (x.type == TreeGenerator::Type::First) x.conj_r = s.ctx->add(s, x.conj_r);
  return x;
}

// t_i(lam) x t_i(lam)^-1 (the mirror scaling has the opposite exponent sign)
TreeGenerator mirror_conj_t(const TreeConfig& cfg, int side, FieldElem lam, TreeGenerator x) {
  if (x.type == TreeGenerator::Type::First)
    x.conj_r = x.conj_r.ctx->mul(x.conj_r, x.conj_r.ctx->inv(x.conj_r.ctx->mul(lam, lam)));
  if (x.root.type() == side)
    x.k = x.k.ctx->mul(x.k, cfg.K[side]->pow(lam, -2 * tree_epsilon(x.root)));
  return x;
}

// m_{-i}(mu) x m_{-i}(mu)^-1
TreeGenerator mirror_conj_m(const TreeConfig& cfg, int side, FieldElem mu, TreeGenerator x) {
  const FieldCtx* Ki = cfg.K[side];
  auto mirror_scale = [&](FieldElem k, const TreeRoot& a, FieldElem base) {
    if (a.type() != side) return k;
    return k.ctx->mul(k, Ki->pow(base, 2 * tree_epsilon(a)));
  };
  if (x.type == TreeGenerator::Type::Second) {
    FieldElem k = mirror_scale(x.k, x.root, mu);
    return make_first(cfg, side, Ki->zero(), tree_reflect(side, x.root), k);
  }
  if (x.conj_r.is_zero()) {
    FieldElem k = mirror_scale(x.k, x.root, mu);
    return make_second(cfg, side, tree_reflect(side, x.root), k);
  }
  FieldElem base = Ki->neg(Ki->mul(mu, Ki->inv(x.conj_r)));
  FieldElem k = x.k;
  if (x.root.type() == side) k = k.ctx->mul(k, Ki->pow(base, -2 * tree_epsilon(x.root)));
  FieldElem new_r = Ki->neg(Ki->mul(Ki->mul(mu, mu), Ki->inv(x.conj_r)));
  return {side, TreeGenerator::Type::First, new_r, x.root, k};
}

}  // namespace

TreeGenerator mirror_levi_act(const TreeConfig& cfg, const Sl2Elem& g, int side,
                              const TreeGenerator& x) {
  if (g.ctx != cfg.K[side]) throw Error("Levi factor field mismatch");
  const FieldCtx* K = cfg.K[side];
  // decompose g into mirror letters from its matrix image:
  //   b = 0:  g = u_-(y) t(kappa),          kappa = a, y = -c/a
  //   b != 0: g = u_-(y) m_-(kappa) u_-(y'), kappa = 1/b, y = -db, y' = -ab
  Mat2 m = sl2_matrix(g);
  TreeGenerator out = x;
  if (m.b.is_zero()) {
    out = mirror_conj_t(cfg, side, m.a, out);
    out = mirror_conj_u(K->neg(K->mul(m.c, K->inv(m.a))), out);
  } else {
    out = mirror_conj_u(K->neg(K->mul(m.a, m.b)), out);
    out = mirror_conj_m(cfg, side, K->inv(m.b), out);
    out = mirror_conj_u(K->neg(K->mul(m.d, m.b)), out);
  }
  return out;
}

TreeGenerator mirror_levi_torus_act(const TreeConfig& cfg, FieldElem mu, int side,
                                    const TreeGenerator& x) {
  if (mu.ctx != cfg.K[1 - side]) throw Error("Levi torus factor field mismatch");
  TreeGenerator y = x;
  if (y.root.type() == 1 - side)
    y.k = y.k.ctx->mul(y.k, cfg.K[1 - side]->pow(mu, -2 * tree_epsilon(y.root)));
  return y;
}

CheckReport verify_product_relation(const TreeConfig& cfg, bool exhaustive, long long samples,
                                    std::uint64_t seed) {
  CheckReport rep;
  rep.name = "tree product relation GF(" + cfg.K[0]->name() + ")/GF(" + cfg.K[1]->name() + ")";
  if (exhaustive && (cfg.q(0) > 3 || cfg.q(1) > 3))
    throw Error("exhaustive product-relation check needs q_0, q_1 <= 3");
  if (!exhaustive && samples <= 0) throw Error("sampled mode needs a positive sample count");

  std::mt19937_64 rng(seed);

  for (int side = 0; side < 2; ++side) {
    const FieldCtx* Ki = cfg.K[side];
    const FieldCtx* Ko = cfg.K[1 - side];
    auto sl2 = sl2_all(Ki);

    // generator pool: leading roots of each stream, all conjugators, all k
    std::vector<TreeGenerator> pool;
    for (const auto& a : tree_prenil_roots(1 - side, 4))
      for (std::uint32_t t = 0; t < Ki->q; ++t)
        for (std::uint32_t kv = 1; kv < cfg.field_of(a)->q; ++kv)
          pool.push_back(make_first(cfg, side, Ki->elem(t), a, cfg.field_of(a)->elem(kv)));
    for (const auto& a : tree_prenil_roots(side, 5))
      if (a != tree_simple_root(side))
        for (std::uint32_t kv = 1; kv < cfg.field_of(a)->q; ++kv)
          pool.push_back(make_second(cfg, side, a, cfg.field_of(a)->elem(kv)));

    auto act = [&](const Sl2Elem& g, FieldElem mu, const TreeGenerator& v) {
      return levi_act(cfg, g, side, levi_torus_act(cfg, mu, side, v));
    };

    auto check_one = [&](const Sl2Elem& g, FieldElem gmu, const Sl2Elem& h, FieldElem hmu,
                         const TreeGenerator& v) {
      bool gb = g.cell == Sl2Elem::Cell::Borel, hb = h.cell == Sl2Elem::Cell::Borel;
      const char* key = gb ? (hb ? "case_2D5" : "case_2D3")
                           : (hb ? "case_2D4"
                                 : (Ki->add(g.r2, h.r).is_zero() ? "case_2D2" : "case_2D1"));
      rep.bump(key);
      rep.bump(v.type == TreeGenerator::Type::First ? "gen_first" : "gen_second");
      if (!hb && v.type == TreeGenerator::Type::First) {
        FieldElem S = Ki->add(h.r2, v.conj_r);  // S = s' + t in the 3.D notation
        if (S.is_zero()) {
          rep.bump("branch_S_zero");
        } else if (!gb) {
          FieldElem R = Ki->add(g.r2, h.r);
          if (!R.is_zero() && R == Ki->mul(Ki->mul(h.lam, h.lam), Ki->inv(S)))
            rep.bump("branch_R_eq_mu2_over_S");
        }
      }
      TreeGenerator lhs = act(g, gmu, act(h, hmu, v));
      TreeGenerator rhs = act(sl2_mul(g, h), Ko->mul(gmu, hmu), v);
      if (lhs != rhs)
        rep.fail("side " + std::to_string(side) + ": g=" + sl2_str(g) + " h=" + sl2_str(h) +
                 " v=" + v.str() + " -> " + lhs.str() + " vs " + rhs.str());
    };

    if (exhaustive) {
      for (const auto& g : sl2)
        for (std::uint32_t gm = 1; gm < Ko->q; ++gm)
          for (const auto& h : sl2)
            for (std::uint32_t hm = 1; hm < Ko->q; ++hm)
              for (const auto& v : pool)
                check_one(g, Ko->elem(gm), h, Ko->elem(hm), v);
    } else {
      std::uniform_int_distribution<std::size_t> pg(0, sl2.size() - 1), pv(0, pool.size() - 1);
      std::uniform_int_distribution<std::uint32_t> pm(1, Ko->q - 1);
      for (long long s = 0; s < samples; ++s)
        check_one(sl2[pg(rng)], Ko->elem(pm(rng)), sl2[pg(rng)], Ko->elem(pm(rng)), pool[pv(rng)]);
    }
  }
  return rep;
}

}  // namespace twinlab
