#include "twinlab/lambda.hpp"

#include <sstream>

namespace twinlab {

std::string LambdaWord::str() const {
  std::ostringstream os;
  for (const auto& c : letters) os << "u" << c.i << "(" << c.r.v << ")m" << c.i << " . ";
  os << "t(" << tail.t.l[0].v << "," << tail.t.l[1].v << ")." << tail.u.str();
  return os.str();
}

std::string LambdaWord::encode() const {
  std::ostringstream os;
  for (const auto& c : letters) os << "L" << c.i << ":" << c.r.v << ";";
  os << "T" << tail.t.l[0].v << "," << tail.t.l[1].v << ";";
  for (const auto& b : tail.u.blocks) {
    os << "B" << b.factor;
    for (const auto& [root, k] : b.entries)
      os << "(" << root.vertex << (root.toward_plus ? "+" : "-") << k.v << ")";
  }
  return os.str();
}

LambdaWord lambda_identity(const TreeConfig& cfg) { return {{}, borel_identity(cfg)}; }

LambdaWord lambda_of_borel(const TreeConfig& cfg, const BorelElem& b) {
  (void)cfg;
  return {{}, b};
}

LambdaWord lambda_of_uplus(const TreeConfig& cfg, const UPlusWord& u) {
  return {{}, {torus_identity(cfg), u}};
}

LambdaWord lambda_of_torus(const TreeConfig& cfg, const TreeTorus& t) {
  (void)cfg;
  return {{}, {t, {}}};
}

LambdaWord lambda_of_root_letter(const TreeConfig& cfg, const TreeRoot& a, FieldElem k) {
  return lambda_of_uplus(cfg, uplus_letter(cfg, a, k));
}

LambdaWord lambda_m(const TreeConfig& cfg, int i, FieldElem lam) {
  if (lam.is_zero()) throw Error("m_i(0) undefined");
  TreeTorus t = torus_identity(cfg);
  t.l[i] = cfg.K[i]->inv(lam);
  return {{{i, cfg.K[i]->zero()}}, {t, {}}};
}

std::vector<int> tree_peel_word(const TreeRoot& a) {
  if (!a.is_positive()) throw Error("peel word needs a positive root");
  std::vector<int> w;
  TreeRoot cur = a;
  auto dist = [](const TreeRoot& r) { return r.vertex <= 0 ? -r.vertex : r.vertex - 1; };
  while (cur != tree_simple_root(0) && cur != tree_simple_root(1)) {
    bool moved = false;
    for (int j = 0; j < 2 && !moved; ++j) {
      TreeRoot nxt = tree_reflect(j, cur);
      if (nxt.is_positive() && dist(nxt) < dist(cur)) {
        w.push_back(j);
        cur = nxt;
        moved = true;
      }
    }
    if (!moved) throw Error("peel stalled");  // cannot happen for positive roots
  }
  return w;
}

LambdaWord lambda_of_neg_root_letter(const TreeConfig& cfg, const TreeRoot& a, FieldElem k) {
  if (!a.is_positive()) throw Error("negative root letters are indexed by their positive opposite");
  if (k.is_zero()) return lambda_identity(cfg);
  const FieldCtx* K = cfg.field_of(a);
  if (k.ctx != K) throw Error("root coefficient field does not match root type");
  std::vector<int> peel = tree_peel_word(a);
  TreeRoot simple = tree_apply_word(dinf_inverse(peel), a);
  int j = simple.type();
  // u_{-a_j}(k) = u_j(-1/k) m_j(1/k) u_j(-1/k); m_j(1/k) = (letter (j,0)) t_j(k)
  FieldElem mki = K->neg(K->inv(k));
  LambdaWord core{{{j, mki}}, {torus_identity(cfg), uplus_letter(cfg, tree_simple_root(j), mki)}};
  core.tail.t.l[j] = k;
  LambdaWord out = core;
  for (auto it = peel.rbegin(); it != peel.rend(); ++it) {
    LambdaWord m = lambda_m(cfg, *it, cfg.K[*it]->one());
    out = lambda_mul(cfg, m, lambda_mul(cfg, out, lambda_inverse(cfg, m)));
  }
  return out;
}

namespace {

// tail * u_i(r) m_i, folded into the accumulator
void mul_coset_letter(const TreeConfig& cfg, LambdaWord& acc, int i, FieldElem r) {
  const FieldCtx* Ki = cfg.K[i];
  UiSplit sp = split_ui(cfg, acc.tail.u, i);
  FieldElem lam = acc.tail.t.l[i];
  FieldElem mu = acc.tail.t.l[1 - i];

  // b * u_i(r) m_i = t_{1-i}(mu) * zeta * y2,
  //   zeta = t_i(lam) u_i(c + r) m_i = u_i(lam^2 (c+r)) m_i(lam)
  //   y2   = (u_i(r)^-1 . m_i^-1)-conjugate of the U^i part
  std::vector<TreeGenerator> y2 = sp.gens;
  for (auto& g : y2) {
    g = levi_act(cfg, sl2_u(Ki, Ki->neg(r)), i, g);
    g = levi_act(cfg, sl2_m(Ki, Ki->neg(Ki->one())), i, g);
  }
  FieldElem s_tilde = Ki->mul(Ki->mul(lam, lam), Ki->add(sp.c, r));
  Sl2Elem zeta{Ki, Sl2Elem::Cell::BigCell, s_tilde, lam, Ki->zero()};

  if (!acc.letters.empty() && acc.letters.back().i == i) {
    FieldElem rk = acc.letters.back().r;
    acc.letters.pop_back();
    Sl2Elem xi = sl2_mul({Ki, Sl2Elem::Cell::BigCell, rk, Ki->one(), Ki->zero()}, zeta);
    TreeTorus t = torus_identity(cfg);
    t.l[1 - i] = mu;
    if (xi.cell == Sl2Elem::Cell::BigCell) {
      // u_i(rho) m_i . t_i(kappa^-1) t_{1-i}(mu) . u_i(rho') . y2
      acc.letters.push_back({i, xi.r});
      t.l[i] = Ki->inv(xi.lam);
      UPlusWord u = uplus_letter(cfg, tree_simple_root(i), xi.r2);
      u = uplus_mul(cfg, u, gens_to_uplus(cfg, y2));
      acc.tail = {t, u};
    } else {
      // the letter dissolves into the Borel: u_i(rho) t_i(kappa)
      t.l[i] = xi.lam;
      FieldElem rho = Ki->mul(Ki->pow(xi.lam, -2), xi.r);
      UPlusWord u = uplus_letter(cfg, tree_simple_root(i), rho);
      u = uplus_mul(cfg, u, gens_to_uplus(cfg, y2));
      acc.tail = {t, u};
    }
  } else {
    // append: u_i(s~) m_i . t_i(lam^-1) t_{1-i}(mu) . y2
    acc.letters.push_back({i, s_tilde});
    TreeTorus t = torus_identity(cfg);
    t.l[i] = Ki->inv(lam);
    t.l[1 - i] = mu;
    acc.tail = {t, gens_to_uplus(cfg, y2)};
  }
}

}  // namespace

LambdaWord lambda_mul(const TreeConfig& cfg, const LambdaWord& x, const LambdaWord& y) {
  LambdaWord acc = x;
  for (const auto& c : y.letters) mul_coset_letter(cfg, acc, c.i, c.r);
  acc.tail = borel_mul(cfg, acc.tail, y.tail);
  return acc;
}

LambdaWord lambda_inverse(const TreeConfig& cfg, const LambdaWord& x) {
  LambdaWord acc = lambda_of_borel(cfg, borel_inverse(cfg, x.tail));
  for (auto it = x.letters.rbegin(); it != x.letters.rend(); ++it) {
    // (u_i(r) m_i)^-1 = m_i t_i(-1) u_i(-r)
    const FieldCtx* Ki = cfg.K[it->i];
    LambdaWord inv_letter{{{it->i, Ki->zero()}}, borel_identity(cfg)};
    inv_letter.tail.t.l[it->i] = Ki->neg(Ki->one());
    inv_letter.tail.u = uplus_letter(cfg, tree_simple_root(it->i), Ki->neg(it->r));
    acc = lambda_mul(cfg, acc, inv_letter);
  }
  return acc;
}

LambdaWord lambda_conj(const TreeConfig& cfg, const LambdaWord& g, const LambdaWord& x) {
  return lambda_mul(cfg, g, lambda_mul(cfg, x, lambda_inverse(cfg, g)));
}

}  // namespace twinlab
