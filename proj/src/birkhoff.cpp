#include "twinlab/birkhoff.hpp"

#include <algorithm>
#include <set>

namespace twinlab {

namespace {

// Structured Birkhoff normализation.  The state carries the shape
// U_+ . w . T . U_-  (plus) or U_- . w . T . U_+ (minus) and is
// multiplied on the right by one letter at a time.  All rank-one
// collisions happen at the right end of the Weyl word, where one of the
// 2x2 identities applies:
//   u_-(d) u(r) m(1) = u(-1/d)  t(-1/d) u_-(r - 1/d)     (d != 0)
//   m(1) u(x)        = u(-1/x)  t(-1/x) u_-(-1/x)        (x != 0)
//   m(1) u(x) m(1)   = t(-1)    u_-(x)
//   u(c) m(1)        = u_-(-1/c) t(-c)  u(-1/c)          (c != 0)
//   m(1) u_-(z)      = u_-(-1/z) t(-z)  u(-1/z)          (z != 0)
// Whenever a letter is transported across the Weyl word all the m's have
// unit parameter, so transports move the root without touching the
// coefficient; positivity of w.a_i (equivalently l(w s_i) > l(w), i.e.
// the reduced word does not end in i) guarantees the transport never
// meets a sign flip.

class PlusEngine {
public:
  explicit PlusEngine(const TreeConfig& cfg) : cfg_(cfg), T_(torus_identity(cfg)) {}

  void mul_lambda(const LambdaWord& g) {
    for (const auto& c : g.letters) mul_coset(c.i, c.r);
    mul_torus(g.tail.t);
    for (const auto& b : g.tail.u.blocks)
      for (const auto& [root, k] : b.entries) mul_pos_general(root, k);
  }

  BirkhoffForm form() const {
    BirkhoffForm f;
    f.w = w_;
    f.pos = P_;
    f.torus = T_;
    for (const auto& b : M_.blocks)
      for (const auto& [root, k] : b.entries) f.neg.push_back({root, k});
    return f;
  }

  void mul_torus(const TreeTorus& tau) {
    // M tau = tau (tau^-1 M tau): negative letters scale by tau^{+2 eps}
    for (auto& b : M_.blocks)
      for (auto& [root, k] : b.entries)
        k = k.ctx->mul(k, cfg_.field_of(root)->pow(tau.l[root.type()], 2 * tree_epsilon(root)));
    T_ = torus_mul(T_, tau);
  }

  // state . u_i(r) m_i
  void mul_coset(int i, FieldElem r) {
    const FieldCtx* Ki = cfg_.K[i];
    UiSplit sp = split_ui(cfg_, M_, i);  // M = u_{-a_i}(d) . N
    Sl2Elem unit_inv = sl2_inverse(sl2_mul(sl2_u(Ki, r), sl2_m(Ki, Ki->one())));
    std::vector<TreeGenerator> N2 = sp.gens;
    for (auto& g : N2) g = mirror_levi_act(cfg_, unit_inv, i, g);
    if (sp.c.is_zero()) {
      M_ = gens_to_uplus(cfg_, N2);
      FieldElem xt = Ki->mul(Ki->pow(T_.l[i], 2), r);
      T_.l[i] = Ki->inv(T_.l[i]);  // the m-letter crossed T
      absorb_pos_then_m(i, xt);
    } else {
      FieldElem d = sp.c;
      FieldElem x = Ki->neg(Ki->inv(d));
      FieldElem tail = Ki->add(r, x);  // r - 1/d
      M_ = uplus_mul(cfg_, uplus_letter(cfg_, tree_simple_root(i), tail), gens_to_uplus(cfg_, N2));
      FieldElem xt = Ki->mul(Ki->pow(T_.l[i], 2), x);
      T_.l[i] = Ki->mul(T_.l[i], x);  // merge t_i(-1/d)
      absorb_pos_only(i, xt);
    }
  }

  void mul_m(int i) { mul_coset(i, cfg_.K[i]->zero()); }

  // state . u_b(l) for an arbitrary positive root, through its peel word
  void mul_pos_general(const TreeRoot& b, FieldElem l) {
    std::vector<int> peel = tree_peel_word(b);
    for (int j : peel) mul_m(j);
    TreeRoot simple = tree_apply_word(dinf_inverse(peel), b);
    int s = simple.type();
    mul_coset(s, l);
    mul_m_inverse(s);
    for (auto it = peel.rbegin(); it != peel.rend(); ++it) mul_m_inverse(*it);
  }

private:
  const TreeConfig& cfg_;
  UPlusWord P_;
  std::vector<int> w_;
  TreeTorus T_;
  UPlusWord M_;  // mirror word: entry (a, k) stands for u_{-a}(k)

  void mul_m_inverse(int i) {
    mul_m(i);
    TreeTorus t = torus_identity(cfg_);
    t.l[i] = cfg_.K[i]->neg(cfg_.K[i]->one());
    mul_torus(t);  // m_i^-1 = m_i t_i(-1)
  }

  void prepend_neg(int i, FieldElem z) {
    if (z.is_zero()) return;
    // the letter crosses T to the right: k *= T_i^2
    FieldElem k = z.ctx->mul(z, cfg_.K[i]->pow(T_.l[i], 2));
    M_ = uplus_mul(cfg_, uplus_letter(cfg_, tree_simple_root(i), k), M_);
  }

  // insert u_i(x) at the end of the Weyl word
  void absorb_pos_only(int i, FieldElem x) {
    if (x.is_zero()) return;
    const FieldCtx* Ki = cfg_.K[i];
    if (w_.empty() || w_.back() != i) {
      TreeRoot img = tree_apply_word(w_, tree_simple_root(i));
      if (!img.is_positive()) throw Error("transport reached a negative root");
      P_ = uplus_mul(cfg_, P_, uplus_letter(cfg_, img, x));
      return;
    }
    // w = w' s_i and m_i u_i(x) = u_i(-1/x) t_i(-1/x) u_{-a_i}(-1/x)
    w_.pop_back();
    FieldElem xinv = Ki->neg(Ki->inv(x));
    prepend_neg(i, xinv);
    absorb_pos_only(i, xinv);  // w no longer ends in i: pure transport
    TreeTorus t = torus_identity(cfg_);
    t.l[i] = xinv;
    T_ = torus_mul(t, T_);
  }

  // insert u_i(x) m_i at the end of the Weyl word
  void absorb_pos_then_m(int i, FieldElem x) {
    const FieldCtx* Ki = cfg_.K[i];
    if (w_.empty() || w_.back() != i) {
      absorb_pos_only(i, x);
      w_.push_back(i);
      return;
    }
    // m_i u_i(x) m_i = t_i(-1) u_{-a_i}(x)
    w_.pop_back();
    prepend_neg(i, x);
    TreeTorus t = torus_identity(cfg_);
    t.l[i] = Ki->neg(Ki->one());
    T_ = torus_mul(t, T_);
  }
};

class MinusEngine {
public:
  explicit MinusEngine(const TreeConfig& cfg) : cfg_(cfg), T_(torus_identity(cfg)) {}

  void mul_lambda(const LambdaWord& g) {
    for (const auto& c : g.letters) {
      P_ = uplus_mul(cfg_, P_, uplus_letter(cfg_, tree_simple_root(c.i), c.r));
      mul_m(c.i);
    }
    mul_torus(g.tail.t);
    P_ = uplus_mul(cfg_, P_, g.tail.u);
  }

  BirkhoffForm form() const {
    BirkhoffForm f;
    f.w = w_;
    f.pos = P_;
    f.torus = T_;
    for (const auto& b : M_.blocks)
      for (const auto& [root, k] : b.entries) f.neg.push_back({root, k});
    return f;
  }

  void mul_torus(const TreeTorus& tau) {
    P_ = torus_act(cfg_, torus_inverse(tau), P_);
    T_ = torus_mul(T_, tau);
  }

  void mul_m(int i) {
    const FieldCtx* Ki = cfg_.K[i];
    UiSplit sp = split_ui_right(cfg_, P_, i);  // P = Y . u_i(c)
    if (sp.c.is_zero()) {
      std::vector<TreeGenerator> Y2 = sp.gens;
      Sl2Elem minv = sl2_m(Ki, Ki->neg(Ki->one()));  // m_i^-1
      for (auto& g : Y2) g = levi_act(cfg_, minv, i, g);
      P_ = gens_to_uplus(cfg_, Y2);
      T_.l[i] = Ki->inv(T_.l[i]);  // the m-letter crossed T
      absorb_m(i);
    } else {
      // Y u_i(c) m_i = u_-(-1/c) t_i(-c) (conj Y) u_i(-1/c)
      FieldElem c = sp.c;
      FieldElem x = Ki->neg(Ki->inv(c));  // -1/c
      FieldElem mc = Ki->neg(c);
      // conj Y by (u_-(-1/c) t_i(-c))^-1
      Sl2Elem conj =
          sl2_mul(sl2_inverse(sl2_t(Ki, mc)), sl2_inverse(sl2_u_minus(Ki, x)));
      std::vector<TreeGenerator> Y3 = sp.gens;
      for (auto& g : Y3) g = levi_act(cfg_, conj, i, g);
      P_ = uplus_mul(cfg_, gens_to_uplus(cfg_, Y3), uplus_letter(cfg_, tree_simple_root(i), x));
      // u_-(-1/c) t_i(-c) = t_i(-c) u_-(-c)
      TreeTorus t = torus_identity(cfg_);
      t.l[i] = mc;
      T_ = torus_mul(T_, t);
      FieldElem z = Ki->mul(mc, Ki->pow(T_.l[i], -2));  // crossing the merged T
      absorb_neg(i, z);
    }
  }

private:
  const TreeConfig& cfg_;
  UPlusWord M_;  // mirror word, leftmost zone
  std::vector<int> w_;
  TreeTorus T_;
  UPlusWord P_;

  void prepend_pos(int i, FieldElem y) {
    if (y.is_zero()) return;
    FieldElem k = y.ctx->mul(y, cfg_.K[i]->pow(T_.l[i], -2));  // crossing T rightward
    P_ = uplus_mul(cfg_, uplus_letter(cfg_, tree_simple_root(i), k), P_);
  }

  // insert u_{-a_i}(z) at the end of the Weyl word
  void absorb_neg(int i, FieldElem z) {
    if (z.is_zero()) return;
    const FieldCtx* Ki = cfg_.K[i];
    if (w_.empty() || w_.back() != i) {
      TreeRoot img = tree_apply_word(w_, tree_simple_root(i));
      if (!img.is_positive()) throw Error("transport reached a negative root");
      M_ = uplus_mul(cfg_, M_, uplus_letter(cfg_, img, z));
      return;
    }
    // m_i u_-(z) = u_-(-1/z) t_i(-z) u_i(-1/z)
    w_.pop_back();
    FieldElem zinv = Ki->neg(Ki->inv(z));
    prepend_pos(i, zinv);
    absorb_neg(i, zinv);
    TreeTorus t = torus_identity(cfg_);
    t.l[i] = Ki->neg(z);
    T_ = torus_mul(t, T_);
  }

  void absorb_m(int i) {
    const FieldCtx* Ki = cfg_.K[i];
    if (w_.empty() || w_.back() != i) {
      w_.push_back(i);
      return;
    }
    w_.pop_back();  // m_i m_i = t_i(-1)
    TreeTorus t = torus_identity(cfg_);
    t.l[i] = Ki->neg(Ki->one());
    T_ = torus_mul(t, T_);
  }
};

}  // namespace

BirkhoffForm birkhoff_plus(const TreeConfig& cfg, const LambdaWord& g) {
  PlusEngine e(cfg);
  e.mul_lambda(g);
  BirkhoffForm f = e.form();
  if (dinf_reduce(f.w) != f.w) throw Error("birkhoff produced a non-reduced Weyl word");
  return f;
}

BirkhoffForm birkhoff_minus(const TreeConfig& cfg, const LambdaWord& g) {
  MinusEngine e(cfg);
  e.mul_lambda(g);
  BirkhoffForm f = e.form();
  if (dinf_reduce(f.w) != f.w) throw Error("birkhoff produced a non-reduced Weyl word");
  return f;
}

std::vector<int> birkhoff_part(const TreeConfig& cfg, const LambdaWord& g) {
  return birkhoff_plus(cfg, g).w;
}

std::vector<int> codistance(const TreeConfig& cfg, const LambdaWord& g, const LambdaWord& h) {
  return birkhoff_part(cfg, lambda_mul(cfg, lambda_inverse(cfg, g), h));
}

std::vector<int> codistance_minus_first(const TreeConfig& cfg, const LambdaWord& h,
                                        const LambdaWord& g) {
  return birkhoff_minus(cfg, lambda_mul(cfg, lambda_inverse(cfg, h), g)).w;
}

BirkhoffOracle::BirkhoffOracle(const TreeConfig& cfg, int root_window, int max_letters)
    : cfg_(cfg) {
  std::vector<std::pair<TreeRoot, FieldElem>> letters;
  for (int i = 0; i < 2; ++i)
    for (const auto& a : tree_prenil_roots(i, root_window)) {
      const FieldCtx* K = cfg.field_of(a);
      for (std::uint32_t kv = 1; kv < K->q; ++kv) letters.push_back({a, K->elem(kv)});
    }
  uplus_.push_back(lambda_identity(cfg));
  std::vector<LambdaWord> uminus{lambda_identity(cfg)};
  std::set<std::string> seen_p{uplus_[0].encode()};
  uminus_keys_.insert(uminus[0].encode());
  std::size_t beg_p = 0, beg_m = 0;
  for (int round = 0; round < max_letters; ++round) {
    std::size_t end_p = uplus_.size(), end_m = uminus.size();
    for (std::size_t idx = beg_p; idx < end_p; ++idx)
      for (const auto& [a, k] : letters) {
        LambdaWord x = lambda_mul(cfg, uplus_[idx], lambda_of_root_letter(cfg, a, k));
        if (seen_p.insert(x.encode()).second) uplus_.push_back(x);
      }
    for (std::size_t idx = beg_m; idx < end_m; ++idx)
      for (const auto& [a, k] : letters) {
        LambdaWord x = lambda_mul(cfg, uminus[idx], lambda_of_neg_root_letter(cfg, a, k));
        if (uminus_keys_.insert(x.encode()).second) uminus.push_back(x);
      }
    beg_p = end_p;
    beg_m = end_m;
    check_budget((uplus_.size() + uminus.size()) * 512, "BirkhoffOracle");
  }
}

bool BirkhoffOracle::contains(const LambdaWord& g, const std::vector<int>& w) const {
  LambdaWord wword = lambda_identity(cfg_);
  for (int i : w) wword = lambda_mul(cfg_, wword, lambda_m(cfg_, i, cfg_.K[i]->one()));
  for (const auto& up : uplus_) {
    LambdaWord rest = lambda_mul(cfg_, lambda_inverse(cfg_, wword),
                                 lambda_mul(cfg_, lambda_inverse(cfg_, up), g));
    for (std::uint32_t t0 = 1; t0 < cfg_.K[0]->q; ++t0)
      for (std::uint32_t t1 = 1; t1 < cfg_.K[1]->q; ++t1) {
        TreeTorus t = {{cfg_.K[0]->elem(t0), cfg_.K[1]->elem(t1)}};
        LambdaWord cand = lambda_mul(cfg_, lambda_of_torus(cfg_, torus_inverse(t)), rest);
        if (uminus_keys_.count(cand.encode())) return true;
      }
  }
  return false;
}

bool birkhoff_membership_oracle(const TreeConfig& cfg, const LambdaWord& g,
                                const std::vector<int>& w, int root_window, int max_letters) {
  return BirkhoffOracle(cfg, root_window, max_letters).contains(g, w);
}


}  // namespace twinlab
