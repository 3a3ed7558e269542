#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "twinlab/fuchsian.hpp"

using namespace twinlab;

static FuchsianCtx ctx23232() {
  return FuchsianCtx(5, {field_new(2), field_new(3), field_new(2), field_new(3), field_new(2)});
}
static FuchsianCtx ctx2all() {
  return FuchsianCtx(5, {field_new(2), field_new(2), field_new(2), field_new(2), field_new(2)});
}

TEST_CASE("uword normal form basics") {
  auto cfg = ctx2all();
  PolygonRoot a0 = polygon_simple_root(0), a1 = polygon_simple_root(1), a2 = polygon_simple_root(2);
  auto one = field_new(2)->one();
  FuchsianUWord u = fuchsian_letter(cfg, a0, one);
  CHECK(fuchsian_umul(cfg, u, FuchsianUWord{}) == u);
  // adjacent types commute (orthogonal walls): sorted normal form
  FuchsianUWord ab = fuchsian_umul(cfg, fuchsian_letter(cfg, a1, one), fuchsian_letter(cfg, a0, one));
  REQUIRE(ab.letters.size() == 2);
  CHECK(ab.letters[0].root == a0);
  // non-prenilpotent (r=5, types 0 and 2): frozen order
  FuchsianUWord f1 = fuchsian_umul(cfg, fuchsian_letter(cfg, a2, one), fuchsian_letter(cfg, a0, one));
  REQUIRE(f1.letters.size() == 2);
  CHECK(f1.letters[0].root == a2);
  // same root merges additively
  CHECK(fuchsian_umul(cfg, u, u).is_identity());  // char 2
  // alternating words over a free pair stay pairwise distinct
  std::set<std::string> seen;
  FuchsianUWord w;
  for (int len = 1; len <= 10; ++len) {
    w = fuchsian_umul(cfg, w, fuchsian_letter(cfg, len % 2 ? a0 : a2, one));
    CHECK(seen.insert(w.str()).second);
    CHECK(w.letters.size() == static_cast<std::size_t>(len));
  }
}

TEST_CASE("canonicalization is confluent and inverse works") {
  auto cfg = ctx23232();
  std::mt19937_64 rng(31);
  auto roots = polygon_positive_roots(5, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<FLetter> letters;
    int n = static_cast<int>(rng() % 10);
    for (int t = 0; t < n; ++t) {
      const PolygonRoot& a = roots[rng() % roots.size()];
      const FieldCtx* K = cfg.field_of(a);
      letters.push_back({a, K->elem(1 + rng() % (K->q - 1))});
    }
    FuchsianUWord nf = fuchsian_canonicalize(cfg, letters);
    // random legal swaps before canonicalizing must not change the result
    auto shuffled = letters;
    for (int k = 0; k + 1 < static_cast<int>(shuffled.size()) && k < 14; ++k) {
      std::size_t p = rng() % (shuffled.size() - 1);
      if (cfg.prenilpotent(shuffled[p].root, shuffled[p + 1].root))
        std::swap(shuffled[p], shuffled[p + 1]);
    }
    CHECK(fuchsian_canonicalize(cfg, shuffled) == nf);
    // associativity and inverses through random cuts
    std::size_t cut = letters.empty() ? 0 : rng() % letters.size();
    FuchsianUWord left = fuchsian_canonicalize(cfg, {letters.begin(), letters.begin() + cut});
    FuchsianUWord right = fuchsian_canonicalize(cfg, {letters.begin() + cut, letters.end()});
    CHECK(fuchsian_umul(cfg, left, right) == nf);
    CHECK(fuchsian_umul(cfg, nf, fuchsian_uinverse(cfg, nf)).is_identity());
  }
}

TEST_CASE("U_w closure and cardinality for every l(w) <= 4") {
  auto cfg = ctx23232();
  for (const PWord& w : polygon_ball(5, 4)) {
    std::vector<PolygonRoot> phi;
    PWord winv = polygon_inverse(w);
    for (std::size_t k = 0; k < winv.size(); ++k) {
      PWord prefix(winv.begin(), winv.begin() + k);
      phi.push_back(polygon_apply_word(5, prefix, polygon_simple_root(winv[k])));
    }
    long long expect = 1;
    for (const auto& a : phi) expect *= cfg.q(a.i);
    // enumerate the subgroup generated by these letters
    std::set<std::string> seen;
    std::vector<FuchsianUWord> frontier{{}};
    seen.insert(FuchsianUWord{}.str());
    while (!frontier.empty()) {
      std::vector<FuchsianUWord> next;
      for (const auto& u : frontier)
        for (const auto& a : phi) {
          const FieldCtx* K = cfg.field_of(a);
          for (std::uint32_t kv = 1; kv < K->q; ++kv) {
            FuchsianUWord x = fuchsian_umul(cfg, u, fuchsian_letter(cfg, a, K->elem(kv)));
            if (seen.insert(x.str()).second) next.push_back(x);
          }
        }
      frontier = std::move(next);
    }
    CAPTURE(pword_str(w));
    CHECK(static_cast<long long>(seen.size()) == expect);
  }
}

TEST_CASE("torus action on letters") {
  auto cfg = ctx23232();
  std::vector<FieldElem> lams;
  for (int i = 0; i < 5; ++i) lams.push_back(cfg.field_of(i)->one());
  PolygonRoot a1 = polygon_simple_root(1);
  FuchsianUWord u = fuchsian_letter(cfg, a1, cfg.field_of(1)->one());
  CHECK(fuchsian_torus_act(cfg, lams, u) == u);
  // type-j torus fixes letters of other types
  lams[0] = cfg.field_of(0)->one();
  lams[1] = cfg.field_of(1)->elem(2);
  FuchsianUWord u0 = fuchsian_letter(cfg, polygon_simple_root(0), cfg.field_of(0)->one());
  CHECK(fuchsian_torus_act(cfg, lams, u0) == u0);
  // on its own type: k *= lam^2 (eps = +1 for simple roots): 2^2 = 1 mod 3
  CHECK(fuchsian_torus_act(cfg, lams, u) == u);
}

TEST_CASE("generator classification: exhaustive and disjoint on the window") {
  for (int which = 0; which < 2; ++which) {
    FuchsianCtx cfg = which ? ctx23232() : ctx2all();
    auto rep = verify_generator_classification(cfg, 3);
    CAPTURE(rep.summary());
    CHECK(rep.pass);
    CHECK(rep.counters["roots_classified"] > 0);
  }
}

TEST_CASE("levi action spec cases") {
  auto cfg = ctx23232();
  // fourth type: m_i(lam) sends u_a(k) to u_{s_i a}(lam^{-2 eps delta} k)
  auto roots = polygon_positive_roots(5, 3);
  const int i = 0;
  const FieldCtx* K0 = cfg.field_of(0);
  for (const auto& a : roots) {
    if (polygon_same_wall(5, a, polygon_simple_root(0)) ||
        polygon_same_wall(5, a, polygon_simple_root(1)))
      continue;
    if (classify_root(cfg, i, a) != GenType::Fourth) continue;
    const FieldCtx* Ka = cfg.field_of(a);
    UGenerator x = make_generator(cfg, i, GenType::Fourth, K0->zero(), cfg.field_of(1)->zero(), a,
                                  Ka->one());
    UGenerator y = fuchsian_levi_act(cfg, sl2_m(K0, K0->one()), 0, x);
    CHECK(y.type == GenType::Second);
    CHECK(y.root == cfg.reflect(0, a));
    CHECK(y.k == x.k);
    // identity action
    CHECK(fuchsian_levi_act(cfg, sl2_identity(K0), 0, x) == x);
    break;
  }
  // first type with v != 0: conjugator becomes -lam^2/v, t unchanged
  for (const auto& a : roots) {
    if (polygon_same_wall(5, a, polygon_simple_root(0)) ||
        polygon_same_wall(5, a, polygon_simple_root(1)))
      continue;
    if (classify_root(cfg, i, a) != GenType::First) continue;
    const FieldCtx* Ka = cfg.field_of(a);
    UGenerator x = make_generator(cfg, i, GenType::First, K0->one(), cfg.field_of(1)->one(), a,
                                  Ka->one());
    UGenerator y = fuchsian_levi_act(cfg, sl2_m(K0, K0->one()), 0, x);
    CHECK(y.type == GenType::First);
    CHECK(y.v == K0->neg(K0->inv(x.v)));
    CHECK(y.t == x.t);
    CHECK(y.root == x.root);
    break;
  }
}

TEST_CASE("distinct generators expand to distinct uwords (small fields)") {
  auto cfg = ctx2all();
  auto roots = polygon_positive_roots(5, 2);
  std::set<std::string> forms;
  int count = 0;
  for (int i = 0; i < 5; ++i)
    for (const auto& a : roots) {
      if (polygon_same_wall(5, a, polygon_simple_root(i)) ||
          polygon_same_wall(5, a, polygon_simple_root((i + 1) % 5)))
        continue;
      GenType gt = classify_root(cfg, i, a);
      const FieldCtx* Ki = cfg.field_of(i);
      const FieldCtx* Kip = cfg.field_of(i + 1);
      const FieldCtx* Ka = cfg.field_of(a);
      bool hv = gt == GenType::First || gt == GenType::Second;
      bool ht = gt == GenType::First || gt == GenType::Third;
      for (std::uint32_t vv = 0; vv < (hv ? Ki->q : 1); ++vv)
        for (std::uint32_t tv = 0; tv < (ht ? Kip->q : 1); ++tv)
          for (std::uint32_t kv = 1; kv < Ka->q; ++kv) {
            UGenerator g = make_generator(cfg, i, gt, Ki->elem(hv ? vv : 0),
                                          Kip->elem(ht ? tv : 0), a, Ka->elem(kv));
            // expansion tagged by the corner so equal group elements in
            // different corners do not alias
            std::string key = std::to_string(i) + "|" + generator_to_uword(cfg, g).str();
            ++count;
            CHECK(forms.insert(key).second);
          }
    }
  CHECK(count > 50);
}

TEST_CASE("torus scaling on GF(5): lambda = 2, eps = +1 doubles twice") {
  FuchsianCtx cfg(5, {field_new(5), field_new(5), field_new(5), field_new(5), field_new(5)});
  std::vector<FieldElem> lams;
  for (int i = 0; i < 5; ++i) lams.push_back(field_new(5)->one());
  lams[2] = field_new(5)->elem(2);
  FuchsianUWord u = fuchsian_letter(cfg, polygon_simple_root(2), field_new(5)->one());
  FuchsianUWord v = fuchsian_torus_act(cfg, lams, u);
  REQUIRE(v.letters.size() == 1);
  CHECK(v.letters[0].k == field_new(5)->elem(4));  // k -> lam^2 k = 4k
}

TEST_CASE("Fuchsian product relation: exhaustive, all GF(2)") {
  auto cfg = ctx2all();
  auto rep = verify_fuchsian_product_relation(cfg, true);
  CAPTURE(rep.summary());
  CHECK(rep.pass);
}

TEST_CASE("Fuchsian product relation: exhaustive mixed fields") {
  auto cfg = ctx23232();
  auto rep = verify_fuchsian_product_relation(cfg, true);
  CAPTURE(rep.summary());
  CHECK(rep.pass);
  for (auto key : {"case_2D1", "case_2D2", "case_2D3", "case_2D4", "case_2D5",
                   "factor_commutation", "torus_commutation"})
    CHECK(rep.counters[key] > 0);
  for (int t = 0; t < 4; ++t)
    CHECK(rep.counters["gen_type_" + std::to_string(t) + "_roots"] > 0);
}

TEST_CASE("local structure links") {
  auto specs = local_structure(ctx23232());
  REQUIRE(specs.size() == 5);
  // fields (2,3,2,3,2): links K_{3,4}, K_{4,3}, K_{3,4}, K_{4,3}, K_{3,3}
  CHECK(specs[0].left == 3);
  CHECK(specs[0].right == 4);
  CHECK(specs[1].left == 4);
  CHECK(specs[1].right == 3);
  CHECK(specs[4].left == 3);
  CHECK(specs[4].right == 3);
  // GF(4) thickness = |P^1(F_4)| = 5
  FuchsianCtx c4(5, {field_new(2, 2), field_new(2, 2), field_new(2, 2), field_new(2, 2),
                     field_new(2, 2)});
  CHECK(local_structure(c4)[0].left == 5);
}
