#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twinlab/nonlin.hpp"

using namespace twinlab;

static FuchsianCtx ctx23232() {
  return FuchsianCtx(5, {field_new(2), field_new(3), field_new(2), field_new(3), field_new(2)});
}

TEST_CASE("witness construction: nested roots, parallel walls, mixed characteristics") {
  auto cfg = ctx23232();
  auto w = build_witness(cfg, 2);
  CHECK(cfg.field_of(w.i)->p != cfg.field_of(w.j)->p);
  REQUIRE(w.roots_i.size() == 3);
  // strict nesting a_i(n+1) > a_i(n)
  for (int n = 0; n < 2; ++n) {
    CHECK(polygon_contains(cfg.r, w.roots_i[n + 1], w.roots_i[n]));
    CHECK_FALSE(polygon_contains(cfg.r, w.roots_i[n], w.roots_i[n + 1]));
  }
  // cross pairs are never prenilpotent
  for (const auto& x : w.roots_i)
    for (const auto& y : w.roots_j) CHECK_FALSE(cfg.prenilpotent(x, y));
}

TEST_CASE("V_i is an elementary abelian exponent-p group") {
  auto cfg = ctx23232();
  // depth 0: single root group
  auto roots0 = build_vi_roots(cfg, 0, 0);
  CHECK(roots0.size() == 1);
  // char 2 side: squares vanish
  auto rep2 = verify_exponent(cfg, build_vi_roots(cfg, 0, 1));
  CAPTURE(rep2.summary());
  CHECK(rep2.pass);
  // char 3 side at depth 3: the group has order 3^4 on its support
  auto roots3 = build_vi_roots(cfg, 1, 3);
  auto rep3 = verify_exponent(cfg, roots3);
  CHECK(rep3.pass);
  CHECK(rep3.counters["elements"] == 81 - 1);
}

TEST_CASE("free product certificate at moderate length") {
  auto cfg = ctx23232();
  auto w = build_witness(cfg, 1);
  auto fp = certify_free_product(cfg, w, 5);
  CAPTURE(fp.rep.summary());
  CHECK(fp.rep.pass);
  CHECK(fp.collisions == 0);
  CHECK(fp.words_checked > 100);
}

TEST_CASE("syllable growth of (v v')^n with torsion inputs") {
  auto cfg = ctx23232();
  auto w = build_witness(cfg, 1);
  // one nontrivial element from each side
  FuchsianUWord v = fuchsian_letter(cfg, w.roots_i[0], cfg.field_of(w.i)->one());
  v = fuchsian_umul(cfg, v, fuchsian_letter(cfg, w.roots_i[1], cfg.field_of(w.i)->one()));
  FuchsianUWord vp = fuchsian_letter(cfg, w.roots_j[0], cfg.field_of(w.j)->one());
  auto og = certify_infinite_order(cfg, w, v, vp, 12);
  CAPTURE(og.rep.summary());
  CHECK(og.rep.pass);
  REQUIRE(og.lengths.size() == 12);
  CHECK(og.lengths[0] == 2);
  CHECK(og.lengths[1] == 4);
  CHECK(og.lengths[11] == 24);
  CHECK(og.v_exponent_ok);
  CHECK(og.vp_exponent_ok);
  // JSON report fields
  auto fp = certify_free_product(cfg, w, 3);
  std::string js = nonlin_report_json(cfg, w, fp, og);
  CHECK(js.find("\"order_growth\":[2,4,") != std::string::npos);
  CHECK(js.find("\"collision_count\":0") != std::string::npos);
}
