#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "twinlab/treetwin.hpp"

using namespace twinlab;

static TreeConfig cfg23() { return {{field_new(2), field_new(3)}}; }
static TreeConfig cfg22() { return {{field_new(2), field_new(2)}}; }

TEST_CASE("ball structure: counts, valencies, tree shape") {
  auto cfg = cfg23();
  // R = 0: single chamber
  CHECK(tree_build_ball(cfg, 0).chambers.size() == 1);
  // R = 1, q0 = 2: base plus 2 neighbors across its type-0 panel
  TreeBall b1 = tree_build_ball(cfg, 1);
  CHECK(b1.chambers.size() == 1 + 2 + 3);
  // R = 3 layer counts: alternating words, per-letter factors q_i
  TreeBall b3 = tree_build_ball(cfg, 3);
  long long expect = 1 + (2 + 3) + (2 * 3 + 3 * 2) + (2 * 3 * 2 + 3 * 2 * 3);
  CHECK(static_cast<long long>(b3.chambers.size()) == expect);
  // one alternation order only: 1 + 2 + 2*3 + 2*3*2 = 21
  long long one_order = 0;
  for (const auto& c : b3.chambers) {
    bool starts0 = c.empty() || c[0].i == 0;
    if (starts0) ++one_order;
  }
  CHECK(one_order == 21);
  // interior panels have 1 + q_i chambers
  for (const auto& p : b3.panels)
    if (p.interior) CHECK(p.chamber_ids.size() == 1 + cfg.q(p.type));
  // the panel-chamber incidence graph is a tree: every chamber has 2
  // panels, #panels = #chambers + 1 when all panels are counted
  CHECK(b3.panels.size() == b3.chambers.size() + 1);
  // connectivity of the chamber graph
  std::vector<int> seen(b3.chambers.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int at = stack.back();
    stack.pop_back();
    for (int nb : b3.adjacency[at])
      if (!seen[nb]) {
        seen[nb] = 1;
        ++cnt;
        stack.push_back(nb);
      }
  }
  CHECK(cnt == static_cast<int>(b3.chambers.size()));
}

TEST_CASE("w_distance matches BFS gallery distance") {
  auto cfg = cfg23();
  TreeBall ball = tree_build_ball(cfg, 4);
  // BFS from base chamber
  std::vector<int> dist(ball.chambers.size(), -1);
  std::vector<int> queue{ball.id_of({})};
  dist[queue[0]] = 0;
  for (std::size_t at = 0; at < queue.size(); ++at)
    for (int nb : ball.adjacency[queue[at]])
      if (dist[nb] < 0) {
        dist[nb] = dist[queue[at]] + 1;
        queue.push_back(nb);
      }
  for (std::size_t id = 0; id < ball.chambers.size(); ++id) {
    auto w = tree_w_distance(cfg, {}, ball.chambers[id]);
    CHECK(static_cast<int>(w.size()) == dist[id]);
  }
  // random pairs
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const Chamber& c = ball.chambers[rng() % ball.chambers.size()];
    const Chamber& d = ball.chambers[rng() % ball.chambers.size()];
    auto w = tree_w_distance(cfg, c, d);
    CHECK(w == dinf_inverse(tree_w_distance(cfg, d, c)));
    if (c == d) CHECK(w.empty());
  }
  // adjacent chambers: distance s_i
  for (const auto& p : ball.panels)
    if (p.chamber_ids.size() >= 2) {
      auto w = tree_w_distance(cfg, ball.chambers[p.chamber_ids[0]],
                               ball.chambers[p.chamber_ids[1]]);
      CHECK(w == std::vector<int>{p.type});
    }
}

TEST_CASE("TRD axioms on GF(2)/GF(3), window 4") {
  auto rep = verify_trd(cfg23(), 4);
  CAPTURE(rep.summary());
  CHECK(rep.pass);
  CHECK(rep.counters["trd1_pairs"] > 0);
  CHECK(rep.counters["trd2_conjugations"] > 0);
}

TEST_CASE("twin axioms on GF(2)/GF(2), window 2") {
  auto rep = verify_tw(cfg22(), 2);
  CAPTURE(rep.summary());
  CHECK(rep.pass);
  CHECK(rep.counters["tw2_checks"] > 0);
  CHECK(rep.counters["tw3_checks"] > 0);
}

TEST_CASE("Moufang property at every panel of the R=3 ball") {
  for (auto cfg : {cfg22(), cfg23()}) {
    auto rep = verify_moufang(cfg, 3);
    CAPTURE(rep.summary());
    CHECK(rep.pass);
  }
}

TEST_CASE("action kernel characterization") {
  auto rep = verify_action_kernel(cfg23(), 6, 40, 77);
  CAPTURE(rep.summary());
  CHECK(rep.pass);
}

TEST_CASE("RT2c windowed factorization") {
  auto rep = verify_rt2c(cfg23(), 3, 200, 13);
  CAPTURE(rep.summary());
  CHECK(rep.pass);
}

TEST_CASE("U_w factorization up to length 5") {
  auto rep = verify_uw_factorization(cfg23(), 5);
  CAPTURE(rep.summary());
  CHECK(rep.pass);
}

TEST_CASE("commensurability: Phi_w and index") {
  auto cfg = cfg23();
  CHECK(commensurability_index(cfg, {}) == 1);
  CHECK(commensurability_index(cfg, {0}) == 2);  // q_0
  CHECK(commensurability_index(cfg, {1}) == 3);  // q_1
  CHECK(commensurability_index(cfg, {0, 1}) == 6);
  // Phi_{s0} = {a_0}
  auto phi = phi_w_inverse({0});
  REQUIRE(phi.size() == 1);
  CHECK(phi[0] == tree_simple_root(0));
  auto rep = commensurability_check(cfg22(), 2);
  CAPTURE(rep.summary());
  CHECK(rep.pass);
}

TEST_CASE("parahoric restriction: star fixed, kernel orders are prime powers") {
  auto cfg = cfg23();
  auto out = parahoric_restrict(cfg, TreeFacet::Vertex0, 2, 300, 2025);
  CAPTURE(out.rep.summary());
  CHECK(out.rep.pass);
  CHECK(out.rep.counters["sampled_elements"] > 100);
  // every kernel level is pure: all orders are powers of one prime
  for (const auto& [level, orders] : out.kernel_orders) {
    CAPTURE(level);
    std::set<long long> primes;
    for (long long o : orders) {
      if (o == 1) continue;
      long long p = 2;
      while (o % p) ++p;
      primes.insert(p);
    }
    CHECK(primes.size() <= 1);
  }
}

TEST_CASE("kernel order sets per facet, frozen from measurement") {
  // GF(2)/GF(3): vertex-facet ball exhaustions have pure kernel levels of
  // alternating characteristic; the edge facet mixes both branch types at
  // every distance, so lcm orders (6 = 2*3) appear and the char-power
  // check correctly reports them
  TreeConfig cfg{{field_new(2), field_new(3)}};
  auto v0 = parahoric_restrict(cfg, TreeFacet::Vertex0, 3, 800, 99);
  CHECK(v0.rep.pass);
  CHECK(v0.kernel_orders[1] == std::set<long long>{1, 3});
  CHECK(v0.kernel_orders[2] == std::set<long long>{1, 2});
  CHECK(v0.kernel_orders[3] == std::set<long long>{1, 3});
  auto v1 = parahoric_restrict(cfg, TreeFacet::Vertex1, 3, 800, 99);
  CHECK(v1.rep.pass);
  CHECK(v1.kernel_orders[1] == std::set<long long>{1, 2});
  CHECK(v1.kernel_orders[2] == std::set<long long>{1, 3});
  auto edge = parahoric_restrict(cfg, TreeFacet::Edge, 2, 800, 99);
  CHECK_FALSE(edge.rep.pass);  // order 6 elements are real here
  CHECK(edge.kernel_orders[1].count(6) == 1);
  // equal fields: every kernel order is a power of the single characteristic
  TreeConfig cfg22{{field_new(2), field_new(2)}};
  auto eq = parahoric_restrict(cfg22, TreeFacet::Vertex0, 2, 400, 7);
  CHECK(eq.rep.pass);
  for (const auto& [lvl, orders] : eq.kernel_orders)
    for (long long o : orders) CHECK((o == 1 || o == 2));
}

TEST_CASE("emitters are deterministic") {
  auto cfg = cfg22();
  TreeBall ball = tree_build_ball(cfg, 2);
  CHECK(tree_ball_json(cfg, ball, '+') == tree_ball_json(cfg, ball, '+'));
  std::string dot = tree_ball_dot(cfg, ball, '+');
  CHECK(dot.find("graph twintree_plus") != std::string::npos);
  std::string js = tree_ball_json(cfg, ball, '+');
  CHECK(js.find("\"schema\":\"twinlab/1\"") != std::string::npos);
}
