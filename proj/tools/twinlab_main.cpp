// twinlab: exact desk-scale construction and verification of twin trees
// and right-angled Fuchsian twinnings over finite fields.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "twinlab/gamma.hpp"
#include "twinlab/nonlin.hpp"
#include "twinlab/treetwin.hpp"

using namespace twinlab;

namespace {

int report_exit(const CheckReport& rep) {
  std::cout << rep.summary() << "\n";
  return rep.pass ? 0 : 1;
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open output file " + path);
  os << content;
}

std::vector<const FieldCtx*> parse_fields_csv(const std::string& csv) {
  std::vector<const FieldCtx*> out;
  std::size_t at = 0;
  while (at <= csv.size()) {
    std::size_t comma = csv.find(',', at);
    if (comma == std::string::npos) comma = csv.size();
    out.push_back(parse_field(csv.substr(at, comma - at)));
    at = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twinlab: twin trees and Fuchsian twinnings over finite fields"};
  app.require_subcommand(1);

  // --- verify sl2 ---
  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  std::string sl2_field = "2";
  auto* vsl2 = verify->add_subcommand("sl2", "Bruhat product formula and relation catalogue");
  vsl2->add_option("--field", sl2_field, "field spec p or p^k");

  // --- tree ---
  auto* tree = app.add_subcommand("tree", "twin tree construction");
  tree->require_subcommand(1);
  std::string k0 = "2", k1 = "3";
  bool tree_exhaustive = false;
  long long tree_samples = 0;
  std::uint64_t tree_seed = 0;
  bool tree_seed_set = false;
  int tw_window = 2, trd_window = 4;
  auto* tverify = tree->add_subcommand("verify", "product relation, TRD and twin axioms");
  tverify->add_option("--k0", k0, "type-0 field p^k");
  tverify->add_option("--k1", k1, "type-1 field p^k");
  auto* tex = tverify->add_flag("--exhaustive", tree_exhaustive, "exhaustive mode (q <= 3)");
  auto* tsm = tverify->add_option("--samples", tree_samples, "sampled mode size");
  tverify->add_option("--seed", tree_seed, "sampling seed")->needs(tsm);
  tverify->add_option("--window", tw_window, "twin-axiom chamber window");
  tverify->add_option("--trd-window", trd_window, "TRD root window");
  tsm->excludes(tex);
  tverify->callback([&] { tree_seed_set = tverify->count("--seed") > 0; });

  int tree_radius = 2;
  std::string tree_emit = "json", tree_out, tree_sign = "+";
  auto* tball = tree->add_subcommand("ball", "chamber ball of the twin tree");
  tball->add_option("--k0", k0, "type-0 field p^k");
  tball->add_option("--k1", k1, "type-1 field p^k");
  tball->add_option("--radius", tree_radius, "gallery radius")->required();
  tball->add_option("--emit", tree_emit, "dot|json")->check(CLI::IsMember({"dot", "json"}));
  tball->add_option("--sign", tree_sign, "building half: + or -")
      ->check(CLI::IsMember({"+", "-"}));
  tball->add_option("-o,--output", tree_out, "output path (default stdout)");

  // --- fuchsian ---
  auto* fuch = app.add_subcommand("fuchsian", "right-angled Fuchsian construction");
  fuch->require_subcommand(1);
  int fr = 5;
  std::string fields_csv = "2,3,2,3,2";
  bool f_exhaustive = false;
  long long f_samples = 0;
  std::uint64_t f_seed = 0;
  auto* fverify = fuch->add_subcommand("verify", "product relation and classification");
  fverify->add_option("--r", fr, "rank (>= 5)");
  fverify->add_option("--fields", fields_csv, "csv of p^k, one per panel type");
  auto* fex = fverify->add_flag("--exhaustive", f_exhaustive, "exhaustive mode (all q <= 3)");
  auto* fsm = fverify->add_option("--samples", f_samples, "sampled mode size");
  fverify->add_option("--seed", f_seed, "sampling seed")->needs(fsm);
  fsm->excludes(fex);

  long long fq = 2;
  int f_radius = 1;
  std::string f_emit = "json", f_out;
  auto* fball = fuch->add_subcommand("ball", "chamber ball of the Bourdon-lattice model");
  fball->add_option("--r", fr, "rank (>= 5)");
  fball->add_option("--q", fq, "thickness parameter (equal at every panel)");
  fball->add_option("--radius", f_radius, "syllable radius")->required();
  fball->add_option("--emit", f_emit, "dot|svg|json")
      ->check(CLI::IsMember({"dot", "svg", "json"}));
  fball->add_option("-o,--output", f_out, "output path (default stdout)");

  // --- coxeter ---
  auto* cox = app.add_subcommand("coxeter", "Weyl group analytics");
  cox->require_subcommand(1);
  int cr = 5, cn = 6;
  bool growth_check = false;
  auto* cgrowth = cox->add_subcommand("growth", "growth coefficients d_0..d_N");
  cgrowth->add_option("--r", cr, "rank (>= 5)")->required();
  cgrowth->add_option("--n", cn, "highest order")->required();
  cgrowth->add_flag("--check", growth_check, "compare against BFS word enumeration");

  long long cq = 2;
  auto* ccov = cox->add_subcommand("covolume", "Borel covolume series");
  ccov->add_option("--r", cr, "rank (>= 5)")->required();
  ccov->add_option("--q", cq, "thickness")->required();

  // --- nonlin ---
  auto* nl = app.add_subcommand("nonlin", "non-linearity certificates");
  nl->require_subcommand(1);
  int nl_r = 5, nl_len = 8, nl_pow = 50, nl_depth = 1;
  std::string nl_fields = "2,3,2,3,2", nl_emit = "json", nl_out;
  auto* nwit = nl->add_subcommand("witness", "free product + torsion + growth certificates");
  nwit->add_option("--r", nl_r, "rank (>= 5)");
  nwit->add_option("--fields", nl_fields, "csv of p^k, one per panel type");
  nwit->add_option("--length", nl_len, "free-product syllable length");
  nwit->add_option("--power", nl_pow, "power bound for (v v')^n");
  nwit->add_option("--depth", nl_depth, "root sequence depth");
  nwit->add_option("--emit", nl_emit, "json")->check(CLI::IsMember({"json"}));
  nwit->add_option("-o,--output", nl_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (vsl2->parsed()) {
      return report_exit(sl2_relation_suite(parse_field(sl2_field)));
    }
    if (tverify->parsed()) {
      TreeConfig cfg{{parse_field(k0), parse_field(k1)}};
      if (!tree_exhaustive && tree_samples > 0 && !tree_seed_set)
        throw Error("sampled mode requires an explicit --seed");
      if (!tree_exhaustive && tree_samples <= 0) tree_exhaustive = true;
      int exit_code = 0;
      for (const CheckReport& rep :
           {verify_product_relation(cfg, tree_exhaustive, tree_samples, tree_seed),
            verify_trd(cfg, trd_window), verify_tw(cfg, tw_window)}) {
        std::cout << rep.summary() << "\n";
        if (!rep.pass) exit_code = 1;
      }
      return exit_code;
    }
    if (tball->parsed()) {
      // the negative half has the same chamber combinatorics; its
      // chambers are the coset labels g B^-
      TreeConfig cfg{{parse_field(k0), parse_field(k1)}};
      TreeBall ball = tree_build_ball(cfg, tree_radius);
      char sign = tree_sign == "-" ? '-' : '+';
      write_out(tree_out, tree_emit == "dot" ? tree_ball_dot(cfg, ball, sign)
                                             : tree_ball_json(cfg, ball, sign));
      return 0;
    }
    if (fverify->parsed()) {
      FuchsianCtx cfg(fr, parse_fields_csv(fields_csv));
      if (!f_exhaustive && f_samples > 0 && fverify->count("--seed") == 0)
        throw Error("sampled mode requires an explicit --seed");
      if (!f_exhaustive && f_samples <= 0) f_exhaustive = true;
      int exit_code = 0;
      for (const CheckReport& rep :
           {verify_fuchsian_product_relation(cfg, f_exhaustive, f_samples, f_seed),
            verify_generator_classification(cfg, 3)}) {
        std::cout << rep.summary() << "\n";
        if (!rep.pass) exit_code = 1;
      }
      for (const auto& link : local_structure(cfg))
        std::cout << "link at vertex (" << link.i << "," << (link.i + 1) % fr << "): K_{"
                  << link.left << "," << link.right << "}\n";
      return exit_code;
    }
    if (fball->parsed()) {
      if (f_emit == "svg") {
        write_out(f_out, apartment_svg(fr, f_radius + 1, f_radius));
        return 0;
      }
      FuchsianBall ball = build_fuchsian_ball(fr, fq, f_radius);
      write_out(f_out, f_emit == "dot" ? fuchsian_ball_dot(ball) : fuchsian_ball_json(ball));
      return 0;
    }
    if (cgrowth->parsed()) {
      auto d = growth_series(cr, cn);
      for (int n = 0; n <= cn; ++n)
        std::cout << "d_" << n << " = " << d[n] << "\n";
      if (growth_check) {
        auto rep = growth_series_check(cr, cn);
        std::cout << rep.summary() << "\n";
        return rep.pass ? 0 : 1;
      }
      return 0;
    }
    if (ccov->parsed()) {
      auto c = covolume(cr, cq);
      std::cout << c.str() << "\n";
      return 0;
    }
    if (nwit->parsed()) {
      FuchsianCtx cfg(nl_r, parse_fields_csv(nl_fields));
      NonlinWitness w = build_witness(cfg, nl_depth);
      auto fp = certify_free_product(cfg, w, nl_len);
      FuchsianUWord v = fuchsian_letter(cfg, w.roots_i[0], cfg.field_of(w.i)->one());
      FuchsianUWord vp = fuchsian_letter(cfg, w.roots_j[0], cfg.field_of(w.j)->one());
      auto og = certify_infinite_order(cfg, w, v, vp, nl_pow);
      write_out(nl_out, nonlin_report_json(cfg, w, fp, og) + "\n");
      return fp.rep.pass && og.rep.pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
