#include "twinlab/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <functional>
#include <sstream>

#include "twinlab/error.hpp"

namespace twinlab {

namespace {

bool gamma_commutes(int r, int x, int y) {
  if (x == y) return false;
  int d = ((x - y) % r + r) % r;
  return d == 1 || d == r - 1;
}

}  // namespace

std::string GammaWord::str() const {
  if (syllables.empty()) return "1";
  std::string s;
  for (const auto& [i, e] : syllables) {
    s += "g" + std::to_string(i);
    if (e != 1) s += "^" + std::to_string(e);
    s += ".";
  }
  s.pop_back();
  return s;
}

GammaWord gamma_canonicalize(int r, long long q, std::vector<std::pair<int, int>> sylls) {
  if (r < 5) throw Error("Gamma_{r,1+q} needs r >= 5");
  if (q < 2) throw Error("thickness q must be >= 2");
  for (auto& [i, e] : sylls) {
    i = ((i % r) + r) % r;
    e = static_cast<int>(((e % (q + 1)) + q + 1) % (q + 1));
  }
  // insertion normal form; rerun after any merge-to-zero
  bool dirty = true;
  while (dirty) {
    dirty = false;
    std::vector<std::pair<int, int>> out;
    for (auto [i, e] : sylls) {
      if (e == 0) continue;
      int stop = -1;
      bool merged = false;
      for (int p = static_cast<int>(out.size()) - 1; p >= 0; --p) {
        if (out[p].first == i) {
          out[p].second = static_cast<int>((out[p].second + e) % (q + 1));
          if (out[p].second == 0) {
            out.erase(out.begin() + p);
            dirty = true;
          }
          merged = true;
          break;
        }
        if (!gamma_commutes(r, out[p].first, i)) {
          stop = p;
          break;
        }
      }
      if (merged) continue;
      int pos = static_cast<int>(out.size());
      for (int p = stop + 1; p < static_cast<int>(out.size()); ++p)
        if (out[p].first > i) {
          pos = p;
          break;
        }
      out.insert(out.begin() + pos, {i, e});
    }
    sylls = std::move(out);
  }
  return {sylls};
}

GammaWord gamma_mul(int r, long long q, const GammaWord& x, const GammaWord& y) {
  std::vector<std::pair<int, int>> all = x.syllables;
  all.insert(all.end(), y.syllables.begin(), y.syllables.end());
  return gamma_canonicalize(r, q, std::move(all));
}

GammaWord gamma_inverse(int r, long long q, const GammaWord& x) {
  std::vector<std::pair<int, int>> rev;
  for (auto it = x.syllables.rbegin(); it != x.syllables.rend(); ++it)
    rev.push_back({it->first, static_cast<int>(q + 1 - it->second)});
  return gamma_canonicalize(r, q, std::move(rev));
}

GammaWord gamma_gen(int r, long long q, int i, int e) {
  return gamma_canonicalize(r, q, {{i, e}});
}

int FuchsianBall::id_of(const GammaWord& w) const {
  auto it = index.find(w.str());
  return it == index.end() ? -1 : it->second;
}

FuchsianBall build_fuchsian_ball(int r, long long q, int radius) {
  {
    long double est = 1;
    long double layer = 1;
    for (int n = 1; n <= radius; ++n) {
      layer = (n == 1 ? r : layer * (r - 2)) * q;
      est += layer;
    }
    check_budget(static_cast<std::size_t>(est * 96), "build_fuchsian_ball");
  }
  FuchsianBall ball;
  ball.r = r;
  ball.q = q;
  ball.radius = radius;
  std::set<std::string> seen;
  ball.chambers.push_back({});
  seen.insert(ball.chambers[0].str());
  for (std::size_t at = 0; at < ball.chambers.size(); ++at) {
    GammaWord w = ball.chambers[at];
    if (static_cast<int>(w.syllables.size()) >= radius) continue;
    for (int i = 0; i < r; ++i)
      for (int e = 1; e <= q; ++e) {
        GammaWord x = gamma_mul(r, q, w, gamma_gen(r, q, i, e));
        if (static_cast<int>(x.syllables.size()) == static_cast<int>(w.syllables.size()) + 1 &&
            !seen.count(x.str())) {
          seen.insert(x.str());
          ball.chambers.push_back(x);
        }
      }
  }
  std::sort(ball.chambers.begin(), ball.chambers.end(),
            [](const GammaWord& a, const GammaWord& b) {
              if (a.syllables.size() != b.syllables.size())
                return a.syllables.size() < b.syllables.size();
              return a.syllables < b.syllables;
            });
  for (std::size_t id = 0; id < ball.chambers.size(); ++id)
    ball.index[ball.chambers[id].str()] = static_cast<int>(id);

  // panels: cosets g <gamma_i>; vertices: cosets g <gamma_i, gamma_{i+1}>
  ball.adjacency.resize(ball.chambers.size());
  std::map<std::pair<std::string, int>, std::vector<int>> panels;
  std::map<std::pair<std::string, int>, std::set<int>> vertices;
  for (std::size_t id = 0; id < ball.chambers.size(); ++id) {
    const GammaWord& g = ball.chambers[id];
    for (int i = 0; i < r; ++i) {
      // panel key: least member of the coset
      GammaWord least = g;
      for (int e = 1; e <= q; ++e) {
        GammaWord x = gamma_mul(r, q, g, gamma_gen(r, q, i, e));
        if (x.syllables.size() < least.syllables.size() ||
            (x.syllables.size() == least.syllables.size() && x.syllables < least.syllables))
          least = x;
      }
      panels[{least.str(), i}].push_back(static_cast<int>(id));
      // vertex key: least member of the rank-2 coset
      GammaWord vleast = g;
      for (int e1 = 0; e1 <= q; ++e1)
        for (int e2 = 0; e2 <= q; ++e2) {
          GammaWord x = gamma_mul(
              r, q, g,
              gamma_mul(r, q, gamma_gen(r, q, i, e1 == 0 ? q + 1 : e1),
                        gamma_gen(r, q, (i + 1) % r, e2 == 0 ? q + 1 : e2)));
          if (x.syllables.size() < vleast.syllables.size() ||
              (x.syllables.size() == vleast.syllables.size() && x.syllables < vleast.syllables))
            vleast = x;
        }
      vertices[{vleast.str(), i}].insert(static_cast<int>(id));
    }
  }
  for (auto& [key, ids] : panels) {
    std::sort(ids.begin(), ids.end());
    bool interior = static_cast<long long>(ids.size()) == q + 1;
    ball.panels.push_back({key.second, ids, interior});
    for (int a : ids)
      for (int b : ids)
        if (a != b) ball.adjacency[a].push_back(b);
  }
  for (auto& [key, idset] : vertices) {
    std::vector<int> ids(idset.begin(), idset.end());
    bool interior = static_cast<long long>(ids.size()) == (q + 1) * (q + 1);
    ball.vertices.push_back({key.second, ids, interior});
  }
  return ball;
}

CheckReport verify_links(const FuchsianBall& ball) {
  CheckReport rep;
  rep.name = "vertex links";
  const long long q = ball.q;
  for (const auto& v : ball.vertices) {
    if (!v.interior) continue;
    rep.bump("interior_vertices");
    // panels of types (t, t+1) meeting this vertex
    std::set<int> members(v.chamber_ids.begin(), v.chamber_ids.end());
    std::vector<std::vector<int>> left, right;
    for (const auto& p : ball.panels) {
      if (p.type != v.type && p.type != (v.type + 1) % ball.r) continue;
      std::vector<int> in;
      for (int id : p.chamber_ids)
        if (members.count(id)) in.push_back(id);
      if (in.empty()) continue;
      (p.type == v.type ? left : right).push_back(in);
    }
    if (static_cast<long long>(left.size()) != q + 1 ||
        static_cast<long long>(right.size()) != q + 1) {
      rep.fail("link is not K_{1+q,1+q}: sides " + std::to_string(left.size()) + "," +
               std::to_string(right.size()));
      continue;
    }
    for (const auto& a : left)
      for (const auto& b : right) {
        int common = 0;
        for (int x : a)
          for (int y : b)
            if (x == y) ++common;
        if (common != 1) rep.fail("panels of a link meet in " + std::to_string(common));
      }
  }
  return rep;
}

CheckReport verify_small_loops(const FuchsianBall& ball, int maxlen) {
  CheckReport rep;
  rep.name = "small loops bound";
  const int n = static_cast<int>(ball.chambers.size());
  const int r = ball.r;
  const long long q = ball.q;

  // which panel joins two adjacent chambers (unique: distinct generators
  // give distinct syllables)
  auto step_type = [&](int a, int b) {
    GammaWord d = gamma_mul(r, q, gamma_inverse(r, q, ball.chambers[a]), ball.chambers[b]);
    if (d.syllables.size() != 1) return -1;
    return d.syllables[0].first;
  };

  // loop contraction moves: backtrack removal, panel chord, square swap
  auto contracts = [&](std::vector<int> loop) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> stack{loop};
    int steps = 0;
    while (!stack.empty() && ++steps < 20000) {
      std::vector<int> cur = stack.back();
      stack.pop_back();
      if (cur.size() <= 2) return true;
      if (!seen.insert(cur).second) continue;
      std::size_t len = cur.size();
      for (std::size_t p = 0; p < len; ++p) {
        int prev = cur[(p + len - 1) % len], at = cur[p], next = cur[(p + 1) % len];
        if (prev == next) {  // backtrack
          std::vector<int> nxt;
          for (std::size_t k = 0; k < len; ++k)
            if (k != p && k != (p + 1) % len) nxt.push_back(cur[k]);
          stack.push_back(nxt);
          continue;
        }
        int t1 = step_type(prev, at), t2 = step_type(at, next);
        if (t1 < 0 || t2 < 0) continue;
        if (t1 == t2) {  // chord within one panel
          std::vector<int> nxt;
          for (std::size_t k = 0; k < len; ++k)
            if (k != p) nxt.push_back(cur[k]);
          stack.push_back(nxt);
          continue;
        }
        if (gamma_commutes(r, t1, t2)) {  // square move
          GammaWord a = ball.chambers[prev];
          GammaWord d1 = gamma_mul(r, q, gamma_inverse(r, q, ball.chambers[prev]),
                                   ball.chambers[at]);
          GammaWord d2 =
              gamma_mul(r, q, gamma_inverse(r, q, ball.chambers[at]), ball.chambers[next]);
          GammaWord alt = gamma_mul(r, q, a, d2);
          int altid = ball.id_of(alt);
          if (altid >= 0) {
            std::vector<int> nxt = cur;
            nxt[p] = altid;
            stack.push_back(nxt);
          }
        }
      }
    }
    return false;
  };

  // enumerate simple cycles up to maxlen with distance pruning
  std::vector<std::vector<int>> dist(n);
  for (int s = 0; s < n; ++s) {
    dist[s].assign(n, -1);
    std::vector<int> qd{s};
    dist[s][s] = 0;
    for (std::size_t at = 0; at < qd.size(); ++at)
      for (int nb : ball.adjacency[qd[at]])
        if (dist[s][nb] < 0) {
          dist[s][nb] = dist[s][qd[at]] + 1;
          qd.push_back(nb);
        }
  }
  long long found = 0;
  std::function<void(std::vector<int>&)> dfs = [&](std::vector<int>& path) {
    int base = path[0], at = path.back();
    int len = static_cast<int>(path.size());
    for (int nb : ball.adjacency[at]) {
      if (nb == base && len >= 3) {
        ++found;
        rep.bump("loops_checked");
        if (!contracts(path)) rep.fail("loop failed to contract");
        continue;
      }
      if (nb < base) continue;  // canonical base = smallest id
      if (len >= 2 && nb == path[len - 2]) continue;
      if (std::find(path.begin(), path.end(), nb) != path.end()) continue;
      if (len + 1 + dist[base][nb] > maxlen + 1) continue;
      if (len + 1 > maxlen) continue;
      path.push_back(nb);
      dfs(path);
      path.pop_back();
    }
  };
  for (int s = 0; s < n; ++s) {
    std::vector<int> path{s};
    dfs(path);
  }
  rep.bump("total_loops", found);
  return rep;
}

std::string fuchsian_ball_json(const FuchsianBall& ball) {
  std::ostringstream os;
  os << "{\"schema\":\"twinlab/1\",\"r\":" << ball.r << ",\"q\":" << ball.q << ",\"chambers\":[";
  for (std::size_t id = 0; id < ball.chambers.size(); ++id) {
    if (id) os << ",";
    os << "{\"id\":" << id << ",\"syllables\":[";
    for (std::size_t k = 0; k < ball.chambers[id].syllables.size(); ++k) {
      if (k) os << ",";
      os << "[" << ball.chambers[id].syllables[k].first << ","
         << ball.chambers[id].syllables[k].second << "]";
    }
    os << "]}";
  }
  os << "],\"panels\":[";
  bool first = true;
  for (const auto& p : ball.panels) {
    if (!first) os << ",";
    first = false;
    os << "{\"type\":" << p.type << ",\"chamber_ids\":[";
    for (std::size_t k = 0; k < p.chamber_ids.size(); ++k) {
      if (k) os << ",";
      os << p.chamber_ids[k];
    }
    os << "]}";
  }
  os << "],\"vertices\":[";
  first = true;
  for (const auto& v : ball.vertices) {
    if (!first) os << ",";
    first = false;
    os << "{\"types\":[" << v.type << "," << (v.type + 1) % ball.r << "],\"chamber_ids\":[";
    for (std::size_t k = 0; k < v.chamber_ids.size(); ++k) {
      if (k) os << ",";
      os << v.chamber_ids[k];
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

std::string fuchsian_ball_dot(const FuchsianBall& ball) {
  std::ostringstream os;
  os << "graph fuchsian_ball {\n  node [shape=circle];\n";
  for (std::size_t id = 0; id < ball.chambers.size(); ++id)
    os << "  c" << id << " [label=\"" << ball.chambers[id].str() << "\"];\n";
  for (const auto& p : ball.panels)
    for (std::size_t a = 0; a < p.chamber_ids.size(); ++a)
      for (std::size_t b = a + 1; b < p.chamber_ids.size(); ++b)
        os << "  c" << p.chamber_ids[a] << " -- c" << p.chamber_ids[b] << " [label=\"" << p.type
           << "\"];\n";
  os << "}\n";
  return os.str();
}

namespace {

using Cx = std::complex<double>;

struct Geodesic {
  Cx center;
  double radius;
};

// geodesic through two disk points: circle orthogonal to the unit circle
Geodesic geodesic_through(Cx z1, Cx z2) {
  // 2 Re(conj(z) c) = |z|^2 + 1 for both points
  double a1 = 2 * z1.real(), b1 = 2 * z1.imag(), c1 = std::norm(z1) + 1;
  double a2 = 2 * z2.real(), b2 = 2 * z2.imag(), c2 = std::norm(z2) + 1;
  double det = a1 * b2 - a2 * b1;
  if (std::abs(det) < 1e-12) {
    // diameter: fake a huge circle far away orthogonal-ish (straight line)
    return {Cx(0, 0), -1};
  }
  double cx = (c1 * b2 - c2 * b1) / det;
  double cy = (a1 * c2 - a2 * c1) / det;
  Cx c(cx, cy);
  return {c, std::sqrt(std::norm(c) - 1)};
}

Cx invert(const Geodesic& g, Cx z) {
  if (g.radius < 0) {  // straight line through the origin: reflect
    Cx dir = Cx(0, 1);  // unused fallback
    return z - 2.0 * dir * std::real(std::conj(dir) * z);
  }
  return g.center + g.radius * g.radius / std::conj(z - g.center);
}

}  // namespace

std::string apartment_svg(int r, int depth, int shade_radius) {
  if (r < 5) throw Error("apartment rendering needs r >= 5");
  // regular right-angled r-gon: circumradius cosh(rho) = sqrt(2) cos(pi/r)
  const double pi = std::acos(-1.0);
  double ch = std::sqrt(2.0) * std::cos(pi / r);
  double rho = std::acosh(ch);
  double rv = std::tanh(rho / 2);

  std::vector<Cx> base;
  for (int k = 0; k < r; ++k) {
    double ang = 2 * pi * k / r + pi / r;
    base.push_back(Cx(rv * std::cos(ang), rv * std::sin(ang)));
  }
  std::vector<Geodesic> sides;
  for (int k = 0; k < r; ++k) sides.push_back(geodesic_through(base[k], base[(k + 1) % r]));

  // chambers of the apartment: canonical words, polygon = word applied to base
  auto ballw = polygon_ball(r, depth);
  std::map<std::size_t, std::vector<Cx>> polys;
  std::map<std::string, std::size_t> bykey;
  auto wkey = [](const PWord& w) {
    std::string s;
    for (int x : w) s += static_cast<char>('a' + x);
    return s;
  };
  for (std::size_t id = 0; id < ballw.size(); ++id) {
    const PWord& w = ballw[id];
    if (w.empty()) {
      polys[id] = base;
    } else {
      // w = s_j w': chamber(w) = sigma_j(chamber(w'))
      PWord rest(w.begin() + 1, w.end());
      auto it = bykey.find(wkey(polygon_reduce(r, rest)));
      if (it == bykey.end()) continue;  // parent should exist (BFS order)
      std::vector<Cx> pts;
      for (Cx z : polys[it->second]) pts.push_back(invert(sides[w[0]], z));
      polys[id] = pts;
    }
    bykey[wkey(w)] = id;
  }

  const double S = 360, C = 380;  // scale and center
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"760\" "
        "viewBox=\"0 0 760 760\">\n";
  os << "<circle cx=\"" << C << "\" cy=\"" << C << "\" r=\"" << S
     << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (std::size_t id = 0; id < ballw.size(); ++id) {
    if (!polys.count(id)) continue;
    const auto& pts = polys[id];
    int len = static_cast<int>(ballw[id].size());
    std::string fill;
    if (len <= shade_radius) {
      int shade = 230 - 40 * len;
      if (shade < 90) shade = 90;
      fill = "rgb(" + std::to_string(shade) + "," + std::to_string(shade) + ",255)";
    } else {
      fill = "none";
    }
    os << "<path d=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      Cx z1 = pts[k], z2 = pts[(k + 1) % pts.size()];
      if (k == 0) os << "M" << C + S * z1.real() << " " << C - S * z1.imag() << " ";
      // sample the geodesic arc between the corners
      Geodesic g = geodesic_through(z1, z2);
      const int segs = 8;
      for (int t = 1; t <= segs; ++t) {
        Cx z;
        if (g.radius < 0) {
          z = z1 + (z2 - z1) * (static_cast<double>(t) / segs);
        } else {
          double a1 = std::arg(z1 - g.center), a2 = std::arg(z2 - g.center);
          double da = a2 - a1;
          while (da > pi) da -= 2 * pi;
          while (da < -pi) da += 2 * pi;
          z = g.center + std::polar(g.radius, a1 + da * t / segs);
        }
        os << "L" << C + S * z.real() << " " << C - S * z.imag() << " ";
      }
    }
    os << "Z\" fill=\"" << fill << "\" stroke=\"#444\" stroke-width=\"0.6\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace twinlab
