#include "twinlab/tree_roots.hpp"

#include <algorithm>

namespace twinlab {

int tree_epsilon(const TreeRoot& a) {
  const int t = a.type();
  int m = 0;
  if (a.vertex >= 1) {
    for (int v = 1; v < a.vertex; ++v)
      if (((v % 2) + 2) % 2 == t) ++m;
  } else {
    for (int v = a.vertex + 1; v <= 0; ++v)
      if (((v % 2) + 2) % 2 == t) ++m;
  }
  return (m % 2 == 0) ? 1 : -1;
}

TreeRoot tree_reflect(int i, const TreeRoot& a) {
  // s0: x -> -x, s1: x -> 2-x; both flip direction
  if (i != 0 && i != 1) throw Error("tree type must be 0 or 1");
  int v = i == 0 ? -a.vertex : 2 - a.vertex;
  return {v, !a.toward_plus};
}

TreeRoot tree_apply_word(const std::vector<int>& w, const TreeRoot& a) {
  TreeRoot r = a;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = tree_reflect(*it, r);
  return r;
}

bool tree_prenilpotent(const TreeRoot& a, const TreeRoot& b) {
  return a.contains(b) || b.contains(a);
}

std::vector<TreeRoot> tree_root_stream(int i, int j, int count) {
  if ((i != 0 && i != 1) || (j != 0 && j != 1)) throw Error("tree type must be 0 or 1");
  std::vector<TreeRoot> out;
  out.reserve(count);
  for (int m = 0; m < count; ++m) {
    if (i == 0) {
      // P(a_0,0) = {(s0 s1)^m a0} = [-2m,+inf); P(a_0,1) = {(s0 s1)^m s0 a1} = [-1-2m,+inf)
      out.push_back(j == 0 ? TreeRoot{-2 * m, true} : TreeRoot{-1 - 2 * m, true});
    } else {
      // P(a_1,1) = {(s1 s0)^m a1} = (-inf,1+2m]; P(a_1,0) = {(s1 s0)^m s1 a0} = (-inf,2+2m]
      out.push_back(j == 1 ? TreeRoot{1 + 2 * m, false} : TreeRoot{2 + 2 * m, false});
    }
  }
  return out;
}

std::vector<TreeRoot> tree_prenil_roots(int i, int count) {
  std::vector<TreeRoot> out;
  auto s0 = tree_root_stream(i, 0, count), s1 = tree_root_stream(i, 1, count);
  out.insert(out.end(), s0.begin(), s0.end());
  out.insert(out.end(), s1.begin(), s1.end());
  // increasing distance of the wall from E
  std::sort(out.begin(), out.end(), [](const TreeRoot& a, const TreeRoot& b) {
    auto dist = [](const TreeRoot& r) { return r.vertex <= 0 ? -r.vertex : r.vertex - 1; };
    if (dist(a) != dist(b)) return dist(a) < dist(b);
    return a < b;
  });
  out.resize(count);
  return out;
}

std::vector<int> dinf_reduce(std::vector<int> w) {
  std::vector<int> out;
  for (int x : w) {
    if (!out.empty() && out.back() == x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

std::vector<int> dinf_mul(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> w = a;
  w.insert(w.end(), b.begin(), b.end());
  return dinf_reduce(std::move(w));
}

std::vector<int> dinf_inverse(std::vector<int> w) {
  std::reverse(w.begin(), w.end());
  return w;
}

std::string dinf_str(const std::vector<int>& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int x : w) s += "s" + std::to_string(x);
  return s;
}

}  // namespace twinlab
