#ifndef TWINLAB_TREE_ROOTS_HPP
#define TWINLAB_TREE_ROOTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "twinlab/error.hpp"

namespace twinlab {

// Roots of the infinite dihedral Coxeter complex: the tiling of R by unit
// segments with vertices at the integers.  The base chamber is E = [0,1];
// s0 reflects about 0, s1 about 1.  A root is the half-line on one side
// of an integer vertex.
struct TreeRoot {
  int vertex = 0;
  bool toward_plus = true;  // half-line [vertex, +inf) if true, (-inf, vertex] if false

  bool operator==(const TreeRoot& o) const {
    return vertex == o.vertex && toward_plus == o.toward_plus;
  }
  bool operator!=(const TreeRoot& o) const { return !(*this == o); }
  bool operator<(const TreeRoot& o) const {
    if (vertex != o.vertex) return vertex < o.vertex;
    return toward_plus < o.toward_plus;
  }

  // type iota(a): parity of the boundary vertex
  int type() const { return ((vertex % 2) + 2) % 2; }
  // positive = contains E
  bool is_positive() const { return toward_plus ? vertex <= 0 : vertex >= 1; }
  TreeRoot opposite() const { return {vertex, !toward_plus}; }
  // chamber [n, n+1] lies in the half-line?
  bool contains_chamber(int n) const { return toward_plus ? n >= vertex : n + 1 <= vertex; }
  bool contains(const TreeRoot& b) const {
    if (toward_plus != b.toward_plus) return false;
    return toward_plus ? vertex <= b.vertex : vertex >= b.vertex;
  }
  std::string str() const {
    return toward_plus ? "[" + std::to_string(vertex) + ",+inf)"
                       : "(-inf," + std::to_string(vertex) + "]";
  }
};

// sign epsilon_a = (-1)^m, m = number of vertices of type iota(a) strictly
// between 1/2 and the boundary vertex
int tree_epsilon(const TreeRoot& a);

// simple roots a_0 = [0,+inf), a_1 = (-inf,1]
inline TreeRoot tree_simple_root(int i) {
  if (i == 0) return {0, true};
  if (i == 1) return {1, false};
  throw Error("tree type must be 0 or 1");
}

// reflection s_i as an isometry of the tiling, applied to a root
TreeRoot tree_reflect(int i, const TreeRoot& a);
// w . a for a reduced (or any) word over {0,1}, leftmost letter outermost
TreeRoot tree_apply_word(const std::vector<int>& w, const TreeRoot& a);

// prenilpotent iff one half-line contains the other
bool tree_prenilpotent(const TreeRoot& a, const TreeRoot& b);

// P(a_i, j): positive roots of type j containing a_i, in increasing
// distance from E; first `count` of them.
std::vector<TreeRoot> tree_root_stream(int i, int j, int count);
// P(a_i) = P(a_i,0) u P(a_i,1), merged by distance from E
std::vector<TreeRoot> tree_prenil_roots(int i, int count);

// D-infinity words over {0,1}; reduced form just cancels adjacent equal letters
std::vector<int> dinf_reduce(std::vector<int> w);
std::vector<int> dinf_mul(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> dinf_inverse(std::vector<int> w);
std::string dinf_str(const std::vector<int>& w);

}  // namespace twinlab

#endif
