// The parabolic-induction cell algorithm for rank-2 affine Weyl groups:
// closed-form dihedral cell tables, the partition of the union of proper
// parabolic subgroups with its a-function, Z-factorizations, and the
// four-step tilde-set construction that conjecturally yields the two-sided
// cells as connected components of the a'-level sets.
//
// All sets are represented by their intersection with a working ball; the
// Step-3 intersection tests only see ball elements, so results should be
// validated across two radii (see tilde_stable).
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <klcells/coxeter.hpp>
#include <klcells/weights.hpp>

namespace klcells {

// ---------------------------------------------------------------------------
// Dihedral cell tables.
//
// Words use abstract labels 0, 1 for the two generators with L(0) = a,
// L(1) = b as supplied; the classical 1_k / 2_k families are produced after
// internally swapping roles when a < b (even m), mirroring the table's
// "a >= b without loss of generality" convention.

struct DihedralCellTable {
  struct TwoSidedCell {
    std::int64_t a_value = 0;
    std::vector<std::vector<int>> elements;                // words, label 0/1
    std::vector<std::vector<std::vector<int>>> left_cells; // grouped words
  };
  int m = 2;
  std::int64_t a = 0, b = 0;
  bool swapped = false;   // generator roles exchanged to get L(heavy) >= L(light)
  int radius = -1;        // truncation radius used when m is infinite
  std::vector<TwoSidedCell> cells;
};

namespace detail {

// alternating word of k letters starting with `start`
inline std::vector<int> alt_word(int start, int k) {
  std::vector<int> w(k);
  for (int i = 0; i < k; ++i) w[i] = (start + i) % 2;
  return w;
}

}  // namespace detail

/// Exact transcription of the dihedral cell table.  For m = kInfinity the
/// infinite families are truncated to words of length <= R.
inline DihedralCellTable dihedral_cells(int m, std::int64_t a, std::int64_t b,
                                        int R = -1) {
  if (a < 1 || b < 1)
    throw std::invalid_argument("dihedral_cells: weights must be positive");
  if (m != kInfinity && m < 2)
    throw std::invalid_argument("dihedral_cells: m must be >= 2 or infinite");
  if (m == kInfinity && R < 0)
    throw std::invalid_argument("dihedral_cells: infinite group needs a radius");
  if (m != kInfinity && m >= 3 && m % 2 == 1 && a != b)
    throw std::invalid_argument(
        "dihedral_cells: odd m has conjugate generators; weights must be equal");

  DihedralCellTable t;
  t.m = m;
  t.a = a;
  t.b = b;
  t.radius = R;
  t.swapped = a < b;
  // heavy generator plays the role of s1 in the table
  int hvy = t.swapped ? 1 : 0, lgt = 1 - hvy;
  std::int64_t A = std::max(a, b), B = std::min(a, b);
  auto one = [&](int k) { return detail::alt_word(hvy, k); };  // 1_k
  auto two = [&](int k) { return detail::alt_word(lgt, k); };  // 2_k

  using Cell = DihedralCellTable::TwoSidedCell;
  auto singleton = [&](std::vector<int> w, std::int64_t av) {
    Cell c;
    c.a_value = av;
    c.elements = {w};
    c.left_cells = {{w}};
    return c;
  };

  if (m == 2) {
    // four singleton cells, a >= b or not: 0, B, A, A+B on e, light, heavy, w0
    t.cells.push_back(singleton({}, 0));
    t.cells.push_back(singleton(two(1), B));
    t.cells.push_back(singleton(one(1), A));
    t.cells.push_back(singleton(one(2), A + B));
    return t;
  }

  t.cells.push_back(singleton({}, 0));

  if (m == kInfinity) {
    if (A == B) {
      Cell mid;
      mid.a_value = A;
      std::vector<std::vector<int>> lc1, lc2;  // {1_1,2_2,...}, {2_1,1_2,...}
      for (int k = 1; k <= R; ++k) {
        lc1.push_back(k % 2 ? one(k) : two(k));
        lc2.push_back(k % 2 ? two(k) : one(k));
      }
      mid.left_cells = {lc1, lc2};
      for (const auto& g : {lc1, lc2})
        mid.elements.insert(mid.elements.end(), g.begin(), g.end());
      t.cells.push_back(mid);
    } else {
      t.cells.push_back(singleton(two(1), B));
      Cell mid;
      mid.a_value = A;
      std::vector<std::vector<int>> lc1, lc2;  // {1_1,2_2,...}, {1_2,2_3,...}
      for (int k = 1; k <= R; ++k) {
        if (k % 2)
          lc1.push_back(one(k));
        else
          lc2.push_back(one(k));
      }
      for (int k = 2; k <= R; ++k) {
        if (k % 2)
          lc2.push_back(two(k));
        else
          lc1.push_back(two(k));
      }
      mid.left_cells = {lc1, lc2};
      for (const auto& g : {lc1, lc2})
        mid.elements.insert(mid.elements.end(), g.begin(), g.end());
      t.cells.push_back(mid);
    }
    return t;
  }

  if (A == B) {
    Cell mid;  // W - {e, w0}
    mid.a_value = A;
    std::vector<std::vector<int>> lc1, lc2;
    for (int k = 1; k <= m - 1; ++k) {
      lc1.push_back(k % 2 ? one(k) : two(k));
      lc2.push_back(k % 2 ? two(k) : one(k));
    }
    mid.left_cells = {lc1, lc2};
    for (const auto& g : {lc1, lc2})
      mid.elements.insert(mid.elements.end(), g.begin(), g.end());
    t.cells.push_back(mid);
    t.cells.push_back(singleton(one(m), static_cast<std::int64_t>(m) * A));
    return t;
  }

  // m even >= 4, A > B
  t.cells.push_back(singleton(two(1), B));
  Cell mid;  // W - {e, 2_1, 1_{m-1}, 1_m}
  mid.a_value = A;
  std::vector<std::vector<int>> lc1, lc2;  // {1_2,...,2_{m-1}}, {1_1,...,2_{m-2}}
  for (int k = 1; k <= m - 2; ++k) {
    if (k % 2 == 0)
      lc1.push_back(one(k));
    else if (k >= 1 && k <= m - 3)
      lc2.push_back(one(k));
  }
  for (int k = 2; k <= m - 1; ++k) {
    if (k % 2)
      lc1.push_back(two(k));
    else
      lc2.push_back(two(k));
  }
  mid.left_cells = {lc1, lc2};
  for (const auto& g : {lc1, lc2})
    mid.elements.insert(mid.elements.end(), g.begin(), g.end());
  t.cells.push_back(mid);
  t.cells.push_back(singleton(one(m - 1), (m / 2) * (A - B) + B));
  t.cells.push_back(singleton(one(m), (m / 2) * (A + B)));
  return t;
}

// ---------------------------------------------------------------------------
// Step 1: the set C = union of proper parabolic subgroups, its two-sided
// cells (glued across parabolic intersections), and the a_C-function.

struct FrakCPartition {
  std::vector<int> members;                 // ball ids of elements of C
  std::vector<std::vector<int>> blocks;     // P_{LR,C}: sorted ball ids
  std::vector<std::int64_t> a_value;        // per block
  std::vector<int> block_of;                // ball id -> block index, -1 outside
};

inline FrakCPartition frak_c_partition(const CoxeterGroup& G,
                                       const WeightFunction& L, const Ball& ball) {
  if (!L.positive())
    throw std::invalid_argument("frak_c_partition: weights must be positive");

  std::vector<int> root(ball.size());
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  auto unite = [&](int x, int y) { root[find(x)] = find(y); };

  std::vector<std::int64_t> a_of(ball.size(), -1);
  std::vector<bool> in_c(ball.size(), false);
  auto set_a = [&](int id, std::int64_t a) {
    if (a_of[id] >= 0 && a_of[id] != a)
      throw std::logic_error("frak_c_partition: inconsistent a-value across parabolics");
    a_of[id] = a;
    in_c[id] = true;
  };

  auto require_id = [&](const Element& g) {
    int id = ball.id_of(g);
    if (id < 0)
      throw std::invalid_argument(
          "frak_c_partition: ball too small for parabolic element " + g.str());
    return id;
  };

  for (const auto& I : G.finite_standard_parabolics()) {
    if (static_cast<int>(I.size()) >= G.rank()) continue;  // proper subsets only
    if (I.empty()) {
      set_a(0, 0);
    } else if (I.size() == 1) {
      set_a(0, 0);
      set_a(require_id(G.generator(I[0])), L.of_generator(I[0]));
    } else {
      DihedralCellTable t = dihedral_cells(G.coxeter_m(I[0], I[1]),
                                           L.of_generator(I[0]), L.of_generator(I[1]));
      for (const auto& cell : t.cells) {
        int first = -1;
        for (const auto& w : cell.elements) {
          std::vector<int> mapped(w.size());
          for (std::size_t i = 0; i < w.size(); ++i) mapped[i] = I[w[i]];
          int id = require_id(G.from_word(mapped));
          set_a(id, cell.a_value);
          if (first < 0)
            first = id;
          else
            unite(first, id);
        }
      }
    }
  }

  FrakCPartition part;
  part.block_of.assign(ball.size(), -1);
  std::vector<int> block_of_root(ball.size(), -1);
  for (int id = 0; id < ball.size(); ++id) {
    if (!in_c[id]) continue;
    part.members.push_back(id);
    int r = find(id);
    if (block_of_root[r] < 0) {
      block_of_root[r] = static_cast<int>(part.blocks.size());
      part.blocks.emplace_back();
      part.a_value.push_back(a_of[id]);
    }
    int bidx = block_of_root[r];
    if (part.a_value[bidx] != a_of[id])
      throw std::logic_error("frak_c_partition: a-value not constant on a block");
    part.blocks[bidx].push_back(id);
    part.block_of[id] = bidx;
  }
  return part;
}

// ---------------------------------------------------------------------------
// D(u) = { w : w = x u y with additive lengths }, i.e. the closure of u under
// length-increasing one-generator multiplication on either side; truncated to
// the ball.

inline std::vector<bool> d_closure(const Ball& ball, int u) {
  std::vector<bool> in(ball.size(), false);
  std::vector<int> queue{u};
  in[u] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int w = queue[head];
    for (int s = 0; s < 3; ++s) {
      for (int z : {ball.lmul[w][s], ball.rmul[w][s]}) {
        if (z >= 0 && ball.len[z] > ball.len[w] && !in[z]) {
          in[z] = true;
          queue.push_back(z);
        }
      }
    }
  }
  return in;
}

/// Z(w): all u in C such that w = xuy with additive lengths.
inline std::vector<int> Z_factorizations(const Ball& ball, const FrakCPartition& frak,
                                         int w) {
  std::vector<int> out;
  for (int u : frak.members)
    if (d_closure(ball, u)[w]) out.push_back(u);
  return out;
}

/// a'_C(w) = max a_C(u) over u in Z(w).
inline std::int64_t a_prime(const Ball& ball, const FrakCPartition& frak, int w) {
  std::int64_t best = -1;
  for (int u : Z_factorizations(ball, frak, w))
    best = std::max(best, frak.a_value[frak.block_of[u]]);
  if (best < 0) throw std::logic_error("a_prime: empty Z(w)");
  return best;
}

// ---------------------------------------------------------------------------
// Steps 2-4.

struct TildePartition {
  Ball ball;
  FrakCPartition frak;
  std::vector<int> b_order;                  // frak block indices, Step-2 numbering
  std::vector<std::vector<bool>> b_tilde;    // per Step-2 position: ball mask
  std::vector<std::vector<int>> c_classes;   // per class: frak block indices
  std::vector<std::int64_t> c_a;             // a_C per class, weakly decreasing
  std::vector<std::vector<int>> c_tilde;     // per class: sorted ball ids
  std::vector<int> c_of;                     // ball id -> class index

  int class_count() const { return static_cast<int>(c_classes.size()); }
  bool same_class(int x, int y) const { return c_of[x] == c_of[y]; }
};

/// permute_seed != 0 reshuffles blocks with equal a_C inside the Step-2 and
/// Step-4 numberings; the final partition must not depend on it (only the
/// intermediate tilde sets may differ).
inline TildePartition tilde_partition(const CoxeterGroup& G, const WeightFunction& L,
                                      int R, unsigned permute_seed = 0) {
  TildePartition tp;
  tp.ball = G.ball(R);
  const Ball& ball = tp.ball;
  tp.frak = frak_c_partition(G, L, ball);
  const FrakCPartition& frak = tp.frak;
  int nb = static_cast<int>(frak.blocks.size());

  // Step 2 numbering: a_C weakly decreasing, ties by least member id
  // (= minimal length, then ShortLex canonical word)
  tp.b_order.resize(nb);
  std::iota(tp.b_order.begin(), tp.b_order.end(), 0);
  std::sort(tp.b_order.begin(), tp.b_order.end(), [&](int p, int q) {
    if (frak.a_value[p] != frak.a_value[q]) return frak.a_value[p] > frak.a_value[q];
    return frak.blocks[p].front() < frak.blocks[q].front();
  });
  auto shuffle_equal_a_runs = [&](auto& seq, auto a_of_entry) {
    if (permute_seed == 0) return;
    std::mt19937 rng(permute_seed);
    std::size_t i = 0;
    while (i < seq.size()) {
      std::size_t j = i + 1;
      while (j < seq.size() && a_of_entry(seq[j]) == a_of_entry(seq[i])) ++j;
      std::shuffle(seq.begin() + i, seq.begin() + j, rng);
      i = j;
    }
  };
  shuffle_equal_a_runs(tp.b_order, [&](int p) { return frak.a_value[p]; });

  tp.b_tilde.assign(nb, std::vector<bool>(ball.size(), false));
  for (int k = 0; k < nb; ++k) {
    int bk = tp.b_order[k];
    std::vector<bool>& mask = tp.b_tilde[k];
    for (int u : frak.blocks[bk]) {
      std::vector<bool> d = d_closure(ball, u);
      for (int i = 0; i < ball.size(); ++i)
        if (d[i]) mask[i] = true;
    }
    for (int l = 0; l < k; ++l) {
      if (frak.a_value[tp.b_order[l]] <= frak.a_value[bk]) continue;
      for (int i = 0; i < ball.size(); ++i)
        if (tp.b_tilde[l][i]) mask[i] = false;
    }
  }

  // Step 3: merge Step-2 blocks whose tilde sets intersect; transitive closure
  std::vector<int> croot(nb);
  std::iota(croot.begin(), croot.end(), 0);
  auto cfind = [&](int x) {
    while (croot[x] != x) x = croot[x] = croot[croot[x]];
    return x;
  };
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j) {
      bool meet = false;
      for (int w = 0; w < ball.size() && !meet; ++w)
        meet = tp.b_tilde[i][w] && tp.b_tilde[j][w];
      if (meet) croot[cfind(i)] = cfind(j);
    }

  std::vector<std::vector<int>> classes;  // lists of Step-2 positions
  {
    std::vector<int> class_of_root(nb, -1);
    for (int k = 0; k < nb; ++k) {
      int r = cfind(k);
      if (class_of_root[r] < 0) {
        class_of_root[r] = static_cast<int>(classes.size());
        classes.emplace_back();
      }
      classes[class_of_root[r]].push_back(k);
    }
  }
  // a_C must be constant on classes
  for (const auto& cls : classes)
    for (int k : cls)
      if (frak.a_value[tp.b_order[k]] != frak.a_value[tp.b_order[cls.front()]])
        throw std::logic_error("tilde_partition: a_C not constant on a ~_C class");

  // Step 4 numbering of classes, same tie-break as Step 2
  std::sort(classes.begin(), classes.end(), [&](const auto& p, const auto& q) {
    std::int64_t ap = frak.a_value[tp.b_order[p.front()]];
    std::int64_t aq = frak.a_value[tp.b_order[q.front()]];
    if (ap != aq) return ap > aq;
    int mp = ball.size(), mq = ball.size();
    for (int k : p) mp = std::min(mp, frak.blocks[tp.b_order[k]].front());
    for (int k : q) mq = std::min(mq, frak.blocks[tp.b_order[k]].front());
    return mp < mq;
  });
  shuffle_equal_a_runs(classes, [&](const std::vector<int>& cls) {
    return frak.a_value[tp.b_order[cls.front()]];
  });

  int nc = static_cast<int>(classes.size());
  tp.c_classes.resize(nc);
  tp.c_a.resize(nc);
  std::vector<std::vector<bool>> c_mask(nc, std::vector<bool>(ball.size(), false));
  for (int k = 0; k < nc; ++k) {
    for (int pos : classes[k]) tp.c_classes[k].push_back(tp.b_order[pos]);
    tp.c_a[k] = frak.a_value[tp.c_classes[k].front()];
    std::vector<bool>& mask = c_mask[k];
    for (int bidx : tp.c_classes[k])
      for (int u : frak.blocks[bidx]) {
        std::vector<bool> d = d_closure(ball, u);
        for (int i = 0; i < ball.size(); ++i)
          if (d[i]) mask[i] = true;
      }
    for (int l = 0; l < k; ++l) {
      if (tp.c_a[l] <= tp.c_a[k]) continue;
      for (int i = 0; i < ball.size(); ++i)
        if (c_mask[l][i]) mask[i] = false;
    }
  }

  tp.c_of.assign(ball.size(), -1);
  tp.c_tilde.assign(nc, {});
  for (int i = 0; i < ball.size(); ++i)
    for (int k = 0; k < nc; ++k)
      if (c_mask[k][i]) {
        if (tp.c_of[i] >= 0)
          throw std::logic_error("tilde_partition: tilde sets of equal a overlap");
        tp.c_of[i] = k;
        tp.c_tilde[k].push_back(i);
      }
  for (int i = 0; i < ball.size(); ++i)
    if (tp.c_of[i] < 0)
      throw std::logic_error("tilde_partition: element not covered by any tilde set");
  return tp;
}

/// Compare the tilde partition at radius R against radius R+2, restricted to
/// the smaller ball.  Returns false (instability) if any pair changes class.
inline bool tilde_stable(const CoxeterGroup& G, const WeightFunction& L, int R) {
  TildePartition small = tilde_partition(G, L, R);
  TildePartition big = tilde_partition(G, L, R + 2);
  for (int x = 0; x < small.ball.size(); ++x) {
    int bx = big.ball.id_of(small.ball.elements[x]);
    for (int y = x + 1; y < small.ball.size(); ++y) {
      int by = big.ball.id_of(small.ball.elements[y]);
      if (small.same_class(x, y) != big.same_class(bx, by)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lowest two-sided cell.

struct LowestCell {
  std::int64_t nu = 0;                 // max_I L(w_I)
  std::vector<Element> c0;             // the w_I attaining nu
  std::vector<bool> members;           // ball mask of the tilde-c_0 predicate
};

inline LowestCell lowest_cell(const CoxeterGroup& G, const WeightFunction& L,
                              const Ball& ball) {
  LowestCell out;
  out.members.assign(ball.size(), false);
  std::vector<Element> longest;
  for (const auto& I : G.finite_standard_parabolics()) {
    if (static_cast<int>(I.size()) >= G.rank() || I.empty()) continue;
    Element wI = G.longest_element(I);
    std::int64_t lw = L.of_element(wI);
    if (lw > out.nu) {
      out.nu = lw;
      longest.clear();
    }
    if (lw == out.nu) longest.push_back(wI);
  }
  out.c0 = longest;
  for (const Element& wI : out.c0) {
    int id = ball.id_of(wI);
    if (id < 0)
      throw std::invalid_argument("lowest_cell: ball too small for " + wI.str());
    std::vector<bool> d = d_closure(ball, id);
    for (int i = 0; i < ball.size(); ++i)
      if (d[i]) out.members[i] = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Connected components of a block inside the ball.

enum class Adjacency { Connected, LeftConnected, RightConnected };

inline std::vector<std::vector<int>> split_components(const Ball& ball,
                                                      const std::vector<int>& block,
                                                      Adjacency mode) {
  std::vector<int> in(ball.size(), 0);
  for (int id : block) in[id] = 1;
  std::vector<std::vector<int>> comps;
  std::vector<bool> vis(ball.size(), false);
  for (int start : block) {
    if (vis[start]) continue;
    std::vector<int> comp{start};
    vis[start] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      int w = comp[head];
      for (int s = 0; s < 3; ++s) {
        // left-connected: x ~ y when x y^{-1} in S, i.e. steps w -> s w
        if (mode != Adjacency::RightConnected) {
          int z = ball.lmul[w][s];
          if (z >= 0 && in[z] && !vis[z]) {
            vis[z] = true;
            comp.push_back(z);
          }
        }
        if (mode != Adjacency::LeftConnected) {
          int z = ball.rmul[w][s];
          if (z >= 0 && in[z] && !vis[z]) {
            vis[z] = true;
            comp.push_back(z);
          }
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

/// The unique minimal-length element of a component; a tie aborts with a
/// diagnostic since downstream constructions presume uniqueness.
inline int min_length_element(const Ball& ball, const std::vector<int>& comp) {
  int best = comp.front();
  int ties = 1;
  for (std::size_t i = 1; i < comp.size(); ++i) {
    if (ball.len[comp[i]] < ball.len[best]) {
      best = comp[i];
      ties = 1;
    } else if (ball.len[comp[i]] == ball.len[best]) {
      ++ties;
    }
  }
  if (ties != 1)
    throw std::runtime_error(
        "minimal-length element of a left-connected component is not unique near " +
        ball.elements[best].str());
  return best;
}

}  // namespace klcells
