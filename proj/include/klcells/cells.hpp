// Brute-force Kazhdan-Lusztig cells on a truncated ball: the left/right/
// two-sided preorders as transitive closures of the one-generator link
// relation, cells as strongly connected components, and the a-function
// estimate from structure-constant degrees.
//
// Everything here is relative to a ball of radius R; partitions are computed
// on a smaller trusted radius R' so that missing links near the boundary do
// not produce false splits.  Truncation-flagged expansions never contribute
// edges; the affected source elements are reported as uncertain.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <klcells/klbasis.hpp>

namespace klcells {

enum class CellKind { Left, Right, TwoSided };

inline std::string cell_kind_name(CellKind k) {
  switch (k) {
    case CellKind::Left: return "left";
    case CellKind::Right: return "right";
    default: return "two-sided";
  }
}

struct LinkGraph {
  // edges[y] = all z with h_{s,y,z} != 0 for some s (z <=_L y for left links)
  std::vector<std::vector<int>> edges;
  std::vector<bool> uncertain;  // y whose link computation hit truncation
};

inline LinkGraph left_link_graph(KLTable& kl) {
  const Ball& b = kl.session().ball();
  LinkGraph g;
  g.edges.resize(b.size());
  g.uncertain.assign(b.size(), false);
  for (int y = 0; y < b.size(); ++y) {
    for (int s = 0; s < kl.session().group().rank(); ++s) {
      CExpansion h = kl.h_left(s, y);
      if (h.truncated) {
        g.uncertain[y] = true;
        continue;
      }
      for (const auto& [z, c] : h.coeffs)
        if (z != y) g.edges[y].push_back(z);
    }
    std::sort(g.edges[y].begin(), g.edges[y].end());
    g.edges[y].erase(std::unique(g.edges[y].begin(), g.edges[y].end()),
                     g.edges[y].end());
  }
  return g;
}

inline LinkGraph right_link_graph(KLTable& kl) {
  const Ball& b = kl.session().ball();
  LinkGraph g;
  g.edges.resize(b.size());
  g.uncertain.assign(b.size(), false);
  for (int y = 0; y < b.size(); ++y) {
    for (int s = 0; s < kl.session().group().rank(); ++s) {
      CExpansion h = kl.h_right(y, s);
      if (h.truncated) {
        g.uncertain[y] = true;
        continue;
      }
      for (const auto& [z, c] : h.coeffs)
        if (z != y) g.edges[y].push_back(z);
    }
    std::sort(g.edges[y].begin(), g.edges[y].end());
    g.edges[y].erase(std::unique(g.edges[y].begin(), g.edges[y].end()),
                     g.edges[y].end());
  }
  return g;
}

struct CellPartition {
  CellKind kind = CellKind::Left;
  int trusted_radius = 0;
  std::vector<int> ground;                  // ball ids with length <= R'
  std::vector<int> block_of;                // ball id -> block index (-1 outside)
  std::vector<std::vector<int>> blocks;     // block -> sorted member ball ids
  std::vector<bool> boundary_uncertain;     // per block
  std::vector<std::vector<bool>> block_leq; // quotient preorder, reflexive
  std::vector<std::int64_t> a_value;        // per block; -1 when not annotated

  int block_count() const { return static_cast<int>(blocks.size()); }

  bool same_block(int x, int y) const {
    return block_of[x] >= 0 && block_of[x] == block_of[y];
  }

  /// Blocks as sets of element key strings, for order-insensitive comparison.
  std::vector<std::vector<std::string>> block_words(const Ball& b) const {
    std::vector<std::vector<std::string>> out;
    for (const auto& blk : blocks) {
      std::vector<std::string> words;
      for (int id : blk) words.push_back(b.elements[id].str());
      std::sort(words.begin(), words.end());
      out.push_back(std::move(words));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

// Tarjan SCC on the subgraph induced by `in_set`; returns block index per
// node (-1 outside), blocks in reverse topological order of discovery.
struct SccResult {
  std::vector<int> comp;
  int count = 0;
};

inline SccResult tarjan_scc(const std::vector<std::vector<int>>& edges,
                            const std::vector<bool>& in_set) {
  int n = static_cast<int>(edges.size());
  SccResult res;
  res.comp.assign(n, -1);
  std::vector<int> idx(n, -1), low(n, 0), stck;
  std::vector<bool> on_stack(n, false);
  int next_index = 0;

  // iterative Tarjan to avoid deep recursion
  struct Frame { int v; std::size_t ei; };
  for (int start = 0; start < n; ++start) {
    if (!in_set[start] || idx[start] >= 0) continue;
    std::vector<Frame> frames{{start, 0}};
    idx[start] = low[start] = next_index++;
    stck.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      auto& [v, ei] = frames.back();
      if (ei < edges[v].size()) {
        int w = edges[v][ei++];
        if (!in_set[w]) continue;
        if (idx[w] < 0) {
          idx[w] = low[w] = next_index++;
          stck.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
      } else {
        if (low[v] == idx[v]) {
          while (true) {
            int w = stck.back();
            stck.pop_back();
            on_stack[w] = false;
            res.comp[w] = res.count;
            if (w == v) break;
          }
          ++res.count;
        }
        int v_done = v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v_done]);
      }
    }
  }
  return res;
}

}  // namespace detail

/// Cells as SCCs of the link graph (union of left and right links for the
/// two-sided kind), restricted to the trusted sub-ball.
inline CellPartition cells_from_links(KLTable& kl, CellKind kind, int trusted_radius) {
  const Ball& b = kl.session().ball();
  LinkGraph g;
  if (kind == CellKind::Left) {
    g = left_link_graph(kl);
  } else if (kind == CellKind::Right) {
    g = right_link_graph(kl);
  } else {
    g = left_link_graph(kl);
    LinkGraph r = right_link_graph(kl);
    for (int y = 0; y < b.size(); ++y) {
      g.edges[y].insert(g.edges[y].end(), r.edges[y].begin(), r.edges[y].end());
      std::sort(g.edges[y].begin(), g.edges[y].end());
      g.edges[y].erase(std::unique(g.edges[y].begin(), g.edges[y].end()),
                       g.edges[y].end());
      if (r.uncertain[y]) g.uncertain[y] = true;
    }
  }

  CellPartition part;
  part.kind = kind;
  part.trusted_radius = trusted_radius;
  std::vector<bool> trusted(b.size(), false);
  for (int i = 0; i < b.size(); ++i)
    if (b.len[i] <= trusted_radius) {
      trusted[i] = true;
      part.ground.push_back(i);
    }

  // SCCs over the whole ball, so that cells whose connecting cycles pass
  // through elements above the trusted radius are not split; the partition
  // is then restricted to the trusted sub-ball.
  std::vector<bool> all(b.size(), true);
  auto scc = detail::tarjan_scc(g.edges, all);

  std::vector<std::vector<int>> raw(scc.count);
  for (int i = 0; i < b.size(); ++i)
    if (trusted[i]) raw[scc.comp[i]].push_back(i);
  std::erase_if(raw, [](const auto& blk) { return blk.empty(); });
  // order blocks by least member id (length-then-ShortLex) for stable output
  std::sort(raw.begin(), raw.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });

  part.blocks = std::move(raw);
  part.block_of.assign(b.size(), -1);
  for (int bidx = 0; bidx < part.block_count(); ++bidx)
    for (int id : part.blocks[bidx]) part.block_of[id] = bidx;

  // map every ball element to the trusted block its component intersects
  std::vector<int> block_of_comp(scc.count, -1);
  for (int i = 0; i < b.size(); ++i)
    if (part.block_of[i] >= 0) block_of_comp[scc.comp[i]] = part.block_of[i];

  part.boundary_uncertain.assign(part.block_count(), false);
  for (int i = 0; i < b.size(); ++i)
    if (g.uncertain[i] && block_of_comp[scc.comp[i]] >= 0)
      part.boundary_uncertain[block_of_comp[scc.comp[i]]] = true;

  // quotient preorder: block_leq[p][q] iff some member of q reaches some
  // member of p (edges point toward <=-smaller elements)
  int nb = part.block_count();
  part.block_leq.assign(nb, std::vector<bool>(nb, false));
  for (int i = 0; i < nb; ++i) part.block_leq[i][i] = true;
  for (int y = 0; y < b.size(); ++y) {
    int by = block_of_comp[scc.comp[y]];
    if (by < 0) continue;
    for (int z : g.edges[y]) {
      int bz = block_of_comp[scc.comp[z]];
      if (bz >= 0) part.block_leq[bz][by] = true;
    }
  }
  for (int k = 0; k < nb; ++k)
    for (int i = 0; i < nb; ++i)
      if (part.block_leq[i][k])
        for (int j = 0; j < nb; ++j)
          if (part.block_leq[k][j]) part.block_leq[i][j] = true;

  part.a_value.assign(nb, -1);
  return part;
}

/// Lower-bound estimate of a(z): max degree of h_{x,y,z} over all pairs with
/// l(x), l(y) <= pair_radius.  Exact when the ball covers the whole group and
/// pair_radius is the group diameter.
inline std::int64_t a_estimate(KLTable& kl, int z, int pair_radius) {
  const Ball& b = kl.session().ball();
  std::int64_t best = 0;
  for (int x = 0; x < b.size() && b.len[x] <= pair_radius; ++x)
    for (int y = 0; y < b.size() && b.len[y] <= pair_radius; ++y) {
      CExpansion h = kl.h_full(x, y);
      if (h.truncated) continue;
      Laurent c = h.coeff(z);
      if (!c.is_zero()) best = std::max<std::int64_t>(best, c.degree());
    }
  return best;
}

/// Annotate each block with max a_estimate over its members.  Each pair
/// product is expanded once and credited to every element it covers, which
/// is much cheaper than calling a_estimate per element.
inline void annotate_a_values(CellPartition& part, KLTable& kl, int pair_radius) {
  const Ball& b = kl.session().ball();
  std::vector<std::int64_t> best(b.size(), 0);
  for (int x = 0; x < b.size() && b.len[x] <= pair_radius; ++x)
    for (int y = 0; y < b.size() && b.len[y] <= pair_radius; ++y) {
      CExpansion h = kl.h_full(x, y);
      if (h.truncated) continue;
      for (const auto& [z, c] : h.coeffs)
        if (!c.is_zero())
          best[z] = std::max<std::int64_t>(best[z], c.degree());
    }
  for (int i = 0; i < part.block_count(); ++i) {
    std::int64_t a = 0;
    for (int id : part.blocks[i]) a = std::max(a, best[id]);
    part.a_value[i] = a;
  }
}

/// Property check: every block is connected under single left-multiplication
/// steps that stay inside the block.
inline bool left_connected(const CellPartition& part, const Ball& b, int rank) {
  for (const auto& blk : part.blocks) {
    if (blk.size() <= 1) continue;
    std::vector<int> seen{blk.front()};
    std::vector<bool> vis(b.size(), false);
    vis[blk.front()] = true;
    for (std::size_t head = 0; head < seen.size(); ++head) {
      int y = seen[head];
      for (int s = 0; s < rank; ++s) {
        int z = b.lmul[y][s];
        if (z >= 0 && !vis[z] && part.block_of[z] >= 0 &&
            part.block_of[z] == part.block_of[y]) {
          vis[z] = true;
          seen.push_back(z);
        }
      }
    }
    if (seen.size() != blk.size()) return false;
  }
  return true;
}

/// Left/right duality: x ~_L y iff x^{-1} ~_R y^{-1}.
inline bool inversion_duality_holds(const CellPartition& left,
                                    const CellPartition& right, const Ball& b) {
  for (int x : left.ground)
    for (int y : left.ground) {
      bool l = left.same_block(x, y);
      bool r = right.same_block(b.inv[x], b.inv[y]);
      if (l != r) return false;
    }
  return true;
}

}  // namespace klcells
