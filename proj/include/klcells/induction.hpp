#pragma once

// Generalized-induction checker.  From a computed cell partition it builds
// the datum (U, {X_u}) — one minimal-length element u per left-connected
// component and X_u = { x : x u in the component } — and verifies the
// conditions I1-I5, the induced preorder on U with its Hasse diagram, the
// left-ideal conclusion and the pairwise inverse-intersection criterion for
// two-sided cells.
//
// Every verdict is three-way: verified, violated (with witness) or
// inconclusive (support escaped the working ball).  Truncation is never
// reported as a violation.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "klcells/cellalgo.hpp"
#include "klcells/coxeter.hpp"
#include "klcells/hecke.hpp"
#include "klcells/klbasis.hpp"

namespace klcells {

struct InductionDatum {
  int radius = 0;
  Ball ball;
  // comps[i][j]: sorted ids of the j-th left-connected component of the i-th
  // two-sided class (classes ordered by decreasing a-value).
  std::vector<std::vector<std::vector<int>>> comps;

  struct UElem {
    int level = 0;  // two-sided class index i
    int comp = 0;   // component index j within the class
    int id = -1;    // ball id of the minimal-length element
  };
  std::vector<UElem> U;                 // flattened, ordered by (level, comp)
  std::vector<std::vector<int>> X_ids;  // per U index: ball ids of X_u, sorted
  std::vector<int> owner_of;            // ball id w -> U index with w in comp
  std::vector<int> x_of;                // ball id w -> id of w * u^{-1}, or -1
};

inline InductionDatum induction_datum(const CoxeterGroup& group, const WeightFunction& L,
                                      int radius) {
  TildePartition tp = tilde_partition(group, L, radius);
  InductionDatum d;
  d.radius = radius;
  d.ball = tp.ball;
  std::vector<std::vector<int>> classes(tp.class_count());
  for (int i = 0; i < d.ball.size(); ++i) classes[tp.c_of[i]].push_back(i);
  d.owner_of.assign(d.ball.size(), -1);
  d.x_of.assign(d.ball.size(), -1);
  for (int i = 0; i < tp.class_count(); ++i) {
    d.comps.push_back(split_components(d.ball, classes[i], Adjacency::LeftConnected));
    for (std::size_t j = 0; j < d.comps.back().size(); ++j) {
      const auto& comp = d.comps.back()[j];
      InductionDatum::UElem u;
      u.level = i;
      u.comp = static_cast<int>(j);
      u.id = min_length_element(d.ball, comp);
      const Element u_inv = group.inverse(d.ball.elements[u.id]);
      std::vector<int> xs;
      for (int w : comp) {
        d.owner_of[w] = static_cast<int>(d.U.size());
        int x = d.ball.id_of(group.multiply(d.ball.elements[w], u_inv));
        d.x_of[w] = x;
        if (x >= 0) xs.push_back(x);
      }
      std::sort(xs.begin(), xs.end());
      d.U.push_back(u);
      d.X_ids.push_back(std::move(xs));
    }
  }
  return d;
}

inline std::string u_name(const InductionDatum& d, int u_index) {
  const auto& u = d.U.at(static_cast<std::size_t>(u_index));
  return "u_" + std::to_string(u.level) + "^" + std::to_string(u.comp + 1);
}

// ---------------------------------------------------------------------------
// Conditions I1-I3 on the materialized datum.

struct ConditionReport {
  bool i1 = true, i2 = true, i3 = true;
  std::string witness;  // first failure, human-readable

  bool all() const { return i1 && i2 && i3; }
};

inline ConditionReport check_I1_I3(const CoxeterGroup& group, const InductionDatum& d) {
  ConditionReport rep;
  std::map<int, int> seen;  // id of x*u -> U index
  for (std::size_t k = 0; k < d.U.size(); ++k) {
    const Element& u = d.ball.elements[d.U[k].id];
    bool has_e = false;
    for (int x : d.X_ids[k]) {
      if (x == 0) has_e = true;
      const Element& xe = d.ball.elements[x];
      const Element xu = group.multiply(xe, u);
      if (xu.length() != xe.length() + u.length() && rep.i2) {
        rep.i2 = false;
        rep.witness = "I2: l(xu) < l(x)+l(u) for x=" + xe.str() + ", u=" + u_name(d, k);
      }
      int id = d.ball.id_of(xu);
      if (id >= 0) {
        auto [it, fresh] = seen.emplace(id, static_cast<int>(k));
        if (!fresh && it->second != static_cast<int>(k) && rep.i3) {
          rep.i3 = false;
          rep.witness = "I3: " + xu.str() + " lies in both X_u u for u=" +
                        u_name(d, it->second) + " and u=" + u_name(d, k);
        }
      }
    }
    if (!has_e && rep.i1) {
      rep.i1 = false;
      rep.witness = "I1: e not in X_u for u=" + u_name(d, k);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Expansions in the basis B = { T_x C_u }.

enum class CheckStatus { Verified, Violated, Inconclusive };

inline const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Verified: return "verified";
    case CheckStatus::Violated: return "violated";
    default: return "inconclusive";
  }
}

struct BTerm {
  int u_index = -1;
  int x_id = -1;
  Laurent coeff;
};

struct BExpansion {
  CheckStatus status = CheckStatus::Verified;  // Verified = expansion exists
  std::vector<BTerm> terms;
  std::string witness;
};

class InductionChecker {
 public:
  InductionChecker(KLTable& kl, InductionDatum datum)
      : kl_(kl), H_(kl.session()), d_(std::move(datum)) {
    if (H_.ball().size() != d_.ball.size())
      throw std::invalid_argument("induction: session ball does not match datum ball");
  }

  const InductionDatum& datum() const { return d_; }

  /// T_x C_u, memoized.  Asserts the leading term is T_{xu} with coefficient 1.
  const HeckeElt& TxCu(int u_index, int x_id) {
    auto key = std::make_pair(u_index, x_id);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    HeckeElt prod = H_.mul(H_.T(x_id), kl_.C(d_.U[u_index].id));
    return memo_.emplace(key, std::move(prod)).first->second;
  }

  /// Greedy expansion of h over B by leading-term subtraction.
  BExpansion expand_in_B(HeckeElt h) {
    BExpansion out;
    bool truncated = h.truncated;
    while (!h.is_zero()) {
      const int w = h.leading_id();
      const int u = d_.owner_of[w];
      const int x = d_.x_of[w];
      if (u < 0 || x < 0) {
        out.status = truncated ? CheckStatus::Inconclusive : CheckStatus::Violated;
        out.witness = "leading term " + d_.ball.elements[w].str() +
                      " is not of the form xu with x in X_u";
        return out;
      }
      const HeckeElt& b = TxCu(u, x);
      truncated = truncated || b.truncated;
      if (!(b.coeff(w) == Laurent::one()) || b.leading_id() != w) {
        out.status = CheckStatus::Violated;
        out.witness = "T_x C_u for x=" + d_.ball.elements[x].str() + ", u=" + u_name(d_, u) +
                      " does not lead with coefficient 1 at " + d_.ball.elements[w].str();
        return out;
      }
      const Laurent c = h.coeff(w);
      h -= b.scaled(c);
      out.terms.push_back({u, x, c});
    }
    if (truncated) out.status = CheckStatus::Inconclusive;
    return out;
  }

  /// Expansion of T_y C_v; inconclusive when the product escapes the ball.
  BExpansion expand_TyCv(int y_id, int v_index) {
    if (d_.ball.len[y_id] + d_.ball.len[d_.U[v_index].id] > d_.radius) {
      BExpansion out;
      out.status = CheckStatus::Inconclusive;
      out.witness = "l(y)+l(v) exceeds the ball radius";
      return out;
    }
    return expand_in_B(H_.mul(H_.T(y_id), kl_.C(d_.U[v_index].id)));
  }

 private:
  KLTable& kl_;
  HeckeSession& H_;
  InductionDatum d_;
  std::map<std::pair<int, int>, HeckeElt> memo_;
};

// ---------------------------------------------------------------------------
// The preorder on U and its Hasse diagram.

struct UPreorder {
  std::vector<std::vector<bool>> leq;          // leq[u][v]: u comes below v
  std::vector<std::pair<int, int>> hasse;      // (lower, upper) cover pairs
  bool dag = true;                             // no distinct u ~ v cycles
  bool inconclusive = false;                   // some expansion was truncated

  bool related(int u, int v) const { return leq[u][v]; }
};

/// Occurrence relation computed over all y with l(y)+l(v) inside the ball,
/// then closed reflexively and transitively.
inline UPreorder preorder_on_U(InductionChecker& chk) {
  const InductionDatum& d = chk.datum();
  const int n = static_cast<int>(d.U.size());
  UPreorder pre;
  pre.leq.assign(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v) {
    pre.leq[v][v] = true;
    const int lv = d.ball.len[d.U[v].id];
    for (int y = 0; y < d.ball.size(); ++y) {
      if (d.ball.len[y] + lv > d.radius) break;  // ids are length-sorted
      BExpansion e = chk.expand_TyCv(y, v);
      if (e.status == CheckStatus::Inconclusive) {
        pre.inconclusive = true;
        continue;
      }
      for (const BTerm& t : e.terms) pre.leq[t.u_index][v] = true;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (pre.leq[i][k])
        for (int j = 0; j < n; ++j)
          if (pre.leq[k][j]) pre.leq[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && pre.leq[i][j] && pre.leq[j][i]) pre.dag = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !pre.leq[i][j] || pre.leq[j][i]) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (k != i && k != j && pre.leq[i][k] && pre.leq[k][j] && !pre.leq[k][i] &&
            !pre.leq[j][k])
          cover = false;
      if (cover) pre.hasse.emplace_back(i, j);
    }
  std::sort(pre.hasse.begin(), pre.hasse.end());
  return pre;
}

/// Property (+): an element strictly below u_i^j in the preorder lies in a
/// strictly smaller level (two-sided classes ordered by decreasing a-value).
inline bool preorder_respects_levels(const InductionDatum& d, const UPreorder& pre) {
  const int n = static_cast<int>(d.U.size());
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && pre.leq[u][v] && d.U[u].level >= d.U[v].level) return false;
  return true;
}


// ---------------------------------------------------------------------------
// Condition I5, with occurring lower terms.

struct I5Single {
  int y_id = -1, v_index = -1;
  CheckStatus status = CheckStatus::Verified;
  std::vector<BTerm> lower_terms;  // (u, x, nonnegative part of the coefficient)
  std::string witness;
};

struct I5Report {
  int verified = 0, violated = 0, inconclusive = 0;
  std::vector<I5Single> details;  // violations and inconclusive cases, plus
                                  // verified cases with nonempty corrections
};

inline I5Single check_I5_single(const CoxeterGroup& group, InductionChecker& chk,
                                KLTable& kl, const UPreorder& pre, int y_id, int v_index) {
  const InductionDatum& d = chk.datum();
  I5Single out;
  out.y_id = y_id;
  out.v_index = v_index;
  const int v_id = d.U[v_index].id;
  if (d.ball.len[y_id] + d.ball.len[v_id] > d.radius) {
    out.status = CheckStatus::Inconclusive;
    out.witness = "l(y)+l(v) exceeds the ball radius";
    return out;
  }
  HeckeSession& H = kl.session();
  const Element yv_elt = group.multiply(d.ball.elements[y_id], d.ball.elements[v_id]);
  const int yv = d.ball.id_of(yv_elt);
  if (yv < 0) {
    out.status = CheckStatus::Inconclusive;
    out.witness = "yv outside the ball";
    return out;
  }
  HeckeElt r = H.mul(H.T(y_id), kl.C(v_id)) - H.T(yv);
  bool truncated = r.truncated;
  // Clear non-negative parts from the longest terms down; each cleared term
  // must be a legitimate lower term x u with xu strictly below yv.
  while (true) {
    int w = -1;
    for (auto it = r.coeffs.rbegin(); it != r.coeffs.rend(); ++it)
      if (!it->second.in_strictly_negative()) {
        w = it->first;
        break;
      }
    if (w < 0) break;
    const int u = d.owner_of[w];
    const int x = d.x_of[w];
    if (u < 0 || x < 0) {
      out.status = truncated ? CheckStatus::Inconclusive : CheckStatus::Violated;
      out.witness = "offending term " + d.ball.elements[w].str() + " has no B-factorization";
      return out;
    }
    const bool below = pre.related(u, v_index) &&
                       group.bruhat_leq(d.ball.elements[w], yv_elt) && w != yv;
    if (!below) {
      out.status = CheckStatus::Violated;
      out.witness = "term " + d.ball.elements[w].str() + " = x*" + u_name(d, u) +
                    " is not strictly below yv in the box order";
      return out;
    }
    const Laurent a = r.coeff(w).nonneg_part();
    const HeckeElt& b = chk.TxCu(u, x);
    truncated = truncated || b.truncated;
    r -= b.scaled(a);
    out.lower_terms.push_back({u, x, a});
  }
  if (truncated) {
    out.status = CheckStatus::Inconclusive;
    out.witness = "support escaped the ball";
  }
  return out;
}

/// Check I5 for every v in U and every x in X_v that fits the ball.
inline I5Report check_I5(const CoxeterGroup& group, InductionChecker& chk, KLTable& kl,
                         const UPreorder& pre) {
  const InductionDatum& d = chk.datum();
  I5Report rep;
  for (std::size_t v = 0; v < d.U.size(); ++v)
    for (int y : d.X_ids[v]) {
      I5Single one = check_I5_single(group, chk, kl, pre, y, static_cast<int>(v));
      switch (one.status) {
        case CheckStatus::Verified: ++rep.verified; break;
        case CheckStatus::Violated: ++rep.violated; break;
        case CheckStatus::Inconclusive: ++rep.inconclusive; break;
      }
      if (one.status != CheckStatus::Verified || !one.lower_terms.empty())
        rep.details.push_back(std::move(one));
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Consistency spot-check: for a downward-closed subset of U, the union
// of the corresponding components is closed under the computed left order on
// the trusted sub-ball.

struct IdealCheck {
  bool holds = true;
  std::string witness;
};

inline IdealCheck check_left_ideal(const CoxeterGroup& group, const InductionDatum& d,
                                   KLTable& kl, int trusted_radius,
                                   const std::vector<int>& downset) {
  std::vector<bool> in_B(d.ball.size(), false);
  for (int u : downset)
    for (int w = 0; w < d.ball.size(); ++w)
      if (d.owner_of[w] == u) in_B[w] = true;
  IdealCheck out;
  const int rank = group.rank();
  for (int w = 0; w < d.ball.size(); ++w) {
    if (!in_B[w] || d.ball.len[w] > trusted_radius) continue;
    for (int s = 0; s < rank; ++s)
      for (const auto& [z, c] : kl.h_left(s, w).coeffs) {
        if (d.ball.len[z] > trusted_radius || in_B[z]) continue;
        out.holds = false;
        out.witness = d.ball.elements[z].str() + " <=_L " + d.ball.elements[w].str() +
                      " escapes the ideal";
        return out;
      }
  }
  return out;
}

/// Downward closure of one element of U under the computed preorder.
inline std::vector<int> principal_downset(const UPreorder& pre, int v) {
  std::vector<int> out;
  for (int u = 0; u < static_cast<int>(pre.leq.size()); ++u)
    if (pre.leq[u][v]) out.push_back(u);
  return out;
}

// ---------------------------------------------------------------------------
// Two-sided glue criterion: within each two-sided class, every pair of left
// components intersects after inverting one of them.

inline bool inverse_intersection_holds(const InductionDatum& d, int level,
                                       std::string* witness = nullptr) {
  const auto& comps = d.comps.at(static_cast<std::size_t>(level));
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = 0; j < comps.size(); ++j) {
      bool meet = false;
      for (int w : comps[i]) {
        int wi = d.ball.inv[w];
        if (wi >= 0 && std::binary_search(comps[j].begin(), comps[j].end(), wi)) {
          meet = true;
          break;
        }
      }
      if (!meet) {
        if (witness)
          *witness = "T_" + std::to_string(i + 1) + "^{-1} does not meet T_" +
                     std::to_string(j + 1) + " in class " + std::to_string(level);
        return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Level-preserving isomorphism between the computed Hasse diagram and an
// expected one given by (level, multiplicity) vertices and edge pairs.

struct ExpectedHasse {
  std::vector<int> level;                    // per expected vertex
  std::vector<std::pair<int, int>> edges;    // (lower, upper) indices
};

namespace detail {

inline bool hasse_extend(const std::vector<int>& comp_level,
                         const std::vector<std::vector<bool>>& comp_adj,
                         const ExpectedHasse& exp,
                         const std::vector<std::vector<bool>>& exp_adj,
                         std::vector<int>& image, std::vector<bool>& used, std::size_t k) {
  const std::size_t n = comp_level.size();
  if (k == n) return true;
  for (std::size_t t = 0; t < n; ++t) {
    if (used[t] || exp.level[t] != comp_level[k]) continue;
    bool ok = true;
    for (std::size_t p = 0; p < k && ok; ++p)
      ok = comp_adj[p][k] == exp_adj[image[p]][t] && comp_adj[k][p] == exp_adj[t][image[p]];
    if (!ok) continue;
    image[k] = static_cast<int>(t);
    used[t] = true;
    if (hasse_extend(comp_level, comp_adj, exp, exp_adj, image, used, k + 1)) return true;
    used[t] = false;
  }
  return false;
}

}  // namespace detail

inline bool hasse_matches(const InductionDatum& d, const UPreorder& pre,
                          const ExpectedHasse& exp) {
  const std::size_t n = d.U.size();
  if (exp.level.size() != n) return false;
  std::vector<int> comp_level(n);
  for (std::size_t k = 0; k < n; ++k) comp_level[k] = d.U[k].level;
  {
    std::vector<int> a = comp_level, b = exp.level;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  std::vector<std::vector<bool>> comp_adj(n, std::vector<bool>(n, false));
  for (auto [lo, hi] : pre.hasse) comp_adj[lo][hi] = true;
  std::vector<std::vector<bool>> exp_adj(n, std::vector<bool>(n, false));
  for (auto [lo, hi] : exp.edges) exp_adj[lo][hi] = true;
  if (pre.hasse.size() != exp.edges.size()) return false;
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  return detail::hasse_extend(comp_level, comp_adj, exp, exp_adj, image, used, 0);
}

/// Transitive reduction of an expected relation to its cover pairs.
inline ExpectedHasse hasse_reduce(const ExpectedHasse& in) {
  const std::size_t n = in.level.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [lo, hi] : in.edges) leq[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k][j]) leq[i][j] = true;
  ExpectedHasse out;
  out.level = in.level;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j] || leq[j][i]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (k != i && k != j && leq[i][k] && leq[k][j] && !leq[k][i] && !leq[j][k])
          cover = false;
      if (cover) out.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace klcells
