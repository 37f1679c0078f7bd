// Iwahori-Hecke algebra with unequal parameters over Z[v,v^-1], in the
// T-basis, truncated to a length ball of the group.
//
// A session owns the group, the weight function, the ball tables, and the
// memoized bar involution.  Products whose support leaves the ball drop the
// outside terms and carry a `truncated` flag; downstream code must treat
// flagged values as partial information.
#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include <klcells/coxeter.hpp>
#include <klcells/laurent.hpp>
#include <klcells/weights.hpp>

namespace klcells {

/// Element of the Hecke algebra: finite map from ball element ids to
/// coefficients.  No zero coefficients are stored.
struct HeckeElt {
  std::map<int, Laurent> coeffs;
  bool truncated = false;

  bool is_zero() const { return coeffs.empty(); }

  Laurent coeff(int id) const {
    auto it = coeffs.find(id);
    return it == coeffs.end() ? Laurent::zero() : it->second;
  }

  void add_term(int id, const Laurent& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = coeffs.emplace(id, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }

  HeckeElt& operator+=(const HeckeElt& o) {
    truncated = truncated || o.truncated;
    for (const auto& [id, c] : o.coeffs) add_term(id, c);
    return *this;
  }

  HeckeElt& operator-=(const HeckeElt& o) {
    truncated = truncated || o.truncated;
    for (const auto& [id, c] : o.coeffs) add_term(id, -c);
    return *this;
  }

  HeckeElt operator+(const HeckeElt& o) const { HeckeElt r = *this; r += o; return r; }
  HeckeElt operator-(const HeckeElt& o) const { HeckeElt r = *this; r -= o; return r; }

  HeckeElt scaled(const Laurent& c) const {
    HeckeElt r;
    r.truncated = truncated;
    if (c.is_zero()) return r;
    for (const auto& [id, a] : coeffs) r.coeffs.emplace(id, a * c);
    return r;
  }

  bool operator==(const HeckeElt& o) const { return coeffs == o.coeffs; }

  /// All coefficients lie in A_{<0} (membership in H_{<0}).
  bool in_strictly_negative() const {
    for (const auto& [id, c] : coeffs)
      if (!c.in_strictly_negative()) return false;
    return true;
  }

  /// Support id of maximal (length, ShortLex) order; -1 if zero.
  int leading_id() const {
    return coeffs.empty() ? -1 : coeffs.rbegin()->first;
  }
};

class HeckeSession {
 public:
  HeckeSession(const CoxeterGroup& group, const WeightFunction& weights, int radius)
      : group_(group), weights_(weights), ball_(group.ball(radius)) {
    if (!weights_.positive())
      throw std::invalid_argument("hecke: weight function must be positive");
    bar_T_cache_.resize(ball_.size());
    bar_T_done_.assign(ball_.size(), false);
  }

  const CoxeterGroup& group() const { return group_; }
  const WeightFunction& weights() const { return weights_; }
  const Ball& ball() const { return ball_; }
  int radius() const { return ball_.radius; }

  int id_of(const Element& g) const {
    int id = ball_.id_of(g);
    if (id < 0) throw std::invalid_argument("hecke: element outside ball: " + g.str());
    return id;
  }
  const Element& element(int id) const { return ball_.elements.at(id); }

  /// v^{L(s)} - v^{-L(s)}.
  Laurent xi(int s) const {
    int ls = static_cast<int>(weights_.of_generator(s));
    return Laurent::monomial(1, ls) - Laurent::monomial(1, -ls);
  }

  HeckeElt T(int id) const {
    HeckeElt h;
    h.coeffs.emplace(id, Laurent::one());
    return h;
  }
  HeckeElt T(const Element& g) const { return T(id_of(g)); }
  HeckeElt unit() const { return T(0); }

  HeckeElt mul_Ts_left(int s, const HeckeElt& h) const {
    HeckeElt r;
    r.truncated = h.truncated;
    for (const auto& [id, c] : h.coeffs) {
      int sw = ball_.lmul[id][s];
      if (ball_.len[id] < element_length_after_lmul(id, s)) {
        if (sw < 0)
          r.truncated = true;
        else
          r.add_term(sw, c);
      } else {
        // sw < w: T_s T_w = T_{sw} + (v^{L(s)} - v^{-L(s)}) T_w
        r.add_term(sw, c);
        r.add_term(id, c * xi(s));
      }
    }
    return r;
  }

  /// Independent right-handed rule, used as a cross-check oracle.
  HeckeElt mul_Ts_right(const HeckeElt& h, int s) const {
    HeckeElt r;
    r.truncated = h.truncated;
    for (const auto& [id, c] : h.coeffs) {
      int ws = ball_.rmul[id][s];
      if (ws >= 0 && ball_.len[ws] > ball_.len[id]) {
        r.add_term(ws, c);
      } else if (ws < 0) {
        r.truncated = true;
      } else {
        r.add_term(ws, c);
        r.add_term(id, c * xi(s));
      }
    }
    return r;
  }

  /// Product by left-to-right peeling of the left factor's reduced words.
  HeckeElt mul(const HeckeElt& a, const HeckeElt& b) const {
    HeckeElt r;
    r.truncated = a.truncated || b.truncated;
    for (const auto& [id, c] : a.coeffs) {
      HeckeElt part = b;
      const std::vector<int>& w = element(id).word;
      for (auto it = w.rbegin(); it != w.rend(); ++it)
        part = mul_Ts_left(*it, part);
      r += part.scaled(c);
    }
    return r;
  }

  /// bar(T_w), memoized; support lies in { y : y <= w }, always inside the ball.
  const HeckeElt& bar_T(int id) {
    if (bar_T_done_[id]) return bar_T_cache_[id];
    HeckeElt r;
    if (ball_.len[id] == 0) {
      r = unit();
    } else {
      int s = element(id).word.front();
      int u = ball_.lmul[id][s];  // u = s w, shorter, inside ball
      // bar(T_w) = T_s^{-1} bar(T_u) = (T_s - xi_s T_e) bar(T_u)
      const HeckeElt& bu = bar_T(u);
      r = mul_Ts_left(s, bu) - bu.scaled(xi(s));
    }
    bar_T_cache_[id] = std::move(r);
    bar_T_done_[id] = true;
    return bar_T_cache_[id];
  }

  HeckeElt bar(const HeckeElt& h) {
    HeckeElt r;
    r.truncated = h.truncated;
    for (const auto& [id, c] : h.coeffs) r += bar_T(id).scaled(c.bar());
    return r;
  }

 private:
  CoxeterGroup group_;
  WeightFunction weights_;
  Ball ball_;
  std::vector<HeckeElt> bar_T_cache_;
  std::vector<char> bar_T_done_;

  // length of s*w without relying on lmul (which is -1 outside the ball):
  // descent test decides ascend/descend.
  int element_length_after_lmul(int id, int s) const {
    bool descent = group_.is_left_descent(s, element(id));
    return ball_.len[id] + (descent ? -1 : 1);
  }
};

}  // namespace klcells
