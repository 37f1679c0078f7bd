// Kazhdan-Lusztig basis elements C_w and structure constants h_{x,y,z}.
//
// C_w is the unique bar-invariant element of T_w + sum A_{<0} T_y; it is
// found by an incremental triangular solve: starting from X = T_w, the
// defect F = bar(X) - X is killed from its longest support element downward
// by correcting X with the strictly-negative part of the defect coefficient.
// No mu-polynomial bookkeeping is needed; correctness is exactly the two
// defining properties of C_w.
#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include <klcells/hecke.hpp>

namespace klcells {

/// Expansion of a Hecke element in the C-basis.  `truncated` propagates the
/// ball-overflow flag of the underlying T-basis computation; flagged values
/// are partial information only.
struct CExpansion {
  std::map<int, Laurent> coeffs;
  bool truncated = false;

  Laurent coeff(int id) const {
    auto it = coeffs.find(id);
    return it == coeffs.end() ? Laurent::zero() : it->second;
  }
};

class KLTable {
 public:
  explicit KLTable(HeckeSession& session) : H_(session) {
    C_cache_.resize(H_.ball().size());
    C_done_.assign(H_.ball().size(), false);
  }

  HeckeSession& session() { return H_; }

  /// C_w = T_w + sum_{y<w} P_{y,w} T_y, memoized per element.
  const HeckeElt& C(int w) {
    if (C_done_[w]) return C_cache_[w];
    HeckeElt X = H_.T(w);
    HeckeElt F = H_.bar(X) - X;
    while (!F.is_zero()) {
      int y = F.leading_id();
      if (y >= w)
        throw std::logic_error("klbasis: defect not triangular");
      Laurent f = F.coeff(y);
      if (f.bar() != -f || f.coeff(0) != 0)
        throw std::logic_error("klbasis: defect coefficient not antisymmetric");
      Laurent p = f.neg_part();
      // X += p T_y shifts F by bar(p) bar(T_y) - p T_y, killing position y
      X.add_term(y, p);
      F += H_.bar_T(y).scaled(p.bar());
      F.add_term(y, -p);
    }
    C_cache_[w] = std::move(X);
    C_done_[w] = true;
    return C_cache_[w];
  }
  const HeckeElt& C(const Element& w) { return C(H_.id_of(w)); }

  /// P_{y,w}; 1 when y = w, 0 unless y <= w in Bruhat order.
  Laurent P(int y, int w) { return C(w).coeff(y); }

  /// Expansion of h in the C-basis by greedy subtraction of leaders.
  CExpansion expand_in_C(const HeckeElt& h) {
    CExpansion r;
    r.truncated = h.truncated;
    HeckeElt rest = h;
    while (!rest.is_zero()) {
      int z = rest.leading_id();
      Laurent c = rest.coeff(z);
      r.coeffs.emplace(z, c);
      rest -= C(z).scaled(c);
      if (!rest.is_zero() && rest.leading_id() >= z)
        throw std::logic_error("klbasis: expansion does not descend");
    }
    return r;
  }

  /// h_{s,y,.}: expansion of C_s C_y.
  CExpansion h_left(int s, int y) {
    int sid = H_.id_of(H_.group().generator(s));
    return expand_in_C(H_.mul(C(sid), C(y)));
  }

  /// Right-handed version: expansion of C_y C_s.
  CExpansion h_right(int y, int s) {
    int sid = H_.id_of(H_.group().generator(s));
    return expand_in_C(H_.mul(C(y), C(sid)));
  }

  /// h_{x,y,.}: expansion of C_x C_y.
  CExpansion h_full(int x, int y) { return expand_in_C(H_.mul(C(x), C(y))); }

 private:
  HeckeSession& H_;
  std::vector<HeckeElt> C_cache_;
  std::vector<char> C_done_;
};

}  // namespace klcells
