// Rank-2 Coxeter groups: finite dihedral I2(m) and the affine Weyl groups
// of type A1~, B2~, G2~, with exact element arithmetic.
//
// Dihedral elements are kept in rotation normal form s1^eps t^r (t = s1 s2);
// affine elements act faithfully on the root lattice by integer 3x3 matrices,
// with the canonical ShortLex reduced word recovered by a least-left-descent
// walk.  Equality of canonical words is the equality of group elements.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace klcells {

using Mat3 = std::array<std::array<std::int64_t, 3>, 3>;

inline Mat3 mat3_identity() {
  return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

inline Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < 3; ++k) {
        std::int64_t p;
        if (__builtin_mul_overflow(a[i][k], b[k][j], &p) ||
            __builtin_add_overflow(s, p, &s))
          throw std::overflow_error("coxeter: matrix entry overflow");
      }
      r[i][j] = s;
    }
  return r;
}

inline std::int64_t mat3_det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Inverse of a matrix with det = ±1, via the adjugate.
inline Mat3 mat3_inv_unimodular(const Mat3& m) {
  std::int64_t d = mat3_det(m);
  if (d != 1 && d != -1)
    throw std::invalid_argument("coxeter: matrix is not unimodular");
  Mat3 adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // adj[j][i] = cofactor(i,j)
      adj[j][i] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  if (d == -1)
    for (auto& row : adj)
      for (auto& x : row) x = -x;
  return adj;
}

enum class GroupKind { Dihedral, AffineA1, AffineB2, AffineG2 };

constexpr int kInfinity = -1;  // bond value for m_ij = infinity

struct Element {
  // Group signature, for mixed-operand checks.
  GroupKind kind;
  int bond;  // dihedral m (kInfinity for I2(inf)); unused marker for rank 3

  // Canonical ShortLex-minimal reduced word, 0-based generator indices.
  std::vector<int> word;

  // Dihedral normal form s1^eps t^r with t = s1 s2 (r mod m when finite).
  int eps = 0;
  std::int64_t rot = 0;

  // Affine presets: action on the root lattice.
  Mat3 matrix = mat3_identity();

  int length() const { return static_cast<int>(word.size()); }
  bool is_identity() const { return word.empty(); }

  bool operator==(const Element& o) const {
    return kind == o.kind && bond == o.bond && word == o.word;
  }
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const {  // ShortLex, for deterministic order
    if (word.size() != o.word.size()) return word.size() < o.word.size();
    return word < o.word;
  }

  /// 1-based generator-index string, e.g. "121321"; "e" for the identity.
  std::string str() const {
    if (word.empty()) return "e";
    std::string s;
    for (int g : word) s += static_cast<char>('1' + g);
    return s;
  }
};

struct Ball;

class CoxeterGroup {
 public:
  static CoxeterGroup dihedral(int m) {
    if (m != kInfinity && m < 2)
      throw std::invalid_argument("dihedral: m must be >= 2 or infinite");
    CoxeterGroup g;
    g.kind_ = GroupKind::Dihedral;
    g.rank_ = 2;
    g.bond_ = m;
    return g;
  }

  static CoxeterGroup affine_a1() {
    CoxeterGroup g = dihedral(kInfinity);
    g.kind_ = GroupKind::AffineA1;
    return g;
  }

  static CoxeterGroup affine_b2() {
    CoxeterGroup g;
    g.kind_ = GroupKind::AffineB2;
    g.rank_ = 3;
    g.cartan_ = {{{2, -1, 0}, {-2, 2, -2}, {0, -1, 2}}};
    g.init_affine();
    return g;
  }

  static CoxeterGroup affine_g2() {
    CoxeterGroup g;
    g.kind_ = GroupKind::AffineG2;
    g.rank_ = 3;
    g.cartan_ = {{{2, -3, 0}, {-1, 2, -1}, {0, -1, 2}}};
    g.init_affine();
    return g;
  }

  static CoxeterGroup by_name(const std::string& name) {
    if (name == "a1-affine" || name == "affine-a1") return affine_a1();
    if (name == "b2-affine" || name == "affine-b2") return affine_b2();
    if (name == "g2-affine" || name == "affine-g2") return affine_g2();
    if (name.rfind("dihedral-", 0) == 0) {
      std::string tail = name.substr(9);
      if (tail == "inf") return dihedral(kInfinity);
      return dihedral(std::stoi(tail));
    }
    throw std::invalid_argument("unknown group name: " + name);
  }

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  bool is_affine_rank3() const { return rank_ == 3; }
  bool is_dihedral_like() const { return rank_ == 2; }

  /// Coxeter matrix entry m_ij (kInfinity for an infinite bond).
  int coxeter_m(int i, int j) const {
    if (i == j) return 1;
    if (rank_ == 2) return bond_;
    std::int64_t p = cartan_[i][j] * cartan_[j][i];
    switch (p) {
      case 0: return 2;
      case 1: return 3;
      case 2: return 4;
      case 3: return 6;
      default: return kInfinity;
    }
  }

  /// Generator conjugacy classes by the odd-bond rule.
  std::vector<std::vector<int>> generator_conjugacy_classes() const {
    std::vector<int> root(rank_);
    for (int i = 0; i < rank_; ++i) root[i] = i;
    auto find = [&](int x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (int i = 0; i < rank_; ++i)
      for (int j = i + 1; j < rank_; ++j) {
        int m = coxeter_m(i, j);
        if (m != kInfinity && m % 2 == 1) root[find(i)] = find(j);
      }
    std::vector<std::vector<int>> classes(rank_);
    for (int i = 0; i < rank_; ++i) classes[find(i)].push_back(i);
    std::erase_if(classes, [](const auto& c) { return c.empty(); });
    return classes;
  }

  Element identity() const {
    Element e;
    e.kind = kind_;
    e.bond = bond_;
    return e;
  }

  Element generator(int i) const {
    check_gen(i);
    Element g = identity();
    if (rank_ == 2) {
      g.eps = 1;
      g.rot = (i == 0) ? 0 : 1;  // s1 = s1 t^0; s2 = s1 t^1
      normalize_dihedral(g);
    } else {
      g.matrix = gen_matrix_[i];
      g.word = {i};
    }
    return g;
  }

  Element from_word(const std::vector<int>& w) const {
    Element g = identity();
    for (int i : w) g = multiply(g, generator(i));
    return g;
  }

  Element from_string(const std::string& s) const {
    if (s == "e") return identity();
    std::vector<int> w;
    for (char c : s) {
      if (c < '1' || c >= '1' + rank_)
        throw std::invalid_argument("bad generator letter in word: " + s);
      w.push_back(c - '1');
    }
    return from_word(w);
  }

  Element multiply(const Element& a, const Element& b) const {
    check_same(a);
    check_same(b);
    Element r = identity();
    if (rank_ == 2) {
      // (s1^e1 t^r1)(s1^e2 t^r2): move s1^e2 past t^r1 using s1 t^k s1 = t^-k.
      if (b.eps == 0) {
        r.eps = a.eps;
        r.rot = a.rot + b.rot;
      } else {
        r.eps = a.eps ^ 1;
        r.rot = b.rot - a.rot;
      }
      normalize_dihedral(r);
    } else {
      r.matrix = mat3_mul(a.matrix, b.matrix);
      r.word = canonical_word_affine(r.matrix);
    }
    return r;
  }

  Element inverse(const Element& a) const {
    check_same(a);
    Element r = identity();
    if (rank_ == 2) {
      r.eps = a.eps;
      r.rot = a.eps ? a.rot : -a.rot;  // reflections are involutions
      normalize_dihedral(r);
    } else {
      r.matrix = mat3_inv_unimodular(a.matrix);
      r.word = canonical_word_affine(r.matrix);
    }
    return r;
  }

  int length(const Element& a) const { return a.length(); }

  bool is_left_descent(int s, const Element& g) const {
    check_gen(s);
    if (rank_ == 2)
      return multiply(generator(s), g).length() < g.length();
    if (g.word.empty()) return false;
    // s is a left descent of w iff w^{-1}(alpha_s) is a negative root.
    Mat3 inv = mat3_inv_unimodular(g.matrix);
    return column_nonpositive(inv, s);
  }

  bool is_right_descent(const Element& g, int s) const {
    check_gen(s);
    if (rank_ == 2)
      return multiply(g, generator(s)).length() < g.length();
    if (g.word.empty()) return false;
    return column_nonpositive(g.matrix, s);
  }

  std::vector<int> left_descents(const Element& g) const {
    std::vector<int> d;
    for (int s = 0; s < rank_; ++s)
      if (is_left_descent(s, g)) d.push_back(s);
    return d;
  }

  std::vector<int> right_descents(const Element& g) const {
    std::vector<int> d;
    for (int s = 0; s < rank_; ++s)
      if (is_right_descent(g, s)) d.push_back(s);
    return d;
  }

  /// Bruhat order via the standard first-letter recursion, equivalent to the
  /// subword test on any reduced word of w.
  bool bruhat_leq(const Element& y, const Element& w) const {
    check_same(y);
    check_same(w);
    Element yy = y, ww = w;
    while (true) {
      if (yy.is_identity()) return true;
      if (yy.length() > ww.length()) return false;
      int s = ww.word.front();
      Element sw = multiply(generator(s), ww);
      Element sy = multiply(generator(s), yy);
      if (sy.length() < yy.length()) yy = sy;
      ww = sw;
    }
  }

  bool parabolic_finite(const std::vector<int>& I) const {
    if (I.size() <= 1) return true;
    for (std::size_t a = 0; a < I.size(); ++a)
      for (std::size_t b = a + 1; b < I.size(); ++b)
        if (coxeter_m(I[a], I[b]) == kInfinity) return false;
    // proper parabolics of affine rank-3 presets are finite; the whole group
    // and infinite dihedrals are not
    return static_cast<int>(I.size()) < rank_ || (rank_ == 2 && bond_ != kInfinity);
  }

  /// All proper subsets I of S with W_I finite (including the empty set).
  std::vector<std::vector<int>> finite_standard_parabolics() const {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << rank_); ++mask) {
      std::vector<int> I;
      for (int s = 0; s < rank_; ++s)
        if (mask & (1 << s)) I.push_back(s);
      if (static_cast<int>(I.size()) == rank_ && rank_ > 2) continue;
      if (parabolic_finite(I) && static_cast<int>(I.size()) < rank_)
        out.push_back(I);
    }
    // the full dihedral group itself when finite
    if (rank_ == 2 && bond_ != kInfinity) out.push_back({0, 1});
    return out;
  }

  Element longest_element(const std::vector<int>& I) const {
    if (!parabolic_finite(I))
      throw std::invalid_argument("longest_element: W_I is infinite");
    if (I.empty()) return identity();
    if (I.size() == 1) return generator(I[0]);
    int m = coxeter_m(I[0], I[1]);
    Element w = identity();
    for (int k = 0; k < m; ++k) w = multiply(w, generator(I[k % 2]));
    return w;
  }

  /// g = x . u with u in W_I and x having no right descent in I.
  std::pair<Element, Element> parabolic_decompose_right(const Element& g,
                                                        const std::vector<int>& I) const {
    if (!parabolic_finite(I))
      throw std::invalid_argument("parabolic_decompose: W_I is infinite");
    Element x = g, u = identity();
    bool moved = true;
    while (moved) {
      moved = false;
      for (int s : I)
        if (is_right_descent(x, s)) {
          x = multiply(x, generator(s));
          u = multiply(generator(s), u);
          moved = true;
          break;
        }
    }
    return {x, u};
  }

  /// g = u . x with u in W_I and x having no left descent in I.
  std::pair<Element, Element> parabolic_decompose_left(const Element& g,
                                                       const std::vector<int>& I) const {
    if (!parabolic_finite(I))
      throw std::invalid_argument("parabolic_decompose: W_I is infinite");
    Element x = g, u = identity();
    bool moved = true;
    while (moved) {
      moved = false;
      for (int s : I)
        if (is_left_descent(s, x)) {
          x = multiply(generator(s), x);
          u = multiply(u, generator(s));
          moved = true;
          break;
        }
    }
    return {u, x};
  }

  Ball ball(int R) const;

 private:
  GroupKind kind_ = GroupKind::Dihedral;
  int rank_ = 2;
  int bond_ = 2;  // dihedral only
  Mat3 cartan_{};
  std::array<Mat3, 3> gen_matrix_{};

  void init_affine() {
    bond_ = 0;
    for (int i = 0; i < 3; ++i) {
      Mat3 m = mat3_identity();
      for (int j = 0; j < 3; ++j) m[i][j] -= cartan_[i][j];
      gen_matrix_[i] = m;
    }
  }

  void check_gen(int i) const {
    if (i < 0 || i >= rank_) throw std::invalid_argument("generator index out of range");
  }

  void check_same(const Element& a) const {
    if (a.kind != kind_ || a.bond != bond_)
      throw std::invalid_argument("mixed-group operands");
  }

  static bool column_nonpositive(const Mat3& m, int j) {
    return m[0][j] <= 0 && m[1][j] <= 0 && m[2][j] <= 0;
  }

  // Rewrites eps/rot into range and rebuilds the canonical word.
  // Normal forms: t^r   = 1_{2r} (r>=0) or 2_{-2r} (r<0);
  //               s1t^r = 2_{2r-1} (r>=1) or 1_{1-2r} (r<=0).
  void normalize_dihedral(Element& g) const {
    if (bond_ != kInfinity) {
      std::int64_t m = bond_;
      g.rot = ((g.rot % m) + m) % m;
      if (g.eps == 0) {
        // minimal-length representative among t^r and t^(r-m); at the tie
        // 2r == m, t^(m/2) = 1_m wins ShortLex over 2_m, so keep r positive
        if (2 * g.rot > m) g.rot -= m;
      } else {
        // lengths: r>=1 -> 2r-1; r<=0 -> 1-2r; compare r and r-m
        std::int64_t len_hi = g.rot >= 1 ? 2 * g.rot - 1 : 1 - 2 * g.rot;
        std::int64_t r2 = g.rot - m;
        std::int64_t len_lo = r2 >= 1 ? 2 * r2 - 1 : 1 - 2 * r2;
        if (len_lo < len_hi || (len_lo == len_hi && r2 <= 0)) g.rot = r2;
        // tie at length m: prefer the 1_m form (r <= 0 branch)
      }
    }
    g.word.clear();
    if (g.eps == 0) {
      std::int64_t r = g.rot;
      int start = r >= 0 ? 0 : 1;
      std::int64_t n = 2 * (r >= 0 ? r : -r);
      for (std::int64_t k = 0; k < n; ++k) g.word.push_back((start + k) % 2);
    } else {
      std::int64_t r = g.rot;
      int start = r >= 1 ? 1 : 0;
      std::int64_t n = r >= 1 ? 2 * r - 1 : 1 - 2 * r;
      for (std::int64_t k = 0; k < n; ++k) g.word.push_back((start + k) % 2);
    }
  }

  std::vector<int> canonical_word_affine(const Mat3& m) const {
    std::vector<int> word;
    Mat3 n = mat3_inv_unimodular(m);  // matrix of w^{-1}
    while (n != mat3_identity()) {
      int s = -1;
      for (int i = 0; i < 3; ++i)
        if (column_nonpositive(n, i)) { s = i; break; }
      if (s < 0) throw std::logic_error("coxeter: no descent for non-identity element");
      word.push_back(s);
      n = mat3_mul(n, gen_matrix_[s]);  // (s w)^{-1} = w^{-1} s
    }
    return word;
  }
};

/// Finite ball { w : l(w) <= R } with integer element ids and lookup tables.
/// mult tables hold -1 where the product leaves the ball.
struct Ball {
  int radius = 0;
  bool truncated = false;  // false iff the ball is the whole group
  std::vector<Element> elements;           // id -> element, length-then-ShortLex order
  std::vector<int> len;                    // id -> length
  std::vector<std::array<int, 3>> lmul;    // id x s -> id of s*w, or -1
  std::vector<std::array<int, 3>> rmul;    // id x s -> id of w*s, or -1
  std::vector<int> inv;                    // id -> id of w^{-1}
  std::unordered_map<std::string, int> index;

  int size() const { return static_cast<int>(elements.size()); }

  int id_of(const Element& g) const {
    auto it = index.find(g.str());
    return it == index.end() ? -1 : it->second;
  }
};

inline Ball CoxeterGroup::ball(int R) const {
  if (R < 0) throw std::invalid_argument("ball: R must be >= 0");
  Ball b;
  b.radius = R;
  std::vector<Element> layer{identity()};
  std::vector<Element> all{identity()};
  std::unordered_map<std::string, int> seen{{"e", 0}};
  for (int l = 1; l <= R && !layer.empty(); ++l) {
    std::vector<Element> next;
    for (const Element& g : layer)
      for (int s = 0; s < rank_; ++s)
        for (const Element& h : {multiply(g, generator(s)), multiply(generator(s), g)}) {
          if (h.length() != l) continue;
          if (seen.emplace(h.str(), -1).second) next.push_back(h);
        }
    std::sort(next.begin(), next.end());
    for (const Element& h : next) all.push_back(h);
    layer = std::move(next);
  }
  b.elements = std::move(all);
  b.index.clear();
  for (int i = 0; i < b.size(); ++i) b.index.emplace(b.elements[i].str(), i);
  b.len.resize(b.size());
  b.lmul.assign(b.size(), {-1, -1, -1});
  b.rmul.assign(b.size(), {-1, -1, -1});
  b.inv.resize(b.size());
  b.truncated = false;
  for (int i = 0; i < b.size(); ++i) {
    const Element& g = b.elements[i];
    b.len[i] = g.length();
    b.inv[i] = b.id_of(inverse(g));
    for (int s = 0; s < rank_; ++s) {
      int lj = b.id_of(multiply(generator(s), g));
      int rj = b.id_of(multiply(g, generator(s)));
      b.lmul[i][s] = lj;
      b.rmul[i][s] = rj;
      if (lj < 0 || rj < 0) b.truncated = true;
    }
  }
  return b;
}

}  // namespace klcells
