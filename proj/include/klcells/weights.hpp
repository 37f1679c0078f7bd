// Weight functions on a Coxeter group and rational hyperplane arrangements on
// the parameter space V (one coordinate per generator conjugacy class).
//
// Facets are represented purely by sign signatures over a fixed arrangement,
// sampled on an integer box in the closed positive orthant; no polyhedral
// computation is performed.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <klcells/coxeter.hpp>

namespace klcells {

class WeightFunction {
 public:
  WeightFunction(const CoxeterGroup& group, std::vector<std::int64_t> weights)
      : group_(group), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != group_.rank())
      throw std::invalid_argument("weight function: one weight per generator required");
    for (const auto& cls : group_.generator_conjugacy_classes())
      for (int s : cls)
        if (weights_[s] != weights_[cls[0]])
          throw std::invalid_argument(
              "weight function: weights must be constant on generator conjugacy classes");
  }

  const CoxeterGroup& group() const { return group_; }
  std::int64_t of_generator(int s) const { return weights_.at(s); }
  const std::vector<std::int64_t>& weights() const { return weights_; }

  bool positive() const {
    return std::all_of(weights_.begin(), weights_.end(),
                       [](std::int64_t w) { return w > 0; });
  }

  std::int64_t of_element(const Element& g) const {
    std::int64_t sum = 0;
    for (int s : g.word) sum += weights_[s];
    return sum;
  }

  /// N = max over finite standard parabolics I of L(w_I).
  std::int64_t bound_N() const {
    std::int64_t n = 0;
    for (const auto& I : group_.finite_standard_parabolics())
      n = std::max(n, of_element(group_.longest_element(I)));
    return n;
  }

  /// |L| on each conjugacy class, plus which classes flipped.
  std::pair<WeightFunction, std::vector<bool>> normalize_signs() const {
    auto classes = group_.generator_conjugacy_classes();
    std::vector<std::int64_t> w = weights_;
    std::vector<bool> flipped(classes.size(), false);
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (w[classes[c][0]] < 0) {
        flipped[c] = true;
        for (int s : classes[c]) w[s] = -w[s];
      }
    return {WeightFunction(group_, std::move(w)), flipped};
  }

  /// Coordinates in V: one entry per conjugacy class, classes ordered by
  /// their least generator.
  std::vector<std::int64_t> class_vector() const {
    std::vector<std::int64_t> v;
    for (const auto& cls : group_.generator_conjugacy_classes())
      v.push_back(weights_[cls[0]]);
    return v;
  }

  static WeightFunction from_class_vector(const CoxeterGroup& group,
                                          const std::vector<std::int64_t>& v) {
    auto classes = group.generator_conjugacy_classes();
    if (v.size() != classes.size())
      throw std::invalid_argument("class vector: one entry per conjugacy class required");
    std::vector<std::int64_t> w(group.rank());
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int s : classes[c]) w[s] = v[c];
    return WeightFunction(group, std::move(w));
  }

 private:
  CoxeterGroup group_;
  std::vector<std::int64_t> weights_;
};

/// Rational hyperplane through the origin, stored with gcd-reduced normal
/// whose first nonzero entry is positive.
struct Hyperplane {
  std::vector<std::int64_t> normal;

  explicit Hyperplane(std::vector<std::int64_t> n) : normal(std::move(n)) {
    std::int64_t g = 0;
    for (std::int64_t x : normal) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) throw std::invalid_argument("hyperplane: zero normal");
    for (std::int64_t& x : normal) x /= g;
    for (std::int64_t x : normal) {
      if (x > 0) break;
      if (x < 0) {
        for (std::int64_t& y : normal) y = -y;
        break;
      }
    }
  }

  int dim() const { return static_cast<int>(normal.size()); }

  std::int64_t dot(const std::vector<std::int64_t>& p) const {
    if (p.size() != normal.size())
      throw std::invalid_argument("hyperplane: dimension mismatch");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += normal[i] * p[i];
    return s;
  }

  bool operator==(const Hyperplane& o) const { return normal == o.normal; }
  bool operator<(const Hyperplane& o) const { return normal < o.normal; }

  std::string str() const {
    std::string s = "H(";
    for (std::size_t i = 0; i < normal.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(normal[i]);
    }
    return s + ")";
  }
};

using Arrangement = std::vector<Hyperplane>;

/// Named built-in arrangements for the two affine parameter spaces.
inline Arrangement arrangement_by_name(const std::string& name) {
  if (name == "g2-essential")
    return {Hyperplane({1, 0}), Hyperplane({0, 1}), Hyperplane({1, -1}),
            Hyperplane({1, 1}), Hyperplane({2, -3}), Hyperplane({2, 3}),
            Hyperplane({1, -2}), Hyperplane({1, 2})};
  if (name == "b2-essential") {
    Arrangement a = {Hyperplane({1, 0, 0}), Hyperplane({0, 1, 0}),
                     Hyperplane({0, 0, 1})};
    for (auto v : {std::vector<std::int64_t>{1, 1, 0}, {1, -1, 0},
                   {0, 1, 1}, {0, 1, -1}, {1, 0, 1}, {1, 0, -1},
                   {1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1},
                   {1, 2, 1}, {1, 2, -1}, {1, -2, 1}, {1, -2, -1}})
      a.emplace_back(v);
    return a;
  }
  throw std::invalid_argument("unknown arrangement: " + name);
}

/// Sign pattern of a point against an arrangement: -1 / 0 / +1 per hyperplane.
using Signature = std::vector<int>;

inline Signature classify_point(const Arrangement& arr,
                                const std::vector<std::int64_t>& p) {
  Signature sig;
  sig.reserve(arr.size());
  for (const Hyperplane& h : arr) {
    std::int64_t d = h.dot(p);
    sig.push_back(d > 0 ? 1 : d < 0 ? -1 : 0);
  }
  return sig;
}

struct Facet {
  Signature signature;                           // 0 entries = zero_set
  int dimension = 0;                             // dim of the zero-set subspace
  bool is_chamber = false;                       // empty zero_set
  std::vector<std::vector<std::int64_t>> sample_points;  // up to 3 kept
  std::vector<int> adjacent_chambers;            // indices into FacetComplex::facets

  std::vector<int> zero_set(const Arrangement& arr) const {
    std::vector<int> z;
    for (std::size_t i = 0; i < arr.size(); ++i)
      if (signature[i] == 0) z.push_back(static_cast<int>(i));
    return z;
  }
};

struct FacetComplex {
  Arrangement arrangement;
  int box_radius = 0;
  std::vector<Facet> facets;
  std::vector<std::string> warnings;  // undersampled facets, etc.

  int facet_of_point(const std::vector<std::int64_t>& p) const {
    Signature sig = classify_point(arrangement, p);
    for (std::size_t i = 0; i < facets.size(); ++i)
      if (facets[i].signature == sig) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

// Rank of a set of integer row vectors by fraction-free elimination.
inline int int_rank(std::vector<std::vector<std::int64_t>> rows) {
  int rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      std::int64_t a = rows[rank][c], b = rows[r][c];
      std::int64_t g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
      for (std::size_t k = 0; k < cols; ++k)
        rows[r][k] = rows[r][k] * (a / g) - rows[rank][k] * (b / g);
    }
    ++rank;
  }
  return rank;
}

// one sign is compatible with the other if they agree wherever both nonzero
// and the second is zero only where the first is
inline bool chamber_touches_facet(const Signature& chamber, const Signature& facet) {
  for (std::size_t i = 0; i < chamber.size(); ++i) {
    if (facet[i] != 0 && chamber[i] != facet[i]) return false;
  }
  return true;
}

}  // namespace detail

/// Every facet of the arrangement meeting the closed positive orthant that
/// contains an integer point of [0, box_radius]^m.
inline FacetComplex enumerate_facets(const Arrangement& arr, int box_radius) {
  if (arr.empty()) throw std::invalid_argument("enumerate_facets: empty arrangement");
  int m = arr[0].dim();
  for (const Hyperplane& h : arr)
    if (h.dim() != m) throw std::invalid_argument("enumerate_facets: mixed dimensions");

  FacetComplex fc;
  fc.arrangement = arr;
  fc.box_radius = box_radius;

  std::map<Signature, Facet> by_sig;
  // iterate the integer box, skipping the origin (signature all-zero is the
  // trivial facet {0}; it carries no weight function)
  std::vector<std::int64_t> counter(m, 0);
  while (true) {
    bool origin = std::all_of(counter.begin(), counter.end(),
                              [](std::int64_t x) { return x == 0; });
    if (!origin) {
      Signature sig = classify_point(arr, counter);
      Facet& f = by_sig[sig];
      if (f.sample_points.empty()) f.signature = sig;
      if (f.sample_points.size() < 3) f.sample_points.push_back(counter);
    }
    int i = 0;
    while (i < m && counter[i] == box_radius) counter[i++] = 0;
    if (i == m) break;
    ++counter[i];
  }

  for (auto& [sig, f] : by_sig) {
    f.is_chamber = std::none_of(sig.begin(), sig.end(), [](int s) { return s == 0; });
    std::vector<std::vector<std::int64_t>> zero_normals;
    for (std::size_t i = 0; i < arr.size(); ++i)
      if (sig[i] == 0) zero_normals.push_back(arr[i].normal);
    f.dimension = m - detail::int_rank(zero_normals);
    fc.facets.push_back(f);
  }

  // adjacency: chambers whose closure contains the facet
  for (std::size_t i = 0; i < fc.facets.size(); ++i) {
    Facet& f = fc.facets[i];
    if (f.is_chamber) continue;
    for (std::size_t j = 0; j < fc.facets.size(); ++j)
      if (fc.facets[j].is_chamber &&
          detail::chamber_touches_facet(fc.facets[j].signature, f.signature))
        f.adjacent_chambers.push_back(static_cast<int>(j));
  }

  for (const Facet& f : fc.facets)
    if (f.dimension >= 1 && f.sample_points.size() < 2)
      fc.warnings.push_back("facet with signature sampled by a single box point; "
                            "increase box_radius (dimension " +
                            std::to_string(f.dimension) + ")");
  return fc;
}

/// Generators s with L(s) = 0 for every L on the facet: the union of the
/// conjugacy classes whose coordinate hyperplane lies in the zero set.
inline std::vector<int> parabolic_of_facet(const CoxeterGroup& group,
                                           const Arrangement& arr, const Facet& f) {
  auto classes = group.generator_conjugacy_classes();
  std::vector<int> gens;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (f.signature[i] != 0) continue;
    // coordinate hyperplane e_c?
    int nonzero = -1;
    bool coordinate = true;
    for (int k = 0; k < arr[i].dim(); ++k)
      if (arr[i].normal[k] != 0) {
        if (nonzero >= 0) { coordinate = false; break; }
        nonzero = k;
      }
    if (!coordinate || arr[i].normal[nonzero] != 1) continue;
    for (int s : classes.at(nonzero)) gens.push_back(s);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

}  // namespace klcells
