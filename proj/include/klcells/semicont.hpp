#pragma once

// Semicontinuity checks: constancy of cell partitions on facets of a weight
// arrangement, predicted facet partitions as the orbit-stable coarsening of
// the adjacent chamber partitions, and detection of the hyperplanes that are
// actually essential for the candidate arrangement.
//
// All evidence is ball-restricted: "equal" means equal at the working radius,
// and a verdict never refers to elements outside the ball.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "klcells/cellalgo.hpp"
#include "klcells/coxeter.hpp"
#include "klcells/weights.hpp"

namespace klcells {

inline bool positive_point(const std::vector<std::int64_t>& p) {
  return std::all_of(p.begin(), p.end(), [](std::int64_t c) { return c > 0; });
}

/// Left and two-sided partitions of the ball at one weight point, in a
/// labeling-independent form: block_of maps each ball id to the smallest id
/// in its block, so two partitions are equal iff the vectors are equal.
struct SampleCells {
  std::vector<std::int64_t> point;           // class-vector coordinates
  std::vector<int> two_sided_of;             // ball id -> min id of its class
  std::vector<int> left_of;                  // ball id -> min id of its left cell
  std::map<int, std::int64_t> a_of_block;    // two-sided rep -> a-value
};

namespace detail {

inline std::vector<int> min_rep_labels(int n, const std::vector<int>& block_of) {
  std::map<int, int> rep;
  for (int i = 0; i < n; ++i) {
    auto it = rep.find(block_of[i]);
    if (it == rep.end()) rep.emplace(block_of[i], i);
  }
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = rep.at(block_of[i]);
  return out;
}

}  // namespace detail

inline SampleCells cells_at_point(const CoxeterGroup& group,
                                  const std::vector<std::int64_t>& point, int radius) {
  if (!positive_point(point))
    throw std::invalid_argument("cells_at_point: weight point must be strictly positive");
  auto tp = tilde_partition(group, WeightFunction::from_class_vector(group, point), radius);
  const int n = tp.ball.size();
  SampleCells sc;
  sc.point = point;
  sc.two_sided_of = detail::min_rep_labels(n, tp.c_of);
  for (int i = 0; i < n; ++i)
    sc.a_of_block.emplace(sc.two_sided_of[i], tp.c_a[tp.c_of[i]]);
  // left cells: connected components of each class under left multiplication
  std::vector<std::vector<int>> classes(tp.class_count());
  for (int i = 0; i < n; ++i) classes[tp.c_of[i]].push_back(i);
  sc.left_of.assign(n, -1);
  for (const auto& cls : classes)
    for (const auto& comp : split_components(tp.ball, cls, Adjacency::LeftConnected))
      for (int id : comp) sc.left_of[id] = comp.front();
  return sc;
}

// ---------------------------------------------------------------------------
// Constancy across the sample points of one facet.

struct ConstancyReport {
  bool enough_samples = false;  // >= 2 strictly positive points were available
  bool equal = false;
  std::string witness_kind;     // "two-sided" or "left" when unequal
  int witness_id = -1;          // smallest ball id classified differently
  std::vector<SampleCells> samples;
};

inline ConstancyReport check_constancy(const CoxeterGroup& group,
                                       const std::vector<std::vector<std::int64_t>>& points,
                                       int radius) {
  ConstancyReport rep;
  for (const auto& p : points)
    if (positive_point(p)) rep.samples.push_back(cells_at_point(group, p, radius));
  rep.enough_samples = rep.samples.size() >= 2;
  if (!rep.enough_samples)
    throw std::invalid_argument("check_constancy: need >= 2 positive sample points");
  rep.equal = true;
  const SampleCells& base = rep.samples.front();
  for (std::size_t k = 1; k < rep.samples.size() && rep.equal; ++k) {
    const SampleCells& other = rep.samples[k];
    for (std::size_t i = 0; i < base.two_sided_of.size(); ++i) {
      if (base.two_sided_of[i] != other.two_sided_of[i]) {
        rep.equal = false;
        rep.witness_kind = "two-sided";
        rep.witness_id = static_cast<int>(i);
        break;
      }
      if (base.left_of[i] != other.left_of[i]) {
        rep.equal = false;
        rep.witness_kind = "left";
        rep.witness_id = static_cast<int>(i);
        break;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Predicted facet partition: the finest partition coarsening every adjacent
// chamber partition whose blocks are stable under the facet parabolic
// (left translation for left cells, both sides for two-sided cells).

struct FacetPrediction {
  std::vector<int> parabolic;                      // generators of W_F
  std::vector<std::vector<std::int64_t>> chamber_points;  // one sample per chamber used
  std::vector<int> left_of;                        // min-rep labels per ball id
  std::vector<int> two_sided_of;
};

inline FacetPrediction predict_facet_partition(const CoxeterGroup& group,
                                               const Arrangement& arr,
                                               const FacetComplex& fc, int facet_index,
                                               int radius, unsigned shuffle_seed = 0) {
  const Facet& f = fc.facets.at(static_cast<std::size_t>(facet_index));
  FacetPrediction out;
  out.parabolic = parabolic_of_facet(group, arr, f);

  std::vector<SampleCells> chambers;
  if (f.is_chamber) {
    for (const auto& p : f.sample_points)
      if (positive_point(p)) {
        chambers.push_back(cells_at_point(group, p, radius));
        out.chamber_points.push_back(p);
        break;
      }
  } else {
    for (int ci : f.adjacent_chambers)
      for (const auto& p : fc.facets[static_cast<std::size_t>(ci)].sample_points)
        if (positive_point(p)) {
          chambers.push_back(cells_at_point(group, p, radius));
          out.chamber_points.push_back(p);
          break;
        }
  }
  if (chambers.empty())
    throw std::invalid_argument(
        "predict_facet_partition: no adjacent chamber with positive weights");

  const Ball ball = group.ball(radius);
  const int n = ball.size();
  auto closure = [&](bool two_sided) {
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    std::vector<std::pair<int, int>> pairs;
    for (const SampleCells& sc : chambers) {
      const auto& lbl = two_sided ? sc.two_sided_of : sc.left_of;
      for (int i = 0; i < n; ++i)
        if (lbl[i] != i) pairs.emplace_back(i, lbl[i]);
    }
    for (int s : out.parabolic)
      for (int i = 0; i < n; ++i) {
        if (ball.lmul[i][s] >= 0) pairs.emplace_back(i, ball.lmul[i][s]);
        if (two_sided && ball.rmul[i][s] >= 0) pairs.emplace_back(i, ball.rmul[i][s]);
      }
    if (shuffle_seed != 0) {
      std::mt19937 rng(shuffle_seed);
      std::shuffle(pairs.begin(), pairs.end(), rng);
    }
    for (auto [x, y] : pairs) root[find(x)] = find(y);
    std::vector<int> block_of(n);
    for (int i = 0; i < n; ++i) block_of[i] = find(i);
    return detail::min_rep_labels(n, block_of);
  };
  out.left_of = closure(false);
  out.two_sided_of = closure(true);
  return out;
}

// ---------------------------------------------------------------------------
// Essential hyperplanes of a candidate arrangement: those across which some
// pair of positive-orthant adjacent chambers carries different partitions.

enum class EssentialVerdict { Essential, NonEssential, Untested };

inline const char* essential_verdict_name(EssentialVerdict v) {
  switch (v) {
    case EssentialVerdict::Essential: return "essential";
    case EssentialVerdict::NonEssential: return "non-essential";
    default: return "untested";
  }
}

struct EssentialReport {
  Arrangement arrangement;
  int box_radius = 0;
  int radius = 0;
  std::vector<EssentialVerdict> verdicts;          // per hyperplane
  std::vector<std::vector<std::vector<std::int64_t>>> witnesses;  // chamber pair per plane
  std::vector<std::string> warnings;

  std::vector<Hyperplane> essential() const {
    std::vector<Hyperplane> out;
    for (std::size_t i = 0; i < arrangement.size(); ++i)
      if (verdicts[i] == EssentialVerdict::Essential) out.push_back(arrangement[i]);
    return out;
  }
};

inline EssentialReport essential_hyperplanes(const CoxeterGroup& group,
                                             const Arrangement& candidates, int box_radius,
                                             int radius) {
  EssentialReport rep;
  rep.arrangement = candidates;
  rep.box_radius = box_radius;
  rep.radius = radius;
  if (candidates.empty()) return rep;
  rep.verdicts.assign(candidates.size(), EssentialVerdict::Untested);
  rep.witnesses.resize(candidates.size());

  FacetComplex fc = enumerate_facets(candidates, box_radius);

  // Partition of each positive-orthant chamber, computed once; within each
  // chamber every stored positive sample is checked for internal constancy
  // before any cross-chamber comparison.
  std::map<int, SampleCells> chamber_cells;
  auto cells_of_chamber = [&](int ci) -> const SampleCells* {
    auto it = chamber_cells.find(ci);
    if (it != chamber_cells.end()) return &it->second;
    std::vector<std::vector<std::int64_t>> pos;
    for (const auto& p : fc.facets[static_cast<std::size_t>(ci)].sample_points)
      if (positive_point(p)) pos.push_back(p);
    if (pos.empty()) return nullptr;
    if (pos.size() >= 2) {
      ConstancyReport cr = check_constancy(group, pos, radius);
      if (!cr.equal)
        rep.warnings.push_back("chamber " + std::to_string(ci) +
                               " is not constant: the candidate arrangement is missing an "
                               "essential hyperplane through it");
      return &chamber_cells.emplace(ci, std::move(cr.samples.front())).first->second;
    }
    rep.warnings.push_back("chamber " + std::to_string(ci) +
                           " has a single positive sample point only");
    return &chamber_cells.emplace(ci, cells_at_point(group, pos.front(), radius))
                .first->second;
  };

  const std::size_t m = candidates[0].normal.size();
  for (const Facet& f : fc.facets) {
    if (f.is_chamber || f.dimension != static_cast<int>(m) - 1) continue;
    auto zeros = f.zero_set(candidates);
    if (zeros.size() != 1) continue;  // wall lies on several candidate planes
    const int h = zeros.front();
    for (std::size_t i = 0; i < f.adjacent_chambers.size(); ++i)
      for (std::size_t j = i + 1; j < f.adjacent_chambers.size(); ++j) {
        const int ca = f.adjacent_chambers[i], cb = f.adjacent_chambers[j];
        const Facet& fa = fc.facets[static_cast<std::size_t>(ca)];
        const Facet& fb = fc.facets[static_cast<std::size_t>(cb)];
        if (fa.signature[static_cast<std::size_t>(h)] ==
            fb.signature[static_cast<std::size_t>(h)])
          continue;  // same side: not a pair across this plane
        const SampleCells* pa = cells_of_chamber(ca);
        const SampleCells* pb = cells_of_chamber(cb);
        if (pa == nullptr || pb == nullptr) continue;
        const bool differ =
            pa->two_sided_of != pb->two_sided_of || pa->left_of != pb->left_of;
        if (differ) {
          if (rep.verdicts[static_cast<std::size_t>(h)] != EssentialVerdict::Essential)
            rep.witnesses[static_cast<std::size_t>(h)] = {pa->point, pb->point};
          rep.verdicts[static_cast<std::size_t>(h)] = EssentialVerdict::Essential;
        } else if (rep.verdicts[static_cast<std::size_t>(h)] == EssentialVerdict::Untested) {
          rep.verdicts[static_cast<std::size_t>(h)] = EssentialVerdict::NonEssential;
          rep.witnesses[static_cast<std::size_t>(h)] = {pa->point, pb->point};
        }
      }
  }
  return rep;
}

}  // namespace klcells
