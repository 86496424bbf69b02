#include "starlab/projections.hpp"

#include <algorithm>
#include <string>

#include "starlab/error.hpp"
#include "starlab/parallel.hpp"

namespace starlab {

namespace {

std::string list_elements(const StarRing& r, const std::vector<Index>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += r.format(xs[i]);
  }
  return s + "}";
}

std::vector<Index> with_front(Index x, const std::vector<Index>& rest) {
  std::vector<Index> w{x};
  w.insert(w.end(), rest.begin(), rest.end());
  return w;
}

}  // namespace

ProjectionPoset::ProjectionPoset(const StarRing& r, unsigned jobs) {
  const std::size_t n = r.order();
  for (Index e = 0; e < n; ++e) {
    if (r.star(e) == e && r.mul(e, e) == e) items_.push_back({e, false});
  }
  parallel_for(items_.size(), jobs, [&](std::size_t i) {
    const Index e = items_[i].element;
    bool central = true;
    for (Index x = 0; x < n && central; ++x) central = r.mul(e, x) == r.mul(x, e);
    items_[i].central = central;
  });
  const std::size_t p = items_.size();
  order_.assign(p * p, 0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      order_[i * p + j] = r.mul(items_[i].element, items_[j].element) == items_[i].element ? 1 : 0;
    }
  }
}

std::optional<std::size_t> ProjectionPoset::position(Index e) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), e,
                             [](const Projection& p, Index v) { return p.element < v; });
  if (it == items_.end() || it->element != e) return std::nullopt;
  return static_cast<std::size_t>(it - items_.begin());
}

bool ProjectionPoset::leq_elements(Index e, Index f) const {
  auto i = position(e);
  auto j = position(f);
  return i && j && leq(*i, *j);
}

std::optional<std::size_t> ProjectionPoset::least(const std::vector<bool>& subset) const {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (!subset[i]) continue;
    bool below_all = true;
    for (std::size_t j = 0; j < items_.size() && below_all; ++j) {
      if (subset[j]) below_all = leq(i, j);
    }
    if (below_all) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ProjectionPoset::greatest(const std::vector<bool>& subset) const {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (!subset[i]) continue;
    bool above_all = true;
    for (std::size_t j = 0; j < items_.size() && above_all; ++j) {
      if (subset[j]) above_all = leq(j, i);
    }
    if (above_all) return i;
  }
  return std::nullopt;
}

std::vector<Index> ProjectionPoset::central_elements() const {
  std::vector<Index> out;
  for (const auto& p : items_) {
    if (p.central) out.push_back(p.element);
  }
  return out;
}

ProjectionAnalysis::ProjectionAnalysis(StarRing r, unsigned jobs) : ring_(std::move(r)), poset_(ring_, jobs) {
  right_of_projection_.resize(poset_.size());
  left_of_projection_.resize(poset_.size());
  parallel_for(poset_.size(), jobs, [&](std::size_t i) {
    right_of_projection_[i] = right_annihilator(poset_.element(i));
    left_of_projection_[i] = left_annihilator(poset_.element(i));
  });
  for (std::size_t i = 0; i < poset_.size(); ++i) {
    if (poset_.items()[i].central) central_positions_.push_back(i);
  }
}

Bitset ProjectionAnalysis::right_annihilator(Index x) const {
  Bitset out(ring_.order());
  for (Index y = 0; y < ring_.order(); ++y) {
    if (ring_.mul(x, y) == StarRing::zero()) out.set(y);
  }
  return out;
}

Bitset ProjectionAnalysis::left_annihilator(Index x) const {
  Bitset out(ring_.order());
  for (Index y = 0; y < ring_.order(); ++y) {
    if (ring_.mul(y, x) == StarRing::zero()) out.set(y);
  }
  return out;
}

ProjectionLookup ProjectionAnalysis::find_rp(Index x) const {
  ProjectionLookup out;
  const Bitset killed = right_annihilator(x);
  for (std::size_t i = 0; i < poset_.size(); ++i) {
    const Index e = poset_.element(i);
    if (ring_.mul(x, e) == x && killed.is_subset_of(right_of_projection_[i])) out.candidates.push_back(e);
  }
  return out;
}

ProjectionLookup ProjectionAnalysis::find_lp(Index x) const {
  ProjectionLookup out;
  const Bitset killed = left_annihilator(x);
  for (std::size_t i = 0; i < poset_.size(); ++i) {
    const Index e = poset_.element(i);
    if (ring_.mul(e, x) == x && killed.is_subset_of(left_of_projection_[i])) out.candidates.push_back(e);
  }
  return out;
}

std::optional<Index> ProjectionAnalysis::find_central_cover(Index x) const {
  std::vector<bool> fixing(poset_.size(), false);
  for (auto i : central_positions_) fixing[i] = ring_.mul(poset_.element(i), x) == x;
  if (auto least = poset_.least(fixing)) return poset_.element(*least);
  return std::nullopt;
}

Index ProjectionAnalysis::rp(Index x) const {
  auto found = find_rp(x);
  if (found.candidates.empty()) {
    throw Error(ErrorCode::NoRightProjection, "no right projection for " + ring_.format(x) + " in " + ring_.label(),
                {x});
  }
  if (found.candidates.size() > 1) {
    throw Error(ErrorCode::AmbiguousRightProjection,
                "several right projections for " + ring_.format(x) + ": " + list_elements(ring_, found.candidates),
                with_front(x, found.candidates));
  }
  return found.candidates.front();
}

Index ProjectionAnalysis::lp(Index x) const {
  auto found = find_lp(x);
  if (found.candidates.empty()) {
    throw Error(ErrorCode::NoLeftProjection, "no left projection for " + ring_.format(x) + " in " + ring_.label(),
                {x});
  }
  if (found.candidates.size() > 1) {
    throw Error(ErrorCode::AmbiguousLeftProjection,
                "several left projections for " + ring_.format(x) + ": " + list_elements(ring_, found.candidates),
                with_front(x, found.candidates));
  }
  return found.candidates.front();
}

Index ProjectionAnalysis::rp_via_star(Index x) const { return rp(ring_.mul(ring_.star(x), x)); }

Index ProjectionAnalysis::central_cover(Index x) const {
  if (auto h = find_central_cover(x)) return *h;
  throw Error(ErrorCode::NoCentralCover, "no central cover for " + ring_.format(x) + " in " + ring_.label(), {x});
}

ProjectionPoset projections(const StarRing& r) { return ProjectionPoset(r); }
Index rp(const StarRing& r, Index x) { return ProjectionAnalysis(r).rp(x); }
Index lp(const StarRing& r, Index x) { return ProjectionAnalysis(r).lp(x); }
Index rp_via_star(const StarRing& r, Index x) { return ProjectionAnalysis(r).rp_via_star(x); }
Index central_cover(const StarRing& r, Index x) { return ProjectionAnalysis(r).central_cover(x); }

Index largest_eigen_projection(const ScalarAlgebra& alg, const ProjectionAnalysis& analysis, Index a,
                               Index lambda, bool central_only) {
  const StarRing& r = alg.ring();
  if (lambda == StarRing::zero()) {
    throw Error(ErrorCode::HypothesisNotMet, "largest_eigen_projection needs a nonzero scalar");
  }
  const auto& poset = analysis.poset();
  std::vector<bool> members(poset.size(), false);
  std::vector<Index> candidates;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const auto& p = poset.items()[i];
    if (central_only && !p.central) continue;
    if (r.mul(a, p.element) == alg.act(lambda, p.element)) {
      members[i] = true;
      candidates.push_back(p.element);
    }
  }
  if (auto g = poset.greatest(members)) return poset.element(*g);
  throw Error(ErrorCode::NoGreatestElement,
              "no greatest " + std::string(central_only ? "central " : "") + "projection g with " + r.format(a) +
                  "·g = " + alg.scalars().format(lambda) + "·g; candidates " + list_elements(r, candidates),
              candidates);
}

std::optional<Index> ScaledBoundTable::bound_for(Index lambda) const {
  for (const auto& b : bounds) {
    if (b.lambda == lambda) return b.bound;
  }
  return std::nullopt;
}

namespace {

template <typename Support>
ScaledBoundTable scaled_bounds(const ScalarAlgebra& alg, const ProjectionAnalysis& analysis, Support&& support) {
  const StarRing& r = alg.ring();
  const auto& poset = analysis.poset();
  ScaledBoundTable table;
  for (Index lambda = 1; lambda < alg.scalars().order(); ++lambda) {
    std::vector<bool> upper(poset.size(), true);
    std::size_t remaining = poset.size();
    for (Index x = 0; x < r.order() && remaining > 0; ++x) {
      if (alg.act(lambda, x) != StarRing::zero()) continue;
      const Index f = support(x);
      const auto fpos = poset.position(f);
      for (std::size_t i = 0; i < poset.size(); ++i) {
        if (upper[i] && !(fpos && poset.leq(*fpos, i))) {
          upper[i] = false;
          --remaining;
        }
      }
      if (remaining == 0) {
        table.failure = std::pair{lambda, x};
        return table;
      }
    }
    if (auto least = poset.least(upper)) {
      table.bounds.push_back({lambda, poset.element(*least), true});
    } else {
      const auto first = static_cast<std::size_t>(std::find(upper.begin(), upper.end(), true) - upper.begin());
      table.bounds.push_back({lambda, poset.element(first), false});
    }
  }
  return table;
}

}  // namespace

ScaledBoundTable condition3_witnesses(const ScalarAlgebra& alg, const ProjectionAnalysis& analysis) {
  return scaled_bounds(alg, analysis, [&](Index x) { return analysis.lp(x); });
}

ScaledBoundTable condition_beta_witnesses(const ScalarAlgebra& alg, const ProjectionAnalysis& analysis) {
  return scaled_bounds(alg, analysis, [&](Index x) { return analysis.central_cover(x); });
}

}  // namespace starlab
