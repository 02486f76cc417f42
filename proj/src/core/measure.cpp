#include "epigauss/core/measure.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "epigauss/numerics/error.hpp"

namespace epigauss {
namespace {

constexpr double kTol = 1e-12;

bool same_point(const Vec& a, const Vec& b, double sign) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - sign * b[k]) > kTol * std::max(1.0, std::abs(a[k]))) return false;
  return true;
}

bool is_origin(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::abs(v) <= kTol; });
}

}  // namespace

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

std::vector<double> ValidatedMeasure::pair_weights() const {
  std::vector<double> w(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    w[p] = measure.weights[pairs[p][0]];
    if (pairs[p][1] != pairs[p][0]) w[p] += measure.weights[pairs[p][1]];
  }
  return w;
}

ValidatedMeasure validate_measure(const DiscreteMeasure& mu) {
  if (mu.n == 0) throw Error(ErrorKind::invalid_argument, "measure dimension must be positive");
  if (mu.points.size() != mu.weights.size())
    throw Error(ErrorKind::dimension_mismatch, "measure has " + std::to_string(mu.points.size()) + " points but " +
                                                   std::to_string(mu.weights.size()) + " weights");
  if (mu.points.empty()) throw Error(ErrorKind::lower_dimensional, "empty measure spans nothing");
  for (std::size_t i = 0; i < mu.points.size(); ++i) {
    if (mu.points[i].size() != mu.n)
      throw Error(ErrorKind::dimension_mismatch, "point " + std::to_string(i) + " has dimension " +
                                                     std::to_string(mu.points[i].size()) + ", expected " + std::to_string(mu.n));
    for (double v : mu.points[i])
      if (!std::isfinite(v)) throw Error(ErrorKind::invalid_argument, "point " + std::to_string(i) + " is not finite");
    if (!(mu.weights[i] > 0.0) || !std::isfinite(mu.weights[i]))
      throw Error(ErrorKind::nonpositive_weight, "weight " + std::to_string(i) + " is not a positive finite number");
  }

  // Merge repeated atoms so pairing sees each location once.
  std::vector<Vec> pts;
  std::vector<double> wts;
  std::vector<std::size_t> first_index;
  for (std::size_t i = 0; i < mu.points.size(); ++i) {
    auto it = std::find_if(pts.begin(), pts.end(), [&](const Vec& p) { return same_point(p, mu.points[i], 1.0); });
    if (it != pts.end()) {
      wts[static_cast<std::size_t>(it - pts.begin())] += mu.weights[i];
    } else {
      pts.push_back(mu.points[i]);
      wts.push_back(mu.weights[i]);
      first_index.push_back(i);
    }
  }

  ValidatedMeasure out;
  out.measure.n = mu.n;
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const std::size_t p = out.pairs.size();
    if (is_origin(pts[i])) {
      const std::size_t at = out.measure.points.size();
      out.measure.points.push_back(Vec(mu.n, 0.0));
      out.measure.weights.push_back(wts[i]);
      out.pairs.push_back({at, at});
      out.pair_of.push_back(p);
      continue;
    }
    std::size_t j = pts.size();
    for (std::size_t k = i + 1; k < pts.size(); ++k)
      if (!used[k] && same_point(pts[k], pts[i], -1.0)) {
        j = k;
        break;
      }
    if (j == pts.size())
      throw Error(ErrorKind::not_even, "point " + std::to_string(first_index[i]) + " has no mirror image -x");
    if (std::abs(wts[i] - wts[j]) > kTol * std::max(1.0, std::max(wts[i], wts[j])))
      throw Error(ErrorKind::not_even, "points " + std::to_string(first_index[i]) + " and " + std::to_string(first_index[j]) +
                                           " are mirror images with unequal weights");
    used[j] = true;
    const std::size_t at = out.measure.points.size();
    Vec neg(pts[i].size());
    for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -pts[i][k];
    out.measure.points.push_back(pts[i]);
    out.measure.points.push_back(std::move(neg));
    out.measure.weights.push_back(wts[i]);
    out.measure.weights.push_back(wts[i]);
    out.pairs.push_back({at, at + 1});
    out.pair_of.push_back(p);
    out.pair_of.push_back(p);
  }

  Eigen::MatrixXd m(static_cast<Eigen::Index>(out.measure.points.size()), static_cast<Eigen::Index>(mu.n));
  for (std::size_t i = 0; i < out.measure.points.size(); ++i)
    for (std::size_t k = 0; k < mu.n; ++k) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = out.measure.points[i][k];
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  std::size_t rank = 0;
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (top > 0.0 && sv(k) > 1e-10 * top) ++rank;
  if (rank < mu.n)
    throw Error(ErrorKind::lower_dimensional, "support has rank " + std::to_string(rank) + " in R^" + std::to_string(mu.n) +
                                                  "; the measure lies in a lower-dimensional subspace");
  return out;
}

}  // namespace epigauss
