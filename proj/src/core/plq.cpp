#include "epigauss/core/plq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "epigauss/numerics/error.hpp"

namespace epigauss {
namespace {

constexpr double kInf = Plq::kInf;

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b))); }

bool same_piece(const QuadPiece& p, const QuadPiece& q) {
  return close(p.a, q.a, 1e-13) && close(p.b, q.b, 1e-13) && close(p.c, q.c, 1e-13);
}

// A point strictly inside [lo, hi] usable to pick the active piece.
double probe(double lo, double hi) {
  if (std::isfinite(lo) && std::isfinite(hi)) return 0.5 * (lo + hi);
  if (std::isfinite(lo)) return lo + 1.0;
  if (std::isfinite(hi)) return hi - 1.0;
  return 0.0;
}

}  // namespace

Plq::Plq() : breaks_{-kInf, kInf}, pieces_{QuadPiece{}} {}

Plq::Plq(std::vector<double> breaks, std::vector<QuadPiece> pieces) : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (pieces_.empty() || breaks_.size() != pieces_.size() + 1)
    throw Error(ErrorKind::invalid_argument, "piecewise quadratic needs one more break than pieces");
  for (double b : breaks_)
    if (std::isnan(b)) throw Error(ErrorKind::invalid_argument, "NaN breakpoint");
  if (single_point()) {
    if (!std::isfinite(lo()) || pieces_.size() != 1)
      throw Error(ErrorKind::invalid_argument, "one-point domain must be a finite single piece");
    return;
  }
  if (lo() == kInf || hi() == -kInf) throw Error(ErrorKind::invalid_argument, "empty domain");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1])) throw Error(ErrorKind::unsorted_input, "breakpoints must increase strictly");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const QuadPiece& p = pieces_[i];
    if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c) || p.a < 0.0)
      throw Error(ErrorKind::invalid_argument, "piece " + std::to_string(i) + " is not a convex quadratic");
  }
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const double x = breaks_[i];
    const double left = pieces_[i - 1].value(x), right = pieces_[i].value(x);
    if (!close(left, right, 1e-7))
      throw Error(ErrorKind::invalid_argument, "discontinuity at breakpoint " + std::to_string(x));
    if (pieces_[i - 1].slope(x) > pieces_[i].slope(x) + 1e-9 * (1.0 + std::abs(pieces_[i].slope(x))))
      throw Error(ErrorKind::invalid_argument, "slope decreases at breakpoint " + std::to_string(x));
  }
  simplify();
}

Plq Plq::quadratic(double k2, double a, double k, double lo, double hi) {
  if (k2 < 0.0 || a < 0.0) throw Error(ErrorKind::invalid_argument, "quadratic profile needs nonnegative coefficients");
  if (lo > hi) throw Error(ErrorKind::invalid_argument, "empty profile domain");
  const QuadPiece left{k2, -a, k}, right{k2, a, k};
  if (lo == hi) return Plq({lo, hi}, {lo < 0.0 ? left : right});
  if (lo < 0.0 && 0.0 < hi) return Plq({lo, 0.0, hi}, {left, right});
  return Plq({lo, hi}, {hi <= 0.0 ? left : right});
}

Plq Plq::indicator(double lo, double hi, double k) { return quadratic(0.0, 0.0, k, lo, hi); }

Plq Plq::max_affine(const std::vector<double>& slopes, const std::vector<double>& intercepts, double lo, double hi) {
  if (slopes.empty() || slopes.size() != intercepts.size())
    throw Error(ErrorKind::invalid_argument, "max_affine needs matching nonempty slope and intercept lists");
  if (lo > hi) throw Error(ErrorKind::invalid_argument, "empty profile domain");
  std::vector<std::size_t> order(slopes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return slopes[i] != slopes[j] ? slopes[i] < slopes[j] : intercepts[i] > intercepts[j];
  });
  struct Line {
    double s, b;
  };
  auto cross_x = [](const Line& p, const Line& q) { return (p.b - q.b) / (q.s - p.s); };
  std::vector<Line> hull;
  for (std::size_t idx : order) {
    const Line l{slopes[idx], intercepts[idx]};
    if (!hull.empty() && hull.back().s == l.s) continue;
    while (hull.size() >= 2 && cross_x(hull[hull.size() - 2], l) <= cross_x(hull[hull.size() - 2], hull.back()))
      hull.pop_back();
    hull.push_back(l);
  }
  std::vector<double> xs{-kInf};
  for (std::size_t k = 1; k < hull.size(); ++k) xs.push_back(cross_x(hull[k - 1], hull[k]));
  xs.push_back(kInf);

  if (lo == hi) {
    std::size_t k = 0;
    while (k + 1 < hull.size() && xs[k + 1] <= lo) ++k;
    return Plq({lo, hi}, {QuadPiece{0.0, hull[k].s, hull[k].b}});
  }
  std::vector<double> breaks{lo};
  std::vector<QuadPiece> pieces;
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const double a = std::max(xs[k], lo), b = std::min(xs[k + 1], hi);
    if (!(a < b)) continue;
    pieces.push_back({0.0, hull[k].s, hull[k].b});
    breaks.push_back(b);
  }
  return Plq(std::move(breaks), std::move(pieces));
}

std::size_t Plq::piece_at(double x) const {
  if (pieces_.size() == 1) return 0;
  const auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, x);
  return static_cast<std::size_t>(it - (breaks_.begin() + 1));
}

ExtReal Plq::value(double x) const {
  if (x < lo() || x > hi()) return ExtReal::infinity();
  return pieces_[piece_at(x)].value(x);
}

double Plq::derivative(double x) const {
  if (single_point()) throw Error(ErrorKind::not_differentiable_here, "derivative on a one-point domain");
  if (x < lo() || x > hi()) throw Error(ErrorKind::not_differentiable_here, "derivative outside the domain");
  if (x == hi()) return pieces_.back().slope(x);
  return pieces_[piece_at(x)].slope(x);
}

std::vector<double> Plq::kinks() const { return {breaks_.begin() + 1, breaks_.end() - 1}; }

double Plq::growth() const {
  double right = kInf, left = kInf;
  if (hi() == kInf) right = pieces_.back().a > 0.0 ? kInf : pieces_.back().b;
  if (lo() == -kInf) left = pieces_.front().a > 0.0 ? kInf : -pieces_.front().b;
  return std::min(left, right);
}

Plq Plq::conjugate() const {
  if (single_point()) {
    const double p = lo();
    return Plq({-kInf, kInf}, {QuadPiece{0.0, p, -pieces_[0].value(p)}});
  }
  struct Segment {
    double lo, hi;
    QuadPiece q;
  };
  std::vector<Segment> segs;
  std::vector<std::pair<double, double>> points;  // zero-width candidates (slope, value)
  auto add = [&](double slo, double shi, QuadPiece q) {
    if (slo < shi) segs.push_back({slo, shi, q});
    else if (slo == shi && std::isfinite(slo)) points.emplace_back(slo, q.value(slo));
  };

  const std::size_t m = pieces_.size();
  for (std::size_t i = 0; i <= m; ++i) {
    const double x = breaks_[i];
    if (std::isfinite(x)) {
      const double left = i == 0 ? -kInf : pieces_[i - 1].slope(x);
      const double right = i == m ? kInf : pieces_[i].slope(x);
      const double fx = pieces_[i == m ? m - 1 : i].value(x);
      add(left, std::max(left, right), QuadPiece{0.0, x, -fx});
    }
    if (i == m) break;
    const QuadPiece& p = pieces_[i];
    const double xl = breaks_[i], xr = breaks_[i + 1];
    const double sl = std::isfinite(xl) ? p.slope(xl) : (p.a > 0.0 ? -kInf : p.b);
    const double sr = std::isfinite(xr) ? p.slope(xr) : (p.a > 0.0 ? kInf : p.b);
    if (p.a > 0.0) {
      add(sl, sr, QuadPiece{1.0 / p.a, -p.b / p.a, p.b * p.b / (2.0 * p.a) - p.c});
    } else if (!std::isfinite(xl) && !std::isfinite(xr)) {
      points.emplace_back(p.b, -p.c);  // affine on R: conjugate lives at one slope
    } else if (!std::isfinite(xl) || !std::isfinite(xr)) {
      // affine half-line: the conjugate's domain closes at slope b with value -c
      points.emplace_back(p.b, -p.c);
    }
  }

  if (segs.empty()) {
    if (points.empty()) throw Error(ErrorKind::degenerate_input, "conjugate has empty domain");
    return Plq({points.front().first, points.front().first}, {QuadPiece{0.0, 0.0, points.front().second}});
  }
  std::vector<double> breaks{segs.front().lo};
  std::vector<QuadPiece> pieces;
  for (const Segment& s : segs) {
    pieces.push_back(s.q);
    breaks.push_back(s.hi);
  }
  // Adjacent segments share endpoints by construction; snap roundoff gaps.
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i) breaks[i] = std::max(breaks[i], breaks[i - 1]);
  std::vector<double> b2{breaks.front()};
  std::vector<QuadPiece> p2;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(breaks[i + 1] > b2.back())) continue;
    p2.push_back(pieces[i]);
    b2.push_back(breaks[i + 1]);
  }
  Plq out;
  out.breaks_ = std::move(b2);
  out.pieces_ = std::move(p2);
  out.simplify();
  return out;
}

Plq Plq::right_scaled(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "right scaling needs t > 0");
  Plq out = *this;
  for (double& b : out.breaks_) b *= t;
  for (QuadPiece& p : out.pieces_) p = {p.a / t, p.b, p.c * t};
  return out;
}

Plq Plq::multiplied(double s) const {
  if (!(s > 0.0)) throw Error(ErrorKind::invalid_argument, "multiplier must be positive");
  Plq out = *this;
  for (QuadPiece& p : out.pieces_) p = {p.a * s, p.b * s, p.c * s};
  return out;
}

Plq Plq::shifted(double k) const {
  Plq out = *this;
  for (QuadPiece& p : out.pieces_) p.c += k;
  return out;
}

Plq Plq::operator+(const Plq& g) const {
  double a = std::max(lo(), g.lo()), b = std::min(hi(), g.hi());
  if (a > b) {
    if (a - b > 1e-12 * (1.0 + std::abs(a))) throw Error(ErrorKind::invalid_argument, "sum of functions with disjoint domains");
    b = a;
  }
  if (a == b) {
    const double p = a;
    const double fp = pieces_[piece_at(std::clamp(p, lo(), hi()))].value(p);
    const double gp = g.pieces_[g.piece_at(std::clamp(p, g.lo(), g.hi()))].value(p);
    return Plq({p, p}, {QuadPiece{0.0, 0.0, fp + gp}});
  }
  std::vector<double> br{a, b};
  for (double k : kinks())
    if (a < k && k < b) br.push_back(k);
  for (double k : g.kinks())
    if (a < k && k < b) br.push_back(k);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  std::vector<QuadPiece> pieces;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double x = probe(br[i], br[i + 1]);
    const QuadPiece& p = pieces_[piece_at(x)];
    const QuadPiece& q = g.pieces_[g.piece_at(x)];
    pieces.push_back({p.a + q.a, p.b + q.b, p.c + q.c});
  }
  Plq out;
  out.breaks_ = std::move(br);
  out.pieces_ = std::move(pieces);
  out.simplify();
  return out;
}

Plq Plq::inf_convolution(const Plq& g, double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "inf-convolution needs t > 0");
  return (conjugate() + g.conjugate().multiplied(t)).conjugate();
}

void Plq::simplify() {
  if (single_point()) return;
  std::vector<double> br{breaks_.front()};
  std::vector<QuadPiece> ps{pieces_.front()};
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (same_piece(ps.back(), pieces_[i])) continue;
    br.push_back(breaks_[i]);
    ps.push_back(pieces_[i]);
  }
  br.push_back(breaks_.back());
  breaks_ = std::move(br);
  pieces_ = std::move(ps);
}

}  // namespace epigauss
