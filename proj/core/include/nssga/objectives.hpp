#pragma once

#include <span>
#include <vector>

#include "nssga/curve_models.hpp"
#include "nssga/date.hpp"

namespace nssga {

struct TermPoint {
  Tenor tenor;
  double rate;  // decimal, e.g. 0.009231 for 0.9231%
};

/// Dated market observations to fit.
///
/// Points are nonempty, finite, have strictly positive tenors and are ordered by
/// tenor. Equal tenors are allowed (two bonds sharing a maturity); strictly
/// increasing order can be requested at construction for curve-style data.
class TermStructure {
 public:
  enum class Ordering { NonDecreasing, StrictlyIncreasing };

  /// Throws InputError when the invariants do not hold.
  TermStructure(Date as_of, std::vector<TermPoint> points,
                Ordering ordering = Ordering::StrictlyIncreasing);

  Date as_of() const noexcept { return as_of_; }
  std::span<const TermPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::vector<Tenor> tenors() const;

 private:
  Date as_of_;
  std::vector<TermPoint> points_;
};

/// Tracking errors of a fitted curve.
struct FitErrors {
  double l2 = 0.0;    // Euclidean norm of the residual vector (not normalised)
  double linf = 0.0;  // max |residual|
};

/// r_j = spot_rate(params, tau_j) - rate_j, in market order.
std::vector<double> residuals(const CurveParams& params, const TermStructure& market);

FitErrors fit_errors(std::span<const double> residuals);
FitErrors fit_errors(const CurveParams& params, const TermStructure& market);

/// -(sum of squared residuals). Zero is the best attainable value.
double fitness(const CurveParams& params, const TermStructure& market);

/// The same objective packaged for the GA: decodes a gene and scores it without
/// allocating. Produces bitwise the same value as fitness().
class CurveObjective {
 public:
  CurveObjective(ModelKind kind, const TermStructure& market);

  double operator()(std::span<const double> gene) const;

  ModelKind kind() const noexcept { return kind_; }

 private:
  ModelKind kind_;
  std::vector<TermPoint> points_;
};

}  // namespace nssga
