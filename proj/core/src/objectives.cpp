#include "nssga/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nssga/errors.hpp"

namespace nssga {

namespace {

double sum_of_squared_residuals(const CurveParams& params, std::span<const TermPoint> points) {
  double sum = 0.0;
  for (const TermPoint& p : points) {
    const double r = spot_rate(params, p.tenor) - p.rate;
    sum += r * r;
  }
  return sum;
}

}  // namespace

TermStructure::TermStructure(Date as_of, std::vector<TermPoint> points, Ordering ordering)
    : as_of_(as_of), points_(std::move(points)) {
  const std::string when = to_iso_string(as_of_);
  if (points_.empty()) {
    throw InputError("term structure for " + when + " has no points");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const TermPoint& p = points_[i];
    if (!(p.tenor.years() > 0.0)) {
      throw InputError("term structure for " + when + ": tenor at point " + std::to_string(i) +
                       " must be positive");
    }
    if (!std::isfinite(p.rate)) {
      throw InputError("term structure for " + when + ": non-finite rate at point " +
                       std::to_string(i));
    }
    if (i > 0) {
      const double prev = points_[i - 1].tenor.years();
      const bool ordered = ordering == Ordering::StrictlyIncreasing ? prev < p.tenor.years()
                                                                    : prev <= p.tenor.years();
      if (!ordered) {
        throw InputError("term structure for " + when + ": tenors out of order at point " +
                         std::to_string(i));
      }
    }
  }
}

std::vector<Tenor> TermStructure::tenors() const {
  std::vector<Tenor> out;
  out.reserve(points_.size());
  for (const TermPoint& p : points_) out.push_back(p.tenor);
  return out;
}

std::vector<double> residuals(const CurveParams& params, const TermStructure& market) {
  std::vector<double> out;
  out.reserve(market.size());
  for (const TermPoint& p : market.points()) {
    out.push_back(spot_rate(params, p.tenor) - p.rate);
  }
  return out;
}

FitErrors fit_errors(std::span<const double> residuals) {
  double sum = 0.0;
  double worst = 0.0;
  for (double r : residuals) {
    sum += r * r;
    worst = std::max(worst, std::abs(r));
  }
  return {std::sqrt(sum), worst};
}

FitErrors fit_errors(const CurveParams& params, const TermStructure& market) {
  return fit_errors(residuals(params, market));
}

double fitness(const CurveParams& params, const TermStructure& market) {
  return -sum_of_squared_residuals(params, market.points());
}

CurveObjective::CurveObjective(ModelKind kind, const TermStructure& market)
    : kind_(kind), points_(market.points().begin(), market.points().end()) {}

double CurveObjective::operator()(std::span<const double> gene) const {
  return -sum_of_squared_residuals(CurveParams::from_vector(kind_, gene), points_);
}

}  // namespace nssga
