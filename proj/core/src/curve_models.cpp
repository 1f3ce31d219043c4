#include "nssga/curve_models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "nssga/errors.hpp"

namespace nssga {

namespace {

void require_positive_shape(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

// Below this x, 1 - e^{-x} loses more than ~1e-14 relative precision and
// expm1 takes over.
constexpr double kSmallArgument = 1e-2;

// Loadings for x = tau / shape >= 0.
SpotBasis basis_at(double x) noexcept {
  if (x == 0.0) {
    return {1.0, 1.0, 0.0};
  }
  const double decay = std::exp(-x);
  const double slope = x < kSmallArgument ? -std::expm1(-x) / x : (1.0 - decay) / x;
  return {1.0, slope, slope - decay};
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  return kind == ModelKind::NS ? "ns" : "nss";
}

ModelKind parse_model_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ns") return ModelKind::NS;
  if (lower == "nss") return ModelKind::NSS;
  throw ConfigError("unknown model '" + std::string(text) + "', expected ns or nss");
}

Tenor::Tenor(double years) : years_(years) {
  if (!(years >= 0.0) || !std::isfinite(years)) {
    throw DomainError("tenor must be a nonnegative number of years, got " +
                      std::to_string(years));
  }
}

Tenor Tenor::from_days(long days) { return Tenor(static_cast<double>(days) / 365.0); }

CurveParams::CurveParams(ModelKind kind, std::array<double, 4> beta, double lambda, double kappa)
    : kind_(kind), beta_(beta), lambda_(lambda), kappa_(kappa) {
  require_positive_shape(lambda_, "lambda");
  if (kind_ == ModelKind::NSS) {
    require_positive_shape(kappa_, "kappa");
  }
}

CurveParams CurveParams::ns(double beta0, double beta1, double beta2, double lambda) {
  return CurveParams(ModelKind::NS, {beta0, beta1, beta2, 0.0}, lambda, 0.0);
}

CurveParams CurveParams::nss(double beta0, double beta1, double beta2, double beta3,
                             double lambda, double kappa) {
  return CurveParams(ModelKind::NSS, {beta0, beta1, beta2, beta3}, lambda, kappa);
}

CurveParams CurveParams::from_vector(ModelKind kind, std::span<const double> values) {
  if (values.size() != parameter_count(kind)) {
    throw ConfigError("expected " + std::to_string(parameter_count(kind)) + " parameters for " +
                      std::string(to_string(kind)) + ", got " + std::to_string(values.size()));
  }
  if (kind == ModelKind::NS) {
    return ns(values[0], values[1], values[2], values[3]);
  }
  return nss(values[0], values[1], values[2], values[3], values[4], values[5]);
}

std::vector<double> CurveParams::to_vector() const {
  if (kind_ == ModelKind::NS) {
    return {beta_[0], beta_[1], beta_[2], lambda_};
  }
  return {beta_[0], beta_[1], beta_[2], beta_[3], lambda_, kappa_};
}

SpotBasis ns_spot_basis(Tenor tau, double lambda) {
  require_positive_shape(lambda, "lambda");
  return basis_at(tau.years() / lambda);
}

double spot_rate(const CurveParams& params, Tenor tau) {
  const SpotBasis first = basis_at(tau.years() / params.lambda());
  double rate = params.beta0() + params.beta1() * first.slope + params.beta2() * first.curvature;
  if (params.kind() == ModelKind::NSS) {
    rate += params.beta3() * basis_at(tau.years() / params.kappa()).curvature;
  }
  return rate;
}

double forward_rate(const CurveParams& params, Tenor tau) {
  const double x = tau.years() / params.lambda();
  const double decay = std::exp(-x);
  double rate = params.beta0() + params.beta1() * decay + params.beta2() * x * decay;
  if (params.kind() == ModelKind::NSS) {
    const double y = tau.years() / params.kappa();
    rate += params.beta3() * y * std::exp(-y);
  }
  return rate;
}

SpotLoadings::SpotLoadings(ModelKind kind, std::span<const Tenor> tenors, double lambda,
                           double kappa)
    : rows_(tenors.size()), cols_(beta_count(kind)), data_(rows_ * cols_) {
  require_positive_shape(lambda, "lambda");
  if (kind == ModelKind::NSS) {
    require_positive_shape(kappa, "kappa");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    const SpotBasis first = basis_at(tenors[i].years() / lambda);
    double* row = data_.data() + i * cols_;
    row[0] = first.level;
    row[1] = first.slope;
    row[2] = first.curvature;
    if (kind == ModelKind::NSS) {
      row[3] = basis_at(tenors[i].years() / kappa).curvature;
    }
  }
}

double SpotLoadings::spot(std::size_t row, std::span<const double> betas) const noexcept {
  const double* loadings = data_.data() + row * cols_;
  double rate = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    rate += loadings[j] * betas[j];
  }
  return rate;
}

}  // namespace nssga
