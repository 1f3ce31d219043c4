#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace nssga {

enum class ModelKind { NS, NSS };

/// Free parameters: 4 for Nelson-Siegel, 6 for Nelson-Siegel-Svensson.
constexpr std::size_t parameter_count(ModelKind kind) noexcept {
  return kind == ModelKind::NS ? 4 : 6;
}

/// Number of linear (beta) coefficients: 3 for NS, 4 for NSS.
constexpr std::size_t beta_count(ModelKind kind) noexcept {
  return kind == ModelKind::NS ? 3 : 4;
}

std::string_view to_string(ModelKind kind) noexcept;

/// Accepts "ns" / "nss" in any case. Throws ConfigError otherwise.
ModelKind parse_model_kind(std::string_view text);

/// Time to maturity in years. Always nonnegative.
class Tenor {
 public:
  /// Throws DomainError for negative or non-finite years.
  explicit Tenor(double years);

  /// ACT/365 conversion from a day count.
  static Tenor from_days(long days);

  double years() const noexcept { return years_; }

  friend auto operator<=>(const Tenor&, const Tenor&) = default;

 private:
  double years_;
};

/// Nelson-Siegel(-Svensson) coefficients.
///
/// Vector layout (the GA gene order) is (beta0, beta1, beta2, lambda) for NS and
/// (beta0, beta1, beta2, beta3, lambda, kappa) for NSS. For NS, beta3 and kappa
/// are unused and held at zero.
class CurveParams {
 public:
  static CurveParams ns(double beta0, double beta1, double beta2, double lambda);
  static CurveParams nss(double beta0, double beta1, double beta2, double beta3, double lambda,
                         double kappa);

  /// Decodes a gene-ordered vector. Throws ConfigError on a size mismatch and
  /// DomainError on nonpositive shape parameters.
  static CurveParams from_vector(ModelKind kind, std::span<const double> values);

  std::vector<double> to_vector() const;

  ModelKind kind() const noexcept { return kind_; }
  double beta0() const noexcept { return beta_[0]; }
  double beta1() const noexcept { return beta_[1]; }
  double beta2() const noexcept { return beta_[2]; }
  double beta3() const noexcept { return beta_[3]; }
  double lambda() const noexcept { return lambda_; }
  double kappa() const noexcept { return kappa_; }

  /// The linear coefficients, size beta_count(kind()).
  std::span<const double> betas() const noexcept { return {beta_.data(), beta_count(kind_)}; }

  friend bool operator==(const CurveParams&, const CurveParams&) = default;

 private:
  CurveParams(ModelKind kind, std::array<double, 4> beta, double lambda, double kappa);

  ModelKind kind_;
  std::array<double, 4> beta_;
  double lambda_;
  double kappa_;
};

/// Spot-rate loadings (F0, F1, F2) of the Nelson-Siegel yield curve.
struct SpotBasis {
  double level;      // F0
  double slope;      // F1
  double curvature;  // F2
};

/// F0 = 1, F1 = (1 - e^{-x}) / x, F2 = F1 - e^{-x} with x = tau / lambda.
/// tau = 0 returns the analytic limit (1, 1, 0). Throws DomainError if lambda <= 0.
SpotBasis ns_spot_basis(Tenor tau, double lambda);

/// Spot (zero) rate R(tau) of the fitted curve.
double spot_rate(const CurveParams& params, Tenor tau);

/// Instantaneous forward rate f(tau) = d(tau R(tau)) / d tau.
double forward_rate(const CurveParams& params, Tenor tau);

/// Spot loadings of every tenor for fixed shape parameters, laid out row-major as
/// (F0, F1, F2[, F3]) per tenor. The spot curve for any betas is then the
/// row-wise dot product, so (lambda, kappa) can be reused across many beta sets.
class SpotLoadings {
 public:
  /// For NS pass kappa = 0 (ignored).
  SpotLoadings(ModelKind kind, std::span<const Tenor> tenors, double lambda, double kappa);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * cols_ + col];
  }

  /// Spot rate at tenor `row` for the given betas (size cols()).
  double spot(std::size_t row, std::span<const double> betas) const noexcept;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

}  // namespace nssga
