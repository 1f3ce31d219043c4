#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "nssga/curve_models.hpp"
#include "nssga/date.hpp"
#include "nssga/ga_engine.hpp"
#include "nssga/objectives.hpp"

namespace nssga {

/// Named bound presets.
namespace presets {

/// NSS bounds for smoothed OIS curves.
Bounds ois_nss();
/// NS bounds for OIS curves: the NSS betas with lambda over the union of the
/// NSS lambda and kappa ranges, [0, 30].
Bounds ois_ns();
/// Wider NSS bounds for raw USD bond yields.
Bounds usd_nss();

/// "ois", "ois-ns" or "usd". Throws ConfigError for unknown names.
Bounds by_name(std::string_view name);

}  // namespace presets

/// Lower bound substituted for a zero lower bound on lambda / kappa so the
/// search box never contains a degenerate curve.
inline constexpr double kMinShapeParameter = 1e-6;

/// How the betas of a candidate are scored. With LeastSquares each gene is also
/// tried with the least-squares betas for its (lambda, kappa); if those lie in
/// the bounds and fit better, the gene scores (and reports) that fit instead.
enum class BetaFit { Evolved, LeastSquares };

std::string_view to_string(BetaFit fit) noexcept;
/// "ga" or "lsq". Throws ConfigError.
BetaFit parse_beta_fit(std::string_view text);

struct CalibrationResult {
  Date date;
  CurveParams params;
  FitErrors errors;
  std::size_t generations = 0;
  double best_fitness = 0.0;
  /// Distinct top genes by fitness (at most GaConfig::returning_genes), for warm starts.
  std::vector<Gene> winners;
};

struct RollingPlan {
  std::size_t first_day_generations = 10'000;
  std::size_t subsequent_day_generations = 1'000;
  std::size_t carry_count = 64;

  /// first >= subsequent >= 1. Throws ConfigError.
  void validate() const;
};

/// Checks that `bounds` has parameter_count(kind) dimensions; throws ConfigError.
void check_bounds_for(ModelKind kind, const Bounds& bounds);

/// Bounds actually searched: shape parameter lower bounds raised to kMinShapeParameter.
Bounds search_bounds(ModelKind kind, const Bounds& bounds);

/// Fits one curve with config.max_generations generations.
CalibrationResult calibrate(const TermStructure& market, ModelKind kind, const Bounds& bounds,
                            const GaConfig& config, std::span<const Gene> injected = {},
                            BetaFit beta_fit = BetaFit::LeastSquares);

using SeriesObserver = std::function<void(std::size_t index, const CalibrationResult&)>;

/// Rolling calibration: day one runs cold for plan.first_day_generations; every
/// later day runs plan.subsequent_day_generations seeded with the previous
/// day's top plan.carry_count winners. Markets must be in ascending date order.
std::vector<CalibrationResult> calibrate_series(std::span<const TermStructure> markets,
                                                ModelKind kind, const Bounds& bounds,
                                                const GaConfig& config, const RollingPlan& plan,
                                                const SeriesObserver& observer = {},
                                                BetaFit beta_fit = BetaFit::LeastSquares);

/// Refits only the betas of each market, holding (lambda, kappa) at the base
/// result's values. Uses linear least squares; if that solution leaves the beta
/// bounds, falls back to a GA over the betas alone.
std::vector<CalibrationResult> reuse_shape_params(const CalibrationResult& base,
                                                  std::span<const TermStructure> markets,
                                                  const Bounds& bounds, const GaConfig& config);

/// Unconstrained least-squares betas for fixed shape parameters.
std::vector<double> least_squares_betas(ModelKind kind, const TermStructure& market, double lambda,
                                        double kappa);

}  // namespace nssga
