#include "nssga/calibration.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "nssga/errors.hpp"

namespace nssga {

namespace presets {

Bounds ois_nss() {
  return Bounds({{0.0, 0.10}, {-0.10, 1.0}, {-2.0, 2.0}, {0.0, 2.0}, {0.0, 4.0}, {4.0, 30.0}});
}

Bounds ois_ns() { return Bounds({{0.0, 0.10}, {-0.10, 1.0}, {-2.0, 2.0}, {0.0, 30.0}}); }

Bounds usd_nss() {
  return Bounds({{0.0, 0.10}, {-1.0, 4.0}, {-2.0, 4.0}, {-2.0, 8.0}, {0.0, 6.0}, {6.0, 30.0}});
}

Bounds by_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ois") return ois_nss();
  if (lower == "ois-ns") return ois_ns();
  if (lower == "usd") return usd_nss();
  throw ConfigError("unknown bounds preset '" + std::string(name) +
                    "', expected ois, ois-ns or usd");
}

}  // namespace presets

namespace {

std::vector<std::size_t> shape_dimensions(ModelKind kind) {
  if (kind == ModelKind::NS) return {3};
  return {4, 5};
}

// Top genes with duplicate value vectors removed, preserving fitness order.
std::vector<Gene> distinct_top(std::span<const Gene> sorted, std::size_t limit) {
  std::vector<Gene> out;
  for (const Gene& g : sorted) {
    if (out.size() >= limit) break;
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const Gene& o) { return o.values == g.values; });
    if (!seen) out.push_back(g);
  }
  return out;
}

// Scores a gene as the better of itself and the same gene with least-squares
// betas from the normal equations (at most 4x4). Both scores come from one pass
// over the loadings and match CurveObjective bit for bit.
class BetaProjector {
 public:
  BetaProjector(ModelKind kind, const TermStructure& market, const Bounds& box)
      : kind_(kind), betas_(beta_count(kind)), box_(box) {
    for (const TermPoint& p : market.points()) {
      tenors_.push_back(p.tenor);
      rates_.push_back(p.rate);
    }
  }

  // Writes the better parameter vector to `out` (which may alias `gene`) and
  // returns its fitness.
  double best(std::span<const double> gene, std::span<double> out) const {
    const std::size_t n = tenors_.size();
    std::vector<std::array<double, 4>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      const SpotBasis first = ns_spot_basis(tenors_[i], gene[betas_]);
      rows[i] = {first.level, first.slope, first.curvature, 0.0};
      if (kind_ == ModelKind::NSS) rows[i][3] = ns_spot_basis(tenors_[i], gene[betas_ + 1]).curvature;
    }
    const double own = fitness(rows, gene);
    if (out.data() != gene.data()) std::copy(gene.begin(), gene.end(), out.begin());

    using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;
    using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
    const auto k = static_cast<Eigen::Index>(betas_);
    Matrix normal = Matrix::Zero(k, k);
    Vector rhs = Vector::Zero(k);
    for (std::size_t i = 0; i < n; ++i) {
      for (Eigen::Index a = 0; a < k; ++a) {
        rhs(a) += rows[i][a] * rates_[i];
        for (Eigen::Index b = 0; b <= a; ++b) normal(a, b) += rows[i][a] * rows[i][b];
      }
    }
    const Vector solved = normal.selfadjointView<Eigen::Lower>().ldlt().solve(rhs);

    std::array<double, 4> candidate{};
    for (std::size_t d = 0; d < betas_; ++d) {
      candidate[d] = solved(static_cast<Eigen::Index>(d));
      if (!std::isfinite(candidate[d]) || !box_[d].contains(candidate[d])) return own;
    }
    const double projected = fitness(rows, candidate);
    if (!(projected > own)) return own;
    std::copy_n(candidate.begin(), betas_, out.begin());
    return projected;
  }

 private:
  // Same operation order as spot_rate and the objective's residual sum.
  double fitness(const std::vector<std::array<double, 4>>& rows,
                 std::span<const double> betas) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double rate = betas[0] + betas[1] * rows[i][1] + betas[2] * rows[i][2];
      if (kind_ == ModelKind::NSS) rate += betas[3] * rows[i][3];
      const double r = rate - rates_[i];
      sum += r * r;
    }
    return -sum;
  }

  ModelKind kind_;
  std::size_t betas_;
  const Bounds& box_;
  std::vector<Tenor> tenors_;
  std::vector<double> rates_;
};

bool betas_within(std::span<const double> betas, const Bounds& bounds) {
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!bounds[i].contains(betas[i])) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(BetaFit fit) noexcept {
  return fit == BetaFit::Evolved ? "ga" : "lsq";
}

BetaFit parse_beta_fit(std::string_view text) {
  if (text == "ga") return BetaFit::Evolved;
  if (text == "lsq") return BetaFit::LeastSquares;
  throw ConfigError("unknown beta fit '" + std::string(text) + "', expected ga or lsq");
}

void RollingPlan::validate() const {
  if (subsequent_day_generations < 1) {
    throw ConfigError("subsequent-day generations must be at least 1");
  }
  if (first_day_generations < subsequent_day_generations) {
    throw ConfigError("first-day generations (" + std::to_string(first_day_generations) +
                      ") must be at least the subsequent-day generations (" +
                      std::to_string(subsequent_day_generations) + ")");
  }
}

void check_bounds_for(ModelKind kind, const Bounds& bounds) {
  if (bounds.size() != parameter_count(kind)) {
    throw ConfigError(std::string(to_string(kind)) + " needs " +
                      std::to_string(parameter_count(kind)) + " bound intervals, got " +
                      std::to_string(bounds.size()));
  }
  for (std::size_t d : shape_dimensions(kind)) {
    if (bounds[d].upper <= kMinShapeParameter) {
      throw ConfigError("shape parameter bounds must admit positive values");
    }
  }
}

Bounds search_bounds(ModelKind kind, const Bounds& bounds) {
  check_bounds_for(kind, bounds);
  std::vector<Interval> intervals(bounds.intervals().begin(), bounds.intervals().end());
  for (std::size_t d : shape_dimensions(kind)) {
    intervals[d].lower = std::max(intervals[d].lower, kMinShapeParameter);
  }
  return Bounds(std::move(intervals));
}

CalibrationResult calibrate(const TermStructure& market, ModelKind kind, const Bounds& bounds,
                            const GaConfig& config, std::span<const Gene> injected,
                            BetaFit beta_fit) {
  const Bounds box = search_bounds(kind, bounds);
  const CurveObjective objective(kind, market);
  const BetaProjector projector(kind, market, box);
  const bool project = beta_fit == BetaFit::LeastSquares;
  GaResult ga = evolve(
      config, box,
      [&](std::span<const double> gene) {
        if (!project) return objective(gene);
        std::array<double, 6> scratch{};
        return projector.best(gene, std::span<double>(scratch.data(), gene.size()));
      },
      injected);

  // Genes carry their evolved betas; report the parameters that earned the score.
  if (project) {
    ga.best.fitness = projector.best(ga.best.values, ga.best.values);
    for (Gene& g : ga.winners) g.fitness = projector.best(g.values, g.values);
  }
  const CurveParams params = CurveParams::from_vector(kind, ga.best.values);
  return CalibrationResult{
      .date = market.as_of(),
      .params = params,
      .errors = fit_errors(params, market),
      .generations = ga.generations_run,
      .best_fitness = *ga.best.fitness,
      .winners = distinct_top(ga.winners, config.returning_genes),
  };
}

std::vector<CalibrationResult> calibrate_series(std::span<const TermStructure> markets,
                                                ModelKind kind, const Bounds& bounds,
                                                const GaConfig& config, const RollingPlan& plan,
                                                const SeriesObserver& observer,
                                                BetaFit beta_fit) {
  if (markets.empty()) {
    throw InputError("rolling calibration needs at least one market");
  }
  plan.validate();
  if (plan.carry_count > config.returning_genes) {
    throw ConfigError("carry count " + std::to_string(plan.carry_count) +
                      " exceeds the configured returning genes " +
                      std::to_string(config.returning_genes));
  }
  for (std::size_t i = 1; i < markets.size(); ++i) {
    if (std::chrono::sys_days{markets[i].as_of()} <= std::chrono::sys_days{markets[i - 1].as_of()}) {
      throw InputError("markets must be in ascending date order, " +
                       to_iso_string(markets[i].as_of()) + " follows " +
                       to_iso_string(markets[i - 1].as_of()));
    }
  }

  std::vector<CalibrationResult> results;
  results.reserve(markets.size());
  for (std::size_t i = 0; i < markets.size(); ++i) {
    GaConfig day = config;
    std::span<const Gene> carried;
    if (i == 0) {
      day.max_generations = plan.first_day_generations;
    } else {
      day.max_generations = plan.subsequent_day_generations;
      const auto& previous = results.back().winners;
      carried = std::span<const Gene>(previous).first(std::min(plan.carry_count, previous.size()));
    }
    results.push_back(calibrate(markets[i], kind, bounds, day, carried, beta_fit));
    if (observer) observer(i, results.back());
  }
  return results;
}

std::vector<double> least_squares_betas(ModelKind kind, const TermStructure& market, double lambda,
                                        double kappa) {
  const std::vector<Tenor> tenors = market.tenors();
  const SpotLoadings loadings(kind, tenors, lambda, kappa);
  Eigen::MatrixXd design(loadings.rows(), loadings.cols());
  Eigen::VectorXd rates(loadings.rows());
  for (std::size_t i = 0; i < loadings.rows(); ++i) {
    for (std::size_t j = 0; j < loadings.cols(); ++j) {
      design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = loadings(i, j);
    }
    rates(static_cast<Eigen::Index>(i)) = market.points()[i].rate;
  }
  const Eigen::VectorXd betas = design.colPivHouseholderQr().solve(rates);
  return {betas.data(), betas.data() + betas.size()};
}

std::vector<CalibrationResult> reuse_shape_params(const CalibrationResult& base,
                                                  std::span<const TermStructure> markets,
                                                  const Bounds& bounds, const GaConfig& config) {
  if (base.params.kind() != ModelKind::NSS) {
    throw ConfigError("shape-parameter reuse needs an NSS base calibration");
  }
  check_bounds_for(ModelKind::NSS, bounds);
  const double lambda = base.params.lambda();
  const double kappa = base.params.kappa();

  std::vector<CalibrationResult> results;
  results.reserve(markets.size());
  for (const TermStructure& market : markets) {
    std::vector<double> betas = least_squares_betas(ModelKind::NSS, market, lambda, kappa);
    std::size_t generations = 0;
    std::vector<Gene> winners;

    if (!betas_within(betas, bounds)) {
      const Bounds beta_box(std::vector<Interval>(bounds.intervals().begin(),
                                                  bounds.intervals().begin() + 4));
      const std::vector<Tenor> tenors = market.tenors();
      const SpotLoadings loadings(ModelKind::NSS, tenors, lambda, kappa);
      const auto points = market.points();
      const GaResult ga = evolve(
          config, beta_box,
          [&](std::span<const double> gene) {
            double sum = 0.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
              const double r = loadings.spot(i, gene) - points[i].rate;
              sum += r * r;
            }
            return -sum;
          });
      betas = ga.best.values;
      generations = ga.generations_run;
      winners = distinct_top(ga.winners, config.returning_genes);
    }

    const CurveParams params =
        CurveParams::nss(betas[0], betas[1], betas[2], betas[3], lambda, kappa);
    results.push_back(CalibrationResult{
        .date = market.as_of(),
        .params = params,
        .errors = fit_errors(params, market),
        .generations = generations,
        .best_fitness = fitness(params, market),
        .winners = std::move(winners),
    });
  }
  return results;
}

}  // namespace nssga
