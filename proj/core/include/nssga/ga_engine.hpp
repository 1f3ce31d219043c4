#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nssga/rng.hpp"

namespace nssga {

/// Closed interval [lower, upper].
struct Interval {
  double lower;
  double upper;

  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
  double width() const noexcept { return upper - lower; }
};

/// Per-dimension closed search box.
class Bounds {
 public:
  /// Throws ConfigError unless lower < upper (and both finite) in every dimension.
  explicit Bounds(std::vector<Interval> intervals);

  std::size_t size() const noexcept { return intervals_.size(); }
  const Interval& operator[](std::size_t i) const noexcept { return intervals_[i]; }
  std::span<const Interval> intervals() const noexcept { return intervals_; }

  bool contains(std::span<const double> point) const noexcept;

  /// Affine map from the unit cube onto the box.
  std::vector<double> from_unit(std::span<const double> unit) const;

 private:
  std::vector<Interval> intervals_;
};

struct Gene {
  std::vector<double> values;
  std::optional<double> fitness;  // empty until evaluated

  friend bool operator==(const Gene&, const Gene&) = default;
};

/// GA hyperparameters. Defaults follow the published experiment settings except
/// population_size and max_generations, which callers pick per workflow.
struct GaConfig {
  std::size_t population_size = 512;  // multiple of 4
  std::size_t max_generations = 5000;
  std::size_t elite_count = 3;
  std::size_t tournament_size = 3;
  double mutation_rate_min = 0.2;
  double mutation_rate_max = 0.5;
  std::size_t returning_genes = 64;
  std::uint64_t rng_seed = 0;
  std::size_t stagnation_window = 50;
  /// Blend weights are drawn from [-alpha, 1 + alpha] intersected with the
  /// bound-feasible range.
  double blend_alpha = 1.0;
  /// Chance that a child uses one weight for all dimensions (a point on the
  /// line through its parents) instead of an independent weight per dimension.
  double line_blend_probability = 0.5;
  /// alpha for those single-weight children.
  double line_blend_alpha = 2.0;
  /// Worker threads for fitness evaluation; 0 means hardware concurrency.
  /// Never changes results.
  std::size_t threads = 1;

  /// Throws ConfigError describing the first violated invariant.
  void validate() const;
};

using FitnessFn = std::function<double(std::span<const double>)>;

struct GaResult {
  Gene best;                  // all-time best
  std::vector<Gene> winners;  // final top half, fitness-descending
  std::size_t generations_run = 0;
  /// Best fitness after generation 0, 1, ..., generations_run. Nondecreasing.
  std::vector<double> best_fitness_history;

  friend bool operator==(const GaResult&, const GaResult&) = default;
};

/// Views into a fitness-sorted population.
struct Partition {
  std::span<const Gene> elite;
  std::vector<const Gene*> winners_female;  // winner ranks 0, 2, 4, ...
  std::vector<const Gene*> winners_male;    // winner ranks 1, 3, 5, ...
  std::span<const Gene> losers;
};

/// Generation-0 population: the injected genes first (fitness cleared), then
/// Sobol points 1, 2, ... mapped onto the box.
std::vector<Gene> init_population(const GaConfig& config, const Bounds& bounds,
                                  std::span<const Gene> injected);

/// Stable sort by fitness, best first. Every gene must be evaluated.
void sort_by_fitness(std::vector<Gene>& population);

/// Throws ConfigError if the population is not sorted best-first, has an
/// unevaluated gene, or its size is not a multiple of 4.
Partition partition(std::span<const Gene> population, const GaConfig& config);

/// Draws k distinct members uniformly and returns the fittest (earliest on ties).
const Gene& tournament_select(std::span<const Gene* const> pool, std::size_t k, Rng& rng);

/// The weights mu for which mu * ma + (1 - mu) * pa stays inside `bound`.
/// When ma == pa every weight is feasible and an unbounded interval is returned.
Interval feasible_blend_weights(double ma, double pa, const Interval& bound) noexcept;

/// feasible_blend_weights intersected with [-alpha, 1 + alpha]. Always contains [0, 1].
Interval blend_weight_range(double ma, double pa, const Interval& bound, double alpha) noexcept;

/// mu * ma + (1 - mu) * pa.
inline double blend_value(double ma, double pa, double mu) noexcept {
  return mu * ma + (1.0 - mu) * pa;
}

struct BlendSettings {
  double alpha = 1.0;
  double line_probability = 0.0;
  double line_alpha = 2.0;
};

/// Eshelman-Shaffer blending with independent weights per child and dimension,
/// drawn so both children always lie inside the bounds. With probability
/// line_probability a child instead takes a single weight shared by all
/// dimensions, drawn from the intersection of the per-dimension ranges (capped
/// by line_alpha).
std::pair<Gene, Gene> blend(const Gene& ma, const Gene& pa, const Bounds& bounds, Rng& rng,
                            const BlendSettings& settings = {});

/// Resamples each component uniformly inside its bounds with probability `rate`.
/// The returned gene keeps its fitness only if nothing changed.
Gene mutate(const Gene& gene, double rate, const Bounds& bounds, Rng& rng);

/// Minimum rate while the best fitness keeps improving; once it has stalled for
/// more than stagnation_window generations the rate ramps linearly, reaching the
/// maximum at twice the window.
double adapt_mutation_rate(std::span<const double> best_fitness_history, const GaConfig& config);

/// Number of trailing generations without strict improvement of the best fitness.
std::size_t stagnation_streak(std::span<const double> best_fitness_history) noexcept;

/// Runs exactly config.max_generations generations. Deterministic in config.rng_seed.
/// Throws FitnessError (carrying the gene) if fitness_fn throws or returns NaN.
GaResult evolve(const GaConfig& config, const Bounds& bounds, const FitnessFn& fitness_fn,
                std::span<const Gene> injected = {});

}  // namespace nssga
