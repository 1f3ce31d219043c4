#include "nssga/ga_engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "nssga/errors.hpp"
#include "nssga/sobol.hpp"

namespace nssga {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string dim_label(std::size_t i) { return "dimension " + std::to_string(i); }

void check_gene(const Gene& gene, const Bounds& bounds, const char* what) {
  if (gene.values.size() != bounds.size()) {
    throw ConfigError(std::string(what) + " has " + std::to_string(gene.values.size()) +
                      " components, bounds have " + std::to_string(bounds.size()));
  }
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (!bounds[i].contains(gene.values[i])) {
      throw ConfigError(std::string(what) + " is outside the bounds in " + dim_label(i));
    }
  }
}

double evaluate_one(const FitnessFn& fn, const Gene& gene) {
  double value;
  try {
    value = fn(gene.values);
  } catch (const std::exception& e) {
    throw FitnessError(gene.values, std::string("fitness evaluation failed: ") + e.what());
  }
  if (std::isnan(value)) {
    throw FitnessError(gene.values, "fitness evaluation returned NaN");
  }
  return value;
}

void evaluate_range(const FitnessFn& fn, std::span<Gene> genes) {
  for (Gene& g : genes) {
    if (!g.fitness) g.fitness = evaluate_one(fn, g);
  }
}

// Scores every unevaluated gene. Workers own disjoint slices; on failure the
// lowest failing slice is reported so the error does not depend on scheduling.
void evaluate_population(const FitnessFn& fn, std::vector<Gene>& population,
                         std::size_t requested_threads) {
  std::size_t threads = requested_threads == 0 ? std::thread::hardware_concurrency()
                                               : requested_threads;
  threads = std::clamp<std::size_t>(threads, 1, population.size());
  if (threads == 1) {
    evaluate_range(fn, population);
    return;
  }
  const std::size_t chunk = (population.size() + threads - 1) / threads;
  std::vector<std::exception_ptr> failures(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(population.size(), t * chunk);
      const std::size_t end = std::min(population.size(), begin + chunk);
      workers.emplace_back([&, t, begin, end] {
        try {
          evaluate_range(fn, std::span<Gene>(population).subspan(begin, end - begin));
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

}  // namespace

Bounds::Bounds(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) {
    throw ConfigError("bounds must have at least one dimension");
  }
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const Interval& iv = intervals_[i];
    if (!std::isfinite(iv.lower) || !std::isfinite(iv.upper) || !(iv.lower < iv.upper)) {
      throw ConfigError("bounds " + dim_label(i) + ": need finite lower < upper, got [" +
                        std::to_string(iv.lower) + ", " + std::to_string(iv.upper) + "]");
    }
  }
}

bool Bounds::contains(std::span<const double> point) const noexcept {
  if (point.size() != intervals_.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!intervals_[i].contains(point[i])) return false;
  }
  return true;
}

std::vector<double> Bounds::from_unit(std::span<const double> unit) const {
  if (unit.size() != intervals_.size()) {
    throw ConfigError("unit point dimension does not match bounds");
  }
  std::vector<double> out(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) {
    out[i] = intervals_[i].lower + unit[i] * intervals_[i].width();
  }
  return out;
}

void GaConfig::validate() const {
  if (population_size == 0 || population_size % 4 != 0) {
    throw ConfigError("population size must be a positive multiple of 4, got " +
                      std::to_string(population_size));
  }
  if (elite_count == 0 || elite_count >= population_size / 2) {
    throw ConfigError("elite count must be in [1, population/2), got " +
                      std::to_string(elite_count));
  }
  if (tournament_size == 0 || tournament_size > population_size / 4) {
    throw ConfigError("tournament size must be in [1, population/4], got " +
                      std::to_string(tournament_size));
  }
  if (!(mutation_rate_min > 0.0 && mutation_rate_min < 1.0) ||
      !(mutation_rate_max > 0.0 && mutation_rate_max < 1.0)) {
    throw ConfigError("mutation rates must lie in (0, 1)");
  }
  if (mutation_rate_min > mutation_rate_max) {
    throw ConfigError("minimum mutation rate exceeds the maximum");
  }
  if (returning_genes > population_size / 2) {
    throw ConfigError("returning genes must not exceed population/2, got " +
                      std::to_string(returning_genes));
  }
  if (stagnation_window == 0) {
    throw ConfigError("stagnation window must be positive");
  }
  if (!(blend_alpha >= 0.0) || !std::isfinite(blend_alpha)) {
    throw ConfigError("blend alpha must be a nonnegative number");
  }
  if (!(line_blend_alpha >= 0.0) || !std::isfinite(line_blend_alpha)) {
    throw ConfigError("line blend alpha must be a nonnegative number");
  }
  if (!(line_blend_probability >= 0.0 && line_blend_probability <= 1.0)) {
    throw ConfigError("line blend probability must lie in [0, 1]");
  }
}

std::vector<Gene> init_population(const GaConfig& config, const Bounds& bounds,
                                  std::span<const Gene> injected) {
  config.validate();
  if (injected.size() > config.returning_genes) {
    throw ConfigError("cannot inject " + std::to_string(injected.size()) +
                      " genes, at most " + std::to_string(config.returning_genes) +
                      " returning genes are allowed");
  }
  std::vector<Gene> population;
  population.reserve(config.population_size);
  for (const Gene& g : injected) {
    check_gene(g, bounds, "injected gene");
    population.push_back(Gene{g.values, std::nullopt});
  }
  SobolSequence sobol(bounds.size());
  sobol.skip(1);
  while (population.size() < config.population_size) {
    population.push_back(Gene{bounds.from_unit(sobol.next()), std::nullopt});
  }
  return population;
}

void sort_by_fitness(std::vector<Gene>& population) {
  for (const Gene& g : population) {
    if (!g.fitness) throw ConfigError("cannot sort a population with unevaluated genes");
  }
  std::stable_sort(population.begin(), population.end(),
                   [](const Gene& a, const Gene& b) { return *a.fitness > *b.fitness; });
}

Partition partition(std::span<const Gene> population, const GaConfig& config) {
  if (population.empty() || population.size() % 4 != 0) {
    throw ConfigError("population size must be a positive multiple of 4");
  }
  if (config.elite_count >= population.size() / 2) {
    throw ConfigError("elite count must be smaller than half the population");
  }
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (!population[i].fitness) {
      throw ConfigError("partition needs evaluated genes, slot " + std::to_string(i) +
                        " is unevaluated");
    }
    if (i > 0 && *population[i].fitness > *population[i - 1].fitness) {
      throw ConfigError("partition needs a population sorted by fitness, slot " +
                        std::to_string(i) + " is out of order");
    }
  }
  const std::size_t half = population.size() / 2;
  Partition parts;
  parts.elite = population.first(config.elite_count);
  parts.losers = population.subspan(half);
  parts.winners_female.reserve(half / 2);
  parts.winners_male.reserve(half / 2);
  for (std::size_t rank = 0; rank < half; ++rank) {
    (rank % 2 == 0 ? parts.winners_female : parts.winners_male).push_back(&population[rank]);
  }
  return parts;
}

const Gene& tournament_select(std::span<const Gene* const> pool, std::size_t k, Rng& rng) {
  if (k == 0 || pool.size() < k) {
    throw ConfigError("tournament of size " + std::to_string(k) + " needs a pool of at least " +
                      std::to_string(k) + " genes, got " + std::to_string(pool.size()));
  }
  // k is tiny next to the pool, so rejecting repeats is cheap.
  constexpr std::size_t kInline = 16;
  std::size_t inline_drawn[kInline];
  std::vector<std::size_t> heap_drawn;
  std::size_t* drawn = inline_drawn;
  if (k > kInline) {
    heap_drawn.resize(k);
    drawn = heap_drawn.data();
  }
  std::size_t best = 0;
  for (std::size_t draw = 0; draw < k; ++draw) {
    std::size_t candidate;
    do {
      candidate = rng.below(pool.size());
    } while (std::find(drawn, drawn + draw, candidate) != drawn + draw);
    drawn[draw] = candidate;
    if (draw == 0) {
      best = candidate;
      continue;
    }
    const double fc = pool[candidate]->fitness.value_or(-kInfinity);
    const double fb = pool[best]->fitness.value_or(-kInfinity);
    if (fc > fb || (fc == fb && candidate < best)) best = candidate;
  }
  return *pool[best];
}

Interval feasible_blend_weights(double ma, double pa, const Interval& bound) noexcept {
  // child = pa + mu * (ma - pa)
  const double diff = ma - pa;
  if (diff == 0.0) return {-kInfinity, kInfinity};
  const double to_lower = (bound.lower - pa) / diff;
  const double to_upper = (bound.upper - pa) / diff;
  return diff > 0.0 ? Interval{to_lower, to_upper} : Interval{to_upper, to_lower};
}

Interval blend_weight_range(double ma, double pa, const Interval& bound, double alpha) noexcept {
  const Interval feasible = feasible_blend_weights(ma, pa, bound);
  return {std::max(feasible.lower, -alpha), std::min(feasible.upper, 1.0 + alpha)};
}

namespace {

// One weight for every dimension: the child lies on the line through both parents.
void blend_along_line(const Gene& ma, const Gene& pa, const Bounds& bounds, Rng& rng,
                      double alpha, std::vector<double>& child) {
  double lower = -alpha;
  double upper = 1.0 + alpha;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (ma.values[i] == pa.values[i]) continue;
    const Interval w = blend_weight_range(ma.values[i], pa.values[i], bounds[i], alpha);
    lower = std::max(lower, w.lower);
    upper = std::min(upper, w.upper);
  }
  const double mu = lower + rng.uniform() * (upper - lower);
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double m = ma.values[i];
    const double p = pa.values[i];
    child[i] = m == p ? m : std::clamp(blend_value(m, p, mu), bounds[i].lower, bounds[i].upper);
  }
}

void blend_per_dimension(const Gene& ma, const Gene& pa, const Bounds& bounds, Rng& rng,
                         double alpha, std::vector<double>& child) {
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double m = ma.values[i];
    const double p = pa.values[i];
    if (m == p) {
      child[i] = m;
      continue;
    }
    const Interval weights = blend_weight_range(m, p, bounds[i], alpha);
    const double mu = weights.lower + rng.uniform() * weights.width();
    // The weight range is exact; the clamp only absorbs last-ulp rounding of the product.
    child[i] = std::clamp(blend_value(m, p, mu), bounds[i].lower, bounds[i].upper);
  }
}

}  // namespace

std::pair<Gene, Gene> blend(const Gene& ma, const Gene& pa, const Bounds& bounds, Rng& rng,
                            const BlendSettings& settings) {
  const std::size_t dims = bounds.size();
  Gene first{std::vector<double>(dims), std::nullopt};
  Gene second{std::vector<double>(dims), std::nullopt};
  for (Gene* child : {&first, &second}) {
    if (settings.line_probability > 0.0 && rng.uniform() < settings.line_probability) {
      blend_along_line(ma, pa, bounds, rng, settings.line_alpha, child->values);
    } else {
      blend_per_dimension(ma, pa, bounds, rng, settings.alpha, child->values);
    }
  }
  return {std::move(first), std::move(second)};
}

Gene mutate(const Gene& gene, double rate, const Bounds& bounds, Rng& rng) {
  Gene out = gene;
  bool changed = false;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (rng.uniform() < rate) {
      out.values[i] = bounds[i].lower + rng.uniform_open() * bounds[i].width();
      changed = true;
    }
  }
  if (changed) out.fitness.reset();
  return out;
}

std::size_t stagnation_streak(std::span<const double> history) noexcept {
  std::size_t streak = 0;
  for (std::size_t i = history.size(); i > 1; --i) {
    if (history[i - 1] > history[i - 2]) break;
    ++streak;
  }
  return streak;
}

double adapt_mutation_rate(std::span<const double> history, const GaConfig& config) {
  if (history.empty()) {
    throw ConfigError("mutation rate adaptation needs a nonempty fitness history");
  }
  const auto streak = static_cast<double>(stagnation_streak(history));
  const auto window = static_cast<double>(config.stagnation_window);
  if (streak <= window) return config.mutation_rate_min;
  const double ramp = std::min(1.0, (streak - window) / window);
  return config.mutation_rate_min + ramp * (config.mutation_rate_max - config.mutation_rate_min);
}

GaResult evolve(const GaConfig& config, const Bounds& bounds, const FitnessFn& fitness_fn,
                std::span<const Gene> injected) {
  std::vector<Gene> population = init_population(config, bounds, injected);
  evaluate_population(fitness_fn, population, config.threads);
  sort_by_fitness(population);

  GaResult result;
  result.best = population.front();
  result.best_fitness_history.reserve(config.max_generations + 1);
  result.best_fitness_history.push_back(*result.best.fitness);

  const std::size_t n = config.population_size;
  const std::size_t half = n / 2;
  const std::size_t pairs = n / 4;
  const BlendSettings blend_settings{config.blend_alpha, config.line_blend_probability,
                                     config.line_blend_alpha};

  std::vector<Gene> next;
  next.reserve(n);
  for (std::size_t generation = 1; generation <= config.max_generations; ++generation) {
    const double rate = adapt_mutation_rate(result.best_fitness_history, config);
    const Partition parts = partition(population, config);

    next.clear();
    // Winners survive unchanged; the elite are the top of this block.
    next.insert(next.end(), population.begin(), population.begin() + half);
    for (std::size_t pair = 0; pair < pairs; ++pair) {
      Rng rng = Rng::stream(config.rng_seed, generation, pair);
      const Gene& mother = tournament_select(parts.winners_female, config.tournament_size, rng);
      const Gene& father = tournament_select(parts.winners_male, config.tournament_size, rng);
      auto [first, second] = blend(mother, father, bounds, rng, blend_settings);
      next.push_back(mutate(first, rate, bounds, rng));
      next.push_back(mutate(second, rate, bounds, rng));
    }

    evaluate_population(fitness_fn, next, config.threads);
    sort_by_fitness(next);
    population.swap(next);

    if (*population.front().fitness > *result.best.fitness) {
      result.best = population.front();
    }
    result.best_fitness_history.push_back(*result.best.fitness);
    result.generations_run = generation;
  }

  result.winners.assign(population.begin(), population.begin() + half);
  return result;
}

}  // namespace nssga
