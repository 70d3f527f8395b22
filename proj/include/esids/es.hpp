#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esids/fitness.hpp"
#include "esids/rng.hpp"
#include "esids/rule.hpp"

namespace esids {

enum class EsVariant { one_plus_one, mu_rho_plus_lambda, mu_rho_comma_lambda };
enum class Selection { plus, comma };
enum class TerminationReason { max_generations, stagnation };

struct EsConfig {
  EsVariant variant = EsVariant::one_plus_one;
  std::size_t mu = 1;
  std::size_t rho = 1;
  std::size_t lambda = 1;
  double alpha = 1.2;
  double sigma0 = kDefaultSigma0;
  std::size_t max_generations = 5000;
  std::size_t stagnation_window = 500;  // 0 disables the stagnation stop
  std::uint64_t seed = 0;
  bool parallel_eval = false;

  Selection selection() const;

  // Throws ConfigError: mu >= 1, 1 <= rho <= mu, lambda >= 1, alpha > 1,
  // sigma0 > 0; comma needs lambda >= mu; one_plus_one needs mu=rho=lambda=1.
  void validate() const;
};

struct Individual {
  RuleGenome genome;
  std::optional<EvalResult> eval;
  std::size_t birth_generation = 0;

  double fitness() const { return eval ? eval->fitness : 0.0; }
};

struct TraceRow {
  std::size_t generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double sigma = 0.0;
  std::size_t successes = 0;

  bool operator==(const TraceRow&) const = default;
};

struct EvolutionResult {
  Individual best;
  std::vector<TraceRow> trace;
  TerminationReason terminated_by = TerminationReason::max_generations;
  std::size_t evaluations = 0;
};

// Must be pure and safe to call concurrently.
using GenomeEvaluator = std::function<EvalResult(const RuleGenome&)>;

// mu individuals, genes uniform in [0,1] (6 draws each, in gene order),
// sigma = sigma0, not yet evaluated.
std::vector<Individual> init_population(const EsConfig& cfg, RandomStream& rng);

// Adds sigma x N(0,1) to each gene (6 normal draws, always consumed) and
// clamps back into [0,1]. sigma itself is left alone.
RuleGenome mutate(const RuleGenome& g, RandomStream& rng);

// One-fifth success rule: success -> sigma x alpha, failure ->
// sigma x alpha^(-1/4).
double adapt_sigma(double sigma, bool success, double alpha);

// Intermediate recombination: gene-wise and sigma-wise arithmetic mean.
RuleGenome recombine(std::span<const RuleGenome> parents);

// Top mu (= parents.size()) by fitness from parents+offspring (plus) or
// offspring alone (comma). Ties prefer the younger individual, then the
// earlier pool position, so an offspring matching its parent's fitness wins.
std::vector<Individual> select(const std::vector<Individual>& parents,
                               const std::vector<Individual>& offspring,
                               Selection scheme);

// Evaluates genomes by index; with parallel=true a small thread pool is used
// and results are identical to the sequential path.
std::vector<EvalResult> evaluate_all(std::span<const RuleGenome> genomes,
                                     const GenomeEvaluator& evaluate,
                                     bool parallel);

// Generation loop. All random draws happen on one seeded stream in a fixed
// order before offspring evaluation, so equal configs give bit-identical
// results regardless of parallel_eval.
EvolutionResult run_evolution(const EsConfig& cfg,
                              const GenomeEvaluator& evaluate);

// Scores decoded rules against the dataset.
EvolutionResult run_evolution(const EsConfig& cfg, const Dataset& ds,
                              const FitnessConfig& fcfg);

// Header + one row per generation:
// generation,best_fitness,mean_fitness,sigma,successes
std::string trace_to_csv(std::span<const TraceRow> trace);

}  // namespace esids
