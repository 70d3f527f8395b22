#include "esids/es.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "esids/error.hpp"
#include "esids/text.hpp"

namespace esids {

Selection EsConfig::selection() const {
  return variant == EsVariant::mu_rho_comma_lambda ? Selection::comma
                                                   : Selection::plus;
}

void EsConfig::validate() const {
  if (mu < 1) throw ConfigError("mu must be >= 1");
  if (rho < 1 || rho > mu) throw ConfigError("rho must satisfy 1 <= rho <= mu");
  if (lambda < 1) throw ConfigError("lambda must be >= 1");
  if (!(alpha > 1.0)) throw ConfigError("alpha must be > 1");
  if (!(sigma0 > 0.0)) throw ConfigError("sigma0 must be > 0");
  if (variant == EsVariant::mu_rho_comma_lambda && lambda < mu)
    throw ConfigError("comma selection needs lambda >= mu");
  if (variant == EsVariant::one_plus_one && (mu != 1 || rho != 1 || lambda != 1))
    throw ConfigError("one_plus_one fixes mu = rho = lambda = 1");
}

std::vector<Individual> init_population(const EsConfig& cfg, RandomStream& rng) {
  std::vector<Individual> pop(cfg.mu);
  for (auto& ind : pop) {
    for (auto& gene : ind.genome.genes) gene = rng.uniform01();
    ind.genome.sigma = cfg.sigma0;
    ind.birth_generation = 0;
  }
  return pop;
}

RuleGenome mutate(const RuleGenome& g, RandomStream& rng) {
  RuleGenome out = g;
  for (auto& gene : out.genes)
    gene = std::clamp(gene + g.sigma * rng.normal(), 0.0, 1.0);
  return out;
}

double adapt_sigma(double sigma, bool success, double alpha) {
  return success ? sigma * alpha : sigma * std::pow(alpha, -0.25);
}

RuleGenome recombine(std::span<const RuleGenome> parents) {
  RuleGenome child;
  child.sigma = 0.0;
  for (const auto& p : parents) {
    for (std::size_t i = 0; i < child.genes.size(); ++i)
      child.genes[i] += p.genes[i];
    child.sigma += p.sigma;
  }
  const auto n = static_cast<double>(parents.size());
  for (auto& gene : child.genes) gene /= n;
  child.sigma /= n;
  return child;
}

namespace {

// Pool order (parents before offspring) is the deterministic tie-break of
// last resort; younger individuals outrank older ones at equal fitness.
std::vector<Individual> top_mu(std::vector<const Individual*> pool,
                               std::size_t mu) {
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Individual& ia = *pool[a];
    const Individual& ib = *pool[b];
    if (ia.fitness() != ib.fitness()) return ia.fitness() > ib.fitness();
    if (ia.birth_generation != ib.birth_generation)
      return ia.birth_generation > ib.birth_generation;
    return a < b;
  });
  std::vector<Individual> next;
  next.reserve(mu);
  for (std::size_t i = 0; i < mu; ++i) next.push_back(*pool[order[i]]);
  return next;
}

}  // namespace

std::vector<Individual> select(const std::vector<Individual>& parents,
                               const std::vector<Individual>& offspring,
                               Selection scheme) {
  if (scheme == Selection::comma && offspring.size() < parents.size())
    throw ConfigError("comma selection needs lambda >= mu");
  std::vector<const Individual*> pool;
  if (scheme == Selection::plus)
    for (const auto& p : parents) pool.push_back(&p);
  for (const auto& o : offspring) pool.push_back(&o);
  return top_mu(std::move(pool), parents.size());
}

std::vector<EvalResult> evaluate_all(std::span<const RuleGenome> genomes,
                                     const GenomeEvaluator& evaluate,
                                     bool parallel) {
  std::vector<EvalResult> results(genomes.size());
  if (!parallel || genomes.size() < 2) {
    for (std::size_t i = 0; i < genomes.size(); ++i)
      results[i] = evaluate(genomes[i]);
    return results;
  }

  const std::size_t n_threads =
      std::min(genomes.size(),
               std::max<std::size_t>(2, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= genomes.size()) return;
        results[i] = evaluate(genomes[i]);
      }
    } catch (...) {
      const std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

namespace {

struct PopulationStats {
  double best = 0.0;
  double mean = 0.0;
  std::size_t best_index = 0;
};

PopulationStats stats_of(const std::vector<Individual>& pop) {
  PopulationStats s;
  s.best = pop.front().fitness();
  double total = 0.0;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const double f = pop[i].fitness();
    total += f;
    if (f > s.best) {
      s.best = f;
      s.best_index = i;
    }
  }
  s.mean = total / static_cast<double>(pop.size());
  return s;
}

}  // namespace

EvolutionResult run_evolution(const EsConfig& cfg,
                              const GenomeEvaluator& evaluate) {
  cfg.validate();
  RandomStream rng(cfg.seed);

  auto parents = init_population(cfg, rng);
  {
    std::vector<RuleGenome> genomes;
    genomes.reserve(parents.size());
    for (const auto& p : parents) genomes.push_back(p.genome);
    auto evals = evaluate_all(genomes, evaluate, cfg.parallel_eval);
    for (std::size_t i = 0; i < parents.size(); ++i) parents[i].eval = evals[i];
  }

  EvolutionResult result;
  result.evaluations = parents.size();
  double sigma = cfg.sigma0;

  auto initial = stats_of(parents);
  result.trace.push_back(TraceRow{0, initial.best, initial.mean, sigma, 0});
  result.best = parents[initial.best_index];
  std::size_t last_improvement = 0;

  for (std::size_t gen = 1; gen <= cfg.max_generations; ++gen) {
    const double parent_best = stats_of(parents).best;

    // All draws for this generation happen here, before any parallel work.
    std::vector<RuleGenome> drafts;
    drafts.reserve(cfg.lambda);
    for (std::size_t j = 0; j < cfg.lambda; ++j) {
      const auto picks = sample_distinct(cfg.mu, cfg.rho, rng);
      RuleGenome child;
      if (cfg.rho >= 2) {
        std::vector<RuleGenome> chosen;
        chosen.reserve(picks.size());
        for (const auto idx : picks) chosen.push_back(parents[idx].genome);
        child = recombine(chosen);
      } else {
        child = parents[picks[0]].genome;
      }
      child.sigma = sigma;
      drafts.push_back(mutate(child, rng));
    }

    const auto evals = evaluate_all(drafts, evaluate, cfg.parallel_eval);
    result.evaluations += drafts.size();

    std::vector<Individual> offspring(drafts.size());
    std::size_t successes = 0;
    for (std::size_t j = 0; j < drafts.size(); ++j) {
      offspring[j] = Individual{drafts[j], evals[j], gen};
      if (evals[j].fitness >= parent_best) ++successes;
    }

    parents = select(parents, offspring, cfg.selection());
    sigma = adapt_sigma(sigma, 5 * successes >= cfg.lambda, cfg.alpha);

    const auto now = stats_of(parents);
    result.trace.push_back(TraceRow{gen, now.best, now.mean, sigma, successes});
    if (now.best > result.best.fitness()) {
      result.best = parents[now.best_index];
      last_improvement = gen;
    }
    if (cfg.stagnation_window > 0 &&
        gen - last_improvement >= cfg.stagnation_window) {
      result.terminated_by = TerminationReason::stagnation;
      return result;
    }
  }
  result.terminated_by = TerminationReason::max_generations;
  return result;
}

EvolutionResult run_evolution(const EsConfig& cfg, const Dataset& ds,
                              const FitnessConfig& fcfg) {
  fcfg.validate();
  const auto bounds = table1_bounds();
  return run_evolution(cfg, [&](const RuleGenome& g) {
    return evaluate_rule(decode(g, bounds), ds, fcfg);
  });
}

std::string trace_to_csv(std::span<const TraceRow> trace) {
  std::string out = "generation,best_fitness,mean_fitness,sigma,successes\n";
  for (const auto& row : trace) {
    out += std::to_string(row.generation);
    out += ',';
    out += format_double(row.best_fitness);
    out += ',';
    out += format_double(row.mean_fitness);
    out += ',';
    out += format_double(row.sigma);
    out += ',';
    out += std::to_string(row.successes);
    out += '\n';
  }
  return out;
}

}  // namespace esids
