#include "esids/rulebase.hpp"

#include <fstream>

#include "esids/error.hpp"
#include "esids/rng.hpp"
#include "esids/text.hpp"

namespace esids {

void CoveringConfig::validate() const {
  if (max_rules < 1) throw ConfigError("max-rules must be >= 1");
  if (!(target_coverage >= 0.0 && target_coverage <= 1.0))
    throw ConfigError("target-coverage must be in [0, 1]");
  if (min_new_coverage < 1) throw ConfigError("min-new-coverage must be >= 1");
}

CoveringResult sequential_covering(const CoveringConfig& ccfg,
                                   const EsConfig& ecfg,
                                   const FitnessConfig& fcfg,
                                   const Dataset& ds) {
  ccfg.validate();
  ecfg.validate();
  fcfg.validate();

  const auto& records = ds.records();
  std::vector<bool> covered(records.size(), false);

  CoveringResult result;
  result.total_anomalous = ds.n_anomalous();

  const auto bounds = table1_bounds();
  for (std::size_t iter = 0;
       iter < ccfg.max_rules && result.coverage() < ccfg.target_coverage;
       ++iter) {
    std::vector<ConnectionRecord> residual;
    residual.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].label == Label::normal || !covered[i])
        residual.push_back(records[i]);
    }

    auto run_cfg = ecfg;
    run_cfg.seed = derive_seed(ecfg.seed, iter);
    const auto run =
        run_evolution(run_cfg, Dataset(std::move(residual)), fcfg);
    const auto rule = decode(run.best.genome, bounds);

    std::size_t new_coverage = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].label == Label::anomalous && !covered[i] &&
          matches(rule, records[i]))
        ++new_coverage;
    }

    CoveringIteration log;
    log.iteration = iter;
    log.seed = run_cfg.seed;
    log.new_coverage = new_coverage;
    log.accepted = new_coverage >= ccfg.min_new_coverage;
    log.trace = run.trace;

    if (!log.accepted) {
      log.covered_after = result.covered;
      result.iterations.push_back(std::move(log));
      break;
    }

    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].label == Label::anomalous && matches(rule, records[i]))
        covered[i] = true;
    }
    result.covered += new_coverage;
    log.covered_after = result.covered;
    result.iterations.push_back(std::move(log));

    RuleEntry entry;
    entry.rule = rule;
    const auto& eval = *run.best.eval;
    entry.provenance = RuleProvenance{eval.fitness, eval.matched_anomalous,
                                      eval.matched_normal,
                                      run.best.birth_generation, run_cfg.seed};
    result.rulebase.rules.push_back(std::move(entry));
  }
  return result;
}

std::vector<Verdict> apply_rulebase(const RuleBase& rb, const Dataset& ds) {
  std::vector<Verdict> verdicts(ds.records().size());
  for (std::size_t i = 0; i < ds.records().size(); ++i) {
    for (std::size_t r = 0; r < rb.rules.size(); ++r) {
      if (matches(rb.rules[r].rule, ds.records()[i])) {
        verdicts[i] = Verdict{true, r};
        break;
      }
    }
  }
  return verdicts;
}

std::vector<Rule> rules_of(const RuleBase& rb) {
  std::vector<Rule> rules;
  rules.reserve(rb.rules.size());
  for (const auto& entry : rb.rules) rules.push_back(entry.rule);
  return rules;
}

DetectionMetrics rulebase_metrics(const RuleBase& rb, const Dataset& ds) {
  const auto rules = rules_of(rb);
  return detection_metrics(rules, ds);
}

Json rulebase_to_json(const RuleBase& rb) {
  Json j;
  j["version"] = 1;
  j["rules"] = Json::array();
  for (const auto& entry : rb.rules) {
    Json je = rule_to_json(entry.rule);
    Json jp;
    jp["fitness"] = entry.provenance.fitness;
    jp["matched_anomalous"] = entry.provenance.matched_anomalous;
    jp["matched_normal"] = entry.provenance.matched_normal;
    jp["generation_found"] = entry.provenance.generation_found;
    jp["seed"] = entry.provenance.seed;
    je["provenance"] = std::move(jp);
    j["rules"].push_back(std::move(je));
  }
  return j;
}

namespace {

std::uint64_t require_count(const Json& j, const std::string& path,
                            const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(path + ": missing field '" + key + "'");
  if (!it->is_number_unsigned())
    throw ParseError(path + "." + key + ": expected a non-negative integer");
  return it->get<std::uint64_t>();
}

RuleProvenance provenance_from_json(const Json& j, const std::string& path) {
  const auto it = j.find("provenance");
  if (it == j.end())
    throw ParseError(path + ": missing field 'provenance'");
  if (!it->is_object())
    throw ParseError(path + ".provenance: expected an object");
  const auto p = path + ".provenance";
  RuleProvenance prov;
  const auto fit = it->find("fitness");
  if (fit == it->end())
    throw ParseError(p + ": missing field 'fitness'");
  if (!fit->is_number())
    throw ParseError(p + ".fitness: expected a number");
  prov.fitness = fit->get<double>();
  prov.matched_anomalous = require_count(*it, p, "matched_anomalous");
  prov.matched_normal = require_count(*it, p, "matched_normal");
  prov.generation_found = require_count(*it, p, "generation_found");
  prov.seed = require_count(*it, p, "seed");
  return prov;
}

}  // namespace

RuleBase rulebase_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("rulebase: expected an object");
  const auto version = j.find("version");
  if (version == j.end())
    throw ParseError("rulebase: missing field 'version'");
  if (!version->is_number_integer() || *version != 1)
    throw ParseError("rulebase.version: expected 1");
  const auto rules = j.find("rules");
  if (rules == j.end())
    throw ParseError("rulebase: missing field 'rules'");
  if (!rules->is_array())
    throw ParseError("rulebase.rules: expected an array");

  RuleBase rb;
  for (std::size_t i = 0; i < rules->size(); ++i) {
    const auto& je = (*rules)[i];
    const auto path = "rules[" + std::to_string(i) + "]";
    if (!je.is_object()) throw ParseError(path + ": expected an object");
    RuleEntry entry;
    entry.rule = rule_from_json(je, path);
    entry.provenance = provenance_from_json(je, path);
    for (std::size_t k = 0; k < rb.rules.size(); ++k) {
      const auto& prev = rb.rules[k].rule;
      if (prev.src_ip_range == entry.rule.src_ip_range &&
          prev.dst_ip_range == entry.rule.dst_ip_range &&
          prev.dst_port_range == entry.rule.dst_port_range) {
        throw ParseError(path + ": bounds duplicate rules[" +
                         std::to_string(k) + "]");
      }
    }
    rb.rules.push_back(std::move(entry));
  }
  return rb;
}

std::string rulebase_to_string(const RuleBase& rb) {
  return rulebase_to_json(rb).dump(2) + "\n";
}

void save_rulebase_file(const std::string& path, const RuleBase& rb) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << rulebase_to_string(rb);
  if (!out) throw IoError("write failed for '" + path + "'");
}

RuleBase load_rulebase_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("rulebase: " + std::string(e.what()));
  }
  return rulebase_from_json(j);
}

std::string covering_trace_csv(
    const std::vector<CoveringIteration>& iterations) {
  std::string out =
      "iteration,generation,best_fitness,mean_fitness,sigma,successes\n";
  for (const auto& it : iterations) {
    for (const auto& row : it.trace) {
      out += std::to_string(it.iteration);
      out += ',';
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
  }
  return out;
}

}  // namespace esids
