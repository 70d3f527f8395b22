// esids — evolve and apply intrusion-detection rules over connection records.
//
// Subcommands:
//   gen-data    scenario JSON -> labeled CSV dataset
//   evolve      labeled CSV -> rule base (JSON) + trace CSV + run manifest
//   detect      rule base + CSV -> per-record verdicts, DR/FPR when labeled
//   convert-ip  dotted quad <-> decimal, auto-detected
//
// Exit codes: 0 success, 1 unreadable/unwritable files or bad data rows,
// 2 usage or configuration errors (including malformed rule bases).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "esids/dataset_io.hpp"
#include "esids/error.hpp"
#include "esids/es.hpp"
#include "esids/fitness.hpp"
#include "esids/ip.hpp"
#include "esids/json.hpp"
#include "esids/rulebase.hpp"
#include "esids/synth.hpp"
#include "esids/text.hpp"

namespace {

using namespace esids;

struct EvolveArgs {
  std::string data_path;
  std::string out_dir = ".";
  std::string variant = "one_plus_one";
  std::string fitness = "penalized";
  std::string h_mode = "width";
  EsConfig es;
  FitnessConfig fc;
  CoveringConfig cc;
};

EsVariant parse_variant(const std::string& name) {
  if (name == "one_plus_one" || name == "1+1") return EsVariant::one_plus_one;
  if (name == "plus") return EsVariant::mu_rho_plus_lambda;
  if (name == "comma") return EsVariant::mu_rho_comma_lambda;
  throw ConfigError("unknown variant: " + name);
}

const char* variant_name(EsVariant v) {
  switch (v) {
    case EsVariant::one_plus_one: return "one_plus_one";
    case EsVariant::mu_rho_plus_lambda: return "plus";
    case EsVariant::mu_rho_comma_lambda: return "comma";
  }
  return "?";
}

Json manifest_json(const EvolveArgs& a) {
  Json m;
  m["command"] = "evolve";
  m["data"] = a.data_path;
  m["seed"] = a.es.seed;
  Json es;
  es["variant"] = variant_name(a.es.variant);
  es["mu"] = a.es.mu;
  es["rho"] = a.es.rho;
  es["lambda"] = a.es.lambda;
  es["alpha"] = a.es.alpha;
  es["sigma0"] = a.es.sigma0;
  es["max_generations"] = a.es.max_generations;
  es["stagnation_window"] = a.es.stagnation_window;
  es["parallel_eval"] = a.es.parallel_eval;
  m["es"] = es;
  Json fc;
  fc["h_mode"] = a.fc.h_mode == HMode::width ? "width" : "literal";
  fc["match_mode"] = a.fc.match_mode == MatchMode::paper ? "paper" : "penalized";
  fc["beta"] = a.fc.beta;
  fc["clamp_zero"] = a.fc.negative_floor == NegativeFloor::clamp_zero;
  m["fitness"] = fc;
  Json cc;
  cc["max_rules"] = a.cc.max_rules;
  cc["target_coverage"] = a.cc.target_coverage;
  cc["min_new_coverage"] = a.cc.min_new_coverage;
  m["covering"] = cc;
  Json outs;
  outs["rulebase"] = "rulebase.json";
  outs["trace"] = "trace.csv";
  m["outputs"] = outs;
  return m;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << body;
  if (!out) throw IoError("write failed: " + path);
}

int cmd_gen_data(const std::string& spec_path, const std::string& out_path) {
  ScenarioSpec spec;
  try {
    spec = load_scenario_file(spec_path);
    spec.validate();
  } catch (const IoError& e) {
    std::cerr << "esids gen-data: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {  // ParseError, ConfigError
    std::cerr << "esids gen-data: " << e.what() << "\n";
    return 2;
  }
  try {
    const SynthResult result = generate(spec);
    write_csv_file(out_path, result.dataset);
    const DatasetSummary s = summarize(result.dataset);
    std::cout << "records=" << result.dataset.size() << " normal=" << s.n_normal
              << " anomalous=" << s.n_anomalous
              << " relabeled=" << result.relabeled << "\n";
  } catch (const IoError& e) {
    std::cerr << "esids gen-data: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_evolve(const EvolveArgs& args_in) {
  EvolveArgs a = args_in;
  try {
    a.es.variant = parse_variant(a.variant);
    if (a.fitness == "paper") {
      a.fc.match_mode = MatchMode::paper;
    } else if (a.fitness == "penalized") {
      a.fc.match_mode = MatchMode::penalized;
    } else {
      throw ConfigError("unknown fitness mode: " + a.fitness);
    }
    if (a.h_mode == "width") {
      a.fc.h_mode = HMode::width;
    } else if (a.h_mode == "literal") {
      a.fc.h_mode = HMode::literal;
    } else {
      throw ConfigError("unknown h-mode: " + a.h_mode);
    }
    a.es.validate();
    a.fc.validate();
    a.cc.validate();
  } catch (const ConfigError& e) {
    std::cerr << "esids evolve: " << e.what() << "\n";
    return 2;
  }

  Dataset ds{{}};
  try {
    ds = load_dataset_file(a.data_path);
  } catch (const IoError& e) {
    std::cerr << "esids evolve: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "esids evolve: " << a.data_path << ": " << e.what() << "\n";
    return 1;
  }

  try {
    const CoveringResult cov = sequential_covering(a.cc, a.es, a.fc, ds);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    const auto in_dir = [&](const char* name) {
      return (fs::path(a.out_dir) / name).string();
    };
    save_rulebase_file(in_dir("rulebase.json"), cov.rulebase);
    write_text_file(in_dir("trace.csv"), covering_trace_csv(cov.iterations));
    write_text_file(in_dir("manifest.json"), manifest_json(a).dump(2) + "\n");

    const DetectionMetrics m = rulebase_metrics(cov.rulebase, ds);
    std::cout << "rules=" << cov.rulebase.rules.size()
              << " coverage=" << format_double(cov.coverage())
              << " detection_rate=" << format_double(m.detection_rate)
              << " false_positive_rate=" << format_double(m.false_positive_rate)
              << "\n";
  } catch (const IoError& e) {
    std::cerr << "esids evolve: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_detect(const std::string& rulebase_path, const std::string& data_path,
               const std::string& out_path) {
  RuleBase rb;
  try {
    rb = load_rulebase_file(rulebase_path);
  } catch (const IoError& e) {
    std::cerr << "esids detect: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "esids detect: " << rulebase_path << ": " << e.what() << "\n";
    return 2;
  }

  CsvData data{Dataset{{}}, true};
  try {
    data = load_csv_file(data_path, /*require_label=*/false);
  } catch (const IoError& e) {
    std::cerr << "esids detect: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "esids detect: " << data_path << ": " << e.what() << "\n";
    return 1;
  }

  const std::vector<Verdict> verdicts = apply_rulebase(rb, data.dataset);
  std::string csv = "row,flagged,rule\n";
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    csv += std::to_string(i + 1);
    csv += verdicts[i].flagged ? ",1," : ",0,";
    if (verdicts[i].rule_index) csv += std::to_string(*verdicts[i].rule_index);
    csv += "\n";
  }
  try {
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      write_text_file(out_path, csv);
    }
  } catch (const IoError& e) {
    std::cerr << "esids detect: " << e.what() << "\n";
    return 1;
  }

  if (data.labeled) {
    const DetectionMetrics m = rulebase_metrics(rb, data.dataset);
    std::cout << "detection_rate=" << format_double(m.detection_rate)
              << " false_positive_rate=" << format_double(m.false_positive_rate)
              << "\n";
  }
  return 0;
}

int cmd_convert_ip(const std::string& value) {
  try {
    if (value.find('.') != std::string::npos) {
      std::cout << ip_to_decimal(value) << "\n";
      return 0;
    }
    const auto parsed = parse_u64(value);
    if (!parsed || *parsed > 4294967295ULL) {
      throw ParseError("not a dotted quad or 32-bit decimal: " + value);
    }
    std::cout << decimal_to_ip(static_cast<std::uint32_t>(*parsed)) << "\n";
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "esids convert-ip: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolution-strategy rule mining for connection records"};
  app.require_subcommand(1);

  std::string spec_path, gen_out;
  auto* gen = app.add_subcommand("gen-data", "Generate a labeled CSV dataset");
  gen->add_option("spec", spec_path, "Scenario spec JSON")->required();
  gen->add_option("--out", gen_out, "Output CSV path")->required();

  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "Evolve a rule base by sequential covering");
  evolve->add_option("data", ev.data_path, "Labeled CSV dataset")->required();
  evolve->add_option("--out", ev.out_dir,
                     "Output directory for rulebase.json, trace.csv, manifest.json");
  evolve->add_option("--seed", ev.es.seed, "Base random seed");
  evolve->add_option("--variant", ev.variant, "one_plus_one | plus | comma");
  evolve->add_option("--mu", ev.es.mu, "Parent count");
  evolve->add_option("--rho", ev.es.rho, "Recombinants per offspring");
  evolve->add_option("--lambda", ev.es.lambda, "Offspring count");
  evolve->add_option("--alpha", ev.es.alpha, "Step-size change rate (> 1)");
  evolve->add_option("--sigma0", ev.es.sigma0, "Initial step size");
  evolve->add_option("--max-generations", ev.es.max_generations, "Generation cap");
  evolve->add_option("--stagnation", ev.es.stagnation_window,
                     "Stop after this many generations without improvement (0 = off)");
  evolve->add_option("--fitness", ev.fitness, "paper | penalized");
  evolve->add_option("--h-mode", ev.h_mode, "width | literal");
  evolve->add_option("--beta", ev.fc.beta, "Normal-match penalty weight");
  evolve->add_option("--max-rules", ev.cc.max_rules, "Covering iteration cap");
  evolve->add_option("--target-coverage", ev.cc.target_coverage,
                     "Stop once this fraction of anomalies is covered");
  evolve->add_option("--min-new-coverage", ev.cc.min_new_coverage,
                     "New anomalies a candidate rule must cover");
  evolve->add_flag("--parallel", ev.es.parallel_eval,
                   "Evaluate offspring on a thread pool (same results)");

  std::string rb_path, det_data, det_out;
  auto* detect = app.add_subcommand("detect", "Apply a rule base to a dataset");
  detect->add_option("rulebase", rb_path, "Rule base JSON")->required();
  detect->add_option("data", det_data, "CSV dataset (label column optional)")->required();
  detect->add_option("--out", det_out, "Verdict CSV path (default: standard output)");

  std::string ip_value;
  auto* conv = app.add_subcommand("convert-ip", "Convert dotted quad <-> decimal");
  conv->add_option("value", ip_value, "IP address, either form")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*gen) return cmd_gen_data(spec_path, gen_out);
  if (*evolve) return cmd_evolve(ev);
  if (*detect) return cmd_detect(rb_path, det_data, det_out);
  if (*conv) return cmd_convert_ip(ip_value);
  return 2;
}
