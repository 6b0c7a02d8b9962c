#include "cf/cli/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "cf/common/error.hpp"
#include "cf/common/log.hpp"
#include "cf/corpus/io.hpp"
#include "cf/corpus/stats.hpp"
#include "cf/eval/fertility.hpp"
#include "cf/eval/gold.hpp"
#include "cf/eval/mt.hpp"
#include "cf/eval/task.hpp"
#include "cf/pipeline/config.hpp"
#include "cf/pipeline/filters.hpp"
#include "cf/pipeline/stages.hpp"

namespace cf::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::string in;
  std::string out;
  bool dry_run = false;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Config file");
  cmd->add_option("--in", c.in, "Input path");
  cmd->add_option("--out", c.out, "Output path");
  cmd->add_flag("--dry-run", c.dry_run, "Validate and print the plan without network access or writes");
  cmd->add_option("--seed", c.seed, "Seed for any sampling");
}

class Runner {
public:
  Runner(const CliEnv& env, std::ostream& out) : env_(env), out_(out) {}

  void emit(const Json& j) { out_ << j.dump(2) << '\n'; }

  // Result goes to --out when given, else stdout.
  void result(const Json& j, const std::string& out) {
    if (out.empty() || dry_) {
      emit(j);
    } else {
      jsonl::write_json(out, j);
      logger()->info("wrote {}", out);
    }
  }

  pipeline::PipelineConfig pipeline_config(const Common& c) {
    if (c.config.empty()) throw ValidationError("--config is required");
    auto config = pipeline::load_pipeline_config(c.config);
    if (!c.in.empty()) config.dataset = fs::absolute(c.in).string();
    if (!c.out.empty()) config.checkpoint_dir = fs::absolute(c.out).string();
    if (c.seed) config.seed = *c.seed;
    return config;
  }

  pipeline::Pipeline make_pipeline(pipeline::PipelineConfig config) {
    return pipeline::Pipeline(std::move(config), {env_.transports, env_.sleeper});
  }

  void stage(pipeline::PipelineStep step, const Common& c) {
    auto p = make_pipeline(pipeline_config(c));
    const pipeline::PipelineStep one[] = {step};
    if (c.dry_run) {
      emit(plan("stage", p.plan(one)));
      return;
    }
    p.run(step);
    Json j;
    j["stage"] = std::string(pipeline::to_string(step));
    j["checkpoint_dir"] = p.layout().dir.string();
    j["outputs"] = Json::array();
    for (const auto& o : p.layout().outputs(step)) j["outputs"].push_back(o.string());
    emit(j);
  }

  void pipeline_all(const Common& c) {
    auto p = make_pipeline(pipeline_config(c));
    if (c.dry_run) {
      emit(plan("pipeline", p.plan(pipeline::kAllSteps)));
      return;
    }
    emit(p.run_all());
  }

  void filter_rt(const Common& c, const std::string& mode, std::optional<double> mu_bleu,
                 std::optional<double> mu_meteor) {
    if (c.in.empty()) {
      auto config = pipeline_config(c);
      if (!mode.empty()) config.roundtrip.mode = pipeline::parse_threshold_mode(mode);
      if (mu_bleu) config.roundtrip.mu_bleu = *mu_bleu;
      if (mu_meteor) config.roundtrip.mu_meteor = *mu_meteor;
      auto p = make_pipeline(std::move(config));
      const pipeline::PipelineStep one[] = {pipeline::PipelineStep::filter_roundtrip};
      if (c.dry_run) {
        emit(plan("stage", p.plan(one)));
        return;
      }
      p.run(pipeline::PipelineStep::filter_roundtrip);
      emit(jsonl::read_json(p.layout().report()));
      return;
    }

    // Standalone: a round-trip records file in, decisions and thresholds out.
    auto m = pipeline::ThresholdMode::data_mean;
    pipeline::RoundTripThresholds fixed{0.0, 0.0, pipeline::ThresholdMode::fixed};
    if (!c.config.empty()) {
      const auto config = pipeline::load_pipeline_config(c.config);
      m = config.roundtrip.mode;
      fixed.mu_bleu = config.roundtrip.mu_bleu;
      fixed.mu_meteor = config.roundtrip.mu_meteor;
    }
    if (!mode.empty()) m = pipeline::parse_threshold_mode(mode);
    if (mu_bleu) fixed.mu_bleu = *mu_bleu;
    if (mu_meteor) fixed.mu_meteor = *mu_meteor;
    if (m == pipeline::ThresholdMode::fixed && c.config.empty() && (!mu_bleu || !mu_meteor))
      throw ValidationError("--mode fixed needs --mu-bleu and --mu-meteor");
    if (!fs::is_regular_file(c.in)) throw ValidationError("input not found: " + c.in);
    const fs::path dir = c.out.empty() ? fs::path(c.in).parent_path() : fs::path(c.out);
    const auto decisions_path = dir / "filter_rt.decisions.jsonl";
    const auto thresholds_path = dir / "filter_rt.thresholds.json";
    if (c.dry_run) {
      Json j;
      j["command"] = "filter-rt";
      j["in"] = c.in;
      j["mode"] = std::string(pipeline::to_string(m));
      j["outputs"] = Json::array({decisions_path.string(), thresholds_path.string()});
      emit(plan("filter-rt", j));
      return;
    }
    const auto records = pipeline::load_records(c.in);
    const auto r = pipeline::filter_roundtrip(records, m, fixed);
    if (!dir.empty()) fs::create_directories(dir);
    pipeline::save_decisions(r.decisions, decisions_path);
    jsonl::write_json(thresholds_path, pipeline::to_json(r.thresholds));
    logger()->info("filter-rt: {} in, {} retained, {} removed", records.size(), r.retained.size(),
                   records.size() - r.retained.size());
    Json j;
    j["input"] = records.size();
    j["retained"] = r.retained.size();
    j["thresholds"] = pipeline::to_json(r.thresholds);
    j["decisions"] = decisions_path.string();
    emit(j);
  }

  void stats(const Common& c, const std::string& kind_name) {
    if (c.in.empty()) throw ValidationError("--in is required");
    const auto kind = corpus::parse_kind(kind_name);
    if (!fs::is_regular_file(c.in)) throw ValidationError("input not found: " + c.in);
    if (c.dry_run) {
      emit(plan("stats", Json{{"in", c.in}, {"kind", kind_name}}));
      return;
    }
    const auto data = corpus::load_dataset(c.in, kind);
    result(corpus::to_json(corpus::compute_corpus_stats(data), kind), c.out);
  }

  void eval_mt(const Common& c, const std::vector<std::string>& hyp_args, const std::string& system,
               const std::string& format) {
    if (c.config.empty()) throw ValidationError("--config (suite manifest) is required");
    if (format != "json" && format != "table") throw ValidationError("--format must be json or table");
    const auto suite = eval::load_suite(c.config);
    std::map<std::string, fs::path> files;
    for (const auto& [name, _] : suite.subsets)
      if (!c.in.empty()) files[name] = fs::path(c.in) / (name + ".txt");
    for (const auto& h : hyp_args) {
      const auto eq = h.find('=');
      if (eq == std::string::npos || eq == 0) throw ValidationError("--hyp expects name=path, got '" + h + "'");
      files[h.substr(0, eq)] = h.substr(eq + 1);
    }
    for (const auto& [name, _] : suite.subsets) {
      auto it = files.find(name);
      if (it == files.end()) throw ValidationError("no hypothesis file for subset '" + name + "'");
      if (!fs::is_regular_file(it->second)) throw ValidationError("hypothesis file not found: " + it->second.string());
    }
    if (c.dry_run) {
      Json j;
      j["suite"] = c.config;
      j["hypotheses"] = Json::object();
      for (const auto& [name, p] : files) j["hypotheses"][name] = p.string();
      emit(plan("eval-mt", j));
      return;
    }
    eval::SystemOutputs outputs;
    for (const auto& [name, p] : files) outputs[name] = eval::read_hypotheses(p);
    const auto report = eval::evaluate_mt(suite, outputs, system);
    if (format == "table") {
      out_ << eval::render_table(report);
      if (!c.out.empty()) jsonl::write_json(c.out, eval::to_json(report));
    } else {
      result(eval::to_json(report), c.out);
    }
  }

  void eval_task(const Common& c, const std::string& gold, const std::string& kind_name) {
    if (c.in.empty() || gold.empty()) throw ValidationError("--in and --gold are required");
    const auto kind = corpus::parse_kind(kind_name);
    if (kind == corpus::DatasetKind::parallel) throw ValidationError("--kind must be sa or mcqa");
    for (const auto& p : {c.in, gold})
      if (!fs::is_regular_file(p)) throw ValidationError("input not found: " + p);
    if (c.dry_run) {
      emit(plan("eval-task", Json{{"in", c.in}, {"gold", gold}, {"kind", kind_name}}));
      return;
    }
    const auto preds = eval::load_predictions(c.in);
    const auto golds = corpus::load_dataset(gold, kind);
    result(eval::to_json(eval::evaluate_task(preds, golds)), c.out);
  }

  void compare_gold(const Common& c, const std::string& gold, std::string endpoint) {
    if (c.in.empty() || gold.empty() || c.config.empty())
      throw ValidationError("--in, --gold and --config are required");
    const auto endpoints = pipeline::load_endpoints(c.config);
    if (endpoint.empty()) {
      for (const auto& [name, e] : endpoints) {
        if (e.kind != backends::EndpointKind::embed) continue;
        if (!endpoint.empty()) throw ValidationError("several embed endpoints; choose one with --endpoint");
        endpoint = name;
      }
      if (endpoint.empty()) throw ValidationError("no embed endpoint in " + c.config);
    }
    auto it = endpoints.find(endpoint);
    if (it == endpoints.end()) throw ValidationError("endpoint '" + endpoint + "' is not defined");
    if (it->second.kind != backends::EndpointKind::embed)
      throw ValidationError("endpoint '" + endpoint + "' is not an embed endpoint");
    for (const auto& p : {c.in, gold})
      if (!fs::is_regular_file(p)) throw ValidationError("input not found: " + p);
    if (c.dry_run) {
      emit(plan("compare-gold", Json{{"in", c.in}, {"gold", gold}, {"endpoint", endpoint}}));
      return;
    }
    const auto synthetic = corpus::load_parallel(c.in);
    const auto golds = corpus::load_parallel(gold);
    auto transports = env_.transports ? env_.transports : backends::http_transport_factory();
    backends::BackendClient client(it->second, transports(it->second), nullptr, env_.sleeper);
    Json j;
    j["score"] = eval::compare_to_gold(synthetic, golds, client);
    j["pairs"] = golds.size();
    j["metric"] = "cosine";
    result(j, c.out);
  }

  void fertility(const Common& c) {
    if (c.in.empty()) throw ValidationError("--in is required");
    if (!fs::is_regular_file(c.in)) throw ValidationError("input not found: " + c.in);
    if (c.dry_run) {
      emit(plan("fertility", Json{{"in", c.in}}));
      return;
    }
    const auto sample = eval::load_fertility_sample(c.in);
    Json j;
    j["fertility"] = eval::tokenizer_fertility(sample.texts, sample.token_counts);
    j["texts"] = sample.texts.size();
    result(j, c.out);
  }

  void set_dry(bool dry) { dry_ = dry; }

private:
  static Json plan(std::string_view command, Json detail) {
    Json j;
    j["dry_run"] = true;
    j["command"] = command;
    j["plan"] = std::move(detail);
    return j;
  }

  const CliEnv& env_;
  std::ostream& out_;
  bool dry_ = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, const CliEnv& env) {
  std::ostream& out = env.out ? *env.out : std::cout;
  std::ostream& err = env.err ? *env.err : std::cerr;

  CLI::App app{"Synthetic parallel corpus generation and evaluation"};
  app.require_subcommand(1);
  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Warnings and errors only");

  Common c;
  std::string kind = "sa";
  std::string mode;
  std::optional<double> mu_bleu;
  std::optional<double> mu_meteor;
  std::vector<std::string> hyps;
  std::string system;
  std::string format = "json";
  std::string gold;
  std::string endpoint;

  auto* preprocess = app.add_subcommand("preprocess", "Length/choice-count filtering and optional rewrite");
  auto* translate = app.add_subcommand("translate", "Forward translation of the preprocessed data");
  auto* filter_sim = app.add_subcommand("filter-sim", "Filtering I: embedding cosine threshold");
  auto* backtranslate = app.add_subcommand("backtranslate", "Back-translation and round-trip scoring");
  auto* filter_rt = app.add_subcommand("filter-rt", "Filtering II: BLEU and METEOR thresholds");
  auto* pipeline_cmd = app.add_subcommand("pipeline", "All stages, reusing complete checkpoints");
  auto* eval_mt = app.add_subcommand("eval-mt", "Per-subset MT metrics with macro averages");
  auto* eval_task = app.add_subcommand("eval-task", "Balanced accuracy and F1 of task predictions");
  auto* stats = app.add_subcommand("stats", "Descriptive corpus statistics");
  auto* compare_gold = app.add_subcommand("compare-gold", "Embedding similarity of a synthetic corpus to gold");
  auto* fertility = app.add_subcommand("fertility", "Tokens per whitespace word");

  for (auto* cmd : {preprocess, translate, filter_sim, backtranslate, filter_rt, pipeline_cmd, eval_mt, eval_task,
                    stats, compare_gold, fertility})
    add_common(cmd, c);

  filter_rt->add_option("--mode", mode, "data_mean or fixed");
  filter_rt->add_option("--mu-bleu", mu_bleu, "Fixed BLEU threshold");
  filter_rt->add_option("--mu-meteor", mu_meteor, "Fixed METEOR threshold");
  eval_mt->add_option("--hyp", hyps, "Hypothesis file for a subset, name=path");
  eval_mt->add_option("--system", system, "System name recorded in the report");
  eval_mt->add_option("--format", format, "json or table");
  eval_task->add_option("--gold", gold, "Gold dataset");
  eval_task->add_option("--kind", kind, "sa or mcqa");
  stats->add_option("--kind", kind, "sa, mcqa or parallel");
  compare_gold->add_option("--gold", gold, "Gold parallel corpus");
  compare_gold->add_option("--endpoint", endpoint, "Embed endpoint name");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kValidation;
  }

  if (verbose) set_verbosity(spdlog::level::debug);
  if (quiet) set_verbosity(spdlog::level::warn);

  Runner run(env, out);
  run.set_dry(c.dry_run);
  try {
    using pipeline::PipelineStep;
    if (*preprocess) run.stage(PipelineStep::preprocess, c);
    else if (*translate) run.stage(PipelineStep::translate, c);
    else if (*filter_sim) run.stage(PipelineStep::filter_similarity, c);
    else if (*backtranslate) run.stage(PipelineStep::backtranslate, c);
    else if (*filter_rt) run.filter_rt(c, mode, mu_bleu, mu_meteor);
    else if (*pipeline_cmd) run.pipeline_all(c);
    else if (*eval_mt) run.eval_mt(c, hyps, system, format);
    else if (*eval_task) run.eval_task(c, gold, kind);
    else if (*stats) run.stats(c, kind);
    else if (*compare_gold) run.compare_gold(c, gold, endpoint);
    else if (*fertility) run.fertility(c);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const BackendError& e) {
    err << "backend error: " << e.what() << '\n';
    return kBackend;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const Json::exception& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}

}  // namespace cf::cli
