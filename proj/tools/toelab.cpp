#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "toelab/cache.hpp"
#include "toelab/config.hpp"
#include "toelab/enumerate.hpp"
#include "toelab/machine.hpp"
#include "toelab/mdl.hpp"
#include "toelab/predict.hpp"
#include "toelab/report_io.hpp"
#include "toelab/utoe.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace toe;
using nlohmann::ordered_json;

RunBudget budget_for(const ExperimentConfig& cfg, std::size_t target_len) {
  RunBudget b = default_budget(cfg.max_len, target_len);
  if (cfg.steps) b.max_steps = cfg.steps;
  if (cfg.max_output_bits) b.max_output_bits = cfg.max_output_bits;
  return b;
}

std::string budget_key(const RunBudget& b) {
  return std::to_string(b.max_steps) + ":" + std::to_string(b.max_output_bits);
}

// Programs are written with a leading "p" so the empty program stays
// distinguishable from a blank line.
std::string qset_to_text(const QSet& qs) {
  std::ostringstream out;
  out << qs.count << ' ' << qs.undecided << ' ';
  if (qs.q_min)
    out << "1 p" << bits_to_string(*qs.q_min);
  else
    out << "0 -";
  out << '\n';
  for (const Program& p : qs.members_sample) out << 'p' << bits_to_string(p) << '\n';
  return out.str();
}

std::optional<QSet> qset_from_text(const std::string& text) {
  std::istringstream in(text);
  QSet qs;
  int has_min = 0;
  std::string min_str;
  if (!(in >> qs.count >> qs.undecided >> has_min >> min_str)) return std::nullopt;
  if (has_min) {
    if (min_str.empty() || min_str[0] != 'p') return std::nullopt;
    qs.q_min = bits_from_string(min_str.substr(1));
    qs.l = qs.q_min->size();
  }
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != 'p') return std::nullopt;
    qs.members_sample.push_back(bits_from_string(line.substr(1)));
  }
  return qs;
}

// consistent_set with an optional on-disk memo; the key pins the machine
// version, target, length bound and budget.
QSet cached_consistent_set(const ExperimentConfig& cfg, const Bits& target,
                           const RunBudget& budget) {
  std::optional<KvCache> cache =
      cfg.cache ? KvCache::from_env() : std::nullopt;
  std::string key;
  if (cache) {
    key = std::string(kMachineVersion) + "|qset|" + bits_to_string(target) +
          "|L" + std::to_string(cfg.max_len) + "|" + budget_key(budget);
    if (auto hit = cache->get(key)) {
      if (auto qs = qset_from_text(*hit)) return *qs;
    }
  }
  QSet qs = consistent_set({target, cfg.max_len, budget});
  if (cache) cache->put(key, qset_to_text(qs));
  return qs;
}

int cmd_enumerate(const ExperimentConfig& cfg) {
  ArtifactWriter artifacts(cfg.out_dir);
  std::vector<std::vector<std::string>> rows;
  for (const std::string& t : cfg.targets.empty()
                                  ? std::vector<std::string>{""}
                                  : cfg.targets) {
    Bits target = bits_from_string(t);
    RunBudget b = budget_for(cfg, target.size());
    QSet qs = cached_consistent_set(cfg, target, b);
    rows.push_back({t, std::to_string(qs.count), std::to_string(qs.undecided),
                    qs.l ? std::to_string(*qs.l) : "-",
                    qs.q_min ? bits_to_string(*qs.q_min) : "-"});
  }
  artifacts.write_csv("enumerate.csv",
                      {"target", "count", "undecided", "l", "q_min"}, rows);
  artifacts.write_manifest(cfg.as_map());
  return 0;
}

int cmd_km(const ExperimentConfig& cfg) {
  if (cfg.targets.empty())
    throw std::invalid_argument("km needs at least one --target");
  ArtifactWriter artifacts(cfg.out_dir);
  ordered_json out = ordered_json::array();
  for (const std::string& t : cfg.targets) {
    Bits target = bits_from_string(t);
    RunBudget b = budget_for(cfg, target.size());
    QSet qs = cached_consistent_set(cfg, target, b);
    ordered_json entry;
    entry["target"] = t;
    if (qs.q_min) {
      entry["l"] = *qs.l;
      entry["q_min"] = bits_to_string(*qs.q_min);
    } else {
      entry["l"] = nullptr;
      entry["q_min"] = nullptr;
    }
    out.push_back(entry);
  }
  ordered_json result = cfg.targets.size() == 1 ? out[0] : out;
  std::cout << result.dump(2) << '\n';
  artifacts.write("km.json", result.dump(2) + "\n");
  artifacts.write_manifest(cfg.as_map());
  return 0;
}

int cmd_predict(const ExperimentConfig& cfg) {
  if (cfg.targets.empty())
    throw std::invalid_argument("predict needs a --target");
  ArtifactWriter artifacts(cfg.out_dir);
  Bits target = bits_from_string(cfg.targets[0]);
  RunBudget b = budget_for(cfg, target.size() + cfg.horizon);
  PredictorReport report =
      counting_predictor(target, cfg.horizon, cfg.max_len, b);
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : report.rows)
    rows.push_back({bits_to_string(row.continuation), std::to_string(row.count),
                    std::to_string(row.prob.num) + "/" +
                        std::to_string(row.prob.den),
                    row.l_n ? std::to_string(*row.l_n) : "-"});
  artifacts.write_csv("predict.csv", {"continuation", "count", "prob", "l_n"},
                      rows);
  ordered_json summary;
  summary["target"] = cfg.targets[0];
  summary["horizon"] = cfg.horizon;
  summary["conditioning_count"] = report.conditioning_count;
  summary["l"] = report.l;
  summary["argmax"] = bits_to_string(report.argmax);
  summary["deficit"] = std::to_string(report.deficit.num) + "/" +
                       std::to_string(report.deficit.den);
  std::cout << summary.dump(2) << '\n';
  artifacts.write("predict.json", summary.dump(2) + "\n");
  artifacts.write_manifest(cfg.as_map());
  return 0;
}

int cmd_utoe_stream(const ExperimentConfig& cfg) {
  ArtifactWriter artifacts(cfg.out_dir);
  std::uint64_t n = cfg.trials;  // cell count rides on the trials knob
  RunBudget b{cfg.steps ? cfg.steps : 4096, cfg.max_output_bits ? cfg.max_output_bits : 256};
  std::vector<TriBit> cells = utoe_stream(n, b);
  std::string text;
  text.reserve(cells.size() + cells.size() / 64 + 1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    text += tribit_char(cells[i]);
    if ((i + 1) % 64 == 0) text += '\n';
  }
  if (text.empty() || text.back() != '\n') text += '\n';
  artifacts.write("utoe_stream.txt", text);
  std::ostringstream snap;
  write_snapshot(snap, cells, b);
  artifacts.write("utoe.snapshot", snap.str());
  artifacts.write_manifest(cfg.as_map());
  return 0;
}

int cmd_select(const ExperimentConfig& cfg,
               const std::vector<std::string>& candidate_specs) {
  if (cfg.targets.empty())
    throw std::invalid_argument("select needs a --target observation");
  if (candidate_specs.empty())
    throw std::invalid_argument("select needs --candidate q:s entries");
  Bits o_true = bits_from_string(cfg.targets[0]);
  std::vector<std::pair<Program, Program>> candidates;
  for (const std::string& spec : candidate_specs) {
    std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("candidate must be q:s, got " + spec);
    candidates.emplace_back(bits_from_string(spec.substr(0, colon)),
                            bits_from_string(spec.substr(colon + 1)));
  }
  RunBudget b{cfg.steps ? cfg.steps : 1u << 16,
              cfg.max_output_bits ? cfg.max_output_bits : o_true.size() + 64};
  auto selection = select_ctoe(candidates, o_true, b);
  ArtifactWriter artifacts(cfg.out_dir);
  ordered_json out;
  if (selection) {
    out["index"] = selection->index;
    out["score"] = selection->score;
    out["q"] = bits_to_string(candidates[selection->index].first);
    out["s"] = bits_to_string(candidates[selection->index].second);
  } else {
    out["error"] = "no perfect candidate";
  }
  std::cout << out.dump(2) << '\n';
  artifacts.write("select.json", out.dump(2) + "\n");
  artifacts.write_manifest(cfg.as_map());
  return selection ? 0 : 1;
}

int cmd_mdl_score(const ExperimentConfig& cfg) {
  if (cfg.targets.empty())
    throw std::invalid_argument("mdl-score needs a --target observation");
  Bits obs = bits_from_string(cfg.targets[0]);
  std::vector<std::pair<std::string, ModelExpr>> zoo = {
      {"coin", CoinModel{}},
      {"bernoulli-1/4", BernoulliModel{1, 4}},
      {"bernoulli-3/4", BernoulliModel{3, 4}},
      {"pi-stream", DetStreamModel{StreamSource::Pi, {}}},
      {"champernowne-stream", DetStreamModel{StreamSource::Champernowne, {}}},
  };
  ArtifactWriter artifacts(cfg.out_dir);
  std::vector<std::vector<std::string>> rows;
  char buf[64];
  for (const auto& [name, model] : zoo) {
    CodeLengthReport r = prob_score(model, IdentityObserver{}, obs);
    auto fmt = [&](double v) {
      std::snprintf(buf, sizeof buf, "%.6g", v);
      return std::string(buf);
    };
    rows.push_back({name, fmt(r.model_bits), fmt(r.noise_bits), fmt(r.total)});
  }
  artifacts.write_csv("mdl_score.csv", {"model", "model_bits", "noise_bits", "total"},
                      rows);
  artifacts.write_manifest(cfg.as_map());
  return 0;
}

int experiment_ockham(const ExperimentConfig& cfg, ArtifactWriter& artifacts) {
  // Suite: every target of length <= 5 with a nonempty consistent set.
  std::vector<std::vector<std::string>> rows;
  std::uint64_t cases = 0, agreements = 0, truncated = 0;
  for (std::uint64_t j = 1; j <= program_count_upto(5); ++j) {
    Bits target = program_from_ordinal(j);
    RunBudget b = budget_for(cfg, target.size() + cfg.horizon);
    try {
      OckhamChoice choice = ockham_choice(target, cfg.horizon, cfg.max_len, b);
      ++cases;
      if (choice.truncated) ++truncated;
      if (choice.agrees_with_argmax) ++agreements;
      rows.push_back({bits_to_string(target), bits_to_string(choice.q_min),
                      bits_to_string(choice.continuation),
                      choice.truncated ? "1" : "0",
                      choice.agrees_with_argmax ? "1" : "0"});
    } catch (const EmptyConditioningSet&) {
      rows.push_back({bits_to_string(target), "-", "-", "-", "-"});
    }
  }
  artifacts.write_csv("ockham.csv",
                      {"target", "q_min", "continuation", "truncated", "agrees"},
                      rows);
  ordered_json summary;
  summary["cases"] = cases;
  summary["truncated"] = truncated;
  summary["agreements"] = agreements;
  summary["agreement_fraction"] =
      cases ? static_cast<double>(agreements) / cases : 0.0;
  std::cout << summary.dump(2) << '\n';
  artifacts.write("ockham.json", summary.dump(2) + "\n");
  return 0;
}

int experiment_nfl(const ExperimentConfig& cfg, ArtifactWriter& artifacts) {
  NflConfig nfl;
  nfl.max_len = cfg.max_len;
  nfl.trials = cfg.trials;
  nfl.seed = cfg.seed;
  NflReport report = nfl_experiment(nfl, budget_for(cfg, nfl.n));
  auto row = [](const char* name, const RegimeStats& s) {
    char buf[64];
    std::vector<std::string> r{name, std::to_string(s.trials),
                               std::to_string(s.predictor_correct),
                               std::to_string(s.baseline_correct)};
    std::snprintf(buf, sizeof buf, "%.6f", s.predictor_accuracy());
    r.push_back(buf);
    std::snprintf(buf, sizeof buf, "%.6f", s.std_error());
    r.push_back(buf);
    return r;
  };
  artifacts.write_csv("nfl.csv",
                      {"regime", "trials", "predictor_correct",
                       "baseline_correct", "predictor_accuracy", "std_error"},
                      {row("uniform", report.uniform),
                       row("universal", report.universal)});
  ordered_json summary;
  summary["uniform_accuracy"] = report.uniform.predictor_accuracy();
  summary["universal_accuracy"] = report.universal.predictor_accuracy();
  summary["discarded"] = report.discarded;
  std::cout << summary.dump(2) << '\n';
  artifacts.write("nfl.json", summary.dump(2) + "\n");
  return 0;
}

int experiment_pi_mdl(const ExperimentConfig& cfg, ArtifactWriter& artifacts) {
  ModelExpr coin = CoinModel{};
  ModelExpr pi = DetStreamModel{StreamSource::Pi, {}};
  std::uint64_t l_coin = model_code_length(coin);
  std::uint64_t l_pi = model_code_length(pi);
  std::int64_t t_star = static_cast<std::int64_t>(l_pi) -
                        static_cast<std::int64_t>(l_coin);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t t = 0; t <= 29; ++t) {
    Bits obs = pi_bits(t);
    CodeLengthReport rc = prob_score(coin, IdentityObserver{}, obs);
    CodeLengthReport rp = prob_score(pi, IdentityObserver{}, obs);
    rows.push_back({std::to_string(t), std::to_string(rc.total),
                    std::to_string(rp.total),
                    rp.total < rc.total ? "pi" : "coin"});
  }
  artifacts.write_csv("pi_mdl.csv", {"t", "coin_total", "pi_total", "winner"},
                      rows);
  ordered_json summary;
  summary["L_coin"] = l_coin;
  summary["L_pi"] = l_pi;
  summary["t_star"] = t_star;
  std::cout << summary.dump(2) << '\n';
  artifacts.write("pi_mdl.json", summary.dump(2) + "\n");
  return 0;
}

int experiment_km_vs_m(const ExperimentConfig& cfg, ArtifactWriter& artifacts) {
  std::vector<Bits> targets;
  for (std::uint64_t j = 1; j <= program_count_upto(3); ++j)
    targets.push_back(program_from_ordinal(j));
  RunBudget b = budget_for(cfg, 4);
  std::vector<KmRow> rows = km_vs_logM(targets, cfg.max_len, b);
  std::vector<std::vector<std::string>> csv;
  char buf[64];
  for (const KmRow& row : rows) {
    std::vector<std::string> r{bits_to_string(row.target),
                               std::to_string(row.count)};
    if (row.km) {
      r.push_back(std::to_string(*row.km));
      std::snprintf(buf, sizeof buf, "%.6f", *row.neg_log_phat);
      r.push_back(buf);
      std::snprintf(buf, sizeof buf, "%.6f", *row.gap);
      r.push_back(buf);
    } else {
      r.insert(r.end(), {"-", "-", "-"});
    }
    csv.push_back(std::move(r));
  }
  artifacts.write_csv("km_vs_m.csv",
                      {"target", "count", "km", "neg_log_phat", "gap"}, csv);
  return 0;
}

int experiment_localization(const ExperimentConfig& cfg,
                            ArtifactWriter& artifacts) {
  std::vector<std::string> counts = {"8", "7000000000", "3e22"};
  for (const std::string& t : cfg.targets) counts.push_back(t);
  std::vector<std::vector<std::string>> rows;
  for (const std::string& c : counts)
    rows.push_back({c, std::to_string(localization_bits_dec(c))});
  artifacts.write_csv("localization.csv", {"count", "bits"}, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toelab: desk-scale theory-of-everything laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> cli_targets;
  std::vector<std::string> candidate_specs;
  std::string experiment_name;
  ExperimentConfig overrides;
  bool no_cache = false;
  bool have_max_len = false, have_seed = false, have_trials = false,
       have_horizon = false, have_out = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file");
    sub->add_option("--target", cli_targets, "bit-string target(s)");
    sub->add_option("--max-len", overrides.max_len, "program length bound L")
        ->check(CLI::Range(0u, kMaxLenCap))
        ->each([&](const std::string&) { have_max_len = true; });
    sub->add_option("--steps", overrides.steps, "step budget per run");
    sub->add_option("--seed", overrides.seed, "RNG seed")
        ->each([&](const std::string&) { have_seed = true; });
    sub->add_option("--trials", overrides.trials, "trial / cell count")
        ->each([&](const std::string&) { have_trials = true; });
    sub->add_option("--horizon", overrides.horizon, "prediction horizon")
        ->each([&](const std::string&) { have_horizon = true; });
    sub->add_option("--out", overrides.out_dir, "output directory")
        ->each([&](const std::string&) { have_out = true; });
    sub->add_flag("--no-cache", no_cache, "disable the on-disk cache");
    sub->add_option("--shards", overrides.shards, "worker count (0 = auto)");
  };

  CLI::App* sub_enumerate = app.add_subcommand("enumerate", "count consistent programs");
  CLI::App* sub_km = app.add_subcommand("km", "monotone-complexity upper bound");
  CLI::App* sub_predict = app.add_subcommand("predict", "counting predictor");
  CLI::App* sub_utoe = app.add_subcommand("utoe-stream", "dovetailed multiverse stream");
  CLI::App* sub_select = app.add_subcommand("select", "smallest perfect (q,s)");
  CLI::App* sub_mdl = app.add_subcommand("mdl-score", "score a model zoo");
  CLI::App* sub_exp = app.add_subcommand("experiment", "batch experiments");
  sub_exp->add_option("name", experiment_name,
                      "ockham|nfl|pi-mdl|km-vs-m|localization")
      ->required();
  sub_select->add_option("--candidate", candidate_specs, "candidate pair q:s");
  for (CLI::App* sub :
       {sub_enumerate, sub_km, sub_predict, sub_utoe, sub_select, sub_mdl, sub_exp})
    add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e) == 0) return 0;
    nlohmann::ordered_json err;
    err["error"] = "invalid arguments";
    err["detail"] = e.what();
    std::cerr << err.dump(2) << '\n';
    return 2;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!cli_targets.empty()) cfg.targets = cli_targets;
    if (have_max_len) cfg.max_len = overrides.max_len;
    if (overrides.steps) cfg.steps = overrides.steps;
    if (have_seed) cfg.seed = overrides.seed;
    if (have_trials) cfg.trials = overrides.trials;
    if (have_horizon) cfg.horizon = overrides.horizon;
    if (have_out) cfg.out_dir = overrides.out_dir;
    if (overrides.shards) cfg.shards = overrides.shards;
    if (no_cache) cfg.cache = false;
    validate_config(cfg);
#ifdef _OPENMP
    if (cfg.shards) omp_set_num_threads(static_cast<int>(cfg.shards));
#endif

    for (CLI::App* sub : {sub_enumerate, sub_km, sub_predict, sub_utoe,
                          sub_select, sub_mdl})
      if (sub->parsed()) cfg.subcommand = sub->get_name();
    if (sub_enumerate->parsed()) return cmd_enumerate(cfg);
    if (sub_km->parsed()) return cmd_km(cfg);
    if (sub_predict->parsed()) return cmd_predict(cfg);
    if (sub_utoe->parsed()) return cmd_utoe_stream(cfg);
    if (sub_select->parsed()) return cmd_select(cfg, candidate_specs);
    if (sub_mdl->parsed()) return cmd_mdl_score(cfg);
    if (sub_exp->parsed()) {
      cfg.subcommand = "experiment " + experiment_name;
      ArtifactWriter artifacts(cfg.out_dir);
      int rc;
      if (experiment_name == "ockham")
        rc = experiment_ockham(cfg, artifacts);
      else if (experiment_name == "nfl")
        rc = experiment_nfl(cfg, artifacts);
      else if (experiment_name == "pi-mdl")
        rc = experiment_pi_mdl(cfg, artifacts);
      else if (experiment_name == "km-vs-m")
        rc = experiment_km_vs_m(cfg, artifacts);
      else if (experiment_name == "localization")
        rc = experiment_localization(cfg, artifacts);
      else
        throw std::invalid_argument("unknown experiment: " + experiment_name);
      artifacts.write_manifest(cfg.as_map());
      return rc;
    }
    throw std::invalid_argument("no subcommand");
  } catch (const std::invalid_argument& e) {
    nlohmann::ordered_json err;
    err["error"] = "invalid arguments";
    err["detail"] = e.what();
    std::cerr << err.dump(2) << '\n';
    return 2;
  } catch (const std::exception& e) {
    nlohmann::ordered_json err;
    err["error"] = "runtime failure";
    err["detail"] = e.what();
    std::cerr << err.dump(2) << '\n';
    return 1;
  }
}
