// gecrank: score correction systems sentence by sentence, rank them by
// pairwise tournaments or averages, and correlate rankings with human ones.
//
// Exit codes: 0 success, 1 data or validation error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gecrank/corpus_io.hpp"
#include "gecrank/error.hpp"
#include "gecrank/metaeval.hpp"
#include "gecrank/metrics.hpp"
#include "gecrank/pairwise.hpp"
#include "gecrank/rating.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace gecrank;

namespace {

// Invalid flag combination; reported like a CLI11 parse failure.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Named sub-streams fanned out from --seed.
constexpr std::uint64_t kGleuStream = 1;
constexpr std::uint64_t kShuffleStream = 2;

struct Options {
  std::string config_path;
  std::string manifest;
  std::string scores;
  std::string metric = "edit_f";
  int n_max = 4;
  int gleu_iterations = 500;
  std::optional<double> beta;
  std::uint64_t seed = 42;
  unsigned threads = 0;

  std::string aggregation = "trueskill";
  double tie_epsilon = 0.0;
  std::string ordering = "ordered";
  double draw_probability = 0.1;
  std::string rank_by = "mu";
  bool shuffle = false;
  std::string comparisons_out;

  std::string human;
  std::vector<std::string> reports;
  std::optional<std::size_t> window;
  std::string plot_json;
  std::string out;
};

// Fills options the user did not give on the command line from a JSON config.
void apply_config_file(CLI::App& sub, Options& o) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in) throw NotFound(o.config_path);
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid config " + o.config_path + ": " + e.what());
  }
  auto unset = [&](const std::string& flag) {
    try {
      return sub.get_option(flag)->count() == 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  try {
    auto take = [&](const char* key, const std::string& flag, auto& field) {
      if (cfg.contains(key) && unset(flag)) field = cfg[key].get<std::remove_reference_t<decltype(field)>>();
    };
    take("manifest", "--manifest", o.manifest);
    take("scores", "--scores", o.scores);
    take("metric", "--metric", o.metric);
    take("n_max", "--n-max", o.n_max);
    take("gleu_iterations", "--gleu-iterations", o.gleu_iterations);
    take("seed", "--seed", o.seed);
    take("threads", "--threads", o.threads);
    take("aggregation", "--aggregation", o.aggregation);
    take("tie_epsilon", "--tie-epsilon", o.tie_epsilon);
    take("ordering", "--ordering", o.ordering);
    take("draw_probability", "--draw-probability", o.draw_probability);
    take("rank_by", "--rank-by", o.rank_by);
    take("human", "--human", o.human);
    if (cfg.contains("beta") && unset("--beta")) o.beta = cfg["beta"].get<double>();
    if (cfg.contains("window") && unset("--window")) o.window = cfg["window"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad value in config " + o.config_path + ": " + e.what());
  }
}

MetricConfig metric_config(const Options& o) {
  MetricConfig cfg;
  cfg.metric = parse_metric(o.metric);
  cfg.n_max = o.n_max;
  cfg.gleu_iterations = o.gleu_iterations;
  cfg.gleu_seed = derive_seed(o.seed, kGleuStream);
  if (o.beta) {
    if (cfg.metric == Metric::kGreen)
      cfg.green_beta = *o.beta;
    else
      cfg.edit_beta = *o.beta;
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NotFound(path);
  out << text;
}

int cmd_score(const Options& o) {
  const MetricConfig cfg = metric_config(o);
  if (cfg.metric == Metric::kExternal) throw UsageError("--metric external needs no scoring pass; pass --scores to rank");
  if (o.manifest.empty()) throw UsageError("score requires --manifest");
  if (o.out.empty()) throw UsageError("score requires --out <directory>");
  const EvalCorpus corpus = load_corpus(read_corpus_manifest(o.manifest));
  const ScoreMatrix scores = score_matrix(corpus, cfg, o.threads);
  write_scores(scores, o.out);

  std::ofstream summary(fs::path(o.out) / "matrix.tsv", std::ios::binary);
  summary << "sentence";
  for (const auto& name : scores.system_names()) summary << '\t' << name;
  summary << '\n';
  char buf[40];
  for (std::size_t i = 0; i < scores.sentence_count(); ++i) {
    summary << i;
    for (std::size_t k = 0; k < scores.system_count(); ++k) {
      std::snprintf(buf, sizeof buf, "\t%.17g", scores.at(i, k));
      summary << buf;
    }
    summary << '\n';
  }
  std::cout << "scored " << scores.sentence_count() << " sentences x " << scores.system_count() << " systems with "
            << to_string(cfg.metric) << " -> " << o.out << '\n';
  return 0;
}

ScoreMatrix obtain_scores(const Options& o, const MetricConfig& cfg, const std::optional<EvalCorpus>& corpus) {
  if (!o.scores.empty()) {
    const NamedPaths manifest = read_score_manifest(o.scores);
    if (manifest.empty()) throw ConfigError(o.scores + ": no systems");
    const std::size_t m = corpus ? corpus->sentence_count() : read_lines(manifest.front().second).size();
    return load_scores(manifest, m);
  }
  if (cfg.metric == Metric::kExternal) throw UsageError("--metric external requires --scores");
  return score_matrix(*corpus, cfg, o.threads);
}

int cmd_rank(const Options& o) {
  MetricConfig cfg = metric_config(o);
  if (!o.scores.empty()) cfg.metric = Metric::kExternal;
  if (o.manifest.empty() && o.scores.empty()) throw UsageError("rank requires --manifest or --scores");
  static const std::set<std::string> kAggregations{"trueskill", "expected_wins", "mean", "corpus"};
  if (!kAggregations.contains(o.aggregation)) throw UsageError("unknown aggregation: " + o.aggregation);
  if (o.aggregation == "corpus" && (cfg.metric != Metric::kEditF || o.manifest.empty()))
    throw UsageError("--aggregation corpus is only defined for --metric edit_f with a --manifest");

  std::optional<EvalCorpus> corpus;
  if (!o.manifest.empty()) corpus.emplace(load_corpus(read_corpus_manifest(o.manifest)));

  RankingReport report;
  if (o.aggregation == "corpus") {
    std::vector<double> values;
    for (const auto& name : corpus->system_names()) values.push_back(edit_f_corpus(*corpus, name, cfg));
    report = corpus_rank(corpus->system_names(), values);
  } else {
    const ScoreMatrix scores = obtain_scores(o, cfg, corpus);
    if (o.aggregation == "mean") {
      report = mean_rank(scores);
    } else {
      TournamentConfig tournament;
      tournament.tie_epsilon = o.tie_epsilon;
      tournament.ordering = o.ordering == "ordered" ? PairOrdering::kOrderedPairs : PairOrdering::kUnorderedPairs;
      try {
        tournament.validate();
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
      const auto comparisons = to_comparisons(scores, tournament);
      if (!o.comparisons_out.empty()) {
        std::ofstream out(o.comparisons_out, std::ios::binary);
        if (!out) throw NotFound(o.comparisons_out);
        write_comparisons_csv(out, comparisons, scores.system_names());
      }
      if (o.aggregation == "expected_wins") {
        report = expected_wins_rank(comparisons, scores.system_names());
        if (report.all_ties) std::cerr << "warning: every comparison is a tie; all Expected Wins scores are 0\n";
      } else {
        TrueSkillConfig ts;
        ts.draw_probability = o.draw_probability;
        try {
          ts.validate();
        } catch (const ConfigError& e) {
          throw UsageError(e.what());
        }
        TrueSkillOptions opts;
        opts.rank_key = o.rank_by == "conservative" ? RankKey::kConservative : RankKey::kMu;
        if (o.shuffle) opts.shuffle_seed = derive_seed(o.seed, kShuffleStream);
        report = trueskill_rank(comparisons, scores.system_names(), ts, opts);
        if (report.guarded_updates > 0)
          std::cerr << "warning: " << report.guarded_updates << " updates used the tail approximation\n";
      }
    }
  }

  if (!o.out.empty()) {
    write_text(o.out, to_json(report));
    print_table(std::cout, report);
  } else {
    std::cout << to_json(report);
  }
  return 0;
}

HumanRanking load_human(const Options& o) {
  if (o.human.empty()) throw UsageError("--human <csv> is required");
  return load_human_csv(o.human, fs::path(o.human).stem().string());
}

int cmd_metaeval(const Options& o) {
  const HumanRanking human = load_human(o);
  if (o.reports.empty()) throw UsageError("metaeval requires at least one --report");
  std::vector<std::pair<std::string, RankingReport>> reports;
  for (const auto& path : o.reports) reports.emplace_back(fs::path(path).stem().string(), load_report(path));
  const MetaEvalTable table = metaeval_report(human, reports, o.window);
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
  print_metaeval_table(std::cout, table);
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw NotFound(o.out);
    write_metaeval_csv(out, table);
  }
  return 0;
}

int cmd_window(const Options& o) {
  const HumanRanking human = load_human(o);
  if (o.reports.size() != 1) throw UsageError("window takes exactly one --report");
  if (!o.window) throw UsageError("window requires --window N");
  const RankingReport report = load_report(o.reports.front());
  const WindowReport windows = window_analysis(human, report, *o.window);
  std::ostringstream csv;
  write_window_csv(csv, windows);
  std::cout << csv.str();
  if (!o.out.empty()) write_text(o.out, csv.str());
  if (!o.plot_json.empty()) write_text(o.plot_json, window_plot_json(windows));
  return 0;
}

void add_metric_flags(CLI::App* sub, Options& o) {
  sub->add_option("--manifest", o.manifest, "Corpus manifest JSON");
  sub->add_option("--metric", o.metric, "Sentence metric")
      ->check(CLI::IsMember({"edit_f", "gleu_plus", "green", "external"}));
  sub->add_option("--n-max", o.n_max, "Highest n-gram order");
  sub->add_option("--gleu-iterations", o.gleu_iterations, "GLEU+ reference sampling iterations");
  sub->add_option("--beta", o.beta, "F-beta weight of the chosen metric");
  sub->add_option("--seed", o.seed, "Master random seed");
  sub->add_option("--threads", o.threads, "Scoring threads (0 = all cores)");
  sub->add_option("--config", o.config_path, "JSON config; explicit flags take precedence");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank correction systems by sentence-level tournaments and meta-evaluate rankings"};
  app.require_subcommand(1);
  Options o;

  auto* score = app.add_subcommand("score", "Write per-system sentence score files");
  add_metric_flags(score, o);
  score->add_option("--out", o.out, "Output directory");

  auto* rank = app.add_subcommand("rank", "Aggregate sentence scores into a system ranking");
  add_metric_flags(rank, o);
  rank->add_option("--scores", o.scores, "Score manifest JSON for externally computed scores");
  rank->add_option("--aggregation", o.aggregation, "Aggregation method")
      ->check(CLI::IsMember({"trueskill", "expected_wins", "mean", "corpus"}));
  rank->add_option("--tie-epsilon", o.tie_epsilon, "Score gap treated as a tie");
  rank->add_option("--ordering", o.ordering, "Comparison pairs")->check(CLI::IsMember({"ordered", "unordered"}));
  rank->add_option("--draw-probability", o.draw_probability, "TrueSkill draw probability");
  rank->add_option("--rank-by", o.rank_by, "TrueSkill ordering key")->check(CLI::IsMember({"mu", "conservative"}));
  rank->add_flag("--shuffle", o.shuffle, "Shuffle comparisons with a seeded order before rating");
  rank->add_option("--comparisons", o.comparisons_out, "Also dump the comparison stream as CSV");
  rank->add_option("--out", o.out, "Ranking report JSON");

  auto* meta = app.add_subcommand("metaeval", "Correlate ranking reports with a human ranking");
  meta->add_option("--human", o.human, "Human ranking CSV (system,score)");
  meta->add_option("--report", o.reports, "Ranking report JSON (repeatable)");
  meta->add_option("--window", o.window, "Also run window analysis with this window size");
  meta->add_option("--out", o.out, "Correlation table CSV");
  meta->add_option("--config", o.config_path, "JSON config; explicit flags take precedence");

  auto* window = app.add_subcommand("window", "Sliding-window correlation analysis");
  window->add_option("--human", o.human, "Human ranking CSV (system,score)");
  window->add_option("--report", o.reports, "Ranking report JSON");
  window->add_option("--window", o.window, "Window size");
  window->add_option("--out", o.out, "Window CSV");
  window->add_option("--plot-json", o.plot_json, "Plot-ready JSON arrays");
  window->add_option("--config", o.config_path, "JSON config; explicit flags take precedence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    apply_config_file(*active, o);
    if (active == score) return cmd_score(o);
    if (active == rank) return cmd_rank(o);
    if (active == meta) return cmd_metaeval(o);
    return cmd_window(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const gecrank::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
