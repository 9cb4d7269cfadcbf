#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "gecrank/corpus_io.hpp"
#include "gecrank/edits.hpp"
#include "gecrank/error.hpp"
#include "gecrank/metaeval.hpp"
#include "gecrank/metrics.hpp"
#include "gecrank/pairwise.hpp"
#include "gecrank/rating.hpp"
#include "gecrank/report.hpp"

namespace py = pybind11;
using namespace gecrank;

namespace {

using Rows = std::vector<std::vector<double>>;

ScoreMatrix to_matrix(const std::vector<std::string>& names, const Rows& rows) {
  std::vector<double> flat;
  flat.reserve(rows.size() * names.size());
  for (const auto& row : rows) {
    if (row.size() != names.size()) throw LengthMismatch("score row", names.size(), row.size());
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return ScoreMatrix(names, rows.size(), std::move(flat));
}

std::pair<std::vector<std::string>, Rows> score_corpus(const std::vector<std::string>& sources,
                                                       const std::vector<std::pair<std::string, std::vector<std::string>>>& systems,
                                                       const std::vector<std::vector<std::string>>& references,
                                                       const MetricConfig& config, unsigned threads) {
  std::vector<SystemOutputs> outputs;
  for (const auto& [name, hyps] : systems) outputs.push_back({name, hyps});
  const EvalCorpus corpus(sources, std::move(outputs), references);
  const ScoreMatrix m = score_matrix(corpus, config, threads);
  Rows rows(m.sentence_count());
  for (std::size_t i = 0; i < m.sentence_count(); ++i) rows[i].assign(m.row(i).begin(), m.row(i).end());
  return {m.system_names(), rows};
}

}  // namespace

PYBIND11_MODULE(_gecrank, m) {
  m.doc() = "Sentence-level tournament ranking and meta-evaluation";

  py::register_exception<Error>(m, "GecrankError", PyExc_ValueError);

  py::enum_<Outcome>(m, "Outcome")
      .value("A_WINS", Outcome::kAWins)
      .value("B_WINS", Outcome::kBWins)
      .value("TIE", Outcome::kTie);

  py::enum_<Metric>(m, "Metric")
      .value("EDIT_F", Metric::kEditF)
      .value("GLEU_PLUS", Metric::kGleuPlus)
      .value("GREEN", Metric::kGreen)
      .value("EXTERNAL", Metric::kExternal);

  py::class_<Edit>(m, "Edit")
      .def(py::init<std::size_t, std::size_t, Tokens>(), py::arg("start"), py::arg("end"), py::arg("replacement"))
      .def_readwrite("start", &Edit::start)
      .def_readwrite("end", &Edit::end)
      .def_readwrite("replacement", &Edit::replacement)
      .def("__eq__", [](const Edit& a, const Edit& b) { return a == b; })
      .def("__repr__", [](const Edit& e) {
        return "Edit(" + std::to_string(e.start) + ", " + std::to_string(e.end) + ", " +
               py::repr(py::cast(e.replacement)).cast<std::string>() + ")";
      });

  py::class_<MetricConfig>(m, "MetricConfig")
      .def(py::init<>())
      .def_readwrite("metric", &MetricConfig::metric)
      .def_readwrite("n_max", &MetricConfig::n_max)
      .def_readwrite("gleu_iterations", &MetricConfig::gleu_iterations)
      .def_readwrite("gleu_seed", &MetricConfig::gleu_seed)
      .def_readwrite("green_beta", &MetricConfig::green_beta)
      .def_readwrite("edit_beta", &MetricConfig::edit_beta)
      .def_readwrite("smoothing_epsilon", &MetricConfig::smoothing_epsilon);

  py::class_<Rating>(m, "Rating")
      .def(py::init<double, double>(), py::arg("mu") = 25.0, py::arg("sigma") = 25.0 / 3.0)
      .def_readwrite("mu", &Rating::mu)
      .def_readwrite("sigma", &Rating::sigma)
      .def("__repr__", [](const Rating& r) {
        return "Rating(mu=" + std::to_string(r.mu) + ", sigma=" + std::to_string(r.sigma) + ")";
      });

  py::class_<TrueSkillConfig>(m, "TrueSkillConfig")
      .def(py::init<>())
      .def_readwrite("mu0", &TrueSkillConfig::mu0)
      .def_readwrite("sigma0", &TrueSkillConfig::sigma0)
      .def_readwrite("beta", &TrueSkillConfig::beta)
      .def_readwrite("tau", &TrueSkillConfig::tau)
      .def_readwrite("draw_probability", &TrueSkillConfig::draw_probability)
      .def("draw_margin", &TrueSkillConfig::draw_margin);

  py::class_<Comparison>(m, "Comparison")
      .def(py::init<std::size_t, std::size_t, std::size_t, Outcome>(), py::arg("sentence_id"), py::arg("system_a"),
           py::arg("system_b"), py::arg("outcome"))
      .def_readwrite("sentence_id", &Comparison::sentence_id)
      .def_readwrite("system_a", &Comparison::system_a)
      .def_readwrite("system_b", &Comparison::system_b)
      .def_readwrite("outcome", &Comparison::outcome);

  py::class_<SystemResult>(m, "SystemResult")
      .def_readonly("name", &SystemResult::name)
      .def_readonly("rank", &SystemResult::rank)
      .def_readonly("score", &SystemResult::score)
      .def_readonly("mu", &SystemResult::mu)
      .def_readonly("sigma", &SystemResult::sigma)
      .def_readonly("conservative", &SystemResult::conservative);

  py::class_<RankingReport>(m, "RankingReport")
      .def_readonly("method", &RankingReport::method)
      .def_readonly("systems", &RankingReport::systems)
      .def_readonly("guarded_updates", &RankingReport::guarded_updates)
      .def_readonly("all_ties", &RankingReport::all_ties)
      .def("to_json", [](const RankingReport& r) { return to_json(r); })
      .def("order", [](const RankingReport& r) {
        std::vector<std::string> names;
        for (const auto& s : r.systems) names.push_back(s.name);
        return names;
      });

  m.def("extract_edits", [](const Tokens& s, const Tokens& t) { return extract_edits(s, t); }, py::arg("source"),
        py::arg("target"));
  m.def("apply_edits", [](const Tokens& s, const EditSet& e) { return apply_edits(s, e); }, py::arg("source"),
        py::arg("edits"));

  m.def(
      "edit_f_sentence",
      [](const Tokens& s, const Tokens& h, const std::vector<Tokens>& refs, const MetricConfig& c) {
        return edit_f_sentence(s, h, refs, c);
      },
      py::arg("source"), py::arg("hypothesis"), py::arg("references"), py::arg("config") = MetricConfig{});
  m.def(
      "gleu_plus_sentence",
      [](const Tokens& s, const Tokens& h, const std::vector<Tokens>& refs, const MetricConfig& c) {
        return gleu_plus_sentence(s, h, refs, c);
      },
      py::arg("source"), py::arg("hypothesis"), py::arg("references"), py::arg("config") = MetricConfig{});
  m.def(
      "green_sentence",
      [](const Tokens& s, const Tokens& h, const std::vector<Tokens>& refs, const MetricConfig& c) {
        return green_sentence(s, h, refs, c);
      },
      py::arg("source"), py::arg("hypothesis"), py::arg("references"), py::arg("config") = MetricConfig{});

  m.def("score_corpus", &score_corpus, py::arg("sources"), py::arg("systems"), py::arg("references"),
        py::arg("config") = MetricConfig{}, py::arg("threads") = 1u,
        "Score untokenized sentences; systems is a list of (name, hypotheses). Returns (names, rows).");

  m.def(
      "to_comparisons",
      [](const std::vector<std::string>& names, const Rows& rows, double tie_epsilon, bool ordered) {
        TournamentConfig cfg{tie_epsilon, ordered ? PairOrdering::kOrderedPairs : PairOrdering::kUnorderedPairs};
        return to_comparisons(to_matrix(names, rows), cfg);
      },
      py::arg("systems"), py::arg("rows"), py::arg("tie_epsilon") = 0.0, py::arg("ordered") = true);

  m.def("trueskill_update", [](const Rating& a, const Rating& b, Outcome o, const TrueSkillConfig& c) {
        const auto r = trueskill_update(a, b, o, c);
        return std::make_pair(r.a, r.b);
      },
      py::arg("a"), py::arg("b"), py::arg("outcome"), py::arg("config") = TrueSkillConfig{});
  m.def(
      "trueskill_rank",
      [](const std::vector<Comparison>& c, const std::vector<std::string>& systems, const TrueSkillConfig& cfg) {
        return trueskill_rank(c, systems, cfg);
      },
      py::arg("comparisons"), py::arg("systems"), py::arg("config") = TrueSkillConfig{});
  m.def(
      "expected_wins_rank",
      [](const std::vector<Comparison>& c, const std::vector<std::string>& systems) {
        return expected_wins_rank(c, systems);
      },
      py::arg("comparisons"), py::arg("systems"));
  m.def(
      "mean_rank", [](const std::vector<std::string>& names, const Rows& rows) { return mean_rank(to_matrix(names, rows)); },
      py::arg("systems"), py::arg("rows"));

  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) { return pearson(x, y); });
  m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) { return spearman(x, y); });
  m.def("fractional_ranks", [](const std::vector<double>& x) { return fractional_ranks(x); });
  m.def(
      "window_analysis",
      [](const std::vector<std::pair<std::string, double>>& human, const RankingReport& report, std::size_t window) {
        const WindowReport w = window_analysis(HumanRanking{"", human}, report, window);
        std::vector<std::tuple<std::size_t, double, double>> rows;
        for (const auto& r : w.rows) rows.emplace_back(r.start_rank, r.pearson, r.spearman);
        return rows;
      },
      py::arg("human"), py::arg("report"), py::arg("window"));
}
