#include "gecrank/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gecrank/error.hpp"

namespace gecrank {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kAWins: return "a_wins";
    case Outcome::kBWins: return "b_wins";
    case Outcome::kTie: return "tie";
  }
  return "tie";
}

Outcome mirror(Outcome outcome) {
  switch (outcome) {
    case Outcome::kAWins: return Outcome::kBWins;
    case Outcome::kBWins: return Outcome::kAWins;
    case Outcome::kTie: return Outcome::kTie;
  }
  return Outcome::kTie;
}

void TournamentConfig::validate() const {
  if (!std::isfinite(tie_epsilon) || tie_epsilon < 0) throw ConfigError("tie_epsilon must be finite and >= 0");
}

std::vector<Comparison> to_comparisons(const ScoreMatrix& scores, const TournamentConfig& config) {
  config.validate();
  const std::size_t n = scores.system_count();
  const bool ordered = config.ordering == PairOrdering::kOrderedPairs;
  std::vector<Comparison> out;
  out.reserve(scores.sentence_count() * n * (n > 0 ? n - 1 : 0) / (ordered ? 1 : 2));
  for (std::size_t i = 0; i < scores.sentence_count(); ++i) {
    const auto row = scores.row(i);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        Outcome outcome = Outcome::kTie;
        if (std::abs(row[a] - row[b]) > config.tie_epsilon)
          outcome = row[a] > row[b] ? Outcome::kAWins : Outcome::kBWins;
        out.push_back({i, a, b, outcome});
        if (ordered) out.push_back({i, b, a, mirror(outcome)});
      }
    }
  }
  return out;
}

void write_comparisons_csv(std::ostream& out, std::span<const Comparison> comparisons,
                           std::span<const std::string> systems) {
  out << "sentence_id,system_a,system_b,outcome\n";
  for (const auto& c : comparisons)
    out << c.sentence_id << ',' << systems[c.system_a] << ',' << systems[c.system_b] << ','
        << to_string(c.outcome) << '\n';
}

std::vector<Comparison> read_comparisons_csv(const std::filesystem::path& path,
                                             std::span<const std::string> systems) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "sentence_id,system_a,system_b,outcome")
    throw ParseError(path.string(), 1, lines.empty() ? "" : lines[0]);
  auto index_of = [&](const std::string& name) {
    const auto it = std::find(systems.begin(), systems.end(), name);
    if (it == systems.end()) throw UnknownSystem(name);
    return static_cast<std::size_t>(it - systems.begin());
  };
  std::vector<Comparison> out;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    std::stringstream row(lines[ln]);
    std::string id, a, b, outcome;
    if (!std::getline(row, id, ',') || !std::getline(row, a, ',') || !std::getline(row, b, ',') ||
        !std::getline(row, outcome))
      throw ParseError(path.string(), ln + 1, lines[ln]);
    Comparison c;
    try {
      c.sentence_id = std::stoul(id);
    } catch (const std::exception&) {
      throw ParseError(path.string(), ln + 1, lines[ln]);
    }
    c.system_a = index_of(a);
    c.system_b = index_of(b);
    if (outcome == "a_wins") c.outcome = Outcome::kAWins;
    else if (outcome == "b_wins") c.outcome = Outcome::kBWins;
    else if (outcome == "tie") c.outcome = Outcome::kTie;
    else throw ParseError(path.string(), ln + 1, lines[ln]);
    if (c.system_a == c.system_b) throw ParseError(path.string(), ln + 1, lines[ln]);
    out.push_back(c);
  }
  return out;
}

}  // namespace gecrank
