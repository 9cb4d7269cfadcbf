#include "gecrank/corpus_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gecrank/error.hpp"
#include "json.hpp"

namespace gecrank {

namespace fs = std::filesystem;

Tokens tokenize(std::string_view sentence) {
  Tokens tokens;
  constexpr std::string_view kSpace = " \t\n\r\f\v";
  std::size_t pos = sentence.find_first_not_of(kSpace);
  while (pos != std::string_view::npos) {
    const std::size_t end = sentence.find_first_of(kSpace, pos);
    tokens.emplace_back(sentence.substr(pos, end == std::string_view::npos ? end : end - pos));
    pos = sentence.find_first_not_of(kSpace, end == std::string_view::npos ? sentence.size() : end);
  }
  return tokens;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound(path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

EvalCorpus::EvalCorpus(std::vector<std::string> sources, std::vector<SystemOutputs> systems,
                       std::vector<std::vector<std::string>> references)
    : sources_(std::move(sources)),
      systems_(std::move(systems)),
      references_(std::move(references)) {
  if (sources_.empty()) throw EmptyCorpus();
  const std::size_t m = sources_.size();
  std::set<std::string, std::less<>> seen;
  for (const auto& system : systems_) {
    if (system.name.empty() || !seen.insert(system.name).second)
      throw DuplicateSystemName(system.name);
    if (system.hypotheses.size() != m)
      throw LengthMismatch("system " + system.name, m, system.hypotheses.size());
  }
  if (!references_.empty()) {
    if (references_.size() != m) throw LengthMismatch("references", m, references_.size());
    for (std::size_t i = 0; i < m; ++i)
      if (references_[i].empty()) throw MissingReference(i);
  }
}

std::vector<std::string> EvalCorpus::system_names() const {
  std::vector<std::string> names;
  names.reserve(systems_.size());
  for (const auto& s : systems_) names.push_back(s.name);
  return names;
}

std::size_t EvalCorpus::system_index(std::string_view name) const {
  for (std::size_t k = 0; k < systems_.size(); ++k)
    if (systems_[k].name == name) return k;
  throw UnknownSystem(std::string(name));
}

const std::vector<std::string>& EvalCorpus::references(std::size_t sentence) const {
  if (references_.empty()) throw MissingReference(sentence);
  return references_.at(sentence);
}

EvalCorpus load_corpus(const fs::path& source_path, const NamedPaths& systems,
                       const std::vector<fs::path>& reference_paths) {
  auto sources = read_lines(source_path);
  if (sources.empty()) throw EmptyCorpus();
  const std::size_t m = sources.size();

  std::vector<SystemOutputs> outputs;
  outputs.reserve(systems.size());
  for (const auto& [name, path] : systems) {
    auto lines = read_lines(path);
    if (lines.size() != m) throw LengthMismatch(path.string(), m, lines.size());
    outputs.push_back({name, std::move(lines)});
  }

  std::vector<std::vector<std::string>> references;
  if (!reference_paths.empty()) {
    std::vector<std::vector<std::string>> files;
    for (const auto& path : reference_paths) {
      auto lines = read_lines(path);
      if (lines.size() != m) throw LengthMismatch(path.string(), m, lines.size());
      files.push_back(std::move(lines));
    }
    references.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (files.size() == 1) {
        references[i].push_back(files[0][i]);
        continue;
      }
      for (const auto& file : files)
        if (!tokenize(file[i]).empty()) references[i].push_back(file[i]);
      if (references[i].empty()) {
        if (!tokenize(sources[i]).empty()) throw MissingReference(i);
        references[i].emplace_back();
      }
    }
  }
  return EvalCorpus(std::move(sources), std::move(outputs), std::move(references));
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound(path.string());
  try {
    return ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

NamedPaths named_paths(const ordered_json& obj, const fs::path& base, const fs::path& file) {
  if (!obj.is_object()) throw ConfigError(file.string() + ": 'systems' must be an object");
  NamedPaths out;
  for (const auto& [name, value] : obj.items()) {
    if (!value.is_string()) throw ConfigError(file.string() + ": path for " + name + " must be a string");
    out.emplace_back(name, resolve(base, value.get<std::string>()));
  }
  return out;
}

}  // namespace

CorpusManifest read_corpus_manifest(const fs::path& manifest_path) {
  const auto doc = read_json(manifest_path);
  const fs::path base = manifest_path.parent_path();
  CorpusManifest manifest;
  if (!doc.is_object() || !doc.contains("source") || !doc["source"].is_string())
    throw ConfigError(manifest_path.string() + ": missing 'source'");
  manifest.source = resolve(base, doc["source"].get<std::string>());
  if (!doc.contains("systems")) throw ConfigError(manifest_path.string() + ": missing 'systems'");
  manifest.systems = named_paths(doc["systems"], base, manifest_path);
  if (doc.contains("references")) {
    for (const auto& ref : doc["references"]) {
      if (!ref.is_string()) throw ConfigError(manifest_path.string() + ": reference paths must be strings");
      manifest.references.push_back(resolve(base, ref.get<std::string>()));
    }
  }
  return manifest;
}

EvalCorpus load_corpus(const CorpusManifest& manifest) {
  return load_corpus(manifest.source, manifest.systems, manifest.references);
}

ScoreMatrix::ScoreMatrix(std::vector<std::string> system_names, std::size_t sentence_count)
    : names_(std::move(system_names)),
      sentence_count_(sentence_count),
      values_(sentence_count_ * names_.size(), 0.0) {}

ScoreMatrix::ScoreMatrix(std::vector<std::string> system_names, std::size_t sentence_count,
                         std::vector<double> row_major)
    : names_(std::move(system_names)), sentence_count_(sentence_count), values_(std::move(row_major)) {
  if (values_.size() != sentence_count_ * names_.size())
    throw LengthMismatch("score matrix", sentence_count_ * names_.size(), values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i])) throw NonFiniteScore(names_[i % names_.size()], i / names_.size() + 1);
}

void ScoreMatrix::set(std::size_t sentence, std::size_t system, double value) {
  if (!std::isfinite(value)) throw NonFiniteScore(names_.at(system), sentence + 1);
  values_[sentence * names_.size() + system] = value;
}

std::vector<double> ScoreMatrix::column(std::size_t system) const {
  std::vector<double> out(sentence_count_);
  for (std::size_t i = 0; i < sentence_count_; ++i) out[i] = at(i, system);
  return out;
}

namespace {

double parse_score(const std::string& line, const std::string& file, std::size_t lineno) {
  const auto first = line.find_first_not_of(" \t");
  const auto last = line.find_last_not_of(" \t");
  if (first == std::string::npos) throw ParseError(file, lineno, line);
  const char* begin = line.data() + first;
  const char* end = line.data() + last + 1;
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(file, lineno, line);
  return value;
}

}  // namespace

ScoreMatrix load_scores(const NamedPaths& manifest, std::size_t sentence_count) {
  std::vector<std::string> names;
  std::set<std::string, std::less<>> seen;
  for (const auto& [name, path] : manifest) {
    if (name.empty() || !seen.insert(name).second) throw DuplicateSystemName(name);
    names.push_back(name);
  }
  ScoreMatrix matrix(names, sentence_count);
  for (std::size_t k = 0; k < manifest.size(); ++k) {
    const auto& [name, path] = manifest[k];
    const auto lines = read_lines(path);
    if (lines.size() != sentence_count) throw LengthMismatch(path.string(), sentence_count, lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const double v = parse_score(lines[i], path.string(), i + 1);
      if (!std::isfinite(v)) throw NonFiniteScore(name, i + 1);
      matrix.set(i, k, v);
    }
  }
  return matrix;
}

NamedPaths read_score_manifest(const fs::path& manifest_path) {
  const auto doc = read_json(manifest_path);
  const fs::path base = manifest_path.parent_path();
  if (doc.is_object() && doc.contains("systems")) return named_paths(doc["systems"], base, manifest_path);
  return named_paths(doc, base, manifest_path);
}

NamedPaths write_scores(const ScoreMatrix& scores, const fs::path& dir) {
  fs::create_directories(dir);
  NamedPaths written;
  ordered_json manifest;
  manifest["systems"] = ordered_json::object();
  char buf[64];
  for (std::size_t k = 0; k < scores.system_count(); ++k) {
    const auto& name = scores.system_names()[k];
    const fs::path path = dir / (name + ".scores");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NotFound(path.string());
    for (std::size_t i = 0; i < scores.sentence_count(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g\n", scores.at(i, k));
      out << buf;
    }
    manifest["systems"][name] = name + ".scores";
    written.emplace_back(name, path);
  }
  std::ofstream(dir / "scores.json") << manifest.dump(2) << '\n';
  return written;
}

}  // namespace gecrank
