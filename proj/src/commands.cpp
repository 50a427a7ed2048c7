#include "kpindex/commands.hpp"

#include <filesystem>
#include <fstream>

#include "kpindex/error.hpp"
#include "kpindex/parallel.hpp"
#include "kpindex/pipeline.hpp"

namespace kpindex {
namespace {

using ojson = nlohmann::ordered_json;

std::string dot_file_name(const std::string& id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out + ".dot";
}

void write_config_header(const Config& config, std::ostream& out) {
  ojson header;
  header["config"] = config.to_json();
  out << header.dump() << '\n';
}

std::vector<std::string> surfaces(const std::vector<RankedKeyphrase>& ranking) {
  std::vector<std::string> out;
  out.reserve(ranking.size());
  for (const auto& kp : ranking) out.push_back(kp.surface);
  return out;
}

}  // namespace

void run_extract(const Corpus& corpus, const Config& config, std::ostream& out,
                 const std::string& dot_dir) {
  const KeyphraseExtractor extractor(corpus, config);
  const auto rankings = extractor.extract_all();

  if (!dot_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dot_dir, ec);
    if (ec) throw DataError("cannot create DOT directory " + dot_dir);
    parallel::for_each_index(corpus.size(), [&](std::size_t i) {
      const auto path = std::filesystem::path(dot_dir) / dot_file_name(corpus[i].id);
      std::ofstream dot(path);
      if (!dot) throw DataError("cannot write " + path.string());
      write_dot(dot, extractor.build_graph(i));
    });
  }

  write_config_header(config, out);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    ojson rec;
    rec["id"] = corpus[i].id;
    rec["keyphrases"] = ojson::array();
    for (const auto& kp : rankings[i]) {
      rec["keyphrases"].push_back(
          {{"phrase", kp.surface}, {"score", kp.score}, {"origin", to_string(kp.origin)}});
    }
    out << rec.dump() << '\n';
  }
}

void run_neighbors(const Corpus& corpus, const Config& config, std::ostream& out) {
  config.validate();
  const TfidfSimilarity provider(corpus);
  const auto sets = all_neighbors(provider, config.k_neighbors, config.min_sim);
  write_config_header(config, out);
  for (const auto& ns : sets) {
    ojson rec;
    rec["id"] = ns.source;
    rec["neighbors"] = ojson::array();
    for (const auto& nb : ns.neighbors) {
      rec["neighbors"].push_back({{"id", nb.id}, {"sim", nb.sim}});
    }
    out << rec.dump() << '\n';
  }
}

InvertedIndex run_index(const Corpus& corpus, const Config& config) {
  const KeyphraseExtractor extractor(corpus, config);
  std::vector<std::vector<RankedKeyphrase>> assigned(corpus.size());
  parallel::for_each_index(corpus.size(), [&](std::size_t i) {
    const auto full = extractor.extract_unbounded(i);
    for (std::size_t r = 0; r < full.size(); ++r) {
      const bool in_top = r < config.top_n;
      if (full[r].origin == Origin::kAbsent || in_top) assigned[i].push_back(full[r]);
    }
  });
  InvertedIndex idx = build_index(corpus, assigned);
  idx.config_echo = config.to_json().dump();
  return idx;
}

const std::vector<std::string>& evaluation_models() {
  static const std::vector<std::string> names = {"full", "no-expansion", "tfidf"};
  return names;
}

EvaluationReport run_evaluate(const Corpus& corpus, const Config& config,
                              const std::string& model) {
  if (model == "full" || model == "no-expansion") {
    const Config effective = model == "full" ? config : config.without_expansion();
    const KeyphraseExtractor extractor(corpus, effective);
    return evaluate_corpus(
        corpus, [&](std::size_t i) { return surfaces(extractor.extract(i)); }, model,
        effective.to_json());
  }
  if (model == "tfidf") {
    config.validate();
    const IdfTable idf = compute_idf(corpus);
    const auto candidates = extract_all_candidates(corpus, config.max_len);
    return evaluate_corpus(
        corpus,
        [&](std::size_t i) {
          return surfaces(tfidf_baseline(corpus[i], candidates[i], idf,
                                         corpus.stopwords(), config.top_n));
        },
        model, config.to_json());
  }
  std::string valid;
  for (const auto& name : evaluation_models()) {
    valid += valid.empty() ? name : ", " + name;
  }
  throw UsageError("unknown model \"" + model + "\" (valid: " + valid + ")");
}

void write_search_results(const std::string& query, const std::vector<SearchHit>& hits,
                          std::ostream& out) {
  ojson rec;
  rec["query"] = query;
  rec["hits"] = ojson::array();
  for (const auto& h : hits) rec["hits"].push_back({{"id", h.id}, {"score", h.score}});
  out << rec.dump() << '\n';
}

}  // namespace kpindex
