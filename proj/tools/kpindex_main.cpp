// kpindex: keyphrase extraction, neighbor detection, indexing and search over
// JSON Lines corpora of titles and abstracts.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "kpindex/commands.hpp"
#include "kpindex/error.hpp"
#include "kpindex/parallel.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string flag_name(std::string key) {
  for (auto& c : key) {
    if (c == '_') c = '-';
  }
  return "--" + key;
}

struct CommonOptions {
  std::string config_path;
  std::string output_path;
  int threads = 0;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "key = value configuration file");
  cmd->add_option("--output", opts.output_path, "write output here instead of stdout");
  cmd->add_option("--threads", opts.threads, "worker threads (default: all cores)");
  for (const auto& key : kpindex::Config::keys()) {
    cmd->add_option(flag_name(key), opts.overrides[key], "override config key " + key);
  }
}

kpindex::Config resolve_config(const CLI::App* cmd, const CommonOptions& opts) {
  kpindex::Config cfg;
  if (!opts.config_path.empty()) cfg = kpindex::Config::from_file(opts.config_path);
  for (const auto& key : kpindex::Config::keys()) {
    if (cmd->count(flag_name(key)) > 0) cfg.set(key, opts.overrides.at(key));
  }
  cfg.validate();
  return cfg;
}

// Runs `fn` with stdout or the --output file as the sink.
template <class Fn>
void with_output(const CommonOptions& opts, bool binary, Fn&& fn) {
  if (opts.output_path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(opts.output_path, binary ? std::ios::binary | std::ios::trunc
                                             : std::ios::trunc);
  if (!out) throw kpindex::DataError("cannot write " + opts.output_path);
  fn(out);
  out.flush();
  if (!out) throw kpindex::DataError("failed writing " + opts.output_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyphrase indexing with neighbor-document expansion"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string corpus_path;
  std::string index_path;
  std::string query;
  std::string dot_dir;
  std::string model = "full";
  bool csv = false;
  std::size_t search_top = 10;

  auto* extract = app.add_subcommand("extract", "rank keyphrases for every document");
  extract->add_option("corpus", corpus_path, "JSON Lines corpus")->required();
  extract->add_option("--dot-dump", dot_dir, "write each document graph as DOT here");
  add_common(extract, opts);

  auto* index = app.add_subcommand("index", "build an inverted index");
  index->add_option("corpus", corpus_path, "JSON Lines corpus")->required();
  index->add_option("index", index_path, "index file to write")->required();
  add_common(index, opts);

  auto* search = app.add_subcommand("search", "query an index with BM25");
  search->add_option("index", index_path, "index file")->required();
  search->add_option("query", query, "query text")->required();
  search->add_option("--top", search_top, "number of hits (default 10)");
  add_common(search, opts);

  auto* neighbors = app.add_subcommand("neighbors", "list similar documents");
  neighbors->add_option("corpus", corpus_path, "JSON Lines corpus")->required();
  add_common(neighbors, opts);

  auto* evaluate = app.add_subcommand("evaluate", "score a model against gold keyphrases");
  evaluate->add_option("corpus", corpus_path, "gold-annotated JSON Lines corpus")->required();
  evaluate->add_option("--model", model, "full | no-expansion | tfidf");
  evaluate->add_flag("--csv", csv, "emit per-document CSV instead of the JSON report");
  add_common(evaluate, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  const CLI::App* cmd = app.get_subcommands().front();
  try {
    const kpindex::Config cfg = resolve_config(cmd, opts);
    kpindex::parallel::set_threads(opts.threads);

    if (cmd == search) {
      const auto idx = kpindex::InvertedIndex::load(index_path);
      const auto hits = idx.search(query, search_top);
      with_output(opts, false,
                  [&](std::ostream& out) { kpindex::write_search_results(query, hits, out); });
      return 0;
    }

    const auto corpus = kpindex::load_corpus(corpus_path, cfg.load_stopwords());
    if (corpus.empty()) throw kpindex::DataError("corpus " + corpus_path + " is empty");

    if (cmd == extract) {
      with_output(opts, false,
                  [&](std::ostream& out) { kpindex::run_extract(corpus, cfg, out, dot_dir); });
    } else if (cmd == index) {
      kpindex::run_index(corpus, cfg).save(index_path);
    } else if (cmd == neighbors) {
      with_output(opts, false,
                  [&](std::ostream& out) { kpindex::run_neighbors(corpus, cfg, out); });
    } else if (cmd == evaluate) {
      const auto report = kpindex::run_evaluate(corpus, cfg, model);
      with_output(opts, false, [&](std::ostream& out) {
        if (csv) {
          report.write_csv(out);
        } else {
          out << report.to_json().dump(2) << '\n';
        }
      });
    }
  } catch (const kpindex::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
