#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "amralign/amralign.hpp"

using namespace amralign;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open " + path);
  return is;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot write " + path);
  return os;
}

Settings settings_from(const std::string& path) {
  if (path.empty()) return Settings{};
  std::ifstream is = open_in(path);
  return load_settings(is);
}

std::vector<SentencePair> corpus_from(const std::string& amr_path, const std::string& trees_path) {
  std::ifstream amr_is = open_in(amr_path);
  if (trees_path.empty()) return load_corpus(amr_is, nullptr);
  std::ifstream trees_is = open_in(trees_path);
  return load_corpus(amr_is, &trees_is);
}

std::vector<AlignmentSet> alignments_from(const std::string& path) {
  std::ifstream is = open_in(path);
  std::vector<AlignmentSet> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) out.push_back(parse_pharaoh_line(line, ++lineno));
  return out;
}

std::vector<std::vector<std::string>> token_lines(const std::string& path) {
  std::ifstream is = open_in(path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(is, line)) out.push_back(split_ws(line));
  return out;
}

// Runs fn(0..n-1) over `jobs` threads; the first exception wins and rethrows
// after everything joined.
template <typename Fn>
void parallel_for(int n, int jobs, Fn fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Shared options across subcommands.
struct CommonOpts {
  std::string settings_path;
  int gold_index_base = -1;  // -1 keeps the settings value

  Settings settings() const {
    Settings s = settings_from(settings_path);
    if (gold_index_base >= 0) s.gold_index_base = gold_index_base;
    return s;
  }
};

struct PreprocessOpts : CommonOpts {
  std::string amr_path, trees_path;
  std::string out_amr, out_en, out_gold;
  bool linear = false;
};

void run_preprocess(const PreprocessOpts& o) {
  Settings s = o.settings();
  std::vector<SentencePair> pairs = corpus_from(o.amr_path, o.trees_path);
  std::optional<std::ofstream> amr_os, en_os, gold_os;
  if (!o.out_amr.empty()) amr_os = open_out(o.out_amr);
  if (!o.out_en.empty()) en_os = open_out(o.out_en);
  if (!o.out_gold.empty()) gold_os = open_out(o.out_gold);

  for (const SentencePair& pair : pairs) {
    TokenStream linear = linearize(pair.graph);
    if (amr_os) {
      if (o.linear) {
        *amr_os << join(linear.surfaces(), " ") << '\n';
      } else {
        auto [filtered, prov] = filter_tokens(linear, s.filter);
        *amr_os << join(normalize(filtered, s.stem_len).surfaces(), " ") << '\n';
      }
    }
    if (en_os) {
      if (o.linear) {
        *en_os << join(pair.english, " ") << '\n';
      } else {
        auto [filtered, prov] = filter_tokens(english_stream(pair.english), s.filter);
        *en_os << join(normalize(filtered, s.stem_len).surfaces(), " ") << '\n';
      }
    }
    if (gold_os) {
      AlignmentSet gold = canonical_gold(pair.graph, linear, static_cast<int>(pair.english.size()),
                                         s.gold_index_base);
      *gold_os << write_pharaoh_line(gold, true) << '\n';
    }
  }
}

struct Amr2TreeOpts : CommonOpts {
  std::string amr_path, out_path;
  bool filtered = false;
};

void run_amr2tree(const Amr2TreeOpts& o) {
  Settings s = o.settings();
  std::ifstream amr_is = open_in(o.amr_path);
  std::vector<AmrGraph> graphs = read_amr_file(amr_is);
  std::ofstream os = open_out(o.out_path);
  for (const AmrGraph& g : graphs) {
    auto [tree, prov] = amr_to_tree(g, s.labels);
    if (o.filtered) {
      auto [ftree, fprov] = preprocess_amr_tree(tree, s.filter, s.stem_len);
      os << serialize_tree(ftree) << '\n';
    } else {
      os << serialize_tree(tree) << '\n';
    }
  }
}

struct Ibm1TrainOpts {
  std::string src_path, tgt_path, out_path, loglik_path;
  int iterations = 5;
  double floor = 1e-7;
  int jobs = 1;
};

void run_ibm1_train(const Ibm1TrainOpts& o) {
  std::vector<std::vector<std::string>> src = token_lines(o.src_path);
  std::vector<std::vector<std::string>> tgt = token_lines(o.tgt_path);
  if (src.size() != tgt.size())
    throw DataError("token files differ in length: " + std::to_string(src.size()) + " vs " +
                    std::to_string(tgt.size()));
  StringCorpus corpus;
  corpus.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) corpus.emplace_back(std::move(src[i]), std::move(tgt[i]));

  std::vector<double> loglik;
  TranslationTable table = train_ibm1(corpus, o.iterations, o.floor, o.jobs, &loglik);
  std::ofstream os = open_out(o.out_path);
  write_ttable(os, table);
  if (!o.loglik_path.empty()) {
    std::ofstream ll = open_out(o.loglik_path);
    for (double v : loglik) ll << format_double(v) << '\n';
  }
}

struct Ibm1AlignOpts : CommonOpts {
  std::string amr_path, trees_path, table_path, out_path;
  bool reverse = false;
  double floor = 1e-7;
};

void run_ibm1_align(const Ibm1AlignOpts& o) {
  Settings s = o.settings();
  std::vector<SentencePair> pairs = corpus_from(o.amr_path, o.trees_path);
  std::ifstream table_is = open_in(o.table_path);
  TranslationTable table = read_ttable(table_is, o.floor);
  std::ofstream os = open_out(o.out_path);

  for (const SentencePair& pair : pairs) {
    TokenStream linear = linearize(pair.graph);
    auto [amr_f, amr_prov] = filter_tokens(linear, s.filter);
    TokenStream amr_fn = normalize(amr_f, s.stem_len);
    auto [en_f, en_prov] = filter_tokens(english_stream(pair.english), s.filter);
    TokenStream en_fn = normalize(en_f, s.stem_len);

    // Forward tables give p(amr token | English token); reverse tables swap
    // the sides, so the raw links come out transposed.
    AlignmentSet links = o.reverse ? transpose(viterbi_align(table, en_fn.surfaces(), amr_fn.surfaces()))
                                   : viterbi_align(table, amr_fn.surfaces(), en_fn.surfaces());
    std::vector<RefLink> refs = project_back(links, amr_prov, en_prov);
    AlignmentSet canonical = to_canonical(refs, linear, static_cast<int>(pair.english.size()));
    os << write_pharaoh_line(canonical, true) << '\n';
  }
}

// Builds the decode-ready instances plus their gold links for one corpus.
struct CorpusInstances {
  std::vector<SentencePair> pairs;
  std::vector<PreparedPair> preps;
  std::vector<BuiltInstance> built;
  std::vector<AlignmentSet> gold;  // instance indices
};

CorpusInstances build_corpus(const std::string& amr_path, const std::string& trees_path, SyntaxConfig config,
                             const Settings& s, const TranslationTable* amr_en, const TranslationTable* en_amr,
                             const std::vector<AlignmentSet>* third) {
  CorpusInstances out;
  out.pairs = corpus_from(amr_path, trees_path);
  if (third && third->size() != out.pairs.size())
    throw DataError("third party alignment file length does not match the corpus");
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    PreparedPair prep = prepare_pair(out.pairs[i], s);
    BuiltInstance b = build_instance(out.pairs[i], prep, config, s, amr_en, en_amr,
                                     third ? &(*third)[i] : nullptr);
    AlignmentSet gold = canonical_to_instance_links(
        b, prep, pair_gold(out.pairs[i], prep, s.gold_index_base));
    out.preps.push_back(std::move(prep));
    out.built.push_back(std::move(b));
    out.gold.push_back(std::move(gold));
  }
  return out;
}

struct TrainOpts : CommonOpts {
  std::string config_name = "amr-string-en-tree";
  std::string amr_path, trees_path, dev_amr_path, dev_trees_path;
  std::string table_amr_en_path, table_en_amr_path, third_path;
  std::string out_path;
  int epochs = 10;
  std::uint64_t seed = 1;
  bool plain_decode = false;
};

void run_train(const TrainOpts& o) {
  Settings s = o.settings();
  SyntaxConfig config = parse_syntax_config(o.config_name);
  if (o.dev_amr_path.empty() != o.dev_trees_path.empty())
    throw DataError("development data needs both --dev-amr and --dev-trees");

  TranslationTable amr_en, en_amr;
  bool have_tables = false;
  if (!o.table_amr_en_path.empty()) {
    std::ifstream is = open_in(o.table_amr_en_path);
    amr_en = read_ttable(is);
    have_tables = true;
  }
  if (!o.table_en_amr_path.empty()) {
    std::ifstream is = open_in(o.table_en_amr_path);
    en_amr = read_ttable(is);
    have_tables = true;
  }
  std::optional<std::vector<AlignmentSet>> third;
  if (!o.third_path.empty()) third = alignments_from(o.third_path);

  const TranslationTable* fwd = o.table_amr_en_path.empty() ? nullptr : &amr_en;
  const TranslationTable* bwd = o.table_en_amr_path.empty() ? nullptr : &en_amr;
  CorpusInstances train = build_corpus(o.amr_path, o.trees_path, config, s, fwd, bwd,
                                       third ? &*third : nullptr);
  std::vector<TrainItem> train_items;
  for (std::size_t i = 0; i < train.built.size(); ++i)
    train_items.push_back(TrainItem{std::move(train.built[i].inst), std::move(train.gold[i])});

  std::vector<TrainItem> dev_items;
  if (!o.dev_amr_path.empty()) {
    CorpusInstances dev = build_corpus(o.dev_amr_path, o.dev_trees_path, config, s, fwd, bwd, nullptr);
    for (std::size_t i = 0; i < dev.built.size(); ++i)
      dev_items.push_back(TrainItem{std::move(dev.built[i].inst), std::move(dev.gold[i])});
  }

  // The instances point into amr_en / en_amr, which stay alive until the end
  // of this function, so the model stores copies.
  AlignModel model;
  if (have_tables) {
    model.table_src_tgt = amr_en;
    model.table_tgt_src = en_amr;
    model.has_tables = true;
  }
  model.meta["config"] = syntax_config_name(config);
  model.meta["gold_index_base"] = std::to_string(s.gold_index_base);
  model.meta["features"] = join(s.features.templates.begin(), s.features.templates.end(), ",");
  model.meta["distance_bins"] = std::to_string(s.features.distance_bins);

  TrainReport report;
  AlignModel trained = train_perceptron(std::move(model), train_items, dev_items, o.epochs, o.seed,
                                        s.features, s.decode, !o.plain_decode, &report, &std::cerr);
  std::ofstream os = open_out(o.out_path);
  save_model(os, trained);
  std::cerr << "trained " << train_items.size() - report.skipped << "/" << train_items.size()
            << " instances, best epoch " << report.best_epoch;
  if (!dev_items.empty() && report.best_epoch >= 0 &&
      report.best_epoch < static_cast<int>(report.epochs.size()))
    std::cerr << ", dev F " << format_double(report.epochs[report.best_epoch].dev_f);
  std::cerr << '\n';
}

FeatureConfig features_from_meta(const AlignModel& model, const Settings& s) {
  FeatureConfig cfg = s.features;
  auto it = model.meta.find("features");
  if (it != model.meta.end()) {
    cfg.templates.clear();
    std::string name;
    std::istringstream ss(it->second);
    while (std::getline(ss, name, ','))
      if (!name.empty()) cfg.templates.insert(name);
  }
  it = model.meta.find("distance_bins");
  if (it != model.meta.end()) cfg.distance_bins = std::stoi(it->second);
  return cfg;
}

struct AlignOpts : CommonOpts {
  std::string config_name;
  std::string model_path, amr_path, trees_path, third_path, out_path;
  int kbest = 1;
  int beam = 0;  // 0 keeps the settings value
  int jobs = 1;
};

void run_align(const AlignOpts& o) {
  Settings s = o.settings();
  std::ifstream model_is = open_in(o.model_path);
  AlignModel model = load_model(model_is);

  std::string meta_config;
  if (auto it = model.meta.find("config"); it != model.meta.end()) meta_config = it->second;
  std::string config_name = o.config_name.empty() ? meta_config : o.config_name;
  if (config_name.empty()) throw DataError("model has no configuration recorded; pass --config");
  if (!o.config_name.empty() && !meta_config.empty() && o.config_name != meta_config)
    throw DataError("model was trained for " + meta_config + ", not " + o.config_name);
  SyntaxConfig config = parse_syntax_config(config_name);

  FeatureConfig fcfg = features_from_meta(model, s);
  DecodeConfig dcfg = s.decode;
  if (o.beam > 0) dcfg.beam = o.beam;
  if (o.kbest < 1) throw std::invalid_argument("--kbest must be >= 1");

  std::optional<std::vector<AlignmentSet>> third;
  if (!o.third_path.empty()) third = alignments_from(o.third_path);

  const TranslationTable* fwd = model.has_tables ? &model.table_src_tgt : nullptr;
  const TranslationTable* bwd = model.has_tables ? &model.table_tgt_src : nullptr;
  CorpusInstances corpus = build_corpus(o.amr_path, o.trees_path, config, s, fwd, bwd,
                                        third ? &*third : nullptr);

  int n = static_cast<int>(corpus.pairs.size());
  std::vector<std::string> lines(n);
  parallel_for(n, o.jobs, [&](int i) {
    std::vector<DecodeResult> results = decode_kbest(model, corpus.built[i].inst, o.kbest, fcfg, dcfg);
    if (o.kbest == 1) {
      AlignmentSet canonical =
          instance_to_canonical_links(corpus.built[i], corpus.preps[i], results[0].alignment);
      lines[i] = write_pharaoh_line(canonical, true);
    } else {
      std::string block;
      for (std::size_t r = 0; r < results.size(); ++r) {
        AlignmentSet canonical =
            instance_to_canonical_links(corpus.built[i], corpus.preps[i], results[r].alignment);
        block += std::to_string(r + 1);
        block += '\t';
        block += format_double(results[r].score);
        block += '\t';
        block += write_pharaoh_line(canonical, true);
        if (r + 1 < results.size()) block += '\n';
      }
      lines[i] = block;
    }
  });

  std::ofstream os = open_out(o.out_path);
  for (int i = 0; i < n; ++i) {
    os << lines[i] << '\n';
    if (o.kbest > 1 && i + 1 < n) os << '\n';
  }
}

struct SymmetrizeOpts {
  std::string a_path, b_path, out_path;
  std::string mode_name = "gdfa";
};

void run_symmetrize(const SymmetrizeOpts& o) {
  SymmetrizeMode mode = parse_symmetrize_mode(o.mode_name);
  std::vector<AlignmentSet> a = alignments_from(o.a_path);
  std::vector<AlignmentSet> b = alignments_from(o.b_path);
  if (a.size() != b.size())
    throw DataError("alignment files differ in length: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  std::ofstream os = open_out(o.out_path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    // The files carry no sentence lengths; the smallest grid holding every
    // link gives the same result as the true one.
    int rows = 0, cols = 0;
    for (const Link& l : a[i].links) {
      rows = std::max(rows, l.src + 1);
      cols = std::max(cols, l.tgt + 1);
    }
    for (const Link& l : b[i].links) {
      rows = std::max(rows, l.src + 1);
      cols = std::max(cols, l.tgt + 1);
    }
    os << write_pharaoh_line(symmetrize(a[i], b[i], rows, cols, mode), true) << '\n';
  }
}

std::vector<TypeFilter> filters_for(const std::string& name) {
  if (name == "all") return {TypeFilter::Concept, TypeFilter::Role, TypeFilter::Both};
  return {parse_type_filter(name)};
}

void write_report(std::ostream& os, const std::string& name, const PRF& v) {
  os << name << '\t' << format_double(v.p) << '\t' << format_double(v.r) << '\t' << format_double(v.f)
     << '\n';
}

struct EvalOpts {
  std::string gold_path, pred_path, out_path;
  std::string type_name = "all";
};

void run_eval(const EvalOpts& o) {
  std::vector<AlignmentSet> gold = alignments_from(o.gold_path);
  std::vector<AlignmentSet> pred = alignments_from(o.pred_path);
  std::ofstream file;
  if (!o.out_path.empty()) file = open_out(o.out_path);
  std::ostream& os = o.out_path.empty() ? std::cout : file;
  for (TypeFilter f : filters_for(o.type_name))
    write_report(os, type_filter_name(f), corpus_prf(gold, pred, f));
}

struct SignificanceOpts {
  std::string gold_path, a_path, b_path, out_path;
  std::string type_name = "both";
  int resamples = 1000;
  std::uint64_t seed = 1;
  double alpha = 0.01;
};

void run_significance(const SignificanceOpts& o) {
  std::vector<AlignmentSet> gold = alignments_from(o.gold_path);
  std::vector<AlignmentSet> a = alignments_from(o.a_path);
  std::vector<AlignmentSet> b = alignments_from(o.b_path);
  std::ofstream file;
  if (!o.out_path.empty()) file = open_out(o.out_path);
  std::ostream& os = o.out_path.empty() ? std::cout : file;
  for (TypeFilter f : filters_for(o.type_name)) {
    double p = bootstrap_significance(gold, a, b, f, o.resamples, o.seed);
    os << type_filter_name(f) << '\t' << format_double(p) << '\t'
       << (p < o.alpha ? "significant" : "not-significant") << '\n';
  }
}

struct UpperBoundOpts : CommonOpts {
  std::string amr_path, trees_path, out_path;
};

void run_upper_bound(const UpperBoundOpts& o) {
  Settings s = o.settings();
  std::vector<SentencePair> pairs = corpus_from(o.amr_path, o.trees_path);
  std::vector<UpperBoundItem> items;
  for (const SentencePair& pair : pairs) {
    UpperBoundItem item;
    item.amr_linear = linearize(pair.graph);
    item.english = pair.english;
    item.gold = canonical_gold(pair.graph, item.amr_linear, static_cast<int>(pair.english.size()),
                               s.gold_index_base);
    items.push_back(std::move(item));
  }
  std::map<TypeFilter, PRF> bounds = filtering_upper_bound(items, s.filter);
  std::ofstream file;
  if (!o.out_path.empty()) file = open_out(o.out_path);
  std::ostream& os = o.out_path.empty() ? std::cout : file;
  for (TypeFilter f : {TypeFilter::Concept, TypeFilter::Role, TypeFilter::Both})
    write_report(os, type_filter_name(f), bounds[f]);
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--settings", o.settings_path, "settings file");
  cmd->add_option("--gold-index-base", o.gold_index_base, "base of ~e.N annotation indices (0 or 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aligner between English sentences and AMR graphs"};
  app.require_subcommand(1);

  PreprocessOpts pre;
  CLI::App* cmd_pre = app.add_subcommand("preprocess", "filter and normalize a corpus into token files");
  cmd_pre->add_option("--amr", pre.amr_path, "AMR corpus")->required();
  cmd_pre->add_option("--trees", pre.trees_path, "English tree file");
  cmd_pre->add_option("--out-amr", pre.out_amr, "AMR token output");
  cmd_pre->add_option("--out-en", pre.out_en, "English token output");
  cmd_pre->add_option("--out-gold", pre.out_gold, "gold alignment output (typed Pharaoh)");
  cmd_pre->add_flag("--linear", pre.linear, "write unfiltered streams");
  add_common(cmd_pre, pre);

  Amr2TreeOpts a2t;
  CLI::App* cmd_a2t = app.add_subcommand("amr2tree", "convert AMR graphs to constituency trees");
  cmd_a2t->add_option("--amr", a2t.amr_path, "AMR corpus")->required();
  cmd_a2t->add_option("--out", a2t.out_path, "tree output")->required();
  cmd_a2t->add_flag("--filtered", a2t.filtered, "apply filtering and stemming");
  add_common(cmd_a2t, a2t);

  Ibm1TrainOpts i1t;
  CLI::App* cmd_i1t = app.add_subcommand("ibm1-train", "train lexical translation probabilities");
  cmd_i1t->add_option("--src", i1t.src_path, "source token file")->required();
  cmd_i1t->add_option("--tgt", i1t.tgt_path, "target token file")->required();
  cmd_i1t->add_option("--out", i1t.out_path, "translation table output")->required();
  cmd_i1t->add_option("--iterations", i1t.iterations, "EM iterations");
  cmd_i1t->add_option("--floor", i1t.floor, "probability floor");
  cmd_i1t->add_option("--jobs", i1t.jobs, "worker threads");
  cmd_i1t->add_option("--loglik", i1t.loglik_path, "per-iteration log likelihood output");

  Ibm1AlignOpts i1a;
  CLI::App* cmd_i1a = app.add_subcommand("ibm1-align", "Viterbi-align a corpus with a translation table");
  cmd_i1a->add_option("--amr", i1a.amr_path, "AMR corpus")->required();
  cmd_i1a->add_option("--trees", i1a.trees_path, "English tree file");
  cmd_i1a->add_option("--table", i1a.table_path, "translation table")->required();
  cmd_i1a->add_option("--out", i1a.out_path, "alignment output")->required();
  cmd_i1a->add_flag("--reverse", i1a.reverse, "table holds p(English | AMR)");
  cmd_i1a->add_option("--floor", i1a.floor, "probability floor");
  add_common(cmd_i1a, i1a);

  TrainOpts tr;
  CLI::App* cmd_tr = app.add_subcommand("train", "train the hierarchical alignment model");
  cmd_tr->add_option("--config", tr.config_name, "grid configuration");
  cmd_tr->add_option("--amr", tr.amr_path, "training AMR corpus")->required();
  cmd_tr->add_option("--trees", tr.trees_path, "training English trees")->required();
  cmd_tr->add_option("--dev-amr", tr.dev_amr_path, "development AMR corpus");
  cmd_tr->add_option("--dev-trees", tr.dev_trees_path, "development English trees");
  cmd_tr->add_option("--out", tr.out_path, "model output")->required();
  cmd_tr->add_option("--epochs", tr.epochs, "training epochs");
  cmd_tr->add_option("--seed", tr.seed, "shuffle seed");
  cmd_tr->add_option("--table-amr-en", tr.table_amr_en_path, "p(AMR | English) translation table");
  cmd_tr->add_option("--table-en-amr", tr.table_en_amr_path, "p(English | AMR) translation table");
  cmd_tr->add_option("--third", tr.third_path, "third party alignments (canonical Pharaoh)");
  cmd_tr->add_flag("--plain-decode", tr.plain_decode, "train without loss augmentation");
  add_common(cmd_tr, tr);

  AlignOpts al;
  CLI::App* cmd_al = app.add_subcommand("align", "align a corpus with a trained model");
  cmd_al->add_option("--config", al.config_name, "grid configuration (defaults to the model's)");
  cmd_al->add_option("--model", al.model_path, "model file")->required();
  cmd_al->add_option("--amr", al.amr_path, "AMR corpus")->required();
  cmd_al->add_option("--trees", al.trees_path, "English tree file")->required();
  cmd_al->add_option("--out", al.out_path, "alignment output")->required();
  cmd_al->add_option("--kbest", al.kbest, "alignments per sentence");
  cmd_al->add_option("--beam", al.beam, "beam size override");
  cmd_al->add_option("--jobs", al.jobs, "worker threads");
  cmd_al->add_option("--third", al.third_path, "third party alignments (canonical Pharaoh)");
  add_common(cmd_al, al);

  SymmetrizeOpts sym;
  CLI::App* cmd_sym = app.add_subcommand("symmetrize", "combine two directional alignments");
  cmd_sym->add_option("--a", sym.a_path, "first alignment file")->required();
  cmd_sym->add_option("--b", sym.b_path, "second alignment file")->required();
  cmd_sym->add_option("--out", sym.out_path, "combined output")->required();
  cmd_sym->add_option("--mode", sym.mode_name, "intersection, union, gd, gdf or gdfa");

  EvalOpts ev;
  CLI::App* cmd_ev = app.add_subcommand("eval", "score predictions against gold alignments");
  cmd_ev->add_option("--gold", ev.gold_path, "gold alignment file")->required();
  cmd_ev->add_option("--pred", ev.pred_path, "predicted alignment file")->required();
  cmd_ev->add_option("--type", ev.type_name, "concept, role, both or all");
  cmd_ev->add_option("--out", ev.out_path, "report output (default stdout)");

  SignificanceOpts sig;
  CLI::App* cmd_sig = app.add_subcommand("significance", "paired bootstrap test between two systems");
  cmd_sig->add_option("--gold", sig.gold_path, "gold alignment file")->required();
  cmd_sig->add_option("--a", sig.a_path, "first system output")->required();
  cmd_sig->add_option("--b", sig.b_path, "second system output")->required();
  cmd_sig->add_option("--type", sig.type_name, "concept, role, both or all");
  cmd_sig->add_option("--resamples", sig.resamples, "bootstrap resamples");
  cmd_sig->add_option("--seed", sig.seed, "resampling seed");
  cmd_sig->add_option("--alpha", sig.alpha, "significance threshold");
  cmd_sig->add_option("--out", sig.out_path, "report output (default stdout)");

  UpperBoundOpts ub;
  CLI::App* cmd_ub = app.add_subcommand("upper-bound", "best scores reachable after filtering");
  cmd_ub->add_option("--amr", ub.amr_path, "AMR corpus with gold annotations")->required();
  cmd_ub->add_option("--trees", ub.trees_path, "English tree file");
  cmd_ub->add_option("--out", ub.out_path, "report output (default stdout)");
  add_common(cmd_ub, ub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_pre->parsed()) run_preprocess(pre);
    if (cmd_a2t->parsed()) run_amr2tree(a2t);
    if (cmd_i1t->parsed()) run_ibm1_train(i1t);
    if (cmd_i1a->parsed()) run_ibm1_align(i1a);
    if (cmd_tr->parsed()) run_train(tr);
    if (cmd_al->parsed()) run_align(al);
    if (cmd_sym->parsed()) run_symmetrize(sym);
    if (cmd_ev->parsed()) run_eval(ev);
    if (cmd_sig->parsed()) run_significance(sig);
    if (cmd_ub->parsed()) run_upper_bound(ub);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
