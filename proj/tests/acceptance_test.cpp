// Acceptance gate: one self-contained check per shipped guarantee, each
// printing a single [PASS] / [FAIL] line. Returns the number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "amralign/amralign.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace amralign;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances. Decode and loss-augmentation comparisons are exact by
// construction (grid weights), so they use operator== with no epsilon.
constexpr double kLogLikTol = 1e-9;
constexpr double kAlpha = 0.01;

std::string g_why;

bool fail(const std::string& why) {
  if (g_why.empty()) g_why = why;
  return false;
}

bool check(bool ok, const std::string& why) { return ok ? true : fail(why); }

// ---- shared generators (mirror the unit-test setup) ----

FeatureConfig grid_config() {
  FeatureConfig cfg = FeatureConfig::defaults();
  cfg.templates.erase("tprob_st");
  cfg.templates.erase("tprob_ts");
  return cfg;
}

FeatureVector grid_weights(std::mt19937_64& rng, const AlignmentInstance& inst, const FeatureConfig& cfg) {
  FeatureVector w = testutil::random_weights(rng, inst, cfg);
  for (auto& [name, value] : w) value = static_cast<double>(static_cast<int>(rng() % 9)) / 4.0 - 1.0;
  return w;
}

DecodeConfig exhaustive_config() {
  DecodeConfig dcfg;
  dcfg.beam = 100000;
  dcfg.pair_window = 2;
  return dcfg;
}

AlignmentSet random_gold(std::mt19937_64& rng, const AlignmentInstance& inst) {
  AlignmentSet gold;
  for (int s = 0; s < inst.n_source(); ++s)
    for (int t = 0; t < inst.n_target(); ++t)
      if (rng() % 10 < 2) gold.add(s, t);
  return gold;
}

AlignmentSet random_typed_set(std::mt19937_64& rng, int rows, int cols) {
  AlignmentSet out;
  for (int s = 0; s < rows; ++s)
    for (int t = 0; t < cols; ++t)
      if (rng() % 10 < 3)
        out.add(s, t, rng() % 2 ? LinkType::Concept : LinkType::Role);
  out.src_size = rows;
  out.tgt_size = cols;
  return out;
}

// Instances plus instance-space gold for a whole fixture corpus.
struct FixtureItems {
  std::vector<SentencePair> pairs;
  std::vector<PreparedPair> preps;
  std::vector<BuiltInstance> built;
  std::vector<TrainItem> items;
  std::vector<AlignmentSet> canonical_gold;
};

FixtureItems load_items(const std::string& amr_name, const std::string& tree_name, SyntaxConfig config,
                        const Settings& s) {
  FixtureItems out;
  out.pairs = testutil::load_pairs(amr_name, tree_name);
  for (const SentencePair& pair : out.pairs) {
    PreparedPair prep = prepare_pair(pair, s);
    BuiltInstance b = build_instance(pair, prep, config, s, nullptr, nullptr, nullptr);
    AlignmentSet gold = pair_gold(pair, prep, s.gold_index_base);
    TrainItem item;
    item.gold = canonical_to_instance_links(b, prep, gold);
    out.canonical_gold.push_back(std::move(gold));
    out.preps.push_back(std::move(prep));
    out.built.push_back(std::move(b));
    item.instance = out.built.back().inst;
    out.items.push_back(std::move(item));
  }
  return out;
}

std::vector<AlignmentSet> decode_corpus(const AlignModel& model, const FixtureItems& fx,
                                        const FeatureConfig& fcfg, const DecodeConfig& dcfg) {
  std::vector<AlignmentSet> out;
  for (std::size_t i = 0; i < fx.items.size(); ++i) {
    DecodeResult r = decode_kbest(model, fx.items[i].instance, 1, fcfg, dcfg).front();
    out.push_back(instance_to_canonical_links(fx.built[i], fx.preps[i], r.alignment));
  }
  return out;
}

// IBM Model 1 baseline over prepared token streams, projected back to
// canonical coordinates.
std::vector<AlignmentSet> ibm1_canonical(const TranslationTable& table, const FixtureItems& fx,
                                         bool reverse) {
  std::vector<AlignmentSet> out;
  for (std::size_t i = 0; i < fx.pairs.size(); ++i) {
    const PreparedPair& prep = fx.preps[i];
    AlignmentSet links = reverse
                             ? transpose(viterbi_align(table, prep.en_fn.surfaces(), prep.amr_fn.surfaces()))
                             : viterbi_align(table, prep.amr_fn.surfaces(), prep.en_fn.surfaces());
    std::vector<RefLink> refs = project_back(links, prep.amr_fn_prov, prep.en_fn_prov);
    out.push_back(to_canonical(refs, prep.amr_linear, prep.en_size));
  }
  return out;
}

StringCorpus prepared_corpus(const FixtureItems& fx, bool amr_source) {
  StringCorpus corpus;
  for (const PreparedPair& prep : fx.preps)
    corpus.emplace_back(amr_source ? prep.amr_fn.surfaces() : prep.en_fn.surfaces(),
                        amr_source ? prep.en_fn.surfaces() : prep.amr_fn.surfaces());
  return corpus;
}

// ---- criteria ----

bool preprocessing_strings() {
  std::vector<SentencePair> pairs = testutil::load_pairs("fig1.amr", "fig1.ptb");
  Settings s;
  PreparedPair prep = prepare_pair(pairs[0], s);
  if (!check(testutil::surfaces_joined(prep.amr_linear) ==
                 "possible :domain go-01 :ARG1 thing :ARG2-of price-01 :ARG1 gas :quant volume-quantity"
                 " :quant 1 :unit gallon :ARG4 monetary-quantity :quant 10 :unit dollar",
             "linearized AMR differs: " + testutil::surfaces_joined(prep.amr_linear)))
    return false;
  auto [en_f, en_prov] = filter_tokens(english_stream(pairs[0].english), s.filter);
  if (!check(join(en_f.surfaces(), " ") == "Gas could go to $ 10 gallon",
             "filtered English differs: " + join(en_f.surfaces(), " ")))
    return false;
  if (!check(testutil::surfaces_joined(prep.en_fn) == "gas coul go to $ 10 gall",
             "normalized English differs: " + testutil::surfaces_joined(prep.en_fn)))
    return false;
  if (!check(testutil::surfaces_joined(prep.amr_fn) ==
                 "poss :domain go thin :arg2-of pric gas 1 gall :arg4 10 doll",
             "normalized AMR differs: " + testutil::surfaces_joined(prep.amr_fn)))
    return false;
  AlignmentSet gold = pair_gold(pairs[0], prep, s.gold_index_base);
  return check(write_pharaoh_line(gold, true) == "0-1:C 2-2:C 8-0:C 14-7:C 15-3:R 18-5:C 20-4:C",
               "gold links differ: " + write_pharaoh_line(gold, true));
}

bool decode_exactness() {
  std::mt19937_64 rng(90210);
  FeatureConfig cfg = grid_config();
  for (int round = 0; round < 120; ++round) {
    AlignmentInstance inst = testutil::random_instance(rng, 4, 4);
    AlignModel model;
    model.weights = grid_weights(rng, inst, cfg);
    DecodeConfig dcfg = exhaustive_config();
    bool constrained = round % 2 == 0;
    dcfg.constraint = constrained ? DecodeConfig::Constraint::On : DecodeConfig::Constraint::Off;
    DecodeResult out = decode_kbest(model, inst, 1, cfg, dcfg).front();
    oracles::ScoredAlignment ref =
        oracles::brute_force_best(inst, cfg, model.weights, dcfg.pair_window, constrained);
    if (!check(out.alignment.links == ref.alignment.links,
               "round " + std::to_string(round) + ": decoded links differ from enumeration"))
      return false;
    if (!check(out.score == ref.score, "round " + std::to_string(round) + ": decoded score differs"))
      return false;
  }
  return true;
}

bool loss_augmented_consistency() {
  std::mt19937_64 rng(31337);
  FeatureConfig cfg = grid_config();
  DecodeConfig dcfg = exhaustive_config();
  dcfg.constraint = DecodeConfig::Constraint::Off;
  for (int round = 0; round < 80; ++round) {
    AlignmentInstance inst = testutil::random_instance(rng, 3, 3);
    AlignModel model;
    model.weights = grid_weights(rng, inst, cfg);
    AlignmentSet gold = random_gold(rng, inst);
    DecodeResult out = loss_augmented_decode(model, inst, gold, 1, cfg, dcfg);

    double model_score = dot(model.weights, feature_vector(inst, cfg, out.alignment));
    int match = intersection_size(gold.links, out.alignment.links);
    double f1 = f1_counts(match, static_cast<int>(out.alignment.links.size()),
                          static_cast<int>(gold.links.size()));
    if (!check(out.score == model_score + (1.0 - f1),
               "round " + std::to_string(round) + ": augmented score is not model score plus loss"))
      return false;

    oracles::ScoredAlignment ref =
        oracles::brute_force_best(inst, cfg, model.weights, dcfg.pair_window, false, &gold);
    if (!check(out.alignment.links == ref.alignment.links && out.score == ref.score,
               "round " + std::to_string(round) + ": augmented decode differs from enumeration"))
      return false;
  }
  return true;
}

bool perceptron_memorization() {
  Settings s;
  FixtureItems fx = load_items("corpus.amr", "corpus.ptb", SyntaxConfig::AmrStringEnTree, s);
  if (!check(fx.items.size() == 20, "fixture does not hold 20 pairs")) return false;

  TrainReport report;
  AlignModel trained = train_perceptron(AlignModel{}, fx.items, fx.items, 10, 17, s.features, s.decode,
                                        true, &report, nullptr);
  double best = -1.0;
  for (const TrainReport::Epoch& e : report.epochs) best = std::max(best, e.dev_f);
  if (!check(best == 1.0, "best training F1 is " + format_double(best))) return false;

  TrainReport report2;
  AlignModel again = train_perceptron(AlignModel{}, fx.items, fx.items, 10, 17, s.features, s.decode,
                                      true, &report2, nullptr);
  if (!check(trained.weights == again.weights && trained.averaged == again.averaged,
             "re-training with the same seed changed the weights"))
    return false;
  return check(report.best_epoch == report2.best_epoch, "re-training changed the selected epoch");
}

bool generalization_beats_baseline() {
  Settings s;
  FixtureItems train = load_items("gen_train.amr", "gen_train.ptb", SyntaxConfig::AmrTreeEnTree, s);
  FixtureItems test = load_items("gen_test.amr", "gen_test.ptb", SyntaxConfig::AmrTreeEnTree, s);

  TranslationTable table = train_ibm1(prepared_corpus(train, true), 5);
  std::vector<AlignmentSet> ibm1_pred = ibm1_canonical(table, test, false);
  PRF ibm1_score = corpus_prf(test.canonical_gold, ibm1_pred, TypeFilter::Both);

  AlignModel trained = train_perceptron(AlignModel{}, train.items, train.items, 8, 5, s.features,
                                        s.decode, true, nullptr, nullptr);
  std::vector<AlignmentSet> sup_pred = decode_corpus(trained, test, s.features, s.decode);
  PRF sup_score = corpus_prf(test.canonical_gold, sup_pred, TypeFilter::Both);

  return check(sup_score.f > ibm1_score.f, "trained F " + format_double(sup_score.f) +
                                               " does not beat baseline F " + format_double(ibm1_score.f));
}

bool ibm1_likelihood_and_identity() {
  Settings s;
  const std::pair<const char*, const char*> fixtures[] = {{"fig1.amr", "fig1.ptb"},
                                                          {"corpus.amr", "corpus.ptb"},
                                                          {"gen_train.amr", "gen_train.ptb"},
                                                          {"gen_test.amr", "gen_test.ptb"}};
  for (auto [amr, trees] : fixtures) {
    FixtureItems fx = load_items(amr, trees, SyntaxConfig::AmrStringEnTree, s);
    std::vector<double> loglik;
    train_ibm1(prepared_corpus(fx, true), 5, 1e-7, 1, &loglik);
    for (std::size_t i = 1; i < loglik.size(); ++i)
      if (!check(loglik[i] >= loglik[i - 1] - kLogLikTol,
                 std::string(amr) + ": log likelihood dropped at iteration " + std::to_string(i)))
        return false;
  }

  // An identity dictionary corpus must align every word to itself.
  std::mt19937_64 rng(8);
  const char* vocab[] = {"ant", "bee", "cat", "dog", "elk", "fox", "gnu", "hen"};
  StringCorpus corpus;
  for (int n = 0; n < 30; ++n) {
    std::vector<std::string> sent;
    int len = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) sent.push_back(vocab[rng() % 8]);
    corpus.emplace_back(sent, sent);
  }
  TranslationTable table = train_ibm1(corpus, 8);
  for (const auto& [src, tgt] : corpus) {
    AlignmentSet got = viterbi_align(table, src, tgt);
    AlignmentSet want;
    for (int i = 0; i < static_cast<int>(src.size()); ++i) {
      bool repeated = false;
      for (int j = 0; j < i; ++j) repeated = repeated || src[j] == src[i];
      // With duplicated words the earliest copy wins every column it ties on.
      int pick = i;
      for (int j = 0; j < i; ++j)
        if (src[j] == src[i]) {
          pick = j;
          break;
        }
      (void)repeated;
      want.add(pick, i);
    }
    want.normalize();
    if (!check(got.links == want.links, "identity corpus alignment differs")) return false;
  }
  return true;
}

bool gdfa_reference_and_sandwich() {
  std::mt19937_64 rng(606060);
  for (int round = 0; round < 1000; ++round) {
    int rows = 1 + static_cast<int>(rng() % 6);
    int cols = 1 + static_cast<int>(rng() % 6);
    AlignmentSet a = random_typed_set(rng, rows, cols);
    AlignmentSet b = random_typed_set(rng, rows, cols);

    const std::tuple<SymmetrizeMode, bool, bool, bool> modes[] = {
        {SymmetrizeMode::GrowDiag, true, false, false},
        {SymmetrizeMode::GrowDiagFinal, true, true, false},
        {SymmetrizeMode::GrowDiagFinalAnd, true, true, true},
    };
    for (auto [mode, grow, fin, fin_and] : modes) {
      AlignmentSet got = symmetrize(a, b, rows, cols, mode);
      AlignmentSet ref = oracles::reference_gdfa(a, b, rows, cols, grow, fin, fin_and);
      if (!check(got.links == ref.links,
                 "round " + std::to_string(round) + ": symmetrization differs from the reference"))
        return false;
    }

    AlignmentSet inter = symmetrize(a, b, rows, cols, SymmetrizeMode::Intersection);
    AlignmentSet uni = symmetrize(a, b, rows, cols, SymmetrizeMode::Union);
    AlignmentSet gdfa = symmetrize(a, b, rows, cols, SymmetrizeMode::GrowDiagFinalAnd);
    for (const Link& l : inter.links)
      if (!check(gdfa.contains(l.src, l.tgt), "intersection link missing from grow-diag-final-and"))
        return false;
    for (const Link& l : gdfa.links)
      if (!check(uni.contains(l.src, l.tgt), "grow-diag-final-and invented a link outside the union"))
        return false;
  }
  return true;
}

bool metrics_against_direct_counting() {
  std::mt19937_64 rng(424242);
  for (int round = 0; round < 100; ++round) {
    int n = 1 + static_cast<int>(rng() % 5);
    std::vector<AlignmentSet> gold, pred;
    for (int i = 0; i < n; ++i) {
      int rows = 1 + static_cast<int>(rng() % 6);
      int cols = 1 + static_cast<int>(rng() % 6);
      gold.push_back(random_typed_set(rng, rows, cols));
      pred.push_back(random_typed_set(rng, rows, cols));
    }
    for (TypeFilter f : {TypeFilter::Concept, TypeFilter::Role, TypeFilter::Both}) {
      PRF got = corpus_prf(gold, pred, f);
      oracles::DirectPRF want = oracles::direct_prf(gold, pred, f);
      if (!check(got.p == want.p && got.r == want.r && got.f == want.f,
                 "round " + std::to_string(round) + ": scores differ from direct counting"))
        return false;
    }
    for (int i = 0; i < n; ++i) {
      MatchCounts c = match_counts(gold[i], pred[i], TypeFilter::Concept);
      MatchCounts r = match_counts(gold[i], pred[i], TypeFilter::Role);
      MatchCounts both = match_counts(gold[i], pred[i], TypeFilter::Both);
      if (!check(both.match == c.match + r.match && both.pred == c.pred + r.pred &&
                     both.gold == c.gold + r.gold,
                 "per-type counts do not add up to the combined counts"))
        return false;
    }
  }

  // A system is never significantly better than itself.
  for (std::uint64_t seed : {1ULL, 9ULL, 77ULL}) {
    std::vector<AlignmentSet> gold, pred;
    for (int i = 0; i < 12; ++i) {
      gold.push_back(random_typed_set(rng, 5, 5));
      pred.push_back(random_typed_set(rng, 5, 5));
    }
    double p = bootstrap_significance(gold, pred, pred, TypeFilter::Both, 300, seed);
    if (!check(p == 1.0, "self comparison p is " + format_double(p))) return false;
    if (!check(!(p < kAlpha), "self comparison reported as significant")) return false;
  }
  return true;
}

bool upper_bound_dominates() {
  Settings s;
  FixtureItems fx = load_items("corpus.amr", "corpus.ptb", SyntaxConfig::AmrStringEnTree, s);

  std::vector<UpperBoundItem> ub_items;
  for (std::size_t i = 0; i < fx.pairs.size(); ++i) {
    UpperBoundItem item;
    item.amr_linear = fx.preps[i].amr_linear;
    item.english = fx.pairs[i].english;
    item.gold = fx.canonical_gold[i];
    ub_items.push_back(std::move(item));
  }
  std::map<TypeFilter, PRF> bound = filtering_upper_bound(ub_items, s.filter);

  TranslationTable fwd = train_ibm1(prepared_corpus(fx, true), 5);
  TranslationTable rev = train_ibm1(prepared_corpus(fx, false), 5);
  std::vector<std::vector<AlignmentSet>> systems;
  systems.push_back(ibm1_canonical(fwd, fx, false));
  systems.push_back(ibm1_canonical(rev, fx, true));
  std::vector<AlignmentSet> gdfa;
  for (std::size_t i = 0; i < fx.pairs.size(); ++i)
    gdfa.push_back(symmetrize(systems[0][i], systems[1][i],
                              static_cast<int>(fx.preps[i].amr_linear.tokens.size()),
                              fx.preps[i].en_size, SymmetrizeMode::GrowDiagFinalAnd));
  systems.push_back(std::move(gdfa));
  AlignModel trained = train_perceptron(AlignModel{}, fx.items, fx.items, 4, 17, s.features, s.decode,
                                        true, nullptr, nullptr);
  systems.push_back(decode_corpus(trained, fx, s.features, s.decode));

  for (std::size_t sys = 0; sys < systems.size(); ++sys)
    for (TypeFilter f : {TypeFilter::Concept, TypeFilter::Role, TypeFilter::Both}) {
      PRF score = corpus_prf(fx.canonical_gold, systems[sys], f);
      if (!check(bound[f].r >= score.r, "system " + std::to_string(sys) + " recall " +
                                            format_double(score.r) + " exceeds the bound " +
                                            format_double(bound[f].r)))
        return false;
    }
  return true;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(AMRALIGN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

bool pipeline_run(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string d = dir.string() + "/";
  std::string amr = testutil::fixture_path("corpus.amr");
  std::string trees = testutil::fixture_path("corpus.ptb");
  const std::string steps[] = {
      "preprocess --amr " + amr + " --trees " + trees + " --out-amr " + d + "amr.txt --out-en " + d +
          "en.txt --out-gold " + d + "gold.al",
      "ibm1-train --src " + d + "amr.txt --tgt " + d + "en.txt --iterations 5 --out " + d +
          "fwd.tt --loglik " + d + "fwd.ll",
      "ibm1-train --src " + d + "en.txt --tgt " + d + "amr.txt --iterations 5 --out " + d + "rev.tt",
      "ibm1-align --amr " + amr + " --trees " + trees + " --table " + d + "fwd.tt --out " + d + "fwd.al",
      "ibm1-align --amr " + amr + " --trees " + trees + " --table " + d + "rev.tt --reverse --out " + d +
          "rev.al",
      "symmetrize --a " + d + "fwd.al --b " + d + "rev.al --mode gdfa --out " + d + "gdfa.al",
      "train --amr " + amr + " --trees " + trees + " --dev-amr " + amr + " --dev-trees " + trees +
          " --epochs 3 --seed 11 --table-amr-en " + d + "fwd.tt --table-en-amr " + d + "rev.tt --out " +
          d + "model.bin",
      "align --model " + d + "model.bin --amr " + amr + " --trees " + trees + " --out " + d + "pred.al",
      "align --model " + d + "model.bin --amr " + amr + " --trees " + trees + " --kbest 3 --out " + d +
          "pred.k3",
      "eval --gold " + d + "gold.al --pred " + d + "pred.al --out " + d + "eval.tsv",
      "significance --gold " + d + "gold.al --a " + d + "pred.al --b " + d + "gdfa.al --resamples 300"
          " --seed 9 --out " + d + "sig.tsv",
      "upper-bound --amr " + amr + " --trees " + trees + " --out " + d + "ub.tsv",
  };
  for (const std::string& step : steps)
    if (run_cli(step) != 0) return fail("pipeline step failed: " + step);
  return true;
}

bool pipeline_determinism() {
  fs::path base = fs::temp_directory_path() / "amralign-acceptance";
  if (!pipeline_run(base / "run1")) return false;
  if (!pipeline_run(base / "run2")) return false;
  const char* files[] = {"amr.txt", "en.txt",  "gold.al",  "fwd.tt",  "rev.tt",   "fwd.ll",  "fwd.al",
                         "rev.al",  "gdfa.al", "model.bin", "pred.al", "pred.k3", "eval.tsv", "sig.tsv",
                         "ub.tsv"};
  for (const char* f : files) {
    std::string x = testutil::slurp((base / "run1" / f).string());
    std::string y = testutil::slurp((base / "run2" / f).string());
    if (!check(!x.empty(), std::string(f) + " is empty")) return false;
    if (!check(x == y, std::string(f) + " differs between identical runs")) return false;
  }
  return true;
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;  // 0 means no limit is enforced
  bool (*fn)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "preprocessing reproduces the worked example strings", 1.0, preprocessing_strings},
      {2, "beam decoding matches exhaustive enumeration", 60.0, decode_exactness},
      {3, "loss augmented score equals model score plus one minus F1", 10.0, loss_augmented_consistency},
      {4, "perceptron memorizes the 20-pair fixture within 10 epochs", 30.0, perceptron_memorization},
      {5, "trained aligner beats the lexical baseline on unseen pairs", 60.0, generalization_beats_baseline},
      {6, "translation table likelihood climbs and identity is recovered", 10.0, ibm1_likelihood_and_identity},
      {7, "symmetrization matches the reference and stays in the sandwich", 10.0, gdfa_reference_and_sandwich},
      {8, "metrics match direct counting and self-tests are never significant", 30.0,
       metrics_against_direct_counting},
      {9, "filtering upper bound recall dominates every produced alignment", 0.0, upper_bound_dominates},
      {10, "command line pipeline output is bitwise reproducible", 0.0, pipeline_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    g_why.clear();
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      g_why = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.limit_seconds > 0.0 && secs > c.limit_seconds) {
      ok = false;
      g_why = "took " + format_double(secs) + "s, limit " + format_double(c.limit_seconds) + "s";
    }
    std::printf("[%s] %2d %s (%.2fs)\n", ok ? "PASS" : "FAIL", c.number, c.name, secs);
    if (!ok) {
      ++failures;
      std::printf("       %s\n", g_why.empty() ? "(no detail)" : g_why.c_str());
    }
  }
  return failures;
}
