#ifndef AMRALIGN_PERCEPTRON_HPP
#define AMRALIGN_PERCEPTRON_HPP

#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "amralign/alignment.hpp"
#include "amralign/config.hpp"
#include "amralign/features.hpp"
#include "amralign/hieralign.hpp"
#include "amralign/model.hpp"
#include "amralign/util.hpp"

namespace amralign {

// 1 - F1 between gold and hypothesis link sets.
inline double f1_loss(const AlignmentSet& gold, const AlignmentSet& hyp) {
  AlignmentSet g = gold, h = hyp;
  g.normalize();
  h.normalize();
  int match = intersection_size(g.links, h.links);
  return 1.0 - f1_counts(match, static_cast<int>(h.links.size()), static_cast<int>(g.links.size()));
}

// Standard perceptron step: w + h(gold) - h(hyp), zero entries dropped.
inline FeatureVector perceptron_update(FeatureVector w, const FeatureVector& h_gold, const FeatureVector& h_hyp) {
  add_scaled(w, h_gold, 1.0);
  add_scaled(w, h_hyp, -1.0);
  return w;
}

// Weight state during online training: raw weights plus the running sum used
// for averaging.
struct PerceptronState {
  FeatureVector weights;
  FeatureVector sum;
  long steps = 0;

  void update(const FeatureVector& h_gold, const FeatureVector& h_hyp) {
    weights = perceptron_update(std::move(weights), h_gold, h_hyp);
    add_scaled(sum, weights, 1.0);
    ++steps;
  }

  FeatureVector averaged() const {
    if (steps == 0) return weights;
    return scaled(sum, 1.0 / static_cast<double>(steps));
  }
};

struct TrainItem {
  AlignmentInstance instance;
  AlignmentSet gold;  // instance indices
};

struct TrainReport {
  struct Epoch {
    int epoch = 0;
    double train_loss = 0.0;  // mean 1 - F1 of the update hypotheses
    int updates = 0;
    double dev_p = 0.0, dev_r = 0.0, dev_f = 0.0;
  };
  std::vector<Epoch> epochs;
  int best_epoch = -1;
  int skipped = 0;
  std::vector<std::string> warnings;
};

namespace detail {

// Deterministic in-place shuffle (Fisher-Yates driven by a fixed engine).
inline void seeded_shuffle(std::vector<int>& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

// Gold alignments the decoder cannot produce are skipped: more than two links
// on one target leaf, a two-link leaf wider than the pair window, a source
// used twice under the one-use constraint, or indices off the grid.
inline bool gold_reachable(const TrainItem& item, const DecodeConfig& dcfg, std::string* why) {
  const AlignmentInstance& inst = item.instance;
  bool constrained = dcfg.constraint == DecodeConfig::Constraint::Auto
                         ? inst.source_is_amr
                         : dcfg.constraint == DecodeConfig::Constraint::On;
  std::vector<std::vector<int>> per_col(inst.n_target());
  std::vector<int> per_row(inst.n_source(), 0);
  for (const Link& l : item.gold.links) {
    if (l.src < 0 || l.src >= inst.n_source() || l.tgt < 0 || l.tgt >= inst.n_target()) {
      *why = "gold link outside the instance grid";
      return false;
    }
    per_col[l.tgt].push_back(l.src);
    ++per_row[l.src];
  }
  for (int t = 0; t < inst.n_target(); ++t) {
    if (per_col[t].size() > 2) {
      *why = "more than two links on one target leaf";
      return false;
    }
    if (per_col[t].size() == 2 && std::abs(per_col[t][0] - per_col[t][1]) > dcfg.pair_window) {
      *why = "two-link leaf wider than the pair window";
      return false;
    }
  }
  if (constrained) {
    for (int s = 0; s < inst.n_source(); ++s)
      if (per_row[s] > 1) {
        *why = "source token aligned more than once under the one-use constraint";
        return false;
      }
  }
  return true;
}

}  // namespace detail

struct PRFCounts {
  long match = 0;
  long pred = 0;
  long gold = 0;
};

inline double micro_f1(const PRFCounts& c) {
  return f1_counts(static_cast<int>(c.match), static_cast<int>(c.pred), static_cast<int>(c.gold));
}

// Online training with averaging. Items are visited in one seeded shuffled
// order, identical across epochs. After every epoch the averaged weights are
// scored on the dev set and the snapshot with the best dev F1 (earliest on
// ties) is returned; with an empty dev set the last epoch wins.
inline AlignModel train_perceptron(AlignModel model, const std::vector<TrainItem>& train_set,
                                   const std::vector<TrainItem>& dev_set, int epochs, std::uint64_t seed,
                                   const FeatureConfig& fcfg, const DecodeConfig& dcfg,
                                   bool loss_augmented = true, TrainReport* report = nullptr,
                                   std::ostream* log = nullptr) {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (train_set.empty()) throw DataError("empty training set");

  TrainReport local_report;
  TrainReport& rep = report ? *report : local_report;

  std::vector<int> usable;
  for (std::size_t i = 0; i < train_set.size(); ++i) {
    std::string why;
    if (detail::gold_reachable(train_set[i], dcfg, &why)) {
      usable.push_back(static_cast<int>(i));
    } else {
      ++rep.skipped;
      std::string msg = "skipping training instance " + std::to_string(i) + ": " + why;
      rep.warnings.push_back(msg);
      if (log) *log << "warning: " << msg << '\n';
    }
  }
  if (usable.empty()) throw DataError("no reachable gold alignment in the training set");
  detail::seeded_shuffle(usable, seed);

  PerceptronState state;
  state.weights = model.weights;

  double best_f = -1.0;
  FeatureVector best_weights = state.weights;
  FeatureVector best_averaged = state.averaged();
  int best_epoch = -1;

  for (int epoch = 0; epoch < epochs; ++epoch) {
    TrainReport::Epoch er;
    er.epoch = epoch;
    double loss_sum = 0.0;
    for (int idx : usable) {
      const TrainItem& item = train_set[idx];
      // Translation probabilities reach the decoder through the instance, so
      // the probe model only needs the current raw weights.
      AlignModel probe;
      probe.weights = state.weights;
      probe.use_averaged = false;
      DecodeResult hyp;
      if (loss_augmented) {
        hyp = loss_augmented_decode(probe, item.instance, item.gold, dcfg.beam, fcfg, dcfg);
      } else {
        hyp = decode_kbest(probe, item.instance, 1, fcfg, dcfg).front();
      }
      loss_sum += f1_loss(item.gold, hyp.alignment);
      if (!(hyp.alignment == item.gold)) {
        FeatureVector h_gold = feature_vector(item.instance, fcfg, item.gold);
        FeatureVector h_hyp = feature_vector(item.instance, fcfg, hyp.alignment);
        state.update(h_gold, h_hyp);
        ++er.updates;
      } else {
        // Correct prediction still advances the average.
        state.update(FeatureVector{}, FeatureVector{});
      }
    }
    er.train_loss = loss_sum / static_cast<double>(usable.size());

    FeatureVector avg = state.averaged();
    const std::vector<TrainItem>& eval_set = dev_set;
    if (!eval_set.empty()) {
      AlignModel probe;
      probe.averaged = avg;
      probe.use_averaged = true;
      PRFCounts counts;
      for (const TrainItem& item : eval_set) {
        DecodeResult r = decode_kbest(probe, item.instance, 1, fcfg, dcfg).front();
        AlignmentSet g = item.gold;
        g.normalize();
        counts.match += intersection_size(g.links, r.alignment.links);
        counts.pred += static_cast<long>(r.alignment.links.size());
        counts.gold += static_cast<long>(g.links.size());
      }
      er.dev_p = counts.pred ? static_cast<double>(counts.match) / counts.pred : (counts.gold ? 0.0 : 1.0);
      er.dev_r = counts.gold ? static_cast<double>(counts.match) / counts.gold : (counts.pred ? 0.0 : 1.0);
      er.dev_f = micro_f1(counts);
      if (er.dev_f > best_f) {
        best_f = er.dev_f;
        best_weights = state.weights;
        best_averaged = avg;
        best_epoch = epoch;
      }
    } else {
      // No dev set: keep the final epoch.
      best_weights = state.weights;
      best_averaged = avg;
      best_epoch = epoch;
    }
    rep.epochs.push_back(er);
    if (log)
      *log << "epoch " << epoch << ": updates " << er.updates << ", train loss " << er.train_loss
           << (eval_set.empty() ? "" : ", dev F1 " + std::to_string(er.dev_f)) << '\n';
  }

  rep.best_epoch = best_epoch;
  model.weights = std::move(best_weights);
  model.averaged = std::move(best_averaged);
  model.use_averaged = true;
  model.meta["best_epoch"] = std::to_string(best_epoch);
  if (best_f >= 0.0) model.meta["dev_f"] = format_double(best_f);
  return model;
}

}  // namespace amralign

#endif  // AMRALIGN_PERCEPTRON_HPP
