#ifndef AMRALIGN_HIERALIGN_HPP
#define AMRALIGN_HIERALIGN_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amralign/alignment.hpp"
#include "amralign/config.hpp"
#include "amralign/features.hpp"
#include "amralign/model.hpp"
#include "amralign/util.hpp"

namespace amralign {

// F1 from raw counts. Two empty sets count as a perfect match.
inline double f1_counts(int match, int n_pred, int n_gold) {
  if (n_pred == 0 && n_gold == 0) return 1.0;
  if (match == 0) return 0.0;
  double p = static_cast<double>(match) / n_pred;
  double r = static_cast<double>(match) / n_gold;
  return 2.0 * p * r / (p + r);
}

inline int intersection_size(const std::vector<Link>& a, const std::vector<Link>& b) {
  int out = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      ++out;
      ++i;
      ++j;
    }
  }
  return out;
}

struct DecodeResult {
  AlignmentSet alignment;
  double score = 0.0;
};

namespace detail {

struct Hyp {
  std::vector<Link> links;  // sorted by (src, tgt)
  double model = 0.0;       // model score
  double key = 0.0;         // sort key: model score, plus loss when augmented
  int n_match = 0;          // links shared with gold (augmented decoding only)
  std::vector<std::uint64_t> cov;  // source coverage, constrained decoding only
};

inline bool cov_intersects(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

inline void cov_merge(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}

inline bool hyp_better(const Hyp& a, const Hyp& b) {
  if (a.key != b.key) return a.key > b.key;
  if (a.links.size() != b.links.size()) return a.links.size() < b.links.size();
  return a.links < b.links;
}

class Decoder {
 public:
  Decoder(const AlignModel& model, const AlignmentInstance& inst, const FeatureConfig& fcfg,
          const DecodeConfig& dcfg, int width, const AlignmentSet* gold)
      : inst_(inst),
        fcfg_(fcfg),
        dcfg_(dcfg),
        weights_(model.decode_weights()),
        gold_(gold),
        width_(width) {
    if (width_ < 1) throw std::invalid_argument("beam width must be >= 1");
    if (dcfg.pair_window < 0) throw std::invalid_argument("pair window must be >= 0");
    if (dcfg.leaf_cap < 1) throw std::invalid_argument("leaf hypothesis cap must be >= 1");
    constrained_ = dcfg.constraint == DecodeConfig::Constraint::Auto
                       ? inst.source_is_amr
                       : dcfg.constraint == DecodeConfig::Constraint::On;
    cov_words_ = constrained_ ? (inst.n_source() + 63) / 64 : 0;
    spans_ = leaf_spans(inst.target);
    gold_prefix_.assign(inst.n_target() + 1, 0);
    if (gold_) {
      std::vector<int> per_col(inst.n_target(), 0);
      for (const Link& l : gold_->links) {
        if (l.src < 0 || l.src >= inst.n_source() || l.tgt < 0 || l.tgt >= inst.n_target())
          throw DataError("gold link outside instance grid");
        ++per_col[l.tgt];
      }
      for (int t = 0; t < inst.n_target(); ++t) gold_prefix_[t + 1] = gold_prefix_[t] + per_col[t];
    }
    link_score_.assign(static_cast<std::size_t>(inst.n_source()) * std::max(1, inst.n_target()), 0.0);
    link_cached_.assign(link_score_.size(), 0);
    null_score_.assign(inst.n_target(), 0.0);
    null_cached_.assign(inst.n_target(), 0);
  }

  std::vector<Hyp> run() {
    // Map tree leaves to column positions once.
    std::vector<int> leaf_ids = inst_.target.leaves();
    leaf_col_.clear();
    for (std::size_t c = 0; c < leaf_ids.size(); ++c) leaf_col_[leaf_ids[c]] = static_cast<int>(c);
    return node_beam(inst_.target.root);
  }

 private:
  const AlignmentInstance& inst_;
  const FeatureConfig& fcfg_;
  const DecodeConfig& dcfg_;
  const FeatureVector& weights_;
  const AlignmentSet* gold_;
  int width_;
  bool constrained_ = false;
  int cov_words_ = 0;
  std::vector<std::pair<int, int>> spans_;
  std::vector<int> gold_prefix_;
  std::map<int, int> leaf_col_;
  std::vector<double> link_score_;
  std::vector<char> link_cached_;
  std::vector<double> null_score_;
  std::vector<char> null_cached_;

  double weight_of(const std::string& name) const {
    auto it = weights_.find(name);
    return it == weights_.end() ? 0.0 : it->second;
  }

  double link_score(int s, int t) {
    std::size_t idx = static_cast<std::size_t>(s) * inst_.n_target() + t;
    if (!link_cached_[idx]) {
      double total = 0.0;
      emit_link_features(inst_, fcfg_, s, t, [&](const std::string& name, double v) { total += weight_of(name) * v; });
      link_score_[idx] = total;
      link_cached_[idx] = 1;
    }
    return link_score_[idx];
  }

  double null_score(int t) {
    if (!null_cached_[t]) {
      double total = 0.0;
      emit_null_features(inst_, fcfg_, t, [&](const std::string& name, double v) { total += weight_of(name) * v; });
      null_score_[t] = total;
      null_cached_[t] = 1;
    }
    return null_score_[t];
  }

  double span_score(int node) const {
    double total = 0.0;
    emit_span_features(inst_, fcfg_, node, [&](const std::string& name, double v) { total += weight_of(name) * v; });
    return total;
  }

  bool in_gold(int s, int t) const { return gold_ && gold_->contains(s, t); }

  // Sets the sort key: the model score alone, or augmented with 1 - F1 of the
  // hypothesis against the gold links inside the covered span [b, e).
  void rescore(Hyp& h, int b, int e) const {
    if (!gold_) {
      h.key = h.model;
      return;
    }
    int gold_in = gold_prefix_[e] - gold_prefix_[b];
    double loss = 1.0 - f1_counts(h.n_match, static_cast<int>(h.links.size()), gold_in);
    h.key = h.model + loss;
  }

  // Sorts, removes duplicate link sets, prunes to the beam width. The empty
  // hypothesis is kept even when it falls off the beam: it is compatible with
  // anything, which guarantees constrained combination never dead-ends.
  void sort_dedup_prune(std::vector<Hyp>& beam) const {
    std::sort(beam.begin(), beam.end(), hyp_better);
    beam.erase(std::unique(beam.begin(), beam.end(),
                           [](const Hyp& a, const Hyp& b) { return a.links == b.links; }),
               beam.end());
    if (static_cast<int>(beam.size()) <= width_) return;
    auto empty_it = std::find_if(beam.begin(), beam.end(), [](const Hyp& h) { return h.links.empty(); });
    Hyp empty;
    bool keep_empty = empty_it != beam.end() && empty_it - beam.begin() >= width_;
    if (keep_empty) empty = std::move(*empty_it);
    beam.resize(width_);
    if (keep_empty) beam.push_back(std::move(empty));
  }

  std::vector<Hyp> leaf_beam(int col) {
    std::vector<Hyp> beam;
    int cap = dcfg_.leaf_cap;
    int n = inst_.n_source();

    Hyp empty;
    empty.model = null_score(col);
    if (constrained_) empty.cov.assign(cov_words_, 0);
    rescore(empty, col, col + 1);
    beam.push_back(std::move(empty));
    int generated = 1;

    for (int s = 0; s < n && generated < cap; ++s) {
      Hyp h;
      h.links.push_back(Link{s, col, LinkType::Word});
      h.model = link_score(s, col);
      if (gold_) h.n_match = in_gold(s, col) ? 1 : 0;
      if (constrained_) {
        h.cov.assign(cov_words_, 0);
        h.cov[s / 64] |= 1ULL << (s % 64);
      }
      rescore(h, col, col + 1);
      beam.push_back(std::move(h));
      ++generated;
    }
    for (int s1 = 0; s1 < n && generated < cap; ++s1) {
      for (int s2 = s1 + 1; s2 < n && s2 - s1 <= dcfg_.pair_window && generated < cap; ++s2) {
        Hyp h;
        h.links.push_back(Link{s1, col, LinkType::Word});
        h.links.push_back(Link{s2, col, LinkType::Word});
        h.model = link_score(s1, col) + link_score(s2, col);
        if (gold_) h.n_match = (in_gold(s1, col) ? 1 : 0) + (in_gold(s2, col) ? 1 : 0);
        if (constrained_) {
          h.cov.assign(cov_words_, 0);
          h.cov[s1 / 64] |= 1ULL << (s1 % 64);
          h.cov[s2 / 64] |= 1ULL << (s2 % 64);
        }
        rescore(h, col, col + 1);
        beam.push_back(std::move(h));
        ++generated;
      }
    }
    sort_dedup_prune(beam);
    return beam;
  }

  static std::vector<Link> merge_links(const std::vector<Link>& a, const std::vector<Link>& b) {
    std::vector<Link> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  std::vector<Hyp> node_beam(int id) {
    const TreeNode& node = inst_.target.nodes[id];
    if (node.is_leaf()) return leaf_beam(leaf_col_.at(id));

    std::vector<Hyp> acc = node_beam(node.children[0]);
    int span_b = spans_[id].first;
    for (std::size_t c = 1; c < node.children.size(); ++c) {
      std::vector<Hyp> right = node_beam(node.children[c]);
      int span_e = spans_[node.children[c]].second;
      std::vector<Hyp> merged;
      merged.reserve(acc.size() * right.size());
      for (const Hyp& a : acc) {
        for (const Hyp& b : right) {
          if (constrained_ && cov_intersects(a.cov, b.cov)) continue;
          Hyp h;
          h.links = merge_links(a.links, b.links);
          h.model = a.model + b.model;
          h.n_match = a.n_match + b.n_match;
          if (constrained_) {
            h.cov = a.cov;
            cov_merge(h.cov, b.cov);
          }
          rescore(h, span_b, span_e);
          merged.push_back(std::move(h));
        }
      }
      if (merged.empty())
        throw DataError("constrained decoding eliminated every hypothesis combination");
      sort_dedup_prune(merged);
      acc = std::move(merged);
    }

    if (!inst_.target.is_preterminal(id)) {
      for (Hyp& h : acc) {
        if (h.links.empty()) h.model += span_score(id);
        rescore(h, spans_[id].first, spans_[id].second);
      }
      sort_dedup_prune(acc);
    }
    return acc;
  }
};

}  // namespace detail

// k-best alignments by bottom-up beam search over the target tree. The search
// beam is max(k, cfg.beam) wide, so large k widens the search.
inline std::vector<DecodeResult> decode_kbest(const AlignModel& model, const AlignmentInstance& inst, int k,
                                              const FeatureConfig& fcfg, const DecodeConfig& dcfg) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (inst.n_target() < 1) throw DataError("instance has no target leaves");
  detail::Decoder dec(model, inst, fcfg, dcfg, std::max(k, dcfg.beam), nullptr);
  std::vector<detail::Hyp> beam = dec.run();
  std::vector<DecodeResult> out;
  for (std::size_t i = 0; i < beam.size() && i < static_cast<std::size_t>(k); ++i) {
    DecodeResult r;
    r.alignment.links = std::move(beam[i].links);
    r.alignment.src_size = inst.n_source();
    r.alignment.tgt_size = inst.n_target();
    r.score = beam[i].key;
    out.push_back(std::move(r));
  }
  return out;
}

// Best alignment under model score plus (1 - F1 against gold), used to pick
// the update direction during training. `width` is the search beam.
inline DecodeResult loss_augmented_decode(const AlignModel& model, const AlignmentInstance& inst,
                                          const AlignmentSet& gold, int width, const FeatureConfig& fcfg,
                                          const DecodeConfig& dcfg) {
  if (inst.n_target() < 1) throw DataError("instance has no target leaves");
  AlignmentSet gold_norm = gold;
  gold_norm.normalize();
  detail::Decoder dec(model, inst, fcfg, dcfg, std::max(width, dcfg.beam), &gold_norm);
  std::vector<detail::Hyp> beam = dec.run();
  DecodeResult r;
  r.alignment.links = std::move(beam.front().links);
  r.alignment.src_size = inst.n_source();
  r.alignment.tgt_size = inst.n_target();
  r.score = beam.front().key;
  return r;
}

}  // namespace amralign

#endif  // AMRALIGN_HIERALIGN_HPP
