#ifndef AMRALIGN_FEATURES_HPP
#define AMRALIGN_FEATURES_HPP

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amralign/alignment.hpp"
#include "amralign/config.hpp"
#include "amralign/ibm1.hpp"
#include "amralign/treebank.hpp"
#include "amralign/types.hpp"
#include "amralign/util.hpp"

namespace amralign {

// Sparse feature vector. Zero-valued entries are never stored.
using FeatureVector = std::map<std::string, double>;

inline double dot(const FeatureVector& w, const FeatureVector& h) {
  double out = 0.0;
  if (w.size() > h.size()) {
    for (const auto& [k, v] : h) {
      auto it = w.find(k);
      if (it != w.end()) out += it->second * v;
    }
  } else {
    for (const auto& [k, v] : w) {
      auto it = h.find(k);
      if (it != h.end()) out += it->second * v;
    }
  }
  return out;
}

inline void add_scaled(FeatureVector& w, const FeatureVector& h, double scale) {
  for (const auto& [k, v] : h) {
    double nv = (w.count(k) ? w[k] : 0.0) + scale * v;
    if (nv == 0.0)
      w.erase(k);
    else
      w[k] = nv;
  }
}

inline FeatureVector scaled(const FeatureVector& w, double scale) {
  FeatureVector out;
  if (scale == 0.0) return out;
  for (const auto& [k, v] : w)
    if (v * scale != 0.0) out[k] = v * scale;
  return out;
}

// One row of the alignment grid: a source-side token.
struct SourceInfo {
  std::string surface;
  TokenKind kind = TokenKind::Word;
  std::string tag;  // syntactic tag, empty when the source has none
};

// One column of the alignment grid: a leaf of the target tree.
struct TargetInfo {
  std::string surface;
  std::string tag;     // preterminal label
  std::string phrase;  // lowest non-preterminal ancestor label
};

struct AlignmentInstance {
  std::vector<SourceInfo> source;
  ConstituencyTree target;               // preprocessed target tree
  std::vector<TargetInfo> target_leaves; // parallel to target.leaves()
  AlignmentSet third_party;              // third party suggestion, instance indices
  const TranslationTable* table_src_tgt = nullptr;  // p(source token | target token)
  const TranslationTable* table_tgt_src = nullptr;  // p(target token | source token)
  bool source_is_amr = false;

  int n_source() const { return static_cast<int>(source.size()); }
  int n_target() const { return static_cast<int>(target_leaves.size()); }
};

namespace detail {

inline int distance_bin(int s, int n_src, int t, int n_tgt, int bins) {
  if (n_src <= 0 || n_tgt <= 0 || bins <= 0) return 0;
  double rel = std::fabs(static_cast<double>(s) / n_src - static_cast<double>(t) / n_tgt);
  int bin = static_cast<int>(rel * bins);
  return std::min(bin, bins - 1);
}

inline double clipped_log_prob(const TranslationTable& table, const std::string& src, const std::string& tgt) {
  double p = std::max(table.prob(src, tgt), table.floor > 0 ? table.floor : 1e-12);
  return std::log(p);
}

}  // namespace detail

// Feature emission for one link (s, t). The sink receives (name, value)
// pairs; decoding accumulates dot products through the same calls that build
// full feature vectors, so the two always agree.
template <class Sink>
void emit_link_features(const AlignmentInstance& inst, const FeatureConfig& cfg, int s, int t, Sink&& sink) {
  const SourceInfo& src = inst.source[s];
  const TargetInfo& tgt = inst.target_leaves[t];
  if (cfg.has("lex")) sink("LEX=" + src.surface + "|" + tgt.surface, 1.0);
  if (cfg.has("same_stem") && src.surface == tgt.surface) sink("SAME_STEM", 1.0);
  if (cfg.has("tag_pair") && !src.tag.empty()) sink("TAG=" + src.tag + "|" + tgt.tag, 1.0);
  if (cfg.has("jsyn") && !src.tag.empty()) sink("JSYN=" + src.tag + "|" + tgt.phrase, 1.0);
  if (cfg.has("tprob_st") && inst.table_src_tgt && !inst.table_src_tgt->empty())
    sink("TPROB_ST", detail::clipped_log_prob(*inst.table_src_tgt, src.surface, tgt.surface));
  if (cfg.has("tprob_ts") && inst.table_tgt_src && !inst.table_tgt_src->empty())
    sink("TPROB_TS", detail::clipped_log_prob(*inst.table_tgt_src, tgt.surface, src.surface));
  if (cfg.has("third") && inst.third_party.contains(s, t)) sink("THIRD", 1.0);
  if (cfg.has("dist"))
    sink("DIST=" + std::to_string(detail::distance_bin(s, inst.n_source(), t, inst.n_target(), cfg.distance_bins)),
         1.0);
}

// Fired once for every target leaf that ends up unaligned.
template <class Sink>
void emit_null_features(const AlignmentInstance& inst, const FeatureConfig& cfg, int t, Sink&& sink) {
  if (cfg.has("null_tag")) sink("NULL=" + inst.target_leaves[t].tag, 1.0);
}

// Fired once for every non-preterminal internal node whose span contains no
// link at all.
template <class Sink>
void emit_span_features(const AlignmentInstance& inst, const FeatureConfig& cfg, int node, Sink&& sink) {
  if (cfg.has("span_null")) sink("SPANNULL=" + inst.target.nodes[node].label, 1.0);
}

namespace detail {

// Leaf span [begin, end) of every tree node, in leaf positions.
inline std::vector<std::pair<int, int>> leaf_spans(const ConstituencyTree& tree) {
  std::vector<std::pair<int, int>> spans(tree.nodes.size(), {0, 0});
  int next = 0;
  auto walk = [&](auto&& self, int id) -> void {
    const TreeNode& n = tree.nodes[id];
    if (n.is_leaf()) {
      spans[id] = {next, next + 1};
      ++next;
      return;
    }
    int begin = next;
    for (int c : n.children) self(self, c);
    spans[id] = {begin, next};
  };
  if (!tree.empty()) walk(walk, tree.root);
  return spans;
}

}  // namespace detail

// Full feature vector of an alignment: link features for every link, null
// features for uncovered target leaves, span features for empty spans.
inline FeatureVector feature_vector(const AlignmentInstance& inst, const FeatureConfig& cfg,
                                    const AlignmentSet& y) {
  FeatureVector out;
  auto sink = [&](const std::string& name, double value) {
    double nv = (out.count(name) ? out[name] : 0.0) + value;
    if (nv == 0.0)
      out.erase(name);
    else
      out[name] = nv;
  };
  std::vector<int> links_per_target(inst.n_target(), 0);
  for (const Link& l : y.links) {
    if (l.src < 0 || l.src >= inst.n_source() || l.tgt < 0 || l.tgt >= inst.n_target())
      throw DataError("alignment link outside instance grid");
    emit_link_features(inst, cfg, l.src, l.tgt, sink);
    ++links_per_target[l.tgt];
  }
  for (int t = 0; t < inst.n_target(); ++t)
    if (links_per_target[t] == 0) emit_null_features(inst, cfg, t, sink);
  std::vector<std::pair<int, int>> spans = detail::leaf_spans(inst.target);
  std::vector<int> prefix(inst.n_target() + 1, 0);
  for (int t = 0; t < inst.n_target(); ++t) prefix[t + 1] = prefix[t] + links_per_target[t];
  for (std::size_t id = 0; id < inst.target.nodes.size(); ++id) {
    const TreeNode& n = inst.target.nodes[id];
    if (n.is_leaf() || inst.target.is_preterminal(static_cast<int>(id))) continue;
    auto [b, e] = spans[id];
    if (prefix[e] - prefix[b] == 0) emit_span_features(inst, cfg, static_cast<int>(id), sink);
  }
  return out;
}

}  // namespace amralign

#endif  // AMRALIGN_FEATURES_HPP
