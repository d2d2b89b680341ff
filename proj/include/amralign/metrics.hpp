#ifndef AMRALIGN_METRICS_HPP
#define AMRALIGN_METRICS_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "amralign/alignment.hpp"
#include "amralign/config.hpp"
#include "amralign/hieralign.hpp"
#include "amralign/preprocess.hpp"
#include "amralign/types.hpp"
#include "amralign/util.hpp"

namespace amralign {

enum class TypeFilter { Concept, Role, Both };

inline TypeFilter parse_type_filter(const std::string& name) {
  std::string low = ascii_lower(name);
  if (low == "concept") return TypeFilter::Concept;
  if (low == "role") return TypeFilter::Role;
  if (low == "both") return TypeFilter::Both;
  throw DataError("unknown link type filter '" + name + "'");
}

inline const char* type_filter_name(TypeFilter f) {
  switch (f) {
    case TypeFilter::Concept: return "concept";
    case TypeFilter::Role: return "role";
    default: return "both";
  }
}

inline bool link_passes(const Link& l, TypeFilter f) {
  switch (f) {
    case TypeFilter::Concept: return l.type == LinkType::Concept;
    case TypeFilter::Role: return l.type == LinkType::Role;
    default: return true;
  }
}

struct PRF {
  double p = 0.0;
  double r = 0.0;
  double f = 0.0;
};

struct MatchCounts {
  long match = 0;
  long pred = 0;
  long gold = 0;

  MatchCounts& operator+=(const MatchCounts& o) {
    match += o.match;
    pred += o.pred;
    gold += o.gold;
    return *this;
  }
};

// Matching ignores the type tag on the prediction side: a predicted pair is
// correct when the gold set contains the same index pair. The filter selects
// which links count, by the type recorded on each side's own links.
inline MatchCounts match_counts(const AlignmentSet& gold, const AlignmentSet& pred, TypeFilter f) {
  MatchCounts out;
  for (const Link& l : gold.links)
    if (link_passes(l, f)) {
      ++out.gold;
      if (pred.contains(l.src, l.tgt)) ++out.match;
    }
  for (const Link& l : pred.links)
    if (link_passes(l, f)) ++out.pred;
  return out;
}

inline PRF prf_from_counts(const MatchCounts& c) {
  PRF out;
  if (c.pred == 0 && c.gold == 0) return PRF{1.0, 1.0, 1.0};
  out.p = c.pred ? static_cast<double>(c.match) / c.pred : 0.0;
  out.r = c.gold ? static_cast<double>(c.match) / c.gold : 0.0;
  out.f = out.p + out.r > 0 ? 2.0 * out.p * out.r / (out.p + out.r) : 0.0;
  return out;
}

inline PRF prf(const AlignmentSet& gold, const AlignmentSet& pred, TypeFilter f = TypeFilter::Both) {
  return prf_from_counts(match_counts(gold, pred, f));
}

// Micro average: counts pooled over the corpus before the ratios.
inline PRF corpus_prf(const std::vector<AlignmentSet>& gold, const std::vector<AlignmentSet>& pred,
                      TypeFilter f = TypeFilter::Both) {
  if (gold.size() != pred.size())
    throw DataError("gold and prediction corpora differ in length: " + std::to_string(gold.size()) + " vs " +
                    std::to_string(pred.size()));
  MatchCounts total;
  for (std::size_t i = 0; i < gold.size(); ++i) total += match_counts(gold[i], pred[i], f);
  return prf_from_counts(total);
}

// One sentence pair for the filtering upper bound: the full linearized AMR,
// the original English tokens, and gold links in canonical indices.
struct UpperBoundItem {
  TokenStream amr_linear;
  std::vector<std::string> english;
  AlignmentSet gold;
};

// Best score any aligner restricted to the filtered streams could reach:
// recall is the surviving fraction of gold links, precision is 1 whenever
// any gold link survives.
inline std::map<TypeFilter, PRF> filtering_upper_bound(const std::vector<UpperBoundItem>& corpus,
                                                       const FilterConfig& cfg) {
  std::map<TypeFilter, MatchCounts> counts;
  for (const UpperBoundItem& item : corpus) {
    std::vector<char> amr_kept(item.amr_linear.tokens.size(), 0);
    for (std::size_t i = 0; i < item.amr_linear.tokens.size(); ++i) {
      const Token& t = item.amr_linear.tokens[i];
      if (t.kind == TokenKind::Role) {
        amr_kept[i] = cfg.removes_role(t.surface) ? 0 : 1;
      } else {
        std::string s = t.surface;
        if (cfg.strip_quotes) s = strip_quotes(s);
        if (cfg.strip_senses) s = strip_sense(s);
        amr_kept[i] = cfg.removes_concept(s) ? 0 : 1;
      }
    }
    std::vector<char> en_kept(item.english.size(), 0);
    for (std::size_t j = 0; j < item.english.size(); ++j) en_kept[j] = cfg.removes_word(item.english[j]) ? 0 : 1;

    for (const Link& l : item.gold.links) {
      if (l.src < 0 || static_cast<std::size_t>(l.src) >= amr_kept.size() || l.tgt < 0 ||
          static_cast<std::size_t>(l.tgt) >= en_kept.size())
        throw DataError("gold link outside the sentence pair");
      bool survives = amr_kept[l.src] && en_kept[l.tgt];
      for (TypeFilter f : {TypeFilter::Concept, TypeFilter::Role, TypeFilter::Both}) {
        if (!link_passes(l, f)) continue;
        MatchCounts& c = counts[f];
        ++c.gold;
        if (survives) {
          ++c.match;
          ++c.pred;
        }
      }
    }
  }
  std::map<TypeFilter, PRF> out;
  for (TypeFilter f : {TypeFilter::Concept, TypeFilter::Role, TypeFilter::Both})
    out[f] = prf_from_counts(counts[f]);
  return out;
}

// Paired bootstrap: resample sentence pairs with replacement, count how often
// system a fails to beat system b. Small values mean a's advantage is stable.
inline double bootstrap_significance(const std::vector<AlignmentSet>& gold, const std::vector<AlignmentSet>& a,
                                     const std::vector<AlignmentSet>& b, TypeFilter f, int resamples,
                                     std::uint64_t seed) {
  if (gold.size() != a.size() || gold.size() != b.size())
    throw DataError("significance inputs differ in length");
  if (gold.empty()) throw DataError("empty corpus");
  if (resamples < 1) throw std::invalid_argument("resamples must be >= 1");

  std::vector<MatchCounts> ca(gold.size()), cb(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ca[i] = match_counts(gold[i], a[i], f);
    cb[i] = match_counts(gold[i], b[i], f);
  }

  int hits = 0;
  std::size_t n = gold.size();
  for (int r = 0; r < resamples; ++r) {
    std::mt19937_64 rng(mix64(seed + static_cast<std::uint64_t>(r)));
    MatchCounts ta, tb;
    for (std::size_t i = 0; i < n; ++i) {
      // Rejection sampling keeps the draw unbiased for any n.
      std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                            std::numeric_limits<std::uint64_t>::max() % n;
      std::uint64_t v = rng();
      while (v >= limit) v = rng();
      std::size_t pick = static_cast<std::size_t>(v % n);
      ta += ca[pick];
      tb += cb[pick];
    }
    double fa = prf_from_counts(ta).f;
    double fb = prf_from_counts(tb).f;
    if (fa - fb <= 0.0) ++hits;
  }
  return static_cast<double>(hits) / resamples;
}

}  // namespace amralign

#endif  // AMRALIGN_METRICS_HPP
