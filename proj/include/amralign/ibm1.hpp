#ifndef AMRALIGN_IBM1_HPP
#define AMRALIGN_IBM1_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "amralign/alignment.hpp"
#include "amralign/types.hpp"
#include "amralign/util.hpp"

namespace amralign {

// Lexical translation probabilities p(source | target), including the empty
// source token. For every target type the stored sources sum to one.
struct TranslationTable {
  inline static const std::string kNull = "<NULL>";

  std::map<std::pair<std::string, std::string>, double> probs;  // (source, target) -> p
  double floor = 1e-7;

  double prob(const std::string& src, const std::string& tgt) const {
    auto it = probs.find({src, tgt});
    return it == probs.end() ? floor : it->second;
  }

  double null_prob(const std::string& tgt) const { return prob(kNull, tgt); }

  bool empty() const { return probs.empty(); }
};

using StringCorpus = std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>;

namespace detail {

struct Ibm1Counts {
  std::map<std::pair<std::string, std::string>, double> counts;
  double loglik = 0.0;

  void merge(Ibm1Counts&& other) {
    for (auto& [key, value] : other.counts) counts[key] += value;
    loglik += other.loglik;
  }
};

// Expectation step over one block of sentence pairs.
inline Ibm1Counts ibm1_estep_block(const StringCorpus& corpus, std::size_t begin, std::size_t end,
                                   const TranslationTable& table) {
  Ibm1Counts out;
  std::vector<double> post;
  for (std::size_t s = begin; s < end; ++s) {
    const auto& [src, tgt] = corpus[s];
    for (const std::string& t : tgt) {
      post.clear();
      double denom = table.prob(TranslationTable::kNull, t);
      post.push_back(denom);
      for (const std::string& w : src) {
        double p = table.prob(w, t);
        post.push_back(p);
        denom += p;
      }
      out.loglik += std::log(denom / static_cast<double>(src.size() + 1));
      out.counts[{TranslationTable::kNull, t}] += post[0] / denom;
      for (std::size_t i = 0; i < src.size(); ++i) out.counts[{src[i], t}] += post[i + 1] / denom;
    }
  }
  return out;
}

}  // namespace detail

// EM training. Probabilities start uniform over the source types observed
// with each target type (plus the empty token). After the last iteration the
// smoothing floor is applied once and each target renormalized. Per-iteration
// log likelihoods, measured on the parameters entering the iteration, are
// appended to loglik_out when given.
inline TranslationTable train_ibm1(const StringCorpus& corpus, int iterations, double smoothing = 1e-7,
                                   int jobs = 1, std::vector<double>* loglik_out = nullptr) {
  if (iterations < 1) throw std::invalid_argument("ibm1 iterations must be >= 1");
  if (corpus.empty()) throw DataError("empty training corpus");
  if (jobs < 1) jobs = 1;

  TranslationTable table;
  table.floor = smoothing;

  // Uniform initialization over observed candidates.
  std::map<std::string, std::set<std::string>> cand;  // target -> sources
  for (const auto& [src, tgt] : corpus)
    for (const std::string& t : tgt) {
      auto& set = cand[t];
      set.insert(TranslationTable::kNull);
      for (const std::string& w : src) set.insert(w);
    }
  for (const auto& [t, sources] : cand) {
    double p = 1.0 / static_cast<double>(sources.size());
    for (const std::string& s : sources) table.probs[{s, t}] = p;
  }

  const std::size_t block_size = 64;
  std::size_t n_blocks = (corpus.size() + block_size - 1) / block_size;

  for (int iter = 0; iter < iterations; ++iter) {
    std::vector<detail::Ibm1Counts> block_counts(n_blocks);
    if (jobs == 1 || n_blocks == 1) {
      for (std::size_t b = 0; b < n_blocks; ++b)
        block_counts[b] = detail::ibm1_estep_block(corpus, b * block_size,
                                                   std::min(corpus.size(), (b + 1) * block_size), table);
    } else {
      std::vector<std::thread> pool;
      std::size_t stride = static_cast<std::size_t>(jobs);
      for (std::size_t w = 0; w < stride; ++w) {
        pool.emplace_back([&, w]() {
          for (std::size_t b = w; b < n_blocks; b += stride)
            block_counts[b] = detail::ibm1_estep_block(corpus, b * block_size,
                                                       std::min(corpus.size(), (b + 1) * block_size), table);
        });
      }
      for (std::thread& th : pool) th.join();
    }
    // Merge in block order so results do not depend on the thread count.
    detail::Ibm1Counts total;
    for (detail::Ibm1Counts& bc : block_counts) total.merge(std::move(bc));
    if (loglik_out) loglik_out->push_back(total.loglik);

    std::map<std::string, double> target_total;
    for (const auto& [key, value] : total.counts) target_total[key.second] += value;
    for (auto& [key, value] : table.probs) {
      auto it = total.counts.find(key);
      double c = it == total.counts.end() ? 0.0 : it->second;
      value = c / target_total.at(key.second);
    }
  }

  // Smooth once, then restore per-target normalization.
  std::map<std::string, double> target_total;
  for (auto& [key, value] : table.probs) {
    value = std::max(value, smoothing);
    target_total[key.second] += value;
  }
  for (auto& [key, value] : table.probs) value /= target_total.at(key.second);
  return table;
}

// Links every target token to its most likely source token; the empty token
// wins only when strictly better than every source, and source ties go to the
// smallest index.
inline AlignmentSet viterbi_align(const TranslationTable& table, const std::vector<std::string>& src,
                                  const std::vector<std::string>& tgt) {
  AlignmentSet out;
  out.src_size = static_cast<int>(src.size());
  out.tgt_size = static_cast<int>(tgt.size());
  for (std::size_t j = 0; j < tgt.size(); ++j) {
    double best = -1.0;
    int best_i = -1;
    for (std::size_t i = 0; i < src.size(); ++i) {
      double p = table.prob(src[i], tgt[j]);
      if (p > best) {
        best = p;
        best_i = static_cast<int>(i);
      }
    }
    if (best_i >= 0 && table.null_prob(tgt[j]) <= best)
      out.links.push_back(Link{best_i, static_cast<int>(j), LinkType::Word});
  }
  out.normalize();
  return out;
}

inline void write_ttable(std::ostream& os, const TranslationTable& table) {
  for (const auto& [key, value] : table.probs)
    os << key.first << '\t' << key.second << '\t' << format_double(value) << '\n';
}

inline TranslationTable read_ttable(std::istream& is, double floor = 1e-7) {
  TranslationTable table;
  table.floor = floor;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    std::size_t tab1 = line.find('\t');
    std::size_t tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) throw ParseError("expected source<TAB>target<TAB>prob", lineno, 1);
    std::string src = line.substr(0, tab1);
    std::string tgt = line.substr(tab1 + 1, tab2 - tab1 - 1);
    try {
      table.probs[{src, tgt}] = std::stod(line.substr(tab2 + 1));
    } catch (const std::exception&) {
      throw ParseError("bad probability '" + line.substr(tab2 + 1) + "'", lineno, 1);
    }
  }
  return table;
}

}  // namespace amralign

#endif  // AMRALIGN_IBM1_HPP
