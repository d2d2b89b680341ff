#ifndef AMRALIGN_SYMMETRIZE_HPP
#define AMRALIGN_SYMMETRIZE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amralign/alignment.hpp"
#include "amralign/util.hpp"

namespace amralign {

enum class SymmetrizeMode { Intersection, Union, GrowDiag, GrowDiagFinal, GrowDiagFinalAnd };

inline SymmetrizeMode parse_symmetrize_mode(const std::string& name) {
  std::string low = ascii_lower(name);
  if (low == "intersection" || low == "intersect") return SymmetrizeMode::Intersection;
  if (low == "union") return SymmetrizeMode::Union;
  if (low == "gd" || low == "grow-diag") return SymmetrizeMode::GrowDiag;
  if (low == "gdf" || low == "grow-diag-final") return SymmetrizeMode::GrowDiagFinal;
  if (low == "gdfa" || low == "grow-diag-final-and") return SymmetrizeMode::GrowDiagFinalAnd;
  throw DataError("unknown symmetrization mode '" + name + "'");
}

namespace detail {

inline void check_bounds(const AlignmentSet& a, int src_len, int tgt_len, const char* which) {
  for (const Link& l : a.links)
    if (l.src < 0 || l.src >= src_len || l.tgt < 0 || l.tgt >= tgt_len)
      throw DataError(std::string("link outside the sentence in ") + which + " input: " +
                      std::to_string(l.src) + "-" + std::to_string(l.tgt));
}

}  // namespace detail

// Both inputs must already be in the same orientation. Types are taken from
// whichever input carries the link.
inline AlignmentSet combine(const AlignmentSet& a, const AlignmentSet& b, SymmetrizeMode mode) {
  if (a.src_size >= 0 && b.src_size >= 0 && a.src_size != b.src_size)
    throw DataError("source dimensions differ: " + std::to_string(a.src_size) + " vs " +
                    std::to_string(b.src_size));
  if (a.tgt_size >= 0 && b.tgt_size >= 0 && a.tgt_size != b.tgt_size)
    throw DataError("target dimensions differ: " + std::to_string(a.tgt_size) + " vs " +
                    std::to_string(b.tgt_size));
  AlignmentSet out;
  out.src_size = a.src_size >= 0 ? a.src_size : b.src_size;
  out.tgt_size = a.tgt_size >= 0 ? a.tgt_size : b.tgt_size;
  if (mode == SymmetrizeMode::Intersection) {
    for (const Link& l : a.links)
      if (b.contains(l.src, l.tgt)) out.links.push_back(l);
  } else {
    out.links = a.links;
    for (const Link& l : b.links)
      if (!a.contains(l.src, l.tgt)) out.links.push_back(l);
  }
  out.normalize();
  return out;
}

// Grow-diag-final(-and) symmetrization of two directional alignments over the
// same sentence pair. Starts from the intersection, grows along the eight
// neighbours of current links into union links where at least one endpoint is
// still uncovered (rescanning until a full pass adds nothing, additions take
// effect immediately), then adds remaining union links in one row-major pass:
// with final_and both endpoints must be uncovered, otherwise one suffices.
inline AlignmentSet grow_diag_final_and(const AlignmentSet& a, const AlignmentSet& b, int src_len, int tgt_len,
                                        bool grow = true, bool final_pass = true, bool final_and = true) {
  if (src_len < 0 || tgt_len < 0) throw DataError("negative sentence length");
  detail::check_bounds(a, src_len, tgt_len, "first");
  detail::check_bounds(b, src_len, tgt_len, "second");

  AlignmentSet inter = combine(a, b, SymmetrizeMode::Intersection);
  AlignmentSet uni = combine(a, b, SymmetrizeMode::Union);

  std::vector<char> in(static_cast<std::size_t>(src_len) * tgt_len, 0);
  std::vector<char> in_union(in.size(), 0);
  std::map<std::pair<int, int>, LinkType> type_of;
  std::vector<int> cov_src(src_len, 0), cov_tgt(tgt_len, 0);

  auto cell = [&](int s, int t) { return static_cast<std::size_t>(s) * tgt_len + t; };
  for (const Link& l : uni.links) {
    in_union[cell(l.src, l.tgt)] = 1;
    type_of[{l.src, l.tgt}] = l.type;
  }
  for (const Link& l : inter.links) {
    in[cell(l.src, l.tgt)] = 1;
    ++cov_src[l.src];
    ++cov_tgt[l.tgt];
  }

  if (grow) {
    static const int ds[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
    static const int dt[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < src_len; ++s) {
        for (int t = 0; t < tgt_len; ++t) {
          if (!in[cell(s, t)]) continue;
          for (int d = 0; d < 8; ++d) {
            int ns = s + ds[d], nt = t + dt[d];
            if (ns < 0 || ns >= src_len || nt < 0 || nt >= tgt_len) continue;
            if (in[cell(ns, nt)] || !in_union[cell(ns, nt)]) continue;
            if (cov_src[ns] && cov_tgt[nt]) continue;
            in[cell(ns, nt)] = 1;
            ++cov_src[ns];
            ++cov_tgt[nt];
            changed = true;
          }
        }
      }
    }
  }

  if (final_pass) {
    for (int s = 0; s < src_len; ++s) {
      for (int t = 0; t < tgt_len; ++t) {
        if (in[cell(s, t)] || !in_union[cell(s, t)]) continue;
        bool ok = final_and ? (!cov_src[s] && !cov_tgt[t]) : (!cov_src[s] || !cov_tgt[t]);
        if (!ok) continue;
        in[cell(s, t)] = 1;
        ++cov_src[s];
        ++cov_tgt[t];
      }
    }
  }

  AlignmentSet out;
  out.src_size = src_len;
  out.tgt_size = tgt_len;
  for (int s = 0; s < src_len; ++s)
    for (int t = 0; t < tgt_len; ++t)
      if (in[cell(s, t)]) out.links.push_back(Link{s, t, type_of.at({s, t})});
  out.normalize();
  return out;
}

inline AlignmentSet symmetrize(const AlignmentSet& a, const AlignmentSet& b, int src_len, int tgt_len,
                               SymmetrizeMode mode) {
  switch (mode) {
    case SymmetrizeMode::Intersection:
    case SymmetrizeMode::Union:
      return combine(a, b, mode);
    case SymmetrizeMode::GrowDiag:
      return grow_diag_final_and(a, b, src_len, tgt_len, true, false, false);
    case SymmetrizeMode::GrowDiagFinal:
      return grow_diag_final_and(a, b, src_len, tgt_len, true, true, false);
    case SymmetrizeMode::GrowDiagFinalAnd:
    default:
      return grow_diag_final_and(a, b, src_len, tgt_len, true, true, true);
  }
}

}  // namespace amralign

#endif  // AMRALIGN_SYMMETRIZE_HPP
