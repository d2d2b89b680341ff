#ifndef AMRALIGN_ALIGNMENT_HPP
#define AMRALIGN_ALIGNMENT_HPP

#include <algorithm>
#include <compare>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "amralign/util.hpp"

namespace amralign {

enum class LinkType { Concept, Role, Word };

struct Link {
  int src = -1;
  int tgt = -1;
  LinkType type = LinkType::Word;

  // Identity is the index pair; the type tags what the source token was.
  friend bool operator==(const Link& a, const Link& b) { return a.src == b.src && a.tgt == b.tgt; }
  friend auto operator<=>(const Link& a, const Link& b) {
    if (auto c = a.src <=> b.src; c != 0) return c;
    return a.tgt <=> b.tgt;
  }
};

// A set of links for one sentence pair, kept sorted and duplicate free.
struct AlignmentSet {
  std::vector<Link> links;
  int src_size = -1;  // -1 when unknown
  int tgt_size = -1;

  void normalize() {
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
  }

  void add(int src, int tgt, LinkType type = LinkType::Word) {
    Link l{src, tgt, type};
    auto it = std::lower_bound(links.begin(), links.end(), l);
    if (it != links.end() && *it == l) return;
    links.insert(it, l);
  }

  bool contains(int src, int tgt) const {
    Link l{src, tgt, LinkType::Word};
    return std::binary_search(links.begin(), links.end(), l);
  }

  bool empty() const { return links.empty(); }
  std::size_t size() const { return links.size(); }

  friend bool operator==(const AlignmentSet& a, const AlignmentSet& b) { return a.links == b.links; }
};

inline AlignmentSet transpose(const AlignmentSet& a) {
  AlignmentSet out;
  out.src_size = a.tgt_size;
  out.tgt_size = a.src_size;
  out.links.reserve(a.links.size());
  for (const Link& l : a.links) out.links.push_back(Link{l.tgt, l.src, l.type});
  out.normalize();
  return out;
}

inline char link_type_char(LinkType t) {
  switch (t) {
    case LinkType::Concept: return 'C';
    case LinkType::Role: return 'R';
    default: return 'W';
  }
}

// Pharaoh format: one sentence per line, space separated "i-j" pairs, with an
// optional ":C" / ":R" type suffix. An empty line is an empty alignment.
inline std::string write_pharaoh_line(const AlignmentSet& a, bool typed = false) {
  std::string out;
  for (std::size_t i = 0; i < a.links.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(a.links[i].src);
    out += '-';
    out += std::to_string(a.links[i].tgt);
    if (typed) {
      out += ':';
      out += link_type_char(a.links[i].type);
    }
  }
  return out;
}

inline AlignmentSet parse_pharaoh_line(const std::string& line, int lineno = 1) {
  AlignmentSet out;
  int col = 1;
  for (const std::string& item : split_ws(line)) {
    std::size_t dash = item.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= item.size())
      throw ParseError("bad alignment pair '" + item + "'", lineno, col);
    std::size_t colon = item.find(':', dash + 1);
    std::string s = item.substr(0, dash);
    std::string t = item.substr(dash + 1, colon == std::string::npos ? std::string::npos : colon - dash - 1);
    LinkType type = LinkType::Word;
    if (colon != std::string::npos) {
      std::string tag = item.substr(colon + 1);
      if (tag == "C")
        type = LinkType::Concept;
      else if (tag == "R")
        type = LinkType::Role;
      else if (tag == "W")
        type = LinkType::Word;
      else
        throw ParseError("bad link type '" + tag + "'", lineno, col);
    }
    try {
      std::size_t pos = 0;
      int si = std::stoi(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      int ti = std::stoi(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      if (si < 0 || ti < 0) throw std::invalid_argument(item);
      out.links.push_back(Link{si, ti, type});
    } catch (const std::exception&) {
      throw ParseError("bad alignment pair '" + item + "'", lineno, col);
    }
    ++col;
  }
  out.normalize();
  return out;
}

inline void write_pharaoh(std::ostream& os, const std::vector<AlignmentSet>& all, bool typed = false) {
  for (const AlignmentSet& a : all) os << write_pharaoh_line(a, typed) << '\n';
}

inline std::vector<AlignmentSet> read_pharaoh(std::istream& is) {
  std::vector<AlignmentSet> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    out.push_back(parse_pharaoh_line(line, lineno));
  }
  return out;
}

}  // namespace amralign

#endif  // AMRALIGN_ALIGNMENT_HPP
