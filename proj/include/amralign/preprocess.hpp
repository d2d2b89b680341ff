#ifndef AMRALIGN_PREPROCESS_HPP
#define AMRALIGN_PREPROCESS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amralign/alignment.hpp"
#include "amralign/config.hpp"
#include "amralign/penman.hpp"
#include "amralign/types.hpp"
#include "amralign/util.hpp"

namespace amralign {

// Depth-first linearization. Every node contributes its surface at its
// defining visit, every edge contributes its role, and a reentrant mention
// contributes the bare variable name without descending again.
inline TokenStream linearize(const AmrGraph& g) {
  TokenStream out;
  out.side = TokenStream::Side::Amr;
  std::vector<std::vector<int>> adj = g.out_edges();
  std::vector<bool> defined(g.nodes.size(), false);
  std::map<int, int> mentions;

  auto walk = [&](auto&& self, int id) -> void {
    defined[id] = true;
    out.tokens.push_back(Token{g.node_surface(id), TokenKind::Concept, AmrTokenRef{concept_ref(id), 0}, -1});
    for (int e : adj[id]) {
      out.tokens.push_back(Token{g.edges[e].role, TokenKind::Role, AmrTokenRef{role_ref(e), 0}, -1});
      int child = g.edges[e].child;
      if (g.nodes[child].kind == AmrNode::Kind::Constant) {
        out.tokens.push_back(
            Token{g.node_surface(child), TokenKind::Concept, AmrTokenRef{concept_ref(child), 0}, -1});
      } else if (!defined[child]) {
        self(self, child);
      } else {
        int occ = ++mentions[child];
        out.tokens.push_back(
            Token{g.nodes[child].var, TokenKind::Concept, AmrTokenRef{concept_ref(child), occ}, -1});
      }
    }
  };
  walk(walk, g.root);
  return out;
}

inline TokenStream english_stream(const std::vector<std::string>& words) {
  TokenStream out;
  out.side = TokenStream::Side::English;
  for (std::size_t i = 0; i < words.size(); ++i)
    out.tokens.push_back(Token{words[i], TokenKind::Word, AmrTokenRef{}, static_cast<int>(i)});
  return out;
}

// Strips surrounding double quotes from a constant surface.
inline std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

// Strips a trailing sense suffix like -01 or -91 from a concept label.
inline std::string strip_sense(const std::string& s) {
  if (s.size() > 3 && s[s.size() - 3] == '-' && std::isdigit(static_cast<unsigned char>(s[s.size() - 2])) &&
      std::isdigit(static_cast<unsigned char>(s[s.size() - 1])))
    return s.substr(0, s.size() - 3);
  return s;
}

// Removes rarely aligned tokens. Concept surfaces lose quotes and sense tags,
// surviving roles are lowercased, and English words are matched against the
// stoplist case insensitively. Throws DataError when nothing survives.
inline std::pair<TokenStream, ProvenanceMap> filter_tokens(const TokenStream& stream, const FilterConfig& cfg) {
  TokenStream out;
  out.side = stream.side;
  ProvenanceMap prov;
  for (const Token& t : stream.tokens) {
    switch (t.kind) {
      case TokenKind::Word: {
        if (cfg.removes_word(t.surface)) continue;
        out.tokens.push_back(t);
        prov.entries.emplace_back(t.orig_index);
        break;
      }
      case TokenKind::Role: {
        if (cfg.removes_role(t.surface)) continue;
        Token kept = t;
        kept.surface = ascii_lower(t.surface);
        out.tokens.push_back(std::move(kept));
        prov.entries.emplace_back(t.ref);
        break;
      }
      case TokenKind::Concept: {
        std::string s = t.surface;
        if (cfg.strip_quotes) s = strip_quotes(s);
        if (cfg.strip_senses) s = strip_sense(s);
        if (cfg.removes_concept(s)) continue;
        Token kept = t;
        kept.surface = s;
        out.tokens.push_back(std::move(kept));
        prov.entries.emplace_back(t.ref);
        break;
      }
    }
  }
  if (out.tokens.empty()) throw DataError("sentence fully filtered");
  return {std::move(out), std::move(prov)};
}

// Lowercases everything; concept and word surfaces are truncated to stem_len
// code points, role surfaces keep their full name.
inline TokenStream normalize(const TokenStream& stream, int stem_len) {
  TokenStream out;
  out.side = stream.side;
  out.tokens.reserve(stream.tokens.size());
  for (const Token& t : stream.tokens) {
    Token n = t;
    n.surface = ascii_lower(t.surface);
    if (t.kind != TokenKind::Role) n.surface = utf8_truncate(n.surface, static_cast<std::size_t>(stem_len));
    out.tokens.push_back(std::move(n));
  }
  return out;
}

// A link between an AMR element occurrence and an original English position.
struct RefLink {
  AmrTokenRef amr;
  int english = -1;
  LinkType type = LinkType::Concept;

  friend auto operator<=>(const RefLink&, const RefLink&) = default;
};

// Maps links over filtered streams back to original references: link (i, j)
// becomes (amr_map[i], en_map[j]). Indices outside either map are an error.
inline std::vector<RefLink> project_back(const AlignmentSet& links, const ProvenanceMap& amr_map,
                                         const ProvenanceMap& en_map) {
  std::vector<RefLink> out;
  out.reserve(links.size());
  for (const Link& l : links.links) {
    if (l.src < 0 || static_cast<std::size_t>(l.src) >= amr_map.size())
      throw DataError("alignment source index " + std::to_string(l.src) + " outside provenance map");
    if (l.tgt < 0 || static_cast<std::size_t>(l.tgt) >= en_map.size())
      throw DataError("alignment target index " + std::to_string(l.tgt) + " outside provenance map");
    const Provenance& ap = amr_map[l.src];
    const Provenance& ep = en_map[l.tgt];
    if (!std::holds_alternative<AmrTokenRef>(ap))
      throw DataError("source provenance is not an AMR element");
    if (!std::holds_alternative<int>(ep)) throw DataError("target provenance is not an English position");
    const AmrTokenRef& ref = std::get<AmrTokenRef>(ap);
    LinkType type = ref.element.kind == ElementRef::Kind::Role ? LinkType::Role : LinkType::Concept;
    out.push_back(RefLink{ref, std::get<int>(ep), type});
  }
  return out;
}

// Position of each element occurrence within a linearized stream.
inline std::map<AmrTokenRef, int> ref_positions(const TokenStream& linear) {
  std::map<AmrTokenRef, int> out;
  for (std::size_t i = 0; i < linear.tokens.size(); ++i) out[linear.tokens[i].ref] = static_cast<int>(i);
  return out;
}

// Renders element-level links as index links over the full linearized stream
// paired with original English positions.
inline AlignmentSet to_canonical(const std::vector<RefLink>& links, const TokenStream& linear, int en_size) {
  std::map<AmrTokenRef, int> pos = ref_positions(linear);
  AlignmentSet out;
  out.src_size = static_cast<int>(linear.tokens.size());
  out.tgt_size = en_size;
  for (const RefLink& l : links) {
    auto it = pos.find(l.amr);
    if (it == pos.end()) throw DataError("link references an element occurrence missing from the linearization");
    if (l.english < 0 || (en_size >= 0 && l.english >= en_size))
      throw DataError("English index " + std::to_string(l.english) + " out of range");
    out.links.push_back(Link{it->second, l.english, l.type});
  }
  out.normalize();
  return out;
}

// Gold links from inline annotations, over (linearized position, English
// original position). gold_index_base shifts the annotation indices.
inline AlignmentSet canonical_gold(const AmrGraph& g, const TokenStream& linear, int en_size,
                                   int gold_index_base = 0) {
  std::vector<RefLink> refs;
  for (const GoldLink& gl : g.gold_links) {
    int idx = gl.english_index - gold_index_base;
    if (idx < 0) throw DataError("gold English index " + std::to_string(gl.english_index) + " below index base");
    LinkType type = gl.ref.element.kind == ElementRef::Kind::Role ? LinkType::Role : LinkType::Concept;
    refs.push_back(RefLink{gl.ref, idx, type});
  }
  return to_canonical(refs, linear, en_size);
}

}  // namespace amralign

#endif  // AMRALIGN_PREPROCESS_HPP
