#ifndef AMRALIGN_TYPES_HPP
#define AMRALIGN_TYPES_HPP

#include <compare>
#include <string>
#include <variant>
#include <vector>

namespace amralign {

// Reference to a piece of an AMR graph: a node (concept or constant) or an edge.
struct ElementRef {
  enum class Kind { Concept, Role };
  Kind kind = Kind::Concept;
  int id = -1;  // node id for concepts, edge index for roles

  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};

inline ElementRef concept_ref(int node) { return {ElementRef::Kind::Concept, node}; }
inline ElementRef role_ref(int edge) { return {ElementRef::Kind::Role, edge}; }

// A concrete occurrence of an element in a linearization. Reentrant nodes show
// up more than once; occurrence 0 is the defining mention.
struct AmrTokenRef {
  ElementRef element;
  int occurrence = 0;

  friend auto operator<=>(const AmrTokenRef&, const AmrTokenRef&) = default;
};

enum class TokenKind { Concept, Role, Word };

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::Word;
  AmrTokenRef ref;      // meaningful for Concept/Role tokens
  int orig_index = -1;  // meaningful for Word tokens
};

struct TokenStream {
  enum class Side { Amr, English };
  Side side = Side::English;
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  std::vector<std::string> surfaces() const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const Token& t : tokens) out.push_back(t.surface);
    return out;
  }
};

// Where a kept token came from: an AMR element occurrence or an original
// position in the English sentence.
using Provenance = std::variant<AmrTokenRef, int>;

struct ProvenanceMap {
  std::vector<Provenance> entries;  // entry i describes output token i

  std::size_t size() const { return entries.size(); }
  const Provenance& operator[](std::size_t i) const { return entries[i]; }
};

}  // namespace amralign

#endif  // AMRALIGN_TYPES_HPP
