#ifndef AMRALIGN_PENMAN_HPP
#define AMRALIGN_PENMAN_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "amralign/types.hpp"
#include "amralign/util.hpp"

namespace amralign {

struct AmrNode {
  enum class Kind { Variable, Constant };
  Kind kind = Kind::Variable;
  std::string var;    // variable name, empty for constants
  std::string label;  // concept label or constant text (without quotes)
  bool quoted = false;

  friend bool operator==(const AmrNode&, const AmrNode&) = default;
};

struct AmrEdge {
  int parent = -1;
  std::string role;  // includes the leading ':'
  int child = -1;

  friend bool operator==(const AmrEdge&, const AmrEdge&) = default;
};

// An inline gold link: element occurrence ~e.N English token index.
struct GoldLink {
  AmrTokenRef ref;
  int english_index = -1;

  friend bool operator==(const GoldLink&, const GoldLink&) = default;
};

struct AmrGraph {
  std::vector<AmrNode> nodes;  // in textual definition order
  std::vector<AmrEdge> edges;  // in textual order
  int root = 0;
  std::vector<GoldLink> gold_links;  // in textual order
  std::vector<std::pair<std::string, std::string>> metadata;

  friend bool operator==(const AmrGraph&, const AmrGraph&) = default;

  const std::string* meta(const std::string& key) const {
    for (const auto& [k, v] : metadata)
      if (k == key) return &v;
    return nullptr;
  }

  std::optional<std::vector<std::string>> tok_tokens() const {
    if (const std::string* tok = meta("tok")) return split_ws(*tok);
    return std::nullopt;
  }

  // Surface form of a node as it appears in the text.
  std::string node_surface(int id) const {
    const AmrNode& n = nodes[id];
    if (n.quoted) return "\"" + n.label + "\"";
    return n.label;
  }

  std::vector<std::vector<int>> out_edges() const {
    std::vector<std::vector<int>> out(nodes.size());
    for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].parent].push_back(static_cast<int>(e));
    return out;
  }
};

namespace detail {

struct PenmanTok {
  enum class Type { LParen, RParen, Slash, Role, Atom, End };
  Type type = Type::End;
  std::string text;
  bool quoted = false;
  std::vector<int> align;
  int line = 1;
  int col = 1;
};

struct PenmanLexer {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;
  std::vector<std::pair<std::string, std::string>>* metadata;

  PenmanLexer(const std::string& t, int line_offset, std::vector<std::pair<std::string, std::string>>* md)
      : text(t), line(1 + line_offset), metadata(md) {}

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  char advance() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos < text.size()) {
      char c = peek();
      if (c == '#') {
        std::size_t eol = text.find('\n', pos);
        std::string comment = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        if (metadata && comment.size() > 3 && comment.compare(0, 4, "# ::") == 0) {
          std::string rest = comment.substr(4);
          std::size_t sp = rest.find_first_of(" \t");
          std::string key = sp == std::string::npos ? rest : rest.substr(0, sp);
          std::string val = sp == std::string::npos ? std::string() : trim(rest.substr(sp + 1));
          metadata->emplace_back(key, val);
        }
        while (pos < text.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::vector<int> maybe_annotation() {
    std::vector<int> out;
    if (peek() != '~') return out;
    int aline = line, acol = col;
    advance();
    if (peek() != 'e') throw ParseError("malformed alignment annotation, expected '~e.'", aline, acol);
    advance();
    if (peek() != '.') throw ParseError("malformed alignment annotation, expected '~e.'", aline, acol);
    advance();
    while (true) {
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("non-numeric alignment index", line, col);
      long v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (advance() - '0');
      out.push_back(static_cast<int>(v));
      if (peek() == ',')
        advance();
      else
        break;
    }
    return out;
  }

  static bool atom_char(char c) {
    return c != '\0' && !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '~' &&
           c != '"' && c != '/';
  }

  PenmanTok next() {
    skip_space_and_comments();
    PenmanTok tok;
    tok.line = line;
    tok.col = col;
    if (pos >= text.size()) {
      tok.type = PenmanTok::Type::End;
      return tok;
    }
    char c = peek();
    if (c == '(') {
      advance();
      tok.type = PenmanTok::Type::LParen;
      return tok;
    }
    if (c == ')') {
      advance();
      tok.type = PenmanTok::Type::RParen;
      return tok;
    }
    if (c == '/') {
      advance();
      tok.type = PenmanTok::Type::Slash;
      return tok;
    }
    if (c == '"') {
      advance();
      std::string s;
      while (true) {
        if (pos >= text.size() || peek() == '\n') throw ParseError("unterminated string", tok.line, tok.col);
        char d = advance();
        if (d == '\\' && pos < text.size() && (peek() == '"' || peek() == '\\')) {
          s += advance();
        } else if (d == '"') {
          break;
        } else {
          s += d;
        }
      }
      tok.type = PenmanTok::Type::Atom;
      tok.text = s;
      tok.quoted = true;
      tok.align = maybe_annotation();
      return tok;
    }
    if (c == ':') {
      std::string s;
      s += advance();
      while (atom_char(peek())) s += advance();
      if (s.size() <= 1) throw ParseError("empty role name", tok.line, tok.col);
      tok.type = PenmanTok::Type::Role;
      tok.text = s;
      tok.align = maybe_annotation();
      return tok;
    }
    if (c == '~') throw ParseError("unexpected '~'", tok.line, tok.col);
    std::string s;
    while (atom_char(peek())) s += advance();
    if (s.empty()) throw ParseError(std::string("unexpected character '") + c + "'", tok.line, tok.col);
    tok.type = PenmanTok::Type::Atom;
    tok.text = s;
    tok.align = maybe_annotation();
    return tok;
  }
};

struct CstAttr;

struct CstNode {
  PenmanTok var;
  PenmanTok conceptTok;
  std::vector<CstAttr> attrs;
};

struct CstAttr {
  PenmanTok role;
  // Either a nested node or a plain atom (constant or variable mention).
  std::unique_ptr<CstNode> node;
  PenmanTok atom;
};

class PenmanParser {
 public:
  PenmanParser(const std::string& text, int line_offset, AmrGraph* graph)
      : lexer_(text, line_offset, &graph->metadata), graph_(graph) {
    cur_ = lexer_.next();
  }

  void run() {
    CstNode root = parse_node();
    if (cur_.type != PenmanTok::Type::End)
      throw ParseError("trailing content after graph", cur_.line, cur_.col);
    collect_definitions(root);
    assign_ids(root);
    graph_->root = node_id_.at(&root);
    build(root);
  }

 private:
  PenmanLexer lexer_;
  AmrGraph* graph_;
  PenmanTok cur_;
  std::map<std::string, const CstNode*> defs_;
  std::map<const void*, int> node_id_;        // CstNode* or atom PenmanTok* -> node id
  std::map<std::string, int> var_node_;       // variable name -> node id
  std::map<int, int> mention_count_;          // node id -> non-defining mentions seen

  PenmanTok take() {
    PenmanTok t = cur_;
    cur_ = lexer_.next();
    return t;
  }

  PenmanTok expect(PenmanTok::Type type, const char* what) {
    if (cur_.type != type) throw ParseError(std::string("expected ") + what, cur_.line, cur_.col);
    return take();
  }

  CstNode parse_node() {
    expect(PenmanTok::Type::LParen, "'('");
    CstNode node;
    node.var = expect(PenmanTok::Type::Atom, "variable name");
    if (node.var.quoted) throw ParseError("variable name must not be quoted", node.var.line, node.var.col);
    expect(PenmanTok::Type::Slash, "'/'");
    node.conceptTok = expect(PenmanTok::Type::Atom, "concept label");
    while (cur_.type == PenmanTok::Type::Role) {
      CstAttr attr;
      attr.role = take();
      if (cur_.type == PenmanTok::Type::LParen) {
        attr.node = std::make_unique<CstNode>(parse_node());
      } else if (cur_.type == PenmanTok::Type::Atom) {
        attr.atom = take();
      } else {
        throw ParseError("expected attribute value", cur_.line, cur_.col);
      }
      node.attrs.push_back(std::move(attr));
    }
    expect(PenmanTok::Type::RParen, "')'");
    return node;
  }

  void collect_definitions(const CstNode& node) {
    auto [it, inserted] = defs_.emplace(node.var.text, &node);
    if (!inserted)
      throw ParseError("duplicate variable definition '" + node.var.text + "'", node.var.line, node.var.col);
    for (const CstAttr& attr : node.attrs)
      if (attr.node) collect_definitions(*attr.node);
  }

  // First walk: node ids in textual order of definitions and constants.
  void assign_ids(const CstNode& node) {
    AmrNode n;
    n.kind = AmrNode::Kind::Variable;
    n.var = node.var.text;
    n.label = node.conceptTok.text;
    n.quoted = node.conceptTok.quoted;
    int id = static_cast<int>(graph_->nodes.size());
    graph_->nodes.push_back(std::move(n));
    node_id_[&node] = id;
    var_node_[node.var.text] = id;
    for (const CstAttr& attr : node.attrs) {
      if (attr.node) {
        assign_ids(*attr.node);
      } else if (!attr.atom.quoted && defs_.count(attr.atom.text)) {
        // reentrant variable mention, no new node
      } else {
        AmrNode c;
        c.kind = AmrNode::Kind::Constant;
        c.label = attr.atom.text;
        c.quoted = attr.atom.quoted;
        node_id_[&attr.atom] = static_cast<int>(graph_->nodes.size());
        graph_->nodes.push_back(std::move(c));
      }
    }
  }

  void add_gold(const AmrTokenRef& ref, const std::vector<int>& indices) {
    for (int idx : indices) graph_->gold_links.push_back(GoldLink{ref, idx});
  }

  // Second walk: edges, occurrences, gold links, all in textual order.
  void build(const CstNode& node) {
    int id = node_id_.at(&node);
    add_gold(AmrTokenRef{concept_ref(id), 0}, node.var.align);
    add_gold(AmrTokenRef{concept_ref(id), 0}, node.conceptTok.align);
    for (const CstAttr& attr : node.attrs) {
      int edge_idx = static_cast<int>(graph_->edges.size());
      graph_->edges.push_back(AmrEdge{id, attr.role.text, -1});
      add_gold(AmrTokenRef{role_ref(edge_idx), 0}, attr.role.align);
      if (attr.node) {
        graph_->edges[edge_idx].child = node_id_.at(attr.node.get());
        build(*attr.node);
      } else if (!attr.atom.quoted && defs_.count(attr.atom.text)) {
        int target = var_node_.at(attr.atom.text);
        int occ = ++mention_count_[target];
        graph_->edges[edge_idx].child = target;
        add_gold(AmrTokenRef{concept_ref(target), occ}, attr.atom.align);
      } else {
        int cid = node_id_.at(&attr.atom);
        graph_->edges[edge_idx].child = cid;
        add_gold(AmrTokenRef{concept_ref(cid), 0}, attr.atom.align);
      }
    }
  }
};

}  // namespace detail

inline AmrGraph parse_penman(const std::string& text, int line_offset = 0) {
  AmrGraph graph;
  detail::PenmanParser parser(text, line_offset, &graph);
  parser.run();
  return graph;
}

namespace detail {

inline std::string escape_quoted(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

struct PenmanWriter {
  const AmrGraph& g;
  std::vector<std::vector<int>> adj;
  std::vector<bool> defined;
  std::map<AmrTokenRef, std::vector<int>> gold;
  std::map<int, int> mention_count;
  std::string out;

  explicit PenmanWriter(const AmrGraph& graph) : g(graph), adj(graph.out_edges()), defined(graph.nodes.size(), false) {
    for (const GoldLink& l : g.gold_links) gold[l.ref].push_back(l.english_index);
  }

  void annotation(const AmrTokenRef& ref) {
    auto it = gold.find(ref);
    if (it == gold.end()) return;
    out += "~e.";
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(it->second[i]);
    }
  }

  void write_node(int id) {
    const AmrNode& n = g.nodes[id];
    defined[id] = true;
    out += '(';
    out += n.var;
    out += " / ";
    out += g.node_surface(id);
    annotation(AmrTokenRef{concept_ref(id), 0});
    for (int e : adj[id]) {
      out += ' ';
      out += g.edges[e].role;
      annotation(AmrTokenRef{role_ref(e), 0});
      out += ' ';
      int child = g.edges[e].child;
      const AmrNode& cn = g.nodes[child];
      if (cn.kind == AmrNode::Kind::Constant) {
        out += cn.quoted ? "\"" + escape_quoted(cn.label) + "\"" : cn.label;
        annotation(AmrTokenRef{concept_ref(child), 0});
      } else if (!defined[child]) {
        write_node(child);
      } else {
        int occ = ++mention_count[child];
        out += cn.var;
        annotation(AmrTokenRef{concept_ref(child), occ});
      }
    }
    out += ')';
  }
};

}  // namespace detail

inline std::string serialize_penman(const AmrGraph& g, bool with_metadata = true) {
  std::string out;
  if (with_metadata) {
    for (const auto& [k, v] : g.metadata) {
      out += "# ::" + k;
      if (!v.empty()) out += " " + v;
      out += '\n';
    }
  }
  detail::PenmanWriter w(g);
  w.write_node(g.root);
  out += w.out;
  return out;
}

// Reads a file of AMR blocks separated by blank lines. Metadata comment lines
// belong to the following graph.
inline std::vector<AmrGraph> read_amr_file(std::istream& is) {
  std::vector<AmrGraph> graphs;
  std::string line;
  std::string block;
  int lineno = 0;
  int block_start = 0;
  bool in_block = false;
  auto flush = [&]() {
    if (!in_block) return;
    bool has_content = false;
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (block[i] == '#') {
        while (i < block.size() && block[i] != '\n') ++i;
      } else if (!std::isspace(static_cast<unsigned char>(block[i]))) {
        has_content = true;
        break;
      }
    }
    if (has_content) graphs.push_back(parse_penman(block, block_start - 1));
    block.clear();
    in_block = false;
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (is_blank(line)) {
      flush();
      continue;
    }
    if (!in_block) {
      in_block = true;
      block_start = lineno;
    }
    block += line;
    block += '\n';
  }
  flush();
  return graphs;
}

inline void write_amr_file(std::ostream& os, const std::vector<AmrGraph>& graphs) {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (i) os << '\n';
    os << serialize_penman(graphs[i]) << '\n';
  }
}

}  // namespace amralign

#endif  // AMRALIGN_PENMAN_HPP
