#ifndef AMRALIGN_TREEBANK_HPP
#define AMRALIGN_TREEBANK_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "amralign/types.hpp"
#include "amralign/util.hpp"

namespace amralign {

struct TreeNode {
  std::string label;
  std::vector<int> children;  // empty for leaves
  std::string token;          // leaf surface
  int orig_index = -1;        // leaf position in the original sentence
  // For trees converted from AMR graphs:
  std::optional<ElementRef> element;
  std::string role;  // original role string on role nodes

  bool is_leaf() const { return children.empty(); }
};

struct ConstituencyTree {
  std::vector<TreeNode> nodes;
  int root = -1;

  bool empty() const { return root < 0; }

  std::vector<int> leaves() const {
    std::vector<int> out;
    collect_leaves(root, out);
    return out;
  }

  void collect_leaves(int id, std::vector<int>& out) const {
    if (id < 0) return;
    const TreeNode& n = nodes[id];
    if (n.is_leaf()) {
      out.push_back(id);
      return;
    }
    for (int c : n.children) collect_leaves(c, out);
  }

  bool is_preterminal(int id) const {
    const TreeNode& n = nodes[id];
    return n.children.size() == 1 && nodes[n.children[0]].is_leaf();
  }

  std::vector<std::string> leaf_tokens() const {
    std::vector<std::string> out;
    for (int id : leaves()) out.push_back(nodes[id].token);
    return out;
  }
};

// Parses one bracketed tree: (S (NP (NN Gas)) ...). Labels and tokens are any
// run of characters other than whitespace and parentheses.
inline ConstituencyTree parse_ptb(const std::string& line, int lineno = 1) {
  ConstituencyTree tree;
  std::size_t pos = 0;
  int col = 1;
  int next_leaf = 0;

  auto skip_ws = [&]() {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
      ++col;
    }
  };
  auto read_word = [&]() {
    std::size_t b = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])) && line[pos] != '(' &&
           line[pos] != ')') {
      ++pos;
      ++col;
    }
    return line.substr(b, pos - b);
  };

  // Recursive descent over "( label child* )" where a child is a nested node
  // or a bare token.
  auto parse_node = [&](auto&& self) -> int {
    skip_ws();
    if (pos >= line.size() || line[pos] != '(') throw ParseError("expected '('", lineno, col);
    ++pos;
    ++col;
    skip_ws();
    std::string label = read_word();
    // Treebank files often wrap each sentence as "( (S ...))"; accept a
    // label-less node when a child follows directly.
    if (label.empty() && (pos >= line.size() || line[pos] != '('))
      throw ParseError("missing node label", lineno, col);
    int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{});
    tree.nodes[id].label = label;
    while (true) {
      skip_ws();
      if (pos >= line.size()) throw ParseError("unbalanced parentheses", lineno, col);
      if (line[pos] == ')') {
        ++pos;
        ++col;
        break;
      }
      if (line[pos] == '(') {
        int child = self(self);
        tree.nodes[id].children.push_back(child);
      } else {
        std::string word = read_word();
        int leaf = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{});
        tree.nodes[leaf].label = word;
        tree.nodes[leaf].token = word;
        tree.nodes[leaf].orig_index = next_leaf++;
        tree.nodes[id].children.push_back(leaf);
      }
    }
    if (tree.nodes[id].children.empty()) throw ParseError("node '" + label + "' has no children", lineno, col);
    return id;
  };

  tree.root = parse_node(parse_node);
  skip_ws();
  if (pos < line.size()) throw ParseError("trailing content after tree", lineno, col);
  return tree;
}

inline void serialize_tree_node(const ConstituencyTree& t, int id, std::string& out) {
  const TreeNode& n = t.nodes[id];
  if (n.is_leaf()) {
    out += n.token;
    return;
  }
  out += '(';
  out += n.label;
  for (int c : n.children) {
    out += ' ';
    serialize_tree_node(t, c, out);
  }
  out += ')';
}

inline std::string serialize_tree(const ConstituencyTree& t) {
  std::string out;
  if (!t.empty()) serialize_tree_node(t, t.root, out);
  return out;
}

inline std::vector<ConstituencyTree> read_tree_file(std::istream& is) {
  std::vector<ConstituencyTree> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    out.push_back(parse_ptb(line, lineno));
  }
  return out;
}

// Stemming rule for English tree leaves: lowercase, and truncate to stem_len
// code points only when the token contains an alphabetic character. Numbers
// and punctuation pass through lowercasing untouched.
inline std::string stem_tree_token(const std::string& token, int stem_len) {
  std::string low = ascii_lower(token);
  if (!has_alpha(token)) return low;
  return utf8_truncate(low, static_cast<std::size_t>(stem_len));
}

// Drops leaves whose lowercased token is in the stoplist, stems the remaining
// leaves, and prunes any internal node left without children. Returns the new
// tree plus a map from new leaf position to original leaf position.
inline std::pair<ConstituencyTree, ProvenanceMap> preprocess_tree(const ConstituencyTree& tree,
                                                                  const std::set<std::string>& stoplist,
                                                                  int stem_len) {
  ConstituencyTree out;
  ProvenanceMap prov;

  auto copy_node = [&](auto&& self, int id) -> int {
    const TreeNode& n = tree.nodes[id];
    if (n.is_leaf()) {
      if (stoplist.count(ascii_lower(n.token))) return -1;
      int nid = static_cast<int>(out.nodes.size());
      out.nodes.push_back(TreeNode{});
      out.nodes[nid].label = n.label;
      out.nodes[nid].token = stem_tree_token(n.token, stem_len);
      out.nodes[nid].orig_index = n.orig_index;
      prov.entries.emplace_back(n.orig_index);
      return nid;
    }
    int nid = static_cast<int>(out.nodes.size());
    out.nodes.push_back(TreeNode{});
    out.nodes[nid].label = n.label;
    out.nodes[nid].element = n.element;
    out.nodes[nid].role = n.role;
    std::vector<int> kept;
    for (int c : n.children) {
      int k = self(self, c);
      if (k >= 0) kept.push_back(k);
    }
    if (kept.empty()) {
      // Node lost all descendants; roll back its slot if it is the last one.
      if (nid == static_cast<int>(out.nodes.size()) - 1) out.nodes.pop_back();
      return -1;
    }
    out.nodes[nid].children = kept;
    return nid;
  };

  int root = copy_node(copy_node, tree.root);
  if (root < 0) throw DataError("sentence fully filtered");
  out.root = root;
  return {std::move(out), std::move(prov)};
}

}  // namespace amralign

#endif  // AMRALIGN_TREEBANK_HPP
