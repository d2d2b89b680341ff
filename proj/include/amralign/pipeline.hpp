#ifndef AMRALIGN_PIPELINE_HPP
#define AMRALIGN_PIPELINE_HPP

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amralign/alignment.hpp"
#include "amralign/amr2tree.hpp"
#include "amralign/config.hpp"
#include "amralign/features.hpp"
#include "amralign/ibm1.hpp"
#include "amralign/metrics.hpp"
#include "amralign/penman.hpp"
#include "amralign/preprocess.hpp"
#include "amralign/treebank.hpp"
#include "amralign/types.hpp"
#include "amralign/util.hpp"

namespace amralign {

// Which side supplies the alignment grid rows and which the target tree.
enum class SyntaxConfig { AmrStringEnTree, AmrTreeEnTree, EnTreeAmrTree };

inline SyntaxConfig parse_syntax_config(const std::string& name) {
  std::string low = ascii_lower(name);
  if (low == "amr-string-en-tree") return SyntaxConfig::AmrStringEnTree;
  if (low == "amr-tree-en-tree") return SyntaxConfig::AmrTreeEnTree;
  if (low == "en-tree-amr-tree") return SyntaxConfig::EnTreeAmrTree;
  throw DataError("unknown configuration '" + name + "' (expected amr-string-en-tree, amr-tree-en-tree or en-tree-amr-tree)");
}

inline const char* syntax_config_name(SyntaxConfig c) {
  switch (c) {
    case SyntaxConfig::AmrStringEnTree: return "amr-string-en-tree";
    case SyntaxConfig::AmrTreeEnTree: return "amr-tree-en-tree";
    default: return "en-tree-amr-tree";
  }
}

struct SentencePair {
  AmrGraph graph;
  std::vector<std::string> english;
  ConstituencyTree en_tree;
  bool has_tree = false;
};

// Reads AMR blocks and optionally a parallel file of English trees. English
// tokens come from the ::tok line, falling back to the tree leaves. When both
// are present they must agree.
inline std::vector<SentencePair> load_corpus(std::istream& amr_is, std::istream* trees_is) {
  std::vector<AmrGraph> graphs = read_amr_file(amr_is);
  std::vector<ConstituencyTree> trees;
  if (trees_is) {
    trees = read_tree_file(*trees_is);
    if (trees.size() != graphs.size())
      throw DataError("AMR and tree files differ in length: " + std::to_string(graphs.size()) + " vs " +
                      std::to_string(trees.size()));
  }
  std::vector<SentencePair> out;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    SentencePair pair;
    pair.graph = std::move(graphs[i]);
    std::optional<std::vector<std::string>> tok = pair.graph.tok_tokens();
    if (trees_is) {
      pair.en_tree = std::move(trees[i]);
      pair.has_tree = true;
      std::vector<std::string> leaves = pair.en_tree.leaf_tokens();
      if (tok && *tok != leaves)
        throw DataError("sentence " + std::to_string(i) + ": ::tok line and tree leaves disagree");
      pair.english = tok ? std::move(*tok) : std::move(leaves);
    } else {
      if (!tok) throw DataError("sentence " + std::to_string(i) + ": no ::tok line and no tree to take tokens from");
      pair.english = std::move(*tok);
    }
    out.push_back(std::move(pair));
  }
  return out;
}

// All per-pair preprocessing artifacts, computed once.
struct PreparedPair {
  TokenStream amr_linear;   // full linearization
  TokenStream amr_fn;       // filtered + normalized AMR stream
  ProvenanceMap amr_fn_prov;
  TokenStream en_fn;        // filtered + normalized English stream
  ProvenanceMap en_fn_prov;
  ConstituencyTree amr_tree;        // converted, unfiltered
  ConstituencyTree amr_tree_f;      // converted, filtered
  ProvenanceMap amr_tree_prov;      // leaf -> element occurrence
  ConstituencyTree en_tree_f;       // filtered English tree, when a tree exists
  ProvenanceMap en_tree_prov;       // leaf -> original position
  bool has_tree = false;
  int en_size = 0;
};

inline PreparedPair prepare_pair(const SentencePair& pair, const Settings& s) {
  PreparedPair out;
  out.en_size = static_cast<int>(pair.english.size());
  out.amr_linear = linearize(pair.graph);
  auto [amr_f, amr_prov] = filter_tokens(out.amr_linear, s.filter);
  out.amr_fn = normalize(amr_f, s.stem_len);
  out.amr_fn_prov = std::move(amr_prov);
  auto [en_f, en_prov] = filter_tokens(english_stream(pair.english), s.filter);
  out.en_fn = normalize(en_f, s.stem_len);
  out.en_fn_prov = std::move(en_prov);
  auto [atree, atree_prov] = amr_to_tree(pair.graph, s.labels);
  out.amr_tree = std::move(atree);
  (void)atree_prov;
  auto [atree_f, atree_f_prov] = preprocess_amr_tree(out.amr_tree, s.filter, s.stem_len);
  out.amr_tree_f = std::move(atree_f);
  out.amr_tree_prov = std::move(atree_f_prov);
  if (pair.has_tree) {
    out.has_tree = true;
    auto [etree, etree_prov] = preprocess_tree(pair.en_tree, s.filter.english_stoplist, s.stem_len);
    out.en_tree_f = std::move(etree);
    out.en_tree_prov = std::move(etree_prov);
  }
  return out;
}

// An instance ready for decoding plus the provenance of its rows and columns,
// which carries predictions back to canonical indices (full linearization
// positions against original English positions).
struct BuiltInstance {
  AlignmentInstance inst;
  std::vector<Provenance> row_prov;
  std::vector<Provenance> col_prov;
  bool amr_is_source = true;
};

namespace detail {

// Tag of each leaf in a converted AMR tree: the label of the nearest ancestor
// role node (the root label when there is none), with the next one up as the
// enclosing phrase.
struct AmrLeafContext {
  std::string tag;
  std::string phrase;
};

inline std::map<int, AmrLeafContext> amr_leaf_contexts(const ConstituencyTree& tree, const std::string& root_label) {
  std::map<int, AmrLeafContext> out;
  std::vector<std::string> stack;  // role labels from the root down
  auto walk = [&](auto&& self, int id) -> void {
    const TreeNode& n = tree.nodes[id];
    if (n.is_leaf()) {
      AmrLeafContext ctx;
      ctx.tag = stack.empty() ? root_label : stack.back();
      ctx.phrase = stack.size() < 2 ? root_label : stack[stack.size() - 2];
      out[id] = ctx;
      return;
    }
    bool is_role = n.element && n.element->kind == ElementRef::Kind::Role;
    if (is_role) stack.push_back(n.label);
    for (int c : n.children) self(self, c);
    if (is_role) stack.pop_back();
  };
  if (!tree.empty()) walk(walk, tree.root);
  return out;
}

// Label of the lowest non-preterminal ancestor of every leaf.
inline std::map<int, std::string> phrase_labels(const ConstituencyTree& tree) {
  std::map<int, std::string> out;
  auto walk = [&](auto&& self, int id, const std::string& phrase) -> void {
    const TreeNode& n = tree.nodes[id];
    if (n.is_leaf()) {
      out[id] = phrase;
      return;
    }
    bool pre = tree.is_preterminal(id);
    for (int c : n.children) self(self, c, pre ? phrase : n.label);
  };
  if (!tree.empty()) walk(walk, tree.root, tree.nodes[tree.root].label);
  return out;
}

// Tag of every role edge in a filtered converted tree; edges whose node was
// dropped fall back to the scheme label of the role itself.
inline std::map<int, std::string> role_tags(const ConstituencyTree& tree) {
  std::map<int, std::string> out;
  for (const TreeNode& n : tree.nodes)
    if (n.element && n.element->kind == ElementRef::Kind::Role) out[n.element->id] = n.label;
  return out;
}

}  // namespace detail

inline AlignmentSet canonical_to_instance_links(const BuiltInstance& built, const PreparedPair& prep,
                                                const AlignmentSet& canonical);

inline BuiltInstance build_instance(const SentencePair& pair, const PreparedPair& prep, SyntaxConfig config,
                                    const Settings& s, const TranslationTable* amr_en,
                                    const TranslationTable* en_amr,
                                    const AlignmentSet* third_canonical = nullptr) {
  BuiltInstance out;
  out.amr_is_source = config != SyntaxConfig::EnTreeAmrTree;

  if (config != SyntaxConfig::EnTreeAmrTree) {
    if (!prep.has_tree) throw DataError("configuration requires English trees");
    // Rows: the filtered AMR token stream.
    std::map<int, std::string> role_tag;
    std::map<AmrTokenRef, std::string> concept_tag;
    if (config == SyntaxConfig::AmrTreeEnTree) {
      role_tag = detail::role_tags(prep.amr_tree_f);
      std::map<int, detail::AmrLeafContext> ctx = detail::amr_leaf_contexts(prep.amr_tree_f, s.labels.root_label);
      std::vector<int> leaves = prep.amr_tree_f.leaves();
      for (std::size_t c = 0; c < leaves.size(); ++c)
        concept_tag[std::get<AmrTokenRef>(prep.amr_tree_prov[c])] = ctx[leaves[c]].tag;
    }
    for (std::size_t i = 0; i < prep.amr_fn.tokens.size(); ++i) {
      const Token& t = prep.amr_fn.tokens[i];
      SourceInfo si;
      si.surface = t.surface;
      si.kind = t.kind;
      if (t.kind == TokenKind::Role) {
        if (config == SyntaxConfig::AmrTreeEnTree) {
          auto it = role_tag.find(t.ref.element.id);
          si.tag = it != role_tag.end() ? it->second : s.labels.label_for(pair.graph.edges[t.ref.element.id].role);
        } else {
          si.tag = t.surface;
        }
      } else if (config == SyntaxConfig::AmrTreeEnTree) {
        auto it = concept_tag.find(t.ref);
        if (it != concept_tag.end()) si.tag = it->second;
      }
      out.inst.source.push_back(std::move(si));
      out.row_prov.emplace_back(t.ref);
    }
    // Columns: leaves of the filtered English tree, tagged by their parent
    // label (the part of speech for preterminal parents).
    out.inst.target = prep.en_tree_f;
    std::map<int, std::string> phrases = detail::phrase_labels(prep.en_tree_f);
    std::map<int, std::string> parent_label;
    for (const TreeNode& n : prep.en_tree_f.nodes)
      for (int c : n.children)
        if (prep.en_tree_f.nodes[c].is_leaf()) parent_label[c] = n.label;
    std::vector<int> leaves = prep.en_tree_f.leaves();
    for (std::size_t c = 0; c < leaves.size(); ++c) {
      const TreeNode& leaf = prep.en_tree_f.nodes[leaves[c]];
      TargetInfo ti;
      ti.surface = leaf.token;
      ti.tag = parent_label[leaves[c]];
      ti.phrase = phrases[leaves[c]];
      out.col_prov.emplace_back(std::get<int>(prep.en_tree_prov[c]));
      out.inst.target_leaves.push_back(std::move(ti));
    }
    out.inst.table_src_tgt = amr_en;
    out.inst.table_tgt_src = en_amr;
    out.inst.source_is_amr = true;
  } else {
    // Rows: leaves of the filtered English tree; columns: concept leaves of
    // the filtered converted AMR tree.
    if (!prep.has_tree) throw DataError("configuration requires English trees");
    std::vector<int> en_leaves = prep.en_tree_f.leaves();
    std::map<int, std::string> en_parent;
    for (const TreeNode& n : prep.en_tree_f.nodes)
      for (int c : n.children)
        if (prep.en_tree_f.nodes[c].is_leaf()) en_parent[c] = n.label;
    for (std::size_t i = 0; i < en_leaves.size(); ++i) {
      const TreeNode& leaf = prep.en_tree_f.nodes[en_leaves[i]];
      SourceInfo si;
      si.surface = leaf.token;
      si.kind = TokenKind::Word;
      si.tag = en_parent[en_leaves[i]];
      out.inst.source.push_back(std::move(si));
      out.row_prov.emplace_back(std::get<int>(prep.en_tree_prov[i]));
    }
    out.inst.target = prep.amr_tree_f;
    std::map<int, detail::AmrLeafContext> ctx = detail::amr_leaf_contexts(prep.amr_tree_f, s.labels.root_label);
    std::vector<int> leaves = prep.amr_tree_f.leaves();
    for (std::size_t c = 0; c < leaves.size(); ++c) {
      const TreeNode& leaf = prep.amr_tree_f.nodes[leaves[c]];
      TargetInfo ti;
      ti.surface = leaf.token;
      ti.tag = ctx[leaves[c]].tag;
      ti.phrase = ctx[leaves[c]].phrase;
      out.col_prov.emplace_back(prep.amr_tree_prov[c]);
      out.inst.target_leaves.push_back(std::move(ti));
    }
    out.inst.table_src_tgt = en_amr;
    out.inst.table_tgt_src = amr_en;
    out.inst.source_is_amr = false;
  }

  if (third_canonical) {
    AlignmentSet third = canonical_to_instance_links(out, prep, *third_canonical);
    out.inst.third_party = std::move(third);
  }
  return out;
}

// Converts canonical links (linearized AMR position, original English
// position) into instance grid coordinates. Links whose endpoints were
// filtered away are dropped.
inline AlignmentSet canonical_to_instance_links(const BuiltInstance& built, const PreparedPair& prep,
                                                const AlignmentSet& canonical) {
  std::map<AmrTokenRef, int> amr_side;
  std::map<int, int> en_side;
  const std::vector<Provenance>& amr_prov = built.amr_is_source ? built.row_prov : built.col_prov;
  const std::vector<Provenance>& en_prov = built.amr_is_source ? built.col_prov : built.row_prov;
  for (std::size_t i = 0; i < amr_prov.size(); ++i) amr_side[std::get<AmrTokenRef>(amr_prov[i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < en_prov.size(); ++i) en_side[std::get<int>(en_prov[i])] = static_cast<int>(i);

  AlignmentSet out;
  out.src_size = static_cast<int>(built.row_prov.size());
  out.tgt_size = static_cast<int>(built.col_prov.size());
  for (const Link& l : canonical.links) {
    if (l.src < 0 || static_cast<std::size_t>(l.src) >= prep.amr_linear.tokens.size())
      throw DataError("canonical link outside the linearized AMR");
    const AmrTokenRef& ref = prep.amr_linear.tokens[l.src].ref;
    auto ait = amr_side.find(ref);
    auto eit = en_side.find(l.tgt);
    if (ait == amr_side.end() || eit == en_side.end()) continue;
    if (built.amr_is_source)
      out.links.push_back(Link{ait->second, eit->second, l.type});
    else
      out.links.push_back(Link{eit->second, ait->second, l.type});
  }
  out.normalize();
  return out;
}

// Converts instance grid links back to canonical indices.
inline AlignmentSet instance_to_canonical_links(const BuiltInstance& built, const PreparedPair& prep,
                                                const AlignmentSet& links) {
  std::vector<RefLink> refs;
  for (const Link& l : links.links) {
    if (l.src < 0 || static_cast<std::size_t>(l.src) >= built.row_prov.size() || l.tgt < 0 ||
        static_cast<std::size_t>(l.tgt) >= built.col_prov.size())
      throw DataError("instance link outside the grid");
    const Provenance& rp = built.row_prov[l.src];
    const Provenance& cp = built.col_prov[l.tgt];
    const Provenance& ap = built.amr_is_source ? rp : cp;
    const Provenance& ep = built.amr_is_source ? cp : rp;
    const AmrTokenRef& ref = std::get<AmrTokenRef>(ap);
    LinkType type = ref.element.kind == ElementRef::Kind::Role ? LinkType::Role : LinkType::Concept;
    refs.push_back(RefLink{ref, std::get<int>(ep), type});
  }
  return to_canonical(refs, prep.amr_linear, prep.en_size);
}

// Gold links of a pair in canonical indices.
inline AlignmentSet pair_gold(const SentencePair& pair, const PreparedPair& prep, int gold_index_base) {
  return canonical_gold(pair.graph, prep.amr_linear, prep.en_size, gold_index_base);
}

// Re-types canonical links from the linearized AMR token kinds.
inline void retype_canonical(AlignmentSet& links, const TokenStream& amr_linear) {
  for (Link& l : links.links) {
    if (l.src < 0 || static_cast<std::size_t>(l.src) >= amr_linear.tokens.size())
      throw DataError("link outside the linearized AMR: " + std::to_string(l.src) + "-" + std::to_string(l.tgt));
    l.type = amr_linear.tokens[l.src].kind == TokenKind::Role ? LinkType::Role : LinkType::Concept;
  }
}

}  // namespace amralign

#endif  // AMRALIGN_PIPELINE_HPP
