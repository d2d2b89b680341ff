#ifndef AMRALIGN_AMR2TREE_HPP
#define AMRALIGN_AMR2TREE_HPP

#include <string>
#include <utility>
#include <vector>

#include "amralign/config.hpp"
#include "amralign/penman.hpp"
#include "amralign/preprocess.hpp"
#include "amralign/treebank.hpp"
#include "amralign/types.hpp"
#include "amralign/util.hpp"

namespace amralign {

// Renders an AMR graph as a constituency tree. Nodes with several parents
// keep only their first textual incoming edge, so the result is a tree.
// Each graph node becomes a preterminal over its concept leaf; each kept edge
// becomes an internal node labeled by the scheme, dominating the child's
// subtree. The returned map sends leaf positions to element occurrences.
inline std::pair<ConstituencyTree, ProvenanceMap> amr_to_tree(const AmrGraph& g, const LabelScheme& scheme) {
  ConstituencyTree tree;
  ProvenanceMap prov;
  std::vector<int> kept_edge(g.nodes.size(), -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    int child = g.edges[e].child;
    if (child != g.root && kept_edge[child] < 0) kept_edge[child] = static_cast<int>(e);
  }

  std::vector<std::vector<int>> kept_children(g.nodes.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (kept_edge[g.edges[e].child] == static_cast<int>(e)) kept_children[g.edges[e].parent].push_back(static_cast<int>(e));

  auto alloc = [&](TreeNode n) {
    tree.nodes.push_back(std::move(n));
    return static_cast<int>(tree.nodes.size() - 1);
  };

  // Emits the preterminal for a node followed by one internal node per kept
  // outgoing edge, appending the new ids to `out`.
  auto emit = [&](auto&& self, int node, std::vector<int>& out) -> void {
    TreeNode pre;
    pre.label = scheme.preterminal;
    int pre_id = alloc(std::move(pre));
    TreeNode leaf;
    leaf.label = g.node_surface(node);
    leaf.token = leaf.label;
    leaf.element = concept_ref(node);
    int leaf_id = alloc(std::move(leaf));
    tree.nodes[pre_id].children.push_back(leaf_id);
    prov.entries.emplace_back(AmrTokenRef{concept_ref(node), 0});
    out.push_back(pre_id);
    for (int e : kept_children[node]) {
      TreeNode role;
      role.label = scheme.label_for(g.edges[e].role);
      role.element = role_ref(e);
      role.role = g.edges[e].role;
      int role_id = alloc(std::move(role));
      std::vector<int> inner;
      self(self, g.edges[e].child, inner);
      tree.nodes[role_id].children = std::move(inner);
      out.push_back(role_id);
    }
  };

  TreeNode root;
  root.label = scheme.root_label;
  int root_id = alloc(std::move(root));
  std::vector<int> top;
  emit(emit, g.root, top);
  tree.nodes[root_id].children = std::move(top);
  tree.root = root_id;
  if (prov.size() != g.nodes.size())
    throw DataError("graph has nodes unreachable from the root under kept edges");
  return {std::move(tree), std::move(prov)};
}

// Applies the token filter to a converted tree: removed role nodes are
// spliced out (their children move up), removed concepts drop their
// preterminal, and remaining concept leaves are lowercased and truncated to
// stem_len code points. Role nodes left without children are dropped so the
// tree stays well formed.
inline std::pair<ConstituencyTree, ProvenanceMap> preprocess_amr_tree(const ConstituencyTree& tree,
                                                                      const FilterConfig& cfg, int stem_len) {
  ConstituencyTree out;
  ProvenanceMap prov;

  auto alloc = [&](TreeNode n) {
    out.nodes.push_back(std::move(n));
    return static_cast<int>(out.nodes.size() - 1);
  };

  // Returns the replacement node ids for one input node (none if filtered,
  // several when a removed role node is spliced).
  auto walk = [&](auto&& self, int id) -> std::vector<int> {
    const TreeNode& n = tree.nodes[id];
    if (n.is_leaf()) {
      std::string s = n.token;
      if (cfg.strip_quotes) s = strip_quotes(s);
      if (cfg.strip_senses) s = strip_sense(s);
      if (cfg.removes_concept(s)) return {};
      TreeNode leaf = n;
      leaf.token = utf8_truncate(ascii_lower(s), static_cast<std::size_t>(stem_len));
      leaf.label = leaf.token;
      return {alloc(std::move(leaf))};
    }
    std::vector<int> kept;
    for (int c : n.children) {
      std::vector<int> r = self(self, c);
      kept.insert(kept.end(), r.begin(), r.end());
    }
    bool removed_role = !n.role.empty() && cfg.removes_role(n.role);
    if (removed_role) return kept;
    if (kept.empty()) return {};
    TreeNode copy;
    copy.label = n.label;
    copy.element = n.element;
    copy.role = n.role;
    copy.children = std::move(kept);
    return {alloc(std::move(copy))};
  };

  std::vector<int> top = walk(walk, tree.root);
  if (top.empty()) throw DataError("sentence fully filtered");
  // The root survives unless everything under it vanished, in which case the
  // error above fires; `top` is the processed root node.
  out.root = top[0];
  for (int id : out.leaves()) prov.entries.emplace_back(AmrTokenRef{*out.nodes[id].element, 0});
  return {std::move(out), std::move(prov)};
}

}  // namespace amralign

#endif  // AMRALIGN_AMR2TREE_HPP
