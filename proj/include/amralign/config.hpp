#ifndef AMRALIGN_CONFIG_HPP
#define AMRALIGN_CONFIG_HPP

#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amralign/util.hpp"

namespace amralign {

// Which tokens to drop before alignment. Matching is case insensitive; quote
// and sense stripping happen before concept patterns are applied.
struct FilterConfig {
  std::set<std::string> english_stoplist;   // lowercased word forms
  std::set<std::string> role_remove;        // lowercased, with leading ':'
  std::vector<std::string> concept_remove;  // exact names or '*suffix' patterns
  bool strip_quotes = true;
  bool strip_senses = true;

  static FilterConfig defaults() {
    FilterConfig cfg;
    cfg.english_stoplist = {"a", "an", "the", ".", ",", "!", "?", ";", "\""};
    cfg.role_remove = {":arg0", ":arg1", ":quant", ":unit", ":mode", ":polarity",
                       ":op1",  ":op2",  ":op3",   ":op4",  ":op5",
                       ":op6",  ":op7",  ":op8",   ":op9"};
    cfg.concept_remove = {"*-quantity", "amr-unknown"};
    return cfg;
  }

  // Keep everything; useful to tap off individual pipeline stages.
  static FilterConfig none() {
    FilterConfig cfg;
    cfg.strip_quotes = false;
    cfg.strip_senses = false;
    return cfg;
  }

  bool removes_role(const std::string& role) const { return role_remove.count(ascii_lower(role)) > 0; }

  bool removes_concept(const std::string& stripped_label) const {
    std::string low = ascii_lower(stripped_label);
    for (const std::string& pat : concept_remove) {
      if (!pat.empty() && pat[0] == '*') {
        std::string suffix = pat.substr(1);
        if (low.size() >= suffix.size() && low.compare(low.size() - suffix.size(), suffix.size(), suffix) == 0)
          return true;
      } else if (low == pat) {
        return true;
      }
    }
    return false;
  }

  bool removes_word(const std::string& word) const { return english_stoplist.count(ascii_lower(word)) > 0; }
};

// Maps role labels to constituent labels when an AMR graph is rendered as a
// tree. Unlisted roles get default_prefix + lowercased role without ':'.
struct LabelScheme {
  std::string root_label = "ROOT";
  std::string preterminal = "X";
  std::string default_prefix = "R";
  std::map<std::string, std::string> table;  // lowercased role -> label

  static LabelScheme defaults() {
    LabelScheme s;
    s.table = {{":quant", "Aquant"}, {":topic", "Ctopic"}};
    return s;
  }

  std::string label_for(const std::string& role) const {
    std::string low = ascii_lower(role);
    auto it = table.find(low);
    if (it != table.end()) return it->second;
    std::string name = low;
    if (!name.empty() && name[0] == ':') name.erase(0, 1);
    return default_prefix + name;
  }
};

struct FeatureConfig {
  std::set<std::string> templates;
  int distance_bins = 5;

  static FeatureConfig defaults() {
    FeatureConfig cfg;
    cfg.templates = {"lex", "same_stem", "tag_pair", "jsyn", "tprob_st", "tprob_ts",
                     "third", "dist", "null_tag", "span_null"};
    return cfg;
  }

  bool has(const std::string& name) const { return templates.count(name) > 0; }
};

struct DecodeConfig {
  enum class Constraint { Auto, On, Off };
  int beam = 128;
  int pair_window = 2;       // max index distance within a two-token leaf hypothesis
  int leaf_cap = 4000;       // cap on generated leaf hypotheses
  Constraint constraint = Constraint::Auto;
};

struct Settings {
  FilterConfig filter = FilterConfig::defaults();
  LabelScheme labels = LabelScheme::defaults();
  FeatureConfig features = FeatureConfig::defaults();
  DecodeConfig decode;
  int stem_len = 4;
  int gold_index_base = 0;
};

namespace detail {

inline bool parse_bool(const std::string& v, const std::string& key) {
  std::string low = ascii_lower(v);
  if (low == "true" || low == "yes" || low == "1" || low == "on") return true;
  if (low == "false" || low == "no" || low == "0" || low == "off") return false;
  throw DataError("bad boolean value '" + v + "' for " + key);
}

inline int parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    int out = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw DataError("bad integer value '" + v + "' for " + key);
  }
}

}  // namespace detail

// Plain text settings: [section] headers, "key = value" pairs, and bare lines
// that add items to list sections. '#' starts a comment. Naming a list
// section resets its compiled-in default before items are added.
inline Settings load_settings(std::istream& is) {
  Settings s;
  std::string section;
  std::string line;
  int lineno = 0;
  std::set<std::string> reset_sections;

  auto ensure_reset = [&](const std::string& sec) {
    if (reset_sections.insert(sec).second) {
      if (sec == "english_stoplist") s.filter.english_stoplist.clear();
      if (sec == "amr_role_remove") s.filter.role_remove.clear();
      if (sec == "amr_concept_remove") s.filter.concept_remove.clear();
      if (sec == "label_scheme") s.labels.table.clear();
      if (sec == "features") s.features.templates.clear();
    }
  };

  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      ensure_reset(section);
      continue;
    }
    std::size_t eq = t.find('=');
    std::string key = eq == std::string::npos ? t : trim(t.substr(0, eq));
    std::string val = eq == std::string::npos ? std::string() : trim(t.substr(eq + 1));
    if (section == "general") {
      if (key == "stem_len")
        s.stem_len = detail::parse_int(val, key);
      else if (key == "gold_index_base")
        s.gold_index_base = detail::parse_int(val, key);
      else
        throw DataError("unknown setting '" + key + "' in [general] (line " + std::to_string(lineno) + ")");
    } else if (section == "filter") {
      if (key == "strip_quotes")
        s.filter.strip_quotes = detail::parse_bool(val, key);
      else if (key == "strip_senses")
        s.filter.strip_senses = detail::parse_bool(val, key);
      else
        throw DataError("unknown setting '" + key + "' in [filter] (line " + std::to_string(lineno) + ")");
    } else if (section == "english_stoplist") {
      s.filter.english_stoplist.insert(ascii_lower(key));
    } else if (section == "amr_role_remove") {
      s.filter.role_remove.insert(ascii_lower(key));
    } else if (section == "amr_concept_remove") {
      s.filter.concept_remove.push_back(ascii_lower(key));
    } else if (section == "label_scheme") {
      if (key == "root_label")
        s.labels.root_label = val;
      else if (key == "preterminal")
        s.labels.preterminal = val;
      else if (key == "default_prefix")
        s.labels.default_prefix = val;
      else if (!key.empty() && key[0] == ':')
        s.labels.table[ascii_lower(key)] = val;
      else
        throw DataError("unknown setting '" + key + "' in [label_scheme] (line " + std::to_string(lineno) + ")");
    } else if (section == "features") {
      if (key == "distance_bins")
        s.features.distance_bins = detail::parse_int(val, key);
      else
        s.features.templates.insert(ascii_lower(key));
    } else if (section == "decode") {
      if (key == "beam")
        s.decode.beam = detail::parse_int(val, key);
      else if (key == "pair_window")
        s.decode.pair_window = detail::parse_int(val, key);
      else if (key == "leaf_cap")
        s.decode.leaf_cap = detail::parse_int(val, key);
      else if (key == "constraint") {
        std::string low = ascii_lower(val);
        if (low == "auto")
          s.decode.constraint = DecodeConfig::Constraint::Auto;
        else if (low == "on")
          s.decode.constraint = DecodeConfig::Constraint::On;
        else if (low == "off")
          s.decode.constraint = DecodeConfig::Constraint::Off;
        else
          throw DataError("bad constraint value '" + val + "'");
      } else
        throw DataError("unknown setting '" + key + "' in [decode] (line " + std::to_string(lineno) + ")");
    } else {
      throw DataError("unknown settings section '" + section + "' (line " + std::to_string(lineno) + ")");
    }
  }
  return s;
}

inline Settings load_settings(const std::string& text) {
  std::istringstream is(text);
  return load_settings(is);
}

}  // namespace amralign

#endif  // AMRALIGN_CONFIG_HPP
