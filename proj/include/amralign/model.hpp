#ifndef AMRALIGN_MODEL_HPP
#define AMRALIGN_MODEL_HPP

#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "amralign/features.hpp"
#include "amralign/ibm1.hpp"
#include "amralign/util.hpp"

namespace amralign {

// A trained alignment model: perceptron weights (raw and averaged), the
// optional translation tables its features consult, and descriptive metadata.
struct AlignModel {
  FeatureVector weights;
  FeatureVector averaged;
  TranslationTable table_src_tgt;
  TranslationTable table_tgt_src;
  bool has_tables = false;
  bool use_averaged = true;
  std::map<std::string, std::string> meta;

  // Raw weights stand in when no averaged vector has been stored yet.
  const FeatureVector& decode_weights() const {
    return use_averaged && !averaged.empty() ? averaged : weights;
  }
};

inline void save_model(std::ostream& os, const AlignModel& model) {
  os << "#amralign-model\tv1\n";
  os << "#meta\n";
  for (const auto& [k, v] : model.meta) os << k << '\t' << v << '\n';
  os << "#weights-averaged\n";
  for (const auto& [k, v] : model.averaged) os << k << '\t' << format_double(v) << '\n';
  os << "#weights-raw\n";
  for (const auto& [k, v] : model.weights) os << k << '\t' << format_double(v) << '\n';
  if (model.has_tables) {
    os << "#ttable-src-tgt\n";
    write_ttable(os, model.table_src_tgt);
    os << "#ttable-tgt-src\n";
    write_ttable(os, model.table_tgt_src);
  }
  os << "#end\n";
}

inline AlignModel load_model(std::istream& is) {
  AlignModel model;
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line) || line.rfind("#amralign-model", 0) != 0)
    throw ParseError("not a model file", 1, 1);
  ++lineno;
  std::string section;
  bool ended = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      section = line.substr(1);
      if (section == "end") {
        ended = true;
        break;
      }
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected key<TAB>value", lineno, 1);
    std::string key = line.substr(0, tab);
    std::string rest = line.substr(tab + 1);
    if (section == "meta") {
      model.meta[key] = rest;
    } else if (section == "weights-averaged" || section == "weights-raw") {
      double v = 0.0;
      try {
        v = std::stod(rest);
      } catch (const std::exception&) {
        throw ParseError("bad weight '" + rest + "'", lineno, 1);
      }
      if (section == "weights-averaged")
        model.averaged[key] = v;
      else
        model.weights[key] = v;
    } else if (section == "ttable-src-tgt" || section == "ttable-tgt-src") {
      std::size_t tab2 = rest.find('\t');
      if (tab2 == std::string::npos) throw ParseError("expected source<TAB>target<TAB>prob", lineno, 1);
      double v = 0.0;
      try {
        v = std::stod(rest.substr(tab2 + 1));
      } catch (const std::exception&) {
        throw ParseError("bad probability", lineno, 1);
      }
      TranslationTable& t = section == "ttable-src-tgt" ? model.table_src_tgt : model.table_tgt_src;
      t.probs[{key, rest.substr(0, tab2)}] = v;
      model.has_tables = true;
    } else {
      throw ParseError("unknown model section '" + section + "'", lineno, 1);
    }
  }
  if (!ended) throw ParseError("truncated model file", lineno, 1);
  return model;
}

}  // namespace amralign

#endif  // AMRALIGN_MODEL_HPP
