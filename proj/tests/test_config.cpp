#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "amralign/config.hpp"
#include "testutil.hpp"

using namespace amralign;

TEST_CASE("default filter lists") {
  FilterConfig cfg = FilterConfig::defaults();
  REQUIRE(cfg.removes_word("the"));
  REQUIRE(cfg.removes_word("The"));
  REQUIRE(cfg.removes_word("a"));
  REQUIRE_FALSE(cfg.removes_word("to"));
  REQUIRE(cfg.removes_role(":ARG0"));
  REQUIRE(cfg.removes_role(":quant"));
  REQUIRE(cfg.removes_role(":op3"));
  REQUIRE_FALSE(cfg.removes_role(":ARG2-of"));
  REQUIRE_FALSE(cfg.removes_role(":domain"));
  REQUIRE(cfg.removes_concept("monetary-quantity"));
  REQUIRE(cfg.removes_concept("volume-quantity"));
  REQUIRE(cfg.removes_concept("amr-unknown"));
  REQUIRE_FALSE(cfg.removes_concept("quantity-check"));
  REQUIRE_FALSE(cfg.removes_concept("go"));
}

TEST_CASE("label scheme table and fallback") {
  LabelScheme s = LabelScheme::defaults();
  REQUIRE(s.label_for(":quant") == "Aquant");
  REQUIRE(s.label_for(":topic") == "Ctopic");
  REQUIRE(s.label_for(":ARG0") == "Rarg0");
  REQUIRE(s.label_for(":ARG2-of") == "Rarg2-of");
  REQUIRE(s.label_for(":domain") == "Rdomain");
}

TEST_CASE("settings text round trip") {
  Settings s = load_settings(std::string(
      "# comment\n"
      "[general]\n"
      "stem_len = 3\n"
      "gold_index_base = 1\n"
      "[filter]\n"
      "strip_quotes = off\n"
      "[english_stoplist]\n"
      "le\n"
      "la\n"
      "[label_scheme]\n"
      ":mod = Amod\n"
      "default_prefix = Q\n"
      "[decode]\n"
      "beam = 16\n"
      "constraint = on\n"));
  REQUIRE(s.stem_len == 3);
  REQUIRE(s.gold_index_base == 1);
  REQUIRE_FALSE(s.filter.strip_quotes);
  REQUIRE(s.filter.strip_senses);
  // Naming [english_stoplist] replaced the default list.
  REQUIRE(s.filter.english_stoplist == std::set<std::string>{"le", "la"});
  REQUIRE_FALSE(s.filter.removes_word("the"));
  // Unnamed lists keep their defaults.
  REQUIRE(s.filter.removes_role(":quant"));
  REQUIRE(s.labels.label_for(":mod") == "Amod");
  REQUIRE(s.labels.label_for(":other") == "Qother");
  // [label_scheme] resets the table, so defaults are gone.
  REQUIRE(s.labels.label_for(":quant") == "Qquant");
  REQUIRE(s.decode.beam == 16);
  REQUIRE(s.decode.constraint == DecodeConfig::Constraint::On);
  REQUIRE(s.decode.pair_window == 2);
}

TEST_CASE("feature list replacement") {
  Settings s = load_settings(std::string("[features]\nlex\nsame_stem\ndistance_bins = 3\n"));
  REQUIRE(s.features.templates == std::set<std::string>{"lex", "same_stem"});
  REQUIRE(s.features.distance_bins == 3);
  REQUIRE_FALSE(s.features.has("tprob_st"));
}

TEST_CASE("bad settings are rejected") {
  REQUIRE_THROWS_AS(load_settings(std::string("[general]\nbeam = 4\n")), DataError);
  REQUIRE_THROWS_AS(load_settings(std::string("[nowhere]\nx = 1\n")), DataError);
  REQUIRE_THROWS_AS(load_settings(std::string("[general]\nstem_len = four\n")), DataError);
  REQUIRE_THROWS_AS(load_settings(std::string("[filter]\nstrip_quotes = maybe\n")), DataError);
  REQUIRE_THROWS_AS(load_settings(std::string("[decode]\nconstraint = sometimes\n")), DataError);
}

TEST_CASE("empty settings equal compiled defaults") {
  Settings s = load_settings(std::string(""));
  Settings d;
  REQUIRE(s.stem_len == d.stem_len);
  REQUIRE(s.filter.english_stoplist == d.filter.english_stoplist);
  REQUIRE(s.filter.role_remove == d.filter.role_remove);
  REQUIRE(s.filter.concept_remove == d.filter.concept_remove);
  REQUIRE(s.features.templates == d.features.templates);
  REQUIRE(s.decode.beam == d.decode.beam);
}

TEST_CASE("shipped settings file matches compiled defaults") {
  std::ifstream in(testutil::fixture_path("../default.cfg"));
  REQUIRE(in.good());
  Settings s = load_settings(in);
  Settings d;
  REQUIRE(s.stem_len == d.stem_len);
  REQUIRE(s.gold_index_base == d.gold_index_base);
  REQUIRE(s.filter.english_stoplist == d.filter.english_stoplist);
  REQUIRE(s.filter.role_remove == d.filter.role_remove);
  REQUIRE(s.filter.concept_remove == d.filter.concept_remove);
  REQUIRE(s.filter.strip_quotes == d.filter.strip_quotes);
  REQUIRE(s.labels.table == d.labels.table);
  REQUIRE(s.features.templates == d.features.templates);
  REQUIRE(s.features.distance_bins == d.features.distance_bins);
  REQUIRE(s.decode.beam == d.decode.beam);
  REQUIRE(s.decode.pair_window == d.decode.pair_window);
}
