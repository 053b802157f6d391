#include <doctest.h>

#include "pes_testing.hpp"
#include "pesgame/report.hpp"

using namespace pesgame;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << text);
  return ParseError({0, 0}, "");
}

}  // namespace

TEST_CASE("minimal documents") {
  const Pes par = parse_pes("pes PAR\nevent a : a\nevent b : b");
  CHECK(par.name() == "PAR");
  CHECK(par.size() == 2);
  CHECK(par.concurrent(0, 1));
  CHECK(par.termination().kind == TerminationPolicy::Kind::Maximal);

  const Pes t = parse_pes("pes T\nevent t : tau\nevent a : a\ncause t < a");
  CHECK(t.is_tau(0));
  CHECK_FALSE(t.is_tau(1));
  CHECK(t.leq(0, 1));
  CHECK(t.name() != testing::fixture("TAU").name());
  CHECK(relations_of(t) == relations_of(testing::fixture("TAU")));
}

TEST_CASE("conflict operators and comments") {
  const std::string text =
      "# a choice\n"
      "pes C   # trailing comment\n"
      "event a : a\n"
      "event b : b\n"
      "event c : c\n"
      "conflict a # b\n"
      "conflict a ♯ c\n"
      "  # indented comment\n"
      "\n"
      "terminating { {a} {b} {c} }\n";
  const Pes p = parse_pes(text);
  CHECK(p.in_conflict(0, 1));
  CHECK(p.in_conflict(0, 2));
  CHECK_FALSE(p.in_conflict(1, 2));
  CHECK(p.termination().kind == TerminationPolicy::Kind::Explicit);
  CHECK(p.termination().configurations.size() == 3);
  CHECK(parse_pes("pes N\nevent a : a\nterminating none\n").termination().kind == TerminationPolicy::Kind::None);
}

TEST_CASE("syntax errors carry positions") {
  ParseError e = parse_error("pes X\ncause a < b");
  CHECK(e.where().line == 2);
  CHECK(e.where().column == 7);
  CHECK(std::string(e.what()) == "line 2, column 7: undeclared event 'a'");

  e = parse_error("event a : a\n");
  CHECK(e.where().line == 1);
  CHECK(std::string(e.what()).find("expected 'pes <name>' header") != std::string::npos);

  CHECK(std::string(parse_error("").what()).find("missing 'pes <name>' header") != std::string::npos);
  CHECK(std::string(parse_error("pes X\nevent a : a\nevent a : b\n").what()).find("duplicate event") !=
        std::string::npos);
  CHECK(std::string(parse_error("pes X\nterminating none\nterminating maximal\n").what())
            .find("more than one terminating statement") != std::string::npos);
  CHECK(std::string(parse_error("pes X\nfoo a\n").what()).find("unknown statement") != std::string::npos);
  e = parse_error("pes X\nevent a a\n");
  CHECK(e.where().line == 2);
  CHECK(e.where().column == 9);
  CHECK(parse_error("pes X\nevent a : a\ncause a b\n").where().column == 9);
  CHECK(parse_error("pes X\nevent a% : a\n").where().column == 8);
}

TEST_CASE("semantic errors come from validation") {
  CHECK_THROWS_AS(parse_pes("pes X\nevent a : a\ncause a < a\n"), PesError);
  CHECK_THROWS_AS(parse_pes("pes X\nevent a : a\nevent b : b\ncause a < b\nconflict a # b\n"), PesError);
  CHECK_THROWS_AS(parse_pes("pes X\nevent a : a\nevent b : b\nterminating { {b,a} {q} }\n"), ParseError);
  std::string big = "pes B\n";
  for (int i = 0; i < 13; ++i) big += "event e" + std::to_string(i) + " : a\n";
  CHECK_THROWS_AS(parse_pes(big), CapExceeded);
}

TEST_CASE("print then parse is the identity") {
  for (const auto& name : testing::fixture_names()) {
    const Pes p = testing::fixture(name);
    CHECK(parse_pes(print_pes(p)) == p);
  }
  std::mt19937 rng(13);
  for (int round = 0; round < 200; ++round) {
    RawPes r = to_raw(testing::random_pes(rng, 6));
    switch (round % 3) {
      case 1: r.termination.kind = TerminationPolicy::Kind::None; break;
      case 2:
        r.termination.kind = TerminationPolicy::Kind::Explicit;
        r.termination.configurations = {{}};
        break;
      default: break;
    }
    const Pes p = validate_pes(r);
    const std::string text = print_pes(p);
    const Pes q = parse_pes(text);
    CHECK(q == p);
    CHECK(print_pes(q) == text);
  }
}

TEST_CASE("reports round-trip through JSON") {
  Report r;
  r.left = "PAR";
  r.right = "CH";
  r.kind = {Flavor::Hhp, Mode::Branching};
  r.engine = "both";
  r.equivalent = false;
  r.oracle = OracleSummary{false, 7};
  r.game = GameSummary{false, "Spoiler", 40, 61, 3};
  const nlohmann::json j = to_json(r);
  CHECK(j.at("format") == 1);
  CHECK(j.at("relation") == "hhp");
  CHECK(j.at("mode") == "branching");
  CHECK(j.at("verdict") == "inequivalent");
  CHECK(report_from_json(j) == r);
  CHECK(report_from_json(nlohmann::json::parse(j.dump())) == r);

  r.timing_ms = 1.5;
  r.witness = nlohmann::json{{"relation", nlohmann::json::array()}};
  CHECK(report_from_json(to_json(r)) == r);

  nlohmann::json broken = j;
  broken.erase("caps");
  CHECK_THROWS_AS(report_from_json(broken), std::invalid_argument);
  broken = j;
  broken["format"] = 2;
  CHECK_THROWS_AS(report_from_json(broken), std::invalid_argument);
}
