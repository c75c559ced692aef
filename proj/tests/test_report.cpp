#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stv/audit.hpp"
#include "stv/blt.hpp"
#include "stv/report.hpp"
#include "stv/worst_case.hpp"

using stv::Election;
using stv::Rational;
using stv::TabulationRecord;

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "fixtures"
#endif

static std::string fixture(const char* name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

static std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

TEST_CASE("round table matches the frozen rendering") {
  const Election bute = stv::load_blt(fixture("bute2021_reduced.blt"));
  CHECK(stv::render_round_table(stv::tabulate(bute), 0) ==
        slurp(fixture("golden/bute2021_reduced_rounds.txt")));

  const Election p2 = stv::load_blt(fixture("p2.blt"));
  CHECK(stv::render_round_table(stv::tabulate(p2), 2) == slurp(fixture("golden/p2_rounds.txt")));
}

TEST_CASE("round table layout details") {
  const Election p2 = stv::load_blt(fixture("p2.blt"));
  const std::string table = stv::render_round_table(stv::tabulate(p2), 2);
  CHECK(table.substr(0, 11) == "Quota 3334\n");
  CHECK(table.find("3350*") != std::string::npos);   // seat marked in its round
  CHECK(table.find("3339.48*") != std::string::npos);
  CHECK(table.find("2250.48") != std::string::npos); // trailing digits kept
  CHECK(table.back() == '\n');
  // no trailing blanks on any line
  std::istringstream lines(table);
  std::string line;
  while (std::getline(lines, line)) {
    REQUIRE_FALSE(line.empty());
    CHECK(line.back() != ' ');
  }
  CHECK_THROWS_AS(stv::render_round_table(stv::tabulate(p2), 6), std::invalid_argument);
  CHECK_THROWS_AS(stv::render_round_table(stv::tabulate(p2), -1), std::invalid_argument);
}

TEST_CASE("record JSON matches the frozen file and round-trips") {
  const Election p2 = stv::load_blt(fixture("p2.blt"));
  const TabulationRecord r = stv::tabulate(p2);
  const std::string text = stv::record_to_json(r).dump(2) + "\n";
  CHECK(text == slurp(fixture("golden/p2_record.json")));

  const TabulationRecord back = stv::record_from_json(stv::Json::parse(text));
  CHECK(stv::record_to_json(back).dump(2) + "\n" == text);
  CHECK(back.quota == r.quota);
  CHECK(back.winners == r.winners);
  CHECK(back.ranking == r.ranking);
  CHECK(back.final_nontransferable == r.final_nontransferable);
  REQUIRE(back.rounds.size() == r.rounds.size());
  for (std::size_t i = 0; i < r.rounds.size(); ++i) {
    CHECK(back.rounds[i].totals == r.rounds[i].totals);
    CHECK(back.rounds[i].nontransferable == r.rounds[i].nontransferable);
  }
  REQUIRE(back.events.size() == r.events.size());
  for (std::size_t i = 0; i < r.events.size(); ++i) {
    CHECK(back.events[i].kind == r.events[i].kind);
    CHECK(back.events[i].candidate == r.events[i].candidate);
    CHECK(back.events[i].amount == r.events[i].amount);
    CHECK(back.events[i].recipients == r.events[i].recipients);
  }
}

TEST_CASE("paradox report JSON matches the frozen file and round-trips") {
  const Election p2 = stv::load_blt(fixture("p2.blt"));
  const auto rep = stv::verify_negative(p2, {0, 1, 3, 2}, 100);
  REQUIRE(rep.has_value());
  const std::string text = stv::write_report_json(*rep);
  CHECK(text == slurp(fixture("golden/p2_report.json")));

  const stv::ParadoxReport back = stv::report_from_json(stv::Json::parse(text));
  CHECK(back.kind == rep->kind);
  CHECK(back.added_ballot == rep->added_ballot);
  CHECK(back.count == rep->count);
  CHECK(back.promoted == rep->promoted);
  CHECK(back.displaced == rep->displaced);
  CHECK(stv::write_report_json(back) == text);
}

TEST_CASE("report JSON carries count ranges when present") {
  const Election p2 = stv::load_blt(fixture("p2.blt"));
  auto rep = stv::verify_negative(p2, {0, 1, 3, 2}, 100);
  REQUIRE(rep.has_value());
  rep->count_ranges = {{22, 3062}};
  const stv::Json j = stv::report_to_json(*rep);
  CHECK(j.at("count_range") == stv::Json::array({22, 3062}));
  const stv::ParadoxReport back = stv::report_from_json(j);
  REQUIRE(back.count_ranges.size() == 1);
  CHECK(back.count_ranges[0].lo == 22);
  CHECK(back.count_ranges[0].hi == 3062);

  rep->count_ranges = {{4, 10}, {20, 59}};
  const stv::Json j2 = stv::report_to_json(*rep);
  CHECK_FALSE(j2.contains("count_range"));
  const stv::ParadoxReport back2 = stv::report_from_json(j2);
  REQUIRE(back2.count_ranges.size() == 2);
  CHECK(back2.count_ranges[1].hi == 59);
}

TEST_CASE("certificate JSON round-trips") {
  const stv::ConstructionCertificate cert = stv::verify_construction(2);
  const std::string text = stv::write_report_json(cert);
  const stv::ConstructionCertificate back = stv::certificate_from_json(stv::Json::parse(text));
  CHECK(back.seats == cert.seats);
  CHECK(back.added_ballot == cert.added_ballot);
  CHECK(back.added_count == cert.added_count);
  CHECK(back.clause1_ok);
  CHECK(back.clause2_ok);
  CHECK(back.clause3_ok);
  CHECK(back.profile.piles() == cert.profile.piles());
  CHECK(back.profile.roster() == cert.profile.roster());
  CHECK(stv::write_report_json(back) == text);
}

TEST_CASE("schema and type are enforced on read") {
  stv::Json j;
  j["schema"] = "stv-report/0";
  j["type"] = "paradox";
  CHECK_THROWS_AS(stv::report_from_json(j), std::invalid_argument);
  j["schema"] = "stv-report/1";
  j["type"] = "construction_certificate";
  CHECK_THROWS_AS(stv::report_from_json(j), std::invalid_argument);
}

TEST_CASE("margin curve CSV") {
  const std::vector<std::pair<long long, Rational>> curve = {
      {0, Rational(-1296, 100)}, {22, Rational(1, 3)}};
  CHECK(stv::render_margin_csv(curve) ==
        "count,margin,approx\n0,-12.96,-12.96\n22,1/3,0.333\n");
}
