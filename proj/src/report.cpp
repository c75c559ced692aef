#include "stv/report.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace stv {

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string arithmetic_name(Arithmetic a) {
  return a == Arithmetic::Exact ? "exact" : "fixed5";
}

Arithmetic arithmetic_from(const std::string& s) {
  if (s == "exact") return Arithmetic::Exact;
  if (s == "fixed5") return Arithmetic::Fixed5;
  throw std::invalid_argument("unknown arithmetic \"" + s + "\"");
}

std::string status_name(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::Standing:
      return "standing";
    case CandidateStatus::Elected:
      return "elected";
    case CandidateStatus::ElectedWithoutQuota:
      return "elected_without_quota";
    case CandidateStatus::Eliminated:
      return "eliminated";
  }
  throw std::logic_error("unhandled candidate status");
}

CandidateStatus status_from(const std::string& s) {
  if (s == "standing") return CandidateStatus::Standing;
  if (s == "elected") return CandidateStatus::Elected;
  if (s == "elected_without_quota") return CandidateStatus::ElectedWithoutQuota;
  if (s == "eliminated") return CandidateStatus::Eliminated;
  throw std::invalid_argument("unknown candidate status \"" + s + "\"");
}

std::string event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Elected:
      return "elected";
    case EventKind::ElectedWithoutQuota:
      return "elected_without_quota";
    case EventKind::SurplusTransferred:
      return "surplus_transferred";
    case EventKind::Eliminated:
      return "eliminated";
    case EventKind::ExhaustedToNontransferable:
      return "exhausted";
  }
  throw std::logic_error("unhandled event kind");
}

EventKind event_kind_from(const std::string& s) {
  if (s == "elected") return EventKind::Elected;
  if (s == "elected_without_quota") return EventKind::ElectedWithoutQuota;
  if (s == "surplus_transferred") return EventKind::SurplusTransferred;
  if (s == "eliminated") return EventKind::Eliminated;
  if (s == "exhausted") return EventKind::ExhaustedToNontransferable;
  throw std::invalid_argument("unknown event kind \"" + s + "\"");
}

std::string paradox_kind_name(ParadoxKind k) {
  switch (k) {
    case ParadoxKind::NegativeInvolvement:
      return "negative";
    case ParadoxKind::PositiveInvolvement:
      return "positive";
    case ParadoxKind::Both:
      return "both";
  }
  throw std::logic_error("unhandled paradox kind");
}

ParadoxKind paradox_kind_from(const std::string& s) {
  if (s == "negative") return ParadoxKind::NegativeInvolvement;
  if (s == "positive") return ParadoxKind::PositiveInvolvement;
  if (s == "both") return ParadoxKind::Both;
  throw std::invalid_argument("unknown paradox kind \"" + s + "\"");
}

const std::string& name_of(const std::vector<Candidate>& roster, int c) {
  if (c < 0 || c >= static_cast<int>(roster.size()))
    throw std::out_of_range("candidate index out of range");
  return roster[static_cast<std::size_t>(c)].name;
}

int index_of(const std::vector<Candidate>& roster, const std::string& name) {
  for (std::size_t i = 0; i < roster.size(); ++i) {
    if (roster[i].name == name) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown candidate \"" + name + "\"");
}

Json names_json(const std::vector<Candidate>& roster, const std::vector<int>& ids) {
  Json arr = Json::array();
  for (int c : ids) arr.push_back(name_of(roster, c));
  return arr;
}

std::vector<int> ids_from(const std::vector<Candidate>& roster, const Json& arr) {
  std::vector<int> out;
  for (const auto& name : arr) out.push_back(index_of(roster, name.get<std::string>()));
  return out;
}

Json roster_to_json(const std::vector<Candidate>& roster) {
  Json arr = Json::array();
  for (const auto& c : roster) arr.push_back(Json{{"name", c.name}, {"party", c.party}});
  return arr;
}

std::vector<Candidate> roster_from_json(const Json& arr) {
  std::vector<Candidate> roster;
  for (const auto& j : arr)
    roster.push_back({j.at("name").get<std::string>(), j.at("party").get<std::string>()});
  return roster;
}

Json event_to_json(const std::vector<Candidate>& roster, const RoundEvent& e) {
  Json j;
  j["kind"] = event_kind_name(e.kind);
  j["candidate"] = name_of(roster, e.candidate);
  j["round"] = e.round;
  j["amount"] = encode_value(e.amount);
  if (e.kind == EventKind::SurplusTransferred) j["transfer_value"] = encode_value(e.transfer_value);
  if (e.kind == EventKind::SurplusTransferred || e.kind == EventKind::Eliminated) {
    Json rec = Json::array();
    for (const auto& [c, v] : e.recipients)
      rec.push_back(Json::array({name_of(roster, c), encode_value(v)}));
    j["recipients"] = std::move(rec);
    j["to_nontransferable"] = encode_value(e.to_nontransferable);
  }
  j["by_lot"] = e.by_lot;
  return j;
}

RoundEvent event_from_json(const std::vector<Candidate>& roster, const Json& j) {
  RoundEvent e;
  e.kind = event_kind_from(j.at("kind").get<std::string>());
  e.candidate = index_of(roster, j.at("candidate").get<std::string>());
  e.round = j.at("round").get<int>();
  e.amount = decode_value(j.at("amount").get<std::string>());
  if (j.contains("transfer_value"))
    e.transfer_value = decode_value(j.at("transfer_value").get<std::string>());
  if (j.contains("recipients")) {
    for (const auto& pair : j.at("recipients"))
      e.recipients.emplace_back(index_of(roster, pair.at(0).get<std::string>()),
                                decode_value(pair.at(1).get<std::string>()));
    e.to_nontransferable = decode_value(j.at("to_nontransferable").get<std::string>());
  }
  e.by_lot = j.at("by_lot").get<bool>();
  return e;
}

Json profile_to_json(const Profile& profile) {
  Json j;
  j["roster"] = roster_to_json(profile.roster());
  Json piles = Json::array();
  for (const auto& [ranking, count] : profile.piles())
    piles.push_back(Json{{"ranking", names_json(profile.roster(), ranking)}, {"count", count}});
  j["ballots"] = std::move(piles);
  if (profile.blank_ballots() > 0) j["blank_ballots"] = profile.blank_ballots();
  if (profile.declared_total()) j["declared_total"] = *profile.declared_total();
  return j;
}

Profile profile_from_json(const Json& j) {
  Profile profile(roster_from_json(j.at("roster")));
  for (const auto& pile : j.at("ballots"))
    profile.add_ballots(ids_from(profile.roster(), pile.at("ranking")),
                        pile.at("count").get<long long>());
  if (j.contains("blank_ballots")) profile.add_ballots({}, j.at("blank_ballots").get<long long>());
  if (j.contains("declared_total")) profile.set_declared_total(j.at("declared_total").get<long long>());
  return profile;
}

void require_schema(const Json& j, const std::string& type) {
  if (j.value("schema", "") != kReportSchema)
    throw std::invalid_argument("unsupported report schema");
  if (j.value("type", "") != type)
    throw std::invalid_argument("expected a \"" + type + "\" document");
}

}  // namespace

std::string render_round_table(const TabulationRecord& record, int decimals) {
  if (decimals < 0 || decimals > 5)
    throw std::invalid_argument("decimals must be between 0 and 5");

  const int n = static_cast<int>(record.roster.size());
  const int rounds = static_cast<int>(record.rounds.size());

  std::vector<int> elected_round(static_cast<std::size_t>(n), 0);
  for (const auto& e : record.events) {
    if (e.kind == EventKind::Elected || e.kind == EventKind::ElectedWithoutQuota)
      elected_round[static_cast<std::size_t>(e.candidate)] = e.round;
  }

  std::vector<std::vector<std::string>> cells(
      static_cast<std::size_t>(n), std::vector<std::string>(static_cast<std::size_t>(rounds)));
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < rounds; ++r) {
      const auto& total = record.rounds[static_cast<std::size_t>(r)].totals[static_cast<std::size_t>(c)];
      std::string cell = total ? to_decimal_trimmed(*total, decimals) : "-";
      if (total && elected_round[static_cast<std::size_t>(c)] == r + 1) cell += '*';
      cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = std::move(cell);
    }
  }

  std::size_t name_width = std::string("Candidate").size();
  for (const auto& c : record.roster) name_width = std::max(name_width, c.name.size());

  std::vector<std::size_t> col_width(static_cast<std::size_t>(rounds));
  for (int r = 0; r < rounds; ++r) {
    std::size_t w = std::to_string(r + 1).size();
    for (int c = 0; c < n; ++c)
      w = std::max(w, cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)].size());
    col_width[static_cast<std::size_t>(r)] = w;
  }

  std::string out = "Quota " + std::to_string(record.quota) + "\n";
  out += pad_right("Candidate", name_width);
  for (int r = 0; r < rounds; ++r)
    out += "  " + pad_left(std::to_string(r + 1), col_width[static_cast<std::size_t>(r)]);
  out += '\n';
  for (int c = 0; c < n; ++c) {
    out += pad_right(record.roster[static_cast<std::size_t>(c)].name, name_width);
    for (int r = 0; r < rounds; ++r)
      out += "  " + pad_left(cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)],
                             col_width[static_cast<std::size_t>(r)]);
    out += '\n';
  }
  return out;
}

std::string render_margin_csv(const std::vector<std::pair<long long, Rational>>& curve) {
  // margin is loss-free; approx is a plain decimal for plotting tools
  std::string out = "count,margin,approx\n";
  for (const auto& [count, margin] : curve) {
    out += std::to_string(count) + "," + encode_value(margin) + "," +
           to_decimal_trimmed(margin, 3) + "\n";
  }
  return out;
}

Json record_to_json(const TabulationRecord& r) {
  Json j;
  j["title"] = r.title;
  j["seats"] = r.seats;
  j["total_voters"] = r.total_voters;
  j["quota_basis"] = r.quota_basis;
  j["quota"] = r.quota;
  j["arithmetic"] = arithmetic_name(r.arithmetic);
  j["tie_seed"] = r.tie_seed;
  j["roster"] = roster_to_json(r.roster);
  j["winners"] = names_json(r.roster, r.winners);
  j["ranking"] = names_json(r.roster, r.ranking);
  Json statuses = Json::array();
  for (CandidateStatus s : r.statuses) statuses.push_back(status_name(s));
  j["statuses"] = std::move(statuses);
  Json finals = Json::array();
  for (const auto& v : r.final_totals) finals.push_back(encode_value(v));
  j["final_totals"] = std::move(finals);
  j["final_nontransferable"] = encode_value(r.final_nontransferable);
  Json rounds = Json::array();
  for (const auto& snap : r.rounds) {
    Json totals = Json::array();
    for (const auto& t : snap.totals) {
      if (t)
        totals.push_back(encode_value(*t));
      else
        totals.push_back(nullptr);
    }
    rounds.push_back(
        Json{{"totals", std::move(totals)}, {"nontransferable", encode_value(snap.nontransferable)}});
  }
  j["rounds"] = std::move(rounds);
  Json events = Json::array();
  for (const auto& e : r.events) events.push_back(event_to_json(r.roster, e));
  j["events"] = std::move(events);
  j["round_table"] = render_round_table(r, 2);
  return j;
}

TabulationRecord record_from_json(const Json& j) {
  TabulationRecord r;
  r.title = j.at("title").get<std::string>();
  r.seats = j.at("seats").get<int>();
  r.total_voters = j.at("total_voters").get<long long>();
  r.quota_basis = j.at("quota_basis").get<long long>();
  r.quota = j.at("quota").get<long long>();
  r.arithmetic = arithmetic_from(j.at("arithmetic").get<std::string>());
  r.tie_seed = j.at("tie_seed").get<std::uint64_t>();
  r.roster = roster_from_json(j.at("roster"));
  r.winners = ids_from(r.roster, j.at("winners"));
  r.ranking = ids_from(r.roster, j.at("ranking"));
  for (const auto& s : j.at("statuses")) r.statuses.push_back(status_from(s.get<std::string>()));
  for (const auto& v : j.at("final_totals"))
    r.final_totals.push_back(decode_value(v.get<std::string>()));
  r.final_nontransferable = decode_value(j.at("final_nontransferable").get<std::string>());
  for (const auto& snap : j.at("rounds")) {
    RoundSnapshot s;
    for (const auto& t : snap.at("totals")) {
      if (t.is_null())
        s.totals.emplace_back(std::nullopt);
      else
        s.totals.emplace_back(decode_value(t.get<std::string>()));
    }
    s.nontransferable = decode_value(snap.at("nontransferable").get<std::string>());
    r.rounds.push_back(std::move(s));
  }
  for (const auto& e : j.at("events")) r.events.push_back(event_from_json(r.roster, e));
  return r;
}

Json report_to_json(const ParadoxReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["type"] = "paradox";
  j["kind"] = paradox_kind_name(r.kind);
  j["method"] = r.method == ReportMethod::Direct ? "direct" : "sweep";
  j["added_ballot"] = names_json(r.before.roster, r.added_ballot);
  j["count"] = r.count;
  if (r.count_ranges.size() == 1) {
    j["count_range"] = Json::array({r.count_ranges[0].lo, r.count_ranges[0].hi});
  } else if (!r.count_ranges.empty()) {
    Json ranges = Json::array();
    for (const auto& iv : r.count_ranges) ranges.push_back(Json::array({iv.lo, iv.hi}));
    j["count_ranges"] = std::move(ranges);
  }
  j["promoted"] = names_json(r.before.roster, r.promoted);
  j["displaced"] = names_json(r.before.roster, r.displaced);
  j["quota_before"] = r.before.quota;
  j["quota_after"] = r.after.quota;
  j["before"] = record_to_json(r.before);
  j["after"] = record_to_json(r.after);
  return j;
}

ParadoxReport report_from_json(const Json& j) {
  require_schema(j, "paradox");
  ParadoxReport r;
  r.kind = paradox_kind_from(j.at("kind").get<std::string>());
  const auto method = j.at("method").get<std::string>();
  if (method == "direct")
    r.method = ReportMethod::Direct;
  else if (method == "sweep")
    r.method = ReportMethod::Sweep;
  else
    throw std::invalid_argument("unknown report method \"" + method + "\"");
  r.before = record_from_json(j.at("before"));
  r.after = record_from_json(j.at("after"));
  r.added_ballot = ids_from(r.before.roster, j.at("added_ballot"));
  r.count = j.at("count").get<long long>();
  if (j.contains("count_range")) {
    const auto& iv = j.at("count_range");
    r.count_ranges.push_back({iv.at(0).get<long long>(), iv.at(1).get<long long>()});
  } else if (j.contains("count_ranges")) {
    for (const auto& iv : j.at("count_ranges"))
      r.count_ranges.push_back({iv.at(0).get<long long>(), iv.at(1).get<long long>()});
  }
  r.promoted = ids_from(r.before.roster, j.at("promoted"));
  r.displaced = ids_from(r.before.roster, j.at("displaced"));
  return r;
}

Json certificate_to_json(const ConstructionCertificate& c) {
  Json j;
  j["schema"] = kReportSchema;
  j["type"] = "construction_certificate";
  j["seats"] = c.seats;
  j["profile"] = profile_to_json(c.profile);
  j["added_ballot"] = names_json(c.profile.roster(), c.added_ballot);
  j["added_count"] = c.added_count;
  j["clauses"] = Json{{"top_slots_match_winners", c.clause1_ok},
                      {"one_survivor_top_displaced", c.clause2_ok},
                      {"bottom_all_promoted", c.clause3_ok}};
  j["before"] = record_to_json(c.before);
  j["after"] = record_to_json(c.after);
  return j;
}

ConstructionCertificate certificate_from_json(const Json& j) {
  require_schema(j, "construction_certificate");
  ConstructionCertificate c;
  c.seats = j.at("seats").get<int>();
  c.profile = profile_from_json(j.at("profile"));
  c.added_ballot = ids_from(c.profile.roster(), j.at("added_ballot"));
  c.added_count = j.at("added_count").get<long long>();
  const auto& clauses = j.at("clauses");
  c.clause1_ok = clauses.at("top_slots_match_winners").get<bool>();
  c.clause2_ok = clauses.at("one_survivor_top_displaced").get<bool>();
  c.clause3_ok = clauses.at("bottom_all_promoted").get<bool>();
  c.before = record_from_json(j.at("before"));
  c.after = record_from_json(j.at("after"));
  return c;
}

std::string write_report_json(const ParadoxReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

std::string write_report_json(const ConstructionCertificate& certificate) {
  return certificate_to_json(certificate).dump(2) + "\n";
}

}  // namespace stv
