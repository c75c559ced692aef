// Command-line front end: tabulate elections, audit them for involvement
// paradoxes, sweep for candidates worth auditing, plot margin curves, emit
// worst-case constructions, and convert published ward data.
//
// Exit codes: 0 = ran clean, 1 = a paradox was found (audit/sweep), 2 = bad
// usage or unreadable input.
#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stv/audit.hpp"
#include "stv/blt.hpp"
#include "stv/engine.hpp"
#include "stv/report.hpp"
#include "stv/worst_case.hpp"

using namespace stv;

namespace {

struct CommonOptions {
  std::string arithmetic = "exact";
  std::uint64_t seed = 0;
  long long quota = 0;  // 0 = quota from the ballot count
  int seats = 0;        // 0 = seats from the file header
  bool force = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_seats = true) {
  cmd->add_option("--arithmetic", opts.arithmetic, "Transfer arithmetic: exact or fixed5")
      ->check(CLI::IsMember({"exact", "fixed5"}));
  cmd->add_option("--seed", opts.seed, "Seed for tie-breaking lots (default 0)");
  cmd->add_option("--quota", opts.quota, "Override the computed quota")
      ->check(CLI::PositiveNumber);
  if (with_seats) {
    cmd->add_option("--seats", opts.seats, "Seats to fill; must match the file header unless --force")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--force", opts.force, "Allow --seats to differ from the file header");
  }
}

EngineConfig make_config(const CommonOptions& opts) {
  EngineConfig config;
  config.arithmetic = opts.arithmetic == "fixed5" ? Arithmetic::Fixed5 : Arithmetic::Exact;
  config.tie_seed = opts.seed;
  if (opts.quota > 0) config.quota_override = opts.quota;
  return config;
}

Election load_election(const std::string& path, const CommonOptions& opts) {
  Election e = load_blt(path);
  if (opts.seats > 0 && opts.seats != e.seats) {
    if (!opts.force) {
      throw std::runtime_error("--seats " + std::to_string(opts.seats) +
                               " conflicts with the file header (" + std::to_string(e.seats) +
                               " seats); pass --force to override");
    }
    e.seats = opts.seats;
  }
  return e;
}

std::string display_name(const Candidate& c) {
  return c.party.empty() ? c.name : c.name + " (" + c.party + ")";
}

std::string name_list(const Election& e, const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    out += e.profile.roster()[static_cast<std::size_t>(ids[i])].name;
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

int match_candidate(const Election& e, const std::string& token) {
  const std::string want = lower(token);
  const auto& roster = e.profile.roster();
  std::vector<int> partial;
  for (std::size_t i = 0; i < roster.size(); ++i) {
    const std::string name = lower(roster[i].name);
    if (name == want || lower(display_name(roster[i])) == want) return static_cast<int>(i);
    if (name.find(want) != std::string::npos) partial.push_back(static_cast<int>(i));
  }
  if (partial.size() == 1) return partial[0];
  if (partial.empty()) throw std::runtime_error("no candidate matches '" + token + "'");
  throw std::runtime_error("candidate '" + token + "' is ambiguous (" +
                           name_list(e, partial) + ")");
}

// "A>B>D>C" by name (case-insensitive, unique substrings allowed) or
// "1>2>4>3" by ballot-paper index.
Ballot parse_ballot(const Election& e, const std::string& arg) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : arg) {
    if (c == '>') {
      tokens.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  tokens.push_back(trim(current));
  if (tokens.size() < 2) throw std::runtime_error("--ballot needs at least two candidates");

  const bool numeric = std::all_of(tokens.begin(), tokens.end(), [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) {
      return std::isdigit(c) != 0;
    });
  });

  Ballot ballot;
  for (const std::string& token : tokens) {
    if (token.empty()) throw std::runtime_error("empty entry in --ballot");
    if (numeric) {
      const long long idx = std::stoll(token);
      const long long n = static_cast<long long>(e.profile.roster().size());
      if (idx < 1 || idx > n) {
        throw std::runtime_error("ballot index " + token + " out of range 1.." +
                                 std::to_string(n));
      }
      ballot.push_back(static_cast<int>(idx - 1));
    } else {
      ballot.push_back(match_candidate(e, token));
    }
  }
  return ballot;
}

struct CountRange {
  long long lo = 0;
  long long hi = 0;
  bool single = false;
};

CountRange parse_counts(const std::string& arg) {
  CountRange range;
  const auto dots = arg.find("..");
  if (dots == std::string::npos) {
    range.lo = range.hi = std::stoll(arg);
    range.single = true;
  } else {
    range.lo = std::stoll(arg.substr(0, dots));
    range.hi = std::stoll(arg.substr(dots + 2));
  }
  if (range.lo < (range.single ? 1 : 0) || range.hi < range.lo) {
    throw std::runtime_error("bad count range '" + arg + "'");
  }
  return range;
}

ParadoxKind parse_kind(const std::string& kind) {
  if (kind == "negative") return ParadoxKind::NegativeInvolvement;
  if (kind == "positive") return ParadoxKind::PositiveInvolvement;
  return ParadoxKind::Both;
}

void print_header(const Election& e, const EngineConfig& config) {
  if (!e.title.empty()) std::cout << e.title << "\n";
  std::cout << e.profile.roster().size() << " candidates, " << e.seats << " seat"
            << (e.seats == 1 ? "" : "s") << ", " << e.profile.quota_basis() << " ballots"
            << " | arithmetic "
            << (config.arithmetic == Arithmetic::Fixed5 ? "fixed5" : "exact") << ", tie seed "
            << config.tie_seed << "\n\n";
}

int run_tabulate(const std::string& path, const CommonOptions& opts, const std::string& format,
                 int decimals) {
  const Election e = load_election(path, opts);
  const EngineConfig config = make_config(opts);
  const TabulationRecord rec = tabulate(e, config);
  if (format == "json") {
    std::cout << record_to_json(rec).dump(2) << "\n";
    return 0;
  }
  print_header(e, config);
  std::cout << render_round_table(rec, decimals);
  std::cout << "\nElected: ";
  for (std::size_t i = 0; i < rec.winners.size(); ++i) {
    if (i > 0) std::cout << ", ";
    std::cout << display_name(e.profile.roster()[static_cast<std::size_t>(rec.winners[i])]);
  }
  std::cout << "\n";
  return 0;
}

std::optional<ParadoxReport> verify_kind(const Election& e, const Ballot& ballot,
                                         long long count, ParadoxKind kind,
                                         const EngineConfig& config) {
  if (kind == ParadoxKind::PositiveInvolvement) return verify_positive(e, ballot, count, config);
  auto rep = verify_negative(e, ballot, count, config);
  if (kind == ParadoxKind::Both && rep.has_value() && rep->kind != ParadoxKind::Both) {
    return std::nullopt;
  }
  return rep;
}

int run_audit(const std::string& path, const CommonOptions& opts, const std::string& ballot_arg,
              const std::string& counts_arg, const std::string& kind_arg,
              const std::string& format) {
  const Election e = load_election(path, opts);
  const EngineConfig config = make_config(opts);
  const Ballot ballot = parse_ballot(e, ballot_arg);
  const CountRange counts = parse_counts(counts_arg);
  const ParadoxKind kind = parse_kind(kind_arg);

  std::optional<ParadoxReport> report;
  if (counts.single) {
    report = verify_kind(e, ballot, counts.lo, kind, config);
  } else {
    CountIntervalSet set = count_intervals(e, ballot, kind, counts.hi, config);
    std::vector<CountInterval> clipped;
    for (CountInterval iv : set.intervals) {
      if (iv.hi < counts.lo) continue;
      iv.lo = std::max(iv.lo, counts.lo);
      clipped.push_back(iv);
    }
    if (!clipped.empty()) {
      report = verify_kind(e, ballot, clipped.front().lo, kind, config);
      if (report.has_value()) report->count_ranges = clipped;
    }
  }

  if (!report.has_value()) {
    if (format == "json") {
      std::cout << "{}\n";
    } else {
      std::cout << "no paradox for this ballot within the scanned counts\n";
    }
    return 0;
  }

  if (format == "json") {
    std::cout << report_to_json(*report).dump(2) << "\n";
  } else {
    print_header(e, config);
    const char* label = report->kind == ParadoxKind::Both
                            ? "negative and positive involvement"
                            : (report->kind == ParadoxKind::NegativeInvolvement
                                   ? "negative involvement"
                                   : "positive involvement");
    std::cout << label << " at +" << report->count << " ballots\n";
    std::cout << "promoted: " << name_list(e, report->promoted) << "\n";
    std::cout << "displaced: " << name_list(e, report->displaced) << "\n";
    std::cout << "quota " << report->before.quota << " -> " << report->after.quota << "\n";
    if (!report->count_ranges.empty()) {
      std::cout << "counts:";
      for (const CountInterval& iv : report->count_ranges) {
        std::cout << " [" << iv.lo << "," << iv.hi << "]";
      }
      std::cout << "\n";
    }
  }
  return 1;
}

int run_sweep(const std::string& path, const CommonOptions& opts, double cap_factor,
              long long cap_floor, bool complete, const std::string& format) {
  const Election e = load_election(path, opts);
  const EngineConfig config = make_config(opts);
  const std::vector<SweepHit> hits =
      bullet_sweep(e, Rational(cap_factor * 100) / 100, cap_floor, config);

  std::vector<ParadoxReport> reports;
  if (complete) {
    std::vector<bool> done(e.profile.roster().size(), false);
    for (const SweepHit& hit : hits) {
      if (done[static_cast<std::size_t>(hit.candidate)]) continue;
      // rank a newly seated candidate last so the negative direction has a
      // target; the bullet candidate stays on top for the positive direction
      std::vector<int> promoted;
      std::set_difference(hit.winners_after.begin(), hit.winners_after.end(),
                          hit.winners_before.begin(), hit.winners_before.end(),
                          std::back_inserter(promoted));
      const auto last_it =
          std::find_if(promoted.begin(), promoted.end(),
                       [&](int c) { return c != hit.candidate; });
      if (last_it == promoted.end()) continue;
      for (const Ballot& ranking :
           complete_to_ranking(e, hit.candidate, *last_it, CompletionStrategy::Heuristic,
                               config)) {
        auto rep = verify_negative(e, ranking, hit.count, config);
        if (!rep.has_value()) rep = verify_positive(e, ranking, hit.count, config);
        if (rep.has_value()) {
          rep->method = ReportMethod::Sweep;
          reports.push_back(std::move(*rep));
          done[static_cast<std::size_t>(hit.candidate)] = true;
          break;
        }
      }
    }
  }

  if (format == "json") {
    Json out;
    out["hits"] = Json::array();
    for (const SweepHit& hit : hits) {
      Json h;
      h["candidate"] = e.profile.roster()[static_cast<std::size_t>(hit.candidate)].name;
      h["count"] = hit.count;
      h["winners_before"] = hit.winners_before;
      h["winners_after"] = hit.winners_after;
      out["hits"].push_back(std::move(h));
    }
    if (complete) {
      out["reports"] = Json::array();
      for (const ParadoxReport& rep : reports) out["reports"].push_back(report_to_json(rep));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    print_header(e, config);
    if (hits.empty()) {
      std::cout << "no bullet-vote additions moved the winner set\n";
    }
    // consecutive counts with the same outcome collapse into one range line
    for (std::size_t i = 0; i < hits.size();) {
      std::size_t j = i + 1;
      while (j < hits.size() && hits[j].candidate == hits[i].candidate &&
             hits[j].count == hits[j - 1].count + 1 &&
             hits[j].winners_before == hits[i].winners_before &&
             hits[j].winners_after == hits[i].winners_after) {
        ++j;
      }
      std::cout << "+" << hits[i].count;
      if (j - i > 1) std::cout << ".." << hits[j - 1].count;
      std::cout << " bullets for "
                << e.profile.roster()[static_cast<std::size_t>(hits[i].candidate)].name << ": {"
                << name_list(e, hits[i].winners_before) << "} -> {"
                << name_list(e, hits[i].winners_after) << "}\n";
      i = j;
    }
    for (const ParadoxReport& rep : reports) {
      std::cout << "certified: +" << rep.count << " of " << name_list(e, {rep.added_ballot[0]})
                << " first / " << name_list(e, {rep.added_ballot.back()})
                << " last promotes {" << name_list(e, rep.promoted) << "}\n";
    }
  }
  return hits.empty() ? 0 : 1;
}

int run_curve(const std::string& path, const CommonOptions& opts, const std::string& ballot_arg,
              const std::string& a_arg, const std::string& b_arg,
              const std::string& counts_arg) {
  const Election e = load_election(path, opts);
  const EngineConfig config = make_config(opts);
  const Ballot ballot = parse_ballot(e, ballot_arg);
  const CountRange counts = parse_counts(counts_arg);
  const int a = match_candidate(e, a_arg);
  const int b = match_candidate(e, b_arg);
  std::cout << render_margin_csv(margin_curve(e, ballot, counts.lo, counts.hi, a, b, config));
  return 0;
}

int run_construct(int seats, int ceiling, bool verify, const CommonOptions& opts,
                  const std::string& format) {
  const EngineConfig config = make_config(opts);
  if (verify || format == "json") {
    const ConstructionCertificate cert = verify_construction(seats, config, ceiling);
    std::cout << certificate_to_json(cert).dump(2) << "\n";
    return 0;
  }
  const Construction c = seats == 2 ? construct_s2() : construct_general(seats, ceiling);
  Election e;
  e.profile = c.profile;
  e.seats = c.seats;
  std::cout << write_blt(e);
  return 0;
}

int run_import(const std::string& dir, std::string out_dir) {
  if (out_dir.empty()) {
    out_dir = (dir.back() == '/' ? dir.substr(0, dir.size() - 1) : dir) + "_blt";
  }
  const std::vector<std::string> written = convert_scot_dir(dir, out_dir, std::cerr);
  std::cout << "converted " << written.size() << " file" << (written.size() == 1 ? "" : "s")
            << " to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scottish-rules STV tabulation and involvement-paradox auditing"};
  app.require_subcommand(1);

  // tabulate
  CommonOptions tab_opts;
  std::string tab_file;
  std::string tab_format = "table";
  int tab_decimals = 2;
  CLI::App* tab = app.add_subcommand("tabulate", "Count an election and print the round table");
  tab->add_option("file", tab_file, "Ballot file")->required();
  add_common(tab, tab_opts);
  tab->add_option("--format", tab_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  tab->add_option("--decimals", tab_decimals, "Decimal places in the table (0..5)")
      ->check(CLI::Range(0, 5));

  // audit
  CommonOptions audit_opts;
  std::string audit_file;
  std::string audit_ballot;
  std::string audit_counts;
  std::string audit_kind = "negative";
  std::string audit_format = "table";
  CLI::App* audit = app.add_subcommand(
      "audit", "Check whether added copies of a ballot flip its first or last candidate");
  audit->add_option("file", audit_file, "Ballot file")->required();
  audit->add_option("--ballot", audit_ballot, "Full ranking, e.g. \"A>B>D>C\" or \"1>2>4>3\"")
      ->required();
  audit->add_option("--count,--counts", audit_counts, "Single count or range lo..hi")
      ->required();
  audit->add_option("--kind", audit_kind, "negative, positive, or both")
      ->check(CLI::IsMember({"negative", "positive", "both"}));
  add_common(audit, audit_opts);
  audit->add_option("--format", audit_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));

  // sweep
  CommonOptions sweep_opts;
  std::string sweep_file;
  std::string sweep_format = "table";
  double sweep_factor = 2.0;
  long long sweep_floor = 0;
  bool sweep_complete = false;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Add bullet votes per candidate and report winner-set changes");
  sweep->add_option("file", sweep_file, "Ballot file")->required();
  sweep->add_option("--cap-factor", sweep_factor,
                    "Scan up to cap-factor times each candidate's bullet count (default 2)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--cap-floor", sweep_floor, "Minimum additions to scan per candidate")
      ->check(CLI::NonNegativeNumber);
  sweep->add_flag("--complete", sweep_complete,
                  "Extend each hit to a full-ranking certified instance when possible");
  add_common(sweep, sweep_opts);
  sweep->add_option("--format", sweep_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));

  // curve
  CommonOptions curve_opts;
  std::string curve_file;
  std::string curve_ballot;
  std::string curve_a;
  std::string curve_b;
  std::string curve_counts;
  CLI::App* curve = app.add_subcommand(
      "curve", "CSV of the penultimate-round margin between two candidates as ballots are added");
  curve->add_option("file", curve_file, "Ballot file")->required();
  curve->add_option("--ballot", curve_ballot, "Ballot to add, e.g. \"A>B>D>C\"")->required();
  curve->add_option("--a", curve_a, "Margin is a minus b")->required();
  curve->add_option("--b", curve_b, "Margin is a minus b")->required();
  curve->add_option("--counts", curve_counts, "Count range lo..hi")->required();
  add_common(curve, curve_opts);

  // construct
  CommonOptions construct_opts;
  int construct_seats = 0;
  int construct_ceiling = 6;
  bool construct_verify = false;
  std::string construct_format = "blt";
  CLI::App* construct = app.add_subcommand(
      "construct", "Emit a profile where one added ballot displaces most of the winners");
  construct->add_option("--seats", construct_seats, "Committee size (2 or larger)")
      ->required()
      ->check(CLI::PositiveNumber);
  construct->add_flag("--verify", construct_verify,
                      "Tabulate before/after and print the certificate as JSON");
  construct->add_option("--ceiling", construct_ceiling,
                        "Largest committee size to allow (guards against huge profiles)")
      ->check(CLI::PositiveNumber);
  construct->add_option("--format", construct_format, "blt or json")
      ->check(CLI::IsMember({"blt", "json"}));
  add_common(construct, construct_opts, /*with_seats=*/false);

  // import-scot
  std::string import_dir;
  std::string import_out;
  CLI::App* import_scot = app.add_subcommand(
      "import-scot", "Convert a directory of published ward CSVs to ballot files");
  import_scot->add_option("dir", import_dir, "Directory to scan recursively")->required();
  import_scot->add_option("--out", import_out, "Output directory (default <dir>_blt)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; every malformed invocation exits 2
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (tab->parsed()) return run_tabulate(tab_file, tab_opts, tab_format, tab_decimals);
    if (audit->parsed()) {
      return run_audit(audit_file, audit_opts, audit_ballot, audit_counts, audit_kind,
                       audit_format);
    }
    if (sweep->parsed()) {
      return run_sweep(sweep_file, sweep_opts, sweep_factor, sweep_floor, sweep_complete,
                       sweep_format);
    }
    if (curve->parsed()) {
      return run_curve(curve_file, curve_opts, curve_ballot, curve_a, curve_b, curve_counts);
    }
    if (construct->parsed()) {
      return run_construct(construct_seats, construct_ceiling, construct_verify, construct_opts,
                           construct_format);
    }
    if (import_scot->parsed()) return run_import(import_dir, import_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
