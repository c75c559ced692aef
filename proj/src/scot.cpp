#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stv/blt.hpp"

namespace stv {

namespace {

namespace fs = std::filesystem;

// One CSV record split into fields, with double-quote escaping handled.
std::vector<std::string> split_row(std::string_view row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < row.size() && row[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  for (std::string& f : fields) {
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
    std::size_t lead = 0;
    while (lead < f.size() && (f[lead] == ' ' || f[lead] == '\t')) ++lead;
    f.erase(0, lead);
  }
  return fields;
}

bool is_unsigned_int(const std::string& field) {
  if (field.empty()) return false;
  return std::all_of(field.begin(), field.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

long long to_int(const std::string& field, int row, const char* what) {
  if (!is_unsigned_int(field) || field.size() > 18) {
    throw ParseError(std::string("bad ") + what + " '" + field + "'", row, 1);
  }
  return std::stoll(field);
}

}  // namespace

Election parse_scot_csv(std::string_view text) {
  std::vector<std::pair<int, std::string>> rows;  // (1-based row number, text)
  {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t eol = text.find('\n', pos);
      std::string_view raw =
          text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      ++number;
      if (!raw.empty()) rows.emplace_back(number, std::string(raw));
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
    }
  }
  if (rows.empty()) throw ParseError("empty file", 1, 1);

  const std::vector<std::string> header = split_row(rows[0].second);
  if (header.size() != 2) {
    throw ParseError("header row must be <candidates>,<seats>", rows[0].first, 1);
  }
  const long long n = to_int(header[0], rows[0].first, "candidate count");
  const long long seats = to_int(header[1], rows[0].first, "seat count");
  if (n < 1 || n > 10000) throw ParseError("implausible candidate count", rows[0].first, 1);
  if (seats < 1 || seats > n) throw ParseError("implausible seat count", rows[0].first, 1);

  // Ballot rows run until the optional lone-0 sentinel or the first row
  // that does not start with a number (the names).
  std::size_t r = 1;
  std::vector<std::pair<Ballot, long long>> piles;
  for (; r < rows.size(); ++r) {
    const std::vector<std::string> fields = split_row(rows[r].second);
    if (!is_unsigned_int(fields[0])) break;
    if (fields.size() == 1 && fields[0] == "0") {
      ++r;
      break;
    }
    const long long count = to_int(fields[0], rows[r].first, "ballot count");
    if (count < 1) throw ParseError("ballot count must be positive", rows[r].first, 1);
    Ballot ranking;
    ranking.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const long long idx = to_int(fields[i], rows[r].first, "candidate index");
      if (idx < 1 || idx > n) {
        throw ParseError("candidate index " + std::to_string(idx) + " out of range",
                         rows[r].first, 1);
      }
      ranking.push_back(static_cast<int>(idx - 1));
    }
    piles.emplace_back(std::move(ranking), count);
  }

  if (rows.size() - r < static_cast<std::size_t>(n)) {
    throw ParseError("expected " + std::to_string(n) + " candidate names, got " +
                         std::to_string(rows.size() - r),
                     rows.empty() ? 1 : rows.back().first, 1);
  }
  std::vector<Candidate> roster;
  roster.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i, ++r) {
    const std::vector<std::string> fields = split_row(rows[r].second);
    if (fields.size() != 1 || fields[0].empty()) {
      throw ParseError("expected a candidate name", rows[r].first, 1);
    }
    roster.push_back(split_party(fields[0]));
  }

  Election election;
  election.seats = static_cast<int>(seats);
  election.profile = Profile(std::move(roster));
  for (auto& [ranking, count] : piles) {
    try {
      election.profile.add_ballots(ranking, count);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what(), rows[0].first, 1);
    }
  }

  if (r < rows.size()) {
    const std::vector<std::string> fields = split_row(rows[r].second);
    if (fields.size() != 1) throw ParseError("expected a single title field", rows[r].first, 1);
    election.title = fields[0];
    ++r;
  }
  if (r < rows.size()) throw ParseError("unexpected content after title", rows[r].first, 1);
  return election;
}

Election load_scot_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scot_csv(buffer.str());
  } catch (const ParseError& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
}

std::vector<std::string> convert_scot_dir(const std::string& dir, const std::string& out_dir,
                                          std::ostream& log) {
  if (!fs::is_directory(dir)) throw std::runtime_error(dir + ": not a directory");
  std::vector<fs::path> sources;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      sources.push_back(entry.path());
    }
  }
  std::sort(sources.begin(), sources.end());

  fs::create_directories(out_dir);
  std::vector<std::string> written;
  for (const fs::path& src : sources) {
    try {
      Election election = load_scot_csv(src.string());
      if (election.title.empty()) election.title = src.stem().string();
      const fs::path dest = fs::path(out_dir) / (src.stem().string() + ".blt");
      std::ofstream out(dest, std::ios::binary);
      if (!out) throw std::runtime_error(dest.string() + ": cannot write");
      out << write_blt(election);
      written.push_back(dest.string());
    } catch (const std::exception& ex) {
      log << ex.what() << "\n";
    }
  }
  std::sort(written.begin(), written.end());
  return written;
}

}  // namespace stv
