#include "stv/blt.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace stv {

namespace {

constexpr std::array<std::string_view, 6> kKnownParties = {"Con", "Grn", "Ind",
                                                           "Lab", "LD",  "SNP"};

struct Line {
  std::string_view text;
  int number;  // 1-based
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({line, number});
    ++number;
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c == ' ' || c == '\t'; });
}

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start + 1)});
  }
  return tokens;
}

long long parse_int(const Token& token, int line, const char* what) {
  long long value = 0;
  std::size_t i = 0;
  bool negative = false;
  if (!token.text.empty() && (token.text[0] == '-' || token.text[0] == '+')) {
    negative = token.text[0] == '-';
    i = 1;
  }
  if (i == token.text.size()) {
    throw ParseError(std::string("expected ") + what, line, token.column);
  }
  for (; i < token.text.size(); ++i) {
    const char c = token.text[i];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("expected ") + what + ", got '" +
                           std::string(token.text) + "'",
                       line, token.column);
    }
    value = value * 10 + (c - '0');
    if (value > 1'000'000'000'000LL) {
      throw ParseError(std::string(what) + " out of range", line, token.column);
    }
  }
  return negative ? -value : value;
}

}  // namespace

// "Surname (SNP)" -> {"Surname", "SNP"}; unknown suffixes stay in the name.
Candidate split_party(std::string name) {
  if (name.size() >= 4 && name.back() == ')') {
    const std::size_t open = name.rfind(" (");
    if (open != std::string::npos) {
      const std::string_view suffix(name.data() + open + 2, name.size() - open - 3);
      for (std::string_view party : kKnownParties) {
        if (suffix == party) {
          return Candidate{name.substr(0, open), std::string(suffix)};
        }
      }
    }
  }
  return Candidate{std::move(name), ""};
}

namespace {

std::string parse_quoted(const Line& line, const char* what) {
  std::string_view s = line.text;
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  std::size_t begin = 0;
  while (begin < s.size() && (s[begin] == ' ' || s[begin] == '\t')) ++begin;
  s.remove_prefix(begin);
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') {
    throw ParseError(std::string("expected quoted ") + what, line.number,
                     static_cast<int>(begin + 1));
  }
  return std::string(s.substr(1, s.size() - 2));
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Election parse_blt(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  std::size_t at = 0;
  const auto next_line = [&]() -> const Line* {
    while (at < lines.size() && is_blank(lines[at].text)) ++at;
    return at < lines.size() ? &lines[at++] : nullptr;
  };

  const Line* header = next_line();
  if (!header) throw ParseError("empty file", 1, 1);
  const std::vector<Token> head = tokenize(header->text);
  if (head.size() != 2) {
    throw ParseError("header must be '<candidates> <seats>'", header->number, 1);
  }
  const long long n = parse_int(head[0], header->number, "candidate count");
  const long long seats = parse_int(head[1], header->number, "seat count");
  if (n < 1) throw ParseError("candidate count must be positive", header->number, head[0].column);
  if (seats < 1) throw ParseError("seat count must be positive", header->number, head[1].column);

  struct PendingBallot {
    Ballot ranking;
    long long count;
  };
  std::vector<PendingBallot> ballots;
  long long ballot_sum = 0;
  std::optional<long long> declared_total;
  int declared_line = 0;
  std::string title;

  for (;;) {
    const Line* line = next_line();
    if (!line) {
      throw ParseError("ballot section not terminated by a lone 0",
                       lines.empty() ? 1 : lines.back().number, 1);
    }
    if (!line->text.empty() && line->text[0] == '#') {
      const std::vector<Token> tokens = tokenize(line->text);
      if (tokens[0].text == "#total") {
        if (tokens.size() != 2) {
          throw ParseError("#total takes one integer", line->number, tokens[0].column);
        }
        const long long total = parse_int(tokens[1], line->number, "declared total");
        if (total < 1) {
          throw ParseError("declared total must be positive", line->number, tokens[1].column);
        }
        declared_total = total;
        declared_line = line->number;
      } else if (tokens[0].text == "#title") {
        const std::size_t mark = line->text.find("#title");
        std::string_view rest = line->text.substr(mark + 6);
        while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
        while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.remove_suffix(1);
        title = std::string(rest);
      } else {
        throw ParseError("unknown directive '" + std::string(tokens[0].text) + "'",
                         line->number, tokens[0].column);
      }
      continue;
    }

    const std::vector<Token> tokens = tokenize(line->text);
    if (tokens.size() == 1 && tokens[0].text == "0") break;  // end of ballots

    const long long count = parse_int(tokens[0], line->number, "ballot count");
    if (count < 1) {
      throw ParseError("ballot count must be positive", line->number, tokens[0].column);
    }
    Ballot ranking;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    bool terminated = false;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const long long idx = parse_int(tokens[t], line->number, "candidate index");
      if (idx == 0) {
        if (t + 1 != tokens.size()) {
          throw ParseError("content after ballot terminator", line->number,
                           tokens[t + 1].column);
        }
        terminated = true;
        break;
      }
      if (idx < 1 || idx > n) {
        throw ParseError("candidate index " + std::to_string(idx) + " out of range 1.." +
                             std::to_string(n),
                         line->number, tokens[t].column);
      }
      if (seen[static_cast<std::size_t>(idx - 1)]) {
        throw ParseError("candidate " + std::to_string(idx) + " ranked twice", line->number,
                         tokens[t].column);
      }
      seen[static_cast<std::size_t>(idx - 1)] = true;
      ranking.push_back(static_cast<int>(idx - 1));
    }
    if (!terminated) {
      throw ParseError("ballot line missing 0 terminator", line->number,
                       static_cast<int>(line->text.size() + 1));
    }
    ballot_sum += count;
    ballots.push_back({std::move(ranking), count});
  }

  std::vector<Candidate> roster;
  roster.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const Line* line = next_line();
    if (!line) {
      throw ParseError("expected " + std::to_string(n) + " candidate names, got " +
                           std::to_string(i),
                       lines.back().number, 1);
    }
    Candidate c = split_party(parse_quoted(*line, "candidate name"));
    if (c.name.empty()) throw ParseError("candidate name is empty", line->number, 1);
    roster.push_back(std::move(c));
  }

  if (const Line* line = next_line()) {
    title = parse_quoted(*line, "title");
    if (const Line* extra = next_line()) {
      throw ParseError("unexpected content after title", extra->number, 1);
    }
  }

  if (declared_total && *declared_total < ballot_sum) {
    throw ParseError("declared total " + std::to_string(*declared_total) +
                         " is less than the " + std::to_string(ballot_sum) +
                         " ballots listed",
                     declared_line, 1);
  }

  Election election;
  election.profile = Profile(std::move(roster));
  for (const PendingBallot& b : ballots) {
    election.profile.add_ballots(b.ranking, b.count);
  }
  if (declared_total) election.profile.set_declared_total(*declared_total);
  election.seats = static_cast<int>(seats);
  election.title = std::move(title);
  return election;
}

Election load_blt(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_blt(buffer.str());
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string write_blt(const Election& election) {
  const Profile& profile = election.profile;
  std::string out;
  out += std::to_string(profile.num_candidates());
  out += ' ';
  out += std::to_string(election.seats);
  out += '\n';
  if (profile.declared_total()) {
    out += "#total ";
    out += std::to_string(*profile.declared_total());
    out += '\n';
  }
  if (profile.blank_ballots() > 0) {
    out += std::to_string(profile.blank_ballots());
    out += " 0\n";
  }
  for (const auto& [ranking, count] : profile.piles()) {
    out += std::to_string(count);
    for (int idx : ranking) {
      out += ' ';
      out += std::to_string(idx + 1);
    }
    out += " 0\n";
  }
  out += "0\n";
  for (const Candidate& c : profile.roster()) {
    out += '"';
    out += c.name;
    if (!c.party.empty()) {
      out += " (";
      out += c.party;
      out += ')';
    }
    out += "\"\n";
  }
  if (!election.title.empty()) {
    out += '"';
    out += election.title;
    out += "\"\n";
  }
  return out;
}

}  // namespace stv
