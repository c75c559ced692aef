#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stv/model.hpp"

namespace stv {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Ballot file grammar:
//   header line        <candidates> <seats>
//   directives         #total <declared ballot count>   (optional)
//                      #title <text>                    (optional)
//   ballot lines       <count> <idx> <idx> ... 0        (indices 1-based)
//   end of ballots     0
//   name lines         "Name" or "Name (Party)"         (one per candidate)
//   title line         "Title"                          (optional)
// Whitespace is spaces/tabs; lines end LF or CRLF. Duplicate ballot lines
// merge by summing counts.
Election parse_blt(std::string_view text);

// Reads and parses a ballot file; file errors and parse errors both surface
// as exceptions naming the path.
Election load_blt(const std::string& path);

// Canonical form: LF line ends, ballot lines sorted, counts merged, party
// re-attached to the name as a parenthesized suffix.
std::string write_blt(const Election& election);

// "Surname (SNP)" -> {"Surname", "SNP"}; suffixes outside the usual party
// abbreviations stay part of the name.
Candidate split_party(std::string name);

// Published Scottish ward data ships as one CSV per election:
//   row 1      <candidates>,<seats>
//   ballots    <count>,<idx>,<idx>,...      (indices 1-based, no terminator)
//   sentinel   0                            (optional)
//   names      "Name (Party)"               (one row per candidate)
//   title      "Ward name"                  (optional)
// Quoted fields follow CSV conventions. Errors carry the row number.
Election parse_scot_csv(std::string_view text);

// Reads and parses one ward CSV; errors name the path.
Election load_scot_csv(const std::string& path);

// Converts every .csv under `dir` (recursively) into `out_dir/<stem>.blt`.
// Files that fail to parse are reported to `log` and skipped; returns the
// paths of the files written, sorted.
std::vector<std::string> convert_scot_dir(const std::string& dir, const std::string& out_dir,
                                          std::ostream& log);

}  // namespace stv
