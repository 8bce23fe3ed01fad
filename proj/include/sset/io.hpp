// Line-oriented text formats for complexes, maps and certificates.
//
//   dim N
//   cell <name> <dim> faces: <f0> <f1> ... <fk>
//
//   map <src-file> <tgt-file>
//   image <cell> <simplex-token>
//
// A simplex token is a cell name or s<j1>,<j2>,...@<name>.  Lines starting
// with '#' and blank lines are ignored.

#ifndef SSET_IO_HPP
#define SSET_IO_HPP

#include <string>
#include <vector>

#include "sset/simplicial_set.hpp"

namespace sset {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct LineViolation {
  int line = 0;
  std::string cell;
  std::string message;
};

struct ComplexReport {
  SSetPtr complex;
  std::vector<LineViolation> violations;
};

/// Parses without rejecting identity violations, which are returned with the
/// line of the offending cell.  Throws ParseError on syntax errors.
ComplexReport parse_complex_report(const std::string& text);

/// Parses and validates a complex.  Throws ParseError.
SSetPtr parse_complex(const std::string& text);
std::string serialize_complex(const SimplicialSet& x);

struct MapHeader {
  std::string source_file;
  std::string target_file;
};

/// Reads only the `map` header line.
MapHeader parse_map_header(const std::string& text);
/// Parses the image lines against already-resolved complexes.
SimplicialMap parse_map(const std::string& text, SSetPtr source, SSetPtr target);
std::string serialize_map(const SimplicialMap& f, const std::string& source_file, const std::string& target_file);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace sset

#endif  // SSET_IO_HPP
