#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "cmtop/complex.hpp"
#include "cmtop/crossed_module.hpp"

namespace cmtop {

/// Malformed input. what() reads "<source>:<line>:<column>: <message>".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, int column, const std::string& message);
  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string source_;
  int line_, column_;
};

/// `group <name> <order>` followed by the Cayley table, row by row.
GroupPtr parse_group(const std::string& text, const std::string& source = "<group>");
GroupPtr load_group_file(const std::filesystem::path& path);
std::string write_group(const FiniteGroup& g);

/// `cmod <name>`, `group_h X`, `group_g X`, `delta ...`, `action` + |G| rows.
/// X is `inline <order> <table...>`, a group file path (relative to
/// `base_dir`) or a builtin spec such as `Z/4` or `S3`. Shapes are checked;
/// the axioms are left to validate().
CrossedModule parse_cmod(const std::string& text, const std::string& source = "<cmod>",
                         const std::filesystem::path& base_dir = {});
CrossedModule load_cmod_file(const std::filesystem::path& path);
std::string write_cmod(const CrossedModule& cm);

/// Simplicial `tet v0 v1 v2 v3` lines, or Delta lines `edge <id> [tail head]`,
/// `face <id> e01 e02 e12`, `tet <id> f012 f013 f023 f123`. `#` starts a
/// comment.
Complex parse_complex(const std::string& text, const std::string& source = "<complex>");
Complex load_complex_file(const std::filesystem::path& path);
/// Simplicial complexes are written as tet lists, everything else in Delta
/// form with explicit edge endpoints.
std::string write_complex(const Complex& c);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cmtop
