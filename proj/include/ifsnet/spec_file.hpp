// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifsnet/explore.hpp"

namespace ifsnet {

/// Error in a system description, with 1-based line and column.
class SpecError : public std::invalid_argument {
 public:
  SpecError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct SpecFile {
  std::string name;
  std::uint64_t radicand = 0;
  std::vector<Affine> maps;
  std::optional<std::size_t> max_states;
  std::optional<std::size_t> max_depth;
  std::optional<Scalar> min_scale;

  Budget budget() const;
};

/// A parsed system with its hull normalization applied.
struct LoadedSystem {
  SpecFile spec;
  Ifs raw;
  Ifs normalized;
  /// phi with normalized maps phi o S_i o phi^-1.
  Affine conjugation;
};

/// Parses the line-oriented format (see docs/formats.md) without validating
/// the system itself.
SpecFile parse_spec_text(std::string_view text);

/// Parses, validates and normalizes.
LoadedSystem parse_spec(std::string_view text);
LoadedSystem load_spec_file(const std::string& path);

/// Renders a system in the same format; parse_spec_text(render_spec(s)) == s.
std::string render_spec(const SpecFile& spec);
SpecFile spec_for(const Ifs& ifs, std::string name = {});

}  // namespace ifsnet
