// SPDX-License-Identifier: Apache-2.0

#include "ifsnet/spec_file.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ifsnet {

SpecError::SpecError(const std::string& message, std::size_t line, std::size_t column)
    : std::invalid_argument("line " + std::to_string(line) + ", column " +
                            std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Budget SpecFile::budget() const {
  Budget b;
  if (max_states) b.max_states = *max_states;
  if (max_depth) b.max_depth = *max_depth;
  b.min_scale = min_scale;
  return b;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
           line[i] != '#') {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

Scalar scalar_at(const Token& t, std::size_t line) {
  try {
    return Scalar::parse(t.text);
  } catch (const ParseError& e) {
    throw SpecError(e.what(), line, t.column + e.position());
  } catch (const ArithmeticError& e) {
    throw SpecError(e.what(), line, t.column);
  }
}

std::size_t count_at(const Token& t, std::size_t line) {
  std::size_t value = 0;
  for (char ch : t.text) {
    if (ch < '0' || ch > '9') throw SpecError("expected a non-negative integer", line, t.column);
    value = value * 10 + static_cast<std::size_t>(ch - '0');
    if (value > (std::size_t{1} << 48)) throw SpecError("integer too large", line, t.column);
  }
  if (t.text.empty()) throw SpecError("expected a non-negative integer", line, t.column);
  return value;
}

}  // namespace

SpecFile parse_spec_text(std::string_view text) {
  SpecFile spec;
  bool have_radicand = false;
  std::vector<std::pair<std::size_t, std::size_t>> map_sites;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& key = tokens[0].text;
    auto expect_args = [&](std::size_t n) {
      if (tokens.size() != n + 1) {
        throw SpecError("'" + key + "' takes " + std::to_string(n) + " argument(s)", line_no,
                        tokens[0].column);
      }
    };
    if (key == "name") {
      expect_args(1);
      spec.name = tokens[1].text;
    } else if (key == "radicand") {
      expect_args(1);
      if (have_radicand) throw SpecError("duplicate radicand", line_no, tokens[0].column);
      if (!spec.maps.empty()) {
        throw SpecError("radicand must precede the maps", line_no, tokens[0].column);
      }
      const std::size_t d = count_at(tokens[1], line_no);
      if (d > 1 && !is_square_free(d)) {
        throw SpecError("radicand " + tokens[1].text + " is not square-free", line_no,
                        tokens[1].column);
      }
      spec.radicand = d <= 1 ? 0 : d;
      have_radicand = true;
    } else if (key == "map") {
      expect_args(2);
      Affine f{scalar_at(tokens[1], line_no), scalar_at(tokens[2], line_no)};
      for (std::size_t k = 0; k < 2; ++k) {
        const Scalar& s = k == 0 ? f.L : f.a;
        if (s.radicand() != 0 && s.radicand() != spec.radicand) {
          throw SpecError("scalar uses sqrt(" + std::to_string(s.radicand()) +
                              ") but the radicand is " + std::to_string(spec.radicand),
                          line_no, tokens[k + 1].column);
        }
      }
      spec.maps.push_back(std::move(f));
      map_sites.emplace_back(line_no, tokens[1].column);
    } else if (key == "max_states") {
      expect_args(1);
      spec.max_states = count_at(tokens[1], line_no);
    } else if (key == "max_depth") {
      expect_args(1);
      spec.max_depth = count_at(tokens[1], line_no);
    } else if (key == "min_scale") {
      expect_args(1);
      spec.min_scale = scalar_at(tokens[1], line_no);
      if (spec.min_scale->sign() <= 0) {
        throw SpecError("min_scale must be positive", line_no, tokens[1].column);
      }
    } else {
      throw SpecError("unknown directive '" + key + "'", line_no, tokens[0].column);
    }
  }
  for (std::size_t i = 0; i < spec.maps.size(); ++i) {
    const Scalar r = spec.maps[i].L.abs();
    if (r.is_zero() || r >= Scalar(1)) {
      throw SpecError("map ratio must satisfy 0 < |L| < 1", map_sites[i].first,
                      map_sites[i].second);
    }
  }
  if (spec.maps.size() < 2) {
    throw SpecError("at least 2 maps are required, found " + std::to_string(spec.maps.size()),
                    line_no, 1);
  }
  return spec;
}

LoadedSystem parse_spec(std::string_view text) {
  SpecFile spec = parse_spec_text(text);
  Ifs raw(spec.maps);
  Ifs normalized = normalize_hull(raw);
  Affine phi = hull_normalizer(raw);
  return {std::move(spec), std::move(raw), std::move(normalized), std::move(phi)};
}

LoadedSystem load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  LoadedSystem sys = parse_spec(buf.str());
  if (sys.spec.name.empty()) sys.spec.name = std::filesystem::path(path).stem().string();
  return sys;
}

std::string render_spec(const SpecFile& spec) {
  std::ostringstream out;
  if (!spec.name.empty()) out << "name " << spec.name << "\n";
  out << "radicand " << spec.radicand << "\n";
  for (const auto& f : spec.maps) out << "map " << f.L.str() << " " << f.a.str() << "\n";
  if (spec.max_states) out << "max_states " << *spec.max_states << "\n";
  if (spec.max_depth) out << "max_depth " << *spec.max_depth << "\n";
  if (spec.min_scale) out << "min_scale " << spec.min_scale->str() << "\n";
  return out.str();
}

SpecFile spec_for(const Ifs& ifs, std::string name) {
  SpecFile spec;
  spec.name = std::move(name);
  spec.radicand = ifs.radicand();
  spec.maps = ifs.maps();
  return spec;
}

}  // namespace ifsnet
