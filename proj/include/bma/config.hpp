#pragma once

#include <map>
#include <string>
#include <vector>

#include "bma/analytic_map.hpp"

namespace bma {

// Flat key-value text with optional [section] headers. Values are scalars,
// complex literals like `0.3-0.2i`, or lists `[a, b, c]`.
struct KeyValueSection {
  std::string name;
  std::map<std::string, std::string> entries;

  bool has(const std::string& key) const { return entries.count(key) > 0; }
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  complex get_complex(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<complex> get_complex_list(const std::string& key) const;
};

struct RunConfig {
  KeyValueSection global;                        // entries before any section
  std::map<std::string, KeyValueSection> maps;   // [map NAME] sections

  static RunConfig parse_file(const std::string& path);
  static RunConfig parse_text(const std::string& text);
};

complex parse_complex(const std::string& text);

// Map spec grammar: config names, built-ins (strip, koebe, halfplane,
// sector:A, lens:A, square, equilateral, pentagon, triangle:a1,a2,a3,
// polygon:FILE), Blaschke kinds (bl-int(z1,z2,...), bl-ext(...)), and
// wrappers dual(SPEC), precompose(SPEC; a; c).
MapPtr parse_map_spec(const std::string& spec, const RunConfig* config = nullptr);

// Polygon specification file: kind = interior|exterior, angles = [...],
// optional prevertices = [...] (radians).
MapPtr polygon_from_file(const std::string& path);

}  // namespace bma
