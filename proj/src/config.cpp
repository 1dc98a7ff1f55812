#include "bma/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bma/blaschke.hpp"
#include "bma/convexity.hpp"
#include "bma/error.hpp"
#include "bma/polygon.hpp"

namespace bma {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::string body = trim(value);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    fail(ErrorCode::BadConfig, "expected a [..] list: " + value);
  body = body.substr(1, body.size() - 2);
  std::vector<std::string> out;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

// split "a; b; c" at top level (not inside parentheses)
std::vector<std::string> split_args(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

const std::string& KeyValueSection::get(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end())
    fail(ErrorCode::BadConfig, "missing key '" + key + "' in [" + name + "]");
  return it->second;
}

double KeyValueSection::get_double(const std::string& key) const {
  try {
    return std::stod(get(key));
  } catch (const std::exception&) {
    fail(ErrorCode::BadConfig, "bad number for key '" + key + "'");
  }
}

complex KeyValueSection::get_complex(const std::string& key) const {
  return parse_complex(get(key));
}

std::vector<double> KeyValueSection::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : split_list(get(key))) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      fail(ErrorCode::BadConfig, "bad number '" + item + "' in list " + key);
    }
  }
  return out;
}

std::vector<complex> KeyValueSection::get_complex_list(const std::string& key) const {
  std::vector<complex> out;
  for (const std::string& item : split_list(get(key)))
    out.push_back(parse_complex(item));
  return out;
}

RunConfig RunConfig::parse_text(const std::string& text) {
  RunConfig cfg;
  cfg.global.name = "";
  KeyValueSection* cur = &cfg.global;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      std::string header = trim(t.substr(1, t.size() - 2));
      std::string name = header;
      if (header.rfind("map ", 0) == 0) name = trim(header.substr(4));
      cur = &cfg.maps[name];
      cur->name = name;
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::BadConfig, "expected 'key = value': " + t);
    cur->entries[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadConfig, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

// `a+bi` with decimal components; also plain reals and `bi`
complex parse_complex(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) fail(ErrorCode::BadConfig, "empty complex literal");
  bool has_i = s.back() == 'i' || s.back() == 'I';
  if (!has_i) {
    try {
      size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, 0.0};
    } catch (const std::exception&) {
      fail(ErrorCode::BadConfig, "bad complex literal '" + text + "'");
    }
  }
  std::string body = s.substr(0, s.size() - 1);
  // split at the last +/- that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t i = body.size(); i-- > 1;) {
    char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  try {
    if (split == std::string::npos) {
      // pure imaginary: "i", "-i", "0.5i"
      if (body.empty() || body == "+") return {0.0, 1.0};
      if (body == "-") return {0.0, -1.0};
      return {0.0, std::stod(body)};
    }
    double re = std::stod(body.substr(0, split));
    std::string im_part = body.substr(split);
    if (im_part == "+") return {re, 1.0};
    if (im_part == "-") return {re, -1.0};
    return {re, std::stod(im_part)};
  } catch (const std::exception&) {
    fail(ErrorCode::BadConfig, "bad complex literal '" + text + "'");
  }
}

namespace {

MapPtr map_from_section(const KeyValueSection& sec, const RunConfig* config);

MapPtr builtin_spec(const std::string& spec, const RunConfig* config) {
  if (spec == "strip") return make_strip();
  if (spec == "koebe") return make_koebe();
  if (spec == "halfplane") return make_sector(1.0);
  if (spec == "square")
    return interior_from_data(
        PolygonData({0.0, M_PI / 2, M_PI, 3 * M_PI / 2}, {0.5, 0.5, 0.5, 0.5}));
  if (spec == "equilateral")
    return interior_from_data(PolygonData(
        {0.0, 2 * M_PI / 3, 4 * M_PI / 3}, {2.0 / 3, 2.0 / 3, 2.0 / 3}));
  if (spec == "pentagon") {
    std::vector<double> t, a;
    for (int k = 0; k < 5; ++k) {
      t.push_back(2 * M_PI * k / 5);
      a.push_back(0.4);
    }
    return interior_from_data(PolygonData(std::move(t), std::move(a)));
  }
  auto starts_with = [&](const char* prefix) {
    return spec.rfind(prefix, 0) == 0;
  };
  if (starts_with("sector:")) return make_sector(std::stod(spec.substr(7)));
  if (starts_with("lens:")) return make_lens(std::stod(spec.substr(5)));
  if (starts_with("triangle:")) {
    std::vector<std::string> parts = split_args(spec.substr(9), ',');
    if (parts.size() != 3)
      fail(ErrorCode::BadConfig, "triangle needs three exterior angles");
    return interior_from_data(triangle_prevertices_normalized(
        std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])));
  }
  if (starts_with("polygon:")) return polygon_from_file(spec.substr(8));
  auto call_body = [&](const char* prefix) -> std::string {
    std::string p = std::string(prefix) + "(";
    if (!starts_with(p.c_str()) || spec.back() != ')') return {};
    return spec.substr(p.size(), spec.size() - p.size() - 1);
  };
  if (std::string body = call_body("dual"); !body.empty())
    return dual_map(parse_map_spec(body, config));
  if (std::string body = call_body("precompose"); !body.empty()) {
    std::vector<std::string> parts = split_args(body, ';');
    if (parts.size() != 3)
      fail(ErrorCode::BadConfig, "precompose(SPEC; a; c) needs three arguments");
    return precompose_automorphism(parse_map_spec(parts[0], config),
                                   parse_complex(parts[1]),
                                   parse_complex(parts[2]));
  }
  auto parse_zeros = [&](const std::string& body) {
    std::vector<complex> zeros;
    for (const std::string& part : split_args(body, ','))
      zeros.push_back(parse_complex(part));
    return zeros;
  };
  if (std::string body = call_body("bl-int"); !body.empty())
    return interior_from_blaschke(BlaschkeProduct(parse_zeros(body)));
  if (std::string body = call_body("bl-ext"); !body.empty())
    return exterior_from_blaschke(BlaschkeProduct(parse_zeros(body)));
  fail(ErrorCode::BadConfig, "unknown map spec '" + spec + "'");
}

MapPtr map_from_section(const KeyValueSection& sec, const RunConfig* config) {
  const std::string kind = sec.get("kind");
  if (kind == "strip") return make_strip();
  if (kind == "koebe") return make_koebe();
  if (kind == "sector") return make_sector(sec.get_double("alpha"));
  if (kind == "lens") return make_lens(sec.get_double("alpha"));
  if (kind == "moebius")
    return make_moebius_map(moebius_checked(sec.get_complex("a"),
                                            sec.get_complex("b"),
                                            sec.get_complex("c"),
                                            sec.get_complex("d")));
  if (kind == "polynomial") return make_polynomial(sec.get_complex_list("coeffs"));
  if (kind == "polygon-interior" || kind == "interior") {
    std::vector<double> alphas = sec.get_double_list("angles");
    if (sec.has("prevertices"))
      return interior_from_data(
          PolygonData(sec.get_double_list("prevertices"), alphas));
    if (alphas.size() == 3)
      return interior_from_data(
          triangle_prevertices_normalized(alphas[0], alphas[1], alphas[2]));
    fail(ErrorCode::BadConfig,
         "polygon-interior needs prevertices (except normalized triangles)");
  }
  if (kind == "blaschke-interior")
    return interior_from_blaschke(BlaschkeProduct(
        sec.get_complex_list("zeros"),
        sec.has("rotation") ? sec.get_complex("rotation") : complex(1.0, 0.0)));
  if (kind == "blaschke-exterior" || kind == "exterior")
    return exterior_from_blaschke(BlaschkeProduct(
        sec.get_complex_list("zeros"),
        sec.has("rotation") ? sec.get_complex("rotation") : complex(1.0, 0.0)));
  if (kind == "dual") return dual_map(parse_map_spec(sec.get("source"), config));
  if (kind == "precompose")
    return precompose_automorphism(parse_map_spec(sec.get("source"), config),
                                   sec.get_complex("center"),
                                   sec.has("rot") ? sec.get_complex("rot")
                                                  : complex(1.0, 0.0));
  fail(ErrorCode::BadConfig, "unknown map kind '" + kind + "'");
}

}  // namespace

MapPtr parse_map_spec(const std::string& spec_raw, const RunConfig* config) {
  std::string spec = trim(spec_raw);
  if (spec.empty()) fail(ErrorCode::BadConfig, "empty map spec");
  if (config) {
    auto it = config->maps.find(spec);
    if (it != config->maps.end()) return map_from_section(it->second, config);
  }
  return builtin_spec(spec, config);
}

MapPtr polygon_from_file(const std::string& path) {
  RunConfig cfg = RunConfig::parse_file(path);
  const KeyValueSection& sec = cfg.global;
  std::string kind = sec.has("kind") ? sec.get("kind") : "interior";
  if (kind == "interior") {
    std::vector<double> alphas = sec.get_double_list("angles");
    if (sec.has("prevertices"))
      return interior_from_data(
          PolygonData(sec.get_double_list("prevertices"), alphas));
    if (alphas.size() == 3)
      return interior_from_data(
          triangle_prevertices_normalized(alphas[0], alphas[1], alphas[2]));
    fail(ErrorCode::BadConfig, "polygon file needs prevertices");
  }
  if (kind == "exterior") {
    if (!sec.has("zeros"))
      fail(ErrorCode::BadConfig,
           "exterior polygon files are specified by Blaschke zeros");
    return exterior_from_blaschke(BlaschkeProduct(
        sec.get_complex_list("zeros"),
        sec.has("rotation") ? sec.get_complex("rotation") : complex(1.0, 0.0)));
  }
  fail(ErrorCode::BadConfig, "polygon kind must be interior or exterior");
}

}  // namespace bma
