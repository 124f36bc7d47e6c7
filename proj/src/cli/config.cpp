#include "regtor/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "regtor/cli/polynomial_parser.hpp"

namespace regtor::cli {

namespace {

using Kind = ConfigError::Kind;

const std::vector<std::string> kKeys = {"base", "vars",    "weights", "sequence", "s_max",
                                        "degree_max", "seed", "checks",  "output",   "format"};

[[noreturn]] void invalid(const std::string& message) { throw ConfigError(Kind::kValidation, message); }

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// A raw value with the position of its first character.
struct Field {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

/// A list item with its column within the line.
struct Item {
  std::string text;
  std::size_t column = 0;
};

std::vector<Item> split_list(const Field& f) {
  std::vector<Item> items;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = f.text.find(',', start);
    std::string_view piece = std::string_view(f.text).substr(start, comma == std::string::npos ? std::string::npos
                                                                                                : comma - start);
    std::size_t lead = 0;
    while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
    std::string t = trim(piece);
    if (t.empty()) throw ConfigError(Kind::kParse, "empty list entry", f.line, f.column + start + lead);
    items.push_back({t, f.column + start + lead});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

std::uint64_t parse_unsigned(const std::string& text, std::size_t line, std::size_t column, std::uint64_t max) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ConfigError(Kind::kParse, "expected a nonnegative integer, got '" + text + "'", line, column);
  }
  if (text.size() > 19 || std::stoull(text) > max) {
    throw ConfigError(Kind::kParse, "integer out of range: " + text, line, column);
  }
  return std::stoull(text);
}

/// Raw fields of the config, before validation.
struct RawConfig {
  std::map<std::string, Field> scalars;
  std::map<std::string, std::vector<Item>> lists;
  std::map<std::string, Field> positions;
};

RawConfig parse_key_value(std::string_view text) {
  RawConfig raw;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    const std::size_t first = line.find_first_not_of(" \t");
    if (eq == std::string::npos) throw ConfigError(Kind::kParse, "expected 'key = value'", number, first + 1);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ConfigError(Kind::kParse, "unknown key '" + key + "'", number, first + 1);
    }
    if (raw.positions.count(key)) throw ConfigError(Kind::kParse, "duplicate key '" + key + "'", number, first + 1);
    std::size_t vstart = eq + 1;
    while (vstart < line.size() && std::isspace(static_cast<unsigned char>(line[vstart]))) ++vstart;
    Field f{trim(std::string_view(line).substr(eq + 1)), number, vstart + 1};
    if (f.text.empty()) throw ConfigError(Kind::kParse, "missing value for '" + key + "'", number, vstart + 1);
    raw.positions[key] = f;
    if (key == "vars" || key == "weights" || key == "sequence" || key == "checks") {
      raw.lists[key] = split_list(f);
    } else {
      raw.scalars[key] = f;
    }
  }
  return raw;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

RawConfig parse_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ConfigError(Kind::kParse, what, line, column);
  }
  if (!j.is_object()) throw ConfigError(Kind::kParse, "top level must be an object", 1, 1);
  RawConfig raw;
  auto to_text = [](const Json& v, const std::string& key) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    invalid("field '" + key + "' must be a string or nonnegative integer");
  };
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) invalid("unknown key '" + key + "'");
    raw.positions[key] = Field{};
    if (key == "vars" || key == "weights" || key == "sequence" || key == "checks") {
      if (key == "checks" && value.is_string()) {
        raw.lists[key] = {Item{value.get<std::string>(), 0}};
        continue;
      }
      if (!value.is_array()) invalid("field '" + key + "' must be an array");
      std::vector<Item> items;
      for (const auto& v : value) items.push_back({to_text(v, key), 0});
      raw.lists[key] = items;
    } else {
      raw.scalars[key] = Field{to_text(value, key), 0, 0};
    }
  }
  return raw;
}

RunConfig validate(const RawConfig& raw) {
  RunConfig c;
  auto scalar = [&](const std::string& key) -> const Field* {
    auto it = raw.scalars.find(key);
    return it == raw.scalars.end() ? nullptr : &it->second;
  };
  auto number = [&](const std::string& key, std::uint64_t fallback, std::uint64_t max) {
    const Field* f = scalar(key);
    return f ? parse_unsigned(f->text, f->line, f->column, max) : fallback;
  };

  if (const Field* f = scalar("base")) c.base = f->text;
  const linalg::BaseRing ring = parse_base_ring(c.base);
  c.base = base_ring_spec(ring);

  if (!raw.lists.count("vars")) invalid("missing required key 'vars'");
  if (!raw.lists.count("sequence")) invalid("missing required key 'sequence'");
  std::set<std::string> seen;
  for (const auto& item : raw.lists.at("vars")) {
    const auto& v = item.text;
    const bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_') &&
                    std::all_of(v.begin(), v.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
    if (!ok) invalid("variable name '" + v + "' is not an identifier");
    if (!seen.insert(v).second) invalid("variable '" + v + "' is listed twice");
    c.vars.push_back(v);
  }
  if (c.vars.empty()) invalid("at least one variable is required");
  if (c.vars.size() > 16) invalid("at most 16 variables are supported");

  if (raw.lists.count("weights")) {
    for (const auto& item : raw.lists.at("weights")) {
      auto w = parse_unsigned(item.text, raw.positions.at("weights").line, item.column, 1000);
      if (w == 0) invalid("weights must be positive");
      c.weights.push_back(static_cast<unsigned>(w));
    }
    if (c.weights.size() != c.vars.size()) invalid("weights and vars have different lengths");
  } else {
    c.weights.assign(c.vars.size(), 1);
  }

  const auto& seq_items = raw.lists.at("sequence");
  if (seq_items.size() != c.vars.size()) {
    invalid("sequence has " + std::to_string(seq_items.size()) + " entries but there are " +
            std::to_string(c.vars.size()) + " variables");
  }
  std::vector<poly::Polynomial> polys;
  for (const auto& item : seq_items) {
    try {
      polys.push_back(parse_polynomial(item.text, c.vars, ring));
    } catch (const PolynomialSyntaxError& e) {
      const std::size_t line = raw.positions.at("sequence").line;
      throw ConfigError(Kind::kParse, "in '" + item.text + "': " + e.what(), line,
                        line ? item.column + e.column() - 1 : 0);
    }
  }
  c.s_max = static_cast<unsigned>(number("s_max", 3, 64));
  c.degree_max = static_cast<unsigned>(number("degree_max", 8, 256));
  c.seed = number("seed", 0, std::numeric_limits<std::uint64_t>::max());
  if (c.s_max < 1) invalid("s_max must be at least 1");

  for (std::size_t j = 0; j < polys.size(); ++j) {
    if (polys[j].is_zero()) invalid("sequence entry " + std::to_string(j + 1) + " is zero");
  }
  std::shared_ptr<const poly::RingContext> ctx;
  try {
    ctx = std::make_shared<const poly::RingContext>(ring, c.vars, c.weights, polys);
  } catch (const std::invalid_argument& e) {
    for (std::size_t j = 0; j < polys.size(); ++j) {
      std::set<unsigned> degrees;
      for (const auto& [m, coef] : polys[j].terms()) {
        unsigned d = 0;
        for (std::size_t i = 0; i < m.nvars(); ++i) d += m[i] * c.weights[i];
        degrees.insert(d);
      }
      if (degrees.size() > 1) {
        invalid("sequence entry '" + seq_items[j].text + "' is not homogeneous");
      }
    }
    invalid(e.what());
  }
  for (std::size_t j = 0; j < polys.size(); ++j) c.sequence.push_back(ctx->render(polys[j]));
  if (c.degree_max < ctx->max_seq_degree()) {
    invalid("degree_max " + std::to_string(c.degree_max) + " is below the largest sequence degree " +
            std::to_string(ctx->max_seq_degree()));
  }
  for (std::size_t j = 0; j < polys.size(); ++j) {
    if (ctx->seq_degree(j) == 0) invalid("sequence entry '" + seq_items[j].text + "' has degree 0");
  }

  if (raw.lists.count("checks")) {
    std::vector<std::string> names;
    for (const auto& item : raw.lists.at("checks")) names.push_back(item.text);
    c.checks = resolve_checks(names);
  }
  if (const Field* f = scalar("output")) c.output = f->text;
  if (const Field* f = scalar("format")) {
    if (f->text == "json") {
      c.format = OutputFormat::kJson;
    } else if (f->text == "text") {
      c.format = OutputFormat::kText;
    } else {
      invalid("format must be json or text, got '" + f->text + "'");
    }
  }
  return c;
}

}  // namespace

ConfigError::ConfigError(Kind kind, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(
          (kind == Kind::kParse ? std::string("PARSE_ERROR") : std::string("VALIDATION_ERROR")) +
          (line ? " at line " + std::to_string(line) + ", column " + std::to_string(column) : std::string()) +
          ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

linalg::BaseRing parse_base_ring(std::string_view spec) {
  const std::string s = trim(spec);
  if (s == "Z") return linalg::BaseRing::integers();
  if (s == "Q") return linalg::BaseRing::rationals();
  std::string digits;
  if (s.rfind("Fp", 0) == 0) {
    digits = trim(std::string_view(s).substr(2));
  } else if (s.rfind("F", 0) == 0) {
    digits = s.substr(1);
  } else {
    invalid("base must be Z, Q or 'Fp <prime>', got '" + s + "'");
  }
  if (digits.empty() || digits.size() > 10 ||
      !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    invalid("base must be Z, Q or 'Fp <prime>', got '" + s + "'");
  }
  const unsigned long long p = std::stoull(digits);
  if (p >= (1ull << 31) || mpz_probab_prime_p(mpz_class(std::to_string(p)).get_mpz_t(), 30) == 0) {
    invalid(digits + " is not prime");
  }
  return linalg::BaseRing::prime_field(static_cast<std::uint32_t>(p));
}

std::string base_ring_spec(const linalg::BaseRing& ring) {
  const std::string name = ring.name();
  if (name == "Z" || name == "Q") return name;
  return "Fp " + name.substr(1);
}

std::vector<suite::CheckId> resolve_checks(const std::vector<std::string>& names) {
  std::set<suite::CheckId> chosen;
  for (const auto& n : names) {
    if (n == "none") {
      continue;
    } else if (n == "all") {
      chosen.insert(suite::all_checks().begin(), suite::all_checks().end());
    } else if (auto id = suite::parse_check_id(n)) {
      chosen.insert(*id);
    } else {
      invalid("unknown check id '" + n + "'");
    }
  }
  std::vector<suite::CheckId> out;
  for (auto id : suite::all_checks()) {
    if (chosen.count(id)) out.push_back(id);
  }
  return out;
}

RunConfig parse_config(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return validate(parse_json(text));
  return validate(parse_key_value(text));
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) invalid("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string render_config(const RunConfig& config) {
  auto join = [](const auto& items, auto fn) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + fn(items[i]);
    return out;
  };
  std::ostringstream os;
  os << "base = " << config.base << "\n";
  os << "vars = " << join(config.vars, [](const std::string& s) { return s; }) << "\n";
  os << "weights = " << join(config.weights, [](unsigned w) { return std::to_string(w); }) << "\n";
  os << "sequence = " << join(config.sequence, [](const std::string& s) { return s; }) << "\n";
  os << "s_max = " << config.s_max << "\n";
  os << "degree_max = " << config.degree_max << "\n";
  os << "seed = " << config.seed << "\n";
  if (config.checks == suite::all_checks()) {
    os << "checks = all\n";
  } else if (config.checks.empty()) {
    os << "checks = none\n";
  } else {
    os << "checks = " << join(config.checks, [](suite::CheckId id) { return suite::to_string(id); }) << "\n";
  }
  if (!config.output.empty()) os << "output = " << config.output << "\n";
  os << "format = " << (config.format == OutputFormat::kJson ? "json" : "text") << "\n";
  return os.str();
}

std::shared_ptr<const poly::RingContext> build_context(const RunConfig& config) {
  const auto ring = parse_base_ring(config.base);
  std::vector<poly::Polynomial> polys;
  for (const auto& s : config.sequence) polys.push_back(parse_polynomial(s, config.vars, ring));
  return std::make_shared<const poly::RingContext>(ring, config.vars, config.weights, std::move(polys));
}

suite::RunOptions run_options(const RunConfig& config, unsigned threads, bool timings) {
  suite::RunOptions o;
  o.s_max = config.s_max;
  o.degree_max = config.degree_max;
  o.seed = config.seed;
  o.threads = threads;
  o.timings = timings;
  return o;
}

}  // namespace regtor::cli
