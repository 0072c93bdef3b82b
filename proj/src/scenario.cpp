#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "callctl/adversary.hpp"
#include "callctl/error.hpp"
#include "callctl/harness.hpp"
#include "callctl/online_algs.hpp"

namespace callctl {

namespace {

using nlohmann::json;

/// Input iterator over the raw text that remembers how far the parser read.
class TrackingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator(const char* p, const char** high_water)
      : p_(p), high_water_(high_water) {}

  reference operator*() const { return *p_; }
  TrackingIterator& operator++() {
    ++p_;
    if (p_ > *high_water_) *high_water_ = p_;
    return *this;
  }
  TrackingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  bool operator==(const TrackingIterator& o) const { return p_ == o.p_; }

 private:
  const char* p_;
  const char** high_water_;
};

/// Maps JSON pointers ("/traffic/requests/3") to 1-based source lines.
class LineMap {
 public:
  explicit LineMap(std::string_view text) : text_(text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n') newlines_.push_back(i);
    }
  }

  int line_at(std::size_t offset) const {
    return 1 + static_cast<int>(std::lower_bound(newlines_.begin(),
                                                 newlines_.end(), offset) -
                                newlines_.begin());
  }

  /// Line of the last token ending before `read_up_to`.
  int token_line(std::size_t read_up_to) const {
    std::size_t i = std::min(read_up_to, text_.size());
    while (i > 0 && std::isspace(static_cast<unsigned char>(text_[i - 1]))) --i;
    return line_at(i == 0 ? 0 : i - 1);
  }

  void set(const std::string& pointer, int line) { lines_[pointer] = line; }

  int lookup(std::string pointer) const {
    for (;;) {
      if (auto it = lines_.find(pointer); it != lines_.end()) return it->second;
      if (pointer.empty()) return 1;
      pointer.erase(pointer.rfind('/'));
    }
  }

 private:
  std::string_view text_;
  std::vector<std::size_t> newlines_;
  std::map<std::string, int> lines_;
};

class LineRecorder : public nlohmann::json_sax<json> {
 public:
  LineRecorder(LineMap& map, const char* begin, const char** high_water)
      : map_(map), begin_(begin), high_water_(high_water) {}

  bool null() override { return value(); }
  bool boolean(bool) override { return value(); }
  bool number_integer(number_integer_t) override { return value(); }
  bool number_unsigned(number_unsigned_t) override { return value(); }
  bool number_float(number_float_t, const string_t&) override {
    return value();
  }
  bool string(string_t&) override { return value(); }
  bool binary(binary_t&) override { return value(); }
  bool start_object(std::size_t) override {
    record();
    frames_.push_back({false, 0, {}});
    return true;
  }
  bool key(string_t& k) override {
    frames_.back().key = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override {
    record();
    frames_.push_back({true, 0, {}});
    return true;
  }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
  };

  std::string pointer() const {
    std::string p;
    for (const auto& f : frames_) {
      p += '/';
      p += f.array ? std::to_string(f.index) : f.key;
    }
    return p;
  }

  void record() {
    map_.set(pointer(), map_.token_line(static_cast<std::size_t>(
                            *high_water_ - begin_)));
  }

  void advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }

  bool value() {
    record();
    advance();
    return true;
  }

  bool close() {
    frames_.pop_back();
    advance();
    return true;
  }

  LineMap& map_;
  const char* begin_;
  const char** high_water_;
  std::vector<Frame> frames_;
};

/// Raises `E` with a location prefix for the given JSON pointer.
using Locator = std::function<std::string(const std::string& pointer)>;

template <typename E>
[[noreturn]] void raise(const Locator& at, const std::string& pointer,
                        const std::string& message) {
  throw E(at(pointer) + message);
}

CellId parse_cell(const json& j, const Locator& at, const std::string& ptr) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    raise<ConfigError>(at, ptr, "a cell must be an array [q, r] of integers");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

std::vector<CellId> parse_cells(const json& j, const Locator& at,
                                const std::string& ptr) {
  if (!j.is_array()) {
    raise<ConfigError>(at, ptr, "expected an array of [q, r] cells");
  }
  std::vector<CellId> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_cell(j[i], at, ptr + "/" + std::to_string(i)));
  }
  return out;
}

json cells_to_json(const std::vector<CellId>& cells) {
  json out = json::array();
  for (CellId c : cells) out.push_back({c.q, c.r});
  return out;
}

bool read_flag(const json& doc, const char* key, const Locator& at) {
  if (!doc.contains(key)) return false;
  if (!doc[key].is_boolean()) {
    raise<ConfigError>(at, std::string("/") + key,
                       std::string("'") + key + "' must be true or false");
  }
  return doc[key].get<bool>();
}

void validate(const ScenarioConfig& c, const Locator& at) {
  if (c.omega <= 0) {
    raise<ConfigError>(at, "/omega", "omega must be a positive integer");
  }
  AlgorithmSpec spec;
  try {
    spec = parse_algorithm(c.algorithm);
  } catch (const Error& e) {
    raise<ConfigError>(at, "/algorithm", e.what());
  }
  try {
    check_omega(spec, c.omega);
  } catch (const DivisibilityError& e) {
    raise<DivisibilityError>(at, "/omega", e.what());
  } catch (const ConfigError& e) {
    raise<ConfigError>(at, "/algorithm", e.what());
  }
  if (c.cells.empty()) {
    raise<ConfigError>(at, "/cells", "the cell list is empty");
  }
  std::set<CellId> seen;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    if (!seen.insert(c.cells[i]).second) {
      raise<ConfigError>(at, "/cells/" + std::to_string(i),
                         "cell " + to_string(c.cells[i]) + " is listed twice");
    }
  }
  if (c.traffic.adversary) {
    try {
      validate_adversary_selector(*c.traffic.adversary);
    } catch (const Error& e) {
      raise<ConfigError>(at, "/traffic/adversary", e.what());
    }
    if (*c.traffic.adversary == "fig2" || *c.traffic.adversary == "fig3") {
      const Network star = star_network();
      for (CellId s : star.cells()) {
        if (!seen.contains(s)) {
          raise<UnknownCellError>(at, "/cells",
                                  "adversary '" + *c.traffic.adversary +
                                      "' sends requests to cell " +
                                      to_string(s) +
                                      ", which is not in the cell list");
        }
      }
    }
    if (!c.traffic.requests.empty()) {
      raise<ConfigError>(at, "/traffic",
                         "traffic has both an adversary and requests");
    }
  }
  for (std::size_t i = 0; i < c.traffic.requests.size(); ++i) {
    if (!seen.contains(c.traffic.requests[i])) {
      raise<UnknownCellError>(at, "/traffic/requests/" + std::to_string(i),
                              "request " + std::to_string(i) + " targets cell " +
                                  to_string(c.traffic.requests[i]) +
                                  ", which is not in the cell list");
    }
  }
  if (c.verify_certificate) {
    if (!has_certificate(spec)) {
      raise<ConfigError>(at, "/verify_certificate",
                         "no certificate exists for algorithm '" +
                             c.algorithm + "'");
    }
    if (spec.kind == AlgorithmKind::Caco2 &&
        !is_triangle_free(Network(c.cells))) {
      raise<ConfigError>(at, "/cells",
                         "the caco2 certificate needs a triangle-free network");
    }
  }
}

}  // namespace

bool has_certificate(const AlgorithmSpec& spec) {
  return spec.kind == AlgorithmKind::Caco || spec.kind == AlgorithmKind::Caco2 ||
         (spec.kind == AlgorithmKind::PartitionFamily && spec.x_share == 2 &&
          spec.y_share == 1);
}

ScenarioConfig parse_scenario(std::string_view text, std::string_view source) {
  const std::string src(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(src + ": " + e.what());
  }

  LineMap lines(text);
  const char* high_water = text.data();
  LineRecorder recorder(lines, text.data(), &high_water);
  json::sax_parse(TrackingIterator(text.data(), &high_water),
                  TrackingIterator(text.data() + text.size(), &high_water),
                  &recorder);
  const Locator at = [&](const std::string& ptr) {
    return src + ":" + std::to_string(lines.lookup(ptr)) + ": ";
  };

  if (!doc.is_object()) raise<ConfigError>(at, "", "expected a JSON object");
  static const std::set<std::string> known{
      "name",      "omega",   "algorithm",          "cells",
      "traffic",   "compute_opt", "verify_certificate"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) {
      raise<ConfigError>(at, "/" + key, "unknown field '" + key + "'");
    }
  }

  ScenarioConfig c;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      raise<ConfigError>(at, "/name", "'name' must be a string");
    }
    c.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("omega")) raise<ConfigError>(at, "", "missing 'omega'");
  if (!doc["omega"].is_number_integer()) {
    raise<ConfigError>(at, "/omega", "'omega' must be an integer");
  }
  c.omega = doc["omega"].get<int>();
  if (!doc.contains("algorithm")) {
    raise<ConfigError>(at, "", "missing 'algorithm'");
  }
  if (!doc["algorithm"].is_string()) {
    raise<ConfigError>(at, "/algorithm", "'algorithm' must be a string");
  }
  c.algorithm = doc["algorithm"].get<std::string>();
  if (!doc.contains("cells")) raise<ConfigError>(at, "", "missing 'cells'");
  c.cells = parse_cells(doc["cells"], at, "/cells");

  if (!doc.contains("traffic")) raise<ConfigError>(at, "", "missing 'traffic'");
  const json& traffic = doc["traffic"];
  if (!traffic.is_object()) {
    raise<ConfigError>(at, "/traffic",
                       "'traffic' must be an object with 'adversary' or "
                       "'requests'");
  }
  for (const auto& [key, value] : traffic.items()) {
    if (key != "adversary" && key != "requests") {
      raise<ConfigError>(at, "/traffic/" + key,
                         "unknown traffic field '" + key + "'");
    }
  }
  if (traffic.contains("adversary")) {
    if (!traffic["adversary"].is_string()) {
      raise<ConfigError>(at, "/traffic/adversary",
                         "'adversary' must be a selector string");
    }
    c.traffic.adversary = traffic["adversary"].get<std::string>();
  }
  if (traffic.contains("requests")) {
    c.traffic.requests =
        parse_cells(traffic["requests"], at, "/traffic/requests");
  }
  if (!c.traffic.adversary && !traffic.contains("requests")) {
    raise<ConfigError>(at, "/traffic",
                       "'traffic' needs 'adversary' or 'requests'");
  }
  c.compute_opt = read_flag(doc, "compute_opt", at);
  c.verify_certificate = read_flag(doc, "verify_certificate", at);

  validate(c, at);
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string serialize_scenario(const ScenarioConfig& config) {
  json doc = json::object();
  doc["name"] = config.name;
  doc["omega"] = config.omega;
  doc["algorithm"] = config.algorithm;
  doc["cells"] = cells_to_json(config.cells);
  json traffic = json::object();
  if (config.traffic.adversary) {
    traffic["adversary"] = *config.traffic.adversary;
  } else {
    traffic["requests"] = cells_to_json(config.traffic.requests);
  }
  doc["traffic"] = std::move(traffic);
  doc["compute_opt"] = config.compute_opt;
  doc["verify_certificate"] = config.verify_certificate;
  return doc.dump(2) + "\n";
}

void validate_scenario(const ScenarioConfig& config) {
  validate(config, [](const std::string&) { return std::string(); });
}

}  // namespace callctl
