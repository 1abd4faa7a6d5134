/**
 * @file io.cpp
 */
#include "bagg/io.hpp"

#include <fstream>
#include <sstream>

namespace bagg {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_cell(int line, int col, const std::string& what) {
  std::ostringstream os;
  os << "parse error at line " << line << ", column " << col << ": " << what;
  throw ParseError(os.str());
}

}  // namespace

Profile parse_profile_csv(const std::string& text) {
  std::vector<std::vector<Rat>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    std::vector<Rat> row;
    std::istringstream cells(line);
    std::string cell;
    int col = 0;
    while (std::getline(cells, cell, ',')) {
      ++col;
      auto r = parse_rational(trim(cell));
      if (!r) fail_cell(lineno, col, "not a fraction or exact decimal: '" + trim(cell) + "'");
      row.push_back(*r);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("parse error: no voter rows in CSV input");
  try {
    return validate_profile(rows);
  } catch (const Error& e) {
    throw ParseError(std::string("parse error: ") + e.what());
  }
}

namespace {

Profile profile_from_json_value(const json& j) {
  if (!j.is_object() || !j.contains("votes") || !j["votes"].is_array())
    throw ParseError("parse error: JSON profile needs a \"votes\" array of rows");
  std::vector<std::vector<Rat>> rows;
  int lineno = 0;
  for (const auto& jrow : j["votes"]) {
    ++lineno;
    if (!jrow.is_array()) fail_cell(lineno, 1, "row is not an array");
    std::vector<Rat> row;
    int col = 0;
    for (const auto& cell : jrow) {
      ++col;
      if (!cell.is_string()) fail_cell(lineno, col, "cell is not a string literal");
      auto r = parse_rational(cell.get<std::string>());
      if (!r) fail_cell(lineno, col, "not a fraction or exact decimal: '" + cell.get<std::string>() + "'");
      row.push_back(*r);
    }
    rows.push_back(std::move(row));
  }
  try {
    return validate_profile(rows);
  } catch (const Error& e) {
    throw ParseError(std::string("parse error: ") + e.what());
  }
}

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("parse error: malformed JSON");
  return j;
}

}  // namespace

Profile parse_profile_json(const std::string& text) {
  return profile_from_json_value(parse_json_text(text));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

namespace {

bool has_json_extension(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

}  // namespace

Profile load_profile(const std::string& path) {
  std::string text = read_file(path);
  return has_json_extension(path) ? parse_profile_json(text) : parse_profile_csv(text);
}

WeightedProfile load_weighted_profile(const std::string& path, const std::string& weights_override) {
  std::string text = read_file(path);
  Profile p;
  std::vector<long> weights;
  if (has_json_extension(path)) {
    json j = parse_json_text(text);
    p = profile_from_json_value(j);
    if (weights_override.empty()) {
      if (!j.contains("weights") || !j["weights"].is_array())
        throw ParseError("parse error: weighted JSON profile needs a \"weights\" array");
      for (const auto& w : j["weights"]) {
        if (!w.is_number_integer()) throw ParseError("parse error: weights must be integers");
        weights.push_back(w.get<long>());
      }
    }
  } else {
    p = parse_profile_csv(text);
    if (weights_override.empty())
      throw ParseError("CSV weighted input needs an explicit weights override");
  }
  if (!weights_override.empty()) {
    std::istringstream cells(weights_override);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        weights.push_back(std::stol(trim(cell)));
      } catch (const std::exception&) {
        throw ParseError("parse error: bad weight literal '" + trim(cell) + "'");
      }
    }
  }
  try {
    return make_weighted(std::move(p), std::move(weights));
  } catch (const Error& e) {
    throw ParseError(std::string("parse error: ") + e.what());
  }
}

std::string profile_to_csv(const Profile& p) {
  std::ostringstream os;
  for (const auto& row : p.votes) {
    for (int j = 0; j < p.m; ++j) os << (j ? "," : "") << to_string(row[j]);
    os << "\n";
  }
  return os.str();
}

nlohmann::json profile_to_json(const Profile& p) {
  json rows = json::array();
  for (const auto& row : p.votes) {
    json jrow = json::array();
    for (const Rat& v : row) jrow.push_back(to_string(v));
    rows.push_back(std::move(jrow));
  }
  return json{{"votes", std::move(rows)}};
}

nlohmann::json rational_json(const Rat& r) {
  return json{{"frac", to_string(r)}, {"decimal", to_decimal_string(r)}};
}

nlohmann::json allocation_json(const std::vector<Rat>& values) {
  json arr = json::array();
  for (const Rat& v : values) arr.push_back(rational_json(v));
  return arr;
}

nlohmann::json matrix_json(const std::vector<std::vector<Rat>>& rows) {
  json arr = json::array();
  for (const auto& row : rows) arr.push_back(allocation_json(row));
  return arr;
}

}  // namespace bagg
