/**
 * @file io.hpp
 * @brief Exact profile file I/O and JSON report helpers for the CLI.
 *
 * Profiles are read from CSV (one voter per row; cells are fraction literals
 * "p/q" or exact decimals) or from JSON ({"votes": [["1/2","1/2","0"], ...]},
 * optionally with a parallel "weights" array of positive integers). Parsing is
 * exact: decimals are scaled by powers of ten, never converted through floats.
 */
#pragma once

#include "bagg/weighted.hpp"

#include <json.hpp>
#include <string>

namespace bagg {

/// Malformed input files; the message carries 1-based line/column positions.
struct ParseError : Error {
  using Error::Error;
};

Profile parse_profile_csv(const std::string& text);
Profile parse_profile_json(const std::string& text);

/// Dispatches on extension: ".json" -> JSON, anything else -> CSV.
Profile load_profile(const std::string& path);

/// Weights from a JSON "weights" array, or from an explicit comma-separated
/// override (used by the CLI for CSV inputs). The override wins when nonempty.
WeightedProfile load_weighted_profile(const std::string& path,
                                      const std::string& weights_override = "");

std::string profile_to_csv(const Profile& p);
nlohmann::json profile_to_json(const Profile& p);

/// {"frac": "p/q", "decimal": "<12 places, approximate>"}.
nlohmann::json rational_json(const Rat& r);
nlohmann::json allocation_json(const std::vector<Rat>& values);
nlohmann::json matrix_json(const std::vector<std::vector<Rat>>& rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace bagg
