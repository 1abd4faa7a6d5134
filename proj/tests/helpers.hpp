#pragma once

#include "bagg/core.hpp"
#include "bagg/rational.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace bagg::testutil {

inline Rat R(const std::string& s) {
  auto r = parse_rational(s);
  if (!r) throw std::invalid_argument("bad rational literal in test: " + s);
  return *r;
}

inline std::vector<Rat> row(std::initializer_list<const char*> cells) {
  std::vector<Rat> out;
  for (const char* c : cells) out.push_back(R(c));
  return out;
}

inline Profile profile(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Rat>> raw;
  for (const auto& r : rows) raw.push_back(row(r));
  return validate_profile(raw);
}

// Fig. 1 pair of two-voter profiles.
inline Profile fig1a() { return profile({{"1/2", "1/2", "0"}, {"1/3", "1/3", "1/3"}}); }
inline Profile fig1b() { return profile({{"5/12", "7/24", "7/24"}, {"1/3", "1/3", "1/3"}}); }

inline Profile example51() {
  return profile({{"3/4", "0", "1/4", "0", "0"},
                  {"0", "3/4", "0", "1/4", "0"},
                  {"0", "0", "1/3", "1/3", "1/3"},
                  {"0", "0", "1/3", "1/3", "1/3"}});
}

inline Profile appc3_p() {
  return profile({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"1/2", "1/2", "0"}});
}

inline Profile appc3_pprime() {
  return profile({{"1/2", "1/2", "0"},
                  {"1/2", "1/2", "0"},
                  {"1/2", "0", "1/2"},
                  {"0", "1/2", "1/2"}});
}

inline Profile appb4() {
  return profile({{"5/6", "1/6", "0"}, {"5/6", "0", "1/6"}});
}

inline Profile appe1() {
  return profile({{"3/7", "0", "4/7", "0"},
                  {"0", "3/7", "4/7", "0"},
                  {"0", "0", "1", "0"},
                  {"2/7", "0", "0", "5/7"},
                  {"2/7", "0", "0", "5/7"},
                  {"0", "2/7", "0", "5/7"},
                  {"0", "2/7", "0", "5/7"}});
}

inline std::vector<Rat> alloc(std::initializer_list<const char*> cells) { return row(cells); }

}  // namespace bagg::testutil
