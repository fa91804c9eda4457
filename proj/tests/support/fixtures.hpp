#pragma once

#include <string>
#include <vector>

#include "ttpos/track_io.hpp"

namespace ttpos::testing {

inline std::string fixture_path(const std::string& name) { return std::string(TTPOS_FIXTURES) + "/" + name + ".track"; }

inline Neighbourhood fixture(const std::string& name) { return load_track(fixture_path(name)); }

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"torus_one_hole", "sphere_four_holes", "torus_trigon"};
  return names;
}

inline std::string fixture_text(const std::string& name) { return read_file(fixture_path(name)); }

}  // namespace ttpos::testing
