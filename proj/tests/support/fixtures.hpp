#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "vass_asym/model.hpp"

namespace vass::testing {

inline std::string models_dir() { return VASS_ASYM_MODELS_DIR; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline VassMdp load_model(const std::string& file) {
  return parse_vass(read_text(models_dir() + "/" + file));
}

inline VassMdp random_walk() { return load_model("random_walk.json"); }
inline VassMdp four_mecs() { return load_model("four_mecs.json"); }
inline VassMdp non_dag() { return load_model("non_dag_2d.json"); }

}  // namespace vass::testing
