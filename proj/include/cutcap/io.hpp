#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "cutcap/errors.hpp"

namespace cutcap {

// 17 significant digits: round-trips any double.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw io_error("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace cutcap
