#ifndef ASSOUAD_KIT_MANIFEST_HPP
#define ASSOUAD_KIT_MANIFEST_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "assouad_kit/error.hpp"
#include "assouad_kit/json_io.hpp"

namespace akit {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64 of a byte string, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  return fnv1a_hex(std::string(std::istreambuf_iterator<char>(in), {}));
}

/// Provenance attached to every file the CLI writes.
struct RunManifest {
  std::vector<std::string> command_line;
  /// (path, fnv1a-64) per input file.
  std::vector<std::pair<std::string, std::string>> input_hashes;
  std::vector<std::uint64_t> seeds;
  std::string version = kToolVersion;
  double wall_time_seconds = 0.0;

  void add_input(const std::string& path) { input_hashes.emplace_back(path, file_hash(path)); }

  json to_json() const {
    json inputs = json::array();
    for (const auto& [p, h] : input_hashes) inputs.push_back({{"path", p}, {"fnv1a64", h}});
    return {{"command_line", command_line},
            {"inputs", inputs},
            {"seeds", seeds},
            {"version", version},
            {"wall_time_seconds", wall_time_seconds}};
  }

  /// One-line form for CSV comment lines.
  std::string comment_line() const { return "manifest " + to_json().dump(); }
};

}  // namespace akit

#endif  // ASSOUAD_KIT_MANIFEST_HPP
