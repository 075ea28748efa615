#ifndef ASSOUAD_KIT_POINTSET_IO_HPP
#define ASSOUAD_KIT_POINTSET_IO_HPP

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "assouad_kit/error.hpp"
#include "assouad_kit/point_set.hpp"

namespace akit {

/// Shortest decimal text that parses back to the identical double.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    fail(ErrorKind::io, "malformed number '" + std::string(s) + "'");
  return v;
}

inline constexpr std::string_view kPointSetMagic = "# assouad-kit pointset v1";

/// Writes the v1 CSV format. Extra comment lines (for example a run manifest)
/// go directly after the header.
inline void write_pointset(std::ostream& os, const PointSet& set,
                           const std::vector<std::string>& comments = {}) {
  os << kPointSetMagic << ", d=" << set.dim() << ", resolution=" << format_double(set.resolution())
     << ", label=" << set.label() << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto p = set.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) os << ',';
      os << format_double(p[j]);
    }
    os << '\n';
  }
}

inline PointSet read_pointset(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind(kPointSetMagic, 0) != 0)
    fail(ErrorKind::io, "missing assouad-kit pointset v1 header");
  auto field = [&](std::string_view key) -> std::string {
    const auto pos = header.find(key);
    if (pos == std::string::npos) fail(ErrorKind::io, "header lacks field " + std::string(key));
    const auto start = pos + key.size();
    if (key == "label=") return header.substr(start);
    const auto end = header.find(',', start);
    return header.substr(start, end == std::string::npos ? std::string::npos : end - start);
  };
  const double d = parse_double(field("d="));
  if (d < 1 || d != static_cast<double>(static_cast<std::size_t>(d))) fail(ErrorKind::io, "bad dimension");
  const std::size_t dim = static_cast<std::size_t>(d);
  const double resolution = parse_double(field("resolution="));
  std::string label = field("label=");
  if (!label.empty() && label.back() == '\r') label.pop_back();

  std::vector<double> coords;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line == "\r") continue;
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      coords.push_back(parse_double(rest.substr(0, comma)));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (count != dim) fail(ErrorKind::io, "row has " + std::to_string(count) + " coordinates, expected " + std::to_string(dim));
  }
  return PointSet(dim, std::move(coords), resolution, std::move(label));
}

inline void save_pointset(const std::string& path, const PointSet& set,
                          const std::vector<std::string>& comments = {}) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::io, "cannot open " + path + " for writing");
  write_pointset(os, set, comments);
}

inline PointSet load_pointset(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::io, "cannot open " + path);
  return read_pointset(is);
}

/// Two-column table: a spectrum curve (theta, value) or a count table (k, log2 N).
struct CurveTable {
  std::string x_name = "theta";
  std::string y_name = "value";
  std::string label;
  std::vector<double> xs, ys;

  friend bool operator==(const CurveTable&, const CurveTable&) = default;
};

inline constexpr std::string_view kCurveMagic = "# assouad-kit curve v1";

inline void write_curve(std::ostream& os, const CurveTable& t, const std::vector<std::string>& comments = {}) {
  require(t.xs.size() == t.ys.size(), "curve columns differ in length");
  os << kCurveMagic << ", x=" << t.x_name << ", y=" << t.y_name << ", label=" << t.label << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < t.xs.size(); ++i) os << format_double(t.xs[i]) << ',' << format_double(t.ys[i]) << '\n';
}

inline CurveTable read_curve(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind(kCurveMagic, 0) != 0)
    fail(ErrorKind::io, "missing assouad-kit curve v1 header");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  auto field = [&](std::string_view key) -> std::string {
    const auto pos = header.find(key);
    if (pos == std::string::npos) fail(ErrorKind::io, "header lacks field " + std::string(key));
    const auto start = pos + key.size();
    if (key == "label=") return header.substr(start);
    const auto end = header.find(',', start);
    return header.substr(start, end == std::string::npos ? std::string::npos : end - start);
  };
  CurveTable t;
  t.x_name = field(", x=");
  t.y_name = field(", y=");
  t.label = field("label=");
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      fail(ErrorKind::io, "curve rows need exactly two columns: '" + line + "'");
    t.xs.push_back(parse_double(std::string_view(line).substr(0, comma)));
    t.ys.push_back(parse_double(std::string_view(line).substr(comma + 1)));
  }
  return t;
}

inline void save_curve(const std::string& path, const CurveTable& t, const std::vector<std::string>& comments = {}) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::io, "cannot open " + path + " for writing");
  write_curve(os, t, comments);
}

inline CurveTable load_curve(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::io, "cannot open " + path);
  return read_curve(is);
}

}  // namespace akit

#endif  // ASSOUAD_KIT_POINTSET_IO_HPP
