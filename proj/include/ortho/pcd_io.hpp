#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "ortho/errors.hpp"
#include "ortho/point_cloud.hpp"

namespace ortho {

namespace detail {

inline std::vector<std::string> splitTokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

// Strips a trailing '#' comment and returns the tokenized remainder.
inline std::vector<std::string> contentTokens(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
  return splitTokens(line);
}

inline double parseReal(const std::string& tok, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty())
    throw MalformedHeader(std::string("bad ") + what + " value: '" + tok + "'");
  return v;
}

inline long long parseInt(const std::string& tok, const char* what) {
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || tok.empty())
    throw MalformedHeader(std::string("bad ") + what + " value: '" + tok + "'");
  return v;
}

}  // namespace detail

// Reads an ascii PCD stream. Requires x y z plus color, either as one packed
// rgb field (r in bits 16-23, g in 8-15, b in 0-7 of the value reinterpreted
// as an unsigned integer) or as separate r g b fields on the 0-255 scale.
// Fields the toolkit does not know are skipped by position.
inline PointCloud parsePcd(std::istream& in) {
  std::vector<std::string> fields;
  std::vector<char> types;
  std::vector<long long> counts;
  long long width = -1, height = -1, points = -1;
  bool have_size = false, data_reached = false;

  std::string line;
  while (std::getline(in, line)) {
    auto tok = detail::contentTokens(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (key == "VERSION" || key == "VIEWPOINT") continue;
    if (key == "FIELDS") {
      fields.assign(tok.begin() + 1, tok.end());
    } else if (key == "SIZE") {
      have_size = true;
      if (tok.size() != fields.size() + 1)
        throw MalformedHeader("SIZE arity does not match FIELDS");
    } else if (key == "TYPE") {
      types.clear();
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (tok[i].size() != 1) throw MalformedHeader("bad TYPE token: " + tok[i]);
        types.push_back(tok[i][0]);
      }
    } else if (key == "COUNT") {
      counts.clear();
      for (std::size_t i = 1; i < tok.size(); ++i)
        counts.push_back(detail::parseInt(tok[i], "COUNT"));
    } else if (key == "WIDTH") {
      if (tok.size() != 2) throw MalformedHeader("WIDTH wants one value");
      width = detail::parseInt(tok[1], "WIDTH");
    } else if (key == "HEIGHT") {
      if (tok.size() != 2) throw MalformedHeader("HEIGHT wants one value");
      height = detail::parseInt(tok[1], "HEIGHT");
    } else if (key == "POINTS") {
      if (tok.size() != 2) throw MalformedHeader("POINTS wants one value");
      points = detail::parseInt(tok[1], "POINTS");
    } else if (key == "DATA") {
      if (tok.size() != 2 || tok[1] != "ascii")
        throw MalformedHeader("only DATA ascii is supported");
      data_reached = true;
      break;
    } else {
      throw MalformedHeader("unknown header key: " + key);
    }
  }

  if (!data_reached) throw MalformedHeader("header ended before DATA");
  if (fields.empty()) throw MalformedHeader("header missing FIELDS");
  if (!have_size) throw MalformedHeader("header missing SIZE");
  if (types.size() != fields.size())
    throw MalformedHeader("TYPE arity does not match FIELDS");
  if (counts.empty()) throw MalformedHeader("header missing COUNT");
  if (counts.size() != fields.size())
    throw MalformedHeader("COUNT arity does not match FIELDS");
  for (long long c : counts)
    if (c != 1) throw MalformedHeader("only COUNT 1 fields are supported");
  if (width < 0) throw MalformedHeader("header missing WIDTH");
  if (height < 0) throw MalformedHeader("header missing HEIGHT");
  if (points < 0) throw MalformedHeader("header missing POINTS");
  if (width * height != points)
    throw MalformedHeader("WIDTH x HEIGHT does not equal POINTS");

  auto fieldIndex = [&](const char* name) -> int {
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (fields[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int ix = fieldIndex("x"), iy = fieldIndex("y"), iz = fieldIndex("z");
  if (ix < 0 || iy < 0 || iz < 0) throw MalformedHeader("FIELDS missing x y z");
  const int irgb = fieldIndex("rgb");
  const int ir = fieldIndex("r"), ig = fieldIndex("g"), ib = fieldIndex("b");
  const bool packed = irgb >= 0;
  if (!packed && (ir < 0 || ig < 0 || ib < 0))
    throw MalformedHeader("FIELDS missing color (rgb or r g b)");

  PointCloud cloud;
  cloud.resize(points);

  auto coord = [](const std::string& tok) -> double {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty())
      throw MalformedHeader("bad coordinate token: '" + tok + "'");
    if (!std::isfinite(v))
      throw NonFiniteCoordinate("non-finite coordinate: '" + tok + "'");
    return v;
  };
  auto channel = [](double v) -> std::uint8_t {
    return static_cast<std::uint8_t>(
        std::min(255.0, std::max(0.0, std::round(v))));
  };

  long long row = 0;
  while (row < points) {
    if (!std::getline(in, line))
      throw PointCountMismatch("data ended at row " + std::to_string(row) +
                               " of " + std::to_string(points));
    auto tok = detail::contentTokens(line);
    if (tok.empty()) continue;
    if (tok.size() != fields.size())
      throw MalformedHeader("row " + std::to_string(row) + " has " +
                            std::to_string(tok.size()) + " values, expected " +
                            std::to_string(fields.size()));
    cloud.positions(row, 0) = coord(tok[ix]);
    cloud.positions(row, 1) = coord(tok[iy]);
    cloud.positions(row, 2) = coord(tok[iz]);
    if (packed) {
      std::uint32_t v = 0;
      if (types[irgb] == 'F') {
        const float f = static_cast<float>(detail::parseReal(tok[irgb], "rgb"));
        v = std::bit_cast<std::uint32_t>(f);
      } else {
        v = static_cast<std::uint32_t>(detail::parseInt(tok[irgb], "rgb"));
      }
      cloud.colors(row, 0) = static_cast<std::uint8_t>((v >> 16) & 0xff);
      cloud.colors(row, 1) = static_cast<std::uint8_t>((v >> 8) & 0xff);
      cloud.colors(row, 2) = static_cast<std::uint8_t>(v & 0xff);
    } else {
      cloud.colors(row, 0) = channel(detail::parseReal(tok[ir], "r"));
      cloud.colors(row, 1) = channel(detail::parseReal(tok[ig], "g"));
      cloud.colors(row, 2) = channel(detail::parseReal(tok[ib], "b"));
    }
    ++row;
  }
  while (std::getline(in, line)) {
    if (!detail::contentTokens(line).empty())
      throw PointCountMismatch("more data rows than declared POINTS");
  }
  return cloud;
}

inline PointCloud parsePcdFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UnreadableFile("cannot open " + path.string());
  PointCloud cloud = parsePcd(in);
  cloud.view_id = path.stem().string();
  return cloud;
}

// Writes the canonical ascii form: coordinates with 17 significant digits and
// the packed rgb value in decimal, so parse(render(cloud)) reproduces the
// cloud bit for bit.
inline std::string renderPcd(const PointCloud& cloud) {
  const Eigen::Index n = cloud.size();
  std::string out;
  out.reserve(128 + static_cast<std::size_t>(n) * 80);
  out += "FIELDS x y z rgb\n";
  out += "SIZE 8 8 8 4\n";
  out += "TYPE F F F U\n";
  out += "COUNT 1 1 1 1\n";
  out += "WIDTH " + std::to_string(n) + "\n";
  out += "HEIGHT 1\n";
  out += "VIEWPOINT 0 0 0 1 0 0 0\n";
  out += "POINTS " + std::to_string(n) + "\n";
  out += "DATA ascii\n";
  char buf[96];
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::uint32_t packed =
        (static_cast<std::uint32_t>(cloud.colors(i, 0)) << 16) |
        (static_cast<std::uint32_t>(cloud.colors(i, 1)) << 8) |
        static_cast<std::uint32_t>(cloud.colors(i, 2));
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %u\n",
                  cloud.positions(i, 0), cloud.positions(i, 1),
                  cloud.positions(i, 2), packed);
    out += buf;
  }
  return out;
}

inline void writePcdFile(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);  // binary: no newline translation
  if (!out) throw UnreadableFile("cannot write " + path.string());
  out << renderPcd(cloud);
  if (!out) throw UnreadableFile("short write to " + path.string());
}

}  // namespace ortho
