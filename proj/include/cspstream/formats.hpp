#pragma once

// Text formats: instance streams, distributions, polarization traces, generator metadata.

#include "cspstream/genhard.hpp"
#include "cspstream/polarize.hpp"
#include "cspstream/stream.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace cspstream {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_number(line) {}
  std::size_t line_number;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSPSTREAM v1 / n=<n> k=<k> / one event per line: `+|- j1..jk s1..sk`,
/// 1-based ids, signs +1/-1. `#` starts a comment.
Stream read_stream(std::istream& in);
void write_stream(std::ostream& out, const Stream& s);
Stream read_stream_file(const std::string& path);
void write_stream_file(const std::string& path, const Stream& s);

/// DIST v1 / k=<k> / 2^k lines `<bitstring> <p/q>`; must sum to exactly 1.
Dist read_dist(std::istream& in);
void write_dist(std::ostream& out, const Dist& d);
Dist read_dist_file(const std::string& path);
void write_dist_file(const std::string& path, const Dist& d);

/// Bitstring of a point: character t is '1' iff coordinate t is +1.
std::string point_string(unsigned index, int k);
unsigned parse_point(const std::string& s, int k);

/// JSON lines: one object per step, then {"final": ...}.
void write_trace(std::ostream& out, const PolarizationTrace& t);
PolarizationTrace read_trace(std::istream& in);

struct GenMetadata {
  std::string mode;
  std::size_t n = 0;
  int k = 0;
  std::size_t T = 0;
  Rational alpha_m;
  Rational tau;
  std::uint64_t seed = 0;
  std::size_t prefix = 0;
  std::optional<Assignment> x_star;  // omitted in hard mode
  std::vector<unsigned> masks;       // per event

  bool operator==(const GenMetadata&) const = default;
};

/// JSON lines: a header object, then one {"event", "mask"} object per event.
void write_metadata(std::ostream& out, const GenMetadata& m);
GenMetadata read_metadata(std::istream& in);

}  // namespace cspstream
