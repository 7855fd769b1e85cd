#include <doctest.h>

#include "cspstream/formats.hpp"
#include "helpers.hpp"

#include <sstream>

using namespace cspstream;
using testing::Q;

namespace {

Stream parse_stream(const std::string& text) {
  std::istringstream in(text);
  return read_stream(in);
}

Dist parse_dist(const std::string& text) {
  std::istringstream in(text);
  return read_dist(in);
}

std::size_t parse_error_line(const std::string& text, bool dist = false) {
  try {
    if (dist) {
      parse_dist(text);
    } else {
      parse_stream(text);
    }
  } catch (const ParseError& e) {
    return e.line_number;
  }
  return 0;
}

}  // namespace

TEST_CASE("stream text format") {
  const Stream s = parse_stream(
      "# header comment\n"
      "CSPSTREAM v1\n"
      "n=4 k=2\n"
      "+ 1 2 +1 -1   # trailing comment\n"
      "\n"
      "- 1 2 +1 -1\n"
      "+ 4 3 1 \xE2\x88\x92" "1\n"
      "\xE2\x88\x92 4 3 +1 -1\n");
  CHECK(s.n == 4);
  CHECK(s.k == 2);
  REQUIRE(s.events.size() == 4);
  CHECK(s.events[0] == StreamEvent{true, Constraint{{0, 1}, {1, -1}}});
  CHECK(s.events[1] == StreamEvent{false, Constraint{{0, 1}, {1, -1}}});
  CHECK(s.events[2] == StreamEvent{true, Constraint{{3, 2}, {1, -1}}});
  CHECK_FALSE(s.events[3].insert);

  std::ostringstream os;
  write_stream(os, s);
  CHECK(os.str() == "CSPSTREAM v1\nn=4 k=2\n+ 1 2 +1 -1\n- 1 2 +1 -1\n+ 4 3 +1 -1\n- 4 3 +1 -1\n");
}

TEST_CASE("stream parse errors carry line numbers") {
  CHECK(parse_error_line("CSPSTREAM v2\nn=3 k=2\n") == 1);
  CHECK(parse_error_line("CSPSTREAM v1\nn=3\n") == 2);
  CHECK(parse_error_line("CSPSTREAM v1\nn=3 k=7\n") == 2);
  CHECK(parse_error_line("CSPSTREAM v1\nn=3 k=2\n+ 1 2 +1 -1\n* 1 2 +1 -1\n") == 4);
  CHECK(parse_error_line("CSPSTREAM v1\nn=3 k=2\n+ 1 4 +1 -1\n") == 3);
  CHECK(parse_error_line("CSPSTREAM v1\nn=3 k=2\n+ 1 0 +1 -1\n") == 3);
  CHECK(parse_error_line("CSPSTREAM v1\nn=3 k=2\n+ 1 1 +1 -1\n") == 3);
  CHECK(parse_error_line("CSPSTREAM v1\nn=3 k=2\n+ 1 2 +2 -1\n") == 3);
  CHECK(parse_error_line("CSPSTREAM v1\nn=3 k=2\n+ 1 2 +1\n") == 3);
  CHECK(parse_error_line("CSPSTREAM v1\nn=3 k=2\n+ 1 x +1 -1\n") == 3);
  CHECK(parse_error_line("") == 0);
  CHECK_THROWS_AS(parse_stream(""), ParseError);
}

TEST_CASE("stream round trip") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    Stream s;
    s.k = 1 + trial % 6;
    s.n = static_cast<std::size_t>(s.k) + rng() % 20;
    for (int i = 0; i < 30; ++i) s.events.push_back({(rng() & 1) != 0, testing::random_constraint(s.n, s.k, rng)});
    std::ostringstream os;
    write_stream(os, s);
    CHECK(parse_stream(os.str()) == s);
  }
}

TEST_CASE("distribution format") {
  const Dist d = parse_dist("DIST v1\nk=2\n00 1/4\n11 1/2\n01 0\n10 0.25\n");
  CHECK(d == Dist(2, {Q(1, 4), Q(0), Q(1, 4), Q(1, 2)}));
  std::ostringstream os;
  write_dist(os, d);
  CHECK(os.str() == "DIST v1\nk=2\n00 1/4\n01 0\n10 1/4\n11 1/2\n");
  CHECK(parse_dist(os.str()) == d);

  CHECK(parse_error_line("DIST v1\nk=2\n00 1/4\n01 1/4\n10 1/4\n11 1/3\n", true) > 0);
  CHECK(parse_error_line("DIST v1\nk=2\n00 1/2\n00 1/2\n10 0\n11 0\n", true) == 4);
  CHECK(parse_error_line("DIST v1\nk=2\n00 1/2\n01 1/2\n10 0\n", true) > 0);
  CHECK(parse_error_line("DIST v1\nk=2\n00 1\n01 -1/2\n10 1/2\n11 0\n", true) == 4);
  CHECK(parse_error_line("DIST v1\nk=2\n000 1\n", true) == 3);
  CHECK(parse_error_line("DIST v0\n", true) == 1);

  std::mt19937_64 rng(4);
  for (int k = 1; k <= 6; ++k) {
    const Dist r = testing::random_dist(k, rng);
    std::ostringstream o;
    write_dist(o, r);
    CHECK(parse_dist(o.str()) == r);
  }
}

TEST_CASE("point strings") {
  CHECK(point_string(0, 3) == "000");
  CHECK(point_string(encode({1, -1, 1}), 3) == "101");
  CHECK(parse_point("101", 3) == 5);
  CHECK_THROWS(parse_point("12", 2));
  CHECK_THROWS(parse_point("1", 2));
}

TEST_CASE("trace round trip") {
  const NonnegFn a{3, {Q(1, 8), Q(1, 8), Q(1, 4), Q(0), Q(1, 8), Q(1, 8), Q(1, 8), Q(1, 8)}};
  const PolarizationTrace t = polarize_full(a);
  REQUIRE_FALSE(t.steps.empty());
  std::stringstream ss;
  write_trace(ss, t);
  const PolarizationTrace back = read_trace(ss);
  CHECK(back.final == t.final);
  REQUIRE(back.steps.size() == t.steps.size());
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    CHECK(back.steps[i].u == t.steps[i].u);
    CHECK(back.steps[i].v == t.steps[i].v);
    CHECK(back.steps[i].eps == t.steps[i].eps);
    CHECK(back.steps[i].phi_before == t.steps[i].phi_before);
    CHECK(back.steps[i].phi_after == t.steps[i].phi_after);
  }
  std::istringstream broken("{\"step\":1}\n");
  CHECK_THROWS_AS(read_trace(broken), ParseError);
}

TEST_CASE("metadata round trip") {
  GenMetadata m;
  m.mode = "padded";
  m.n = 6;
  m.k = 2;
  m.T = 2;
  m.alpha_m = Q(1, 3);
  m.tau = Q(1, 2);
  m.seed = 18446744073709551615ull;
  m.prefix = 4;
  m.x_star = Assignment{1, -1, 1, 1, -1, -1};
  m.masks = {3, 0, 1, 2, 3, 3, 0, 1};
  std::stringstream ss;
  write_metadata(ss, m);
  CHECK(read_metadata(ss) == m);

  m.x_star.reset();
  std::stringstream hidden;
  write_metadata(hidden, m);
  CHECK(hidden.str().find("x_star") == std::string::npos);
  CHECK(read_metadata(hidden) == m);
}
