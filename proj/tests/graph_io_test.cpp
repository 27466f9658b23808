#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "bootperc/constructions.hpp"
#include "bootperc/graph_io.hpp"
#include "generators.hpp"

using namespace bootperc;

TEST(GraphIo, ParsesPath) { EXPECT_EQ(parse_graph("3 2\n0 1\n1 2"), path_graph(3)); }

TEST(GraphIo, TrailingBlankLinesTolerated) { EXPECT_EQ(parse_graph("3 2\n0 1\n1 2\n\n  \n"), path_graph(3)); }

std::size_t error_line(const std::string& text) {
  try {
    (void)parse_graph(text);
  } catch (const FormatError& e) {
    return e.line();
  }
  return 0;
}

TEST(GraphIo, Errors) {
  EXPECT_EQ(error_line("2 1\n0 0"), 2u);
  EXPECT_EQ(error_line(""), 1u);
  EXPECT_EQ(error_line("3"), 1u);
  EXPECT_EQ(error_line("0 0"), 1u);
  EXPECT_EQ(error_line("3 1\n0 5"), 2u);
  EXPECT_EQ(error_line("3 1\n1 0"), 2u);
  EXPECT_EQ(error_line("3 2\n0 1\n0 1"), 3u);
  EXPECT_EQ(error_line("3 2\n0 1"), 3u);
  EXPECT_EQ(error_line("3 1\n0 1\n1 2"), 3u);
  EXPECT_EQ(error_line("3 1\n0 x"), 2u);
  EXPECT_EQ(error_line("3 1\n0 -1"), 2u);
  EXPECT_EQ(error_line("2 2\n0 1\n0 1"), 1u);
}

TEST(GraphIo, SelfLoopMessage) {
  try {
    (void)parse_graph("2 1\n0 0");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
}

TEST(GraphIoProperty, RoundTrip) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const Graph g = gen::any_graph(rng, 80);
    EXPECT_EQ(parse_graph(to_graph_text(g)), g);
  }
}

TEST(GraphIo, FileRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "bootperc_io_test.txt").string();
  write_graph(petersen_graph(), path);
  EXPECT_EQ(read_graph(path), petersen_graph());
  std::remove(path.c_str());
  EXPECT_THROW((void)read_graph(path), Error);
}
