#pragma once

// JSON documents exchanged by the command-line tool. Variables are referred
// to by name; indices never appear in files.
//
// Instance:  {"variables": [..], "inputs": [{"vars": [..],
//             "directed": [[from, to], ..], "bidirected": [[a, b], ..]}, ..]}
//            Co-measured pairs not listed are absent.
// Solutions: {"variables": [..], "status": "complete", "elapsed_s": 0.1,
//             "explored": 42, "solutions": [[[from, to], ..], ..]}
// Graph:     {"variables": [..], "edges": [[from, to], ..]}

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>

#include "ionc/solver.hpp"

namespace ionc {

class FormatError : public Error {
 public:
  using Error::Error;
};

Instance parse_instance(std::string_view text);
std::string format_instance(const Instance& inst);

struct SolutionsDocument {
  Universe universe;
  SolutionSet set;
};

SolutionsDocument parse_solutions(std::string_view text);
std::string format_solutions(const Universe& universe, const SolutionSet& set);

struct GraphDocument {
  Universe universe;
  Dag graph;
};

/// Also accepts a solutions document holding exactly one graph.
GraphDocument parse_graph(std::string_view text);
std::string format_graph(const Universe& universe, const Dag& g);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ionc
