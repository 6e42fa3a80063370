#pragma once

#include <stdexcept>
#include <string>

namespace pdc {

/// Bad arguments, malformed configs/files, violated preconditions.
/// The CLI maps these to exit code 2.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
  int line;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Weight-build and solve failures. The CLI maps these to exit code 3.
struct DegenerateNeighborhood : std::runtime_error {
  DegenerateNeighborhood(int node, const std::string& what)
      : std::runtime_error("node " + std::to_string(node) + ": " + what), node(node) {}
  int node;
};

struct UnisolvencyError : std::runtime_error {
  UnisolvencyError(int node, int have, int need)
      : std::runtime_error("node " + std::to_string(node) + ": " + std::to_string(have) +
                           " neighbors, unisolvency requires " + std::to_string(need)),
        node(node),
        have(have),
        need(need) {}
  int node, have, need;
};

struct AssemblyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pdc
