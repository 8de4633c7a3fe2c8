#pragma once

#include <string>
#include <vector>

#include "designlens/model.hpp"

#ifndef DESIGNLENS_FIXTURE_DIR
#error "DESIGNLENS_FIXTURE_DIR must be defined by the build"
#endif

namespace designlens::testing {

inline const std::string kFixtureDir = DESIGNLENS_FIXTURE_DIR;

std::string read_file(const std::string& path);
std::string fixture(const std::string& name);  // fixture file contents

/// Package-granularity graph with nodes `n00`, `n01`, ... so that node order
/// matches the adjacency index order.
DependencyGraph graph_from_adjacency(const std::vector<std::vector<bool>>& adjacency);
std::string node_name(int index);

}  // namespace designlens::testing
