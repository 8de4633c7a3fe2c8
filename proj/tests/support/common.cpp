#include "common.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace designlens::testing {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string fixture(const std::string& name) { return read_file(kFixtureDir + "/" + name); }

std::string node_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%02d", index);
    return buf;
}

DependencyGraph graph_from_adjacency(const std::vector<std::vector<bool>>& adjacency) {
    DependencyGraph g;
    g.granularity = Granularity::package;
    const std::size_t n = adjacency.size();
    for (std::size_t i = 0; i < n; ++i) g.nodes.push_back({node_name(static_cast<int>(i)), ""});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (adjacency[i][j]) g.edges.push_back({g.nodes[i], g.nodes[j], EdgeKind::use});
    return g;
}

}  // namespace designlens::testing
