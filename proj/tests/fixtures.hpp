#pragma once

#include "twodd/graph_io.hpp"

#include <string>

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(TWODD_TEST_DATA) + "/" + name; }

inline twodd::Digraph graph(const std::string& name) { return twodd::read_graph_file(path(name + ".graph")); }

inline twodd::PermSet perms(int n, std::initializer_list<const char*> cyc) {
    std::vector<twodd::Perm> v;
    for (const char* c : cyc) {
        v.push_back(twodd::parse_cycles(c, n));
    }
    return twodd::PermSet(n, std::move(v));
}

} // namespace fixtures
