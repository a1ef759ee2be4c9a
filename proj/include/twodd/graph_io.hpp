#pragma once

#include "twodd/digraph.hpp"
#include "twodd/permset.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace twodd {

/// Text format, 1-based:
///   vertices <n>
///   <u> <v>                     one arc per line, in arc-id order
///   label <v> <entry|exit> <k>  optional route numbering
///   # comment
Digraph parse_graph_text(std::string_view text);
std::string format_graph_text(const Digraph& g);

Digraph read_graph_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

/// {vertices, arcs:[[u,v]], labels:[{vertex, kind, index}], acs:[{forward, backward}]},
/// ids 1-based. acs is present only for valid 2-digraphs.
nlohmann::json graph_to_json(const Digraph& g);
Digraph graph_from_json(const nlohmann::json& j);

/// Permutation set file: first line "n=<degree>", then one permutation per
/// line in cycle notation; "#" comments and blank lines are ignored.
PermSet parse_permset_text(std::string_view text);
std::string format_permset_text(const PermSet& p);
PermSet read_permset_file(const std::filesystem::path& path);

} // namespace twodd
