#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "lifegraph/forceatlas2.hpp"
#include "lifegraph/lifestage.hpp"
#include "lifegraph/retweet_graph.hpp"

namespace lifegraph {

// GEXF 1.2draft, directed, with weighted edges, node attributes `lifestage`
// (string) and `community` (integer), and viz:position elements when
// positions are given. Attribute maps may be partial; absent values are
// simply not emitted.
std::string gexf_to_string(const RetweetGraph& graph, const std::map<std::string, LifeStage>& lifestages,
                           const std::map<std::string, std::size_t>& communities,
                           const std::map<std::string, Vec2>& positions);

void export_gexf(const RetweetGraph& graph, const std::map<std::string, LifeStage>& lifestages,
                 const std::map<std::string, std::size_t>& communities, const std::map<std::string, Vec2>& positions,
                 const std::string& path);

struct GexfData {
    RetweetGraph graph;
    std::map<std::string, LifeStage> lifestages;
    std::map<std::string, std::size_t> communities;
    std::map<std::string, Vec2> positions;
};

// Parses the subset of GEXF this module emits; round-trips its own output.
GexfData parse_gexf(const std::string& xml, const std::string& origin);
GexfData read_gexf(const std::string& path);

std::string xml_escape(const std::string& s);

} // namespace lifegraph
