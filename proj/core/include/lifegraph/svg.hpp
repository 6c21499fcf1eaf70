#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "lifegraph/forceatlas2.hpp"
#include "lifegraph/retweet_graph.hpp"

namespace lifegraph {

struct SvgOptions {
    double width = 1200.0;
    double height = 1200.0;
    double margin = 40.0;
    double min_radius = 2.0;
    double radius_scale = 1.5;     // r = min_radius + radius_scale * log1p(in-weight)
    std::size_t max_edges = 5000;  // edges are skipped entirely above this
};

// Static map of the layout: one circle per node, fill from a fixed 8-color
// palette by community (gray when unassigned), radius growing with the node's
// total retweets. Byte-deterministic for fixed inputs.
std::string render_svg_string(const RetweetGraph& graph, const std::map<std::string, Vec2>& positions,
                              const std::map<std::string, std::size_t>& communities, const SvgOptions& options = {});

void render_svg(const RetweetGraph& graph, const std::map<std::string, Vec2>& positions,
                const std::map<std::string, std::size_t>& communities, const std::string& path,
                const SvgOptions& options = {});

} // namespace lifegraph
