#include "lifegraph/svg.hpp"

#include <algorithm>
#include <cmath>

#include "lifegraph/errors.hpp"
#include "lifegraph/gexf.hpp"
#include "lifegraph/io.hpp"

namespace lifegraph {

namespace {

const char* kPalette[8] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                           "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

} // namespace

std::string render_svg_string(const RetweetGraph& graph, const std::map<std::string, Vec2>& positions,
                              const std::map<std::string, std::size_t>& communities, const SvgOptions& options) {
    std::vector<std::string> names;
    names.reserve(graph.n_nodes());
    for (std::uint32_t i = 0; i < graph.n_nodes(); ++i) names.push_back(graph.node_name(i));
    std::sort(names.begin(), names.end());
    for (const auto& name : names) {
        if (!positions.count(name)) throw DataError("no position for node '" + name + "'");
    }

    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    bool first = true;
    for (const auto& name : names) {
        const Vec2& p = positions.at(name);
        if (first) {
            min_x = max_x = p.x;
            min_y = max_y = p.y;
            first = false;
        }
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double span_x = std::max(max_x - min_x, 1e-9);
    const double span_y = std::max(max_y - min_y, 1e-9);
    const double inner_w = options.width - 2 * options.margin;
    const double inner_h = options.height - 2 * options.margin;
    auto sx = [&](double x) { return options.margin + (x - min_x) / span_x * inner_w; };
    auto sy = [&](double y) { return options.margin + (y - min_y) / span_y * inner_h; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_double(options.width, 0) + "\" height=\"" +
           fmt_double(options.height, 0) + "\" viewBox=\"0 0 " + fmt_double(options.width, 0) + " " +
           fmt_double(options.height, 0) + "\">\n";
    out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (graph.n_edges() <= options.max_edges) {
        out += "  <g stroke=\"#cccccc\" stroke-width=\"0.4\" stroke-opacity=\"0.5\">\n";
        std::vector<std::tuple<std::string, std::string>> edges;
        edges.reserve(graph.n_edges());
        for (std::uint32_t s = 0; s < graph.n_nodes(); ++s) {
            for (const auto& e : graph.out_edges(s)) {
                edges.emplace_back(graph.node_name(s), graph.node_name(e.target));
            }
        }
        std::sort(edges.begin(), edges.end());
        for (const auto& [s, t] : edges) {
            const Vec2& a = positions.at(s);
            const Vec2& b = positions.at(t);
            out += "    <line x1=\"" + fmt_double(sx(a.x), 2) + "\" y1=\"" + fmt_double(sy(a.y), 2) + "\" x2=\"" +
                   fmt_double(sx(b.x), 2) + "\" y2=\"" + fmt_double(sy(b.y), 2) + "\"/>\n";
        }
        out += "  </g>\n";
    }

    out += "  <g stroke=\"#333333\" stroke-width=\"0.3\">\n";
    for (const auto& name : names) {
        const Vec2& p = positions.at(name);
        const auto node = graph.node_index(name);
        const double in_weight = node ? static_cast<double>(graph.total_in_weight(*node)) : 0.0;
        const double r = options.min_radius + options.radius_scale * std::log1p(in_weight);
        auto cit = communities.find(name);
        const char* fill = cit == communities.end() ? "#bbbbbb" : kPalette[cit->second % 8];
        out += "    <circle cx=\"" + fmt_double(sx(p.x), 2) + "\" cy=\"" + fmt_double(sy(p.y), 2) + "\" r=\"" +
               fmt_double(r, 2) + "\" fill=\"" + fill + "\"><title>" + xml_escape(name) + "</title></circle>\n";
    }
    out += "  </g>\n";
    out += "</svg>\n";
    return out;
}

void render_svg(const RetweetGraph& graph, const std::map<std::string, Vec2>& positions,
                const std::map<std::string, std::size_t>& communities, const std::string& path,
                const SvgOptions& options) {
    write_file(path, render_svg_string(graph, positions, communities, options));
}

} // namespace lifegraph
