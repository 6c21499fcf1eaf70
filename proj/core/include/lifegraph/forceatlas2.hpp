#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lifegraph/retweet_graph.hpp"

namespace lifegraph {

struct LayoutConfig {
    std::size_t iterations = 1000;
    double scaling = 2.0;          // k_r, repulsion scale
    double gravity = 1.0;          // k_g, pull toward the origin
    bool use_linlog = false;       // log(1+d) attraction instead of linear
    int barnes_hut = -1;           // -1 auto (n > 1000), 0 exact, 1 Barnes-Hut
    double theta = 1.2;            // Barnes-Hut opening criterion
    double edge_weight_influence = 1.0;  // delta: attraction uses w^delta
    std::uint64_t seed = 1;
    std::size_t threads = 1;       // repulsion/attraction accumulation threads

    void validate() const;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Mutable layout state; init -> step* -> positions. Exposed so tests and the
// probe below can inspect intermediate states.
struct LayoutState {
    std::vector<Vec2> positions;
    std::vector<Vec2> prev_forces;
    std::vector<double> mass;      // deg + 1
    double speed = 1.0;
    double speed_efficiency = 1.0;
};

// Undirected degree view used for masses and attraction.
struct LayoutGraph {
    std::size_t n = 0;
    std::vector<std::string> names;
    // one entry per undirected edge (i < j), weight = sum of both directions
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> edges;
    std::vector<double> degree_mass;  // deg + 1

    static LayoutGraph from(const RetweetGraph& graph);
};

LayoutState layout_init(const LayoutGraph& graph, const LayoutConfig& config);
void layout_step(const LayoutGraph& graph, const LayoutConfig& config, LayoutState& state);

// init + iterations steps. Deterministic (bit-identical positions) in exact
// single-threaded mode for a fixed (graph, config).
std::vector<Vec2> layout(const LayoutGraph& graph, const LayoutConfig& config);

// Repulsion-only force fields at the given positions, for approximation
// checks: exact O(n^2) vs Barnes-Hut with opening angle theta.
std::vector<Vec2> repulsion_exact(const LayoutGraph& graph, const LayoutConfig& config,
                                  const std::vector<Vec2>& positions);
std::vector<Vec2> repulsion_barnes_hut(const LayoutGraph& graph, const LayoutConfig& config,
                                       const std::vector<Vec2>& positions, double theta);

// max over nodes of |F_bh - F_exact| / |F_exact|.
double repulsion_exact_vs_barneshut(const LayoutGraph& graph, const LayoutConfig& config,
                                    const std::vector<Vec2>& positions, double theta);

// positions.csv: user_id,x,y (with header), sorted by user id.
std::string positions_to_csv(const LayoutGraph& graph, const std::vector<Vec2>& positions);
std::map<std::string, Vec2> parse_positions_csv(const std::string& contents, const std::string& origin);
std::map<std::string, Vec2> read_positions_csv(const std::string& path);

} // namespace lifegraph
