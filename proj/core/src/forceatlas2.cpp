#include "lifegraph/forceatlas2.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <thread>
#include <tuple>

#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"
#include "lifegraph/rng.hpp"

namespace lifegraph {

void LayoutConfig::validate() const {
    if (!(theta > 0)) throw UsageError("theta must be positive");
    if (!(scaling > 0)) throw UsageError("scaling must be positive");
    if (gravity < 0) throw UsageError("gravity must be non-negative");
    if (threads < 1) throw UsageError("threads must be >= 1");
}

LayoutGraph LayoutGraph::from(const RetweetGraph& graph) {
    LayoutGraph lg;
    lg.n = graph.n_nodes();
    lg.names.reserve(lg.n);
    for (std::uint32_t i = 0; i < lg.n; ++i) lg.names.push_back(graph.node_name(i));

    std::map<std::pair<std::uint32_t, std::uint32_t>, double> merged;
    for (std::uint32_t s = 0; s < lg.n; ++s) {
        for (const auto& e : graph.out_edges(s)) {
            auto key = s < e.target ? std::make_pair(s, e.target) : std::make_pair(e.target, s);
            merged[key] += static_cast<double>(e.weight);
        }
    }
    lg.degree_mass.assign(lg.n, 1.0);
    for (const auto& [key, w] : merged) {
        lg.edges.emplace_back(key.first, key.second, w);
        lg.degree_mass[key.first] += 1.0;
        lg.degree_mass[key.second] += 1.0;
    }
    return lg;
}

namespace {

constexpr double kMinDist2 = 1e-18;
constexpr double kSpeedKs = 0.1;
constexpr double kSpeedKsMax = 10.0;
constexpr double kMaxSpeedRise = 1.5;

bool use_barnes_hut(const LayoutGraph& graph, const LayoutConfig& config) {
    if (config.barnes_hut == 0) return false;
    if (config.barnes_hut > 0) return true;
    return graph.n > 1000;
}

// Quadtree over the current positions. Cells carry their monopole (mass,
// center of mass) plus quadrupole/octupole moments of the 2D 1/d force
// field, evaluated via the complex-plane expansion
//   sum_j m_j / (w - w_j) = M/t + a2/t^3 + a3/t^4 + O((b/d)^4),  t = w - c,
// where w = conj(x + iy) and c is the conjugated center of mass (the dipole
// term vanishes there). The higher moments keep the force error small even
// at coarse opening angles.
class QuadTree {
public:
    QuadTree(const std::vector<Vec2>& positions, const std::vector<double>& masses)
        : positions_(positions), point_mass_(masses) {
        double min_x = positions[0].x, max_x = positions[0].x;
        double min_y = positions[0].y, max_y = positions[0].y;
        for (const auto& p : positions) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
        const double half = 0.5 * std::max(max_x - min_x, max_y - min_y) + 1e-9;
        nodes_.push_back(make_node(0.5 * (min_x + max_x), 0.5 * (min_y + max_y), half));
        for (std::uint32_t i = 0; i < positions.size(); ++i) insert(0, i, 0);
        for (auto& node : nodes_) {
            if (node.mass <= 0) continue;
            const std::complex<double> c = node.s1 / node.mass;
            node.com = c;
            // central moments from the raw power sums
            node.a2 = node.s2 - node.mass * c * c;
            node.a3 = node.s3 - 3.0 * c * node.s2 + 2.0 * node.mass * c * c * c;
            // spread of the cell's points around the center of mass, bounded
            // by the farthest cell corner
            double worst = 0;
            for (int q = 0; q < 4; ++q) {
                const double dx = (node.cx + ((q & 1) ? node.half : -node.half)) - c.real();
                const double dy = (node.cy + ((q & 2) ? node.half : -node.half)) - (-c.imag());
                worst = std::max(worst, dx * dx + dy * dy);
            }
            node.spread = std::sqrt(worst);
        }
    }

    Vec2 force_on(std::uint32_t i, double self_mass, double kr, double theta) const {
        // conjugate-plane coordinate of the target point
        const std::complex<double> w(positions_[i].x, -positions_[i].y);
        std::complex<double> field(0, 0);
        Vec2 f{0, 0};
        std::vector<int> stack{0};
        stack.reserve(128);
        while (!stack.empty()) {
            const int ni = stack.back();
            stack.pop_back();
            const Node& node = nodes_[static_cast<std::size_t>(ni)];
            if (node.mass <= 0) continue;

            if (node.children[0] < 0) {
                for (std::uint32_t j : node.points) {
                    if (j == i) continue;
                    const double ex = positions_[i].x - positions_[j].x;
                    const double ey = positions_[i].y - positions_[j].y;
                    const double e2 = std::max(ex * ex + ey * ey, kMinDist2);
                    const double coeff = point_mass_[j] / e2;
                    f.x += coeff * ex;
                    f.y += coeff * ey;
                }
                continue;
            }
            const std::complex<double> t = w - node.com;
            const double d2 = std::norm(t);
            const bool contains_i = std::abs(positions_[i].x - node.cx) <= node.half &&
                                    std::abs(positions_[i].y - node.cy) <= node.half;
            // open the cell unless its point spread is small seen from w
            if (!contains_i && 4.0 * node.spread * node.spread < theta * theta * d2) {
                const std::complex<double> inv = 1.0 / t;
                const std::complex<double> inv2 = inv * inv;
                field += inv * (node.mass + inv2 * (node.a2 + inv * node.a3));
                continue;
            }
            for (int c : node.children) {
                if (c >= 0) stack.push_back(c);
            }
        }
        f.x += field.real();
        f.y += field.imag();
        f.x *= kr * self_mass;
        f.y *= kr * self_mass;
        return f;
    }

private:
    struct Node {
        double cx, cy, half;
        double mass;
        std::complex<double> s1, s2, s3;  // raw conjugate-plane power sums
        std::complex<double> com, a2, a3;
        double spread;
        int children[4];
        std::vector<std::uint32_t> points;  // leaves only
    };

    static constexpr int kMaxDepth = 48;

    static Node make_node(double cx, double cy, double half) {
        return Node{cx, cy, half, 0, {}, {}, {}, {}, {}, {}, 0, {-1, -1, -1, -1}, {}};
    }

    // Adds `point`'s mass and moments at node `ni` and below; splits leaves
    // on demand.
    void insert(int ni, std::uint32_t point, int depth) {
        const double mass = point_mass_[point];
        const std::complex<double> w(positions_[point].x, -positions_[point].y);
        {
            Node& node = nodes_[static_cast<std::size_t>(ni)];
            node.mass += mass;
            node.s1 += mass * w;
            node.s2 += mass * w * w;
            node.s3 += mass * w * w * w;
        }
        if (nodes_[static_cast<std::size_t>(ni)].children[0] < 0) {
            if (nodes_[static_cast<std::size_t>(ni)].points.empty() || depth >= kMaxDepth) {
                nodes_[static_cast<std::size_t>(ni)].points.push_back(point);
                return;
            }
            // Split: local copies first, push_back invalidates references.
            const double cx = nodes_[static_cast<std::size_t>(ni)].cx;
            const double cy = nodes_[static_cast<std::size_t>(ni)].cy;
            const double h = nodes_[static_cast<std::size_t>(ni)].half * 0.5;
            const std::uint32_t resident = nodes_[static_cast<std::size_t>(ni)].points[0];
            nodes_[static_cast<std::size_t>(ni)].points.clear();
            for (int q = 0; q < 4; ++q) {
                nodes_.push_back(make_node(cx + ((q & 1) ? h : -h), cy + ((q & 2) ? h : -h), h));
                nodes_[static_cast<std::size_t>(ni)].children[q] = static_cast<int>(nodes_.size()) - 1;
            }
            insert(nodes_[static_cast<std::size_t>(ni)].children[quadrant(ni, resident)], resident, depth + 1);
        }
        insert(nodes_[static_cast<std::size_t>(ni)].children[quadrant(ni, point)], point, depth + 1);
    }

    int quadrant(int ni, std::uint32_t point) const {
        const Node& node = nodes_[static_cast<std::size_t>(ni)];
        return (positions_[point].x >= node.cx ? 1 : 0) | (positions_[point].y >= node.cy ? 2 : 0);
    }

    const std::vector<Vec2>& positions_;
    std::vector<Node> nodes_;
    std::vector<double> point_mass_;
};

void add_attraction_and_gravity(const LayoutGraph& graph, const LayoutConfig& config,
                                const std::vector<Vec2>& positions, std::vector<Vec2>& forces) {
    const double delta = config.edge_weight_influence;
    for (const auto& [a, b, w] : graph.edges) {
        const double factor = delta == 1.0 ? w : (delta == 0.0 ? 1.0 : std::pow(w, delta));
        const double dx = positions[b].x - positions[a].x;
        const double dy = positions[b].y - positions[a].y;
        double fx, fy;
        if (config.use_linlog) {
            const double d = std::sqrt(std::max(dx * dx + dy * dy, kMinDist2));
            const double mag = factor * std::log1p(d) / d;
            fx = mag * dx;
            fy = mag * dy;
        } else {
            fx = factor * dx;
            fy = factor * dy;
        }
        forces[a].x += fx;
        forces[a].y += fy;
        forces[b].x -= fx;
        forces[b].y -= fy;
    }
    if (config.gravity > 0) {
        for (std::size_t i = 0; i < graph.n; ++i) {
            const double d = std::sqrt(positions[i].x * positions[i].x + positions[i].y * positions[i].y);
            if (d > 1e-12) {
                const double coeff = config.gravity * graph.degree_mass[i] / d;
                forces[i].x -= coeff * positions[i].x;
                forces[i].y -= coeff * positions[i].y;
            }
        }
    }
}

std::vector<Vec2> compute_forces(const LayoutGraph& graph, const LayoutConfig& config,
                                 const std::vector<Vec2>& positions) {
    std::vector<Vec2> forces(graph.n);
    if (use_barnes_hut(graph, config)) {
        forces = repulsion_barnes_hut(graph, config, positions, config.theta);
    } else {
        forces = repulsion_exact(graph, config, positions);
    }
    add_attraction_and_gravity(graph, config, positions, forces);
    return forces;
}

} // namespace

std::vector<Vec2> repulsion_exact(const LayoutGraph& graph, const LayoutConfig& config,
                                  const std::vector<Vec2>& positions) {
    std::vector<Vec2> forces(graph.n);
    const double kr = config.scaling;
    if (config.threads <= 1) {
        // pairwise, equal and opposite by construction
        for (std::size_t i = 0; i < graph.n; ++i) {
            for (std::size_t j = i + 1; j < graph.n; ++j) {
                const double dx = positions[i].x - positions[j].x;
                const double dy = positions[i].y - positions[j].y;
                const double d2 = std::max(dx * dx + dy * dy, kMinDist2);
                const double coeff = kr * graph.degree_mass[i] * graph.degree_mass[j] / d2;
                forces[i].x += coeff * dx;
                forces[i].y += coeff * dy;
                forces[j].x -= coeff * dx;
                forces[j].y -= coeff * dy;
            }
        }
        return forces;
    }
    const std::size_t n_threads = std::min(config.threads, graph.n);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < graph.n; i += n_threads) {
                Vec2 f{0, 0};
                for (std::size_t j = 0; j < graph.n; ++j) {
                    if (j == i) continue;
                    const double dx = positions[i].x - positions[j].x;
                    const double dy = positions[i].y - positions[j].y;
                    const double d2 = std::max(dx * dx + dy * dy, kMinDist2);
                    const double coeff = kr * graph.degree_mass[i] * graph.degree_mass[j] / d2;
                    f.x += coeff * dx;
                    f.y += coeff * dy;
                }
                forces[i] = f;
            }
        });
    }
    for (auto& t : pool) t.join();
    return forces;
}

std::vector<Vec2> repulsion_barnes_hut(const LayoutGraph& graph, const LayoutConfig& config,
                                       const std::vector<Vec2>& positions, double theta) {
    if (graph.n == 0) return {};
    const QuadTree tree(positions, graph.degree_mass);
    std::vector<Vec2> forces(graph.n);
    const double kr = config.scaling;
    const std::size_t n_threads = std::min(config.threads, graph.n);
    if (n_threads <= 1) {
        for (std::uint32_t i = 0; i < graph.n; ++i) {
            forces[i] = tree.force_on(i, graph.degree_mass[i], kr, theta);
        }
        return forces;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < graph.n; i += n_threads) {
                forces[i] = tree.force_on(static_cast<std::uint32_t>(i), graph.degree_mass[i], kr, theta);
            }
        });
    }
    for (auto& t : pool) t.join();
    return forces;
}

double repulsion_exact_vs_barneshut(const LayoutGraph& graph, const LayoutConfig& config,
                                    const std::vector<Vec2>& positions, double theta) {
    if (graph.n < 2) throw UsageError("need at least 2 nodes");
    const auto exact = repulsion_exact(graph, config, positions);
    const auto approx = repulsion_barnes_hut(graph, config, positions, theta);
    double worst = 0.0;
    for (std::size_t i = 0; i < graph.n; ++i) {
        const double ex = exact[i].x, ey = exact[i].y;
        const double dx = approx[i].x - ex, dy = approx[i].y - ey;
        const double denom = std::sqrt(ex * ex + ey * ey);
        if (denom <= 0) continue;
        worst = std::max(worst, std::sqrt(dx * dx + dy * dy) / denom);
    }
    return worst;
}

LayoutState layout_init(const LayoutGraph& graph, const LayoutConfig& config) {
    config.validate();
    if (graph.n == 0) throw DataError("cannot lay out an empty graph");
    LayoutState state;
    state.positions.resize(graph.n);
    state.prev_forces.assign(graph.n, {0, 0});
    state.mass = graph.degree_mass;

    Rng rng(config.seed);
    for (auto& p : state.positions) {
        p.x = rng.next_double(-1.0, 1.0);
        p.y = rng.next_double(-1.0, 1.0);
    }
    // Deterministic epsilon jitter for exact coincidences, keyed by node id.
    std::map<std::pair<double, double>, std::size_t> seen;
    for (std::size_t i = 0; i < graph.n; ++i) {
        auto& count = seen[{state.positions[i].x, state.positions[i].y}];
        if (count > 0) {
            const std::uint64_t h = fnv1a64(graph.names[i]);
            state.positions[i].x += 1e-6 * static_cast<double>(count) * (1.0 + static_cast<double>(h % 7));
            state.positions[i].y += 1e-6 * static_cast<double>(count) * (1.0 + static_cast<double>(h % 11));
        }
        ++count;
    }
    return state;
}

void layout_step(const LayoutGraph& graph, const LayoutConfig& config, LayoutState& state) {
    const std::vector<Vec2> forces = compute_forces(graph, config, state.positions);

    double total_swing = 0.0, total_traction = 0.0;
    for (std::size_t i = 0; i < graph.n; ++i) {
        const double sx = forces[i].x - state.prev_forces[i].x;
        const double sy = forces[i].y - state.prev_forces[i].y;
        const double tx = 0.5 * (forces[i].x + state.prev_forces[i].x);
        const double ty = 0.5 * (forces[i].y + state.prev_forces[i].y);
        total_swing += state.mass[i] * std::sqrt(sx * sx + sy * sy);
        total_traction += state.mass[i] * std::sqrt(tx * tx + ty * ty);
    }
    if (total_swing > 1e-12) {
        const double target = total_traction / total_swing;
        state.speed = std::min(target, kMaxSpeedRise * state.speed);
    }

    for (std::size_t i = 0; i < graph.n; ++i) {
        const double fmag = std::sqrt(forces[i].x * forces[i].x + forces[i].y * forces[i].y);
        const double sx = forces[i].x - state.prev_forces[i].x;
        const double sy = forces[i].y - state.prev_forces[i].y;
        const double swing = std::sqrt(sx * sx + sy * sy);
        double s = kSpeedKs * state.speed / (1.0 + state.speed * std::sqrt(swing));
        if (fmag > 1e-12) s = std::min(s, kSpeedKsMax / fmag);
        state.positions[i].x += forces[i].x * s;
        state.positions[i].y += forces[i].y * s;
    }
    state.prev_forces = forces;
}

std::vector<Vec2> layout(const LayoutGraph& graph, const LayoutConfig& config) {
    LayoutState state = layout_init(graph, config);
    for (std::size_t it = 0; it < config.iterations; ++it) layout_step(graph, config, state);
    return state.positions;
}

std::string positions_to_csv(const LayoutGraph& graph, const std::vector<Vec2>& positions) {
    std::vector<std::size_t> order(graph.n);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return graph.names[a] < graph.names[b]; });
    std::string out = "user_id,x,y\n";
    for (std::size_t i : order) {
        out += graph.names[i];
        out += ',';
        out += fmt_double(positions[i].x, 6);
        out += ',';
        out += fmt_double(positions[i].y, 6);
        out += '\n';
    }
    return out;
}

std::map<std::string, Vec2> parse_positions_csv(const std::string& contents, const std::string& origin) {
    std::map<std::string, Vec2> out;
    auto lines = split_lines(contents);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        if (i == 0 && lines[i] == "user_id,x,y") continue;
        const std::string where = origin + ":" + fmt_int(static_cast<std::int64_t>(i + 1));
        auto fields = split_on(lines[i], ',');
        if (fields.size() != 3) throw DataError("expected 'user_id,x,y' at " + where);
        out[fields[0]] = {parse_double(fields[1], where), parse_double(fields[2], where)};
    }
    return out;
}

std::map<std::string, Vec2> read_positions_csv(const std::string& path) {
    return parse_positions_csv(read_file(path), path);
}

} // namespace lifegraph
