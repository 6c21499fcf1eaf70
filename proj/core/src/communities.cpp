#include "lifegraph/communities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"
#include "lifegraph/rng.hpp"

namespace lifegraph {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

std::vector<std::vector<double>> l2_normalize(const std::vector<std::vector<double>>& vectors) {
    std::vector<std::vector<double>> out = vectors;
    for (auto& v : out) {
        double norm = 0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 0) {
            for (double& x : v) x /= norm;
        }
    }
    return out;
}

struct LloydResult {
    std::vector<std::size_t> assign;
    double wcss = 0.0;
};

LloydResult run_lloyd(const std::vector<std::vector<double>>& points, std::size_t k, std::size_t max_iterations,
                      Rng& rng) {
    const std::size_t n = points.size();
    const std::size_t dims = points[0].size();

    // k-means++ seeding.
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    centroids.push_back(points[static_cast<std::size_t>(rng.next_below(n))]);
    std::vector<double> dist2(n);
    while (centroids.size() < k) {
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const auto& c : centroids) best = std::min(best, sq_dist(points[i], c));
            dist2[i] = best;
            total += best;
        }
        std::size_t chosen;
        if (total <= 0) {
            chosen = static_cast<std::size_t>(rng.next_below(n));
        } else {
            double r = rng.next_double() * total;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                r -= dist2[i];
                if (r <= 0) {
                    chosen = i;
                    break;
                }
            }
        }
        centroids.push_back(points[chosen]);
    }

    std::vector<std::size_t> assign(n, 0);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        bool changed = iter == 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::max();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = sq_dist(points[i], centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (best != assign[i]) changed = true;
            assign[i] = best;
        }
        if (!changed) break;

        sizes.assign(k, 0);
        for (std::size_t c = 0; c < k; ++c) std::fill(centroids[c].begin(), centroids[c].end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            ++sizes[assign[i]];
            for (std::size_t d = 0; d < dims; ++d) centroids[assign[i]][d] += points[i][d];
        }

        // Empty-cluster repair: move the point farthest from the largest
        // cluster's centroid into the empty cluster.
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] > 0) continue;
            std::size_t largest = 0;
            for (std::size_t c2 = 0; c2 < k; ++c2) {
                if (sizes[c2] > sizes[largest]) largest = c2;
            }
            std::vector<double> big_centroid(dims);
            for (std::size_t d = 0; d < dims; ++d) {
                big_centroid[d] = centroids[largest][d] / static_cast<double>(sizes[largest]);
            }
            std::size_t farthest = 0;
            double far_d = -1;
            for (std::size_t i = 0; i < n; ++i) {
                if (assign[i] != largest) continue;
                const double d = sq_dist(points[i], big_centroid);
                if (d > far_d) {
                    far_d = d;
                    farthest = i;
                }
            }
            assign[farthest] = c;
            --sizes[largest];
            ++sizes[c];
            for (std::size_t d = 0; d < dims; ++d) {
                centroids[largest][d] -= points[farthest][d];
                centroids[c][d] += points[farthest][d];
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t d = 0; d < dims; ++d) centroids[c][d] /= static_cast<double>(sizes[c]);
        }
    }

    LloydResult result;
    result.assign = std::move(assign);
    for (std::size_t i = 0; i < n; ++i) result.wcss += sq_dist(points[i], centroids[result.assign[i]]);
    return result;
}

} // namespace

CommunityAssignment kmeans_communities(const std::vector<std::string>& names,
                                       const std::vector<std::vector<double>>& vectors, const KMeansConfig& config) {
    if (config.k < 1) throw UsageError("k must be >= 1");
    if (names.size() != vectors.size()) throw UsageError("names/vectors length mismatch");
    if (vectors.size() < config.k) {
        throw DataError("need at least k=" + fmt_int(static_cast<std::int64_t>(config.k)) + " embedded nodes, have " +
                        fmt_int(static_cast<std::int64_t>(vectors.size())));
    }
    for (const auto& v : vectors) {
        if (v.size() != vectors[0].size()) throw DataError("inconsistent embedding dimensions");
    }

    const auto points = l2_normalize(vectors);
    LloydResult best;
    best.wcss = std::numeric_limits<double>::max();
    const std::size_t restarts = std::max<std::size_t>(1, config.restarts);
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng = Rng::stream(config.seed, "kmeans", r);
        LloydResult res = run_lloyd(points, config.k, config.max_iterations, rng);
        if (res.wcss < best.wcss) best = std::move(res);
    }

    // Renumber communities by order of first appearance over sorted names so
    // identical partitions always serialize identically.
    std::vector<std::size_t> order(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
    std::vector<std::int64_t> renumber(config.k, -1);
    std::size_t next_id = 0;
    CommunityAssignment out;
    out.k = config.k;
    for (std::size_t i : order) {
        auto& id = renumber[best.assign[i]];
        if (id < 0) id = static_cast<std::int64_t>(next_id++);
        out.community_of[names[i]] = static_cast<std::size_t>(id);
    }
    out.shares.assign(config.k, 0.0);
    for (const auto& [name, c] : out.community_of) out.shares[c] += 1.0;
    for (double& s : out.shares) s /= static_cast<double>(names.size());
    out.wcss = best.wcss;
    return out;
}

CommunityAssignment kmeans_communities(const NamedEmbeddings& embeddings, const KMeansConfig& config) {
    return kmeans_communities(embeddings.names, embeddings.vectors, config);
}

std::vector<CommunityReport> characterize_communities(const CommunityAssignment& assignment,
                                                      const RetweetGraph& graph, std::size_t top_n) {
    std::vector<CommunityReport> reports(assignment.k);
    for (std::size_t c = 0; c < assignment.k; ++c) {
        reports[c].community = c;
        reports[c].share = c < assignment.shares.size() ? assignment.shares[c] : 0.0;
    }

    std::vector<std::vector<CommunityMember>> members(assignment.k);
    for (std::uint32_t node = 0; node < graph.n_nodes(); ++node) {
        auto it = assignment.community_of.find(graph.node_name(node));
        if (it == assignment.community_of.end()) {
            throw DataError("node '" + graph.node_name(node) + "' has no community assignment");
        }
        members[it->second].push_back({graph.node_name(node), graph.total_in_weight(node)});
    }
    for (std::size_t c = 0; c < assignment.k; ++c) {
        auto& ms = members[c];
        reports[c].size = ms.size();
        std::sort(ms.begin(), ms.end(), [](const CommunityMember& a, const CommunityMember& b) {
            if (a.total_retweets != b.total_retweets) return a.total_retweets > b.total_retweets;
            return a.user_id < b.user_id;
        });
        if (ms.size() > top_n) ms.resize(top_n);
        reports[c].top_members = std::move(ms);
    }
    return reports;
}

std::string communities_to_csv(const CommunityAssignment& assignment) {
    std::string out = "user_id,community\n";
    for (const auto& [name, c] : assignment.community_of) {
        out += name;
        out += ',';
        out += fmt_int(static_cast<std::int64_t>(c));
        out += '\n';
    }
    return out;
}

CommunityAssignment parse_communities_csv(const std::string& contents, const std::string& origin) {
    CommunityAssignment out;
    auto lines = split_lines(contents);
    std::size_t max_c = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        if (i == 0 && lines[i] == "user_id,community") continue;
        const std::string where = origin + ":" + fmt_int(static_cast<std::int64_t>(i + 1));
        auto fields = split_on(lines[i], ',');
        if (fields.size() != 2) throw DataError("expected 'user_id,community' at " + where);
        const auto c = static_cast<std::size_t>(parse_int(fields[1], where));
        if (!out.community_of.emplace(fields[0], c).second) {
            throw DataError("duplicate user '" + fields[0] + "' at " + where);
        }
        max_c = std::max(max_c, c);
    }
    out.k = out.community_of.empty() ? 0 : max_c + 1;
    out.shares.assign(out.k, 0.0);
    for (const auto& [name, c] : out.community_of) out.shares[c] += 1.0;
    if (!out.community_of.empty()) {
        for (double& s : out.shares) s /= static_cast<double>(out.community_of.size());
    }
    return out;
}

CommunityAssignment read_communities_csv(const std::string& path) {
    return parse_communities_csv(read_file(path), path);
}

} // namespace lifegraph
