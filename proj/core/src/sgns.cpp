#include "lifegraph/sgns.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "lifegraph/alias.hpp"
#include "lifegraph/errors.hpp"
#include "lifegraph/io.hpp"

namespace lifegraph {

void SgnsConfig::validate() const {
    if (dimensions < 1) throw UsageError("dimensions must be >= 1");
    if (window < 1) throw UsageError("window must be >= 1");
    if (negatives < 1) throw UsageError("negatives must be >= 1");
    if (!(learning_rate > 0)) throw UsageError("learning rate must be positive");
    if (threads < 1) throw UsageError("threads must be >= 1");
}

namespace {

double sigmoid_stable(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// -log sigmoid(x), overflow-safe.
double neg_log_sigmoid(double x) { return x > 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x)); }

struct Vocab {
    std::vector<std::uint32_t> nodes;              // row -> node
    std::vector<std::int64_t> rows;                // node -> row or -1
    std::vector<double> noise_weights;             // count^(3/4) per row
    std::size_t total_tokens = 0;
};

Vocab build_vocab(const std::vector<std::vector<std::uint32_t>>& walks) {
    std::map<std::uint32_t, std::size_t> counts;
    std::size_t total = 0;
    for (const auto& walk : walks) {
        if (walk.size() < 2) continue;  // a walk that could not move trains nothing
        for (std::uint32_t node : walk) ++counts[node];
        total += walk.size();
    }
    Vocab v;
    v.total_tokens = total;
    std::uint32_t max_node = 0;
    for (const auto& [node, c] : counts) max_node = std::max(max_node, node);
    v.rows.assign(static_cast<std::size_t>(max_node) + 1, -1);
    for (const auto& [node, c] : counts) {
        v.rows[node] = static_cast<std::int64_t>(v.nodes.size());
        v.nodes.push_back(node);
        v.noise_weights.push_back(std::pow(static_cast<double>(c), 0.75));
    }
    return v;
}

struct TrainShared {
    const Vocab& vocab;
    const SgnsConfig& config;
    const AliasTable& noise;
    std::vector<double>& input;    // row-major [rows x dims], the embeddings
    std::vector<double>& output;   // context vectors
    std::size_t total_updates;     // epochs * total tokens, for lr decay
};

void train_walk_range(TrainShared& sh, const std::vector<std::vector<std::uint32_t>>& walks, std::size_t begin,
                      std::size_t end, std::size_t epoch, Rng rng, std::size_t tokens_before) {
    const std::size_t dims = sh.config.dimensions;
    const double lr0 = sh.config.learning_rate;
    const double lr_min = lr0 * 1e-4;
    std::vector<double> grad_t(dims);

    std::size_t processed = epoch * sh.vocab.total_tokens + tokens_before;
    for (std::size_t wi = begin; wi < end; ++wi) {
        const auto& walk = walks[wi];
        if (walk.size() < 2) continue;
        for (std::size_t pos = 0; pos < walk.size(); ++pos) {
            const double progress = static_cast<double>(processed++) / static_cast<double>(sh.total_updates);
            const double lr = std::max(lr_min, lr0 * (1.0 - progress));
            const std::size_t span = 1 + static_cast<std::size_t>(rng.next_below(sh.config.window));

            const auto t_row = static_cast<std::size_t>(sh.vocab.rows[walk[pos]]);
            double* vt = sh.input.data() + t_row * dims;

            const std::size_t lo = pos >= span ? pos - span : 0;
            const std::size_t hi = std::min(walk.size() - 1, pos + span);
            for (std::size_t cpos = lo; cpos <= hi; ++cpos) {
                if (cpos == pos) continue;
                const auto c_row = static_cast<std::size_t>(sh.vocab.rows[walk[cpos]]);

                std::fill(grad_t.begin(), grad_t.end(), 0.0);
                // positive pair
                {
                    double* vc = sh.output.data() + c_row * dims;
                    double z = 0;
                    for (std::size_t d = 0; d < dims; ++d) z += vt[d] * vc[d];
                    const double g = sigmoid_stable(z) - 1.0;
                    for (std::size_t d = 0; d < dims; ++d) {
                        grad_t[d] += g * vc[d];
                        vc[d] -= lr * g * vt[d];
                    }
                }
                // negatives from the unigram^(3/4) noise distribution
                for (std::size_t k = 0; k < sh.config.negatives; ++k) {
                    const std::size_t n_row = sh.noise.sample(rng);
                    if (n_row == c_row) continue;
                    double* vn = sh.output.data() + n_row * dims;
                    double z = 0;
                    for (std::size_t d = 0; d < dims; ++d) z += vt[d] * vn[d];
                    const double g = sigmoid_stable(z);
                    for (std::size_t d = 0; d < dims; ++d) {
                        grad_t[d] += g * vn[d];
                        vn[d] -= lr * g * vt[d];
                    }
                }
                for (std::size_t d = 0; d < dims; ++d) vt[d] -= lr * grad_t[d];
            }
        }
    }
}

} // namespace

EmbeddingMatrix train_sgns(const std::vector<std::vector<std::uint32_t>>& walks, const SgnsConfig& config) {
    config.validate();
    bool any_pair = false;
    for (const auto& w : walks) {
        if (w.size() >= 2) any_pair = true;
    }
    if (walks.empty() || !any_pair) throw DataError("walk corpus is empty or has no co-occurrence pairs");

    const Vocab vocab = build_vocab(walks);
    const std::size_t dims = config.dimensions;
    const std::size_t rows = vocab.nodes.size();

    EmbeddingMatrix emb;
    emb.dimensions = dims;
    emb.row_of_node = vocab.rows;
    emb.node_of_row = vocab.nodes;
    emb.data.resize(rows * dims);

    // word2vec-style init: inputs uniform in [-0.5, 0.5] / dims, contexts zero.
    Rng init_rng = Rng::stream(config.seed, "init");
    for (double& x : emb.data) x = (init_rng.next_double() - 0.5) / static_cast<double>(dims);
    std::vector<double> output(rows * dims, 0.0);

    if (config.epochs == 0) return emb;

    const AliasTable noise(vocab.noise_weights);
    TrainShared shared{vocab, config, noise, emb.data, output, config.epochs * vocab.total_tokens};

    if (config.threads == 1) {
        for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
            train_walk_range(shared, walks, 0, walks.size(), epoch, Rng::stream(config.seed, "epoch", epoch), 0);
        }
        return emb;
    }

    // Lock-free parallel mode: walks partitioned across threads, racy but
    // benign updates (word2vec-style). Not deterministic.
    const std::size_t n_threads = std::min(config.threads, walks.size());
    std::vector<std::size_t> bounds(n_threads + 1, 0);
    for (std::size_t i = 0; i <= n_threads; ++i) bounds[i] = i * walks.size() / n_threads;
    std::vector<std::size_t> tokens_before(n_threads, 0);
    {
        std::size_t acc = 0;
        for (std::size_t i = 0; i < n_threads; ++i) {
            tokens_before[i] = acc;
            for (std::size_t w = bounds[i]; w < bounds[i + 1]; ++w) {
                if (walks[w].size() >= 2) acc += walks[w].size();
            }
        }
    }
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t ti = 0; ti < n_threads; ++ti) {
            pool.emplace_back([&, ti, epoch]() {
                train_walk_range(shared, walks, bounds[ti], bounds[ti + 1], epoch,
                                 Rng::stream(config.seed, "thread", epoch * n_threads + ti), tokens_before[ti]);
            });
        }
        for (auto& t : pool) t.join();
    }
    return emb;
}

double sgns_pair_loss(const std::vector<double>& target, const std::vector<double>& context,
                      const std::vector<std::vector<double>>& negatives) {
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double z = 0;
        for (std::size_t i = 0; i < a.size(); ++i) z += a[i] * b[i];
        return z;
    };
    double loss = neg_log_sigmoid(dot(context, target));
    for (const auto& n : negatives) loss += neg_log_sigmoid(-dot(n, target));
    return loss;
}

std::vector<double> sgns_pair_gradient(const std::vector<double>& target, const std::vector<double>& context,
                                       const std::vector<std::vector<double>>& negatives) {
    const std::size_t dims = target.size();
    std::vector<double> grad((2 + negatives.size()) * dims, 0.0);
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double z = 0;
        for (std::size_t i = 0; i < a.size(); ++i) z += a[i] * b[i];
        return z;
    };

    double* g_target = grad.data();
    double* g_context = grad.data() + dims;
    {
        const double g = sigmoid_stable(dot(context, target)) - 1.0;
        for (std::size_t d = 0; d < dims; ++d) {
            g_target[d] += g * context[d];
            g_context[d] += g * target[d];
        }
    }
    for (std::size_t k = 0; k < negatives.size(); ++k) {
        double* g_neg = grad.data() + (2 + k) * dims;
        const double g = sigmoid_stable(dot(negatives[k], target));
        for (std::size_t d = 0; d < dims; ++d) {
            g_target[d] += g * negatives[k][d];
            g_neg[d] += g * target[d];
        }
    }
    return grad;
}

std::string embeddings_to_text(const EmbeddingMatrix& embeddings, const std::vector<std::string>& node_names) {
    std::vector<std::pair<std::string, std::uint32_t>> order;
    order.reserve(embeddings.n_rows());
    for (std::uint32_t node : embeddings.node_of_row) order.emplace_back(node_names.at(node), node);
    std::sort(order.begin(), order.end());

    std::string out = fmt_int(static_cast<std::int64_t>(embeddings.n_rows())) + " " +
                      fmt_int(static_cast<std::int64_t>(embeddings.dimensions)) + "\n";
    for (const auto& [name, node] : order) {
        out += name;
        const double* v = embeddings.vector(node);
        for (std::size_t d = 0; d < embeddings.dimensions; ++d) {
            out += ' ';
            out += fmt_general(v[d], 10);
        }
        out += '\n';
    }
    return out;
}

NamedEmbeddings parse_embeddings_text(const std::string& contents, const std::string& origin) {
    auto lines = split_lines(contents);
    if (lines.empty()) throw DataError("empty embeddings file: " + origin);
    auto header = split_on(lines[0], ' ');
    if (header.size() != 2) throw DataError("bad embeddings header in " + origin);
    NamedEmbeddings out;
    const auto n = static_cast<std::size_t>(parse_int(header[0], origin + " header"));
    out.dimensions = static_cast<std::size_t>(parse_int(header[1], origin + " header"));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::string where = origin + ":" + fmt_int(static_cast<std::int64_t>(i + 1));
        auto fields = split_on(lines[i], ' ');
        if (fields.size() != out.dimensions + 1) throw DataError("wrong column count at " + where);
        out.names.push_back(fields[0]);
        std::vector<double> v(out.dimensions);
        for (std::size_t d = 0; d < out.dimensions; ++d) v[d] = parse_double(fields[d + 1], where);
        out.vectors.push_back(std::move(v));
    }
    if (out.names.size() != n) throw DataError("embeddings row count disagrees with header in " + origin);
    return out;
}

NamedEmbeddings read_embeddings_text(const std::string& path) {
    return parse_embeddings_text(read_file(path), path);
}

} // namespace lifegraph
