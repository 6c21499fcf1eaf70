#include "lifegraph/metrics.hpp"

#include <cmath>
#include <map>

#include "lifegraph/errors.hpp"

namespace lifegraph {

Metrics binary_metrics(const std::vector<bool>& gold, const std::vector<bool>& predicted) {
    if (gold.size() != predicted.size()) throw UsageError("gold/predicted length mismatch");
    if (gold.empty()) throw DataError("cannot evaluate an empty split");

    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (predicted[i] && gold[i]) ++tp;
        else if (predicted[i] && !gold[i]) ++fp;
        else if (!predicted[i] && !gold[i]) ++tn;
        else ++fn;
    }
    Metrics m;
    m.n = gold.size();
    m.accuracy = static_cast<double>(tp + tn) / static_cast<double>(m.n);
    if (tp > 0) {
        m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    return m;
}

double cohen_kappa(const std::vector<std::string>& labels_a, const std::vector<std::string>& labels_b) {
    if (labels_a.size() != labels_b.size()) {
        throw UsageError("kappa needs equally long label lists");
    }
    if (labels_a.empty()) throw DataError("kappa over empty lists");

    const double n = static_cast<double>(labels_a.size());
    std::size_t agree = 0;
    std::map<std::string, std::size_t> marg_a, marg_b;
    for (std::size_t i = 0; i < labels_a.size(); ++i) {
        if (labels_a[i] == labels_b[i]) ++agree;
        ++marg_a[labels_a[i]];
        ++marg_b[labels_b[i]];
    }
    const double p_o = static_cast<double>(agree) / n;
    double p_e = 0.0;
    for (const auto& [label, count_a] : marg_a) {
        auto it = marg_b.find(label);
        if (it != marg_b.end()) {
            p_e += (static_cast<double>(count_a) / n) * (static_cast<double>(it->second) / n);
        }
    }
    if (p_e >= 1.0) return p_o >= 1.0 ? 1.0 : 0.0;
    return (p_o - p_e) / (1.0 - p_e);
}

double normalized_mutual_information(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw UsageError("NMI needs equally long partitions");
    if (a.empty()) throw DataError("NMI over empty partitions");

    const double n = static_cast<double>(a.size());
    std::map<int, double> pa, pb;
    std::map<std::pair<int, int>, double> joint;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa[a[i]] += 1.0;
        pb[b[i]] += 1.0;
        joint[{a[i], b[i]}] += 1.0;
    }
    double h_a = 0.0, h_b = 0.0, mi = 0.0;
    for (auto& [k, c] : pa) {
        c /= n;
        h_a -= c * std::log(c);
    }
    for (auto& [k, c] : pb) {
        c /= n;
        h_b -= c * std::log(c);
    }
    for (const auto& [kk, c] : joint) {
        const double p = c / n;
        mi += p * std::log(p / (pa[kk.first] * pb[kk.second]));
    }
    const double denom = 0.5 * (h_a + h_b);
    if (denom <= 0.0) return 1.0;  // both partitions constant
    return mi / denom;
}

} // namespace lifegraph
