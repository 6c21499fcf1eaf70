#include "lifegraph/alias.hpp"

#include <cmath>

#include "lifegraph/errors.hpp"

namespace lifegraph {

AliasTable::AliasTable(const std::vector<double>& weights) {
    if (weights.empty()) throw UsageError("alias table needs at least one weight");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw UsageError("alias table weights must be positive and finite");
        total += w;
    }

    const std::size_t n = weights.size();
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);

    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * static_cast<double>(n) / total;

    std::vector<std::size_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i) (scaled[i] < 1.0 ? small : large).push_back(i);

    while (!small.empty() && !large.empty()) {
        const std::size_t s = small.back();
        const std::size_t l = large.back();
        small.pop_back();
        large.pop_back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    for (std::size_t i : large) {
        prob_[i] = 1.0;
        alias_[i] = i;
    }
    for (std::size_t i : small) {  // numerical leftovers, mass ~1
        prob_[i] = 1.0;
        alias_[i] = i;
    }
}

std::vector<double> AliasTable::implied_probabilities() const {
    const std::size_t n = prob_.size();
    std::vector<double> p(n, 0.0);
    const double cell = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] += cell * prob_[i];
        p[alias_[i]] += cell * (1.0 - prob_[i]);
    }
    return p;
}

} // namespace lifegraph
