#pragma once

#include <cstdint>
#include <vector>

#include "lifegraph/rng.hpp"

namespace lifegraph {

// Walker/Vose alias table: O(n) build, O(1) draws from a weighted discrete
// distribution.
class AliasTable {
public:
    explicit AliasTable(const std::vector<double>& weights);

    std::size_t size() const { return prob_.size(); }

    std::size_t sample(Rng& rng) const {
        const std::size_t i = static_cast<std::size_t>(rng.next_below(prob_.size()));
        return rng.next_double() < prob_[i] ? i : alias_[i];
    }

    // Exact per-index probability implied by the table (cell mass plus alias
    // contributions), for distribution checks without sampling.
    std::vector<double> implied_probabilities() const;

private:
    std::vector<double> prob_;        // acceptance probability per cell
    std::vector<std::size_t> alias_;  // fallback index per cell
};

} // namespace lifegraph
