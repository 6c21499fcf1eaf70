#pragma once

#include <string>
#include <vector>

namespace lifegraph {

// Binary metrics with "young" (the positive class) as reference.
struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t n = 0;
};

// gold/predicted as booleans: true = positive class. Zero true positives
// yields precision = recall = f1 = 0.
Metrics binary_metrics(const std::vector<bool>& gold, const std::vector<bool>& predicted);

// Cohen's kappa over two equally long label lists. When chance agreement is
// 1 (both annotators constant and equal marginals), kappa is 1 if the lists
// agree everywhere and 0 otherwise.
double cohen_kappa(const std::vector<std::string>& labels_a, const std::vector<std::string>& labels_b);

// NMI with arithmetic-mean normalization, in [0,1]; both partitions over the
// same item sequence. Used to score recovered communities against planted ones.
double normalized_mutual_information(const std::vector<int>& a, const std::vector<int>& b);

} // namespace lifegraph
