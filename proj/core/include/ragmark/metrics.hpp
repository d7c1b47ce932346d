#pragma once

#include <cstddef>
#include <vector>

namespace ragmark {

// Graded-relevance NDCG with exponential gain (2^rel - 1) and log2(i + 1)
// discount over the first k positions. Returns 0 when the ideal DCG is 0.
double ndcg_at_k(const std::vector<double>& relevances, std::size_t k);

// Mean reciprocal rank over queries; a query scores 1/rank of its first
// relevant hit within the top k, or 0 when none appears there.
double mrr_at_k(const std::vector<std::vector<bool>>& relevances, std::size_t k);

// Mann-Whitney ROC-AUC with average ranks for tied scores. Labels are
// true for positives. Requires both classes to be present.
double roc_auc(const std::vector<double>& scores, const std::vector<bool>& labels);

// Fraction of predictions equal to their labels.
double accuracy(const std::vector<bool>& predictions, const std::vector<bool>& labels);

}  // namespace ragmark
