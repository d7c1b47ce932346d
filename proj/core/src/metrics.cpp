#include "ragmark/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ragmark/errors.hpp"

namespace ragmark {
namespace {

double dcg(const std::vector<double>& relevances, std::size_t k) {
    double sum = 0.0;
    const std::size_t n = std::min(k, relevances.size());
    for (std::size_t i = 0; i < n; ++i) {
        sum += (std::exp2(relevances[i]) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
    }
    return sum;
}

}  // namespace

double ndcg_at_k(const std::vector<double>& relevances, std::size_t k) {
    if (k == 0) throw MetricError("ndcg_at_k: k must be positive");
    for (double rel : relevances) {
        if (rel < 0.0) throw MetricError("ndcg_at_k: negative relevance");
    }
    std::vector<double> ideal = relevances;
    std::sort(ideal.begin(), ideal.end(), std::greater<>());
    const double denom = dcg(ideal, k);
    if (denom == 0.0) return 0.0;
    return dcg(relevances, k) / denom;
}

double mrr_at_k(const std::vector<std::vector<bool>>& relevances, std::size_t k) {
    if (k == 0) throw MetricError("mrr_at_k: k must be positive");
    if (relevances.empty()) throw MetricError("mrr_at_k: no queries");
    double sum = 0.0;
    for (const auto& query : relevances) {
        const std::size_t n = std::min(k, query.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (query[i]) {
                sum += 1.0 / (static_cast<double>(i) + 1.0);
                break;
            }
        }
    }
    return sum / static_cast<double>(relevances.size());
}

double roc_auc(const std::vector<double>& scores, const std::vector<bool>& labels) {
    if (scores.size() != labels.size()) throw MetricError("roc_auc: size mismatch");
    if (scores.empty()) throw MetricError("roc_auc: empty input");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // 1-based average ranks; tied scores share the mean of their rank block.
    std::vector<double> ranks(scores.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }

    double positive_rank_sum = 0.0;
    std::size_t positives = 0;
    for (std::size_t t = 0; t < labels.size(); ++t) {
        if (labels[t]) {
            positive_rank_sum += ranks[t];
            ++positives;
        }
    }
    const std::size_t negatives = labels.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw MetricError("roc_auc: needs both positive and negative labels");
    }
    const double n_pos = static_cast<double>(positives);
    const double n_neg = static_cast<double>(negatives);
    return (positive_rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

double accuracy(const std::vector<bool>& predictions, const std::vector<bool>& labels) {
    if (predictions.size() != labels.size()) throw MetricError("accuracy: size mismatch");
    if (predictions.empty()) throw MetricError("accuracy: empty input");
    std::size_t correct = 0;
    for (std::size_t t = 0; t < predictions.size(); ++t) {
        if (predictions[t] == labels[t]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

}  // namespace ragmark
