#include <algorithm>
#include <cmath>
#include <numeric>

#include "speechbelt/classify.hpp"
#include "speechbelt/error.hpp"
#include "speechbelt/rng.hpp"

namespace speechbelt {

namespace {

// Grows one CART tree on a bootstrap sample: Gini impurity, midpoint
// thresholds, a fresh random feature subset at every split. node_rows is
// partitioned in place as the recursion descends.
struct TreeBuilder {
    const FeatureMatrix& matrix;
    const std::vector<Label>& labels;
    int max_features;
    std::size_t min_leaf;
    int max_depth;
    Rng& rng;

    DecisionTree tree;
    std::vector<int> feature_pool;
    std::vector<std::size_t> node_rows;  // bootstrap row indices

    static double gini(std::size_t speech, std::size_t total) {
        if (total == 0) return 0.0;
        const double p = static_cast<double>(speech) / static_cast<double>(total);
        return 1.0 - p * p - (1.0 - p) * (1.0 - p);
    }

    int make_leaf(std::size_t begin, std::size_t end, std::size_t speech) {
        TreeNode node;
        node.feature = -1;
        node.sample_count = static_cast<int>(end - begin);
        node.label = 2 * speech >= end - begin ? Label::Speech : Label::NoSpeech;
        tree.nodes.push_back(node);
        return static_cast<int>(tree.nodes.size() - 1);
    }

    // Subtree over node_rows[begin, end); returns its node index.
    int grow(std::size_t begin, std::size_t end, int depth) {
        const std::size_t n = end - begin;
        std::size_t speech = 0;
        for (std::size_t i = begin; i < end; ++i)
            if (labels[node_rows[i]] == Label::Speech) ++speech;

        const bool pure = speech == 0 || speech == n;
        if (pure || n < 2 * min_leaf || (max_depth > 0 && depth >= max_depth))
            return make_leaf(begin, end, speech);

        // Partial Fisher-Yates: the first mtry entries are this split's
        // candidate features, in draw order.
        const int d = static_cast<int>(matrix.n_cols());
        const int mtry = std::min(d, max_features);
        for (int i = 0; i < mtry; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) + rng.uniform_index(static_cast<std::size_t>(d - i));
            std::swap(feature_pool[static_cast<std::size_t>(i)], feature_pool[j]);
        }

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_impurity = gini(speech, n);

        std::vector<std::pair<double, Label>> column(n);
        for (int fi = 0; fi < mtry; ++fi) {
            const int feature = feature_pool[static_cast<std::size_t>(fi)];
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t row = node_rows[begin + i];
                column[i] = {matrix.rows[row][static_cast<std::size_t>(feature)], labels[row]};
            }
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::size_t left_total = 0, left_speech = 0;
            for (std::size_t i = 1; i < n; ++i) {
                ++left_total;
                if (column[i - 1].second == Label::Speech) ++left_speech;
                if (column[i - 1].first == column[i].first) continue;
                const std::size_t right_total = n - left_total;
                if (left_total < min_leaf || right_total < min_leaf) continue;
                const double weighted =
                    (static_cast<double>(left_total) * gini(left_speech, left_total) +
                     static_cast<double>(right_total) * gini(speech - left_speech, right_total)) /
                    static_cast<double>(n);
                if (weighted < best_impurity - 1e-12) {
                    best_impurity = weighted;
                    best_feature = feature;
                    best_threshold =
                        column[i - 1].first + 0.5 * (column[i].first - column[i - 1].first);
                }
            }
        }

        if (best_feature < 0) return make_leaf(begin, end, speech);

        const auto first = node_rows.begin() + static_cast<long long>(begin);
        const auto last = node_rows.begin() + static_cast<long long>(end);
        const auto mid_iter = std::stable_partition(first, last, [&](std::size_t row) {
            return matrix.rows[row][static_cast<std::size_t>(best_feature)] < best_threshold;
        });
        const auto mid = static_cast<std::size_t>(std::distance(node_rows.begin(), mid_iter));
        // Midpoints between adjacent representable doubles can collapse
        // onto one of them; fall back to a leaf rather than recurse on an
        // empty side.
        if (mid == begin || mid == end) return make_leaf(begin, end, speech);

        TreeNode node;
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.sample_count = static_cast<int>(n);
        tree.nodes.push_back(node);
        const int self = static_cast<int>(tree.nodes.size() - 1);

        const int left = grow(begin, mid, depth + 1);
        const int right = grow(mid, end, depth + 1);
        tree.nodes[static_cast<std::size_t>(self)].left = left;
        tree.nodes[static_cast<std::size_t>(self)].right = right;
        return self;
    }
};

} // namespace

RfParameters train_forest(const FeatureMatrix& matrix, const std::vector<Label>& labels,
                          const Hyperparams& hp, std::uint64_t seed) {
    const std::size_t n = matrix.n_rows();
    const int d = static_cast<int>(matrix.n_cols());
    const int max_features = hp.rf_max_features > 0
                                 ? hp.rf_max_features
                                 : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));

    RfParameters forest;
    forest.trees.reserve(static_cast<std::size_t>(hp.rf_n_trees));
    for (int t = 0; t < hp.rf_n_trees; ++t) {
        Rng rng(derive_seed(seed, "rf-tree", static_cast<std::uint64_t>(t)));

        TreeBuilder builder{matrix,
                            labels,
                            max_features,
                            static_cast<std::size_t>(std::max(1, hp.rf_min_leaf)),
                            hp.rf_max_depth,
                            rng,
                            DecisionTree{},
                            std::vector<int>(static_cast<std::size_t>(d)),
                            std::vector<std::size_t>(n)};
        std::iota(builder.feature_pool.begin(), builder.feature_pool.end(), 0);
        for (auto& idx : builder.node_rows) idx = rng.uniform_index(n);

        builder.grow(0, n, 0);
        forest.trees.push_back(std::move(builder.tree));
    }
    return forest;
}

} // namespace speechbelt
