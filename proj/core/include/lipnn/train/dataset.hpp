#ifndef LIPNN_TRAIN_DATASET_HPP
#define LIPNN_TRAIN_DATASET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lipnn/types.hpp"

namespace lipnn {

/// In-memory dataset: inputs plus either integer class labels or target
/// vectors, with a train/test tag per sample.
struct Dataset {
    std::vector<Vector> inputs;
    std::vector<int> labels;      // empty for regression data
    std::vector<Vector> targets;  // empty for labeled data
    std::vector<std::uint8_t> is_test;

    bool labeled() const { return !labels.empty(); }
    std::size_t size() const { return inputs.size(); }
    Index input_dim() const { return inputs.empty() ? 0 : inputs.front().size(); }
    int num_classes() const;

    std::vector<std::size_t> train_indices() const;
    std::vector<std::size_t> test_indices() const;
};

/// CSV with header `x1,...,xd,label` (integer labels) or `x1,...,xd,y1,...,yk`
/// (vector targets). Throws ParseError with the offending line number.
Dataset load_csv(const std::string& path);
void save_csv(const std::string& path, const Dataset& data);

/// Seeded shuffle, then the last `fraction` of samples become the test split.
void split_train_test(Dataset& data, double fraction, std::uint64_t seed);

/// The toy 3-class dataset: Gaussian blobs on a ring inside [-1,1]^2.
Dataset make_blobs_2d(int points = 300, std::uint64_t seed = 7, double test_fraction = 0.25);

}  // namespace lipnn

#endif
