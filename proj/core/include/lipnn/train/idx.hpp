#ifndef LIPNN_TRAIN_IDX_HPP
#define LIPNN_TRAIN_IDX_HPP

#include <string>
#include <vector>

#include "lipnn/train/dataset.hpp"
#include "lipnn/types.hpp"

namespace lipnn {

/// Raw IDX readers (big-endian magic 0x00000803 for images, 0x00000801 for
/// labels). Files may be gzip-compressed; the gzip header is detected and the
/// stream inflated transparently.
std::vector<Matrix> read_idx_images(const std::string& path);
std::vector<int> read_idx_labels(const std::string& path);

/// Image/label pair as a Dataset: pixels scaled to [0,1] and average-pooled
/// k x k down to (out_h, out_w), which must divide the stored size.
Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 Index out_h, Index out_w);

}  // namespace lipnn

#endif
