#ifndef LIPNN_TRAIN_BENCH_HPP
#define LIPNN_TRAIN_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lipnn {

struct BenchSize {
    int depth = 1;  // hidden layers
    int width = 2;  // neurons per layer (also input/output width)
};

struct BenchRow {
    int depth = 0;
    int width = 0;
    double blocked_ms = 0.0;  // median over the repetitions
    double dense_ms = 0.0;
    double speedup = 0.0;     // dense / blocked
    double max_diff = 0.0;    // worst disagreement between the two paths
    int reps = 0;
};

/// One barrier value-and-gradient evaluation per repetition, timed through
/// the blocked path and through the dense path (dense Cholesky plus full
/// inverse), on a random feasible network of each size.
std::vector<BenchRow> bench_barrier(const std::vector<BenchSize>& sizes, int reps = 20,
                                    std::uint64_t seed = 1);

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);
std::vector<BenchSize> parse_bench_sizes(const std::string& text);

}  // namespace lipnn

#endif
