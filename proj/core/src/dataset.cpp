#include "lipnn/train/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "lipnn/errors.hpp"

namespace lipnn {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

int Dataset::num_classes() const {
    int c = 0;
    for (int l : labels) c = std::max(c, l + 1);
    return c;
}

std::vector<std::size_t> Dataset::train_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < size(); ++i)
        if (is_test.empty() || !is_test[i]) idx.push_back(i);
    return idx;
}

std::vector<std::size_t> Dataset::test_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < size(); ++i)
        if (!is_test.empty() && is_test[i]) idx.push_back(i);
    return idx;
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_fields(line);
    if (header.empty()) throw ParseError("empty header", 1);

    // leading columns x1..xd, then either `label` or y1..yk
    std::size_t d = 0;
    while (d < header.size() && header[d].size() > 1 && header[d][0] == 'x') ++d;
    if (d == 0) throw ParseError("header must start with x1,...,xd", 1);
    const bool has_label = d < header.size() && header[d] == "label";
    const std::size_t k = header.size() - d;
    if (!has_label && k == 0)
        throw ParseError("header needs a label or target columns", 1);

    Dataset data;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        Vector x(d);
        for (std::size_t i = 0; i < d; ++i) {
            std::size_t pos = 0;
            try {
                x(i) = std::stod(fields[i], &pos);
            } catch (const std::exception&) {
                throw ParseError("malformed number '" + fields[i] + "'", line_no);
            }
            if (pos != fields[i].size())
                throw ParseError("malformed number '" + fields[i] + "'", line_no);
        }
        data.inputs.push_back(std::move(x));
        if (has_label) {
            try {
                data.labels.push_back(std::stoi(fields[d]));
            } catch (const std::exception&) {
                throw ParseError("malformed label '" + fields[d] + "'", line_no);
            }
        } else {
            Vector y(k);
            for (std::size_t i = 0; i < k; ++i) {
                try {
                    y(i) = std::stod(fields[d + i]);
                } catch (const std::exception&) {
                    throw ParseError("malformed number '" + fields[d + i] + "'", line_no);
                }
            }
            data.targets.push_back(std::move(y));
        }
    }
    if (data.inputs.empty()) throw DataError("'" + path + "' holds no samples");
    for (const auto& x : data.inputs)
        if (x.size() != data.inputs.front().size())
            throw DimensionError("inconsistent input dimension in '" + path + "'");
    data.is_test.assign(data.size(), 0);
    return data;
}

void save_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    const Index d = data.input_dim();
    for (Index i = 0; i < d; ++i) out << "x" << (i + 1) << ",";
    if (data.labeled()) {
        out << "label\n";
    } else {
        const Index k = data.targets.front().size();
        for (Index i = 0; i < k; ++i) out << "y" << (i + 1) << (i + 1 < k ? "," : "\n");
    }
    char buf[32];
    for (std::size_t s = 0; s < data.size(); ++s) {
        for (Index i = 0; i < d; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", data.inputs[s](i));
            out << buf << ",";
        }
        if (data.labeled()) {
            out << data.labels[s] << "\n";
        } else {
            const Vector& y = data.targets[s];
            for (Index i = 0; i < y.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", y(i));
                out << buf << (i + 1 < y.size() ? "," : "\n");
            }
        }
    }
}

void split_train_test(Dataset& data, double fraction, std::uint64_t seed) {
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t n_test = static_cast<std::size_t>(std::floor(fraction * data.size()));
    data.is_test.assign(data.size(), 0);
    for (std::size_t i = 0; i < n_test; ++i) data.is_test[order[i]] = 1;
}

Dataset make_blobs_2d(int points, std::uint64_t seed, double test_fraction) {
    // Three overlapping Gaussian blobs on a ring, clipped to [-1,1]^2. The
    // spread is chosen so unconstrained training interpolates the label
    // noise (huge Lipschitz constants) while ~0.9 test accuracy stays
    // reachable under a Lipschitz budget.
    constexpr int kClasses = 3;
    constexpr double kRadius = 0.5;
    constexpr double kSigma = 0.28;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, kSigma);

    Dataset data;
    for (int i = 0; i < points; ++i) {
        const int c = i % kClasses;
        const double angle = 2.0 * M_PI * (0.25 + double(c) / kClasses);
        Vector x(2);
        x(0) = std::clamp(kRadius * std::cos(angle) + normal(rng), -1.0, 1.0);
        x(1) = std::clamp(kRadius * std::sin(angle) + normal(rng), -1.0, 1.0);
        data.inputs.push_back(std::move(x));
        data.labels.push_back(c);
    }
    split_train_test(data, test_fraction, seed ^ 0x9e3779b97f4a7c15ULL);
    return data;
}

}  // namespace lipnn
