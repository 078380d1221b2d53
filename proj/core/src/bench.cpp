#include "lipnn/train/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lipnn/errors.hpp"
#include "lipnn/lipschitz/barrier.hpp"

namespace lipnn {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double grad_diff(const BarrierEval& a, const BarrierEval& b) {
    double d = std::abs(a.value - b.value);
    for (std::size_t i = 0; i < a.grad_weights.size(); ++i)
        d = std::max(d, (a.grad_weights[i] - b.grad_weights[i]).cwiseAbs().maxCoeff());
    for (std::size_t i = 0; i < a.grad_lambdas.size(); ++i)
        d = std::max(d, (a.grad_lambdas[i] - b.grad_lambdas[i]).cwiseAbs().maxCoeff());
    return d;
}

}  // namespace

std::vector<BenchRow> bench_barrier(const std::vector<BenchSize>& sizes, int reps,
                                    std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;

    for (const BenchSize& size : sizes) {
        std::vector<Index> dims(size.depth + 2, size.width);
        MlpParams p = glorot_init(dims, {ActivationKind::Tanh}, seed);
        Multipliers m = Multipliers::constant(p, 1.0);
        const LipschitzTarget t{4.0};
        p = feasible_init(p, m, t);
        const double rho = 1e-3;

        BenchRow row;
        row.depth = size.depth;
        row.width = size.width;
        row.reps = reps;

        std::vector<double> blocked_ms, dense_ms;
        for (int r = 0; r < reps; ++r) {
            auto t0 = clock::now();
            const BarrierEval blocked = barrier_loss_and_grads(p, m, t, rho);
            auto t1 = clock::now();
            const BarrierEval dense = barrier_loss_and_grads_dense(p, m, t, rho);
            auto t2 = clock::now();
            blocked_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            dense_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
            row.max_diff = std::max(row.max_diff, grad_diff(blocked, dense));
        }
        row.blocked_ms = median(blocked_ms);
        row.dense_ms = median(dense_ms);
        row.speedup = row.blocked_ms > 0.0 ? row.dense_ms / row.blocked_ms : 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "depth,width,blocked_ms,dense_ms,speedup,max_diff,reps\n";
    char buf[32];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };
    for (const auto& r : rows)
        out << r.depth << "," << r.width << "," << num(r.blocked_ms) << "," << num(r.dense_ms)
            << "," << num(r.speedup) << "," << num(r.max_diff) << "," << r.reps << "\n";
}

std::vector<BenchSize> parse_bench_sizes(const std::string& text) {
    std::vector<BenchSize> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto x = item.find('x');
        if (x == std::string::npos)
            throw ParseError("bench size '" + item + "' is not of the form DxW", 0);
        BenchSize s;
        try {
            s.depth = std::stoi(item.substr(0, x));
            s.width = std::stoi(item.substr(x + 1));
        } catch (const std::exception&) {
            throw ParseError("bench size '" + item + "' is not of the form DxW", 0);
        }
        if (s.depth < 1 || s.width < 1)
            throw ParseError("bench size '" + item + "' must be positive", 0);
        sizes.push_back(s);
    }
    if (sizes.empty()) throw ParseError("no bench sizes given", 0);
    return sizes;
}

}  // namespace lipnn
