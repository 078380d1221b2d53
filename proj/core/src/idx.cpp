#include "lipnn/train/idx.hpp"

#include <zlib.h>

#include <cstdint>
#include <cstring>
#include <fstream>

#include "lipnn/errors.hpp"

namespace lipnn {

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> gunzip(const std::vector<std::uint8_t>& raw) {
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 32) != Z_OK)  // +32: accept gzip and zlib headers
        throw DataError("zlib initialization failed");

    std::vector<std::uint8_t> out;
    out.reserve(raw.size() * 4);
    std::uint8_t buf[1 << 16];
    zs.next_in = const_cast<std::uint8_t*>(raw.data());
    zs.avail_in = static_cast<uInt>(raw.size());
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = buf;
        zs.avail_out = sizeof buf;
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw TruncatedFile("corrupt gzip stream");
        }
        out.insert(out.end(), buf, buf + (sizeof buf - zs.avail_out));
    }
    inflateEnd(&zs);
    return out;
}

std::vector<std::uint8_t> read_maybe_gzipped(const std::string& path) {
    auto raw = read_file(path);
    if (raw.size() >= 2 && raw[0] == 0x1f && raw[1] == 0x8b) return gunzip(raw);
    return raw;
}

std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t off) {
    if (off + 4 > b.size()) throw TruncatedFile("IDX header truncated");
    return (std::uint32_t(b[off]) << 24) | (std::uint32_t(b[off + 1]) << 16) |
           (std::uint32_t(b[off + 2]) << 8) | std::uint32_t(b[off + 3]);
}

}  // namespace

std::vector<Matrix> read_idx_images(const std::string& path) {
    const auto bytes = read_maybe_gzipped(path);
    if (be32(bytes, 0) != 0x00000803u)
        throw BadMagic("'" + path + "' is not an IDX image file");
    const std::size_t count = be32(bytes, 4);
    const std::size_t rows = be32(bytes, 8);
    const std::size_t cols = be32(bytes, 12);
    if (bytes.size() < 16 + count * rows * cols)
        throw TruncatedFile("'" + path + "' ends before the pixel data does");

    std::vector<Matrix> images;
    images.reserve(count);
    std::size_t off = 16;
    for (std::size_t i = 0; i < count; ++i) {
        Matrix img(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) img(r, c) = double(bytes[off++]);
        images.push_back(std::move(img));
    }
    return images;
}

std::vector<int> read_idx_labels(const std::string& path) {
    const auto bytes = read_maybe_gzipped(path);
    if (be32(bytes, 0) != 0x00000801u)
        throw BadMagic("'" + path + "' is not an IDX label file");
    const std::size_t count = be32(bytes, 4);
    if (bytes.size() < 8 + count)
        throw TruncatedFile("'" + path + "' ends before the label data does");
    return {bytes.begin() + 8, bytes.begin() + 8 + count};
}

Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 Index out_h, Index out_w) {
    const auto images = read_idx_images(images_path);
    const auto labels = read_idx_labels(labels_path);
    if (images.size() != labels.size())
        throw DimensionError("image/label counts differ (" + std::to_string(images.size()) +
                             " vs " + std::to_string(labels.size()) + ")");
    if (images.empty()) throw DataError("'" + images_path + "' holds no images");

    const Index rows = images.front().rows();
    const Index cols = images.front().cols();
    if (out_h <= 0 || out_w <= 0 || rows % out_h != 0 || cols % out_w != 0)
        throw DimensionError("cannot pool " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " down to " + std::to_string(out_h) +
                             "x" + std::to_string(out_w));
    const Index kh = rows / out_h;
    const Index kw = cols / out_w;

    Dataset data;
    data.inputs.reserve(images.size());
    for (const Matrix& img : images) {
        Vector x(out_h * out_w);
        for (Index r = 0; r < out_h; ++r)
            for (Index c = 0; c < out_w; ++c) {
                const double s = img.block(r * kh, c * kw, kh, kw).sum();
                x(r * out_w + c) = s / (255.0 * double(kh * kw));
            }
        data.inputs.push_back(std::move(x));
    }
    data.labels = labels;
    data.is_test.assign(data.size(), 0);
    return data;
}

}  // namespace lipnn
