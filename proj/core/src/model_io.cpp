#include "lipnn/train/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lipnn/errors.hpp"

namespace lipnn {

namespace {

constexpr int kFormatVersion = 1;

void write_number(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

struct LineReader {
    std::istream& in;
    long line_no = 0;

    std::string next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return line;
        }
        throw ParseError("unexpected end of model file", line_no);
    }
};

}  // namespace

void save_model(const std::string& path, const MlpParams& p, const Multipliers& m,
                const ModelMeta& meta) {
    p.validate();
    m.validate(p);
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");

    out << "lipnn-model " << kFormatVersion << "\n";
    out << "dims";
    for (Index d : p.dims) out << " " << d;
    out << "\n";
    out << "activation " << p.activation.name() << "\n";
    out << "lipschitz_target ";
    write_number(out, meta.lipschitz_target);
    out << "\nmode " << meta.mode << "\n";

    for (std::size_t i = 0; i < p.weights.size(); ++i) {
        const Matrix& W = p.weights[i];
        out << "W" << i << " " << W.rows() << " " << W.cols() << "\n";
        for (Index r = 0; r < W.rows(); ++r) {
            for (Index c = 0; c < W.cols(); ++c) {
                write_number(out, W(r, c));
                out << (c + 1 < W.cols() ? ' ' : '\n');
            }
        }
        out << "b" << i << " " << p.biases[i].size() << "\n";
        for (Index j = 0; j < p.biases[i].size(); ++j) {
            write_number(out, p.biases[i](j));
            out << (j + 1 < p.biases[i].size() ? ' ' : '\n');
        }
        if (p.biases[i].size() == 0) out << "\n";
    }
    for (std::size_t i = 0; i < m.lambdas.size(); ++i) {
        out << "lambda" << (i + 1) << " " << m.lambdas[i].size() << "\n";
        for (Index j = 0; j < m.lambdas[i].size(); ++j) {
            write_number(out, m.lambdas[i](j));
            out << (j + 1 < m.lambdas[i].size() ? ' ' : '\n');
        }
    }
}

LoadedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    LineReader reader{in};

    {
        std::istringstream head(reader.next());
        std::string tag;
        int version = -1;
        head >> tag >> version;
        if (tag != "lipnn-model")
            throw ParseError("'" + path + "' is not a model file", reader.line_no);
        if (version != kFormatVersion)
            throw VersionMismatch("model format version " + std::to_string(version) +
                                  ", expected " + std::to_string(kFormatVersion));
    }

    LoadedModel model;
    {
        std::istringstream dims_line(reader.next());
        std::string key;
        dims_line >> key;
        if (key != "dims") throw ParseError("expected dims", reader.line_no);
        Index d;
        while (dims_line >> d) model.params.dims.push_back(d);
        if (model.params.dims.size() < 3) throw ParseError("too few dims", reader.line_no);
    }
    {
        std::istringstream act_line(reader.next());
        std::string key, value;
        act_line >> key >> value;
        if (key != "activation") throw ParseError("expected activation", reader.line_no);
        model.params.activation = Activation::parse(value);
    }
    {
        std::istringstream t_line(reader.next());
        std::string key;
        t_line >> key >> model.meta.lipschitz_target;
        if (key != "lipschitz_target")
            throw ParseError("expected lipschitz_target", reader.line_no);
        std::istringstream m_line(reader.next());
        m_line >> key >> model.meta.mode;
        if (key != "mode") throw ParseError("expected mode", reader.line_no);
    }

    auto read_values = [&](Index count) {
        Vector v(count);
        Index got = 0;
        while (got < count) {
            std::istringstream vals(reader.next());
            double x;
            while (vals >> x) {
                if (got >= count) throw ParseError("too many values", reader.line_no);
                v(got++) = x;
            }
        }
        return v;
    };

    const std::size_t layers = model.params.dims.size() - 1;
    for (std::size_t i = 0; i < layers; ++i) {
        std::istringstream w_head(reader.next());
        std::string key;
        Index rows = -1, cols = -1;
        w_head >> key >> rows >> cols;
        if (key != "W" + std::to_string(i) || w_head.fail() ||
            rows != model.params.dims[i + 1] || cols != model.params.dims[i])
            throw ParseError("bad W" + std::to_string(i) + " header", reader.line_no);
        Vector flat = read_values(rows * cols);
        Matrix W(rows, cols);
        for (Index r = 0; r < rows; ++r)
            for (Index c = 0; c < cols; ++c) W(r, c) = flat(r * cols + c);
        model.params.weights.push_back(std::move(W));

        std::istringstream b_head(reader.next());
        Index blen = -1;
        b_head >> key >> blen;
        if (key != "b" + std::to_string(i) || b_head.fail() ||
            blen != model.params.dims[i + 1])
            throw ParseError("bad b" + std::to_string(i) + " header", reader.line_no);
        model.params.biases.push_back(read_values(blen));
    }
    model.params.validate();

    for (std::size_t i = 1; i + 1 < model.params.dims.size(); ++i) {
        std::istringstream l_head(reader.next());
        std::string key;
        Index len = -1;
        l_head >> key >> len;
        if (key != "lambda" + std::to_string(i) || l_head.fail() ||
            len != model.params.dims[i])
            throw ParseError("bad lambda" + std::to_string(i) + " header",
                             reader.line_no);
        model.multipliers.lambdas.push_back(read_values(len));
    }
    model.multipliers.validate(model.params);
    return model;
}

}  // namespace lipnn
