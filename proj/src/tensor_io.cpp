#include "orthocp/tensor_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace orthocp {

namespace {

constexpr char kMagic[4] = {'O', 'T', 'N', 'S'};
constexpr Index kMaxOrder = 8;

void put_u32(std::ostream& os, std::uint32_t v) {
    char buf[4];
    for (int k = 0; k < 4; ++k) buf[k] = static_cast<char>((v >> (8 * k)) & 0xFF);
    os.write(buf, 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
    char buf[8];
    for (int k = 0; k < 8; ++k) buf[k] = static_cast<char>((v >> (8 * k)) & 0xFF);
    os.write(buf, 8);
}

void put_f64(std::ostream& os, double v) {
    put_u64(os, std::bit_cast<std::uint64_t>(v));
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char buf[4];
    is.read(reinterpret_cast<char*>(buf), 4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(buf[k]) << (8 * k);
    return v;
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(buf[k]) << (8 * k);
    return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_otns(const std::filesystem::path& path, const DenseTensor& a) {
    if (a.order() > kMaxOrder) {
        throw std::invalid_argument("write_otns: order above 8 is unsupported");
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_otns: cannot open " + path.string());
    os.write(kMagic, 4);
    put_u32(os, static_cast<std::uint32_t>(a.order()));
    for (Index dim : a.shape()) put_u64(os, static_cast<std::uint64_t>(dim));
    for (Index k = 0; k < a.size(); ++k) put_f64(os, a[k]);
    if (!os) throw std::runtime_error("write_otns: write failed on " + path.string());
}

DenseTensor read_otns(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_otns: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("read_otns: bad magic in " + path.string());
    }
    const std::uint32_t order = get_u32(is);
    if (!is || order > kMaxOrder) {
        throw std::runtime_error("read_otns: unsupported order in " + path.string());
    }
    Shape shape;
    shape.reserve(order);
    for (std::uint32_t j = 0; j < order; ++j) {
        const std::uint64_t dim = get_u64(is);
        if (!is || dim < 1 || dim > (std::uint64_t{1} << 32)) {
            throw std::runtime_error("read_otns: bad dimension in " + path.string());
        }
        shape.push_back(static_cast<Index>(dim));
    }
    const Index total = shape_size(shape);
    Eigen::VectorXd data(total);
    for (Index k = 0; k < total; ++k) data[k] = get_f64(is);
    if (!is) throw std::runtime_error("read_otns: truncated file " + path.string());
    return DenseTensor(std::move(shape), std::move(data));
}

void write_matrix_otns(const std::filesystem::path& path,
                       const Eigen::MatrixXd& m) {
    Eigen::VectorXd data(m.size());
    Eigen::Map<Eigen::MatrixXd>(data.data(), m.rows(), m.cols()) = m;
    write_otns(path, DenseTensor({m.rows(), m.cols()}, std::move(data)));
}

Eigen::MatrixXd read_matrix_otns(const std::filesystem::path& path) {
    const DenseTensor t = read_otns(path);
    if (t.order() != 2) {
        throw std::runtime_error("read_matrix_otns: " + path.string() +
                                 " is not an order-2 tensor");
    }
    return Eigen::Map<const Eigen::MatrixXd>(t.data().data(), t.dim(0), t.dim(1));
}

namespace {

void collect_shape(const nlohmann::json& node, Shape& shape, std::size_t depth) {
    if (node.is_array()) {
        if (node.empty()) {
            throw std::runtime_error("tensor JSON: empty array level");
        }
        if (depth == shape.size()) {
            shape.push_back(static_cast<Index>(node.size()));
        } else if (shape[depth] != static_cast<Index>(node.size())) {
            throw std::runtime_error("tensor JSON: ragged nesting");
        }
        collect_shape(node.front(), shape, depth + 1);
    } else if (!node.is_number()) {
        throw std::runtime_error("tensor JSON: non-numeric leaf");
    }
}

void fill(const nlohmann::json& node, const Shape& shape,
          const std::vector<Index>& strides, std::size_t depth, Index offset,
          Eigen::VectorXd& data) {
    if (depth == shape.size()) {
        if (!node.is_number()) throw std::runtime_error("tensor JSON: ragged leaf");
        data[offset] = node.get<double>();
        return;
    }
    if (!node.is_array() ||
        static_cast<Index>(node.size()) != shape[depth]) {
        throw std::runtime_error("tensor JSON: ragged nesting");
    }
    for (Index i = 0; i < shape[depth]; ++i) {
        fill(node[static_cast<std::size_t>(i)], shape, strides, depth + 1,
             offset + i * strides[depth], data);
    }
}

}  // namespace

DenseTensor tensor_from_json_text(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.is_number()) return DenseTensor::scalar(doc.get<double>());
    Shape shape;
    collect_shape(doc, shape, 0);
    if (static_cast<Index>(shape.size()) > kMaxOrder) {
        throw std::runtime_error("tensor JSON: order above 8 is unsupported");
    }
    std::vector<Index> strides(shape.size());
    Index stride = 1;
    for (std::size_t k = 0; k < shape.size(); ++k) {  // outermost level is mode 0
        strides[k] = stride;
        stride *= shape[k];
    }
    Eigen::VectorXd data(shape_size(shape));
    fill(doc, shape, strides, 0, 0, data);
    return DenseTensor(std::move(shape), std::move(data));
}

DenseTensor read_tensor_file(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".otns") return read_otns(path);
    if (ext == ".json") {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open " + path.string());
        std::string text((std::istreambuf_iterator<char>(is)),
                         std::istreambuf_iterator<char>());
        return tensor_from_json_text(text);
    }
    throw std::runtime_error("unknown tensor file extension: " + path.string());
}

}  // namespace orthocp
