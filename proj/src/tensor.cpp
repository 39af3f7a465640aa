#include "orthocp/tensor.hpp"

#include <stdexcept>
#include <string>

namespace orthocp {

Index shape_size(const Shape& shape) {
    Index n = 1;
    for (Index d : shape) n *= d;
    return n;
}

static void check_shape(const Shape& shape) {
    for (Index d : shape) {
        if (d < 1) throw std::invalid_argument("tensor dims must be >= 1");
    }
}

DenseTensor::DenseTensor(Shape shape) : shape_(std::move(shape)) {
    check_shape(shape_);
    data_ = Eigen::VectorXd::Zero(shape_size(shape_));
}

DenseTensor::DenseTensor(Shape shape, Eigen::VectorXd data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    check_shape(shape_);
    if (data_.size() != shape_size(shape_)) {
        throw std::invalid_argument("data length does not match shape");
    }
}

DenseTensor DenseTensor::scalar(double value) {
    DenseTensor t;
    t.data_[0] = value;
    return t;
}

Index DenseTensor::dim(Index mode) const {
    if (mode < 0 || mode >= order()) {
        throw std::invalid_argument("mode index out of range");
    }
    return shape_[static_cast<std::size_t>(mode)];
}

double DenseTensor::at(const std::vector<Index>& idx) const {
    if (static_cast<Index>(idx.size()) != order()) {
        throw std::invalid_argument("multi-index order mismatch");
    }
    Index linear = 0;
    Index stride = 1;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] < 0 || idx[k] >= shape_[k]) {
            throw std::invalid_argument("multi-index out of range");
        }
        linear += idx[k] * stride;
        stride *= shape_[k];
    }
    return data_[linear];
}

double DenseTensor::value() const {
    if (order() != 0) throw std::invalid_argument("value() needs an order-0 tensor");
    return data_[0];
}

Eigen::MatrixXd unfold_mode(const DenseTensor& a, Index mode) {
    const Index d = a.order();
    if (d < 1) throw std::invalid_argument("cannot unfold an order-0 tensor");
    if (mode < 0 || mode >= d) throw std::invalid_argument("invalid unfold mode");

    const Shape& shape = a.shape();
    Index inner = 1;  // product of dims below `mode`
    for (Index k = 0; k < mode; ++k) inner *= shape[static_cast<std::size_t>(k)];
    const Index rows = shape[static_cast<std::size_t>(mode)];
    const Index outer = a.size() / (inner * rows);

    Eigen::MatrixXd m(rows, inner * outer);
    const Eigen::VectorXd& x = a.data();
    for (Index out = 0; out < outer; ++out) {
        for (Index r = 0; r < rows; ++r) {
            const Index base = inner * (r + rows * out);
            for (Index in = 0; in < inner; ++in) {
                m(r, in + inner * out) = x[in + base];
            }
        }
    }
    return m;
}

DenseTensor refold(const Eigen::MatrixXd& m, Index mode, const Shape& shape) {
    const Index d = static_cast<Index>(shape.size());
    if (mode < 0 || mode >= d) throw std::invalid_argument("invalid refold mode");
    const Index total = shape_size(shape);
    const Index rows = shape[static_cast<std::size_t>(mode)];
    if (m.rows() != rows || m.rows() * m.cols() != total) {
        throw std::invalid_argument("matrix does not match target shape");
    }
    Index inner = 1;
    for (Index k = 0; k < mode; ++k) inner *= shape[static_cast<std::size_t>(k)];
    const Index outer = total / (inner * rows);

    Eigen::VectorXd x(total);
    for (Index out = 0; out < outer; ++out) {
        for (Index r = 0; r < rows; ++r) {
            const Index base = inner * (r + rows * out);
            for (Index in = 0; in < inner; ++in) {
                x[in + base] = m(r, in + inner * out);
            }
        }
    }
    return DenseTensor(shape, std::move(x));
}

DenseTensor contract_mode(const DenseTensor& a, Index mode, const Eigen::VectorXd& u) {
    const Index d = a.order();
    if (d < 1) throw std::invalid_argument("cannot contract an order-0 tensor");
    if (mode < 0 || mode >= d) throw std::invalid_argument("invalid contraction mode");
    const Shape& shape = a.shape();
    const Index nk = shape[static_cast<std::size_t>(mode)];
    if (u.size() != nk) {
        throw std::invalid_argument("contraction vector length mismatch: expected " +
                                    std::to_string(nk) + ", got " +
                                    std::to_string(u.size()));
    }

    Shape out_shape;
    out_shape.reserve(static_cast<std::size_t>(d - 1));
    for (Index k = 0; k < d; ++k) {
        if (k != mode) out_shape.push_back(shape[static_cast<std::size_t>(k)]);
    }

    Index inner = 1;
    for (Index k = 0; k < mode; ++k) inner *= shape[static_cast<std::size_t>(k)];
    const Index outer = a.size() / (inner * nk);

    Eigen::VectorXd y = Eigen::VectorXd::Zero(inner * outer);
    const Eigen::VectorXd& x = a.data();
    for (Index out = 0; out < outer; ++out) {
        for (Index k = 0; k < nk; ++k) {
            const double w = u[k];
            if (w == 0.0) continue;
            const Index src = inner * (k + nk * out);
            const Index dst = inner * out;
            for (Index in = 0; in < inner; ++in) {
                y[dst + in] += x[src + in] * w;
            }
        }
    }
    return DenseTensor(std::move(out_shape), std::move(y));
}

double inner(const DenseTensor& a, const DenseTensor& b) {
    if (a.shape() != b.shape()) {
        throw std::invalid_argument("inner product needs identical shapes");
    }
    return a.data().dot(b.data());
}

double fnorm(const DenseTensor& a) { return a.data().norm(); }

DenseTensor build_cp(const Eigen::VectorXd& sigmas,
                     const std::vector<Eigen::MatrixXd>& factors) {
    if (factors.empty()) throw std::invalid_argument("build_cp needs factors");
    const Index rank = factors.front().cols();
    if (sigmas.size() != rank) {
        throw std::invalid_argument("sigma count does not match factor columns");
    }
    Shape shape;
    shape.reserve(factors.size());
    for (const auto& f : factors) {
        if (f.cols() != rank) {
            throw std::invalid_argument("inconsistent factor column counts");
        }
        shape.push_back(f.rows());
    }

    const Index total = shape_size(shape);
    Eigen::VectorXd data = Eigen::VectorXd::Zero(total);
    Eigen::VectorXd w, next;
    for (Index i = 0; i < rank; ++i) {
        if (sigmas[i] == 0.0) continue;
        w = factors[0].col(i);
        for (std::size_t j = 1; j < factors.size(); ++j) {
            const Eigen::VectorXd& uj = factors[j].col(i);
            next.resize(w.size() * uj.size());
            for (Index q = 0; q < uj.size(); ++q) {
                next.segment(q * w.size(), w.size()) = w * uj[q];
            }
            w.swap(next);
        }
        data += sigmas[i] * w;
    }
    return DenseTensor(std::move(shape), std::move(data));
}

double rank1_inner(const DenseTensor& a,
                   const std::vector<Eigen::MatrixXd>& factors, Index col) {
    if (static_cast<Index>(factors.size()) != a.order()) {
        throw std::invalid_argument("factor count does not match tensor order");
    }
    DenseTensor t = a;
    for (Index j = a.order() - 1; j >= 0; --j) {
        t = contract_mode(t, j, factors[static_cast<std::size_t>(j)].col(col));
    }
    return t.value();
}

}  // namespace orthocp
