#pragma once

#include <Eigen/Core>
#include <vector>

namespace orthocp {

using Index = Eigen::Index;
using Shape = std::vector<Index>;

Index shape_size(const Shape& shape);

/// Dense real tensor of order d >= 0, stored column-major (mode 0 varies
/// fastest). An order-0 tensor has an empty shape and holds one scalar.
class DenseTensor {
public:
    DenseTensor() : data_(Eigen::VectorXd::Zero(1)) {}
    explicit DenseTensor(Shape shape);
    DenseTensor(Shape shape, Eigen::VectorXd data);
    static DenseTensor scalar(double value);

    Index order() const { return static_cast<Index>(shape_.size()); }
    const Shape& shape() const { return shape_; }
    Index dim(Index mode) const;
    Index size() const { return data_.size(); }

    Eigen::VectorXd& data() { return data_; }
    const Eigen::VectorXd& data() const { return data_; }

    double& operator[](Index linear) { return data_[linear]; }
    double operator[](Index linear) const { return data_[linear]; }

    /// Entry at a full multi-index (one index per mode).
    double at(const std::vector<Index>& idx) const;

    /// The single entry of an order-0 tensor.
    double value() const;

private:
    Shape shape_;
    Eigen::VectorXd data_;
};

/// Mode-`mode` unfolding: rows index `mode`, columns enumerate the remaining
/// modes in ascending order with the lowest mode varying fastest.
Eigen::MatrixXd unfold_mode(const DenseTensor& a, Index mode);

/// Inverse of unfold_mode; reproduces the original tensor bit-exactly.
DenseTensor refold(const Eigen::MatrixXd& m, Index mode, const Shape& shape);

/// Tensor-vector contraction along `mode`; the result has order d-1.
/// Contracting an order-1 tensor yields an order-0 scalar tensor.
DenseTensor contract_mode(const DenseTensor& a, Index mode, const Eigen::VectorXd& u);

double inner(const DenseTensor& a, const DenseTensor& b);
double fnorm(const DenseTensor& a);

/// Sum of R rank-1 components: sum_i sigmas[i] * u_{0,i} x ... x u_{d-1,i},
/// where u_{j,i} is column i of factors[j].
DenseTensor build_cp(const Eigen::VectorXd& sigmas,
                     const std::vector<Eigen::MatrixXd>& factors);

/// <A, u_{0,col} x ... x u_{d-1,col}> via successive contraction.
double rank1_inner(const DenseTensor& a,
                   const std::vector<Eigen::MatrixXd>& factors, Index col);

}  // namespace orthocp
