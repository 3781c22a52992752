#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace scaf {

using cplx = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;
using CMatrix = Eigen::MatrixXcd;

// Every failure carries a short machine-readable token ("shape", "too-large", ...)
// plus optional free-form detail.
class Error : public std::runtime_error {
public:
    explicit Error(std::string token, const std::string& detail = "")
        : std::runtime_error(detail.empty() ? token : token + ": " + detail),
          token_(std::move(token)), detail_(detail) {}
    const std::string& token() const { return token_; }
    const std::string& detail() const { return detail_; }

private:
    std::string token_;
    std::string detail_;
};

struct Tolerance {
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    double cluster_tol = 1e-6;
};

// Square matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    static IntMatrix identity(int n);
    static IntMatrix ones(int n);

    int n() const { return n_; }
    BigInt& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const BigInt& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<BigInt>& data() const { return a_; }
    std::vector<BigInt>& data() { return a_; }

    IntMatrix transpose() const;
    CMatrix to_complex() const;
    bool is_zero() const;
    bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix scaled(const BigInt& c) const;

private:
    int n_ = 0;
    std::vector<BigInt> a_;
};

// Dense order-m tensor over an n-element index set. Axis 0 is the most
// significant position in the flat layout.
struct Tensor {
    int n = 1;
    int order = 0;
    std::vector<cplx> data{cplx(0)};
    bool exact = false;
    std::vector<BigInt> exact_data;

    static Tensor zeros(int n, int order);
    static Tensor from_matrix(const CMatrix& m);
    static Tensor from_matrix(const IntMatrix& m);

    size_t size() const { return data.size(); }
    size_t flat(const std::vector<int>& idx) const;
    std::vector<int> unflat(size_t f) const;
    cplx at(const std::vector<int>& idx) const { return data[flat(idx)]; }
    cplx scalar() const;
    double max_abs() const;
    CMatrix as_matrix() const;

    // exact flag survives only for integer scalars
    Tensor scaled(cplx c) const;
    Tensor operator+(const Tensor& o) const;
    Tensor operator-(const Tensor& o) const;
    Tensor permuted(const std::vector<int>& axes) const;
};

IntMatrix mat_product(const IntMatrix& a, const IntMatrix& b);
CMatrix mat_product(const CMatrix& a, const CMatrix& b);
IntMatrix mat_hadamard(const IntMatrix& a, const IntMatrix& b);
CMatrix mat_hadamard(const CMatrix& a, const CMatrix& b);

// Spectral projectors of a commuting family of normal matrices. J/n, when it
// is one of the projectors, is listed first.
std::vector<CMatrix> simultaneous_eigenprojectors(const std::vector<CMatrix>& family,
                                                  const Tolerance& tol, uint64_t seed);

int span_rank(const std::vector<Tensor>& tensors, const Tolerance& tol);
cplx tensor_inner(const Tensor& s, const Tensor& t);
bool tensor_close(const Tensor& s, const Tensor& t, const Tolerance& tol);
double tensor_distance(const Tensor& s, const Tensor& t);

// x rounded to 12 significant digits with -0 folded into 0; used for all printed floats.
double round12(double x);

// Nearest integer if x is within eps of one.
std::optional<long long> near_integer(double x, double eps = 1e-9);

}  // namespace scaf
