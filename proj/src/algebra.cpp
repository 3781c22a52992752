#include "scaf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <cstdio>
#include <cstdlib>
#include <random>

namespace scaf {

namespace {

void require_same(int a, int b) {
    if (a != b) throw Error("shape", "side " + std::to_string(a) + " vs " + std::to_string(b));
}

void require_same_shape(const Tensor& s, const Tensor& t) {
    if (s.n != t.n || s.order != t.order)
        throw Error("shape", "tensor (n=" + std::to_string(s.n) + ", order=" + std::to_string(s.order) +
                                 ") vs (n=" + std::to_string(t.n) + ", order=" + std::to_string(t.order) + ")");
}

size_t ipow(size_t b, int e) {
    size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::ones(int n) {
    IntMatrix m(n);
    for (auto& x : m.a_) x = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

CMatrix IntMatrix::to_complex() const {
    CMatrix c(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) c(i, j) = cplx((*this)(i, j).convert_to<double>(), 0.0);
    return c;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x.is_zero(); });
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    require_same(n_, o.n_);
    IntMatrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    require_same(n_, o.n_);
    IntMatrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

IntMatrix IntMatrix::scaled(const BigInt& c) const {
    IntMatrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

Tensor Tensor::zeros(int n, int order) {
    Tensor t;
    t.n = n;
    t.order = order;
    t.data.assign(ipow(n, order), cplx(0));
    return t;
}

Tensor Tensor::from_matrix(const CMatrix& m) {
    Tensor t = zeros(static_cast<int>(m.rows()), 2);
    for (int i = 0; i < t.n; ++i)
        for (int j = 0; j < t.n; ++j) t.data[static_cast<size_t>(i) * t.n + j] = m(i, j);
    return t;
}

Tensor Tensor::from_matrix(const IntMatrix& m) {
    Tensor t = zeros(m.n(), 2);
    t.exact = true;
    t.exact_data = m.data();
    for (size_t i = 0; i < t.data.size(); ++i) t.data[i] = cplx(t.exact_data[i].convert_to<double>(), 0.0);
    return t;
}

size_t Tensor::flat(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != order) throw Error("shape", "index arity");
    size_t f = 0;
    for (int k = 0; k < order; ++k) {
        if (idx[k] < 0 || idx[k] >= n) throw Error("range", "tensor index");
        f = f * n + idx[k];
    }
    return f;
}

std::vector<int> Tensor::unflat(size_t f) const {
    std::vector<int> idx(order);
    for (int k = order - 1; k >= 0; --k) {
        idx[k] = static_cast<int>(f % n);
        f /= n;
    }
    return idx;
}

cplx Tensor::scalar() const {
    if (order != 0) throw Error("shape", "not a scalar");
    return data[0];
}

double Tensor::max_abs() const {
    double m = 0;
    for (const auto& z : data) m = std::max(m, std::abs(z));
    return m;
}

CMatrix Tensor::as_matrix() const {
    if (order != 2) throw Error("shape", "not an order-2 tensor");
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = data[static_cast<size_t>(i) * n + j];
    return m;
}

Tensor Tensor::scaled(cplx c) const {
    Tensor r = *this;
    for (auto& z : r.data) z *= c;
    auto ci = near_integer(c.real(), 0.0);
    if (exact && c.imag() == 0.0 && ci) {
        for (auto& x : r.exact_data) x *= *ci;
    } else {
        r.exact = false;
        r.exact_data.clear();
    }
    return r;
}

Tensor Tensor::operator+(const Tensor& o) const {
    require_same_shape(*this, o);
    Tensor r = *this;
    for (size_t i = 0; i < data.size(); ++i) r.data[i] += o.data[i];
    if (exact && o.exact) {
        for (size_t i = 0; i < data.size(); ++i) r.exact_data[i] += o.exact_data[i];
    } else {
        r.exact = false;
        r.exact_data.clear();
    }
    return r;
}

Tensor Tensor::operator-(const Tensor& o) const {
    return *this + o.scaled(cplx(-1));
}

Tensor Tensor::permuted(const std::vector<int>& axes) const {
    if (static_cast<int>(axes.size()) != order) throw Error("shape", "permutation arity");
    Tensor r = zeros(n, order);
    r.exact = exact;
    if (exact) r.exact_data.assign(data.size(), BigInt(0));
    for (size_t f = 0; f < data.size(); ++f) {
        auto idx = unflat(f);
        std::vector<int> out(order);
        for (int k = 0; k < order; ++k) out[k] = idx[axes[k]];
        size_t g = r.flat(out);
        r.data[g] = data[f];
        if (exact) r.exact_data[g] = exact_data[f];
    }
    return r;
}

IntMatrix mat_product(const IntMatrix& a, const IntMatrix& b) {
    require_same(a.n(), b.n());
    const int n = a.n();
    IntMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const BigInt& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < n; ++j)
                if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
        }
    return c;
}

CMatrix mat_product(const CMatrix& a, const CMatrix& b) {
    require_same(static_cast<int>(a.rows()), static_cast<int>(b.rows()));
    return a * b;
}

IntMatrix mat_hadamard(const IntMatrix& a, const IntMatrix& b) {
    require_same(a.n(), b.n());
    IntMatrix c(a.n());
    for (size_t i = 0; i < c.data().size(); ++i) c.data()[i] = a.data()[i] * b.data()[i];
    return c;
}

CMatrix mat_hadamard(const CMatrix& a, const CMatrix& b) {
    require_same(static_cast<int>(a.rows()), static_cast<int>(b.rows()));
    return a.cwiseProduct(b);
}

std::vector<CMatrix> simultaneous_eigenprojectors(const std::vector<CMatrix>& family,
                                                  const Tolerance& tol, uint64_t seed) {
    if (family.empty()) throw Error("shape", "empty family");
    const Eigen::Index n = family[0].rows();
    double scale = 1.0;
    for (const auto& m : family) {
        if (m.rows() != n || m.cols() != n) throw Error("shape", "family sides differ");
        scale = std::max(scale, m.cwiseAbs().maxCoeff());
    }
    for (size_t a = 0; a < family.size(); ++a)
        for (size_t b = a + 1; b < family.size(); ++b) {
            double c = (family[a] * family[b] - family[b] * family[a]).cwiseAbs().maxCoeff();
            if (c > 1e-8 * scale * n) throw Error("not-commutative", "members " + std::to_string(a) + "," + std::to_string(b));
        }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(1.0, 2.0);
    const cplx iu(0, 1);
    CMatrix h = CMatrix::Zero(n, n);
    for (const auto& m : family) {
        CMatrix herm = m + m.adjoint();
        CMatrix skew = m - m.adjoint();
        double c1 = coef(rng), c2 = coef(rng);
        h += c1 * herm;
        if (skew.cwiseAbs().maxCoeff() > 0) h += c2 * iu * skew;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) throw Error("degenerate-spectrum", "eigensolver failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    const CMatrix& vecs = es.eigenvectors();
    double spread = std::max(1.0, ev.cwiseAbs().maxCoeff());

    std::vector<CMatrix> projs;
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= n; ++k) {
        if (k == n || ev(k) - ev(k - 1) > tol.cluster_tol * spread) {
            CMatrix v = vecs.middleCols(start, k - start);
            projs.push_back(v * v.adjoint());
            start = k;
        }
    }

    // each member must act as a scalar on every projector's range
    for (const auto& e : projs) {
        double r = e.trace().real();
        for (const auto& m : family) {
            cplx lam = (m * e).trace() / r;
            double res = (m * e - lam * e).cwiseAbs().maxCoeff();
            if (res > 1e-6 * scale) throw Error("degenerate-spectrum", "cluster mixes eigenspaces");
        }
    }

    CMatrix jn = CMatrix::Constant(n, n, cplx(1.0 / static_cast<double>(n), 0));
    for (size_t k = 0; k < projs.size(); ++k)
        if ((projs[k] - jn).cwiseAbs().maxCoeff() < 1e-8) {
            std::rotate(projs.begin(), projs.begin() + static_cast<long>(k), projs.begin() + static_cast<long>(k) + 1);
            break;
        }
    return projs;
}

int span_rank(const std::vector<Tensor>& tensors, const Tolerance& tol) {
    if (tensors.empty()) return 0;
    const Tensor& t0 = tensors.front();
    bool real = true;
    std::vector<const Tensor*> rows;
    for (const auto& t : tensors) {
        require_same_shape(t0, t);
        if (t.max_abs() == 0.0) continue;
        rows.push_back(&t);
        for (const auto& z : t.data)
            if (z.imag() != 0.0) {
                real = false;
                break;
            }
    }
    if (rows.empty()) return 0;
    const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index len = static_cast<Eigen::Index>(t0.data.size());

    auto count = [&](const Eigen::VectorXd& sv) {
        double top = sv.size() ? sv(0) : 0.0;
        if (top <= tol.abs_tol) return 0;
        int r = 0;
        for (Eigen::Index k = 0; k < sv.size(); ++k)
            if (sv(k) > tol.rel_tol * top) ++r;
        return r;
    };

    // Reduce the long side with QR before the SVD; singular values are unchanged.
    if (real) {
        Eigen::MatrixXd mat(len, m);
        for (Eigen::Index c = 0; c < m; ++c)
            for (Eigen::Index r = 0; r < len; ++r) mat(r, c) = rows[c]->data[r].real();
        if (len > m) {
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(mat);
            Eigen::MatrixXd rr = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
            return count(Eigen::BDCSVD<Eigen::MatrixXd>(rr).singularValues());
        }
        return count(Eigen::BDCSVD<Eigen::MatrixXd>(mat).singularValues());
    }
    CMatrix mat(len, m);
    for (Eigen::Index c = 0; c < m; ++c)
        for (Eigen::Index r = 0; r < len; ++r) mat(r, c) = rows[c]->data[r];
    if (len > m) {
        Eigen::HouseholderQR<CMatrix> qr(mat);
        CMatrix rr = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
        return count(Eigen::BDCSVD<CMatrix>(rr).singularValues());
    }
    return count(Eigen::BDCSVD<CMatrix>(mat).singularValues());
}

cplx tensor_inner(const Tensor& s, const Tensor& t) {
    require_same_shape(s, t);
    cplx acc(0);
    for (size_t i = 0; i < s.data.size(); ++i) acc += std::conj(s.data[i]) * t.data[i];
    return acc;
}

double tensor_distance(const Tensor& s, const Tensor& t) {
    require_same_shape(s, t);
    double m = 0;
    for (size_t i = 0; i < s.data.size(); ++i) m = std::max(m, std::abs(s.data[i] - t.data[i]));
    return m;
}

bool tensor_close(const Tensor& s, const Tensor& t, const Tolerance& tol) {
    double d = tensor_distance(s, t);
    return d <= tol.abs_tol + tol.rel_tol * std::max(s.max_abs(), t.max_abs());
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

std::optional<long long> near_integer(double x, double eps) {
    if (!std::isfinite(x) || std::abs(x) > 9.0e15) return std::nullopt;
    double r = std::round(x);
    if (std::abs(x - r) <= eps) return static_cast<long long>(r);
    return std::nullopt;
}

}  // namespace scaf
