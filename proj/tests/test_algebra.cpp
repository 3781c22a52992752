#include "doctest.h"

#include "scaf/algebra.hpp"
#include "support.hpp"

using namespace scaf;

namespace {

IntMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()));
    for (int r = 0; r < m.n(); ++r)
        for (int c = 0; c < m.n(); ++c) m(r, c) = rows[r][c];
    return m;
}

}  // namespace

TEST_CASE("integer matrix products match hand computation") {
    IntMatrix a = from_rows({{1, 2}, {3, 4}}), b = from_rows({{0, 1}, {1, 0}});
    CHECK(mat_product(a, b) == from_rows({{2, 1}, {4, 3}}));
    CHECK(mat_hadamard(a, b) == from_rows({{0, 2}, {3, 0}}));
    CHECK(a.transpose() == from_rows({{1, 3}, {2, 4}}));
    CHECK((a - a).is_zero());
    CHECK(a.scaled(3) == a + a + a);
}

TEST_CASE("big integer entries do not overflow") {
    IntMatrix a(1);
    a(0, 0) = BigInt(1) << 40;
    IntMatrix p = mat_product(mat_product(a, a), a);
    CHECK(p(0, 0) == BigInt(1) << 120);
}

TEST_CASE("tensor layout round-trips and permutes axes") {
    Tensor t = Tensor::zeros(3, 3);
    for (size_t f = 0; f < t.size(); ++f) t.data[f] = static_cast<double>(f);
    for (size_t f = 0; f < t.size(); ++f) CHECK(t.flat(t.unflat(f)) == f);
    CHECK(t.at({1, 2, 0}).real() == 9 + 6 + 0);
    Tensor p = t.permuted({2, 0, 1});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) CHECK(p.at({c, a, b}) == t.at({a, b, c}));
}

TEST_CASE("tensor arithmetic keeps exactness only for integers") {
    Tensor a = Tensor::from_matrix(IntMatrix::identity(2));
    CHECK(a.exact);
    Tensor b = a + a;
    CHECK(b.exact);
    CHECK(b.exact_data[0] == 2);
    CHECK(a.scaled(2.0).exact);
    CHECK_FALSE(a.scaled(0.5).exact);
}

TEST_CASE("span rank counts independent tensors") {
    Tensor e1 = Tensor::zeros(2, 1), e2 = Tensor::zeros(2, 1);
    e1.data[0] = 1;
    e2.data[1] = 1;
    CHECK(span_rank({e1, e2, e1 + e2}, {}) == 2);
    CHECK(span_rank({e1, e1.scaled(cplx(0, 3))}, {}) == 1);
    CHECK(span_rank({Tensor::zeros(2, 1)}, {}) == 0);
}

TEST_CASE("span rank agrees with exact rank on random integer matrices") {
    scaf::testing::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        // rank-r product of 4x r and r x 6 integer factors
        const int r = rng.uniform(1, 4);
        Eigen::MatrixXd L(4, r), R(r, 6);
        for (int i = 0; i < L.size(); ++i) L.data()[i] = rng.uniform(-3, 3);
        for (int i = 0; i < R.size(); ++i) R.data()[i] = rng.uniform(-3, 3);
        Eigen::MatrixXd M = L * R;
        std::vector<Tensor> rows;
        for (int i = 0; i < 4; ++i) {
            Tensor t = Tensor::zeros(6, 1);
            for (int j = 0; j < 6; ++j) t.data[j] = M(i, j);
            rows.push_back(t);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        CHECK(span_rank(rows, {}) == static_cast<int>(lu.rank()));
    }
}

TEST_CASE("eigenprojectors of the 5-cycle") {
    IntMatrix c = cycle_graph(5);
    auto E = simultaneous_eigenprojectors({c.to_complex()}, {}, 1);
    REQUIRE(E.size() == 3);
    CMatrix sum = CMatrix::Zero(5, 5);
    for (const auto& e : E) {
        CHECK((e * e - e).cwiseAbs().maxCoeff() < 1e-10);
        sum += e;
    }
    CHECK((sum - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((E[0] - CMatrix::Ones(5, 5) / 5.0).cwiseAbs().maxCoeff() < 1e-10);
    // multiplicities 1, 2, 2
    CHECK(std::abs(E[1].trace() - 2.0) < 1e-10);
    CHECK(std::abs(E[2].trace() - 2.0) < 1e-10);
}

TEST_CASE("inner product is conjugate-linear in the first argument") {
    Tensor s = Tensor::zeros(2, 1), t = Tensor::zeros(2, 1);
    s.data = {cplx(0, 1), 2};
    t.data = {1, 3};
    CHECK(tensor_inner(s, t) == cplx(6, -1));
}

TEST_CASE("printing helpers") {
    CHECK(round12(-0.0) == 0.0);
    CHECK_FALSE(std::signbit(round12(-1e-30 * 0)));
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(near_integer(2.9999999999).value() == 3);
    CHECK_FALSE(near_integer(2.5).has_value());
}
