#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "scaf/algebra.hpp"

namespace scaf {

// Zero threshold for p/q classification; q is compared after dividing by its
// largest absolute entry.
inline constexpr double kParamZero = 1e-7;

struct AssociationScheme {
    int n = 0;
    int d = 0;
    std::vector<IntMatrix> A;
    std::vector<CMatrix> E;
    std::vector<BigInt> p;   // (d+1)^3, p[(i*(d+1)+j)*(d+1)+k] = p_ij^k
    std::vector<cplx> q;     // same layout
    CMatrix P;               // P(j,i): eigenvalue of A_i on E_j
    CMatrix Q;               // Q(i,j): A_i coefficient of n*E_j
    std::vector<BigInt> v;
    std::vector<int> m;
    std::vector<int> conj_A;
    std::vector<int> conj_E;
    bool symmetric = true;
    std::vector<int> rel;    // rel[x*n+y] = i with (x,y) in R_i
    double q_scale = 1.0;
    std::string name;

    int dim() const { return d + 1; }
    size_t idx3(int i, int j, int k) const { return (static_cast<size_t>(i) * dim() + j) * dim() + k; }
    const BigInt& pijk(int i, int j, int k) const { return p[idx3(i, j, k)]; }
    cplx qijk(int i, int j, int k) const { return q[idx3(i, j, k)]; }
    bool p_zero(int i, int j, int k) const { return pijk(i, j, k).is_zero(); }
    bool q_zero(int i, int j, int k) const { return std::abs(qijk(i, j, k)) / q_scale <= kParamZero; }
    int relation(int x, int y) const { return rel[static_cast<size_t>(x) * n + y]; }
    double pd(int i, int j, int k) const { return pijk(i, j, k).convert_to<double>(); }
    double vd(int i) const { return v[i].convert_to<double>(); }
    const CMatrix& Ac(int i) const { return A_complex[i]; }

    std::vector<CMatrix> A_complex;
};

AssociationScheme build_from_relations(std::vector<IntMatrix> mats, const Tolerance& tol = {}, uint64_t seed = 1);
AssociationScheme build_from_graph(const IntMatrix& adjacency, const Tolerance& tol = {}, uint64_t seed = 1);
AssociationScheme builtin(const std::string& name, const std::vector<int>& params,
                          const Tolerance& tol = {}, uint64_t seed = 1);

// "petersen", "hamming:2,4", "file:path.rel"
AssociationScheme scheme_from_spec(const std::string& spec, const Tolerance& tol = {}, uint64_t seed = 1);

// Named graphs used by the builtins; also handy for homomorphism counts.
IntMatrix petersen_graph();
IntMatrix shrikhande_graph();
IntMatrix cycle_graph(int n);
IntMatrix complete_graph(int n);
IntMatrix hamming_graph(int d, int q);
IntMatrix johnson_graph(int n, int k);
IntMatrix doob_graph(int s, int t);
std::vector<IntMatrix> distance_matrices(const IntMatrix& adjacency);

std::vector<IntMatrix> read_relations(const std::string& text);
std::string write_relations(const std::vector<IntMatrix>& mats);

struct PolynomialStructure {
    bool ok = false;
    std::string kind;                  // "metric" or "cometric"
    std::vector<int> ordering;
    std::vector<double> a, b, c;       // a*, b*, c* in the cometric case
    std::vector<int> violation;        // offending (i,j,k) in ordered positions
    std::string reason;
};

PolynomialStructure polynomial_structure(const AssociationScheme& s, const std::string& kind,
                                         const std::vector<int>& ordering);

struct SchemeResiduals {
    double pq = 0;           // max |PQ - nI|
    double mp_vq = 0;        // max |m_j P_ji - v_i Q_ij|
    double idempotent = 0;   // max |E_iE_j - delta E_i|
    double sum_e = 0;        // max |sum E_j - I|
    double krein_schur = 0;  // max |E_i o E_j - (1/n) sum q E_k|
    double conj_e = 0;       // max |E_j' - E_j^T|
    bool p_exact = false;    // sum_k p_ij^k A_k == A_i A_j exactly
    int nonzero_p = 0;
    int nonzero_q = 0;
};

SchemeResiduals scheme_residuals(const AssociationScheme& s);
nlohmann::json scheme_report(const AssociationScheme& s);
std::string scheme_report_text(const AssociationScheme& s);

}  // namespace scaf
