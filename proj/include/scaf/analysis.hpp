#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "scaf/engine.hpp"
#include "scaf/report.hpp"
#include "scaf/schemes.hpp"

namespace scaf {

using BigRational = boost::multiprecision::cpp_rational;

// ---- generalized intersection numbers ------------------------------------

// Star with roots a1..ak and a hollow centre c; spoke t is a_t -> c.
Diagram star_diagram(const std::vector<WeightRef>& spokes);

// Number of b with (a_t, b) in R_{i_t} for every t, by direct count.
BigInt triple_star(const AssociationScheme& s, const std::vector<int>& base, const std::vector<int>& idx);
// The same number read off the star scaffold with its roots fixed.
BigInt triple_star_scaffold(const AssociationScheme& s, const std::vector<int>& base, const std::vector<int>& idx);

// mode "krein": sum Q_ir Q_js Q_kt (A-star); mode "intersection": sum P_ri P_sj P_tk (E-triangle).
// Returns the max-norm of the resulting tensor. Throws "hypothesis" if the parameter does not vanish.
double vanishing_parameter_relation(const AssociationScheme& s, const std::string& mode, int r, int s_, int t);

// ---- W-spaces and regularity ---------------------------------------------

// edge, triangle, wye, k4, tristar, path_<m>, star_<m>
Diagram shape_diagram(const std::string& shape, WeightRef::Kind kind = WeightRef::Kind::A);

struct WSpaceResult {
    int rank = 0;
    long count = 0;             // number of weight assignments
    bool orthogonality_checked = false;
    double orthogonality = 0;   // max violation of the orthogonal-basis claims
};

// Rank of the span over all basis-weight assignments of the diagram's edges.
WSpaceResult wspace_rank(const AssociationScheme& s, const Diagram& shape, const Tolerance& tol = {},
                         WeightRef::Kind kind = WeightRef::Kind::A);
WSpaceResult wspace_rank(const AssociationScheme& s, const std::string& shape, const Tolerance& tol = {});

struct RegularityWitness {
    int x = 0, y = 0, z = 0;
    std::array<int, 3> rst{};
};

struct RegularityResult {
    bool flag = false;
    std::map<std::array<int, 6>, cplx> table;  // (i,j,k,r,s,t) -> tau or sigma
    std::optional<RegularityWitness> witness;
    // cross-checks by W-space ranks
    int rank_small = 0;    // W(triangle) or W(wye)
    int rank_k4 = 0;
    int rank_tristar = 0;
    bool agrees_k4 = false;
    bool agrees_tristar = false;
    double max_residual = 0;  // dually mode: worst tensor residual
};

// mode "triply" (brute w-count oracle) or "dually" (sigma tensor identity).
RegularityResult regularity_check(const AssociationScheme& s, const std::string& mode, const Tolerance& tol = {});

struct FourVertexResult {
    bool holds = true;
    std::optional<Diagram> witness;
    long checked = 0;
};

FourVertexResult four_vertex_condition(const AssociationScheme& s, const Tolerance& tol = {});
// Two roots, two hollow nodes, five A_1 edges and one (J-I)/2 edge (custom weight "halfJI").
Diagram shrikhande_witness();
bool in_bose_mesner(const AssociationScheme& s, const Tensor& m, const Tolerance& tol = {});

// ---- spin models ---------------------------------------------------------

struct SpinModel {
    CMatrix Wp, Wm;
};

// W+_{ab} = kappa * omega^{(a-b)^2}. kappa = 1 unless normalized is set, in which case
// kappa is chosen so that alpha and D = sqrt(n) satisfy the row-sum relation.
SpinModel cyclic_spin_model(int n, bool normalized = false);

struct SpinModelReport {
    int n = 0;
    cplx D, alpha;
    double diag_plus = 0, row_plus = 0, col_plus = 0;
    double diag_minus = 0, row_minus = 0, col_minus = 0;
    double hadamard = 0, product = 0, star_triangle = 0;
    double tol = 1e-10;
    bool pass = false;
    IdentityReport report() const;
};

SpinModelReport spin_model_check(int n, const CMatrix& Wp, const CMatrix& Wm, double tol = 1e-10);

// ---- homomorphisms -------------------------------------------------------

struct Graph {
    int n = 0;
    IntMatrix adj;
    Graph() = default;
    explicit Graph(IntMatrix a);  // validates: symmetric 0/1 with zero diagonal
    static Graph complete(int n);
    static Graph cycle(int n);
    static Graph path(int n);
};

// |Hom(G, Gamma)| through the scaffold S(G, {}; A_Gamma). fixed maps G-nodes to Gamma-vertices.
BigInt hom_count(const Graph& g, const Graph& gamma, const std::map<int, int>& fixed = {}, int node_cap = 16);
BigRational hom_density(const Graph& g, const Graph& gamma);

// ---- proof chains --------------------------------------------------------

// ordering: cometric ordering of the idempotents (empty: natural order). Index e in the
// statements below refers to E_{ordering[e]}.
IdentityReport proof_chain_dickie(const AssociationScheme& s, int j, std::vector<int> ordering = {},
                                  double tol = 1e-8);
IdentityReport proof_chain_suzuki(const AssociationScheme& s, int h, int i, int j, std::vector<int> ordering = {},
                                  double tol = 1e-8);
IdentityReport proof_chain_suzuki_two_orderings(const AssociationScheme& s, int h, int i, int j, int k, int l, int m,
                                                std::vector<int> ordering = {}, double tol = 1e-8);
// (h,i,j) satisfying every hypothesis of the theorem, in lexicographic order.
std::vector<std::array<int, 3>> suzuki_admissible(const AssociationScheme& s, const std::vector<int>& ordering = {});

// ---- planar duality ------------------------------------------------------

// rotation[v]: incident edge indices in counterclockwise order (a loop appears twice).
// outer: the roots in counterclockwise order around the disc.
struct Embedding {
    std::map<std::string, std::vector<int>> rotation;
    std::vector<std::string> outer;
};

struct DualResult {
    Diagram diag;
    Embedding embedding;
};

DualResult planar_dual(const Diagram& d, const Embedding& emb);
Embedding parse_embedding(const nlohmann::json& j);
nlohmann::json embedding_json(const Embedding& e);

// The pentagon family with A weights, its three duals, and the printed star family.
struct DualityFamily {
    std::vector<Diagram> primal;
    std::vector<Embedding> embeddings;
    std::vector<Diagram> stars;
};
DualityFamily pentagon_family();

IdentityReport duality_experiment(const AssociationScheme& s, const std::string& family = "pentagon",
                                  double tol = 1e-8);

// ---- identity suites -----------------------------------------------------

struct SuiteOptions {
    double tol = 1e-8;
    bool exhaustive = false;   // otherwise sample above kSampleLimit tuples
    uint64_t seed = 1;
};

inline constexpr long kSampleLimit = 10000;

// appendixB, terwilliger_grams, basic_lemmas
IdentityReport identity_suite(const AssociationScheme& s, const std::string& name, const SuiteOptions& opt = {});

}  // namespace scaf
