#include "doctest.h"

#include "scaf/analysis.hpp"
#include "support.hpp"

using namespace scaf;
using namespace scaf::testing;

namespace {

const AssociationScheme& petersen() {
    static const AssociationScheme s = builtin("petersen", {});
    return s;
}

const AssociationScheme& c5() {
    static const AssociationScheme s = builtin("cycle", {5});
    return s;
}

const AssociationScheme& h42() {
    static const AssociationScheme s = builtin("hamming", {4, 2});
    return s;
}

std::string token_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.token();
    }
    return "";
}

std::vector<AssociationScheme> regularity_schemes() {
    return {builtin("complete", {4}), builtin("cycle", {5}), builtin("petersen", {}), builtin("hamming", {2, 4}),
            builtin("shrikhande", {})};
}

// Brute oracle for triple regularity, independent of the library: the number
// of w in the given relations to x, y, z must depend only on the relations
// among x, y, z.
bool triply_regular_oracle(const AssociationScheme& s) {
    std::map<std::array<int, 6>, long> seen;
    for (int x = 0; x < s.n; ++x)
        for (int y = 0; y < s.n; ++y)
            for (int z = 0; z < s.n; ++z) {
                std::map<std::array<int, 3>, long> cnt;
                for (int w = 0; w < s.n; ++w) ++cnt[{s.relation(x, w), s.relation(y, w), s.relation(z, w)}];
                for (int r = 0; r <= s.d; ++r)
                    for (int t = 0; t <= s.d; ++t)
                        for (int u = 0; u <= s.d; ++u) {
                            std::array<int, 6> key{s.relation(x, y), s.relation(y, z), s.relation(x, z), r, t, u};
                            long c = cnt.count({r, t, u}) ? cnt[{r, t, u}] : 0;
                            auto [it, fresh] = seen.emplace(key, c);
                            if (!fresh && it->second != c) return false;
                        }
            }
    return true;
}

}  // namespace

TEST_CASE("triple intersection numbers: direct count equals star scaffold") {
    Rng rng(31);
    for (const AssociationScheme* s : {&petersen(), &c5(), &h42()})
        for (int k = 0; k < 30; ++k) {
            const int len = rng.uniform(1, 3);
            std::vector<int> base, idx;
            for (int t = 0; t < len; ++t) {
                base.push_back(rng.uniform(0, s->n - 1));
                idx.push_back(rng.uniform(0, s->d));
            }
            CHECK(triple_star(*s, base, idx) == triple_star_scaffold(*s, base, idx));
        }
    CHECK(token_of([] { triple_star(petersen(), {0}, {0, 1}); }) == "range");
    CHECK(token_of([] { triple_star(petersen(), {10}, {1}); }) == "range");
}

TEST_CASE("single-spoke star counts are valencies") {
    for (int i = 0; i <= 2; ++i) CHECK(triple_star(petersen(), {3}, {i}) == petersen().v[i]);
}

TEST_CASE("vanishing parameters force vanishing scaffold sums") {
    for (const AssociationScheme* s : {&petersen(), &c5(), &h42()})
        for (int r = 0; r <= s->d; ++r)
            for (int t = 0; t <= s->d; ++t)
                for (int u = 0; u <= s->d; ++u) {
                    if (s->q_zero(r, t, u))
                        CHECK(vanishing_parameter_relation(*s, "krein", r, t, u) < 1e-8 * s->n * s->n * s->n);
                    else
                        CHECK(token_of([&] { vanishing_parameter_relation(*s, "krein", r, t, u); }) == "hypothesis");
                    if (s->p_zero(r, t, u))
                        CHECK(vanishing_parameter_relation(*s, "intersection", r, t, u) < 1e-8 * s->n * s->n);
                    else
                        CHECK(token_of([&] { vanishing_parameter_relation(*s, "intersection", r, t, u); }) ==
                              "hypothesis");
                }
    CHECK(token_of([] { vanishing_parameter_relation(petersen(), "other", 0, 0, 0); }) == "mode");
}

TEST_CASE("W-space ranks: triangle and wye bases are the nonzero parameters") {
    for (const AssociationScheme* s : {&petersen(), &c5(), &h42()}) {
        SchemeResiduals r = scheme_residuals(*s);
        WSpaceResult tri = wspace_rank(*s, "triangle"), wye = wspace_rank(*s, "wye");
        CHECK(tri.rank == r.nonzero_p);
        CHECK(wye.rank == r.nonzero_q);
        CHECK(tri.orthogonality < 1e-8);
        CHECK(wye.orthogonality < 1e-8);
    }
    CHECK(wspace_rank(petersen(), "triangle").rank == 14);
    CHECK(wspace_rank(petersen(), "wye").rank == 15);
    CHECK(wspace_rank(petersen(), "edge").rank == 3);
    CHECK(token_of([] { shape_diagram("hexagon"); }) == "shape");
}

TEST_CASE("triply regular flag matches an independent oracle and both rank criteria") {
    for (const auto& s : regularity_schemes()) {
        CAPTURE(s.name);
        RegularityResult r = regularity_check(s, "triply");
        CHECK(r.flag == triply_regular_oracle(s));
        CHECK(r.flag == (r.rank_small == r.rank_k4));
        CHECK(r.flag == (r.rank_small == r.rank_tristar));
        CHECK(r.agrees_k4);
        CHECK(r.agrees_tristar);
        CHECK(r.flag != r.witness.has_value());
        // triply regular implies the 4-vertex condition
        if (r.flag) CHECK(four_vertex_condition(s).holds);
    }
}

TEST_CASE("dually regular check is consistent with its ranks") {
    for (const auto& s : regularity_schemes()) {
        RegularityResult r = regularity_check(s, "dually");
        CHECK(r.agrees_k4);
        CHECK(r.agrees_tristar);
    }
    AssociationScheme z3 = build_from_relations([] {
        std::vector<IntMatrix> m(3, IntMatrix(3));
        for (int x = 0; x < 3; ++x)
            for (int k = 0; k < 3; ++k) m[k](x, (x + k) % 3) = 1;
        return m;
    }());
    CHECK(token_of([&] { regularity_check(z3, "triply"); }) == "symmetric-only");
}

TEST_CASE("Shrikhande fails the 4-vertex condition; the witness leaves the algebra") {
    AssociationScheme sh = builtin("shrikhande", {});
    FourVertexResult fv = four_vertex_condition(sh);
    CHECK_FALSE(fv.holds);
    REQUIRE(fv.witness.has_value());
    EvalContext ctx(sh);
    CHECK_FALSE(in_bose_mesner(sh, evaluate(*fv.witness, ctx)));
    ctx.add_custom("halfJI", CMatrix((CMatrix::Ones(16, 16) - CMatrix::Identity(16, 16)) * 0.5));
    CHECK_FALSE(in_bose_mesner(sh, evaluate(shrikhande_witness(), ctx)));
    // the same pattern on hamming(2,4), which is triply regular, stays inside
    AssociationScheme h = builtin("hamming", {2, 4});
    EvalContext hc(h);
    hc.add_custom("halfJI", CMatrix((CMatrix::Ones(16, 16) - CMatrix::Identity(16, 16)) * 0.5));
    CHECK(in_bose_mesner(h, evaluate(shrikhande_witness(), hc)));
    CHECK(in_bose_mesner(sh, Tensor::from_matrix(mat_product(sh.A[1], sh.A[1]))));
}

TEST_CASE("cyclic spin models") {
    SpinModel m5 = cyclic_spin_model(5);
    SpinModelReport r5 = spin_model_check(5, m5.Wp, m5.Wm);
    CHECK(r5.pass);
    CHECK(std::abs(r5.alpha - 1.0) < 1e-12);
    CHECK(std::abs(r5.D - std::sqrt(5.0)) < 1e-12);

    SpinModel m7 = cyclic_spin_model(7);
    SpinModelReport r7 = spin_model_check(7, m7.Wp, m7.Wm);
    CHECK_FALSE(r7.pass);
    // Gauss sum for n = 3 mod 4 is i sqrt(n)
    CHECK(std::abs(m7.Wp.row(0).sum() - cplx(0, std::sqrt(7.0))) < 1e-12);
    SpinModel n7 = cyclic_spin_model(7, true);
    CHECK(spin_model_check(7, n7.Wp, n7.Wm).pass);
    CHECK(spin_model_check(9, cyclic_spin_model(9).Wp, cyclic_spin_model(9).Wm).pass);

    CHECK(token_of([] { cyclic_spin_model(6); }) == "parity");
    CHECK(token_of([] { cyclic_spin_model(1); }) == "range");
    CHECK(token_of([&] { spin_model_check(4, m5.Wp, m5.Wm); }) == "shape");
    CHECK(spin_model_check(5, m5.Wp, m5.Wm).report().exit_code() == 0);
}

TEST_CASE("homomorphism counts match closed-walk traces") {
    for (const IntMatrix& a : {petersen_graph(), shrikhande_graph(), hamming_graph(2, 4)}) {
        Graph gamma(a);
        for (int k = 3; k <= 6; ++k) CHECK(hom_count(Graph::cycle(k), gamma) == trace_power(a, k));
        CHECK(hom_count(Graph::complete(2), gamma) == trace_power(a, 2));
    }
    Graph pg(petersen_graph());
    CHECK(hom_count(Graph::complete(2), pg) == 30);
    CHECK(hom_count(Graph::cycle(4), pg) == 150);
    CHECK(hom_count(Graph::complete(3), pg) == 0);
    CHECK(hom_count(Graph::complete(4), Graph::complete(6)) == 6 * 5 * 4 * 3);
    // paths: sum of the entries of A^(k-1)
    CHECK(hom_count(Graph::path(4), pg) == 10 * 27);
    CHECK(hom_count(Graph::path(2), pg, {{0, 3}}) == 3);
    CHECK(hom_density(Graph::complete(2), pg) == BigRational(30, 100));
    CHECK(token_of([] { Graph(IntMatrix::ones(3)); }) == "graph");
    CHECK(token_of([&] { hom_count(Graph::path(20), pg); }) == "too-large");
}

TEST_CASE("cometric chain on hamming(4,2)") {
    IdentityReport r = proof_chain_dickie(h42(), 2);
    CHECK(r.pass);
    CHECK(r.cases.size() > 10);
    CHECK(r.max_residual() < 1e-8);
    CHECK(token_of([] { proof_chain_dickie(petersen(), 1); }) == "hypothesis");
    CHECK(token_of([] { proof_chain_dickie(h42(), 0); }) == "hypothesis");
    CHECK(token_of([] { proof_chain_dickie(builtin("hamming", {3, 2}), 1, {0, 2, 1, 3}); }) == "ordering");
}

TEST_CASE("Krein-zero chain on every admissible tuple") {
    for (const AssociationScheme* s : {&h42(), &c5()}) {
        auto tuples = suzuki_admissible(*s);
        for (const auto& [h, i, j] : tuples) CHECK(proof_chain_suzuki(*s, h, i, j).pass);
    }
    CHECK_FALSE(suzuki_admissible(h42()).empty());
    CHECK(suzuki_admissible(builtin("hamming", {2, 4})).empty());
}

TEST_CASE("planar dual: series pair becomes a parallel pair") {
    Diagram d = parse_diagram("node r1 m r2\nroot r1 r2\nedge r1 m A1\nedge m r2 A2\n");
    Embedding emb;
    emb.rotation = {{"r1", {0}}, {"m", {0, 1}}, {"r2", {1}}};
    emb.outer = {"r1", "r2"};
    DualResult dr = planar_dual(d, emb);
    CHECK(dr.diag.order() == 2);
    CHECK(dr.diag.nodes.size() == 2);
    REQUIRE(dr.diag.edges.size() == 2);
    for (const auto& e : dr.diag.edges) {
        CHECK(e.w.kind == WeightRef::Kind::E);
        CHECK(((e.tail == "s1" && e.head == "s2") || (e.tail == "s2" && e.head == "s1")));
    }
}

TEST_CASE("planar dual: A-triangle on three roots becomes an E-wye") {
    Diagram d = parse_diagram("node a b c\nroot a b c\nedge a b A1\nedge b c A2\nedge c a A1\n");
    Embedding emb;
    emb.rotation = {{"a", {0, 2}}, {"b", {1, 0}}, {"c", {2, 1}}};
    emb.outer = {"a", "b", "c"};
    DualResult dr = planar_dual(d, emb);
    CHECK(dr.diag.order() == 3);
    CHECK(dr.diag.nodes.size() == 4);
    std::string hub;
    for (const auto& v : dr.diag.nodes)
        if (!dr.diag.is_root(v)) hub = v;
    REQUIRE_FALSE(hub.empty());
    CHECK(dr.diag.incident(hub).size() == 3);
    for (const auto& e : dr.diag.edges) CHECK(e.w.kind == WeightRef::Kind::E);
}

TEST_CASE("planar dual is an involution on the pentagon family") {
    DualityFamily fam = pentagon_family();
    EvalContext ctx(h42(), Method::Eliminate);
    for (size_t k = 0; k < fam.primal.size(); ++k) {
        DualResult once = planar_dual(fam.primal[k], fam.embeddings[k]);
        DualResult twice = planar_dual(once.diag, once.embedding);
        CHECK(twice.diag.edges.size() == fam.primal[k].edges.size());
        for (const auto& e : twice.diag.edges) CHECK(e.w.kind == WeightRef::Kind::A);
        // equal up to a cyclic relabelling of the roots
        Tensor a = evaluate(fam.primal[k], ctx), b = evaluate(twice.diag, ctx);
        bool match = false;
        for (int shift = 0; shift < 5 && !match; ++shift) {
            std::vector<int> axes(5);
            for (int t = 0; t < 5; ++t) axes[t] = (t + shift) % 5;
            match = tensor_distance(a, b.permuted(axes)) < 1e-9;
        }
        CHECK(match);
    }
}

TEST_CASE("planar dual rejects bad embeddings") {
    Diagram d = parse_diagram("node a b c\nroot a b\nedge a b A1\nedge b c A1\n");
    Embedding emb;
    emb.rotation = {{"a", {0}}, {"b", {0, 1}}, {"c", {1}}};
    emb.outer = {"a"};
    CHECK(token_of([&] { planar_dual(d, emb); }) == "bad-embedding");
    emb.outer = {"a", "b"};
    emb.rotation["b"] = {0};
    CHECK(token_of([&] { planar_dual(d, emb); }) == "bad-embedding");
    CHECK(token_of([] { parse_embedding(nlohmann::json::object()); }) == "bad-embedding");
}

TEST_CASE("duality experiment") {
    IdentityReport r = duality_experiment(h42());
    CHECK(r.pass);
    CHECK(r.max_residual() < 1e-8);
    CHECK_FALSE(token_of([] { duality_experiment(petersen()); }).empty());
    CHECK(token_of([] { duality_experiment(h42(), "hexagon"); }) == "unknown-family");
}

TEST_CASE("inner-product formula instance on Petersen") {
    // triangle (A1, A1, A2) paired with itself: n v_2 p_11^2 = 10 * 6 * 1
    const auto& s = petersen();
    long direct = 0;
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b)
            for (int c = 0; c < 10; ++c)
                if (s.relation(a, b) == 1 && s.relation(b, c) == 1 && s.relation(a, c) == 2) ++direct;
    Diagram tri = parse_diagram("node a b c\nroot a b c\nedge a b A1\nedge b c A1\nedge a c A2\n");
    Tensor t = evaluate(tri, EvalContext(s));
    CHECK(direct == 60);
    CHECK(tensor_inner(t, t).real() == doctest::Approx(60));
    Diagram other = parse_diagram("node a b c\nroot a b c\nedge a b A2\nedge b c A1\nedge a c A2\n");
    CHECK(std::abs(tensor_inner(t, evaluate(other, EvalContext(s)))) < 1e-12);
}

TEST_CASE("identity suites pass on small schemes") {
    for (const char* name : {"appendixB", "terwilliger_grams", "basic_lemmas"}) {
        CAPTURE(name);
        CHECK(identity_suite(c5(), name).pass);
        CHECK(identity_suite(petersen(), name).pass);
    }
    CHECK(token_of([] { identity_suite(c5(), "nosuch"); }) == "unknown-suite");
}

TEST_CASE("sampling is deterministic per seed") {
    SuiteOptions a, b;
    a.seed = b.seed = 7;
    auto ja = identity_suite(petersen(), "appendixB", a).to_json().dump();
    auto jb = identity_suite(petersen(), "appendixB", b).to_json().dump();
    CHECK(ja == jb);
}
