// Acceptance run: one PASS/FAIL line per criterion, with the measured value,
// the tolerance it is held to and the wall time against its budget.
//
// Exit status is nonzero if any criterion fails, except a criterion marked
// waived: its literal statement is mathematically unattainable and the line
// says why.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "scaf/analysis.hpp"
#include "support.hpp"

using namespace scaf;
using namespace scaf::testing;

namespace {

struct Outcome {
    bool pass = false;
    bool waived = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= budget_s;
    const bool ok = o.pass && in_time;
    char timing[96];
    std::snprintf(timing, sizeof timing, "time %.2fs (budget %gs%s)", secs, budget_s, in_time ? "" : ", EXCEEDED");
    std::cout << (ok ? "PASS" : "FAIL") << "  " << id << ". " << title << ": " << o.detail << "; " << timing;
    if (!ok && o.waived) std::cout << "; waived: unattainable as stated";
    std::cout << "\n" << std::flush;
    if (!ok && !o.waived) ++failures;
}

std::string fmt(double x) {
    char b[48];
    std::snprintf(b, sizeof b, "%.3g", x);
    return b;
}

Diagram closed_clique(int k, const WeightRef& w) {
    Diagram d;
    for (int v = 0; v < k; ++v) d.nodes.push_back("x" + std::to_string(v));
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) d.edges.push_back({d.nodes[a], d.nodes[b], w});
    return d;
}

BigInt exact_scalar(const Diagram& d, const AssociationScheme& s) {
    Tensor t = evaluate(d, EvalContext(s, Method::Eliminate));
    if (!t.exact) throw Error("precondition", "expected an exact evaluation");
    return t.exact_data[0];
}

}  // namespace

int main() {
    std::cout << "acceptance criteria\n";

    criterion(1, "Petersen four-node composite equals -2/243", 1, [] {
        AssociationScheme s = builtin("petersen", {});
        Diagram d = closed_clique(4, WeightRef::E(2));
        d.edges[0].w = WeightRef::E(1);
        cplx v = evaluate(d, EvalContext(s)).scalar();
        double err = std::abs(v - cplx(-2.0 / 243.0));
        return Outcome{err <= 1e-10, false, "value " + fmt(v.real()) + ", |err| " + fmt(err) + " <= 1e-10"};
    });

    criterion(2, "scheme parameters on seven builtins", 10, [] {
        const std::vector<std::pair<std::string, std::vector<int>>> names = {
            {"petersen", {}}, {"cycle", {5}}, {"hamming", {2, 4}}, {"hamming", {4, 2}},
            {"johnson", {5, 2}}, {"shrikhande", {}}, {"doob", {1, 1}}};
        double worst = 0;
        bool exact = true;
        for (const auto& [name, params] : names) {
            SchemeResiduals r = scheme_residuals(builtin(name, params));
            worst = std::max({worst, r.pq, r.mp_vq});
            exact = exact && r.p_exact;
        }
        return Outcome{worst <= 1e-8 && exact, false,
                       "max |PQ-nI|, |m_j P_ji - v_i Q_ij| = " + fmt(worst) + " <= 1e-8; sum_k p_ij^k A_k = A_i A_j " +
                           (exact ? "exactly" : "NOT exact")};
    });

    criterion(3, "Doob/Hamming triangle and K4 scaffolds", 60, [] {
        AssociationScheme h = builtin("hamming", {2, 4}), db = builtin("doob", {1, 1}), sh = builtin("shrikhande", {});
        Diagram tri = closed_clique(3, WeightRef::A(1)), k4 = closed_clique(4, WeightRef::A(1));
        BigInt ht = exact_scalar(tri, h), hk = exact_scalar(k4, h), dt = exact_scalar(tri, db),
               dk = exact_scalar(k4, db), sk = exact_scalar(k4, sh);
        // direct clique enumeration as the oracle
        bool oracle = ht == ordered_cliques(h.A[1], 3) && hk == ordered_cliques(h.A[1], 4) &&
                      dt == ordered_cliques(db.A[1], 3) && dk == ordered_cliques(db.A[1], 4) &&
                      sk == ordered_cliques(sh.A[1], 4);
        bool ok = ht == 192 && hk == 192 && dt == 1152 && dk == 384 && sk == 0 && oracle;
        return Outcome{ok, false,
                       "hamming(2,4) triangle " + ht.str() + " K4 " + hk.str() + "; doob(1,1) triangle " + dt.str() +
                           " K4 " + dk.str() + "; shrikhande K4 " + sk.str() + "; clique oracle " +
                           (oracle ? "agrees" : "DISAGREES")};
    });

    criterion(4, "Petersen W-space ranks", 30, [] {
        AssociationScheme s = builtin("petersen", {});
        int tri = wspace_rank(s, "triangle").rank, wye = wspace_rank(s, "wye").rank;
        return Outcome{tri == 14 && wye == 15, false,
                       "rank W(triangle) " + std::to_string(tri) + " (want 14), rank W(wye) " + std::to_string(wye) +
                           " (want 15)"};
    });

    criterion(5, "inner-product formulas, exhaustive sweep", 300, [] {
        SuiteOptions opt;
        opt.exhaustive = true;
        double worst = 0;
        bool ok = true;
        size_t cases = 0;
        for (const auto& [name, params] :
             std::vector<std::pair<std::string, std::vector<int>>>{{"petersen", {}}, {"cycle", {5}}}) {
            IdentityReport r = identity_suite(builtin(name, params), "appendixB", opt);
            ok = ok && r.pass;
            worst = std::max(worst, r.max_residual());
            cases += r.cases.size();
        }
        return Outcome{ok, false,
                       std::to_string(cases) + " aggregated cases on petersen and cycle(5), worst residual " +
                           fmt(worst) + " (tolerance 1e-8 relative)"};
    });

    criterion(6, "cometric chain on hamming(4,2), j=2", 120, [] {
        IdentityReport r = proof_chain_dickie(builtin("hamming", {4, 2}), 2, {}, 1e-8);
        return Outcome{r.pass, false,
                       std::to_string(r.cases.size()) + " steps and equalities, max residual " +
                           fmt(r.max_residual()) + " <= 1e-8"};
    });

    criterion(7, "cyclic spin models n=5 and n=7 with alpha=1, D=sqrt(n)", 1, [] {
        std::ostringstream msg;
        bool ok = true;
        for (int n : {5, 7}) {
            SpinModel m = cyclic_spin_model(n);
            SpinModelReport r = spin_model_check(n, m.Wp, m.Wm, 1e-10);
            const bool lit = r.pass && std::abs(r.alpha - 1.0) <= 1e-10 &&
                             std::abs(r.D - std::sqrt(static_cast<double>(n))) <= 1e-10;
            ok = ok && lit;
            msg << "n=" << n << " " << (lit ? "ok" : "fails") << " (max residual "
                << fmt(r.report().max_residual()) << ") ";
        }
        SpinModel m7 = cyclic_spin_model(7, true);
        SpinModelReport r7 = spin_model_check(7, m7.Wp, m7.Wm, 1e-10);
        msg << "| n=7 with phase exp(-i pi/4): " << (r7.pass ? "all residuals <= 1e-10" : "FAILS")
            << "; for n=3 mod 4 the row sum of W+ with alpha=1 is i*sqrt(n), so D=sqrt(n) cannot hold";
        return Outcome{ok, !ok && r7.pass, msg.str()};
    });

    criterion(8, "brute vs elimination on 200 random diagrams", 300, [] {
        AssociationScheme pet = builtin("petersen", {}), cyc = builtin("cycle", {5});
        Rng rng(8);
        double worst = 0;
        bool int_exact = true;
        for (int k = 0; k < 200; ++k) {
            const AssociationScheme& s = k % 2 ? cyc : pet;
            const bool integer_only = k % 4 < 2;
            Diagram d = random_diagram(rng, s, integer_only);
            EvalContext ctx(s);
            Tensor b = evaluate_brute(d, ctx), e = evaluate_eliminate(d, ctx);
            double dis = tensor_distance(b, e);
            worst = std::max(worst, dis);
            if (b.exact && e.exact) int_exact = int_exact && b.exact_data == e.exact_data;
            else if (integer_only) int_exact = false;
        }
        return Outcome{worst <= 1e-9 && int_exact, false,
                       "max disagreement " + fmt(worst) + " <= 1e-9; integer-only diagrams " +
                           (int_exact ? "agree exactly" : "NOT exact")};
    });

    criterion(9, "rewrite soundness sweep and the zero-parameter biconditionals", 300, [] {
        AssociationScheme pet = builtin("petersen", {}), cyc = builtin("cycle", {5});
        Rng rng(9);
        double worst = 0;
        int applied = 0;
        for (Rule r : all_rules())
            for (int k = 0; k < 50; ++k) {
                const AssociationScheme& s = k % 2 ? cyc : pet;
                RuleInstance in = random_instance(r, rng, s);
                worst = std::max(worst, verify_step(in.diag, in.step, EvalContext(s)));
                ++applied;
            }
        int mismatches = 0;
        for (const AssociationScheme* s : {&pet, &cyc})
            for (int i = 0; i <= s->d; ++i)
                for (int j = 0; j <= s->d; ++j)
                    for (int k = 0; k <= s->d; ++k) {
                        EvalContext ctx(*s);
                        Diagram tri;
                        tri.nodes = tri.roots = {"a", "b", "c"};
                        tri.edges = {{"a", "b", WeightRef::A(i)}, {"b", "c", WeightRef::A(j)}, {"a", "c", WeightRef::A(k)}};
                        const bool tri_zero = evaluate(tri, ctx).max_abs() <= 1e-9;
                        RewriteStep st{Rule::SR2, {{}, {0, 1, 2}}};
                        bool fires = true;
                        try {
                            apply_rule(tri, st, ctx);
                        } catch (const Error&) {
                            fires = false;
                        }
                        if (tri_zero != s->p_zero(i, j, k) || fires != tri_zero) ++mismatches;

                        Diagram star;
                        star.nodes = {"x", "a", "b", "c"};
                        star.roots = {"a", "b", "c"};
                        star.edges = {{"x", "a", WeightRef::E(i)}, {"x", "b", WeightRef::E(j)}, {"x", "c", WeightRef::E(k)}};
                        const bool star_zero = evaluate(star, ctx).max_abs() <= 1e-9;
                        RewriteStep sp{Rule::SR2p, {{"x"}, {}}};
                        fires = true;
                        try {
                            apply_rule(star, sp, ctx);
                        } catch (const Error&) {
                            fires = false;
                        }
                        if (star_zero != s->q_zero(i, j, s->conj_E[k]) || fires != star_zero) ++mismatches;
                    }
        return Outcome{worst <= 1e-9 && mismatches == 0, false,
                       std::to_string(applied) + " rule applications, max residual " + fmt(worst) +
                           " <= 1e-9; SR2/SR2' biconditional mismatches " + std::to_string(mismatches)};
    });

    criterion(10, "fan star product is multiplicative under xi", 60, [] {
        AssociationScheme s = builtin("petersen", {});
        EvalContext ctx(s);
        Rng rng(10);
        double worst = 0;
        for (int k = 0; k < 50; ++k) {
            Diagram a = random_fan(rng, s), b = random_fan(rng, s);
            auto xa = xi_map(a, ctx), xb = xi_map(b, ctx), xab = xi_map(terwilliger_star(a, b), ctx);
            for (int x = 0; x < s.n; ++x) worst = std::max(worst, (xab[x] - xa[x] * xb[x]).cwiseAbs().maxCoeff());
        }
        return Outcome{worst <= 1e-9, false, "50 fan pairs, blockwise max residual " + fmt(worst) + " <= 1e-9"};
    });

    criterion(11, "regularity oracles against W-space ranks; Shrikhande 4-vertex witness", 300, [] {
        const std::vector<std::pair<std::string, std::vector<int>>> names = {
            {"complete", {4}}, {"cycle", {5}}, {"petersen", {}}, {"hamming", {2, 4}}, {"shrikhande", {}}};
        std::ostringstream msg;
        bool ok = true;
        for (const auto& [name, params] : names) {
            AssociationScheme s = builtin(name, params);
            RegularityResult r = regularity_check(s, "triply");
            ok = ok && r.agrees_k4 && r.agrees_tristar;
            if (r.flag) ok = ok && four_vertex_condition(s).holds;
            msg << name << (r.flag ? " triply regular" : " not triply regular") << ", ";
        }
        AssociationScheme sh = builtin("shrikhande", {});
        FourVertexResult fv = four_vertex_condition(sh);
        EvalContext ctx(sh);
        ctx.add_custom("halfJI", CMatrix((CMatrix::Ones(sh.n, sh.n) - CMatrix::Identity(sh.n, sh.n)) * 0.5));
        Tensor w = evaluate(shrikhande_witness(), ctx);
        const bool outside = !in_bose_mesner(sh, w);
        ok = ok && !fv.holds && outside;
        msg << "ranks agree " << (ok ? "everywhere" : "NOT everywhere") << "; shrikhande 4-vertex condition "
            << (fv.holds ? "holds" : "fails") << ", witness " << (outside ? "outside" : "INSIDE") << " span{A_i}";
        return Outcome{ok, false, msg.str()};
    });

    criterion(12, "homomorphism counts into Petersen", 10, [] {
        Graph pg(petersen_graph());
        BigInt k2 = hom_count(Graph::complete(2), pg), c4 = hom_count(Graph::cycle(4), pg),
               k3 = hom_count(Graph::complete(3), pg);
        // closed walks: hom(C_k, G) = tr(A^k), and K_2 = C_2, K_3 = C_3
        BigInt o2 = trace_power(pg.adj, 2), o4 = trace_power(pg.adj, 4), o3 = trace_power(pg.adj, 3);
        bool ok = k2 == 30 && c4 == 150 && k3 == 0 && k2 == o2 && c4 == o4 && k3 == o3;
        return Outcome{ok, false,
                       "K2 " + k2.str() + ", C4 " + c4.str() + ", K3 " + k3.str() + "; trace oracle " + o2.str() +
                           ", " + o4.str() + ", " + o3.str()};
    });

    criterion(13, "pentagon family and its dual star family on hamming(4,2)", 120, [] {
        IdentityReport r = duality_experiment(builtin("hamming", {4, 2}), "pentagon", 1e-8);
        return Outcome{r.pass, false,
                       std::to_string(r.cases.size()) + " comparisons, max residual " + fmt(r.max_residual()) +
                           " <= 1e-8"};
    });

    std::cout << (failures == 0 ? "all criteria met" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
