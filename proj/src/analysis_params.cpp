// Generalized intersection numbers, vanishing-parameter relations, spin models
// and homomorphism counts.

#include <cmath>

#include "analysis_util.hpp"

namespace scaf {

using detail::build;

Diagram star_diagram(const std::vector<WeightRef>& spokes) {
    std::vector<std::string> roots;
    std::vector<detail::Spec> edges;
    for (size_t t = 0; t < spokes.size(); ++t) {
        roots.push_back("a" + std::to_string(t + 1));
        edges.push_back({roots.back(), "c", spokes[t]});
    }
    return build(roots, edges, {"c"});
}

namespace {

void check_star_args(const AssociationScheme& s, const std::vector<int>& base, const std::vector<int>& idx) {
    if (base.size() != idx.size() || base.empty()) throw Error("range", "basepoints and indices differ in length");
    for (int a : base)
        if (a < 0 || a >= s.n) throw Error("range", "vertex " + std::to_string(a));
    for (int i : idx)
        if (i < 0 || i > s.d) throw Error("range", "class index " + std::to_string(i));
}

}  // namespace

BigInt triple_star(const AssociationScheme& s, const std::vector<int>& base, const std::vector<int>& idx) {
    check_star_args(s, base, idx);
    BigInt count = 0;
    for (int b = 0; b < s.n; ++b) {
        bool ok = true;
        for (size_t t = 0; t < base.size() && ok; ++t) ok = s.relation(base[t], b) == idx[t];
        if (ok) ++count;
    }
    return count;
}

BigInt triple_star_scaffold(const AssociationScheme& s, const std::vector<int>& base, const std::vector<int>& idx) {
    check_star_args(s, base, idx);
    std::vector<WeightRef> spokes;
    for (int i : idx) spokes.push_back(WeightRef::A(i));
    Diagram d = star_diagram(spokes);
    for (size_t t = 0; t < base.size(); ++t) d.fixed[d.roots[t]] = base[t];
    d.roots.clear();
    EvalContext ctx(s, Method::Eliminate);
    Tensor t = evaluate(d, ctx);
    if (!t.exact) throw Error("precondition", "star scaffold did not evaluate exactly");
    return t.exact_data[0];
}

double vanishing_parameter_relation(const AssociationScheme& s, const std::string& mode, int r, int s_, int t) {
    for (int x : {r, s_, t})
        if (x < 0 || x > s.d) throw Error("range", "index " + std::to_string(x));
    EvalContext ctx(s, Method::Eliminate);
    Tensor acc = Tensor::zeros(s.n, 3);
    const int D = s.dim();
    if (mode == "krein") {
        if (!s.q_zero(r, s_, t)) throw Error("hypothesis", "q_" + std::to_string(r) + std::to_string(s_) + "^" +
                                                               std::to_string(t) + " does not vanish");
        // E_r = (1/n) sum_i Q_ir A_i, so this is n^3 times the pinched E-star.
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                for (int k = 0; k < D; ++k) {
                    cplx c = s.Q(i, r) * s.Q(j, s_) * s.Q(k, t);
                    if (std::abs(c) == 0.0) continue;
                    Diagram d = build({"a1", "a2", "a3"}, {{"a1", "c", detail::A(i)}, {"a3", "c", detail::A(j)},
                                                          {"a2", "c", detail::A(k)}});
                    acc = acc + evaluate(d, ctx).scaled(c);
                }
    } else if (mode == "intersection") {
        if (!s.p_zero(r, s_, t)) throw Error("hypothesis", "p_" + std::to_string(r) + std::to_string(s_) + "^" +
                                                               std::to_string(t) + " does not vanish");
        // A_i = sum_r P_ri E_r, so this is the A-triangle on (i,j,k) written in the E basis.
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b)
                for (int c = 0; c < D; ++c) {
                    cplx w = s.P(a, r) * s.P(b, s_) * s.P(c, t);
                    if (std::abs(w) == 0.0) continue;
                    Diagram d = build({"a1", "a2", "a3"}, {{"a1", "a2", detail::E(a)}, {"a2", "a3", detail::E(b)},
                                                          {"a1", "a3", detail::E(c)}});
                    acc = acc + evaluate(d, ctx).scaled(w);
                }
    } else {
        throw Error("mode", "expected krein or intersection, got '" + mode + "'");
    }
    return acc.max_abs();
}

// ---- spin models ---------------------------------------------------------

SpinModel cyclic_spin_model(int n, bool normalized) {
    if (n % 2 == 0) throw Error("parity", "cyclic spin model needs odd n, got " + std::to_string(n));
    if (n < 3) throw Error("range", "cyclic spin model needs n >= 3");
    const double pi = std::acos(-1.0);
    cplx kappa = 1.0;
    // Gauss sum is sqrt(n) for n = 1 mod 4 and i sqrt(n) for n = 3 mod 4.
    if (normalized && n % 4 == 3) kappa = std::polar(1.0, -pi / 4);
    SpinModel m;
    m.Wp = CMatrix(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            long e = (static_cast<long>(a - b) * (a - b)) % n;
            m.Wp(a, b) = kappa * std::polar(1.0, 2 * pi * static_cast<double>(e) / n);
        }
    m.Wm = m.Wp.conjugate();
    return m;
}

SpinModelReport spin_model_check(int n, const CMatrix& Wp, const CMatrix& Wm, double tol) {
    if (n < 1 || Wp.rows() != n || Wp.cols() != n || Wm.rows() != n || Wm.cols() != n)
        throw Error("shape", "spin model matrices must be " + std::to_string(n) + "x" + std::to_string(n));
    SpinModelReport r;
    r.n = n;
    r.tol = tol;
    r.alpha = Wp(0, 0);
    const double sq = std::sqrt(static_cast<double>(n));
    const cplx row0 = Wp.row(0).sum();
    // D^2 = n; take the root that best matches the row-sum relation D / alpha.
    r.D = std::abs(sq / r.alpha - row0) <= std::abs(-sq / r.alpha - row0) ? cplx(sq) : cplx(-sq);
    const cplx ai = 1.0 / r.alpha;
    for (int x = 0; x < n; ++x) {
        r.diag_plus = std::max(r.diag_plus, std::abs(Wp(x, x) - r.alpha));
        r.diag_minus = std::max(r.diag_minus, std::abs(Wm(x, x) - ai));
        r.row_plus = std::max(r.row_plus, std::abs(Wp.row(x).sum() - r.D * ai));
        r.col_plus = std::max(r.col_plus, std::abs(Wp.col(x).sum() - r.D * ai));
        r.row_minus = std::max(r.row_minus, std::abs(Wm.row(x).sum() - r.D * r.alpha));
        r.col_minus = std::max(r.col_minus, std::abs(Wm.col(x).sum() - r.D * r.alpha));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) r.hadamard = std::max(r.hadamard, std::abs(Wp(a, b) * Wm(b, a) - 1.0));
    const CMatrix nI = CMatrix::Identity(n, n) * static_cast<double>(n);
    r.product = std::max((Wm * Wp - nI).cwiseAbs().maxCoeff(), (Wp * Wm - nI).cwiseAbs().maxCoeff());
    // sum_x W+(x,a) W+(x,b) W-(c,x) = D W+(a,b) W-(b,c) W-(c,a)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                cplx lhs = 0;
                for (int x = 0; x < n; ++x) lhs += Wp(x, a) * Wp(x, b) * Wm(c, x);
                cplx rhs = r.D * Wp(a, b) * Wm(b, c) * Wm(c, a);
                r.star_triangle = std::max(r.star_triangle, std::abs(lhs - rhs));
            }
    r.pass = true;
    for (double v : {r.diag_plus, r.row_plus, r.col_plus, r.diag_minus, r.row_minus, r.col_minus, r.hadamard,
                     r.product, r.star_triangle})
        r.pass = r.pass && v <= tol;
    return r;
}

IdentityReport SpinModelReport::report() const {
    IdentityReport rep;
    rep.suite = "spinmodel";
    rep.add_residual("typeI diagonal W+", diag_plus, tol);
    rep.add_residual("typeI row sum W+", row_plus, tol);
    rep.add_residual("typeI column sum W+", col_plus, tol);
    rep.add_residual("typeI diagonal W-", diag_minus, tol);
    rep.add_residual("typeI row sum W-", row_minus, tol);
    rep.add_residual("typeI column sum W-", col_minus, tol);
    rep.add_residual("typeII hadamard", hadamard, tol);
    rep.add_residual("typeII product", product, tol);
    rep.add_residual("typeIII star-triangle", star_triangle, tol);
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%d alpha=%.12g%+.12gi D=%.12g%+.12gi", n, round12(alpha.real()),
                  round12(alpha.imag()), round12(D.real()), round12(D.imag()));
    rep.message = buf;
    return rep;
}

// ---- homomorphisms -------------------------------------------------------

Graph::Graph(IntMatrix a) : n(a.n()), adj(std::move(a)) {
    for (int x = 0; x < n; ++x) {
        if (!adj(x, x).is_zero()) throw Error("graph", "loop at vertex " + std::to_string(x));
        for (int y = 0; y < n; ++y) {
            if (adj(x, y) != 0 && adj(x, y) != 1) throw Error("graph", "adjacency entries must be 0 or 1");
            if (adj(x, y) != adj(y, x)) throw Error("graph", "adjacency must be symmetric");
        }
    }
}

Graph Graph::complete(int n) { return Graph(complete_graph(n)); }
Graph Graph::cycle(int n) { return Graph(cycle_graph(n)); }

Graph Graph::path(int n) {
    IntMatrix a(n);
    for (int x = 0; x + 1 < n; ++x) a(x, x + 1) = a(x + 1, x) = 1;
    return Graph(a);
}

BigInt hom_count(const Graph& g, const Graph& gamma, const std::map<int, int>& fixed, int node_cap) {
    if (g.n > node_cap)
        throw Error("too-large", std::to_string(g.n) + " nodes exceed the cap of " + std::to_string(node_cap));
    if (gamma.n == 0) return g.n == 0 ? 1 : 0;
    // The context only needs the vertex count; every weight is the custom adjacency.
    AssociationScheme shell;
    shell.n = gamma.n;
    EvalContext ctx(shell, Method::Eliminate);
    ctx.add_custom("Gamma", gamma.adj);
    Diagram d;
    for (int v = 0; v < g.n; ++v) d.nodes.push_back("g" + std::to_string(v));
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.adj(u, v) == 1) d.edges.push_back({d.nodes[u], d.nodes[v], WeightRef::custom("Gamma")});
    for (const auto& [u, x] : fixed) {
        if (u < 0 || u >= g.n) throw Error("range", "graph node " + std::to_string(u));
        if (x < 0 || x >= gamma.n) throw Error("range", "target vertex " + std::to_string(x));
        d.fixed[d.nodes[u]] = x;
    }
    Tensor t = evaluate(d, ctx);
    return t.exact_data.at(0);
}

BigRational hom_density(const Graph& g, const Graph& gamma) {
    BigInt denom = 1;
    for (int k = 0; k < g.n; ++k) denom *= gamma.n;
    return BigRational(hom_count(g, gamma), denom);
}

}  // namespace scaf
