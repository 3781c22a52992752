// W-space ranks, triple regularity and the 4-vertex condition.

#include <cmath>

#include "analysis_util.hpp"

namespace scaf {

using detail::build;

Diagram shape_diagram(const std::string& shape, WeightRef::Kind kind) {
    WeightRef w = WeightRef::basic(kind);
    const std::vector<std::string> r3 = {"a1", "a2", "a3"};
    if (shape == "edge") return build({"a1", "a2"}, {{"a1", "a2", w}});
    if (shape == "triangle") return build(r3, {{"a1", "a2", w}, {"a2", "a3", w}, {"a1", "a3", w}});
    if (shape == "wye") return build(r3, {{"a1", "c", w}, {"a2", "c", w}, {"a3", "c", w}});
    if (shape == "k4")
        return build(r3, {{"a1", "a2", w}, {"a2", "a3", w}, {"a1", "a3", w}, {"a1", "c", w}, {"a2", "c", w},
                          {"a3", "c", w}});
    if (shape == "tristar")
        return build(r3, {{"t1", "t2", w}, {"t2", "t3", w}, {"t1", "t3", w}, {"a1", "t1", w}, {"a2", "t2", w},
                          {"a3", "t3", w}});
    auto count = [&](const std::string& stem) {
        std::string rest = shape.substr(stem.size());
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
            throw Error("shape", "bad size in '" + shape + "'");
        int m = std::stoi(rest);
        if (m < 1 || m > 12) throw Error("shape", "size out of range in '" + shape + "'");
        return m;
    };
    if (shape.rfind("path_", 0) == 0) {
        int m = count("path_");
        std::vector<detail::Spec> es;
        for (int k = 0; k < m; ++k) es.push_back({"p" + std::to_string(k), "p" + std::to_string(k + 1), w});
        return build({"p0", "p" + std::to_string(m)}, es);
    }
    if (shape.rfind("star_", 0) == 0) {
        int m = count("star_");
        std::vector<std::string> roots;
        std::vector<detail::Spec> es;
        for (int k = 1; k <= m; ++k) {
            roots.push_back("a" + std::to_string(k));
            es.push_back({roots.back(), "c", w});
        }
        return build(roots, es);
    }
    throw Error("shape", "unknown shape '" + shape + "'");
}

namespace {

// All basis-weight assignments of the diagram's edges, evaluated in odometer order.
std::vector<Tensor> wspace_family(const AssociationScheme& s, const Diagram& shape, WeightRef::Kind kind,
                                  std::vector<std::vector<int>>* labels = nullptr) {
    const int m = static_cast<int>(shape.edges.size());
    const int D = s.dim();
    double count = std::pow(static_cast<double>(D), m);
    if (count > 1e6) throw Error("too-large", "(d+1)^|E| = " + std::to_string(static_cast<long long>(count)));
    EvalContext ctx(s);
    std::vector<Tensor> out;
    std::vector<int> idx(m, 0);
    Diagram g = shape;
    while (true) {
        for (int e = 0; e < m; ++e) {
            WeightRef w = WeightRef::basic(kind, idx[e]);
            w.transpose = shape.edges[e].w.transpose;
            g.edges[e].w = w;
        }
        out.push_back(evaluate(g, ctx));
        if (labels) labels->push_back(idx);
        int k = m - 1;
        for (; k >= 0; --k) {
            if (++idx[k] < D) break;
            idx[k] = 0;
        }
        if (k < 0) break;
    }
    return out;
}

}  // namespace

WSpaceResult wspace_rank(const AssociationScheme& s, const Diagram& shape, const Tolerance& tol, WeightRef::Kind kind) {
    WSpaceResult r;
    auto fam = wspace_family(s, shape, kind);
    r.count = static_cast<long>(fam.size());
    r.rank = span_rank(fam, tol);
    return r;
}

WSpaceResult wspace_rank(const AssociationScheme& s, const std::string& shape, const Tolerance& tol) {
    const bool wye = shape == "wye";
    const WeightRef::Kind kind = wye ? WeightRef::Kind::E : WeightRef::Kind::A;
    Diagram d = shape_diagram(shape, kind);
    if (shape != "triangle" && !wye) return wspace_rank(s, d, tol, kind);

    // Orthogonal basis claims: distinct supported members are orthogonal, with
    // norms n v_k p_ij^k (triangle a1->a2 A_i, a2->a3 A_j, a1->a3 A_k) and
    // m_k q_ij^k' / n (wye spokes E_i, E_j, E_k into the centre).
    std::vector<std::vector<int>> labels;
    auto fam = wspace_family(s, d, kind, &labels);
    WSpaceResult r;
    r.count = static_cast<long>(fam.size());
    r.rank = span_rank(fam, tol);
    r.orthogonality_checked = true;
    std::vector<size_t> support;
    for (size_t a = 0; a < fam.size(); ++a) {
        const auto& l = labels[a];
        bool nz = wye ? !s.q_zero(l[0], l[1], s.conj_E[l[2]]) : !s.p_zero(l[0], l[1], l[2]);
        if (nz) support.push_back(a);
        else r.orthogonality = std::max(r.orthogonality, fam[a].max_abs());
    }
    for (size_t x = 0; x < support.size(); ++x)
        for (size_t y = x; y < support.size(); ++y) {
            cplx ip = tensor_inner(fam[support[x]], fam[support[y]]);
            cplx expect = 0;
            if (x == y) {
                const auto& l = labels[support[x]];
                expect = wye ? double(s.m[l[2]]) * s.qijk(l[0], l[1], s.conj_E[l[2]]) / static_cast<double>(s.n)
                             : cplx(s.n * s.vd(l[2]) * s.pd(l[0], l[1], l[2]));
            }
            r.orthogonality = std::max(r.orthogonality, std::abs(ip - expect) / std::max(1.0, std::abs(expect)));
        }
    return r;
}

// ---- triple regularity ---------------------------------------------------

RegularityResult regularity_check(const AssociationScheme& s, const std::string& mode, const Tolerance& tol) {
    if (!s.symmetric) throw Error("symmetric-only", "regularity is checked on symmetric schemes");
    if (mode != "triply" && mode != "dually") throw Error("mode", "expected triply or dually, got '" + mode + "'");
    RegularityResult res;
    res.flag = true;
    const int n = s.n, D = s.dim();
    if (mode == "triply") {
        if (n > 128) throw Error("too-large", "triple regularity oracle is capped at n <= 128");
        std::vector<long> cnt(static_cast<size_t>(D) * D * D);
        for (int x = 0; x < n && res.flag; ++x)
            for (int y = 0; y < n && res.flag; ++y)
                for (int z = 0; z < n && res.flag; ++z) {
                    const int i = s.relation(x, y), j = s.relation(y, z), k = s.relation(z, x);
                    std::fill(cnt.begin(), cnt.end(), 0);
                    for (int w = 0; w < n; ++w)
                        ++cnt[(static_cast<size_t>(s.relation(x, w)) * D + s.relation(y, w)) * D + s.relation(z, w)];
                    for (int r = 0; r < D && res.flag; ++r)
                        for (int ss = 0; ss < D && res.flag; ++ss)
                            for (int t = 0; t < D; ++t) {
                                std::array<int, 6> key{i, j, k, r, ss, t};
                                cplx c = static_cast<double>(cnt[(static_cast<size_t>(r) * D + ss) * D + t]);
                                auto it = res.table.find(key);
                                if (it == res.table.end()) {
                                    res.table[key] = c;
                                } else if (it->second != c) {
                                    res.flag = false;
                                    res.witness = RegularityWitness{x, y, z, {r, ss, t}};
                                    break;
                                }
                            }
                }
    } else {
        // L: tristar with E_i, E_j, E_k spokes and inner E_r (v,w), E_s (w,u), E_t (u,v);
        // Y: wye with spokes E_i, E_j, E_k. Dually triply regular iff L = sigma Y always.
        EvalContext ctx(s, Method::Eliminate);
        std::vector<Tensor> Y(static_cast<size_t>(D) * D * D);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                for (int k = 0; k < D; ++k)
                    Y[(static_cast<size_t>(i) * D + j) * D + k] = evaluate(
                        build({"x", "y", "z"}, {{"x", "c", detail::E(i)}, {"y", "c", detail::E(j)},
                                                {"z", "c", detail::E(k)}}),
                        ctx);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                for (int k = 0; k < D; ++k) {
                    const Tensor& y = Y[(static_cast<size_t>(i) * D + j) * D + k];
                    const cplx yy = tensor_inner(y, y);
                    for (int r = 0; r < D; ++r)
                        for (int ss = 0; ss < D; ++ss)
                            for (int t = 0; t < D; ++t) {
                                Diagram ld = build({"x", "y", "z"},
                                                   {{"x", "u", detail::E(i)}, {"y", "v", detail::E(j)},
                                                    {"z", "w", detail::E(k)}, {"v", "w", detail::E(r)},
                                                    {"w", "u", detail::E(ss)}, {"u", "v", detail::E(t)}});
                                Tensor l = evaluate(ld, ctx);
                                cplx sigma = std::abs(yy) > tol.abs_tol ? tensor_inner(y, l) / yy : cplx(0);
                                Tensor diff = l - y.scaled(sigma);
                                double resid = diff.max_abs();
                                res.max_residual = std::max(res.max_residual, resid);
                                res.table[{i, j, k, r, ss, t}] = sigma;
                                if (resid > tol.abs_tol + tol.rel_tol * l.max_abs() && res.flag) {
                                    res.flag = false;
                                    size_t arg = 0;
                                    for (size_t p = 1; p < diff.size(); ++p)
                                        if (std::abs(diff.data[p]) > std::abs(diff.data[arg])) arg = p;
                                    auto pos = diff.unflat(arg);
                                    res.witness = RegularityWitness{pos[0], pos[1], pos[2], {r, ss, t}};
                                }
                            }
                }
    }
    const int tri = wspace_rank(s, mode == "triply" ? "triangle" : "wye", tol).rank;
    res.rank_small = tri;
    res.rank_k4 = wspace_rank(s, "k4", tol).rank;
    res.rank_tristar = wspace_rank(s, "tristar", tol).rank;
    res.agrees_k4 = res.flag == (tri == res.rank_k4);
    res.agrees_tristar = res.flag == (tri == res.rank_tristar);
    return res;
}

// ---- 4-vertex condition --------------------------------------------------

bool in_bose_mesner(const AssociationScheme& s, const Tensor& m, const Tolerance& tol) {
    std::vector<Tensor> ts;
    for (int i = 0; i <= s.d; ++i) ts.push_back(Tensor::from_matrix(s.A[i]));
    ts.push_back(m);
    return span_rank(ts, tol) == s.dim();
}

Diagram shrikhande_witness() {
    return build({"A1", "A2"}, {{"A1", "A3", detail::A(1)},
                                {"A2", "A3", detail::A(1)},
                                {"A1", "A4", detail::A(1)},
                                {"A2", "A4", detail::A(1)},
                                {"A3", "A4", detail::A(1)},
                                {"A1", "A2", WeightRef::custom("halfJI")}});
}

FourVertexResult four_vertex_condition(const AssociationScheme& s, const Tolerance& tol) {
    // Roots a, b and hollow c, e; each of the six pairs carries no edge or one A_i.
    const std::vector<std::string> ids = {"a", "b", "c", "e"};
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) pairs.emplace_back(u, v);
    const int choices = s.dim() + 1;
    EvalContext ctx(s);
    FourVertexResult res;
    std::vector<int> idx(6, 0);
    while (true) {
        Diagram d;
        d.nodes = ids;
        d.roots = {"a", "b"};
        for (int p = 0; p < 6; ++p)
            if (idx[p] > 0) d.edges.push_back({ids[pairs[p].first], ids[pairs[p].second], WeightRef::A(idx[p] - 1)});
        ++res.checked;
        if (!in_bose_mesner(s, evaluate(d, ctx), tol)) {
            res.holds = false;
            res.witness = d;
            return res;
        }
        int k = 5;
        for (; k >= 0; --k) {
            if (++idx[k] < choices) break;
            idx[k] = 0;
        }
        if (k < 0) break;
    }
    return res;
}

}  // namespace scaf
