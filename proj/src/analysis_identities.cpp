// Inner-product tables of third-order scaffolds, Terwilliger Gram formulas and
// the basic scaffold lemmas, each checked against closed formulas.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "analysis_util.hpp"

namespace scaf {

using detail::build;

namespace {

using Idx = std::vector<int>;
using Builder = std::function<Diagram(const Idx&)>;

std::string tuple_str(const Idx& v) {
    std::ostringstream o;
    o << "(";
    for (size_t k = 0; k < v.size(); ++k) o << (k ? "," : "") << v[k];
    o << ")";
    return o.str();
}

WeightRef W(WeightRef::Kind k, int i) { return WeightRef::basic(k, i); }
constexpr auto KA = WeightRef::Kind::A;
constexpr auto KE = WeightRef::Kind::E;

// out(.., a, ..) = sum_x M(a, x) in(.., x, ..) along one axis of an order-3 tensor
std::vector<cplx> mode_apply(const std::vector<cplx>& in, const CMatrix& M, int axis, int n) {
    std::vector<cplx> out(in.size(), cplx(0));
    const size_t st = axis == 0 ? static_cast<size_t>(n) * n : axis == 1 ? n : 1;
    for (size_t f = 0; f < in.size(); ++f) {
        if (in[f] == cplx(0)) continue;
        const int x = static_cast<int>((f / st) % n);
        const size_t base = f - x * st;
        for (int a = 0; a < n; ++a) out[base + a * st] += M(a, x) * in[f];
    }
    return out;
}

cplx plain_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0;
    for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

class Suite {
public:
    Suite(const AssociationScheme& s, const SuiteOptions& opt, const std::string& name)
        : s_(s), opt_(opt), ctx_(s, Method::Eliminate), D_(s.dim()), n_(s.n), rng_(opt.seed) {
        rep_.suite = name;
    }

    IdentityReport& report() { return rep_; }
    int D() const { return D_; }
    double n() const { return n_; }
    const AssociationScheme& s() const { return s_; }
    EvalContext& ctx() { return ctx_; }

    long count(int k) const {
        long c = 1;
        for (int t = 0; t < k; ++t) c *= D_;
        return c;
    }
    Idx unflat(long f, int k) const {
        Idx v(k);
        for (int t = k - 1; t >= 0; --t) {
            v[t] = static_cast<int>(f % D_);
            f /= D_;
        }
        return v;
    }
    long flat(const Idx& v, size_t from, size_t len) const {
        long f = 0;
        for (size_t t = from; t < from + len; ++t) f = f * D_ + v[t];
        return f;
    }

    std::vector<Tensor> family(const Builder& b, int k) {
        std::vector<Tensor> out;
        for (long f = 0; f < count(k); ++f) out.push_back(evaluate(b(unflat(f, k)), ctx_));
        return out;
    }

    // Runs fn over every k-tuple, or over a seeded sample when there are too many.
    void sweep(const std::string& id, int k, const std::function<std::pair<cplx, cplx>(const Idx&)>& fn) {
        const long total = count(k);
        const bool all = opt_.exhaustive || total <= kSampleLimit;
        const long runs = all ? total : kSampleLimit;
        std::uniform_int_distribution<long> pick(0, total - 1);
        double worst = -1;
        cplx we = 0, wc = 0;
        Idx wt;
        for (long r = 0; r < runs; ++r) {
            Idx t = unflat(all ? r : pick(rng_), k);
            auto [expected, computed] = fn(t);
            double ratio = std::abs(expected - computed) / std::max(1.0, std::abs(expected));
            if (ratio > worst) {
                worst = ratio;
                we = expected;
                wc = computed;
                wt = t;
            }
        }
        std::string note = "tuples=" + std::to_string(runs) + (all ? "" : " sampled") + " worst=" + tuple_str(wt);
        rep_.add(id, we, wc, opt_.tol * std::max(1.0, std::abs(we)), note);
    }

    // Pairing-diagram evaluation for a few sampled tuples, against the cached inner product.
    void pairing_check(const std::string& id, const Builder& L, int kl, const Builder& R, int kr) {
        std::uniform_int_distribution<long> pl(0, count(kl) - 1), pr(0, count(kr) - 1);
        double worst = 0;
        for (int r = 0; r < 2; ++r) {
            Diagram l = L(unflat(pl(rng_), kl)), rr = R(unflat(pr(rng_), kr));
            cplx direct = evaluate(bilinear_pair(l, rr, 3), ctx_).scalar();
            cplx cached = tensor_inner(evaluate(l, ctx_), evaluate(rr, ctx_));
            worst = std::max(worst, std::abs(direct - cached) / std::max(1.0, std::abs(direct)));
        }
        rep_.add_residual(id + " pairing", worst, opt_.tol, "bilinear pairing vs tensor inner product");
    }

    // <L(a), R(b)> against rhs(a, b) over all (a, b).
    void inner_identity(const std::string& id, const Builder& L, int kl, const Builder& R, int kr,
                        const std::function<cplx(const Idx&, const Idx&)>& rhs) {
        auto lf = family(L, kl);
        auto rf = family(R, kr);
        std::vector<bool> lz(lf.size()), rz(rf.size());
        for (size_t a = 0; a < lf.size(); ++a) lz[a] = lf[a].max_abs() == 0.0;
        for (size_t b = 0; b < rf.size(); ++b) rz[b] = rf[b].max_abs() == 0.0;
        sweep(id, kl + kr, [&](const Idx& t) {
            Idx a(t.begin(), t.begin() + kl), b(t.begin() + kl, t.end());
            long fa = flat(t, 0, kl), fb = flat(t, kl, kr);
            cplx lhs = (lz[fa] || rz[fb]) ? cplx(0) : tensor_inner(lf[fa], rf[fb]);
            return std::make_pair(rhs(a, b), lhs);
        });
        pairing_check(id, L, kl, R, kr);
    }

private:
    const AssociationScheme& s_;
    SuiteOptions opt_;
    EvalContext ctx_;
    IdentityReport rep_;
    int D_;
    double n_;
    std::mt19937_64 rng_;
};

int delta(int a, int b) { return a == b ? 1 : 0; }

// ---- inner products of third-order scaffolds -----------------------------

Diagram tri_a(WeightRef::Kind k, const Idx& x) {  // (i,j,k) on A2->A3, A3->A1, A2->A1
    return build({"A1", "A2", "A3"}, {{"A2", "A3", W(k, x[0])}, {"A3", "A1", W(k, x[1])}, {"A2", "A1", W(k, x[2])}});
}
Diagram tri_e(const Idx& x) {  // (i,j,k) on A3->A2, A1->A3, A1->A2
    return build({"A1", "A2", "A3"}, {{"A3", "A2", W(KE, x[0])}, {"A1", "A3", W(KE, x[1])}, {"A1", "A2", W(KE, x[2])}});
}
Diagram star_in(WeightRef::Kind k, const Idx& x) {  // A2->c, A4->c, c->A1
    return build({"A1", "A2", "A4"}, {{"A2", "c", W(k, x[0])}, {"A4", "c", W(k, x[1])}, {"c", "A1", W(k, x[2])}});
}
Diagram star_out(WeightRef::Kind k, const Idx& x) {  // c->A2, c->A4, c->A1
    return build({"A1", "A2", "A4"}, {{"c", "A4", W(k, x[1])}, {"c", "A2", W(k, x[0])}, {"c", "A1", W(k, x[2])}});
}
Diagram star_allin(WeightRef::Kind k, const Idx& x) {  // A2->c, A4->c, A1->c
    return build({"A1", "A2", "A4"}, {{"A2", "c", W(k, x[0])}, {"A4", "c", W(k, x[1])}, {"A1", "c", W(k, x[2])}});
}
Diagram tri_b(WeightRef::Kind k, const Idx& x) {  // (r,s,t): B4->B1 r, B2->B4 s, B1->B2 t
    return build({"B1", "B2", "B4"}, {{"B2", "B4", W(k, x[1])}, {"B4", "B1", W(k, x[0])}, {"B1", "B2", W(k, x[2])}});
}
// K4 with centre C3 and outer triangle C1, C2, C4.
Diagram k4_717(WeightRef::Kind sk, WeightRef::Kind tk, int i, int j, int k, int r, int s, int t) {
    return build({}, {{"C1", "C2", W(tk, t)}, {"C1", "C3", W(sk, k)}, {"C4", "C1", W(tk, r)}, {"C2", "C3", W(sk, i)},
                      {"C2", "C4", W(tk, s)}, {"C4", "C3", W(sk, j)}});
}
Diagram prism10(const Idx& x) {  // (h,i,j,k,l,m)
    return build({"A1", "A2", "A3"}, {{"A3", "Aa3", W(KE, x[1])}, {"A2", "Aa2", W(KE, x[0])}, {"A1", "Aa1", W(KE, x[2])},
                                      {"Aa1", "Aa3", W(KE, x[3])}, {"Aa2", "Aa1", W(KE, x[4])},
                                      {"Aa3", "Aa2", W(KE, x[5])}});
}
Diagram star3(WeightRef::Kind k, const Idx& x) {  // (r,s,t): B2->B4 r, B3->B4 s, B1->B4 t
    return build({"B1", "B2", "B3"}, {{"B1", "B4", W(k, x[2])}, {"B2", "B4", W(k, x[0])}, {"B3", "B4", W(k, x[1])}});
}
Diagram k4_10(int h, int i, int j, int k, int l, int m) {
    return build({}, {{"C1", "C2", W(KE, l)}, {"C3", "C1", W(KE, k)}, {"C2", "C3", W(KE, m)}, {"C1", "C4", W(KE, j)},
                      {"C2", "C4", W(KE, h)}, {"C3", "C4", W(KE, i)}});
}
Diagram prism12_a(const Idx& x) {  // (i1,i2,i3,j1,j2,j3), spokes into the roots
    return build({"A1", "A2", "A4"}, {{"Aa4", "A4", W(KA, x[1])}, {"Aa2", "A2", W(KA, x[0])}, {"Aa1", "A1", W(KA, x[2])},
                                      {"Aa4", "Aa1", W(KA, x[3])}, {"Aa1", "Aa2", W(KA, x[4])},
                                      {"Aa2", "Aa4", W(KA, x[5])}});
}
Diagram prism12_e(const Idx& x) {
    return build({"A1", "A2", "A4"}, {{"A4", "Aa4", W(KE, x[1])}, {"A2", "Aa2", W(KE, x[0])}, {"A1", "Aa1", W(KE, x[2])},
                                      {"Aa1", "Aa4", W(KE, x[3])}, {"Aa2", "Aa1", W(KE, x[4])},
                                      {"Aa4", "Aa2", W(KE, x[5])}});
}
Diagram prism12_b(WeightRef::Kind k, const Idx& x) {  // (r1,r2,r3,s1,s2,s3)
    return build({"B1", "B2", "B4"}, {{"B4", "Bb4", W(k, x[1])}, {"B2", "Bb2", W(k, x[0])}, {"B1", "Bb1", W(k, x[2])},
                                      {"Bb1", "Bb4", W(k, x[3])}, {"Bb2", "Bb1", W(k, x[4])},
                                      {"Bb4", "Bb2", W(k, x[5])}});
}

// Closed prism: outer triangle C1,C2,C3, inner Cc1,Cc2,Cc3, spokes C_t -> Cc_t.
Diagram prism_rhs(WeightRef::Kind ok, const Idx& j, WeightRef::Kind ik, const Idx& s, WeightRef::Kind sk,
                  const Idx& sp, bool e_outer) {
    std::vector<detail::Spec> es;
    if (e_outer)
        es = {{"C1", "C3", W(ok, j[0])}, {"C2", "C1", W(ok, j[1])}, {"C3", "C2", W(ok, j[2])}};
    else
        es = {{"C3", "C1", W(ok, j[0])}, {"C1", "C2", W(ok, j[1])}, {"C2", "C3", W(ok, j[2])}};
    es.push_back({"Cc1", "Cc3", W(ik, s[0])});
    es.push_back({"Cc2", "Cc1", W(ik, s[1])});
    es.push_back({"Cc3", "Cc2", W(ik, s[2])});
    es.push_back({"C1", "Cc1", W(sk, sp[0])});
    es.push_back({"C2", "Cc2", W(sk, sp[1])});
    es.push_back({"C3", "Cc3", W(sk, sp[2])});
    return build({}, es);
}

void appendix_b(Suite& S) {
    const auto& s = S.s();
    const double n = S.n();
    const int D = S.D();
    auto v = [&](int i) { return s.vd(i); };
    auto p = [&](int i, int j, int k) { return s.pd(i, j, k); };
    auto q = [&](int i, int j, int k) { return s.qijk(i, j, k); };
    auto P = [&](int j, int i) { return s.P(j, i); };
    auto Q = [&](int i, int j) { return s.Q(i, j); };
    auto dd = [](const Idx& a, const Idx& b) { return delta(a[0], b[0]) * delta(a[1], b[1]) * delta(a[2], b[2]); };

    S.inner_identity("B.1", [](const Idx& x) { return tri_a(KA, x); }, 3, [](const Idx& x) { return tri_a(KA, x); }, 3,
                     [&](const Idx& a, const Idx& b) { return cplx(dd(a, b) * n * v(a[2]) * p(a[0], a[1], a[2])); });
    S.inner_identity("B.2", tri_e, 3, [](const Idx& x) { return tri_a(KA, x); }, 3, [&](const Idx& a, const Idx& b) {
        return Q(b[0], a[0]) * Q(b[1], a[1]) * Q(b[2], a[2]) * v(b[2]) * p(b[0], b[1], b[2]) / (n * n);
    });
    S.inner_identity("B.3", tri_e, 3, tri_e, 3, [&](const Idx& a, const Idx& b) {
        cplx acc = 0;
        for (int l = 0; l < D; ++l) acc += double(s.m[l]) * q(a[0], b[0], l) * q(a[1], b[1], l) * q(a[2], b[2], l);
        return acc / (n * n * n);
    });
    S.inner_identity("B.4", [](const Idx& x) { return star_in(KE, x); }, 3,
                     [](const Idx& x) { return star_in(KE, x); }, 3, [&](const Idx& a, const Idx& b) {
                         return double(dd(a, b) * s.m[a[2]]) * q(a[0], a[1], a[2]) / n;
                     });
    S.inner_identity("B.5", [](const Idx& x) { return star_in(KE, x); }, 3,
                     [](const Idx& x) { return star_in(KA, x); }, 3,
                     [&](const Idx& a, const Idx& b) {
                         return P(a[0], b[0]) * P(a[1], b[1]) * P(a[2], b[2]) * double(s.m[a[2]]) *
                                q(a[0], a[1], a[2]) / n;
                     });
    S.inner_identity("B.6", [](const Idx& x) { return star_out(KA, x); }, 3,
                     [](const Idx& x) { return star_in(KA, x); }, 3, [&](const Idx& a, const Idx& b) {
                         double acc = 0;
                         for (int l = 0; l < D; ++l) acc += v(l) * p(a[0], b[0], l) * p(a[1], b[1], l) * p(a[2], b[2], l);
                         return cplx(n * acc);
                     });

    // Hollow K4 right-hand sides, cached per kind pair and index tuple.
    std::map<std::pair<int, long>, cplx> k4;
    auto k4v = [&](int tag, WeightRef::Kind sk, WeightRef::Kind tk, const Idx& a, const Idx& b) {
        long key = 0;
        for (int x : {a[0], a[1], a[2], b[0], b[1], b[2]}) key = key * D + x;
        auto it = k4.find({tag, key});
        if (it != k4.end()) return it->second;
        cplx val = evaluate(k4_717(sk, tk, a[0], a[1], a[2], b[0], b[1], b[2]), S.ctx()).scalar();
        k4[{tag, key}] = val;
        return val;
    };
    S.inner_identity("B.7", [](const Idx& x) { return star_allin(KA, x); }, 3,
                     [](const Idx& x) { return tri_b(KA, x); }, 3, [&](const Idx& a, const Idx& b) {
                         if (s.p_zero(a[0], s.conj_A[a[1]], b[1]) || s.p_zero(a[1], s.conj_A[a[2]], b[0]) ||
                             s.p_zero(a[2], s.conj_A[a[0]], b[2]))
                             return cplx(0);
                         return k4v(7, KA, KA, a, b);
                     });
    S.inner_identity("B.8", [](const Idx& x) { return star_out(KE, x); }, 3,
                     [](const Idx& x) { return tri_b(KA, x); }, 3,
                     [&](const Idx& a, const Idx& b) { return k4v(8, KE, KA, a, b); });
    S.inner_identity("B.9", [](const Idx& x) { return star_out(KE, x); }, 3,
                     [](const Idx& x) { return tri_b(KE, x); }, 3, [&](const Idx& a, const Idx& b) {
                         // (s,r,t) on the triangle edges B2->B4, B4->B1, B1->B2
                         if (s.q_zero(s.conj_E[b[1]], b[2], a[0]) || s.q_zero(s.conj_E[b[0]], b[1], a[1]) ||
                             s.q_zero(s.conj_E[b[2]], b[0], a[2]))
                             return cplx(0);
                         return k4v(9, KE, KE, a, b);
                     });

    std::map<long, cplx> k10;
    auto k10v = [&](const Idx& a) {
        long key = 0;
        for (int x : a) key = key * D + x;
        auto it = k10.find(key);
        if (it != k10.end()) return it->second;
        cplx val = evaluate(k4_10(a[0], a[1], a[2], a[3], a[4], a[5]), S.ctx()).scalar();
        return k10[key] = val;
    };
    S.inner_identity("B.10", prism10, 6, [](const Idx& x) { return star3(KE, x); }, 3,
                     [&](const Idx& a, const Idx& b) {
                         if (!(a[0] == b[0] && a[1] == b[1] && a[2] == b[2])) return cplx(0);
                         return k10v(a);
                     });
    S.inner_identity("B.11", prism10, 6, [](const Idx& x) { return star3(KA, x); }, 3,
                     [&](const Idx& a, const Idx& b) {
                         cplx c = P(a[0], b[0]) * P(a[1], b[1]) * P(a[2], b[2]);
                         return c == cplx(0) ? c : c * k10v(a);
                     });

    // Prism right-hand sides through mode products: outer triangle tensor, spoke
    // matrices along each axis, inner triangle tensor.
    const int nn = s.n;
    auto tri_tensor = [&](const std::vector<detail::Spec>& es) {
        return evaluate(build({"X1", "X2", "X3"}, es), S.ctx()).data;
    };
    auto outer_a = [&](const Idx& j) {
        return tri_tensor({{"X3", "X1", W(KA, j[0])}, {"X1", "X2", W(KA, j[1])}, {"X2", "X3", W(KA, j[2])}});
    };
    auto outer_e = [&](const Idx& j) {
        return tri_tensor({{"X1", "X3", W(KE, j[0])}, {"X2", "X1", W(KE, j[1])}, {"X3", "X2", W(KE, j[2])}});
    };
    auto inner = [&](WeightRef::Kind k, const Idx& sv) {
        return tri_tensor({{"X1", "X3", W(k, sv[0])}, {"X2", "X1", W(k, sv[1])}, {"X3", "X2", W(k, sv[2])}});
    };
    auto mat = [&](WeightRef::Kind k, int i) { return k == KA ? s.Ac(i) : s.E[i]; };
    // table[(j, s, spokes)] with spokes given per axis (C1, C2, C3)
    auto prism_table = [&](bool e_outer, WeightRef::Kind ik, WeightRef::Kind sk) {
        const long c3 = S.count(3);
        std::vector<cplx> tab(static_cast<size_t>(c3 * c3 * c3));
        std::vector<std::vector<cplx>> outs;
        for (long fj = 0; fj < c3; ++fj) outs.push_back(e_outer ? outer_e(S.unflat(fj, 3)) : outer_a(S.unflat(fj, 3)));
        for (long fs = 0; fs < c3; ++fs) {
            auto in = inner(ik, S.unflat(fs, 3));
            for (long fk = 0; fk < c3; ++fk) {
                Idx k = S.unflat(fk, 3);
                auto t = mode_apply(in, mat(sk, k[0]), 0, nn);
                t = mode_apply(t, mat(sk, k[1]), 1, nn);
                t = mode_apply(t, mat(sk, k[2]), 2, nn);
                for (long fj = 0; fj < c3; ++fj) tab[(fj * c3 + fs) * c3 + fk] = plain_dot(outs[fj], t);
            }
        }
        return tab;
    };
    const long c3 = S.count(3);
    auto tidx = [&](const Idx& j, const Idx& sv, const Idx& k) {
        return ((S.flat(j, 0, 3) * c3 + S.flat(sv, 0, 3)) * c3) + S.flat(k, 0, 3);
    };
    // Engine evaluation of a few prism diagrams against the mode-product table.
    auto table_check = [&](const std::string& id, const std::vector<cplx>& tab, bool e_outer, WeightRef::Kind ok,
                           WeightRef::Kind ik, WeightRef::Kind sk) {
        double worst = 0;
        std::mt19937_64 g(7);
        std::uniform_int_distribution<long> pick(0, c3 - 1);
        for (int r = 0; r < 3; ++r) {
            Idx j = S.unflat(pick(g), 3), sv = S.unflat(pick(g), 3), k = S.unflat(pick(g), 3);
            cplx direct = evaluate(prism_rhs(ok, j, ik, sv, sk, k, e_outer), S.ctx()).scalar();
            cplx t = tab[tidx(j, sv, k)];
            worst = std::max(worst, std::abs(direct - t) / std::max(1.0, std::abs(direct)));
        }
        S.report().add_residual(id + " rhs diagram", worst, 1e-9, "engine vs contraction table");
    };

    {
        auto tab = prism_table(false, KA, KA);
        table_check("B.12", tab, false, KA, KA, KA);
        S.inner_identity("B.12", prism12_a, 6, [](const Idx& x) { return prism12_b(KA, x); }, 6,
                         [&](const Idx& a, const Idx& b) {
                             // spokes: C1 pairs (i3,r3), C2 pairs (i1,r1), C3 pairs (i2,r2)
                             Idx j = {a[3], a[4], a[5]}, sv = {b[3], b[4], b[5]};
                             cplx acc = 0;
                             for (int k1 = 0; k1 < D; ++k1) {
                                 double c1 = p(a[0], b[0], k1);
                                 if (c1 == 0) continue;
                                 for (int k2 = 0; k2 < D; ++k2) {
                                     double c2 = p(a[1], b[1], k2);
                                     if (c2 == 0) continue;
                                     for (int k3 = 0; k3 < D; ++k3) {
                                         double c = c1 * c2 * p(a[2], b[2], k3);
                                         if (c != 0) acc += c * tab[tidx(j, sv, {k3, k1, k2})];
                                     }
                                 }
                             }
                             return acc;
                         });
    }
    {
        auto tab = prism_table(true, KA, KE);
        table_check("B.13", tab, true, KE, KA, KE);
        S.inner_identity("B.13", prism12_e, 6, [](const Idx& x) { return prism12_b(KA, x); }, 6,
                         [&](const Idx& a, const Idx& b) {
                             cplx c = P(a[0], b[0]) * P(a[1], b[1]) * P(a[2], b[2]);
                             if (c == cplx(0)) return c;
                             return c * tab[tidx({a[3], a[4], a[5]}, {b[3], b[4], b[5]}, {a[2], a[0], a[1]})];
                         });
    }
    {
        auto tab = prism_table(true, KE, KE);
        table_check("B.14", tab, true, KE, KE, KE);
        S.inner_identity("B.14", prism12_e, 6, [](const Idx& x) { return prism12_b(KE, x); }, 6,
                         [&](const Idx& a, const Idx& b) {
                             if (!(a[0] == b[0] && a[1] == b[1] && a[2] == b[2])) return cplx(0);
                             return tab[tidx({a[3], a[4], a[5]}, {b[3], b[4], b[5]}, {a[2], a[0], a[1]})];
                         });
    }
}

// ---- Terwilliger Gram matrices -------------------------------------------

// e_st: a1->a3 W_s, a2->a3 W_t; p_i adds a1->a2 A_i; p*_j hollows a3 and adds root a4 with a4->a3 E_j.
Diagram gram_p(WeightRef::Kind k, int i, int s, int t) {
    return build({"a1", "a2", "a3"}, {{"a1", "a3", W(k, s)}, {"a2", "a3", W(k, t)}, {"a1", "a2", W(KA, i)}});
}
Diagram gram_pstar(WeightRef::Kind k, int j, int s, int t) {
    return build({"a1", "a2", "a4"}, {{"a1", "a3", W(k, s)}, {"a2", "a3", W(k, t)}, {"a4", "a3", W(KE, j)}});
}

void terwilliger(Suite& S) {
    const auto& s = S.s();
    const double n = S.n();
    const int D = S.D();
    // tuples (outer, x, y, s, t); left uses (outer, x, y), right (outer, s, t)
    auto run = [&](const std::string& id, bool star, WeightRef::Kind k,
                   const std::function<cplx(int, int, int, int, int)>& rhs) {
        Builder b = [=](const Idx& x) { return star ? gram_pstar(k, x[0], x[1], x[2]) : gram_p(k, x[0], x[1], x[2]); };
        auto fam = S.family(b, 3);
        S.sweep(id, 5, [&](const Idx& t) {
            cplx lhs = tensor_inner(fam[S.flat({t[0], t[1], t[2]}, 0, 3)], fam[S.flat({t[0], t[3], t[4]}, 0, 3)]);
            return std::make_pair(rhs(t[0], t[1], t[2], t[3], t[4]), lhs);
        });
        S.pairing_check(id, b, 3, b, 3);
    };
    run("p_i(e_jk)", false, KA, [&](int i, int j, int k, int ss, int t) {
        return cplx(delta(j, ss) * delta(k, t) * n * s.vd(i) * s.pd(j, k, i));
    });
    run("p*_j(e*_hi)", true, KE, [&](int j, int h, int i, int ss, int t) {
        return double(delta(h, ss) * delta(i, t) * s.m[j]) * s.qijk(h, i, j) / n;
    });
    run("p*_j(e_hi)", true, KA, [&](int j, int h, int i, int ss, int t) {
        cplx acc = 0;
        for (int k = 0; k < D; ++k) acc += s.pd(h, ss, k) * s.pd(i, t, k) * s.P(j, k);
        return double(s.m[j]) * acc;
    });
    run("p_i(e*_jk)", false, KE, [&](int i, int j, int k, int ss, int t) {
        cplx acc = 0;
        for (int r = 0; r < D; ++r) acc += s.qijk(j, ss, r) * s.qijk(k, t, r) * s.Q(i, r);
        return s.vd(i) * acc / (n * n);
    });
}

// ---- basic lemmas --------------------------------------------------------

void basic(Suite& S, double tol) {
    const auto& s = S.s();
    const double n = S.n();
    const int D = S.D();
    S.sweep("SUM(Ei o Ej o Ek)", 3, [&](const Idx& t) {
        cplx lhs = evaluate(build({}, {{"x", "y", W(KE, t[0])}, {"x", "y", W(KE, t[1])}, {"x", "y", W(KE, t[2])}}),
                            S.ctx())
                       .scalar();
        return std::make_pair(double(s.m[t[2]]) * s.qijk(t[0], t[1], s.conj_E[t[2]]) / n, lhs);
    });
    // Tensor identities: report the max-norm distance against zero expected.
    auto tensor_case = [&](const std::string& id, const std::function<double(const Idx&)>& dist) {
        double worst = 0;
        Idx wt;
        for (long f = 0; f < S.count(3); ++f) {
            Idx t = S.unflat(f, 3);
            double r = dist(t);
            if (r >= worst) {
                worst = r;
                wt = t;
            }
        }
        S.report().add_residual(id, worst, tol, "tuples=" + std::to_string(S.count(3)) + " worst=" + tuple_str(wt));
    };
    tensor_case("drumstick (Ei o Ej) Ek", [&](const Idx& t) {
        Tensor lhs = evaluate(
            build({"a", "b"}, {{"a", "x", W(KE, t[0])}, {"a", "x", W(KE, t[1])}, {"x", "b", W(KE, t[2])}}), S.ctx());
        Tensor rhs = Tensor::from_matrix(s.E[t[2]]).scaled(s.qijk(t[0], t[1], t[2]) / n);
        return tensor_distance(lhs, rhs) / std::max(1.0, rhs.max_abs());
    });
    tensor_case("hollow triangle (AjAk) o Ai", [&](const Idx& t) {
        Tensor lhs = evaluate(
            build({"a", "b"}, {{"a", "x", W(KA, t[1])}, {"x", "b", W(KA, t[2])}, {"a", "b", W(KA, t[0])}}), S.ctx());
        Tensor rhs = Tensor::from_matrix(s.A[t[0]]).scaled(s.pd(t[1], t[2], t[0]));
        return tensor_distance(lhs, rhs) / std::max(1.0, rhs.max_abs());
    });

    // Centre-out E-star diagonal: positive whenever every row product of Q is nonnegative.
    long lists = 0;
    double worst = 0;
    double min_diag = std::numeric_limits<double>::infinity();
    bool positive = true;
    for (int len = 2; len <= 3; ++len) {
        for (long f = 0; f < S.count(len); ++f) {
            Idx js = S.unflat(f, len);
            if (!std::is_sorted(js.begin(), js.end())) continue;
            bool ok = true;
            for (int i = 0; i < D && ok; ++i) {
                cplx prod = 1;
                for (int j : js) prod *= s.Q(i, j);
                ok = prod.real() >= -1e-12 && std::abs(prod.imag()) <= 1e-9;
            }
            if (!ok) continue;
            ++lists;
            std::vector<WeightRef> spokes;
            Diagram d;
            d.nodes.push_back("c");
            for (size_t t = 0; t < js.size(); ++t) {
                std::string r = "a" + std::to_string(t + 1);
                d.nodes.push_back(r);
                d.roots.push_back(r);
                d.edges.push_back({"c", r, WeightRef::E(js[t])});
            }
            Tensor st = evaluate(d, S.ctx());
            cplx formula = 0;
            for (int i = 0; i < D; ++i) {
                cplx prod = s.vd(i);
                for (int j : js) prod *= s.Q(i, j);
                formula += prod;
            }
            formula /= std::pow(n, static_cast<double>(len));
            for (int y = 0; y < s.n; ++y) {
                cplx diag = st.at(std::vector<int>(len, y));
                worst = std::max(worst, std::abs(diag - formula));
                min_diag = std::min(min_diag, diag.real());
                if (!(diag.real() > tol)) positive = false;
            }
        }
    }
    auto& c = S.report().add_residual("nonzero E-star diagonal", worst, tol,
                                      "lists=" + std::to_string(lists) + " min=" + std::to_string(round12(min_diag)));
    if (!positive) {
        c.pass = false;
        S.report().pass = false;
    }
}

}  // namespace

IdentityReport identity_suite(const AssociationScheme& s, const std::string& name, const SuiteOptions& opt) {
    if (name != "appendixB" && name != "terwilliger_grams" && name != "basic_lemmas")
        throw Error("unknown-suite", "'" + name + "'");
    if (!s.symmetric) throw Error("symmetric-only", "the suite formulas are stated for symmetric schemes");
    Suite S(s, opt, name);
    if (name == "appendixB") appendix_b(S);
    else if (name == "terwilliger_grams") terwilliger(S);
    else basic(S, opt.tol);
    return S.report();
}

}  // namespace scaf
