// Scaffold evaluation: brute-force state enumeration and variable elimination.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "scaf/engine.hpp"

namespace scaf {

namespace {

struct Overflow {};

// int64 that throws on overflow; the exact backend retries with BigInt.
struct Checked {
    int64_t v = 0;
    Checked() = default;
    Checked(int64_t x) : v(x) {}
    friend Checked operator+(Checked a, Checked b) {
        int64_t r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
        return r;
    }
    friend Checked operator*(Checked a, Checked b) {
        int64_t r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
        return r;
    }
    Checked& operator+=(Checked b) { return *this = *this + b; }
    bool is_zero() const { return v == 0; }
};

bool is_zero(const cplx& z) { return z == cplx(0); }
bool is_zero(const Checked& z) { return z.v == 0; }
bool is_zero(const BigInt& z) { return z.is_zero(); }

template <class T>
using Mat = std::vector<T>;  // n*n row-major

size_t ipow(size_t b, int e) {
    size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

int EvalContext::n() const {
    if (!scheme) throw Error("unknown-weight", "evaluation context has no scheme");
    return scheme->n;
}

void EvalContext::add_custom(const std::string& name, const CMatrix& m) {
    if (scheme && m.rows() != scheme->n) throw Error("shape", "custom matrix '" + name + "' has wrong side");
    custom[name] = CustomMatrix{false, IntMatrix(), m};
}

void EvalContext::add_custom(const std::string& name, const IntMatrix& m) {
    if (scheme && m.n() != scheme->n) throw Error("shape", "custom matrix '" + name + "' has wrong side");
    custom[name] = CustomMatrix{true, m, m.to_complex()};
}

ResolvedWeight resolve_weight(const WeightRef& w, const EvalContext& ctx) {
    const int n = ctx.n();
    const auto& s = *ctx.scheme;
    ResolvedWeight r;
    switch (w.kind) {
        case WeightRef::Kind::A:
            if (w.index < 0 || w.index > s.d) throw Error("unknown-weight", w.str() + " outside 0..d");
            r.exact = true;
            r.ints = s.A[w.index];
            break;
        case WeightRef::Kind::E:
            if (w.index < 0 || w.index > s.d) throw Error("unknown-weight", w.str() + " outside 0..d");
            r.values = s.E[w.index];
            break;
        case WeightRef::Kind::I:
            r.exact = true;
            r.ints = IntMatrix::identity(n);
            break;
        case WeightRef::Kind::J:
            r.exact = true;
            r.ints = IntMatrix::ones(n);
            break;
        case WeightRef::Kind::Custom: {
            auto it = ctx.custom.find(w.name);
            if (it == ctx.custom.end()) throw Error("unknown-weight", "no custom matrix '" + w.name + "'");
            r.exact = it->second.exact;
            if (r.exact) r.ints = it->second.ints;
            else r.values = it->second.values;
            break;
        }
        case WeightRef::Kind::Mul:
        case WeightRef::Kind::Had: {
            auto a = resolve_weight(w.args[0], ctx), b = resolve_weight(w.args[1], ctx);
            bool mul = w.kind == WeightRef::Kind::Mul;
            if (a.exact && b.exact) {
                r.exact = true;
                r.ints = mul ? mat_product(a.ints, b.ints) : mat_hadamard(a.ints, b.ints);
            } else {
                const CMatrix& x = a.exact ? CMatrix(a.ints.to_complex()) : a.values;
                const CMatrix& y = b.exact ? CMatrix(b.ints.to_complex()) : b.values;
                r.values = mul ? CMatrix(x * y) : CMatrix(x.cwiseProduct(y));
            }
            break;
        }
    }
    if (r.exact) {
        if (w.transpose) r.ints = r.ints.transpose();
        auto si = near_integer(w.scalar.real(), 0.0);
        if (w.scalar.imag() == 0.0 && si) {
            if (*si != 1) r.ints = r.ints.scaled(*si);
        } else {
            r.exact = false;
            r.values = r.ints.to_complex() * w.scalar;
        }
    } else {
        if (w.transpose) r.values.transposeInPlace();
        if (w.conjugate) r.values = r.values.conjugate().eval();
        r.values *= w.scalar;
    }
    if (r.exact) r.values = CMatrix();
    return r;
}

namespace {

// Diagram compiled to integer node ids with per-edge matrices.
template <class T>
struct Compiled {
    int n = 0;
    int nn = 0;                    // node count
    std::vector<int> fixed;        // vertex or -1
    std::vector<std::pair<int, int>> edges;
    std::vector<Mat<T>> w;
    std::vector<int> roots;
};

template <class T>
T conv(const BigInt& x);
template <>
cplx conv<cplx>(const BigInt& x) { return {x.convert_to<double>(), 0.0}; }
template <>
BigInt conv<BigInt>(const BigInt& x) { return x; }
template <>
Checked conv<Checked>(const BigInt& x) {
    if (x > std::numeric_limits<int64_t>::max() || x < std::numeric_limits<int64_t>::min()) throw Overflow{};
    return Checked(x.convert_to<int64_t>());
}

template <class T>
Compiled<T> compile(const Diagram& d, const std::vector<ResolvedWeight>& rw, int n) {
    Compiled<T> c;
    c.n = n;
    c.nn = static_cast<int>(d.nodes.size());
    auto id = [&](const std::string& s) {
        return static_cast<int>(std::find(d.nodes.begin(), d.nodes.end(), s) - d.nodes.begin());
    };
    c.fixed.assign(c.nn, -1);
    for (const auto& [name, v] : d.fixed) {
        if (v < 0 || v >= n) throw Error("range", "fixed vertex " + std::to_string(v) + " for node " + name);
        c.fixed[id(name)] = v;
    }
    for (size_t e = 0; e < d.edges.size(); ++e) {
        c.edges.emplace_back(id(d.edges[e].tail), id(d.edges[e].head));
        Mat<T> m(static_cast<size_t>(n) * n);
        if constexpr (std::is_same_v<T, cplx>) {
            if (rw[e].exact) {
                for (size_t k = 0; k < m.size(); ++k) m[k] = conv<cplx>(rw[e].ints.data()[k]);
            } else {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * n + j] = rw[e].values(i, j);
            }
        } else {
            for (size_t k = 0; k < m.size(); ++k) m[k] = conv<T>(rw[e].ints.data()[k]);
        }
        c.w.push_back(std::move(m));
    }
    for (const auto& r : d.roots) c.roots.push_back(id(r));
    return c;
}

// Neumaier summation: brute force adds up to n^k leaf terms into one cell.
void accumulate(cplx& sum, cplx& comp, const cplx& x) {
    auto step = [](double& s, double& c, double v) {
        double t = s + v;
        c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
        s = t;
    };
    double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
    step(sr, cr, x.real());
    step(si, ci, x.imag());
    sum = {sr, si};
    comp = {cr, ci};
}

template <class T>
void accumulate(T& sum, T&, const T& x) {
    sum += x;
}

template <class T>
std::vector<T> brute_core(const Compiled<T>& c) {
    const int n = c.n;
    std::vector<int> free_nodes;
    for (int v = 0; v < c.nn; ++v)
        if (c.fixed[v] < 0) free_nodes.push_back(v);
    std::vector<int> level(c.nn, -1);
    for (size_t k = 0; k < free_nodes.size(); ++k) level[free_nodes[k]] = static_cast<int>(k);
    const int L = static_cast<int>(free_nodes.size());
    // edges bucketed by the level at which both endpoints are known; -1 bucket is constant
    std::vector<std::vector<int>> bucket(L + 1);
    for (size_t e = 0; e < c.edges.size(); ++e) {
        int lv = std::max(level[c.edges[e].first], level[c.edges[e].second]);
        bucket[lv + 1].push_back(static_cast<int>(e));
    }
    std::vector<int> assign(c.fixed);
    std::vector<T> out(ipow(n, static_cast<int>(c.roots.size())), T(0));
    std::vector<T> comp(out.size(), T(0));
    T base = T(1);
    for (int e : bucket[0]) {
        const auto& [a, b] = c.edges[e];
        base = base * c.w[e][static_cast<size_t>(assign[a]) * n + assign[b]];
    }
    if (is_zero(base)) return out;
    std::vector<T> partial(L + 1);
    partial[0] = base;
    auto emit = [&](const T& val) {
        size_t f = 0;
        for (int r : c.roots) f = f * n + assign[r];
        accumulate(out[f], comp[f], val);
    };
    if (L == 0) {
        emit(base);
        return out;
    }
    // iterative depth-first odometer
    int lv = 0;
    assign[free_nodes[0]] = -1;
    while (lv >= 0) {
        int v = free_nodes[lv];
        if (++assign[v] >= n) {
            --lv;
            continue;
        }
        T val = partial[lv];
        for (int e : bucket[lv + 1]) {
            const auto& [a, b] = c.edges[e];
            val = val * c.w[e][static_cast<size_t>(assign[a]) * n + assign[b]];
            if (is_zero(val)) break;
        }
        if (is_zero(val)) continue;
        if (lv + 1 == L) {
            emit(val);
        } else {
            partial[lv + 1] = val;
            ++lv;
            assign[free_nodes[lv]] = -1;
        }
    }
    for (size_t f = 0; f < out.size(); ++f) out[f] += comp[f];
    return out;
}

template <class T>
struct Factor {
    std::vector<int> vars;
    std::vector<T> vals;
};

template <class T>
std::vector<T> elim_core(const Compiled<T>& c, const std::vector<int>& order) {
    const int n = c.n;
    auto dom = [&](int v) { return c.fixed[v] >= 0 ? 1 : n; };
    auto vert = [&](int v, int x) { return c.fixed[v] >= 0 ? c.fixed[v] : x; };
    std::vector<Factor<T>> factors;
    T scalar = T(1);
    for (size_t e = 0; e < c.edges.size(); ++e) {
        const auto& [a, b] = c.edges[e];
        Factor<T> f;
        if (a == b) {
            f.vars = {a};
            for (int x = 0; x < dom(a); ++x) {
                int u = vert(a, x);
                f.vals.push_back(c.w[e][static_cast<size_t>(u) * n + u]);
            }
        } else {
            f.vars = {a, b};
            for (int x = 0; x < dom(a); ++x)
                for (int y = 0; y < dom(b); ++y)
                    f.vals.push_back(c.w[e][static_cast<size_t>(vert(a, x)) * n + vert(b, y)]);
        }
        factors.push_back(std::move(f));
    }

    // Multiply the given factors over the union of their variables, optionally summing out `elim`.
    auto combine = [&](const std::vector<Factor<T>>& fs, const std::vector<int>& keep, int elim) {
        std::vector<int> all = keep;
        if (elim >= 0) all.push_back(elim);
        const int m = static_cast<int>(all.size());
        std::vector<int> dims(m);
        for (int k = 0; k < m; ++k) dims[k] = dom(all[k]);
        // stride of each factor in terms of `all`
        std::vector<std::vector<size_t>> strides(fs.size(), std::vector<size_t>(m, 0));
        for (size_t f = 0; f < fs.size(); ++f) {
            size_t s = 1;
            for (int k = static_cast<int>(fs[f].vars.size()) - 1; k >= 0; --k) {
                int pos = static_cast<int>(std::find(all.begin(), all.end(), fs[f].vars[k]) - all.begin());
                strides[f][pos] += s;
                s *= dom(fs[f].vars[k]);
            }
        }
        size_t out_size = 1;
        for (size_t k = 0; k < keep.size(); ++k) out_size *= dims[k];
        Factor<T> res;
        res.vars = keep;
        res.vals.assign(out_size, T(0));
        std::vector<int> idx(m, 0);
        std::vector<size_t> off(fs.size(), 0);
        const int inner = elim >= 0 ? dims[m - 1] : 1;
        size_t out_pos = 0;
        while (true) {
            T acc = T(0);
            for (int z = 0; z < inner; ++z) {
                T val = T(1);
                for (size_t f = 0; f < fs.size(); ++f) {
                    size_t o = off[f] + (elim >= 0 ? z * strides[f][m - 1] : 0);
                    val = val * fs[f].vals[o];
                    if (is_zero(val)) break;
                }
                if (!is_zero(val)) acc += val;
            }
            res.vals[out_pos] = acc;
            // advance the kept-variable odometer
            int k = static_cast<int>(keep.size()) - 1;
            for (; k >= 0; --k) {
                for (size_t f = 0; f < fs.size(); ++f) off[f] += strides[f][k];
                if (++idx[k] < dims[k]) break;
                for (size_t f = 0; f < fs.size(); ++f) off[f] -= strides[f][k] * dims[k];
                idx[k] = 0;
            }
            if (k < 0) break;
            ++out_pos;
        }
        return res;
    };

    for (int v : order) {
        std::vector<Factor<T>> touch, rest;
        for (auto& f : factors)
            (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end() ? touch : rest).push_back(std::move(f));
        if (touch.empty()) {
            scalar = scalar * T(dom(v));
            factors = std::move(rest);
            continue;
        }
        std::vector<int> keep;
        for (const auto& f : touch)
            for (int u : f.vars)
                if (u != v && std::find(keep.begin(), keep.end(), u) == keep.end()) keep.push_back(u);
        std::sort(keep.begin(), keep.end());
        rest.push_back(combine(touch, keep, v));
        factors = std::move(rest);
    }

    std::vector<int> rvars;
    for (int r : c.roots)
        if (std::find(rvars.begin(), rvars.end(), r) == rvars.end()) rvars.push_back(r);
    std::sort(rvars.begin(), rvars.end());
    Factor<T> fin = combine(factors, rvars, -1);

    const int order_out = static_cast<int>(c.roots.size());
    std::vector<T> out(ipow(n, order_out), T(0));
    std::vector<int> pos(c.roots.size());
    for (size_t k = 0; k < c.roots.size(); ++k)
        pos[k] = static_cast<int>(std::find(rvars.begin(), rvars.end(), c.roots[k]) - rvars.begin());
    std::vector<int> idx(rvars.size(), 0);
    for (size_t f = 0; f < fin.vals.size(); ++f) {
        size_t rem = f;
        for (int k = static_cast<int>(rvars.size()) - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(rem % dom(rvars[k]));
            rem /= dom(rvars[k]);
        }
        size_t o = 0;
        for (size_t k = 0; k < c.roots.size(); ++k) o = o * n + vert(c.roots[k], idx[pos[k]]);
        out[o] = fin.vals[f] * scalar;
    }
    return out;
}

std::vector<int> order_ids(const Diagram& d, const EliminationPlan& plan) {
    std::vector<int> ids;
    for (const auto& s : plan.order)
        ids.push_back(static_cast<int>(std::find(d.nodes.begin(), d.nodes.end(), s) - d.nodes.begin()));
    return ids;
}

void check_diagram(const Diagram& d) {
    for (const auto& e : d.edges)
        if (!d.has_node(e.tail) || !d.has_node(e.head)) throw Error("undeclared-node", "edge endpoint");
    for (const auto& r : d.roots)
        if (!d.has_node(r)) throw Error("undeclared-node", "root '" + r + "'");
    for (const auto& [id, v] : d.fixed)
        if (!d.has_node(id)) throw Error("undeclared-node", "fixed '" + id + "'");
}

Tensor run(const Diagram& d, const EvalContext& ctx, bool brute) {
    check_diagram(d);
    const int n = ctx.n();
    std::vector<ResolvedWeight> rw;
    bool exact = true;
    for (const auto& e : d.edges) {
        rw.push_back(resolve_weight(e.w, ctx));
        exact = exact && rw.back().exact;
    }
    std::vector<int> order;
    if (!brute) order = order_ids(d, elimination_order(d, n));
    Tensor t = Tensor::zeros(n, d.order());
    if (exact) {
        std::vector<BigInt> vals;
        try {
            auto c = compile<Checked>(d, rw, n);
            auto r = brute ? brute_core(c) : elim_core(c, order);
            vals.reserve(r.size());
            for (const auto& x : r) vals.emplace_back(x.v);
        } catch (const Overflow&) {
            auto c = compile<BigInt>(d, rw, n);
            vals = brute ? brute_core(c) : elim_core(c, order);
        }
        t.exact = true;
        for (size_t k = 0; k < vals.size(); ++k) t.data[k] = cplx(vals[k].convert_to<double>(), 0.0);
        t.exact_data = std::move(vals);
    } else {
        auto c = compile<cplx>(d, rw, n);
        t.data = brute ? brute_core(c) : elim_core(c, order);
    }
    return t;
}

double brute_cost(const Diagram& d, int n) {
    int free_nodes = static_cast<int>(d.nodes.size());
    for (const auto& [id, v] : d.fixed) free_nodes -= d.has_node(id);
    return std::pow(static_cast<double>(n), free_nodes) * std::max<size_t>(1, d.edges.size());
}

}  // namespace

EliminationPlan elimination_order(const Diagram& d, int n) {
    EliminationPlan plan;
    std::vector<std::string> ids = d.nodes;
    std::map<std::string, std::set<std::string>> adj;
    for (const auto& v : ids) adj[v];
    for (const auto& e : d.edges)
        if (e.tail != e.head) {
            adj[e.tail].insert(e.head);
            adj[e.head].insert(e.tail);
        }
    auto dom = [&](const std::string& v) { return d.fixed.count(v) ? 1.0 : static_cast<double>(n); };
    std::set<std::string> pending;
    for (const auto& v : ids)
        if (!d.is_root(v)) pending.insert(v);
    while (!pending.empty()) {
        std::string best;
        long best_fill = -1;
        for (const auto& v : pending) {  // std::set iterates in id order, so ties go to the smaller id
            const auto& nb = adj[v];
            long fill = 0;
            for (auto a = nb.begin(); a != nb.end(); ++a)
                for (auto b = std::next(a); b != nb.end(); ++b)
                    if (!adj[*a].count(*b)) ++fill;
            if (best_fill < 0 || fill < best_fill) {
                best_fill = fill;
                best = v;
            }
        }
        const auto nb = adj[best];
        double cost = dom(best);
        for (const auto& u : nb) cost *= dom(u);
        plan.cost += cost;
        plan.max_bag = std::max(plan.max_bag, static_cast<int>(nb.size()) + 1);
        plan.max_factor = std::max(plan.max_factor, static_cast<int>(nb.size()));
        for (auto a = nb.begin(); a != nb.end(); ++a) {
            adj[*a].erase(best);
            for (auto b = std::next(a); b != nb.end(); ++b) {
                adj[*a].insert(*b);
                adj[*b].insert(*a);
            }
        }
        adj.erase(best);
        pending.erase(best);
        plan.order.push_back(best);
    }
    double fin = 1;
    std::set<std::string> rs(d.roots.begin(), d.roots.end());
    for (const auto& r : rs) fin *= dom(r);
    plan.cost += fin;
    return plan;
}

Tensor evaluate_brute(const Diagram& d, const EvalContext& ctx) { return run(d, ctx, true); }

Tensor evaluate_eliminate(const Diagram& d, const EvalContext& ctx) { return run(d, ctx, false); }

Tensor evaluate(const Diagram& d, const EvalContext& ctx) {
    const int n = ctx.n();
    double bc = brute_cost(d, n);
    switch (ctx.method) {
        case Method::Brute: {
            int free_nodes = static_cast<int>(d.nodes.size() - d.fixed.size());
            if (free_nodes > ctx.node_cap)
                throw Error("too-large", std::to_string(free_nodes) + " free nodes exceed the brute-force cap of " +
                                             std::to_string(ctx.node_cap));
            if (bc > kAutoBruteLimit) throw Error("too-large", "brute-force cost exceeds 1e9");
            return evaluate_brute(d, ctx);
        }
        case Method::Eliminate:
            return evaluate_eliminate(d, ctx);
        case Method::Auto:
            break;
    }
    if (bc > kAutoBruteLimit) return evaluate_eliminate(d, ctx);
    double ec = elimination_order(d, n).cost * std::max<size_t>(1, d.edges.size());
    return ec < bc ? evaluate_eliminate(d, ctx) : evaluate_brute(d, ctx);
}

Tensor evaluate(const DiagramCombo& combo, const EvalContext& ctx) {
    if (combo.terms.empty()) throw Error("arity", "empty combination has no order; evaluate against a reference");
    const int ord = combo.terms[0].diag.order();
    Tensor acc = Tensor::zeros(ctx.n(), ord);
    acc.exact = true;
    acc.exact_data.assign(acc.data.size(), BigInt(0));
    for (const auto& t : combo.terms) {
        if (t.diag.order() != ord) throw Error("arity", "terms of different order");
        acc = acc + evaluate(t.diag, ctx).scaled(t.coef);
    }
    return acc;
}

}  // namespace scaf
