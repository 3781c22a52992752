#include "scaf/rewrite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

namespace scaf {

namespace {

using json = nlohmann::json;

const char* kNames[] = {"SR0", "SR0'", "SR1", "SR1'", "SR2", "SR2'", "SR3", "SR3'", "SR4",
                        "SR4'", "SR5", "SR6", "SR7", "SR8", "SR9", "SR10", "SR11"};

[[noreturn]] void precond(Rule r, const std::string& detail) {
    throw Error("precondition", rule_name(r) + ", " + detail);
}

[[noreturn]] void locus_error(Rule r, const std::string& detail) { throw Error("locus", rule_name(r) + ": " + detail); }

std::string fmt(double x) {
    std::ostringstream o;
    o << round12(x);
    return o.str();
}

std::string fmt(cplx z) {
    if (std::abs(z.imag()) < 1e-12) return fmt(z.real());
    return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")";
}

const AssociationScheme& need_scheme(Rule r, const EvalContext& ctx) {
    if (!ctx.scheme) throw Error("no-scheme", rule_name(r) + " needs an association scheme");
    return *ctx.scheme;
}

const Edge& edge_at(Rule r, const Diagram& d, int e) {
    if (e < 0 || e >= static_cast<int>(d.edges.size())) locus_error(r, "no edge " + std::to_string(e));
    return d.edges[e];
}

void need_node(Rule r, const Diagram& d, const std::string& x) {
    if (!d.has_node(x)) locus_error(r, "no node '" + x + "'");
}

void need_hollow(Rule r, const Diagram& d, const std::string& x) {
    need_node(r, d, x);
    if (d.is_root(x)) precond(r, "node '" + x + "' is a root");
    if (d.fixed.count(x)) precond(r, "node '" + x + "' is fixed");
}

std::string other_end(const Edge& e, const std::string& x) { return e.tail == x ? e.head : e.tail; }

bool touches(const Edge& e, const std::string& x) { return e.tail == x || e.head == x; }

// Basis index of an edge read in a requested direction: reversing the edge,
// transposing, and conjugating an E weight each swap in the conjugate index.
struct Basis {
    int index;
    cplx scalar;
};

Basis basis(Rule r, const AssociationScheme& s, const WeightRef& w, WeightRef::Kind kind, bool reversed) {
    if (w.kind != kind || !w.args.empty())
        precond(r, "weight " + w.str() + " is not " + (kind == WeightRef::Kind::A ? "an A" : "an E") + " basis matrix");
    if (w.index < 0 || w.index > s.d) precond(r, "index out of range in " + w.str());
    bool flip = reversed != w.transpose;
    if (kind == WeightRef::Kind::E && w.conjugate) flip = !flip;
    int i = w.index;
    if (flip) i = kind == WeightRef::Kind::A ? s.conj_A[i] : s.conj_E[i];
    return {i, w.scalar};
}

// e read as from -> to
Basis basis_dir(Rule r, const AssociationScheme& s, const Edge& e, WeightRef::Kind kind, const std::string& from) {
    return basis(r, s, e.w, kind, e.tail != from);
}

DiagramCombo one(Diagram d, cplx c = 1.0) { return DiagramCombo::single(std::move(d), c); }

Diagram parse_param(Rule r, const json& p, const char* key) {
    if (!p.contains(key) || !p[key].is_string()) locus_error(r, std::string("missing parameter '") + key + "'");
    return parse_diagram(p[key].get<std::string>());
}

cplx parse_coef(const json& c) {
    if (c.is_number()) return c.get<double>();
    if (c.is_array() && c.size() == 2) return {c[0].get<double>(), c[1].get<double>()};
    if (c.is_object()) return {c.value("re", 0.0), c.value("im", 0.0)};
    if (c.is_string()) return parse_weight(c.get<std::string>() + "*I").scalar;
    throw Error("syntax", "bad coefficient " + c.dump());
}

CMatrix dense(const WeightRef& w, const EvalContext& ctx) {
    auto r = resolve_weight(w, ctx);
    return r.exact ? r.ints.to_complex() : r.values;
}

double mat_scale(const CMatrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

// SR0 -------------------------------------------------------------------

DiagramCombo sr0(const Diagram& d, const RewriteStep& st) {
    const Rule r = Rule::SR0;
    std::string mode = st.params.value("mode", st.locus.nodes.empty() ? "contract" : "split");
    if (mode == "contract") {
        if (st.locus.edges.size() != 1) locus_error(r, "contract takes one edge");
        const Edge e = edge_at(r, d, st.locus.edges[0]);
        if (e.w.kind != WeightRef::Kind::I) precond(r, "edge weight " + e.w.str() + " is not I");
        cplx c = e.w.scalar;
        if (e.w.conjugate) c = std::conj(c);
        Diagram g = d;
        g.remove_edges({st.locus.edges[0]});
        if (e.tail == e.head) return one(g, c);
        std::string keep = e.tail, drop = e.head;
        if (d.is_root(drop) && !d.is_root(keep)) std::swap(keep, drop);
        auto fk = d.fixed.find(keep), fd = d.fixed.find(drop);
        if (fk != d.fixed.end() && fd != d.fixed.end()) {
            if (fk->second != fd->second) return {};
            g.fixed.erase(drop);
        }
        g.nodes.erase(std::remove(g.nodes.begin(), g.nodes.end(), drop), g.nodes.end());
        g.rename(drop, keep);
        return one(g, c);
    }
    if (mode == "split") {
        if (st.locus.nodes.size() != 1) locus_error(r, "split takes one node");
        const std::string u = st.locus.nodes[0];
        need_node(r, d, u);
        Diagram g = d;
        std::string v = st.params.value("new_id", g.fresh_id(u + "s"));
        if (g.has_node(v)) locus_error(r, "node '" + v + "' already exists");
        for (int e : st.locus.edges) {
            const Edge& ed = edge_at(r, d, e);
            if (!touches(ed, u)) locus_error(r, "edge " + std::to_string(e) + " does not touch '" + u + "'");
            if (g.edges[e].tail == u) g.edges[e].tail = v;
            if (g.edges[e].head == u) g.edges[e].head = v;
        }
        g.nodes.push_back(v);
        g.edges.push_back({u, v, WeightRef::Id()});
        return one(g);
    }
    locus_error(r, "unknown mode '" + mode + "'");
}

DiagramCombo sr0p(const Diagram& d, const RewriteStep& st) {
    const Rule r = Rule::SR0p;
    std::string mode = st.params.value("mode", st.locus.edges.empty() ? "insert" : "delete");
    Diagram g = d;
    if (mode == "insert") {
        std::string a = st.params.value("tail", ""), b = st.params.value("head", "");
        if (a.empty() && st.locus.nodes.size() == 2) a = st.locus.nodes[0], b = st.locus.nodes[1];
        need_node(r, d, a);
        need_node(r, d, b);
        g.edges.push_back({a, b, WeightRef::Ones()});
        return one(g);
    }
    if (mode == "delete") {
        if (st.locus.edges.size() != 1) locus_error(r, "delete takes one edge");
        const Edge& e = edge_at(r, d, st.locus.edges[0]);
        if (e.w.kind != WeightRef::Kind::J) precond(r, "edge weight " + e.w.str() + " is not J");
        cplx c = e.w.conjugate ? std::conj(e.w.scalar) : e.w.scalar;
        g.remove_edges({st.locus.edges[0]});
        return one(g, c);
    }
    locus_error(r, "unknown mode '" + mode + "'");
}

// SR1, SR1' -------------------------------------------------------------

DiagramCombo sr1(const Diagram& d, const RewriteStep& st) {
    const Rule r = Rule::SR1;
    if (st.locus.nodes.size() != 1) locus_error(r, "takes one node");
    const std::string m = st.locus.nodes[0];
    need_hollow(r, d, m);
    auto inc = d.incident(m);
    if (inc.size() != 2) precond(r, "node '" + m + "' has degree " + std::to_string(inc.size()) + ", not 2");
    int ein = -1, eout = -1;
    for (int e : inc) {
        const Edge& ed = d.edges[e];
        if (ed.tail == m && ed.head == m) precond(r, "loop at '" + m + "'");
        if (ed.head == m && ein < 0)
            ein = e;
        else if (ed.tail == m && eout < 0)
            eout = e;
    }
    if (ein < 0 || eout < 0) precond(r, "'" + m + "' needs one edge in and one edge out");
    Diagram g = d;
    const Edge a = d.edges[ein], b = d.edges[eout];
    g.remove_node(m);
    g.edges.push_back({a.tail, b.head, WeightRef::mul(a.w, b.w)});
    return one(g);
}

DiagramCombo sr1p(const Diagram& d, const RewriteStep& st) {
    const Rule r = Rule::SR1p;
    if (st.locus.edges.size() != 2 || st.locus.edges[0] == st.locus.edges[1]) locus_error(r, "takes two edges");
    const Edge a = edge_at(r, d, st.locus.edges[0]), b = edge_at(r, d, st.locus.edges[1]);
    WeightRef w;
    if (a.tail == b.tail && a.head == b.head)
        w = WeightRef::had(a.w, b.w);
    else if (a.tail == b.head && a.head == b.tail)
        w = WeightRef::had(a.w, b.w.transposed());
    else
        precond(r, "edges are not parallel");
    Diagram g = d;
    g.remove_edges(st.locus.edges);
    g.edges.push_back({a.tail, a.head, w});
    return one(g);
}

// SR2, SR2' -------------------------------------------------------------

DiagramCombo sr2(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR2;
    const auto& s = need_scheme(r, ctx);
    if (st.locus.edges.size() != 3) locus_error(r, "takes three edges");
    const Edge e1 = edge_at(r, d, st.locus.edges[0]), e2 = edge_at(r, d, st.locus.edges[1]),
               e3 = edge_at(r, d, st.locus.edges[2]);
    std::string b;
    for (const auto& x : {e1.tail, e1.head})
        if (touches(e2, x)) b = x;
    if (b.empty()) precond(r, "edges do not form a triangle");
    const std::string a = other_end(e1, b), c = other_end(e2, b);
    if (a == b || b == c || a == c) precond(r, "triangle nodes are not distinct");
    if (!((e3.tail == a && e3.head == c) || (e3.tail == c && e3.head == a))) precond(r, "edges do not form a triangle");
    auto i = basis_dir(r, s, e1, WeightRef::Kind::A, a).index;
    auto j = basis_dir(r, s, e2, WeightRef::Kind::A, b).index;
    auto k = basis_dir(r, s, e3, WeightRef::Kind::A, a).index;
    if (!s.p_zero(i, j, k))
        precond(r, "p_" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k) + " = " + s.pijk(i, j, k).str() +
                       " is not zero");
    return {};
}

DiagramCombo sr2p(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR2p;
    const auto& s = need_scheme(r, ctx);
    if (st.locus.nodes.size() != 1) locus_error(r, "takes one node");
    const std::string x = st.locus.nodes[0];
    need_hollow(r, d, x);
    auto inc = d.incident(x);
    if (inc.size() != 3) precond(r, "node '" + x + "' has degree " + std::to_string(inc.size()) + ", not 3");
    int idx[3];
    for (int t = 0; t < 3; ++t) {
        const Edge& e = d.edges[inc[t]];
        if (e.tail == e.head) precond(r, "loop at '" + x + "'");
        idx[t] = basis_dir(r, s, e, WeightRef::Kind::E, x).index;
    }
    // all-out star vanishes iff q_{i1 i2}^{conj i3} = 0
    int k = s.conj_E[idx[2]];
    if (!s.q_zero(idx[0], idx[1], k))
        precond(r, "q_" + std::to_string(idx[0]) + std::to_string(idx[1]) + "^" + std::to_string(k) + " = " +
                       fmt(s.qijk(idx[0], idx[1], k)) + " is not zero");
    return {};
}

// SR3, SR3' -------------------------------------------------------------

DiagramCombo sr3(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR3;
    const auto& s = need_scheme(r, ctx);
    if (st.locus.nodes.size() != 1) locus_error(r, "takes one node");
    const std::string x = st.locus.nodes[0];
    need_hollow(r, d, x);
    auto inc = d.incident(x);
    if (inc.size() != 3) precond(r, "node '" + x + "' has degree " + std::to_string(inc.size()) + ", not 3");
    for (int e : inc)
        if (d.edges[e].tail == d.edges[e].head) precond(r, "loop at '" + x + "'");
    std::vector<int> ord;
    if (st.locus.edges.size() == 3) {
        ord = st.locus.edges;
        std::vector<int> a = ord, b = inc;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) locus_error(r, "listed edges are not the edges at '" + x + "'");
    } else {
        for (int t = 0; t < 3 && ord.empty(); ++t) {
            int p1 = inc[(t + 1) % 3], p2 = inc[(t + 2) % 3];
            if (other_end(d.edges[p1], x) == other_end(d.edges[p2], x) &&
                other_end(d.edges[inc[t]], x) != other_end(d.edges[p1], x))
                ord = {std::min(p1, p2), std::max(p1, p2), inc[t]};
        }
        if (ord.empty()) precond(r, "no pinched pair at '" + x + "'");
    }
    const Edge e1 = d.edges[ord[0]], e2 = d.edges[ord[1]], e3 = d.edges[ord[2]];
    const std::string a = other_end(e1, x), c = other_end(e3, x);
    if (other_end(e2, x) != a) precond(r, "first two edges do not share an endpoint");
    auto b1 = basis_dir(r, s, e1, WeightRef::Kind::E, a);
    auto b2 = basis_dir(r, s, e2, WeightRef::Kind::E, a);
    auto b3 = basis_dir(r, s, e3, WeightRef::Kind::E, x);
    cplx coef = s.qijk(b1.index, b2.index, b3.index) / static_cast<double>(s.n) * b1.scalar * b2.scalar * b3.scalar;
    Diagram g = d;
    g.remove_node(x);
    g.edges.push_back({a, c, WeightRef::E(b3.index)});
    if (s.q_zero(b1.index, b2.index, b3.index)) return {};
    return one(g, coef);
}

DiagramCombo sr3p(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR3p;
    const auto& s = need_scheme(r, ctx);
    if (st.locus.edges.size() != 3) locus_error(r, "takes three edges");
    const Edge e1 = edge_at(r, d, st.locus.edges[0]), e2 = edge_at(r, d, st.locus.edges[1]),
               e3 = edge_at(r, d, st.locus.edges[2]);
    std::string m;
    for (const auto& x : {e1.tail, e1.head})
        if (touches(e2, x) && !touches(e3, x)) m = x;
    if (m.empty()) precond(r, "edges do not form a triangle");
    need_hollow(r, d, m);
    if (d.incident(m).size() != 2) precond(r, "node '" + m + "' has other edges");
    const std::string a = other_end(e1, m), b = other_end(e2, m);
    if (!((e3.tail == a && e3.head == b) || (e3.tail == b && e3.head == a))) precond(r, "edges do not form a triangle");
    auto bi = basis_dir(r, s, e1, WeightRef::Kind::A, a);
    auto bj = basis_dir(r, s, e2, WeightRef::Kind::A, m);
    auto bk = basis_dir(r, s, e3, WeightRef::Kind::A, a);
    if (s.p_zero(bi.index, bj.index, bk.index)) return {};
    cplx coef = s.pd(bi.index, bj.index, bk.index) * bi.scalar * bj.scalar;
    Diagram g = d;
    g.remove_node(m);
    return one(g, coef);
}

// SR4, SR4' -------------------------------------------------------------

DiagramCombo sr4(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR4;
    const auto& s = need_scheme(r, ctx);
    if (st.locus.edges.size() != 4) locus_error(r, "takes four edges");
    if (!st.params.contains("h")) locus_error(r, "missing parameter 'h'");
    const int h = st.params["h"].get<int>();
    if (h < 0 || h > s.d) locus_error(r, "h out of range");
    std::vector<Edge> e;
    for (int i : st.locus.edges) e.push_back(edge_at(r, d, i));
    std::string x = st.locus.nodes.empty() ? "" : st.locus.nodes[0];
    if (x.empty()) {
        for (const auto& c : {e[0].tail, e[0].head})
            if (touches(e[1], c) && touches(e[2], c) && touches(e[3], c)) x = c;
        if (x.empty()) precond(r, "edges do not share a node");
    }
    need_hollow(r, d, x);
    for (const auto& ed : e) {
        if (!touches(ed, x)) precond(r, "edge does not touch '" + x + "'");
        if (ed.tail == ed.head) precond(r, "loop at '" + x + "'");
    }
    if (d.incident(x).size() != 4) precond(r, "node '" + x + "' has degree other than 4");
    // j, k read into x; l, m read out of x
    const int j = basis_dir(r, s, e[0], WeightRef::Kind::E, other_end(e[0], x)).index;
    const int k = basis_dir(r, s, e[1], WeightRef::Kind::E, other_end(e[1], x)).index;
    const Basis bl = basis_dir(r, s, e[2], WeightRef::Kind::E, x);
    const Basis bm = basis_dir(r, s, e[3], WeightRef::Kind::E, x);
    for (int f = 0; f <= s.d; ++f)
        if (f != h && !s.q_zero(j, k, f) && !s.q_zero(bl.index, bm.index, f))
            precond(r, "q_" + std::to_string(j) + std::to_string(k) + "^" + std::to_string(f) + " q_" +
                           std::to_string(bl.index) + std::to_string(bm.index) + "^" + std::to_string(f) +
                           " is not zero");
    const std::string c1 = other_end(e[2], x), c2 = other_end(e[3], x);
    std::string form = st.params.value("form", c1 == c2 ? "I" : "II");
    Diagram g = d;
    if (form == "I") {
        if (c1 != c2) precond(r, "form I needs parallel outer edges");
        g.remove_edges({st.locus.edges[2], st.locus.edges[3]});
        if (s.q_zero(bl.index, bm.index, h)) return {};
        g.edges.push_back({x, c1, WeightRef::E(h)});
        return one(g, s.qijk(bl.index, bm.index, h) / static_cast<double>(s.n) * bl.scalar * bm.scalar);
    }
    if (form != "II") locus_error(r, "unknown form '" + form + "'");
    std::string x2 = st.params.value("new_id", g.fresh_id(x + "i"));
    if (g.has_node(x2)) locus_error(r, "node '" + x2 + "' already exists");
    g.nodes.push_back(x2);
    for (int t = 2; t < 4; ++t) {
        Edge& ed = g.edges[st.locus.edges[t]];
        if (ed.tail == x) ed.tail = x2;
        if (ed.head == x) ed.head = x2;
    }
    g.edges.push_back({x, x2, WeightRef::E(h)});
    return one(g);
}

DiagramCombo sr4p(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR4p;
    const auto& s = need_scheme(r, ctx);
    if (st.locus.edges.size() != 4) locus_error(r, "takes four edges");
    if (!st.params.contains("l")) locus_error(r, "missing parameter 'l'");
    const int l = st.params["l"].get<int>();
    if (l < 0 || l > s.d) locus_error(r, "l out of range");
    std::vector<Edge> e;
    for (int i : st.locus.edges) e.push_back(edge_at(r, d, i));
    // e = [S-W, W-N, S-E, E-N]
    std::string S, N;
    for (const auto& c : {e[0].tail, e[0].head})
        if (touches(e[2], c)) S = c;
    for (const auto& c : {e[1].tail, e[1].head})
        if (touches(e[3], c)) N = c;
    if (S.empty() || N.empty()) precond(r, "edges do not form a quadrilateral");
    const std::string W = other_end(e[0], S), Ee = other_end(e[2], S);
    if (other_end(e[1], N) != W || other_end(e[3], N) != Ee) precond(r, "edges do not form a quadrilateral");
    const Basis bh = basis_dir(r, s, e[0], WeightRef::Kind::A, S);
    const Basis bi = basis_dir(r, s, e[1], WeightRef::Kind::A, W);
    const Basis bj = basis_dir(r, s, e[2], WeightRef::Kind::A, S);
    const Basis bk = basis_dir(r, s, e[3], WeightRef::Kind::A, Ee);
    for (int f = 0; f <= s.d; ++f)
        if (f != l && !s.p_zero(bh.index, bi.index, f) && !s.p_zero(bj.index, bk.index, f))
            precond(r, "p_" + std::to_string(bh.index) + std::to_string(bi.index) + "^" + std::to_string(f) + " p_" +
                           std::to_string(bj.index) + std::to_string(bk.index) + "^" + std::to_string(f) +
                           " is not zero");
    bool hollow_e = !d.is_root(Ee) && !d.fixed.count(Ee) && d.incident(Ee).size() == 2 && Ee != S && Ee != N;
    std::string form = st.params.value("form", hollow_e ? "I" : "II");
    Diagram g = d;
    if (form == "I") {
        need_hollow(r, d, Ee);
        if (d.incident(Ee).size() != 2) precond(r, "node '" + Ee + "' has other edges");
        if (s.p_zero(bj.index, bk.index, l)) return {};
        g.remove_node(Ee);
        g.edges.push_back({S, N, WeightRef::A(l)});
        return one(g, s.pd(bj.index, bk.index, l) * bj.scalar * bk.scalar);
    }
    if (form != "II") locus_error(r, "unknown form '" + form + "'");
    g.edges.push_back({S, N, WeightRef::A(l)});
    return one(g);
}

// SR5, SR10, SR11: substitute t2 for t1 inside a composite ----------------

void check_substitution(Rule r, const Diagram& d, const Diagram& before, const Diagram& t1, const Diagram& t2,
                        const EvalContext& ctx) {
    if (before.canonical() != d.canonical()) locus_error(r, "diagram is not the composite built from t1");
    if (t1.order() != t2.order()) precond(r, "t1 and t2 have different orders");
    Tensor v1 = evaluate(t1, ctx), v2 = evaluate(t2, ctx);
    if (!tensor_close(v1, v2, ctx.tol)) precond(r, "t1 and t2 differ by " + fmt(tensor_distance(v1, v2)));
}

DiagramCombo sr5(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR5;
    Diagram s = parse_param(r, st.params, "s"), t1 = parse_param(r, st.params, "t1"),
            t2 = parse_param(r, st.params, "t2");
    std::vector<std::pair<std::string, std::string>> xi;
    for (const auto& p : st.params.value("xi", json::array())) xi.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    // t2 must accept the same pairing: map t1 roots positionally onto t2 roots
    std::vector<std::pair<std::string, std::string>> xi2;
    for (const auto& [a, b] : xi) {
        auto it = std::find(t1.roots.begin(), t1.roots.end(), b);
        if (it == t1.roots.end()) locus_error(r, "'" + b + "' is not a root of t1");
        auto pos = it - t1.roots.begin();
        if (pos >= t2.order()) locus_error(r, "t2 has too few roots");
        xi2.emplace_back(a, t2.roots[pos]);
    }
    check_substitution(r, d, glue(s, t1, xi), t1, t2, ctx);
    return one(glue(s, t2, xi2));
}

DiagramCombo sr10(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR10;
    Diagram t1 = parse_param(r, st.params, "t1"), t2 = parse_param(r, st.params, "t2");
    std::vector<int> keep = st.params.value("keep", std::vector<int>{});
    check_substitution(r, d, hollow(t1, keep), t1, t2, ctx);
    return one(hollow(t2, keep));
}

DiagramCombo sr11(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR11;
    Diagram s = parse_param(r, st.params, "s"), t1 = parse_param(r, st.params, "t1"),
            t2 = parse_param(r, st.params, "t2");
    const int k = st.params.value("r", 0);
    const bool left = st.params.value("side", "right") == "left";
    auto build = [&](const Diagram& t) { return left ? bilinear_pair(t, s, k) : bilinear_pair(s, t, k); };
    check_substitution(r, d, build(t1), t1, t2, ctx);
    return one(build(t2));
}

// SR6 -------------------------------------------------------------------

DiagramCombo sr6(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR6;
    if (st.locus.edges.size() != 1) locus_error(r, "takes one edge");
    const int ei = st.locus.edges[0];
    const Edge e = edge_at(r, d, ei);
    std::vector<std::pair<cplx, WeightRef>> terms;
    if (st.params.contains("terms")) {
        for (const auto& t : st.params["terms"]) terms.emplace_back(parse_coef(t["coef"]), parse_weight(t["weight"]));
        CMatrix lhs = dense(e.w, ctx);
        CMatrix rhs = CMatrix::Zero(lhs.rows(), lhs.cols());
        for (const auto& [c, w] : terms) rhs += c * dense(w, ctx);
        double diff = (lhs - rhs).cwiseAbs().maxCoeff();
        if (diff > ctx.tol.abs_tol * mat_scale(lhs)) precond(r, "expansion is off by " + fmt(diff));
    } else {
        const auto& s = need_scheme(r, ctx);
        std::string to = st.params.value("expand", "");
        auto base = [&](WeightRef w) {
            w.transpose = e.w.transpose;
            w.conjugate = e.w.conjugate;
            w.scalar = e.w.scalar;
            return w;
        };
        auto add = [&](cplx c, WeightRef w) {
            if (e.w.conjugate) c = std::conj(c);
            if (std::abs(c) > 1e-12) terms.emplace_back(c, base(w));
        };
        if (!e.w.args.empty()) precond(r, "weight " + e.w.str() + " is composite");
        if (e.w.kind == WeightRef::Kind::J && to == "A") {
            for (int i = 0; i <= s.d; ++i) add(1.0, WeightRef::A(i));
        } else if (e.w.kind == WeightRef::Kind::I && to == "E") {
            for (int j = 0; j <= s.d; ++j) add(1.0, WeightRef::E(j));
        } else if (e.w.kind == WeightRef::Kind::A && to == "E") {
            for (int j = 0; j <= s.d; ++j) add(s.P(j, e.w.index), WeightRef::E(j));
        } else if (e.w.kind == WeightRef::Kind::E && to == "A") {
            for (int i = 0; i <= s.d; ++i) add(s.Q(i, e.w.index) / static_cast<double>(s.n), WeightRef::A(i));
        } else if (e.w.kind == WeightRef::Kind::J && to == "E") {
            add(static_cast<double>(s.n), WeightRef::E(0));
        } else if (e.w.kind == WeightRef::Kind::I && to == "A") {
            add(1.0, WeightRef::A(0));
        } else {
            precond(r, "cannot expand " + e.w.str() + " into '" + to + "'");
        }
    }
    DiagramCombo out;
    for (const auto& [c, w] : terms) {
        Diagram g = d;
        g.edges[ei].w = w;
        out.terms.push_back({c, g});
    }
    return out;
}

// SR7, SR8, SR9 ---------------------------------------------------------

DiagramCombo sr7(const Diagram& d, const RewriteStep& st) {
    const Rule r = Rule::SR7;
    if (st.locus.edges.size() != 1) locus_error(r, "takes one edge");
    const Edge e = edge_at(r, d, st.locus.edges[0]);
    Diagram g = d;
    g.edges[st.locus.edges[0]] = {e.head, e.tail, e.w.transposed()};
    return one(g);
}

DiagramCombo sr8(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR8;
    if (st.locus.nodes.size() != 1) locus_error(r, "takes one node");
    const std::string x = st.locus.nodes[0];
    need_hollow(r, d, x);
    auto inc = d.incident(x);
    if (inc.size() != 2) precond(r, "node '" + x + "' has degree " + std::to_string(inc.size()) + ", not 2");
    int ein = -1, eout = -1;
    for (int e : inc) {
        if (d.edges[e].tail == d.edges[e].head) precond(r, "loop at '" + x + "'");
        if (d.edges[e].head == x) ein = e;
        if (d.edges[e].tail == x) eout = e;
    }
    if (ein < 0 || eout < 0) precond(r, "'" + x + "' needs one edge in and one edge out");
    CMatrix a = dense(d.edges[ein].w, ctx), b = dense(d.edges[eout].w, ctx);
    double diff = (a * b - b * a).cwiseAbs().maxCoeff();
    if (diff > ctx.tol.abs_tol * mat_scale(a) * mat_scale(b) * a.rows()) precond(r, "weights do not commute");
    Diagram g = d;
    std::swap(g.edges[ein].w, g.edges[eout].w);
    return one(g);
}

DiagramCombo sr9(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    const Rule r = Rule::SR9;
    if (st.locus.nodes.size() != 1) locus_error(r, "takes one node");
    const std::string x = st.locus.nodes[0];
    need_hollow(r, d, x);
    auto inc = d.incident(x);
    if (inc.size() != 1) precond(r, "node '" + x + "' has degree " + std::to_string(inc.size()) + ", not 1");
    const Edge& e = d.edges[inc[0]];
    if (e.tail == e.head) precond(r, "loop at '" + x + "'");
    CMatrix w = dense(e.w, ctx);
    // edge into x sums rows, edge out of x sums columns
    Eigen::VectorXcd sums = e.head == x ? Eigen::VectorXcd(w.rowwise().sum()) : Eigen::VectorXcd(w.colwise().sum().transpose());
    cplx alpha = sums(0);
    double dev = (sums.array() - alpha).abs().maxCoeff();
    if (dev > ctx.tol.abs_tol * (1.0 + std::abs(alpha)) * w.rows())
        precond(r, std::string(e.head == x ? "row" : "column") + " sums are not constant");
    Diagram g = d;
    g.remove_node(x);
    if (std::abs(alpha) <= ctx.tol.abs_tol) return {};
    cplx a{round12(alpha.real()), round12(alpha.imag())};
    return one(g, a);
}

}  // namespace

const std::vector<Rule>& all_rules() {
    static const std::vector<Rule> rules = {Rule::SR0, Rule::SR0p, Rule::SR1, Rule::SR1p, Rule::SR2, Rule::SR2p,
                                            Rule::SR3, Rule::SR3p, Rule::SR4, Rule::SR4p, Rule::SR5, Rule::SR6,
                                            Rule::SR7, Rule::SR8, Rule::SR9, Rule::SR10, Rule::SR11};
    return rules;
}

std::string rule_name(Rule r) { return kNames[static_cast<int>(r)]; }

Rule parse_rule(const std::string& s) {
    std::string t = s;
    if (t.size() > 1 && t.back() == 'p' && t.rfind("SR", 0) == 0) t.back() = '\'';
    for (Rule r : all_rules())
        if (rule_name(r) == t) return r;
    throw Error("syntax", "unknown rule '" + s + "'");
}

DiagramCombo apply_rule(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    switch (st.rule) {
        case Rule::SR0: return sr0(d, st);
        case Rule::SR0p: return sr0p(d, st);
        case Rule::SR1: return sr1(d, st);
        case Rule::SR1p: return sr1p(d, st);
        case Rule::SR2: return sr2(d, st, ctx);
        case Rule::SR2p: return sr2p(d, st, ctx);
        case Rule::SR3: return sr3(d, st, ctx);
        case Rule::SR3p: return sr3p(d, st, ctx);
        case Rule::SR4: return sr4(d, st, ctx);
        case Rule::SR4p: return sr4p(d, st, ctx);
        case Rule::SR5: return sr5(d, st, ctx);
        case Rule::SR6: return sr6(d, st, ctx);
        case Rule::SR7: return sr7(d, st);
        case Rule::SR8: return sr8(d, st, ctx);
        case Rule::SR9: return sr9(d, st, ctx);
        case Rule::SR10: return sr10(d, st, ctx);
        case Rule::SR11: return sr11(d, st, ctx);
    }
    throw Error("syntax", "bad rule");
}

Tensor evaluate_combo(const DiagramCombo& combo, const EvalContext& ctx, int order) {
    if (combo.empty()) return Tensor::zeros(ctx.n(), order);
    return evaluate(combo, ctx);
}

double verify_step(const Diagram& d, const RewriteStep& st, const EvalContext& ctx) {
    Tensor lhs = evaluate(d, ctx);
    Tensor rhs = evaluate_combo(apply_rule(d, st, ctx), ctx, d.order());
    return tensor_distance(lhs, rhs);
}

IdentityReport check_identity(const DiagramCombo& lhs, const DiagramCombo& rhs, const EvalContext& ctx, double tol) {
    auto t0 = std::chrono::steady_clock::now();
    IdentityReport rep;
    rep.suite = "identity";
    int order = !lhs.empty() ? lhs.terms[0].diag.order() : (!rhs.empty() ? rhs.terms[0].diag.order() : 0);
    for (const auto* side : {&lhs, &rhs})
        for (const auto& t : side->terms)
            if (t.diag.order() != order) throw Error("arity", "terms of different orders");
    auto term_value = [&](const Term& t) {
        Tensor v = evaluate(t.diag, ctx).scaled(t.coef);
        if (v.order == 0) return v.scalar();
        double s = 0;
        for (const auto& z : v.data) s += std::norm(z);
        return cplx(std::sqrt(s), 0.0);
    };
    for (size_t i = 0; i < lhs.terms.size(); ++i) {
        cplx v = term_value(lhs.terms[i]);
        rep.add("lhs[" + std::to_string(i) + "]", v, v, 0.0, order ? "frobenius norm" : "");
    }
    for (size_t i = 0; i < rhs.terms.size(); ++i) {
        cplx v = term_value(rhs.terms[i]);
        rep.add("rhs[" + std::to_string(i) + "]", v, v, 0.0, order ? "frobenius norm" : "");
    }
    Tensor a = evaluate_combo(lhs, ctx, order), b = evaluate_combo(rhs, ctx, order);
    double diff = tensor_distance(a, b);
    double t = tol >= 0 ? tol : ctx.tol.abs_tol + ctx.tol.rel_tol * std::max(a.max_abs(), b.max_abs());
    if (order == 0)
        rep.add("lhs-rhs", b.scalar(), a.scalar(), t);
    else
        rep.add_residual("lhs-rhs", diff, t);
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

json step_to_json(const RewriteStep& st) {
    return {{"rule", rule_name(st.rule)},
            {"locus", {{"nodes", st.locus.nodes}, {"edges", st.locus.edges}}},
            {"params", st.params}};
}

RewriteStep step_from_json(const json& j) {
    RewriteStep st;
    if (!j.contains("rule")) throw Error("syntax", "step without rule");
    st.rule = parse_rule(j["rule"].get<std::string>());
    if (j.contains("locus")) {
        const auto& l = j["locus"];
        st.locus.nodes = l.value("nodes", std::vector<std::string>{});
        st.locus.edges = l.value("edges", std::vector<int>{});
    }
    if (j.contains("params")) st.params = j["params"];
    return st;
}

ChainResult replay_chain(const json& chain, const EvalContext& ctx) {
    auto t0 = std::chrono::steady_clock::now();
    ChainResult res;
    res.chain = chain;
    res.report.suite = chain.value("name", "chain");
    if (!chain.contains("diagram")) throw Error("syntax", "chain without diagram");
    Diagram start = parse_diagram(chain["diagram"].get<std::string>());
    DiagramCombo state = DiagramCombo::single(start);
    const Tensor initial = evaluate(start, ctx);
    const auto steps = chain.value("steps", json::array());
    for (size_t k = 0; k < steps.size(); ++k) {
        RewriteStep st = step_from_json(steps[k]);
        int t = steps[k].value("term", 0);
        if (t < 0 || t >= static_cast<int>(state.terms.size()))
            throw Error("locus", "step " + std::to_string(k) + " selects missing term " + std::to_string(t));
        const Term cur = state.terms[t];
        DiagramCombo out = apply_rule(cur.diag, st, ctx);
        Tensor lhs = evaluate(cur.diag, ctx);
        Tensor rhs = evaluate_combo(out, ctx, cur.diag.order());
        double r = tensor_distance(lhs, rhs);
        double tol = ctx.tol.abs_tol + ctx.tol.rel_tol * std::max(lhs.max_abs(), rhs.max_abs());
        res.report.add_residual("step " + std::to_string(k) + " " + rule_name(st.rule), r, tol);
        res.chain["steps"][k]["residual"] = round12(r);
        DiagramCombo next;
        for (int i = 0; i < static_cast<int>(state.terms.size()); ++i) {
            if (i != t) {
                next.terms.push_back(state.terms[i]);
                continue;
            }
            for (const auto& o : out.terms) next.terms.push_back({cur.coef * o.coef, o.diag});
        }
        state = std::move(next);
    }
    Tensor fin = evaluate_combo(state, ctx, start.order());
    double tol = ctx.tol.abs_tol + ctx.tol.rel_tol * std::max(initial.max_abs(), fin.max_abs());
    if (start.order() == 0)
        res.report.add("start=end", initial.scalar(), fin.scalar(), tol);
    else
        res.report.add_residual("start=end", tensor_distance(initial, fin), tol);
    res.final_state = std::move(state);
    res.report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace scaf
