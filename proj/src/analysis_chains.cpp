// Proof chains for the Dickie and Suzuki theorems, circular planar duals and
// the duality experiment.

#include <cmath>
#include <functional>
#include <set>

#include "analysis_util.hpp"

namespace scaf {

using detail::build;

namespace {

std::vector<int> checked_ordering(const AssociationScheme& s, std::vector<int> ordering, const std::string& kind) {
    if (ordering.empty()) ordering = detail::natural_order(s);
    auto ps = polynomial_structure(s, kind, ordering);
    if (!ps.ok) throw Error("ordering", kind + " ordering rejected: " + ps.reason);
    return ordering;
}

// Krein parameters and idempotents addressed through a cometric ordering.
struct Ordered {
    const AssociationScheme& s;
    std::vector<int> ord;

    double q(int a, int b, int c) const { return s.qijk(ord.at(a), ord.at(b), ord.at(c)).real(); }
    bool qz(int a, int b, int c) const { return s.q_zero(ord.at(a), ord.at(b), ord.at(c)); }
    WeightRef E(int a) const { return WeightRef::E(ord.at(a)); }
    int d() const { return s.d; }
    bool valid(int a) const { return a >= 0 && a <= s.d; }
};

std::string qname(int a, int b, int c) {
    return "q_{" + std::to_string(a) + "," + std::to_string(b) + "}^" + std::to_string(c);
}

struct ChainBuilder {
    IdentityReport rep;
    EvalContext ctx;
    double tol;

    ChainBuilder(const AssociationScheme& s, const std::string& suite, double t) : ctx(s, Method::Eliminate), tol(t) {
        rep.suite = suite;
    }

    // The scaffold scaled by coef is claimed to be zero.
    Tensor zero(const std::string& id, const Diagram& d, double coef = 1.0) {
        Tensor t = evaluate(d, ctx).scaled(coef);
        rep.add_residual(id, t.max_abs(), tol);
        return t;
    }
    void equal(const std::string& id, const Tensor& a, const Tensor& b) {
        rep.add_residual(id, tensor_distance(a, b), tol);
    }
};

}  // namespace

IdentityReport proof_chain_dickie(const AssociationScheme& s, int j, std::vector<int> ordering, double tol) {
    if (!s.symmetric) throw Error("symmetric-only", "the chain is stated for symmetric schemes");
    Ordered o{s, checked_ordering(s, std::move(ordering), "cometric")};
    const int d = o.d();
    if (j <= 0 || j >= d) throw Error("hypothesis", "dickie needs 0 < j < d");
    if (!o.qz(1, j, j)) throw Error("hypothesis", "a_j* = " + qname(1, j, j) + " is not zero");
    const double n = s.n;
    const double bj = o.q(1, j + 1, j), cj = o.q(1, j - 1, j), qjj1 = o.q(j, j + 1, 1);
    auto E = [&](int a) { return o.E(a); };
    ChainBuilder cb(s, "dickie", tol);
    const std::vector<std::string> R = {"a", "b", "c"};

    Tensor t1 = cb.zero("assumption", build(R, {{"a", "z", E(j)}, {"b", "z", E(j)}, {"c", "z", E(1)}}));
    Diagram d2 = build(R, {{"a", "x", E(j)}, {"x", "z", E(1)}, {"x", "z", E(j + 1)}, {"b", "z", E(j)},
                           {"c", "z", E(1)}});
    Tensor t2 = cb.zero("drumstick", d2, n / bj);
    cb.equal("drumstick = assumption", t2, t1);
    Diagram d3 = build(R, {{"a", "x", E(j)}, {"x", "y", E(1)}, {"x", "z", E(j + 1)}, {"b", "y", E(j)},
                           {"y", "z", E(j + 1)}, {"c", "z", E(1)}});
    Tensor t3 = cb.zero("isthmus split", d3);
    cb.equal("isthmus split = drumstick form", t3, evaluate(d2, cb.ctx));

    Diagram prism = d3;
    prism.roots.clear();
    prism.edges.push_back({"a", "b", E(j - 1)});
    prism.edges.push_back({"b", "c", E(1)});
    prism.edges.push_back({"c", "a", E(1)});
    Tensor t4 = cb.zero("prism", prism);

    Diagram by = build({}, {{"a", "y", E(j - 1)}, {"y", "c", E(1)}, {"c", "a", E(1)}, {"a", "x", E(j)},
                            {"x", "y", E(1)}, {"x", "z", E(j + 1)}, {"y", "z", E(j + 1)}, {"c", "z", E(1)}});
    Tensor t5 = cb.zero("contract b=y", by);
    cb.equal("contract b=y = prism", t5, t4);
    Diagram ax = build({}, {{"x", "y", E(j - 1)}, {"y", "c", E(1)}, {"c", "x", E(1)}, {"x", "y", E(1)},
                            {"x", "z", E(j + 1)}, {"y", "z", E(j + 1)}, {"c", "z", E(1)}});
    Tensor t6 = cb.zero("contract a=x", ax);
    cb.equal("contract a=x = contract b=y", t6, t5);
    Diagram merged = build({}, {{"x", "y", WeightRef::had(E(1), E(j - 1))}, {"y", "c", E(1)}, {"c", "x", E(1)},
                                {"x", "z", E(j + 1)}, {"y", "z", E(j + 1)}, {"c", "z", E(1)}});
    Tensor t7 = cb.zero("hadamard merge", merged);
    cb.equal("hadamard merge = contract a=x", t7, t6);
    Diagram repl = build({}, {{"x", "y", E(j)}, {"y", "c", E(1)}, {"c", "x", E(1)}, {"x", "z", E(j + 1)},
                              {"y", "z", E(j + 1)}, {"c", "z", E(1)}});
    Tensor t8 = cb.zero("replace by E_j", repl);
    cb.equal("hadamard merge = (c_j*/n) replaced", t7, t8.scaled(cj / n));
    Diagram isth = build({}, {{"x", "z", E(j)}, {"z", "c", E(1)}, {"c", "x", E(1)}, {"x", "z", E(j + 1)},
                              {"c", "z", E(1)}});
    Tensor t9 = cb.zero("isthmus y=z", isth);
    cb.equal("isthmus y=z = replaced", t9, t8);
    Diagram pinch = build({}, {{"c", "z", WeightRef::had(E(1), E(1))}, {"c", "x", E(1)},
                               {"x", "z", WeightRef::had(E(j), E(j + 1))}});
    Tensor t10 = cb.zero("pinched star", pinch);
    cb.equal("pinched star = isthmus y=z", t10, t9);
    Diagram fin = build({}, {{"c", "z", E(1)}, {"c", "z", E(1)}, {"c", "z", E(1)}});
    Tensor t11 = cb.zero("SUM(E1 o E1 o E1)", fin);
    cb.equal("pinched star = (q_{j,j+1}^1/n) SUM", t10, t11.scaled(qjj1 / n));
    cb.rep.add_residual("conclusion a_1*", std::abs(o.q(1, 1, 1)), tol);
    cb.rep.message = "j=" + std::to_string(j) + " b_j*=" + std::to_string(round12(bj)) +
                     " c_j*=" + std::to_string(round12(cj));
    return cb.rep;
}

namespace {

// Every hypothesis of the Suzuki theorem; empty string when all hold.
std::string suzuki_violation(const Ordered& o, int h, int i, int j) {
    const int d = o.d();
    if (!(h >= 0 && j >= 0 && j <= i && h + i + j <= d)) return "need j <= i <= i+j <= h+i+j <= d";
    for (int e = 0; e <= d; ++e) {
        if (e == h + i - j) continue;
        if (!o.qz(j, h + i, e) && !o.qz(i - j, h + j, e))
            return qname(j, h + i, e) + " * " + qname(i - j, h + j, e) + " is not zero";
    }
    if (!o.qz(i, h + j, h + i)) return qname(i, h + j, h + i) + " is not zero";
    if (o.qz(j, i - j, i)) return qname(j, i - j, i) + " vanishes";
    return "";
}

}  // namespace

std::vector<std::array<int, 3>> suzuki_admissible(const AssociationScheme& s, const std::vector<int>& ordering) {
    Ordered o{s, checked_ordering(s, ordering, "cometric")};
    std::vector<std::array<int, 3>> out;
    for (int h = 0; h <= s.d; ++h)
        for (int i = 0; i <= s.d; ++i)
            for (int j = 1; j <= i; ++j)
                if (h + i + j <= s.d && suzuki_violation(o, h, i, j).empty()) out.push_back({h, i, j});
    return out;
}

IdentityReport proof_chain_suzuki(const AssociationScheme& s, int h, int i, int j, std::vector<int> ordering,
                                  double tol) {
    if (!s.symmetric) throw Error("symmetric-only", "the chain is stated for symmetric schemes");
    Ordered o{s, checked_ordering(s, std::move(ordering), "cometric")};
    std::string bad = suzuki_violation(o, h, i, j);
    if (!bad.empty()) throw Error("hypothesis", "suzuki: " + bad);
    const double n = s.n, qd = o.q(j, i - j, i);
    auto E = [&](int a) { return o.E(a); };
    ChainBuilder cb(s, "suzuki", tol);
    const std::vector<std::string> R = {"a1", "a2", "a3"};

    Tensor z = cb.zero("assumption", build(R, {{"a1", "x", E(i)}, {"a2", "x", E(h + j)}, {"a3", "x", E(h + i)}}));
    Diagram d2 = build(R, {{"a1", "b1", E(i)}, {"b1", "x", E(j)}, {"b1", "x", E(i - j)}, {"a2", "x", E(h + j)},
                           {"a3", "x", E(h + i)}});
    Tensor t2 = cb.zero("drumstick", d2, n / qd);
    cb.equal("drumstick = assumption", t2, z);
    Diagram T = build(R, {{"b1", "b2", E(i - j)}, {"a2", "b2", E(h + j)}, {"b1", "b3", E(j)}, {"a3", "b3", E(h + i)},
                          {"b2", "b3", E(h + i - j)}, {"a1", "b1", E(i)}});
    Tensor t3 = cb.zero("isthmus split", T, n / qd);
    cb.equal("isthmus split = drumstick", t3, t2);

    Diagram six = T;
    six.roots.clear();
    six.edges.push_back({"a1", "a2", E(h + j)});
    six.edges.push_back({"a1", "a3", E(h + i + j)});
    six.edges.push_back({"a2", "a3", E(j)});
    Tensor t4 = cb.zero("six-node scalar", six, n / qd);
    Diagram c1 = build({}, {{"m1", "b2", E(i - j)}, {"a2", "b2", E(h + j)}, {"m1", "b3", E(j)},
                            {"a3", "b3", E(h + i)}, {"b2", "b3", E(h + i - j)}, {"m1", "a2", E(h + j)},
                            {"m1", "a3", E(h + i + j)}, {"a2", "a3", E(j)}});
    Tensor t5 = cb.zero("contract a1=b1", c1, n / qd);
    cb.equal("contract a1=b1 = six-node", t5, t4);
    Diagram c2 = build({}, {{"m1", "b2", E(i - j)}, {"a2", "b2", E(h + j)}, {"m1", "m3", E(j)},
                            {"m3", "b2", E(h + i - j)}, {"m1", "a2", E(h + j)}, {"m1", "m3", E(h + i + j)},
                            {"a2", "m3", E(j)}});
    Tensor t6 = cb.zero("contract a3=b3", c2, n / qd);
    cb.equal("contract a3=b3 = contract a1=b1", t6, t5);
    CaseRecord& c = cb.rep.add_residual("conclusion " + qname(j, h + j, h + j), std::abs(o.q(j, h + j, h + j)),
                                        kParamZero * s.q_scale);
    (void)c;
    cb.rep.message = "h=" + std::to_string(h) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
    return cb.rep;
}

IdentityReport proof_chain_suzuki_two_orderings(const AssociationScheme& s, int h, int i, int j, int k, int l, int m,
                                                std::vector<int> ordering, double tol) {
    if (!s.symmetric) throw Error("symmetric-only", "the chain is stated for symmetric schemes");
    Ordered o{s, checked_ordering(s, std::move(ordering), "cometric")};
    for (int x : {h, i, j, k, l, m})
        if (!o.valid(x)) throw Error("range", "index " + std::to_string(x));
    if (o.qz(i, j, h)) throw Error("hypothesis", qname(i, j, h) + " vanishes");
    for (int e = 0; e <= s.d; ++e) {
        if (e != l && !o.qz(h, m, e) && !o.qz(i, k, e))
            throw Error("hypothesis", qname(h, m, e) + " * " + qname(i, k, e) + " is not zero");
        if (e != m && !o.qz(h, l, e) && !o.qz(j, k, e))
            throw Error("hypothesis", qname(h, l, e) + " * " + qname(j, k, e) + " is not zero");
    }
    const double n = s.n;
    auto E = [&](int a) { return o.E(a); };
    ChainBuilder cb(s, "suzuki_two_orderings", tol);
    Tensor k4 = evaluate(build({}, {{"A1", "A2", E(h)}, {"A1", "A3", E(i)}, {"A1", "A4", E(j)}, {"A2", "A3", E(l)},
                                    {"A2", "A4", E(m)}, {"A3", "A4", E(k)}}),
                         cb.ctx);
    Tensor m23 = evaluate(build({}, {{"B1", "B23", E(h)}, {"B23", "B1", E(i)}, {"B4", "B1", E(j)},
                                     {"B4", "B23", E(m)}, {"B4", "B23", E(k)}}),
                          cb.ctx);
    Tensor m24 = evaluate(build({}, {{"B1", "B24", E(h)}, {"B24", "B1", E(j)}, {"B3", "B1", E(i)},
                                     {"B3", "B24", E(l)}, {"B3", "B24", E(k)}}),
                          cb.ctx);
    Tensor th_hij = evaluate(build({}, {{"C", "D", E(h)}, {"C", "D", E(i)}, {"C", "D", E(j)}}), cb.ctx);
    cb.equal("merge A2=A3 = K4", m23, k4);
    cb.equal("merged = (q_{k,m}^j/n) Theta", m23, th_hij.scaled(o.q(k, m, j) / n));
    cb.equal("merge A2=A4 = K4", m24, k4);
    cb.equal("merged = (q_{k,l}^i/n) Theta", m24, th_hij.scaled(o.q(k, l, i) / n));
    cb.rep.add_residual("conclusion " + qname(k, l, i) + " = " + qname(k, m, j), std::abs(o.q(k, l, i) - o.q(k, m, j)),
                        kParamZero * s.q_scale);
    return cb.rep;
}

// ---- planar duality ------------------------------------------------------

Embedding parse_embedding(const nlohmann::json& j) {
    Embedding e;
    try {
        for (const auto& [v, list] : j.at("rotation").items()) e.rotation[v] = list.get<std::vector<int>>();
        e.outer = j.at("outer").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& ex) {
        throw Error("bad-embedding", ex.what());
    }
    return e;
}

nlohmann::json embedding_json(const Embedding& e) {
    nlohmann::json j;
    j["rotation"] = nlohmann::json::object();
    for (const auto& [v, list] : e.rotation) j["rotation"][v] = list;
    j["outer"] = e.outer;
    return j;
}

DualResult planar_dual(const Diagram& d, const Embedding& emb) {
    const int ne = static_cast<int>(d.edges.size());
    if (ne == 0) throw Error("bad-embedding", "diagram has no edges");
    if (emb.outer.empty()) throw Error("bad-embedding", "no roots on the outer face");
    for (const auto& e : d.edges)
        if (!e.w.is_basis()) throw Error("weight", "planar dual needs A or E basis weights, got " + e.w.str());
    {
        std::vector<std::string> a = emb.outer, b = d.roots;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b || std::adjacent_find(a.begin(), a.end()) != a.end())
            throw Error("bad-embedding", "outer boundary must list each root once");
    }
    // Dart ids: consecutive per node in d.nodes order.
    std::map<std::string, int> offset;
    std::vector<std::string> dart_node;
    std::vector<int> dart_pos;
    std::vector<int> seen(ne, 0);
    for (const auto& v : d.nodes) {
        auto it = emb.rotation.find(v);
        if (it == emb.rotation.end() || it->second.empty()) throw Error("bad-embedding", "no rotation at '" + v + "'");
        offset[v] = static_cast<int>(dart_node.size());
        for (size_t p = 0; p < it->second.size(); ++p) {
            int e = it->second[p];
            if (e < 0 || e >= ne) throw Error("bad-embedding", "edge index " + std::to_string(e));
            if (d.edges[e].tail != v && d.edges[e].head != v)
                throw Error("bad-embedding", "edge " + std::to_string(e) + " is not incident to '" + v + "'");
            ++seen[e];
            dart_node.push_back(v);
            dart_pos.push_back(static_cast<int>(p));
        }
    }
    if (emb.rotation.size() != d.nodes.size()) throw Error("bad-embedding", "rotation lists unknown nodes");
    for (int e = 0; e < ne; ++e)
        if (seen[e] != 2) throw Error("bad-embedding", "edge " + std::to_string(e) + " must appear at both ends");
    for (const auto& v : d.nodes) {
        const auto& rot = emb.rotation.at(v);
        for (int e = 0; e < ne; ++e) {
            int c = static_cast<int>(std::count(rot.begin(), rot.end(), e));
            int want = (d.edges[e].tail == v) + (d.edges[e].head == v);
            if (c != want) throw Error("bad-embedding", "edge " + std::to_string(e) + " at '" + v + "'");
        }
    }
    const int nd = static_cast<int>(dart_node.size());
    auto edge_of = [&](int dart) { return emb.rotation.at(dart_node[dart])[dart_pos[dart]]; };
    auto twin = [&](int dart) {
        const std::string& v = dart_node[dart];
        const int e = edge_of(dart);
        const Edge& ed = d.edges[e];
        const std::string& u = ed.tail == v ? ed.head : ed.tail;
        const auto& rot = emb.rotation.at(u);
        for (size_t q = 0; q < rot.size(); ++q)
            if (rot[q] == e && !(u == v && static_cast<int>(q) == dart_pos[dart])) return offset[u] + static_cast<int>(q);
        throw Error("bad-embedding", "unmatched dart");
    };
    auto next = [&](int dart) {
        int t = twin(dart);
        const std::string& u = dart_node[t];
        const int deg = static_cast<int>(emb.rotation.at(u).size());
        return offset[u] + (dart_pos[t] - 1 + deg) % deg;
    };

    // Faces: orbits of next, with the face on the left of each dart.
    std::vector<int> face(nd, -1);
    std::vector<std::vector<int>> walks;
    for (int s0 = 0; s0 < nd; ++s0) {
        if (face[s0] >= 0) continue;
        std::vector<int> w;
        for (int x = s0; face[x] < 0; x = next(x)) {
            face[x] = static_cast<int>(walks.size());
            w.push_back(x);
        }
        walks.push_back(w);
    }
    // connectivity and Euler's formula
    {
        std::map<std::string, std::string> parent;
        std::function<std::string(const std::string&)> find = [&](const std::string& x) {
            auto it = parent.find(x);
            if (it == parent.end() || it->second == x) return x;
            return it->second = find(it->second);
        };
        for (const auto& e : d.edges) parent[find(e.tail)] = find(e.head);
        std::set<std::string> comps;
        for (const auto& v : d.nodes) comps.insert(find(v));
        if (comps.size() != 1) throw Error("bad-embedding", "diagram is not connected");
        if (static_cast<int>(d.nodes.size()) - ne + static_cast<int>(walks.size()) != 2)
            throw Error("bad-embedding", "rotation system is not planar");
    }

    // The outer face meets the roots in clockwise order.
    const int m = static_cast<int>(emb.outer.size());
    int outer = -1;
    std::vector<int> root_pos;  // positions in the outer walk of outer[0], outer[m-1], ..., outer[1]
    for (size_t f = 0; f < walks.size() && outer < 0; ++f) {
        const auto& w = walks[f];
        const int L = static_cast<int>(w.size());
        for (int start = 0; start < L && outer < 0; ++start) {
            if (dart_node[w[start]] != emb.outer[0]) continue;
            std::vector<int> pos = {start};
            int at = start;
            for (int k = 1; k < m; ++k) {
                const std::string& want = emb.outer[m - k];
                int step = 1;
                while (step < L && dart_node[w[(at + step) % L]] != want) ++step;
                if (step >= L || (at - start + step) >= L) break;
                at += step;
                pos.push_back(at % L);
            }
            if (static_cast<int>(pos.size()) == m) {
                outer = static_cast<int>(f);
                root_pos = pos;
            }
        }
    }
    if (outer < 0) throw Error("bad-embedding", "roots do not lie on one face in the given order");

    // Dual nodes: segments s1..sm (roots), then inner faces f1, f2, ...
    std::vector<std::string> seg_name(m), face_name(walks.size());
    for (int k = 0; k < m; ++k) seg_name[k] = "s" + std::to_string(k + 1);
    std::vector<std::string> used(seg_name);
    int fc = 0;
    for (size_t f = 0; f < walks.size(); ++f) {
        if (static_cast<int>(f) == outer) continue;
        std::string id;
        do id = "f" + std::to_string(++fc);
        while (std::find(used.begin(), used.end(), id) != used.end());
        face_name[f] = id;
    }
    // Segment k starts at root outer[k]; walk order visits outer[0], outer[m-1], ..., outer[1].
    const auto& ow = walks[outer];
    const int L = static_cast<int>(ow.size());
    std::vector<std::string> dart_dual(nd);
    std::map<std::string, std::vector<int>> drot;
    for (int t = 0; t < m; ++t) {
        const int k = t == 0 ? 0 : m - t;
        const int from = root_pos[t];
        const int to = t + 1 < m ? root_pos[t + 1] : root_pos[0] + L;
        auto& rot = drot[seg_name[k]];
        for (int p = from; p < to; ++p) {
            int dart = ow[p % L];
            dart_dual[dart] = seg_name[k];
            rot.push_back(edge_of(dart));
        }
    }
    for (size_t f = 0; f < walks.size(); ++f) {
        if (static_cast<int>(f) == outer) continue;
        auto& rot = drot[face_name[f]];
        for (int dart : walks[f]) {
            dart_dual[dart] = face_name[f];
            rot.push_back(edge_of(dart));
        }
    }

    DualResult res;
    Diagram& g = res.diag;
    g.nodes = seg_name;
    for (size_t f = 0; f < walks.size(); ++f)
        if (static_cast<int>(f) != outer) g.nodes.push_back(face_name[f]);
    g.roots = seg_name;
    for (int e = 0; e < ne; ++e) {
        const Edge& ed = d.edges[e];
        const auto& rot = emb.rotation.at(ed.tail);
        int p = static_cast<int>(std::find(rot.begin(), rot.end(), e) - rot.begin());
        int fwd = offset[ed.tail] + p;  // tail -> head
        int back = twin(fwd);           // head -> tail
        WeightRef w = ed.w;
        w.kind = w.kind == WeightRef::Kind::A ? WeightRef::Kind::E : WeightRef::Kind::A;
        // rotated a quarter turn counterclockwise: from the right face to the left face
        g.edges.push_back({dart_dual[back], dart_dual[fwd], w});
    }
    res.embedding.rotation = drot;
    res.embedding.outer = seg_name;
    return res;
}

namespace {

Embedding embedding_from_coords(const Diagram& d, const std::map<std::string, std::pair<double, double>>& xy) {
    Embedding emb;
    for (const auto& v : d.nodes) {
        std::vector<std::pair<double, int>> inc;
        for (int e : d.incident(v)) {
            const Edge& ed = d.edges[e];
            const std::string& u = ed.tail == v ? ed.head : ed.tail;
            inc.emplace_back(std::atan2(xy.at(u).second - xy.at(v).second, xy.at(u).first - xy.at(v).first), e);
        }
        std::sort(inc.begin(), inc.end());
        for (const auto& [ang, e] : inc) emb.rotation[v].push_back(e);
    }
    return emb;
}

}  // namespace

DualityFamily pentagon_family() {
    using detail::A;
    using detail::E;
    const std::vector<std::string> R = {"r1", "r2", "r3", "r4", "r5"};
    std::map<std::string, std::pair<double, double>> xy;
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 5; ++k) xy[R[k]] = {std::cos(pi / 2 + 2 * pi * k / 5), std::sin(pi / 2 + 2 * pi * k / 5)};
    std::vector<detail::Spec> ring = {{"r1", "r2", A(4)}, {"r2", "r3", A(1)}, {"r3", "r4", A(1)},
                                      {"r4", "r5", A(1)}, {"r5", "r1", A(1)}};
    auto with = [&](std::vector<detail::Spec> extra) {
        auto es = ring;
        es.insert(es.end(), extra.begin(), extra.end());
        return build(R, es);
    };
    DualityFamily fam;
    fam.primal = {with({}), with({{"r5", "r2", A(3)}, {"r5", "r3", A(2)}}),
                  with({{"r4", "r1", A(2)}, {"r4", "r2", A(2)}})};
    for (const auto& p : fam.primal) {
        Embedding e = embedding_from_coords(p, xy);
        e.outer = R;
        fam.embeddings.push_back(e);
    }
    fam.stars = {
        build(R, {{"B0", "r1", E(1)}, {"B0", "r2", E(4)}, {"B0", "r3", E(1)}, {"B0", "r4", E(1)}, {"B0", "r5", E(1)}}),
        build(R, {{"B0", "r1", E(1)}, {"B0", "r2", E(4)}, {"B1", "r3", E(1)}, {"B2", "r4", E(1)}, {"B2", "r5", E(1)},
                  {"B0", "B1", E(3)}, {"B1", "B2", E(2)}}),
        build(R, {{"B2", "r1", E(1)}, {"B2", "r5", E(1)}, {"B0", "r2", E(4)}, {"B1", "r3", E(1)}, {"B1", "r4", E(1)},
                  {"B0", "B1", E(2)}, {"B0", "B2", E(2)}})};
    return fam;
}

IdentityReport duality_experiment(const AssociationScheme& s, const std::string& family, double tol) {
    if (family != "pentagon") throw Error("unknown-family", "'" + family + "'");
    checked_ordering(s, {}, "metric");
    checked_ordering(s, {}, "cometric");
    if (s.d < 4) throw Error("precondition", "the pentagon family needs d >= 4");
    DualityFamily fam = pentagon_family();
    EvalContext ctx(s, Method::Eliminate);
    IdentityReport rep;
    rep.suite = "duality";
    std::vector<Tensor> P, S, Dl;
    for (const auto& p : fam.primal) P.push_back(evaluate(p, ctx));
    for (const auto& t : fam.stars) S.push_back(evaluate(t, ctx));
    for (size_t k = 0; k < fam.primal.size(); ++k) Dl.push_back(evaluate(planar_dual(fam.primal[k], fam.embeddings[k]).diag, ctx));
    for (size_t k = 1; k < P.size(); ++k) {
        const std::string a = std::to_string(k + 1);
        rep.add_residual("primal P1 = P" + a, tensor_distance(P[0], P[k]), tol);
        rep.add_residual("dual S1 = S" + a, tensor_distance(S[0], S[k]), tol);
    }
    for (size_t k = 0; k < P.size(); ++k)
        rep.add_residual("planar dual of P" + std::to_string(k + 1) + " = S" + std::to_string(k + 1),
                         tensor_distance(Dl[k], S[k]), tol);
    rep.message = "experimental evidence, not a proof";
    return rep;
}

}  // namespace scaf
