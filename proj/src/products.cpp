// Structural operations on diagrams: glue, order reduction, pairing, node and
// edge actions, fans and the ternary template.

#include <algorithm>
#include <set>

#include "scaf/engine.hpp"

namespace scaf {

Diagram glue(const Diagram& s, const Diagram& t, const std::vector<std::pair<std::string, std::string>>& xi) {
    std::map<std::string, std::string> ren;
    std::set<std::string> images;
    for (const auto& [a, b] : xi) {
        if (!s.is_root(a)) throw Error("bad-pairing", "'" + a + "' is not a root of the left diagram");
        if (!t.is_root(b)) throw Error("bad-pairing", "'" + b + "' is not a root of the right diagram");
        if (ren.count(a) || images.count(b)) throw Error("bad-pairing", "pairing is not a bijection");
        ren[a] = b;
        images.insert(b);
    }
    Diagram g = t;
    std::set<std::string> taken(t.nodes.begin(), t.nodes.end());
    for (const auto& v : s.nodes)
        if (!ren.count(v)) taken.insert(v);
    for (const auto& v : s.nodes) {
        if (ren.count(v)) continue;
        std::string id = v;
        if (t.has_node(id)) {
            do id += "'";
            while (taken.count(id));
            taken.insert(id);
        }
        ren[v] = id;
        g.nodes.push_back(id);
    }
    for (const auto& e : s.edges) g.edges.push_back({ren[e.tail], ren[e.head], e.w});
    for (const auto& [id, v] : s.fixed) {
        auto it = g.fixed.find(ren[id]);
        if (it != g.fixed.end() && it->second != v)
            throw Error("bad-pairing", "identified nodes are fixed to different vertices");
        g.fixed[ren[id]] = v;
    }
    g.roots.clear();
    for (const auto& r : s.roots) g.roots.push_back(ren[r]);
    for (const auto& r : t.roots)
        if (!images.count(r)) g.roots.push_back(r);
    return g;
}

Diagram hollow(const Diagram& d, const std::vector<int>& keep) {
    std::vector<int> k = keep;
    std::sort(k.begin(), k.end());
    if (std::adjacent_find(k.begin(), k.end()) != k.end()) throw Error("bad-root", "repeated root position");
    Diagram h = d;
    h.roots.clear();
    for (int p : k) {
        if (p < 0 || p >= d.order()) throw Error("bad-root", "position " + std::to_string(p));
        h.roots.push_back(d.roots[p]);
    }
    return h;
}

Diagram bilinear_pair(const Diagram& s, const Diagram& t, int r) {
    if (r < 0 || r > s.order() || r > t.order())
        throw Error("arity", "cannot pair " + std::to_string(r) + " roots of orders " + std::to_string(s.order()) +
                                 " and " + std::to_string(t.order()));
    Diagram g;
    for (const auto& v : s.nodes) g.nodes.push_back("L." + v);
    for (const auto& v : t.nodes) g.nodes.push_back("R." + v);
    for (const auto& e : s.edges) g.edges.push_back({"L." + e.tail, "L." + e.head, e.w.conjugated()});
    for (const auto& e : t.edges) g.edges.push_back({"R." + e.tail, "R." + e.head, e.w});
    for (int k = 0; k < r; ++k) g.edges.push_back({"L." + s.roots[k], "R." + t.roots[k], WeightRef::Id()});
    for (const auto& [id, v] : s.fixed) g.fixed["L." + id] = v;
    for (const auto& [id, v] : t.fixed) g.fixed["R." + id] = v;
    for (int k = r; k < s.order(); ++k) g.roots.push_back("L." + s.roots[k]);
    for (int k = r; k < t.order(); ++k) g.roots.push_back("R." + t.roots[k]);
    return g;
}

Diagram jaeger_node(const Diagram& d, int i, const WeightRef& w) {
    if (i < 0 || i >= d.order()) throw Error("bad-root", "position " + std::to_string(i));
    Diagram g = d;
    std::string id = g.fresh_id("u" + std::to_string(i));
    g.nodes.push_back(id);
    g.edges.push_back({id, d.roots[i], w});
    g.roots[i] = id;
    return g;
}

Diagram jaeger_edge(const Diagram& d, int i, int j, const WeightRef& w) {
    if (i < 0 || i >= d.order()) throw Error("bad-root", "position " + std::to_string(i));
    if (j < 0 || j >= d.order()) throw Error("bad-root", "position " + std::to_string(j));
    Diagram g = d;
    g.edges.push_back({d.roots[i], d.roots[j], w});
    return g;
}

Diagram make_fan(const Fan& f) {
    if (f.spokes.size() != f.path.size() + 1) throw Error("not-fan", "need one more spoke than path edges");
    Diagram g;
    const size_t l = f.path.size();
    for (size_t h = 0; h <= l; ++h) g.nodes.push_back("b" + std::to_string(h));
    g.nodes.push_back("a");
    for (size_t h = 1; h <= l; ++h) g.edges.push_back({"b" + std::to_string(h - 1), "b" + std::to_string(h), f.path[h - 1]});
    for (size_t h = 0; h <= l; ++h) g.edges.push_back({"a", "b" + std::to_string(h), f.spokes[h]});
    g.roots = {"b0", "a", "b" + std::to_string(l)};
    return g;
}

Fan read_fan(const Diagram& d) {
    if (d.order() != 3) throw Error("not-fan", "a fan has exactly three roots");
    if (!d.fixed.empty()) throw Error("not-fan", "fixed nodes");
    const std::string& b0 = d.roots[0];
    const std::string& a = d.roots[1];
    const std::string& bl = d.roots[2];
    if (a == b0 || a == bl) throw Error("not-fan", "apex coincides with a path end");
    std::map<std::string, int> spoke;
    std::vector<bool> used(d.edges.size(), false);
    for (size_t e = 0; e < d.edges.size(); ++e) {
        const auto& ed = d.edges[e];
        if (ed.head == a) throw Error("not-fan", "edge into the apex");
        if (ed.tail == a) {
            if (spoke.count(ed.head)) throw Error("not-fan", "two spokes to '" + ed.head + "'");
            spoke[ed.head] = static_cast<int>(e);
            used[e] = true;
        }
    }
    Fan f;
    std::string cur = b0;
    std::set<std::string> seen{b0};
    while (true) {
        if (!spoke.count(cur)) throw Error("not-fan", "path node '" + cur + "' has no spoke");
        f.spokes.push_back(d.edges[spoke[cur]].w);
        if (cur == bl && (f.path.size() > 0 || b0 == bl)) {
            bool more = false;
            for (size_t e = 0; e < d.edges.size(); ++e)
                if (!used[e] && d.edges[e].tail == cur) more = true;
            if (!more) break;
        }
        int next = -1;
        for (size_t e = 0; e < d.edges.size(); ++e)
            if (!used[e] && d.edges[e].tail == cur) {
                if (next >= 0) throw Error("not-fan", "path branches at '" + cur + "'");
                next = static_cast<int>(e);
            }
        if (next < 0) throw Error("not-fan", "path stops at '" + cur + "'");
        used[next] = true;
        f.path.push_back(d.edges[next].w);
        cur = d.edges[next].head;
        if (!seen.insert(cur).second) throw Error("not-fan", "path revisits '" + cur + "'");
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) throw Error("not-fan", "edges off the fan");
    if (seen.size() + 1 != d.nodes.size() || spoke.size() != seen.size()) throw Error("not-fan", "extra nodes or spokes");
    return f;
}

Diagram terwilliger_star(const Diagram& s, const Diagram& t) {
    Fan fs = read_fan(s), ft = read_fan(t);
    Fan g;
    g.path = fs.path;
    g.path.insert(g.path.end(), ft.path.begin(), ft.path.end());
    g.spokes.assign(fs.spokes.begin(), fs.spokes.end() - 1);
    g.spokes.push_back(WeightRef::had(fs.spokes.back(), ft.spokes.front()));
    g.spokes.insert(g.spokes.end(), ft.spokes.begin() + 1, ft.spokes.end());
    return make_fan(g);
}

std::vector<CMatrix> xi_map(const Diagram& fan, const EvalContext& ctx) {
    Fan f = read_fan(fan);
    const int n = ctx.n();
    auto mat = [&](const WeightRef& w) {
        auto r = resolve_weight(w, ctx);
        return r.exact ? r.ints.to_complex() : r.values;
    };
    std::vector<CMatrix> path, spokes;
    for (const auto& w : f.path) path.push_back(mat(w));
    for (const auto& w : f.spokes) spokes.push_back(mat(w));
    std::vector<CMatrix> out;
    for (int x = 0; x < n; ++x) {
        CMatrix m = spokes[0].row(x).transpose().asDiagonal();
        for (size_t h = 0; h < path.size(); ++h) m = (m * path[h]) * spokes[h + 1].row(x).transpose().asDiagonal();
        out.push_back(m);
    }
    return out;
}

Diagram ternary_mesner(const std::vector<WeightRef>& L, const std::vector<WeightRef>& M,
                       const std::vector<WeightRef>& N) {
    if (L.size() != 3 || M.size() != 3 || N.size() != 3) throw Error("arity", "ternary product takes 3+3+3 weights");
    Diagram g;
    g.nodes = {"r1", "r2", "r3", "hA", "hB", "hC"};
    g.roots = {"r1", "r2", "r3"};
    g.edges = {{"hA", "r2", L[0]}, {"r1", "hA", L[1]}, {"r1", "r2", L[2]},
               {"r3", "r2", M[0]}, {"hB", "r3", M[1]}, {"hB", "r2", M[2]},
               {"r3", "hC", N[0]}, {"r1", "r3", N[1]}, {"r1", "hC", N[2]},
               {"hB", "hC", WeightRef::Id()}, {"hC", "hA", WeightRef::Id()}, {"hA", "hB", WeightRef::Id()}};
    return g;
}

Diagram ternary_mesner_collapsed(const std::vector<WeightRef>& L, const std::vector<WeightRef>& M,
                                 const std::vector<WeightRef>& N) {
    if (L.size() != 3 || M.size() != 3 || N.size() != 3) throw Error("arity", "ternary product takes 3+3+3 weights");
    Diagram g;
    g.nodes = {"D1", "D2", "D3", "D4"};
    g.roots = {"D1", "D2", "D3"};
    g.edges = {{"D4", "D2", L[0]}, {"D1", "D4", L[1]}, {"D1", "D2", L[2]},
               {"D3", "D2", M[0]}, {"D4", "D3", M[1]}, {"D4", "D2", M[2]},
               {"D3", "D4", N[0]}, {"D1", "D3", N[1]}, {"D1", "D4", N[2]}};
    return g;
}

nlohmann::ordered_json tensor_json(const Tensor& t, const Tolerance& tol) {
    using json = nlohmann::ordered_json;
    auto num = [](const BigInt& x) -> json {
        if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
            return x.convert_to<long long>();
        return x.str();
    };
    if (t.order == 0) {
        if (t.exact) return {{"scalar", {{"re", num(t.exact_data[0])}, {"im", 0}}}};
        return {{"scalar", {{"re", round12(t.data[0].real())}, {"im", round12(t.data[0].imag())}}}};
    }
    json entries = json::array();
    for (size_t f = 0; f < t.data.size(); ++f) {
        if (std::abs(t.data[f]) <= tol.abs_tol) continue;
        json e;
        e["idx"] = t.unflat(f);
        if (t.exact) {
            e["re"] = num(t.exact_data[f]);
            e["im"] = 0;
        } else {
            e["re"] = round12(t.data[f].real());
            e["im"] = round12(t.data[f].imag());
        }
        entries.push_back(e);
    }
    return {{"n", t.n}, {"order", t.order}, {"exact", t.exact}, {"entries", entries}};
}

}  // namespace scaf
