#pragma once

// Seeded generators shared by the unit tests and the acceptance binary:
// random diagrams, random well-formed rewrite instances, random fans, and
// plain counting oracles that do not go through the engine.

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "scaf/rewrite.hpp"

namespace scaf::testing {

class Rng {
public:
    explicit Rng(uint64_t seed) : g_(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(g_); }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
    }

private:
    std::mt19937_64 g_;
};

inline WeightRef random_weight(Rng& rng, const AssociationScheme& s, bool integer_only = false) {
    WeightRef w;
    int roll = rng.uniform(0, 9);
    if (integer_only && roll >= 5 && roll <= 7) roll = 0;
    if (roll <= 4)
        w = WeightRef::A(rng.uniform(0, s.d));
    else if (roll <= 7)
        w = WeightRef::E(rng.uniform(0, s.d));
    else if (roll == 8)
        w = WeightRef::Id();
    else
        w = WeightRef::Ones();
    if (rng.coin(0.2)) w = w.transposed();
    if (rng.coin(0.1)) w = w.times(2.0);
    return w;
}

inline WeightRef random_basis(Rng& rng, const AssociationScheme& s) {
    return rng.coin() ? WeightRef::A(rng.uniform(0, s.d)) : WeightRef::E(rng.uniform(0, s.d));
}

// Edge a -> b carrying w, stored in a random orientation.
inline int add_edge(Diagram& d, Rng& rng, const std::string& a, const std::string& b, const WeightRef& w) {
    if (rng.coin())
        d.edges.push_back({a, b, w});
    else
        d.edges.push_back({b, a, w.transposed()});
    return static_cast<int>(d.edges.size()) - 1;
}

inline Diagram random_diagram(Rng& rng, const AssociationScheme& s, bool integer_only = false, int max_nodes = 6) {
    Diagram d;
    const int nn = rng.uniform(2, max_nodes);
    for (int v = 0; v < nn; ++v) d.nodes.push_back("v" + std::to_string(v));
    const int ne = rng.uniform(1, nn + 3);
    for (int e = 0; e < ne; ++e) {
        const std::string& a = rng.pick(d.nodes);
        const std::string& b = rng.coin(0.1) ? a : rng.pick(d.nodes);
        d.edges.push_back({a, b, random_weight(rng, s, integer_only)});
    }
    const int nr = rng.uniform(0, 2);
    for (int r = 0; r < nr; ++r) d.roots.push_back(rng.pick(d.nodes));
    if (rng.coin(0.15)) d.fixed[d.nodes.back()] = rng.uniform(0, s.n - 1);
    return d;
}

// Adds filler nodes, filler edges and roots among the open nodes only, so
// hollow locus nodes keep their degree.
inline void decorate(Diagram& d, Rng& rng, const AssociationScheme& s, std::vector<std::string> open) {
    const int extra = rng.uniform(0, 1);
    for (int k = 0; k < extra; ++k) {
        d.nodes.push_back("z" + std::to_string(k));
        open.push_back(d.nodes.back());
    }
    const int ne = rng.uniform(0, 2);
    for (int e = 0; e < ne; ++e) add_edge(d, rng, rng.pick(open), rng.pick(open), random_weight(rng, s));
    const int nr = rng.uniform(0, std::min<int>(2, static_cast<int>(open.size())));
    std::vector<std::string> pool = open;
    for (int r = 0; r < nr; ++r) {
        int k = rng.uniform(0, static_cast<int>(pool.size()) - 1);
        d.roots.push_back(pool[k]);
        pool.erase(pool.begin() + k);
    }
}

struct RuleInstance {
    Diagram diag;
    RewriteStep step;
};

// Two order-2 diagrams on roots (u, v) with equal scaffolds.
inline std::pair<Diagram, Diagram> equal_pair(Rng& rng, const AssociationScheme& s) {
    Diagram t1, t2;
    t1.nodes = t2.nodes = {"u", "v"};
    t1.roots = t2.roots = {"u", "v"};
    const WeightRef w1 = random_basis(rng, s), w2 = random_basis(rng, s);
    switch (rng.uniform(0, 2)) {
        case 0:
            t1.nodes.push_back("m");
            t1.edges = {{"u", "m", w1}, {"m", "v", w2}};
            t2.edges = {{"u", "v", WeightRef::mul(w1, w2)}};
            break;
        case 1:
            t1.edges = {{"u", "v", w1}, {"u", "v", w2}};
            t2.edges = {{"u", "v", WeightRef::had(w1, w2)}};
            break;
        default:
            t1.edges = {{"u", "v", w1}};
            t2.edges = {{"v", "u", w1.transposed()}};
    }
    return {t1, t2};
}

inline std::vector<std::array<int, 3>> zero_p(const AssociationScheme& s) {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i <= s.d; ++i)
        for (int j = 0; j <= s.d; ++j)
            for (int k = 0; k <= s.d; ++k)
                if (s.p_zero(i, j, k)) out.push_back({i, j, k});
    return out;
}

inline std::vector<std::array<int, 3>> zero_q(const AssociationScheme& s) {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i <= s.d; ++i)
        for (int j = 0; j <= s.d; ++j)
            for (int k = 0; k <= s.d; ++k)
                if (s.q_zero(i, j, k)) out.push_back({i, j, k});
    return out;
}

// Random instance satisfying the structural and parameter preconditions of r.
// Assumes a symmetric scheme.
inline RuleInstance random_instance(Rule r, Rng& rng, const AssociationScheme& s) {
    RuleInstance in;
    Diagram& d = in.diag;
    RewriteStep& st = in.step;
    st.rule = r;
    auto nodes = [&](std::initializer_list<const char*> ids) {
        for (const char* id : ids) d.nodes.push_back(id);
    };
    switch (r) {
        case Rule::SR0:
            nodes({"a", "b", "c"});
            if (rng.coin()) {
                st.locus.edges = {add_edge(d, rng, "a", "b", WeightRef::Id().times(rng.coin() ? 1.0 : 3.0))};
                add_edge(d, rng, "b", "c", random_weight(rng, s));
                decorate(d, rng, s, {"a", "b", "c"});
                st.params["mode"] = "contract";
            } else {
                add_edge(d, rng, "a", "b", random_weight(rng, s));
                add_edge(d, rng, "a", "c", random_weight(rng, s));
                decorate(d, rng, s, {"a", "b", "c"});
                st.locus.nodes = {"a"};
                for (int e : d.incident("a"))
                    if (rng.coin()) st.locus.edges.push_back(e);
                st.params["mode"] = "split";
            }
            break;
        case Rule::SR0p:
            nodes({"a", "b"});
            add_edge(d, rng, "a", "b", random_weight(rng, s));
            if (rng.coin()) {
                decorate(d, rng, s, {"a", "b"});
                st.params = {{"mode", "insert"}, {"tail", rng.coin() ? "a" : "b"}, {"head", "b"}};
            } else {
                st.locus.edges = {add_edge(d, rng, "b", "a", WeightRef::Ones().times(rng.coin() ? 1.0 : 0.5))};
                decorate(d, rng, s, {"a", "b"});
                st.params["mode"] = "delete";
            }
            break;
        case Rule::SR1:
            nodes({"a", "m", "b"});
            d.edges.push_back({"a", "m", random_weight(rng, s)});
            d.edges.push_back({"m", "b", random_weight(rng, s)});
            decorate(d, rng, s, {"a", "b"});
            st.locus.nodes = {"m"};
            break;
        case Rule::SR1p: {
            nodes({"a", "b"});
            int e1 = add_edge(d, rng, "a", "b", random_weight(rng, s));
            int e2 = add_edge(d, rng, "a", "b", random_weight(rng, s));
            decorate(d, rng, s, {"a", "b"});
            st.locus.edges = {e1, e2};
            break;
        }
        case Rule::SR2: {
            auto t = rng.pick(zero_p(s));
            nodes({"a", "b", "c"});
            int e1 = add_edge(d, rng, "a", "b", WeightRef::A(t[0]));
            int e2 = add_edge(d, rng, "b", "c", WeightRef::A(t[1]));
            int e3 = add_edge(d, rng, "a", "c", WeightRef::A(t[2]));
            decorate(d, rng, s, {"a", "b", "c"});
            st.locus.edges = {e1, e2, e3};
            break;
        }
        case Rule::SR2p: {
            auto t = rng.pick(zero_q(s));
            nodes({"x", "a", "b", "c"});
            add_edge(d, rng, "x", "a", WeightRef::E(t[0]));
            add_edge(d, rng, "x", "b", WeightRef::E(t[1]));
            add_edge(d, rng, "x", "c", WeightRef::E(t[2]));
            decorate(d, rng, s, {"a", "b", "c"});
            st.locus.nodes = {"x"};
            break;
        }
        case Rule::SR3: {
            nodes({"x", "a", "c"});
            int e1 = add_edge(d, rng, "a", "x", WeightRef::E(rng.uniform(0, s.d)));
            int e2 = add_edge(d, rng, "a", "x", WeightRef::E(rng.uniform(0, s.d)));
            int e3 = add_edge(d, rng, "x", "c", WeightRef::E(rng.uniform(0, s.d)));
            decorate(d, rng, s, {"a", "c"});
            st.locus.nodes = {"x"};
            st.locus.edges = {e1, e2, e3};
            break;
        }
        case Rule::SR3p: {
            nodes({"a", "m", "b"});
            int e1 = add_edge(d, rng, "a", "m", WeightRef::A(rng.uniform(0, s.d)));
            int e2 = add_edge(d, rng, "m", "b", WeightRef::A(rng.uniform(0, s.d)));
            int e3 = add_edge(d, rng, "a", "b", WeightRef::A(rng.uniform(0, s.d)));
            decorate(d, rng, s, {"a", "b"});
            st.locus.edges = {e1, e2, e3};
            break;
        }
        case Rule::SR4: {
            std::vector<std::array<int, 5>> ok;
            for (int j = 0; j <= s.d; ++j)
                for (int k = 0; k <= s.d; ++k)
                    for (int l = 0; l <= s.d; ++l)
                        for (int m = 0; m <= s.d; ++m)
                            for (int h = 0; h <= s.d; ++h) {
                                bool good = true;
                                for (int f = 0; f <= s.d; ++f)
                                    good = good && (f == h || s.q_zero(j, k, f) || s.q_zero(l, m, f));
                                if (good) ok.push_back({j, k, l, m, h});
                            }
            auto t = rng.pick(ok);
            const bool form1 = rng.coin();
            nodes({"x", "c0", "c1", "c2"});
            const std::string c3 = form1 ? "c2" : "c3";
            if (!form1) d.nodes.push_back("c3");
            int e0 = add_edge(d, rng, "c0", "x", WeightRef::E(t[0]));
            int e1 = add_edge(d, rng, "c1", "x", WeightRef::E(t[1]));
            int e2 = add_edge(d, rng, "x", "c2", WeightRef::E(t[2]));
            int e3 = add_edge(d, rng, "x", c3, WeightRef::E(t[3]));
            std::vector<std::string> open = {"c0", "c1", "c2"};
            if (!form1) open.push_back("c3");
            decorate(d, rng, s, open);
            st.locus.edges = {e0, e1, e2, e3};
            st.params = {{"h", t[4]}, {"form", form1 ? "I" : "II"}};
            break;
        }
        case Rule::SR4p: {
            std::vector<std::array<int, 5>> ok;
            for (int h = 0; h <= s.d; ++h)
                for (int i = 0; i <= s.d; ++i)
                    for (int j = 0; j <= s.d; ++j)
                        for (int k = 0; k <= s.d; ++k)
                            for (int l = 0; l <= s.d; ++l) {
                                bool good = true;
                                for (int f = 0; f <= s.d; ++f)
                                    good = good && (f == l || s.p_zero(h, i, f) || s.p_zero(j, k, f));
                                if (good) ok.push_back({h, i, j, k, l});
                            }
            auto t = rng.pick(ok);
            nodes({"S", "W", "N", "E"});
            int e0 = add_edge(d, rng, "S", "W", WeightRef::A(t[0]));
            int e1 = add_edge(d, rng, "W", "N", WeightRef::A(t[1]));
            int e2 = add_edge(d, rng, "S", "E", WeightRef::A(t[2]));
            int e3 = add_edge(d, rng, "E", "N", WeightRef::A(t[3]));
            const bool form1 = rng.coin();
            std::vector<std::string> open = {"S", "W", "N"};
            if (!form1) open.push_back("E");
            decorate(d, rng, s, open);
            st.locus.edges = {e0, e1, e2, e3};
            st.params = {{"l", t[4]}, {"form", form1 ? "I" : "II"}};
            break;
        }
        case Rule::SR5: {
            auto [t1, t2] = equal_pair(rng, s);
            Diagram sd;
            sd.nodes = {"sa", "sb", "sc"};
            add_edge(sd, rng, "sa", "sc", random_weight(rng, s));
            add_edge(sd, rng, "sb", "sc", random_weight(rng, s));
            sd.roots = {"sa", "sb"};
            nlohmann::json xi = nlohmann::json::array({nlohmann::json::array({"sa", "u"})});
            if (rng.coin()) xi.push_back({"sb", "v"});
            std::vector<std::pair<std::string, std::string>> pairs;
            for (const auto& p : xi) pairs.emplace_back(p[0], p[1]);
            d = glue(sd, t1, pairs);
            st.params = {{"s", sd.to_dsl()}, {"t1", t1.to_dsl()}, {"t2", t2.to_dsl()}, {"xi", xi}};
            break;
        }
        case Rule::SR6: {
            nodes({"a", "b"});
            static const std::vector<std::pair<WeightRef::Kind, std::string>> moves = {
                {WeightRef::Kind::J, "A"}, {WeightRef::Kind::J, "E"}, {WeightRef::Kind::I, "E"},
                {WeightRef::Kind::I, "A"}, {WeightRef::Kind::A, "E"}, {WeightRef::Kind::E, "A"}};
            auto mv = rng.pick(moves);
            WeightRef w = WeightRef::basic(mv.first, rng.uniform(0, s.d));
            if (w.kind == WeightRef::Kind::I || w.kind == WeightRef::Kind::J) w.index = 0;
            if (rng.coin(0.3)) w = w.times(2.0);
            int e = add_edge(d, rng, "a", "b", w);
            decorate(d, rng, s, {"a", "b"});
            st.locus.edges = {e};
            st.params["expand"] = mv.second;
            break;
        }
        case Rule::SR7:
            d = random_diagram(rng, s);
            st.locus.edges = {rng.uniform(0, static_cast<int>(d.edges.size()) - 1)};
            break;
        case Rule::SR8:
            nodes({"a", "x", "b"});
            d.edges.push_back({"a", "x", random_weight(rng, s)});
            d.edges.push_back({"x", "b", random_weight(rng, s)});
            decorate(d, rng, s, {"a", "b"});
            st.locus.nodes = {"x"};
            break;
        case Rule::SR9:
            nodes({"a", "x"});
            add_edge(d, rng, "a", "x", random_weight(rng, s));
            decorate(d, rng, s, {"a"});
            st.locus.nodes = {"x"};
            break;
        case Rule::SR10: {
            auto [t1, t2] = equal_pair(rng, s);
            std::vector<int> keep;
            for (int p = 0; p < 2; ++p)
                if (rng.coin()) keep.push_back(p);
            d = hollow(t1, keep);
            st.params = {{"t1", t1.to_dsl()}, {"t2", t2.to_dsl()}, {"keep", keep}};
            break;
        }
        case Rule::SR11: {
            auto [t1, t2] = equal_pair(rng, s);
            Diagram sd;
            sd.nodes = {"p", "q"};
            sd.roots = {"p", "q"};
            add_edge(sd, rng, "p", "q", random_weight(rng, s));
            const int k = rng.uniform(0, 2);
            const bool left = rng.coin();
            d = left ? bilinear_pair(t1, sd, k) : bilinear_pair(sd, t1, k);
            st.params = {{"s", sd.to_dsl()}, {"t1", t1.to_dsl()}, {"t2", t2.to_dsl()}, {"r", k},
                         {"side", left ? "left" : "right"}};
            break;
        }
    }
    return in;
}

inline Diagram random_fan(Rng& rng, const AssociationScheme& s, int max_len = 3) {
    Fan f;
    const int l = rng.uniform(0, max_len);
    for (int h = 0; h < l; ++h) f.path.push_back(random_basis(rng, s));
    for (int h = 0; h <= l; ++h) f.spokes.push_back(random_basis(rng, s));
    return make_fan(f);
}

// Exact matrix power trace, used as a closed-walk oracle.
inline BigInt trace_power(const IntMatrix& a, int k) {
    IntMatrix p = IntMatrix::identity(a.n());
    for (int t = 0; t < k; ++t) p = mat_product(p, a);
    BigInt tr = 0;
    for (int x = 0; x < a.n(); ++x) tr += p(x, x);
    return tr;
}

// Ordered cliques of size k by direct enumeration.
inline long long ordered_cliques(const IntMatrix& a, int k) {
    const int n = a.n();
    long long count = 0;
    std::vector<int> pick;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(pick.size()) == k) {
            ++count;
            return;
        }
        for (int x = 0; x < n; ++x) {
            bool ok = true;
            for (int y : pick) ok = ok && a(x, y) == 1;
            if (!ok) continue;
            pick.push_back(x);
            self(self);
            pick.pop_back();
        }
    };
    rec(rec);
    return count;
}

}  // namespace scaf::testing
