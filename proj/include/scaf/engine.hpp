#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "scaf/algebra.hpp"
#include "scaf/schemes.hpp"

namespace scaf {

// Symbolic edge weight. The value is scalar * conj?(transpose?(base)).
struct WeightRef {
    enum class Kind { A, E, I, J, Custom, Mul, Had };

    Kind kind = Kind::I;
    int index = 0;
    std::string name;
    bool transpose = false;
    bool conjugate = false;
    cplx scalar{1.0, 0.0};
    std::vector<WeightRef> args;  // operands of Mul / Had

    static WeightRef basic(Kind k, int index = 0) {
        WeightRef w;
        w.kind = k;
        w.index = index;
        return w;
    }
    static WeightRef A(int i) { return basic(Kind::A, i); }
    static WeightRef E(int j) { return basic(Kind::E, j); }
    static WeightRef Id() { return basic(Kind::I); }
    static WeightRef Ones() { return basic(Kind::J); }
    static WeightRef custom(std::string name) {
        WeightRef w = basic(Kind::Custom);
        w.name = std::move(name);
        return w;
    }
    static WeightRef mul(WeightRef a, WeightRef b);
    static WeightRef had(WeightRef a, WeightRef b);

    WeightRef transposed() const;
    WeightRef conjugated() const;  // entrywise conjugate, scalar included
    WeightRef times(cplx c) const;

    bool is_basis() const { return kind == Kind::A || kind == Kind::E; }
    std::string str() const;
    bool operator==(const WeightRef& o) const { return str() == o.str(); }
};

WeightRef parse_weight(const std::string& text);

struct Edge {
    std::string tail;
    std::string head;
    WeightRef w;
};

// Rooted edge-weighted digraph. Root order is tensor axis order; a node may
// occur several times among the roots.
struct Diagram {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::vector<std::string> roots;
    std::map<std::string, int> fixed;

    bool has_node(const std::string& id) const;
    void add_node(const std::string& id);
    void add_edge(const std::string& tail, const std::string& head, WeightRef w);
    bool is_root(const std::string& id) const;
    std::vector<int> incident(const std::string& id) const;
    std::string fresh_id(const std::string& stem) const;
    void rename(const std::string& from, const std::string& to);
    void remove_node(const std::string& id);  // also drops its edges
    void remove_edges(std::vector<int> idx);
    int order() const { return static_cast<int>(roots.size()); }

    std::string to_dsl() const;
    // Deterministic text with sorted nodes and edges; used for structural matching.
    std::string canonical() const;
};

Diagram parse_diagram(const std::string& text);

struct Term {
    cplx coef{1.0, 0.0};
    Diagram diag;
};

struct DiagramCombo {
    std::vector<Term> terms;

    DiagramCombo() = default;
    DiagramCombo(std::initializer_list<Term> t) : terms(t) {}
    static DiagramCombo single(Diagram d, cplx c = 1.0) { return DiagramCombo{Term{c, std::move(d)}}; }
    bool empty() const { return terms.empty(); }
};

enum class Method { Brute, Eliminate, Auto };

struct CustomMatrix {
    bool exact = false;
    IntMatrix ints;
    CMatrix values;
};

struct EvalContext {
    const AssociationScheme* scheme = nullptr;
    std::map<std::string, CustomMatrix> custom;
    Tolerance tol;
    Method method = Method::Auto;
    int node_cap = 8;

    EvalContext() = default;
    explicit EvalContext(const AssociationScheme& s, Method m = Method::Auto) : scheme(&s), method(m) {}
    int n() const;
    void add_custom(const std::string& name, const CMatrix& m);
    void add_custom(const std::string& name, const IntMatrix& m);
};

inline constexpr double kAutoBruteLimit = 1e9;

// Weight resolved to a concrete matrix; exact when integral.
struct ResolvedWeight {
    bool exact = false;
    IntMatrix ints;
    CMatrix values;
};

ResolvedWeight resolve_weight(const WeightRef& w, const EvalContext& ctx);

Tensor evaluate(const Diagram& diag, const EvalContext& ctx);
Tensor evaluate(const DiagramCombo& combo, const EvalContext& ctx);
Tensor evaluate_brute(const Diagram& diag, const EvalContext& ctx);
Tensor evaluate_eliminate(const Diagram& diag, const EvalContext& ctx);

struct EliminationPlan {
    std::vector<std::string> order;
    double cost = 0;     // sum over steps of n^(bag size)
    int max_bag = 0;     // largest {v} + neighbours
    int max_factor = 0;  // largest intermediate factor (neighbours only)
};

EliminationPlan elimination_order(const Diagram& diag, int n);

// xi pairs a root of s with a root of t; identified nodes keep t's ids.
Diagram glue(const Diagram& s, const Diagram& t, const std::vector<std::pair<std::string, std::string>>& xi);
Diagram hollow(const Diagram& diag, const std::vector<int>& keep);
Diagram bilinear_pair(const Diagram& s, const Diagram& t, int r);
Diagram jaeger_node(const Diagram& diag, int i, const WeightRef& w);
Diagram jaeger_edge(const Diagram& diag, int i, int j, const WeightRef& w);

// Fan: roots (b0, a, bl), path b0 -> b1 -> ... -> bl with weights M_1..M_l,
// spokes a -> b_h with weights N_0..N_l.
struct Fan {
    std::vector<WeightRef> path;
    std::vector<WeightRef> spokes;
};

Diagram make_fan(const Fan& f);
Fan read_fan(const Diagram& diag);
Diagram terwilliger_star(const Diagram& s, const Diagram& t);
std::vector<CMatrix> xi_map(const Diagram& fan, const EvalContext& ctx);

// Order-3 template with roots r1, r2, r3 and weights L, M, N (three each).
Diagram ternary_mesner(const std::vector<WeightRef>& L, const std::vector<WeightRef>& M,
                       const std::vector<WeightRef>& N);
Diagram ternary_mesner_collapsed(const std::vector<WeightRef>& L, const std::vector<WeightRef>& M,
                                 const std::vector<WeightRef>& N);

nlohmann::ordered_json tensor_json(const Tensor& t, const Tolerance& tol);

}  // namespace scaf
