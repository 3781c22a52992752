// Helpers shared by the analysis sources.
#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "scaf/analysis.hpp"

namespace scaf::detail {

struct Spec {
    std::string tail, head;
    WeightRef w;
};

// Nodes are the roots, then the extra nodes, then edge endpoints in order of appearance.
inline Diagram build(const std::vector<std::string>& roots, const std::vector<Spec>& edges,
                     const std::vector<std::string>& extra = {}) {
    Diagram d;
    auto touch = [&](const std::string& v) {
        if (!d.has_node(v)) d.nodes.push_back(v);
    };
    for (const auto& r : roots) touch(r);
    for (const auto& v : extra) touch(v);
    for (const auto& e : edges) {
        touch(e.tail);
        touch(e.head);
        d.edges.push_back({e.tail, e.head, e.w});
    }
    d.roots = roots;
    return d;
}

inline WeightRef A(int i) { return WeightRef::A(i); }
inline WeightRef E(int j) { return WeightRef::E(j); }

inline double scalar_of(const Diagram& d, const EvalContext& ctx) { return evaluate(d, ctx).scalar().real(); }

inline std::vector<int> natural_order(const AssociationScheme& s) {
    std::vector<int> o(s.dim());
    for (int k = 0; k < s.dim(); ++k) o[k] = k;
    return o;
}

}  // namespace scaf::detail
