#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "scaf/engine.hpp"
#include "scaf/report.hpp"

namespace scaf {

enum class Rule { SR0, SR0p, SR1, SR1p, SR2, SR2p, SR3, SR3p, SR4, SR4p, SR5, SR6, SR7, SR8, SR9, SR10, SR11 };

const std::vector<Rule>& all_rules();
std::string rule_name(Rule r);  // "SR0'", "SR4", ...
Rule parse_rule(const std::string& s);

struct Locus {
    std::vector<std::string> nodes;
    std::vector<int> edges;
};

// params by rule:
//   SR0   mode "contract" (locus.edges=[e], weight I) | "split" (locus.nodes=[u], locus.edges moved, new_id?)
//   SR0'  mode "insert" (tail, head) | "delete" (locus.edges=[e], weight J)
//   SR1   locus.nodes=[m]                    SR1'  locus.edges=[e1,e2]
//   SR2   locus.edges=[ab,bc,ac]             SR2'  locus.nodes=[x]
//   SR3   locus.nodes=[x] (edges=[p1,p2,out] optional)
//   SR3'  locus.edges=[am,mb,ab]
//   SR4   locus.edges=[j,k,l,m], h, form "I"|"II"
//   SR4'  locus.edges=[SW,WN,SE,EN], l, form "I"|"II"
//   SR5   s, t1, t2, xi [[s_root,t_root],...]
//   SR6   locus.edges=[e], expand "J"|"I"|"A"|"E" or terms [{coef, weight}]
//   SR7   locus.edges=[e]     SR8  locus.nodes=[x]     SR9  locus.nodes=[x]
//   SR10  t1, t2, keep        SR11 s, t1, t2, r, side "right"|"left"
struct RewriteStep {
    Rule rule = Rule::SR7;
    Locus locus;
    nlohmann::json params = nlohmann::json::object();
};

DiagramCombo apply_rule(const Diagram& diag, const RewriteStep& step, const EvalContext& ctx);

// Max-norm of evaluate(diag) minus the evaluated rewrite result.
double verify_step(const Diagram& diag, const RewriteStep& step, const EvalContext& ctx);

// Evaluates a combination, treating the empty one as the zero tensor of the given order.
Tensor evaluate_combo(const DiagramCombo& combo, const EvalContext& ctx, int order);

IdentityReport check_identity(const DiagramCombo& lhs, const DiagramCombo& rhs, const EvalContext& ctx,
                              double tol = -1);

nlohmann::json step_to_json(const RewriteStep& step);
RewriteStep step_from_json(const nlohmann::json& j);

// Chain: {"diagram": dsl, "steps": [{rule, locus, params, term?, residual?}]}.
// Replays every step on the chosen term of the running combination.
struct ChainResult {
    IdentityReport report;
    DiagramCombo final_state;
    nlohmann::json chain;  // the input chain with residuals filled in
};

ChainResult replay_chain(const nlohmann::json& chain, const EvalContext& ctx);

}  // namespace scaf
