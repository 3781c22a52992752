// scaffold: command-line front end for schemes, evaluation, rewriting and
// verification suites.
//
// Exit status: 0 pass, 1 identity failure, 2 input or hypothesis error, 3 resource cap.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "scaf/analysis.hpp"
#include "scaf/engine.hpp"
#include "scaf/rewrite.hpp"
#include "scaf/schemes.hpp"

namespace {

using namespace scaf;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<int> parse_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw Error("syntax", "bad integer '" + tok + "' in list");
        }
    }
    return out;
}

// Plain whitespace-separated square matrix of real numbers.
CMatrix read_matrix(const std::string& path) {
    std::stringstream ss(slurp(path));
    std::vector<double> vals;
    double x;
    while (ss >> x) vals.push_back(x);
    if (!ss.eof()) throw Error("syntax", "non-numeric entry in '" + path + "'");
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(vals.size()))));
    if (n == 0 || static_cast<size_t>(n) * n != vals.size()) throw Error("shape", "'" + path + "' is not square");
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = vals[static_cast<size_t>(r) * n + c];
    return m;
}

void add_customs(EvalContext& ctx, const std::vector<std::string>& customs) {
    for (const auto& spec : customs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw Error("syntax", "custom weight must be name=path");
        CMatrix m = read_matrix(spec.substr(eq + 1));
        bool integral = true;
        for (Eigen::Index k = 0; k < m.size(); ++k)
            integral = integral && m.data()[k].real() == std::round(m.data()[k].real());
        if (integral) {
            IntMatrix im(static_cast<int>(m.rows()));
            for (int r = 0; r < im.n(); ++r)
                for (int c = 0; c < im.n(); ++c) im(r, c) = static_cast<long long>(m(r, c).real());
            ctx.add_custom(spec.substr(0, eq), im);
        } else {
            ctx.add_custom(spec.substr(0, eq), m);
        }
    }
}

Method parse_method(const std::string& m) {
    if (m == "brute") return Method::Brute;
    if (m == "eliminate") return Method::Eliminate;
    if (m == "auto") return Method::Auto;
    throw Error("syntax", "unknown method '" + m + "'");
}

int emit(const IdentityReport& rep, bool json) {
    if (json) std::cout << rep.to_json().dump(2) << "\n";
    else std::cout << rep.table();
    return rep.exit_code();
}

struct Options {
    std::string scheme = "petersen";
    std::string spec, diagram, chain, suite, method = "auto", embedding, ordering, mode = "triply",
                shape = "triangle", family = "pentagon";
    std::vector<std::string> customs;
    double tol = -1;
    uint64_t seed = 1;
    bool json = false, check = false, exhaustive = false, normalized = false;
    int j = -1, h = -1, i = -1, n = 5;
};

Tolerance tolerance(const Options& o) {
    Tolerance t;
    if (o.tol > 0) t.abs_tol = o.tol;
    return t;
}

int cmd_scheme(const Options& o) {
    AssociationScheme s = scheme_from_spec(o.spec, {}, o.seed);
    if (o.json) std::cout << scheme_report(s).dump(2) << "\n";
    else std::cout << scheme_report_text(s);
    return 0;
}

int cmd_eval(const Options& o) {
    AssociationScheme s = scheme_from_spec(o.scheme, {}, o.seed);
    Diagram d = parse_diagram(slurp(o.diagram));
    EvalContext ctx(s, parse_method(o.method));
    ctx.tol = tolerance(o);
    add_customs(ctx, o.customs);
    Tensor t = evaluate(d, ctx);
    nlohmann::ordered_json out = tensor_json(t, ctx.tol);
    int code = 0;
    if (o.check) {
        EvalContext b = ctx, e = ctx;
        b.method = Method::Brute;
        e.method = Method::Eliminate;
        double dis = tensor_distance(evaluate(d, b), evaluate(d, e));
        out["check"] = {{"disagreement", round12(dis)}, {"pass", dis <= ctx.tol.abs_tol}};
        if (dis > ctx.tol.abs_tol) code = 1;
    }
    std::cout << out.dump(2) << "\n";
    return code;
}

int cmd_rewrite(const Options& o) {
    AssociationScheme s = scheme_from_spec(o.scheme, {}, o.seed);
    EvalContext ctx(s);
    add_customs(ctx, o.customs);
    nlohmann::json chain;
    try {
        chain = nlohmann::json::parse(slurp(o.chain));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("syntax", e.what());
    }
    ChainResult res = replay_chain(chain, ctx);
    if (o.json) {
        nlohmann::ordered_json out;
        out["report"] = res.report.to_json();
        out["chain"] = res.chain;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << res.report.table();
    }
    return res.report.exit_code();
}

IdentityReport info_report(const std::string& suite, const std::string& message) {
    IdentityReport r;
    r.suite = suite;
    r.message = message;
    return r;
}

int cmd_verify(const Options& o) {
    const double tol = o.tol > 0 ? o.tol : 1e-8;
    const std::string& v = o.suite;
    if (v == "spinmodel") {
        SpinModel m = cyclic_spin_model(o.n, o.normalized);
        return emit(spin_model_check(o.n, m.Wp, m.Wm, o.tol > 0 ? o.tol : 1e-10).report(), o.json);
    }
    AssociationScheme s = scheme_from_spec(o.scheme, {}, o.seed);
    std::vector<int> ord = parse_list(o.ordering);
    if (v == "appendixB" || v == "basic_lemmas" || v == "terwilliger_grams") {
        SuiteOptions so;
        so.tol = tol;
        so.exhaustive = o.exhaustive;
        so.seed = o.seed;
        return emit(identity_suite(s, v, so), o.json);
    }
    if (v == "dickie") {
        if (o.j < 0) throw Error("syntax", "dickie needs --j");
        return emit(proof_chain_dickie(s, o.j, ord, tol), o.json);
    }
    if (v == "suzuki") {
        if (o.h >= 0 || o.i >= 0 || o.j >= 0) {
            if (o.h < 0 || o.i < 0 || o.j < 0) throw Error("syntax", "suzuki needs all of --h, --i, --j");
            return emit(proof_chain_suzuki(s, o.h, o.i, o.j, ord, tol), o.json);
        }
        auto tuples = suzuki_admissible(s, ord);
        if (tuples.empty()) {
            IdentityReport r = info_report("suzuki", "no admissible (h,i,j) in the Krein table");
            r.hypothesis_failed = true;
            return emit(r, o.json);
        }
        IdentityReport all = info_report("suzuki", std::to_string(tuples.size()) + " admissible tuples");
        for (const auto& [h, i, j] : tuples)
            all.merge(proof_chain_suzuki(s, h, i, j, ord, tol),
                      "(" + std::to_string(h) + "," + std::to_string(i) + "," + std::to_string(j) + ") ");
        return emit(all, o.json);
    }
    if (v == "regularity") {
        RegularityResult r = regularity_check(s, o.mode, tolerance(o));
        IdentityReport rep = info_report("regularity", o.mode + " regular: " + (r.flag ? "yes" : "no"));
        const std::string small = o.mode == "triply" ? "triangle" : "wye";
        rep.add_residual("flag agrees with rank(" + small + ")=" + std::to_string(r.rank_small) + " vs rank(k4)=" +
                             std::to_string(r.rank_k4),
                         r.agrees_k4 ? 0.0 : 1.0, 0.0);
        rep.add_residual("flag agrees with rank(" + small + ")=" + std::to_string(r.rank_small) +
                             " vs rank(tristar)=" + std::to_string(r.rank_tristar),
                         r.agrees_tristar ? 0.0 : 1.0, 0.0);
        if (r.witness)
            rep.message += " witness (" + std::to_string(r.witness->x) + "," + std::to_string(r.witness->y) + "," +
                           std::to_string(r.witness->z) + ") rst=(" + std::to_string(r.witness->rst[0]) + "," +
                           std::to_string(r.witness->rst[1]) + "," + std::to_string(r.witness->rst[2]) + ")";
        return emit(rep, o.json);
    }
    if (v == "fourvertex") {
        FourVertexResult r = four_vertex_condition(s, tolerance(o));
        IdentityReport rep = info_report("fourvertex", std::string("4-vertex condition ") +
                                                           (r.holds ? "holds" : "fails") + " (" +
                                                           std::to_string(r.checked) + " diagrams)");
        if (r.witness) rep.message += "\nwitness:\n" + r.witness->to_dsl();
        return emit(rep, o.json);
    }
    if (v == "wspace") {
        WSpaceResult r = wspace_rank(s, o.shape, tolerance(o));
        IdentityReport rep = info_report("wspace", "rank W(" + o.shape + ") = " + std::to_string(r.rank) + " over " +
                                                       std::to_string(r.count) + " assignments");
        if (r.orthogonality_checked) rep.add_residual("orthogonal basis", r.orthogonality, tol);
        return emit(rep, o.json);
    }
    if (v == "duality") return emit(duality_experiment(s, o.family, tol), o.json);
    throw Error("unknown-suite", "'" + v + "'");
}

int cmd_dual(const Options& o) {
    Diagram d = parse_diagram(slurp(o.diagram));
    nlohmann::json ej;
    try {
        ej = nlohmann::json::parse(slurp(o.embedding));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("bad-embedding", e.what());
    }
    DualResult r = planar_dual(d, parse_embedding(ej));
    if (o.json) {
        nlohmann::ordered_json out;
        out["diagram"] = r.diag.to_dsl();
        out["embedding"] = embedding_json(r.embedding);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << r.diag.to_dsl();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scaffold: scaffold diagrams over association schemes"};
    app.require_subcommand(1);
    // --h is a suzuki index, so help is long-form only.
    app.set_help_flag("--help", "print help");
    Options o;

    auto* sc = app.add_subcommand("scheme", "construct a scheme and print its report");
    sc->add_option("spec", o.spec, "builtin name[:p1,p2] or file:path.rel")->required();
    sc->add_flag("--json", o.json, "JSON output");
    sc->add_option("--seed", o.seed, "seed for the eigenspace splitting");

    auto* ev = app.add_subcommand("eval", "evaluate a diagram file");
    ev->add_option("diagram", o.diagram, "diagram DSL file")->required();
    ev->add_option("--scheme", o.scheme, "scheme spec");
    ev->add_option("--method", o.method, "brute, eliminate or auto");
    ev->add_option("--tol", o.tol, "absolute tolerance");
    ev->add_option("--seed", o.seed, "seed");
    ev->add_option("--custom", o.customs, "custom weight name=matrix-file");
    ev->add_flag("--check", o.check, "run both evaluators and report their disagreement");

    auto* rw = app.add_subcommand("rewrite", "replay a rewrite chain");
    rw->add_option("chain", o.chain, "chain JSON file")->required();
    rw->add_option("--scheme", o.scheme, "scheme spec");
    rw->add_option("--custom", o.customs, "custom weight name=matrix-file");
    rw->add_flag("--json", o.json, "JSON output");

    auto* vf = app.add_subcommand("verify", "run a verification suite");
    vf->add_option("suite", o.suite,
                   "appendixB, basic_lemmas, terwilliger_grams, dickie, suzuki, spinmodel, regularity, fourvertex, "
                   "wspace, duality")
        ->required();
    vf->add_option("--scheme", o.scheme, "scheme spec");
    vf->add_option("--j", o.j, "index j (dickie, suzuki)");
    vf->add_option("--h", o.h, "index h (suzuki)");
    vf->add_option("--i", o.i, "index i (suzuki)");
    vf->add_option("--n", o.n, "spin model size");
    vf->add_option("--ordering", o.ordering, "cometric ordering as a comma list");
    vf->add_option("--mode", o.mode, "triply or dually (regularity)");
    vf->add_option("--shape", o.shape, "W-space shape");
    vf->add_option("--family", o.family, "duality family");
    vf->add_option("--tol", o.tol, "tolerance");
    vf->add_option("--seed", o.seed, "seed for sampling");
    vf->add_flag("--exhaustive", o.exhaustive, "sweep every index tuple");
    vf->add_flag("--normalized", o.normalized, "phase-normalized cyclic spin model");
    vf->add_flag("--json", o.json, "JSON output");

    auto* du = app.add_subcommand("dual", "circular planar dual of an embedded diagram");
    du->add_option("diagram", o.diagram, "diagram DSL file")->required();
    du->add_option("--embedding", o.embedding, "embedding JSON file")->required();
    du->add_flag("--json", o.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sc) return cmd_scheme(o);
        if (*ev) return cmd_eval(o);
        if (*rw) return cmd_rewrite(o);
        if (*vf) return cmd_verify(o);
        if (*du) return cmd_dual(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.token() == "too-large") return 3;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
