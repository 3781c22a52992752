#include "scaf/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

namespace scaf {

namespace {

[[noreturn]] void not_scheme(const std::string& axiom, const std::string& detail) {
    throw Error("not-a-scheme", "(" + axiom + ") " + detail);
}

IntMatrix graph_from_pred(int n, const auto& adjacent) {
    IntMatrix a(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y && adjacent(x, y)) a(x, y) = 1;
    return a;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

int common(const std::vector<int>& a, const std::vector<int>& b) {
    int c = 0;
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) ++c;
    return c;
}

}  // namespace

// Kneser graph K(5,2)
IntMatrix petersen_graph() {
    auto sets = k_subsets(5, 2);
    return graph_from_pred(10, [&](int x, int y) { return common(sets[x], sets[y]) == 0; });
}

IntMatrix johnson_graph(int n, int k) {
    if (n < 2 || k < 1 || k >= n) throw Error("bad-builtin", "johnson needs 1 <= k < n");
    auto sets = k_subsets(n, k);
    return graph_from_pred(static_cast<int>(sets.size()),
                           [&](int x, int y) { return common(sets[x], sets[y]) == k - 1; });
}

IntMatrix cycle_graph(int n) {
    if (n < 3) throw Error("bad-builtin", "cycle needs n >= 3");
    return graph_from_pred(n, [&](int x, int y) { return (x - y + n) % n == 1 || (y - x + n) % n == 1; });
}

IntMatrix complete_graph(int n) {
    if (n < 2) throw Error("bad-builtin", "complete needs n >= 2");
    return graph_from_pred(n, [](int, int) { return true; });
}

IntMatrix hamming_graph(int d, int q) {
    if (d < 1 || q < 2) throw Error("bad-builtin", "hamming needs d >= 1, q >= 2");
    int n = 1;
    for (int i = 0; i < d; ++i) n *= q;
    return graph_from_pred(n, [&](int x, int y) {
        int diff = 0;
        for (int i = 0; i < d; ++i, x /= q, y /= q) diff += (x % q) != (y % q);
        return diff == 1;
    });
}

IntMatrix shrikhande_graph() {
    const int conn[6][2] = {{1, 0}, {3, 0}, {0, 1}, {0, 3}, {1, 1}, {3, 3}};
    return graph_from_pred(16, [&](int x, int y) {
        int da = ((y / 4) - (x / 4) + 4) % 4, db = ((y % 4) - (x % 4) + 4) % 4;
        for (const auto& c : conn)
            if (c[0] == da && c[1] == db) return true;
        return false;
    });
}

IntMatrix doob_graph(int s, int t) {
    if (s < 1 || t < 0) throw Error("bad-builtin", "doob needs s >= 1, t >= 0");
    IntMatrix shr = shrikhande_graph();
    std::vector<int> sizes;
    for (int i = 0; i < s; ++i) sizes.push_back(16);
    for (int i = 0; i < t; ++i) sizes.push_back(4);
    long long total = 1;
    for (int z : sizes) total *= z;
    if (total > 4096) throw Error("bad-builtin", "doob graph too large");
    const int n = static_cast<int>(total);
    return graph_from_pred(n, [&](int x, int y) {
        int diffs = 0;
        bool adj = true;
        for (int z : sizes) {
            int a = x % z, b = y % z;
            x /= z;
            y /= z;
            if (a == b) continue;
            ++diffs;
            if (z == 16) adj = adj && !shr(a, b).is_zero();
        }
        return diffs == 1 && adj;
    });
}

std::vector<IntMatrix> distance_matrices(const IntMatrix& adj) {
    const int n = adj.n();
    for (int x = 0; x < n; ++x) {
        if (!adj(x, x).is_zero()) throw Error("not-a-scheme", "adjacency has a loop");
        for (int y = 0; y < n; ++y) {
            if (adj(x, y) != adj(y, x)) throw Error("not-a-scheme", "adjacency not symmetric");
            if (adj(x, y) != 0 && adj(x, y) != 1) throw Error("not-a-scheme", "adjacency not 0/1");
        }
    }
    std::vector<int> dist(static_cast<size_t>(n) * n, -1);
    int diam = 0;
    for (int s = 0; s < n; ++s) {
        std::queue<int> bfs;
        dist[static_cast<size_t>(s) * n + s] = 0;
        bfs.push(s);
        while (!bfs.empty()) {
            int x = bfs.front();
            bfs.pop();
            for (int y = 0; y < n; ++y)
                if (!adj(x, y).is_zero() && dist[static_cast<size_t>(s) * n + y] < 0) {
                    dist[static_cast<size_t>(s) * n + y] = dist[static_cast<size_t>(s) * n + x] + 1;
                    bfs.push(y);
                }
        }
        for (int y = 0; y < n; ++y) {
            int dd = dist[static_cast<size_t>(s) * n + y];
            if (dd < 0) throw Error("disconnected", "vertex " + std::to_string(y) + " unreachable from " + std::to_string(s));
            diam = std::max(diam, dd);
        }
    }
    std::vector<IntMatrix> mats(diam + 1, IntMatrix(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) mats[dist[static_cast<size_t>(x) * n + y]](x, y) = 1;
    return mats;
}

AssociationScheme build_from_relations(std::vector<IntMatrix> mats, const Tolerance& tol, uint64_t seed) {
    if (mats.empty()) not_scheme("i", "no relations");
    const int n = mats[0].n();
    for (const auto& m : mats) {
        if (m.n() != n) throw Error("shape", "relation matrices differ in size");
        for (const auto& x : m.data())
            if (x != 0 && x != 1) not_scheme("ii", "relation matrix is not 0/1");
    }
    // (i) identity relation, moved to the front
    auto id = IntMatrix::identity(n);
    auto it = std::find(mats.begin(), mats.end(), id);
    if (it == mats.end()) not_scheme("i", "no relation equals the identity");
    std::rotate(mats.begin(), it, it + 1);
    const int D = static_cast<int>(mats.size());
    for (int i = 0; i < D; ++i)
        if (mats[i].is_zero()) not_scheme("ii", "relation " + std::to_string(i) + " is empty");

    AssociationScheme s;
    s.n = n;
    s.d = D - 1;
    s.rel.assign(static_cast<size_t>(n) * n, -1);
    // (ii) disjoint, (iii) covering
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            for (int i = 0; i < D; ++i)
                if (!mats[i](x, y).is_zero()) {
                    if (s.rel[static_cast<size_t>(x) * n + y] >= 0)
                        not_scheme("ii", "relations overlap at (" + std::to_string(x) + "," + std::to_string(y) + ")");
                    s.rel[static_cast<size_t>(x) * n + y] = i;
                }
            if (s.rel[static_cast<size_t>(x) * n + y] < 0)
                not_scheme("iii", "pair (" + std::to_string(x) + "," + std::to_string(y) + ") uncovered");
        }
    // (iv) closed under transposition
    s.conj_A.assign(D, -1);
    for (int i = 0; i < D; ++i) {
        IntMatrix t = mats[i].transpose();
        for (int j = 0; j < D; ++j)
            if (mats[j] == t) s.conj_A[i] = j;
        if (s.conj_A[i] < 0) not_scheme("iv", "transpose of relation " + std::to_string(i) + " is not a relation");
        if (s.conj_A[i] != i) s.symmetric = false;
    }
    // (v) regularity, (vi) commutativity
    s.p.assign(static_cast<size_t>(D) * D * D, BigInt(0));
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            IntMatrix prod = mat_product(mats[i], mats[j]);
            std::vector<bool> seen(D, false);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    int k = s.rel[static_cast<size_t>(x) * n + y];
                    if (!seen[k]) {
                        s.p[s.idx3(i, j, k)] = prod(x, y);
                        seen[k] = true;
                    } else if (s.p[s.idx3(i, j, k)] != prod(x, y)) {
                        not_scheme("v", "A_" + std::to_string(i) + "A_" + std::to_string(j) +
                                            " not constant on relation " + std::to_string(k));
                    }
                }
        }
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            for (int k = 0; k < D; ++k)
                if (s.pijk(i, j, k) != s.pijk(j, i, k))
                    not_scheme("vi", "p_" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k) + " asymmetric");
    s.A = std::move(mats);
    for (int i = 0; i < D; ++i) s.v.push_back(s.pijk(i, s.conj_A[i], 0));
    for (const auto& a : s.A) s.A_complex.push_back(a.to_complex());

    // primitive idempotents; retry with a fresh seed if clustering is unlucky
    std::vector<CMatrix> E;
    std::string last;
    for (uint64_t attempt = 0; attempt < 6; ++attempt) {
        try {
            E = simultaneous_eigenprojectors(s.A_complex, tol, seed + attempt);
            if (static_cast<int>(E.size()) == D) break;
            last = std::to_string(E.size()) + " clusters for " + std::to_string(D) + " classes";
        } catch (const Error& e) {
            if (e.token() != "degenerate-spectrum") throw;
            last = e.detail();
        }
        E.clear();
    }
    if (E.empty()) throw Error("degenerate-spectrum", last);

    auto eig = [&](const CMatrix& e, int i) { return (s.A_complex[i] * e).trace() / e.trace(); };
    if (D > 1) {
        std::sort(E.begin() + 1, E.end(), [&](const CMatrix& a, const CMatrix& b) {
            cplx la = eig(a, 1), lb = eig(b, 1);
            if (std::abs(la.real() - lb.real()) > 1e-7) return la.real() > lb.real();
            return la.imag() > lb.imag();
        });
    }
    s.E = std::move(E);
    s.P = CMatrix(D, D);
    s.Q = CMatrix(D, D);
    for (int j = 0; j < D; ++j) {
        double tr = s.E[j].trace().real();
        s.m.push_back(static_cast<int>(std::lround(tr)));
        for (int i = 0; i < D; ++i) s.P(j, i) = (s.A_complex[i] * s.E[j]).trace() / tr;
    }
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            s.Q(i, j) = s.E[j].cwiseProduct(s.A_complex[i]).sum() / s.vd(i);

    s.conj_E.assign(D, -1);
    for (int j = 0; j < D; ++j) {
        CMatrix t = s.E[j].transpose();
        double best = 1e300;
        for (int k = 0; k < D; ++k) {
            double r = (s.E[k] - t).cwiseAbs().maxCoeff();
            if (r < best) {
                best = r;
                s.conj_E[j] = k;
            }
        }
    }
    s.q.assign(static_cast<size_t>(D) * D * D, cplx(0));
    s.q_scale = 0;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            CMatrix h = s.E[i].cwiseProduct(s.E[j]);
            for (int k = 0; k < D; ++k) {
                cplx val = static_cast<double>(n) / s.m[k] * h.cwiseProduct(s.E[k].conjugate()).sum();
                s.q[s.idx3(i, j, k)] = val;
                s.q_scale = std::max(s.q_scale, std::abs(val));
            }
        }
    if (s.q_scale == 0) s.q_scale = 1;
    return s;
}

AssociationScheme build_from_graph(const IntMatrix& adjacency, const Tolerance& tol, uint64_t seed) {
    return build_from_relations(distance_matrices(adjacency), tol, seed);
}

AssociationScheme builtin(const std::string& name, const std::vector<int>& params, const Tolerance& tol,
                          uint64_t seed) {
    auto need = [&](size_t k) {
        if (params.size() != k)
            throw Error("bad-builtin", name + " takes " + std::to_string(k) + " parameter(s)");
    };
    AssociationScheme s;
    std::string label = name;
    if (name == "petersen") {
        need(0);
        s = build_from_graph(petersen_graph(), tol, seed);
    } else if (name == "shrikhande") {
        need(0);
        s = build_from_graph(shrikhande_graph(), tol, seed);
    } else if (name == "hamming") {
        need(2);
        s = build_from_graph(hamming_graph(params[0], params[1]), tol, seed);
    } else if (name == "johnson") {
        need(2);
        s = build_from_graph(johnson_graph(params[0], params[1]), tol, seed);
    } else if (name == "cycle") {
        need(1);
        s = build_from_graph(cycle_graph(params[0]), tol, seed);
    } else if (name == "complete") {
        need(1);
        s = build_from_graph(complete_graph(params[0]), tol, seed);
    } else if (name == "doob") {
        need(2);
        s = build_from_graph(doob_graph(params[0], params[1]), tol, seed);
    } else {
        throw Error("bad-builtin", "unknown scheme '" + name + "'");
    }
    if (!params.empty()) {
        label += ":";
        for (size_t i = 0; i < params.size(); ++i) label += (i ? "," : "") + std::to_string(params[i]);
    }
    s.name = label;
    return s;
}

AssociationScheme scheme_from_spec(const std::string& spec, const Tolerance& tol, uint64_t seed) {
    if (spec.rfind("file:", 0) == 0) {
        std::string path = spec.substr(5);
        std::ifstream in(path);
        if (!in) throw Error("io", "cannot read " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        auto s = build_from_relations(read_relations(ss.str()), tol, seed);
        s.name = spec;
        return s;
    }
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<int> params;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                size_t used = 0;
                params.push_back(std::stoi(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw Error("bad-builtin", "bad parameter '" + tok + "'");
            }
        }
    }
    return builtin(name, params, tol, seed);
}

std::vector<IntMatrix> read_relations(const std::string& text) {
    std::stringstream ss(text);
    int n = 0, d = -1;
    if (!(ss >> n >> d) || n <= 0 || d < 0) throw Error("syntax", "relation file header must be 'n d'");
    std::vector<IntMatrix> mats(d + 1, IntMatrix(n));
    for (int i = 0; i <= d; ++i)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                long long val;
                if (!(ss >> val)) throw Error("syntax", "relation file truncated in block " + std::to_string(i));
                mats[i](x, y) = val;
            }
    std::string extra;
    if (ss >> extra) throw Error("syntax", "trailing data in relation file");
    return mats;
}

std::string write_relations(const std::vector<IntMatrix>& mats) {
    std::ostringstream out;
    const int n = mats.empty() ? 0 : mats[0].n();
    out << n << " " << static_cast<int>(mats.size()) - 1 << "\n";
    for (size_t i = 0; i < mats.size(); ++i) {
        if (i) out << "\n";
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) out << (y ? " " : "") << mats[i](x, y);
            out << "\n";
        }
    }
    return out.str();
}

PolynomialStructure polynomial_structure(const AssociationScheme& s, const std::string& kind,
                                         const std::vector<int>& ordering) {
    PolynomialStructure ps;
    ps.kind = kind;
    ps.ordering = ordering;
    const int D = s.dim();
    if (kind != "metric" && kind != "cometric") {
        ps.reason = "kind must be metric or cometric";
        return ps;
    }
    std::vector<int> sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> ident(D);
    std::iota(ident.begin(), ident.end(), 0);
    if (sorted != ident || ordering.empty() || ordering[0] != 0) {
        ps.reason = "ordering must be a permutation of 0..d starting at 0";
        return ps;
    }
    const bool co = kind == "cometric";
    auto val = [&](int i, int j, int k) {
        int a = ordering[i], b = ordering[j], c = ordering[k];
        return co ? s.qijk(a, b, c).real() : s.pd(a, b, c);
    };
    auto zero = [&](int i, int j, int k) {
        int a = ordering[i], b = ordering[j], c = ordering[k];
        return co ? s.q_zero(a, b, c) : s.p_zero(a, b, c);
    };
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            for (int k = 0; k < D; ++k) {
                bool exceeds = i > j + k || j > i + k || k > i + j;
                bool equals = i == j + k || j == i + k || k == i + j;
                if (exceeds && !zero(i, j, k)) {
                    ps.violation = {i, j, k};
                    ps.reason = "parameter nonzero although one index exceeds the sum of the others";
                    return ps;
                }
                if (equals && (zero(i, j, k) || val(i, j, k) <= 0)) {
                    ps.violation = {i, j, k};
                    ps.reason = "parameter not positive although one index equals the sum of the others";
                    return ps;
                }
            }
    ps.ok = true;
    ps.a.assign(D, 0.0);
    ps.b.assign(D, 0.0);
    ps.c.assign(D, 0.0);
    if (D > 1)
        for (int j = 0; j < D; ++j) {
            ps.a[j] = val(1, j, j);
            if (j + 1 < D) ps.b[j] = val(1, j + 1, j);
            if (j >= 1) ps.c[j] = val(1, j - 1, j);
        }
    return ps;
}

SchemeResiduals scheme_residuals(const AssociationScheme& s) {
    SchemeResiduals r;
    const int D = s.dim();
    const int n = s.n;
    CMatrix pq = s.P * s.Q - static_cast<double>(n) * CMatrix::Identity(D, D);
    r.pq = pq.cwiseAbs().maxCoeff();
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            r.mp_vq = std::max(r.mp_vq, std::abs(static_cast<double>(s.m[j]) * s.P(j, i) - s.vd(i) * s.Q(i, j)));
    CMatrix sum = CMatrix::Zero(n, n);
    for (int i = 0; i < D; ++i) {
        sum += s.E[i];
        for (int j = 0; j < D; ++j) {
            CMatrix diff = s.E[i] * s.E[j];
            if (i == j) diff -= s.E[i];
            r.idempotent = std::max(r.idempotent, diff.cwiseAbs().maxCoeff());
            CMatrix had = s.E[i].cwiseProduct(s.E[j]);
            for (int k = 0; k < D; ++k) had -= s.qijk(i, j, k) / static_cast<double>(n) * s.E[k];
            r.krein_schur = std::max(r.krein_schur, had.cwiseAbs().maxCoeff());
        }
        r.conj_e = std::max(r.conj_e, (s.E[s.conj_E[i]] - s.E[i].transpose()).cwiseAbs().maxCoeff());
    }
    r.sum_e = (sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    r.p_exact = true;
    for (int i = 0; i < D && r.p_exact; ++i)
        for (int j = 0; j < D && r.p_exact; ++j) {
            IntMatrix lhs(n);
            for (int k = 0; k < D; ++k) lhs = lhs + s.A[k].scaled(s.pijk(i, j, k));
            r.p_exact = lhs == mat_product(s.A[i], s.A[j]);
        }
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            for (int k = 0; k < D; ++k) {
                r.nonzero_p += !s.p_zero(i, j, k);
                r.nonzero_q += !s.q_zero(i, j, k);
            }
    return r;
}

namespace {

nlohmann::json cjson(cplx z, bool real_only) {
    if (real_only) return round12(z.real());
    return nlohmann::json::array({round12(z.real()), round12(z.imag())});
}

}  // namespace

nlohmann::json scheme_report(const AssociationScheme& s) {
    using nlohmann::json;
    const int D = s.dim();
    auto r = scheme_residuals(s);
    bool real = s.symmetric;
    json j;
    j["name"] = s.name;
    j["n"] = s.n;
    j["d"] = s.d;
    j["symmetric"] = s.symmetric;
    json v = json::array(), m = json::array(), ca = json::array(), ce = json::array();
    for (int i = 0; i < D; ++i) {
        v.push_back(s.v[i].convert_to<long long>());
        m.push_back(s.m[i]);
        ca.push_back(s.conj_A[i]);
        ce.push_back(s.conj_E[i]);
    }
    j["v"] = v;
    j["m"] = m;
    j["conj_A"] = ca;
    j["conj_E"] = ce;
    json p = json::array(), q = json::array();
    for (int i = 0; i < D; ++i) {
        json pi = json::array(), qi = json::array();
        for (int jj = 0; jj < D; ++jj) {
            json pij = json::array(), qij = json::array();
            for (int k = 0; k < D; ++k) {
                pij.push_back(s.pijk(i, jj, k).convert_to<long long>());
                qij.push_back(s.q_zero(i, jj, k) ? json(0) : cjson(s.qijk(i, jj, k), real));
            }
            pi.push_back(pij);
            qi.push_back(qij);
        }
        p.push_back(pi);
        q.push_back(qi);
    }
    j["p"] = p;
    j["q"] = q;
    json P = json::array(), Q = json::array();
    for (int a = 0; a < D; ++a) {
        json pr = json::array(), qr = json::array();
        for (int b = 0; b < D; ++b) {
            pr.push_back(cjson(s.P(a, b), real));
            qr.push_back(cjson(s.Q(a, b), real));
        }
        P.push_back(pr);
        Q.push_back(qr);
    }
    j["P"] = P;
    j["Q"] = Q;
    j["nonzero_p"] = r.nonzero_p;
    j["nonzero_q"] = r.nonzero_q;
    j["residuals"] = {{"PQ-nI", round12(r.pq)},
                      {"mP-vQ", round12(r.mp_vq)},
                      {"EiEj", round12(r.idempotent)},
                      {"sumE-I", round12(r.sum_e)},
                      {"EioEj", round12(r.krein_schur)},
                      {"conjE", round12(r.conj_e)},
                      {"p_exact", r.p_exact}};
    return j;
}

std::string scheme_report_text(const AssociationScheme& s) {
    auto r = scheme_residuals(s);
    const int D = s.dim();
    std::ostringstream out;
    auto num = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", round12(x));
        return std::string(buf);
    };
    out << "scheme " << (s.name.empty() ? "(unnamed)" : s.name) << "\n";
    out << "n = " << s.n << ", d = " << s.d << (s.symmetric ? ", symmetric" : ", non-symmetric") << "\n";
    out << "v =";
    for (const auto& x : s.v) out << " " << x;
    out << "\nm =";
    for (int x : s.m) out << " " << x;
    out << "\n\nP (rows E_j, columns A_i):\n";
    for (int a = 0; a < D; ++a) {
        for (int b = 0; b < D; ++b) {
            cplx z = s.P(a, b);
            out << "  " << num(z.real());
            if (std::abs(z.imag()) > 1e-12) out << (z.imag() < 0 ? "-" : "+") << num(std::abs(z.imag())) << "i";
        }
        out << "\n";
    }
    out << "\nnonzero p_ij^k: " << r.nonzero_p << "\n";
    for (int k = 0; k < D; ++k) {
        out << "  p_ij^" << k << ":\n";
        for (int i = 0; i < D; ++i) {
            out << "   ";
            for (int j = 0; j < D; ++j) out << " " << s.pijk(i, j, k);
            out << "\n";
        }
    }
    out << "nonzero q_ij^k: " << r.nonzero_q << "\n";
    for (int k = 0; k < D; ++k) {
        out << "  q_ij^" << k << ":\n";
        for (int i = 0; i < D; ++i) {
            out << "   ";
            for (int j = 0; j < D; ++j) out << " " << (s.q_zero(i, j, k) ? std::string("0") : num(s.qijk(i, j, k).real()));
            out << "\n";
        }
    }
    out << "\nresiduals: PQ-nI " << num(r.pq) << ", mP-vQ " << num(r.mp_vq) << ", EiEj " << num(r.idempotent)
        << ", sumE-I " << num(r.sum_e) << ", EioEj " << num(r.krein_schur) << ", p-table "
        << (r.p_exact ? "exact" : "MISMATCH") << "\n";
    return out.str();
}

}  // namespace scaf
