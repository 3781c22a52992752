// Weight expressions, the Diagram model and its line-oriented DSL.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "scaf/engine.hpp"

namespace scaf {

namespace {

std::string fmt_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", round12(x));
    return buf;
}

std::string fmt_scalar(cplx c) {
    if (c.imag() == 0.0) return fmt_num(c.real());
    return "(" + fmt_num(c.real()) + "," + fmt_num(c.imag()) + ")";
}

[[noreturn]] void weight_error(const std::string& text, const std::string& why) {
    throw Error("syntax", "weight '" + text + "': " + why);
}

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty()) weight_error(whole, "empty number");
    auto slash = s.find('/');
    try {
        size_t used = 0;
        if (slash != std::string::npos) {
            double a = std::stod(s.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(s);
            std::string den = s.substr(slash + 1);
            double b = std::stod(den, &used);
            if (used != den.size() || b == 0.0) throw std::invalid_argument(s);
            return a / b;
        }
        double a = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return a;
    } catch (const std::exception&) {
        weight_error(whole, "bad number '" + s + "'");
    }
}

cplx parse_complex(const std::string& s, const std::string& whole) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        auto comma = s.find(',');
        if (comma == std::string::npos) weight_error(whole, "complex scalar needs (re,im)");
        return {parse_real(s.substr(1, comma - 1), whole), parse_real(s.substr(comma + 1, s.size() - comma - 2), whole)};
    }
    if (!s.empty() && s.back() == 'i') {
        std::string body = s.substr(0, s.size() - 1);
        if (body.empty() || body == "+") return {0, 1};
        if (body == "-") return {0, -1};
        return {0, parse_real(body, whole)};
    }
    return {parse_real(s, whole), 0};
}

// split "a,b" at the top-level comma
std::pair<std::string, std::string> split_args(const std::string& s, const std::string& whole) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
    }
    weight_error(whole, "composite weight needs two arguments");
}

}  // namespace

WeightRef WeightRef::mul(WeightRef a, WeightRef b) {
    WeightRef w = basic(Kind::Mul);
    w.args = {std::move(a), std::move(b)};
    return w;
}

WeightRef WeightRef::had(WeightRef a, WeightRef b) {
    WeightRef w = basic(Kind::Had);
    w.args = {std::move(a), std::move(b)};
    return w;
}

WeightRef WeightRef::transposed() const {
    WeightRef w = *this;
    w.transpose = !w.transpose;
    return w;
}

WeightRef WeightRef::conjugated() const {
    WeightRef w = *this;
    w.conjugate = !w.conjugate;
    w.scalar = std::conj(w.scalar);
    return w;
}

WeightRef WeightRef::times(cplx c) const {
    WeightRef w = *this;
    w.scalar *= c;
    return w;
}

std::string WeightRef::str() const {
    std::string base;
    switch (kind) {
        case Kind::A: base = "A" + std::to_string(index); break;
        case Kind::E: base = "E" + std::to_string(index); break;
        case Kind::I: base = "I"; break;
        case Kind::J: base = "J"; break;
        case Kind::Custom: base = "M:" + name; break;
        case Kind::Mul: base = "mul(" + args[0].str() + "," + args[1].str() + ")"; break;
        case Kind::Had: base = "had(" + args[0].str() + "," + args[1].str() + ")"; break;
    }
    if (transpose) base += "'";
    if (conjugate) base += "~";
    if (scalar != cplx(1.0, 0.0)) base = fmt_scalar(scalar) + "*" + base;
    return base;
}

WeightRef parse_weight(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) weight_error(text, "empty");
    WeightRef w;
    int depth = 0;
    size_t star = std::string::npos;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == '*' && depth == 0) {
            star = i;
            break;
        }
    }
    if (star != std::string::npos) {
        w = parse_weight(s.substr(star + 1));
        w.scalar *= parse_complex(s.substr(0, star), text);
        return w;
    }
    bool tr = false, cj = false;
    while (!s.empty() && (s.back() == '\'' || s.back() == '~')) {
        if (s.back() == '\'') tr = !tr;
        else cj = !cj;
        s.pop_back();
    }
    auto digits = [&](size_t from) {
        if (from >= s.size()) weight_error(text, "missing index");
        for (size_t i = from; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) weight_error(text, "bad index");
        return std::stoi(s.substr(from));
    };
    if (s == "I") {
        w = WeightRef::Id();
    } else if (s == "J") {
        w = WeightRef::Ones();
    } else if (s.rfind("M:", 0) == 0) {
        if (s.size() == 2) weight_error(text, "custom weight needs a name");
        w = WeightRef::custom(s.substr(2));
    } else if ((s.rfind("mul(", 0) == 0 || s.rfind("had(", 0) == 0) && s.back() == ')') {
        auto [a, b] = split_args(s.substr(4, s.size() - 5), text);
        w = s[0] == 'm' ? WeightRef::mul(parse_weight(a), parse_weight(b)) : WeightRef::had(parse_weight(a), parse_weight(b));
    } else if (s[0] == 'A') {
        w = WeightRef::A(digits(1));
    } else if (s[0] == 'E') {
        w = WeightRef::E(digits(1));
    } else {
        weight_error(text, "unknown weight");
    }
    w.transpose = tr;
    w.conjugate = cj;
    return w;
}

bool Diagram::has_node(const std::string& id) const {
    return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
}

void Diagram::add_node(const std::string& id) {
    if (has_node(id)) throw Error("duplicate-node", "'" + id + "'");
    nodes.push_back(id);
}

void Diagram::add_edge(const std::string& tail, const std::string& head, WeightRef w) {
    if (!has_node(tail)) throw Error("undeclared-node", "'" + tail + "'");
    if (!has_node(head)) throw Error("undeclared-node", "'" + head + "'");
    edges.push_back({tail, head, std::move(w)});
}

bool Diagram::is_root(const std::string& id) const {
    return std::find(roots.begin(), roots.end(), id) != roots.end();
}

std::vector<int> Diagram::incident(const std::string& id) const {
    std::vector<int> out;
    for (size_t e = 0; e < edges.size(); ++e)
        if (edges[e].tail == id || edges[e].head == id) out.push_back(static_cast<int>(e));
    return out;
}

std::string Diagram::fresh_id(const std::string& stem) const {
    if (!has_node(stem)) return stem;
    for (int k = 1;; ++k) {
        std::string c = stem + std::to_string(k);
        if (!has_node(c)) return c;
    }
}

void Diagram::rename(const std::string& from, const std::string& to) {
    for (auto& x : nodes)
        if (x == from) x = to;
    for (auto& e : edges) {
        if (e.tail == from) e.tail = to;
        if (e.head == from) e.head = to;
    }
    for (auto& r : roots)
        if (r == from) r = to;
    auto it = fixed.find(from);
    if (it != fixed.end()) {
        int v = it->second;
        fixed.erase(it);
        fixed[to] = v;
    }
}

void Diagram::remove_node(const std::string& id) {
    std::vector<int> drop = incident(id);
    remove_edges(drop);
    nodes.erase(std::remove(nodes.begin(), nodes.end(), id), nodes.end());
    roots.erase(std::remove(roots.begin(), roots.end(), id), roots.end());
    fixed.erase(id);
}

void Diagram::remove_edges(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) edges.erase(edges.begin() + *it);
}

std::string Diagram::to_dsl() const {
    std::ostringstream out;
    for (const auto& n : nodes) out << "node " << n << "\n";
    if (!roots.empty()) {
        out << "root";
        for (const auto& r : roots) out << " " << r;
        out << "\n";
    }
    for (const auto& [id, v] : fixed) out << "fix " << id << " = " << v << "\n";
    for (const auto& e : edges) out << "edge " << e.tail << " " << e.head << " " << e.w.str() << "\n";
    return out.str();
}

std::string Diagram::canonical() const {
    std::vector<std::string> ns = nodes, es;
    std::sort(ns.begin(), ns.end());
    for (const auto& e : edges) es.push_back(e.tail + " " + e.head + " " + e.w.str());
    std::sort(es.begin(), es.end());
    std::ostringstream out;
    for (const auto& n : ns) out << "node " << n << "\n";
    out << "root";
    for (const auto& r : roots) out << " " << r;
    out << "\n";
    for (const auto& [id, v] : fixed) out << "fix " << id << " = " << v << "\n";
    for (const auto& e : es) out << "edge " << e << "\n";
    return out.str();
}

Diagram parse_diagram(const std::string& text) {
    Diagram d;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // tokens with 1-based start columns
        std::vector<std::pair<std::string, int>> toks;
        for (size_t i = 0; i < line.size();) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            toks.emplace_back(line.substr(i, j - i), static_cast<int>(i) + 1);
            i = j;
        }
        if (toks.empty()) continue;
        auto where = [&](int col) { return "line " + std::to_string(lineno) + " col " + std::to_string(col); };
        auto need_node = [&](const std::pair<std::string, int>& t) {
            if (!d.has_node(t.first)) throw Error("undeclared-node", where(t.second) + ": '" + t.first + "'");
        };
        const std::string& kw = toks[0].first;
        if (kw == "node") {
            if (toks.size() < 2) throw Error("syntax", where(toks[0].second) + ": node needs an id");
            for (size_t k = 1; k < toks.size(); ++k) {
                if (d.has_node(toks[k].first))
                    throw Error("duplicate-node", where(toks[k].second) + ": '" + toks[k].first + "'");
                d.nodes.push_back(toks[k].first);
            }
        } else if (kw == "root") {
            for (size_t k = 1; k < toks.size(); ++k) {
                need_node(toks[k]);
                d.roots.push_back(toks[k].first);
            }
        } else if (kw == "edge") {
            if (toks.size() < 4) throw Error("syntax", where(toks[0].second) + ": edge needs tail, head and weight");
            need_node(toks[1]);
            need_node(toks[2]);
            std::string wt;
            for (size_t k = 3; k < toks.size(); ++k) wt += toks[k].first;
            try {
                d.edges.push_back({toks[1].first, toks[2].first, parse_weight(wt)});
            } catch (const Error& e) {
                throw Error("syntax", where(toks[3].second) + ": " + e.detail());
            }
        } else if (kw == "fix") {
            std::string rest;
            for (size_t k = 1; k < toks.size(); ++k) rest += toks[k].first + " ";
            auto eq = rest.find('=');
            if (eq == std::string::npos) throw Error("syntax", where(toks[0].second) + ": fix needs '<id> = <index>'");
            std::string id = rest.substr(0, eq), val = rest.substr(eq + 1);
            id.erase(std::remove_if(id.begin(), id.end(), ::isspace), id.end());
            val.erase(std::remove_if(val.begin(), val.end(), ::isspace), val.end());
            need_node({id, toks[1].second});
            try {
                size_t used = 0;
                int v = std::stoi(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
                d.fixed[id] = v;
            } catch (const std::exception&) {
                throw Error("syntax", where(toks[0].second) + ": bad vertex index '" + val + "'");
            }
        } else {
            throw Error("syntax", where(toks[0].second) + ": unknown keyword '" + kw + "'");
        }
    }
    return d;
}

}  // namespace scaf
