#include "tlcat/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "tlcat/errors.hpp"

namespace tlcat {

namespace {

// Insertion order is the serialization order, so the emitted objects keep
// the documented field layout instead of being alphabetized.
using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

// Shortest representation that parses back to the identical double.
std::string double_text(double x) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, const char* what) {
    const char* s = token.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw ParseError(std::string(what) + ": bad number '" + token + "'");
    return v;
}

long parse_long(const std::string& token, const char* what) {
    const char* s = token.c_str();
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0')
        throw ParseError(std::string(what) + ": bad integer '" + token + "'");
    return v;
}

std::vector<std::string> nonempty_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string t;
    while (in >> t) tokens.push_back(t);
    return tokens;
}

// "key=value" -> value, enforcing the key.
std::string keyed(const std::string& token, const std::string& key, const char* what) {
    if (token.size() <= key.size() + 1 || token.compare(0, key.size(), key) != 0 ||
        token[key.size()] != '=')
        throw ParseError(std::string(what) + ": expected " + key + "=..., got '" + token + "'");
    return token.substr(key.size() + 1);
}

Json morphism_to_jobj(const Morphism& f) {
    Json j;
    j["m"] = f.top_count();
    j["n"] = f.bottom_count();
    j["d"] = f.loop_value().str();
    Json terms = Json::array();
    for (const auto& [diagram, coeff] : f.terms()) {
        Json t;
        t["coeff"] = coeff.str();
        t["diagram"] = diagram.encode();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

Morphism morphism_from_jobj(const Json& j) {
    int m, n;
    std::string dstr;
    std::map<Diagram, Scalar> terms;
    ScalarBackend backend;
    Scalar d;
    try {
        m = j.at("m").get<int>();
        n = j.at("n").get<int>();
        dstr = j.at("d").get<std::string>();
        backend = infer_backend(dstr);
        d = parse_scalar(dstr, backend);
        for (const Json& t : j.at("terms")) {
            Diagram diagram = Diagram::decode(t.at("diagram").get<std::string>());
            Scalar coeff = parse_scalar(t.at("coeff").get<std::string>(), backend);
            if (!terms.emplace(std::move(diagram), std::move(coeff)).second)
                throw ParseError("morphism json: duplicate diagram " +
                                 t.at("diagram").get<std::string>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("morphism json: ") + e.what());
    }
    return Morphism::from_terms(m, n, backend, std::move(d), std::move(terms));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string morphism_to_json(const Morphism& f) { return dump(morphism_to_jobj(f)); }

Morphism morphism_from_json(const std::string& text) {
    return morphism_from_jobj(parse_json(text, "morphism json"));
}

// ------------------------------------------------------------------ fusion

std::string fusion_to_json(const FusionTable& t) {
    Json j;
    j["left"] = t.left;
    j["right"] = t.right;
    j["truncation"] = t.truncation;
    Json summands = Json::array();
    for (const auto& [label, mult] : t.result.summands) {
        Json s;
        s["label"] = label;
        s["multiplicity"] = mult;
        summands.push_back(std::move(s));
    }
    j["summands"] = std::move(summands);
    return dump(j);
}

std::string fusion_to_text(const FusionTable& t) {
    std::ostringstream out;
    out << "fusion left=" << t.left << " right=" << t.right
        << " truncation=" << t.truncation << "\n";
    size_t w1 = 5, w2 = 12;
    for (const auto& [label, mult] : t.result.summands) {
        w1 = std::max(w1, std::to_string(label).size());
        w2 = std::max(w2, std::to_string(mult).size());
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%*s  %*s\n", (int)w1, "label", (int)w2, "multiplicity");
    out << buf;
    for (const auto& [label, mult] : t.result.summands) {
        std::snprintf(buf, sizeof buf, "%*d  %*d\n", (int)w1, label, (int)w2, mult);
        out << buf;
    }
    return out.str();
}

FusionTable fusion_from_json(const std::string& text) {
    Json j = parse_json(text, "fusion json");
    FusionTable t;
    try {
        t.left = j.at("left").get<int>();
        t.right = j.at("right").get<int>();
        t.truncation = j.at("truncation").get<int>();
        for (const Json& s : j.at("summands"))
            t.result.summands.emplace_back(s.at("label").get<int>(),
                                           s.at("multiplicity").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("fusion json: ") + e.what());
    }
    return t;
}

FusionTable fusion_from_text(const std::string& text) {
    auto lines = nonempty_lines(text);
    if (lines.size() < 2 || split_tokens(lines[0]).size() != 4)
        throw ParseError("fusion text: missing header");
    auto head = split_tokens(lines[0]);
    if (head[0] != "fusion") throw ParseError("fusion text: missing header");
    FusionTable t;
    t.left = (int)parse_long(keyed(head[1], "left", "fusion text"), "fusion text");
    t.right = (int)parse_long(keyed(head[2], "right", "fusion text"), "fusion text");
    t.truncation =
        (int)parse_long(keyed(head[3], "truncation", "fusion text"), "fusion text");
    auto columns = split_tokens(lines[1]);
    if (columns != std::vector<std::string>{"label", "multiplicity"})
        throw ParseError("fusion text: bad column header");
    for (size_t i = 2; i < lines.size(); ++i) {
        auto row = split_tokens(lines[i]);
        if (row.size() != 2) throw ParseError("fusion text: bad row '" + lines[i] + "'");
        t.result.summands.emplace_back((int)parse_long(row[0], "fusion text"),
                                       (int)parse_long(row[1], "fusion text"));
    }
    return t;
}

// -------------------------------------------------------------- positivity

std::string positivity_to_json(const PositivityReport& r) {
    Json j;
    j["d"] = r.d_value;
    j["tol"] = r.tol;
    j["min_eigenvalues"] = r.min_eigenvalues;
    j["violated_level"] = r.violated_level;
    return dump(j);
}

std::string positivity_to_text(const PositivityReport& r) {
    std::ostringstream out;
    out << "positivity d=" << double_text(r.d_value) << " tol=" << double_text(r.tol)
        << " verdict=";
    if (r.admissible())
        out << "admissible";
    else
        out << "violated(" << r.violated_level << ")";
    out << "\n";
    std::vector<std::string> values;
    size_t w2 = 14;
    for (double v : r.min_eigenvalues) {
        values.push_back(double_text(v));
        w2 = std::max(w2, values.back().size());
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%5s  %*s\n", "level", (int)w2, "min_eigenvalue");
    out << buf;
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%5zu  %*s\n", i + 1, (int)w2, values[i].c_str());
        out << buf;
    }
    return out.str();
}

PositivityReport positivity_from_json(const std::string& text) {
    Json j = parse_json(text, "positivity json");
    PositivityReport r;
    try {
        r.d_value = j.at("d").get<double>();
        r.tol = j.at("tol").get<double>();
        r.min_eigenvalues = j.at("min_eigenvalues").get<std::vector<double>>();
        r.violated_level = j.at("violated_level").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("positivity json: ") + e.what());
    }
    return r;
}

PositivityReport positivity_from_text(const std::string& text) {
    auto lines = nonempty_lines(text);
    if (lines.size() < 2) throw ParseError("positivity text: missing header");
    auto head = split_tokens(lines[0]);
    if (head.size() != 4 || head[0] != "positivity")
        throw ParseError("positivity text: missing header");
    PositivityReport r;
    r.d_value = parse_double(keyed(head[1], "d", "positivity text"), "positivity text");
    r.tol = parse_double(keyed(head[2], "tol", "positivity text"), "positivity text");
    std::string verdict = keyed(head[3], "verdict", "positivity text");
    if (verdict == "admissible")
        r.violated_level = 0;
    else if (verdict.rfind("violated(", 0) == 0 && verdict.back() == ')')
        r.violated_level =
            (int)parse_long(verdict.substr(9, verdict.size() - 10), "positivity text");
    else
        throw ParseError("positivity text: bad verdict '" + verdict + "'");
    auto columns = split_tokens(lines[1]);
    if (columns != std::vector<std::string>{"level", "min_eigenvalue"})
        throw ParseError("positivity text: bad column header");
    for (size_t i = 2; i < lines.size(); ++i) {
        auto row = split_tokens(lines[i]);
        if (row.size() != 2 || parse_long(row[0], "positivity text") != (long)(i - 1))
            throw ParseError("positivity text: bad row '" + lines[i] + "'");
        r.min_eigenvalues.push_back(parse_double(row[1], "positivity text"));
    }
    return r;
}

// -------------------------------------------------------------------- gram

std::string gram_to_json(const GramMatrix& g) {
    Json j;
    j["m"] = g.m;
    j["n"] = g.n;
    j["d"] = g.backend.d().str();
    Json basis = Json::array();
    for (const Diagram& b : g.basis) basis.push_back(b.encode());
    j["basis"] = std::move(basis);
    Json entries = Json::array();
    for (const auto& row : g.entries) {
        Json r = Json::array();
        for (const Scalar& e : row) r.push_back(e.str());
        entries.push_back(std::move(r));
    }
    j["entries"] = std::move(entries);
    return dump(j);
}

std::string gram_to_text(const GramMatrix& g) {
    std::ostringstream out;
    out << "gram m=" << g.m << " n=" << g.n << "\n";
    out << "d = " << g.backend.d().str() << "\n";
    out << "basis =";
    for (const Diagram& b : g.basis) out << " " << b.encode();
    out << "\n";
    for (const auto& row : g.entries) {
        for (size_t j = 0; j < row.size(); ++j)
            out << (j ? " | " : "") << row[j].str();
        out << "\n";
    }
    return out.str();
}

namespace {

GramMatrix gram_assemble(int m, int n, const std::string& dstr,
                         std::vector<std::string> basis,
                         std::vector<std::vector<std::string>> entries, const char* what) {
    GramMatrix g;
    g.m = m;
    g.n = n;
    g.backend = infer_backend(dstr);
    for (const std::string& b : basis) {
        Diagram diagram = Diagram::decode(b);
        if (diagram.top_count() != n || diagram.bottom_count() != m)
            throw ParseError(std::string(what) + ": basis diagram " + b +
                             " does not match the signature");
        g.basis.push_back(std::move(diagram));
    }
    if (entries.size() != g.basis.size())
        throw ParseError(std::string(what) + ": entry rows do not match the basis");
    for (auto& row : entries) {
        if (row.size() != g.basis.size())
            throw ParseError(std::string(what) + ": ragged entry row");
        std::vector<Scalar> out;
        for (const std::string& e : row) out.push_back(parse_scalar(e, g.backend));
        g.entries.push_back(std::move(out));
    }
    return g;
}

} // namespace

GramMatrix gram_from_json(const std::string& text) {
    Json j = parse_json(text, "gram json");
    try {
        return gram_assemble(j.at("m").get<int>(), j.at("n").get<int>(),
                             j.at("d").get<std::string>(),
                             j.at("basis").get<std::vector<std::string>>(),
                             j.at("entries").get<std::vector<std::vector<std::string>>>(),
                             "gram json");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("gram json: ") + e.what());
    }
}

GramMatrix gram_from_text(const std::string& text) {
    auto lines = nonempty_lines(text);
    if (lines.size() < 3) throw ParseError("gram text: missing header");
    auto head = split_tokens(lines[0]);
    if (head.size() != 3 || head[0] != "gram")
        throw ParseError("gram text: missing header");
    int m = (int)parse_long(keyed(head[1], "m", "gram text"), "gram text");
    int n = (int)parse_long(keyed(head[2], "n", "gram text"), "gram text");
    if (lines[1].rfind("d = ", 0) != 0) throw ParseError("gram text: missing d line");
    std::string dstr = lines[1].substr(4);
    if (lines[2].rfind("basis =", 0) != 0)
        throw ParseError("gram text: missing basis line");
    std::vector<std::string> basis = split_tokens(lines[2].substr(7));
    std::vector<std::vector<std::string>> entries;
    for (size_t i = 3; i < lines.size(); ++i) {
        std::vector<std::string> row;
        const std::string& line = lines[i];
        size_t pos = 0;
        while (true) {
            size_t bar = line.find(" | ", pos);
            if (bar == std::string::npos) {
                row.push_back(line.substr(pos));
                break;
            }
            row.push_back(line.substr(pos, bar - pos));
            pos = bar + 3;
        }
        entries.push_back(std::move(row));
    }
    return gram_assemble(m, n, dstr, std::move(basis), std::move(entries), "gram text");
}

// ------------------------------------------------------------------ kernel

std::string kernel_to_json(const KernelReport& r) {
    Json j;
    j["strands"] = r.strands;
    j["order"] = r.order;
    j["dimension"] = r.basis.size();
    Json basis = Json::array();
    for (const Morphism& f : r.basis) basis.push_back(morphism_to_jobj(f));
    j["basis"] = std::move(basis);
    return dump(j);
}

KernelReport kernel_from_json(const std::string& text) {
    Json j = parse_json(text, "kernel json");
    KernelReport r;
    size_t dimension;
    try {
        r.strands = j.at("strands").get<int>();
        r.order = j.at("order").get<int>();
        dimension = j.at("dimension").get<size_t>();
        for (const Json& f : j.at("basis")) r.basis.push_back(morphism_from_jobj(f));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("kernel json: ") + e.what());
    }
    if (r.basis.size() != dimension)
        throw ParseError("kernel json: dimension does not match the basis");
    for (const Morphism& f : r.basis) {
        if (f.backend().kind != Scalar::Kind::Cyclotomic || f.backend().order != r.order)
            throw ParseError("kernel json: basis element has the wrong backend");
        if (f.top_count() != r.strands || f.bottom_count() != r.strands)
            throw ParseError("kernel json: basis element has the wrong signature");
    }
    return r;
}

// ---------------------------------------------------------------- bratteli

BratteliDiagram bratteli_from_dot(const std::string& text) {
    // Accepts exactly the shape bratteli_dot writes: quoted "X{k}@{t}"
    // vertices inside per-level subgraphs, then "..." -> "..." edge lines.
    auto vertex = [](const std::string& token, const char* what) {
        if (token.size() < 6 || token.front() != '"' || token[1] != 'X')
            throw ParseError(std::string(what) + ": bad vertex '" + token + "'");
        size_t at = token.find('@');
        size_t close = token.find('"', 1);
        if (at == std::string::npos || close == std::string::npos || close < at)
            throw ParseError(std::string(what) + ": bad vertex '" + token + "'");
        int k = (int)parse_long(token.substr(2, at - 2), what);
        int t = (int)parse_long(token.substr(at + 1, close - at - 1), what);
        return std::pair<int, int>(k, t);
    };

    BratteliDiagram b;
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> edge_list;
    auto lines = nonempty_lines(text);
    if (lines.empty() || lines.front() != "digraph bratteli {" || lines.back() != "}")
        throw ParseError("bratteli dot: not a bratteli digraph");
    for (size_t i = 1; i + 1 < lines.size(); ++i) {
        auto tokens = split_tokens(lines[i]);
        if (tokens.empty()) continue;
        if (tokens[0] == "rankdir=TB;" || tokens[0] == "subgraph" ||
            tokens[0] == "rank=same;" || tokens[0] == "}")
            continue;
        if (tokens.size() == 1 && tokens[0].back() == ';') {
            auto [k, t] = vertex(tokens[0], "bratteli dot");
            if ((size_t)t >= b.levels.size()) b.levels.resize(t + 1);
            b.levels[t].push_back(k);
        } else if (tokens.size() == 3 && tokens[1] == "->") {
            edge_list.emplace_back(vertex(tokens[0], "bratteli dot"),
                                   vertex(tokens[2], "bratteli dot"));
        } else {
            throw ParseError("bratteli dot: unexpected line '" + lines[i] + "'");
        }
    }
    b.edges.resize(b.levels.empty() ? 0 : b.levels.size() - 1);
    for (size_t t = 0; t + 1 < b.levels.size(); ++t)
        b.edges[t].assign(b.levels[t].size(),
                          std::vector<int>(b.levels[t + 1].size(), 0));
    auto position = [&b](const std::pair<int, int>& v) {
        auto [k, t] = v;
        if ((size_t)t >= b.levels.size())
            throw ParseError("bratteli dot: edge endpoint outside the levels");
        const auto& row = b.levels[t];
        for (size_t i = 0; i < row.size(); ++i)
            if (row[i] == k) return std::pair<size_t, size_t>((size_t)t, i);
        throw ParseError("bratteli dot: edge endpoint is not a vertex");
    };
    for (const auto& [from, to] : edge_list) {
        auto [t1, i] = position(from);
        auto [t2, j] = position(to);
        if (t2 != t1 + 1)
            throw ParseError("bratteli dot: edge does not join adjacent levels");
        b.edges[t1][i][j] += 1;
    }
    return b;
}

} // namespace tlcat
