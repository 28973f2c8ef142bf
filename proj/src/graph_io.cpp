#include "svsparse/graph_io.hpp"

#include <sstream>

#include "svsparse/errors.hpp"

namespace svsparse {

namespace {

u128 parse_u128(const std::string& s, const std::string& what) {
    if (s.empty()) throw ParseError("empty " + what);
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ParseError("bad digit in " + what + ": '" + s + "'");
        u128 next = v * 10 + static_cast<unsigned>(c - '0');
        if (next / 10 != v) throw OverflowError(what + " literal overflows");
        v = next;
    }
    return v;
}

Dyadic parse_weight(const std::string& tok) {
    auto slash = tok.find('/');
    if (slash == std::string::npos) {
        if (tok.find('.') != std::string::npos)
            throw ParseError("non-dyadic weight literal: '" + tok + "'");
        return Dyadic(parse_u128(tok, "weight"), 0);
    }
    u128 num = parse_u128(tok.substr(0, slash), "weight numerator");
    u128 den = parse_u128(tok.substr(slash + 1), "weight denominator");
    if (den == 0 || (den & (den - 1)) != 0)
        throw ParseError("non-dyadic weight literal: '" + tok + "'");
    int k = 0;
    while (den > 1) {
        den >>= 1;
        ++k;
    }
    return Dyadic(num, k);
}

}  // namespace

WeightedDigraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    WeightedDigraph G;
    bool have_header = false;
    long expected_m = 0;
    long seen_m = 0;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string p;
            long n, m;
            if (!(ls >> p >> n >> m) || p != "p" || n < 0 || m < 0)
                throw ParseError("line " + std::to_string(lineno) + ": expected 'p <n> <m>'");
            G.n = static_cast<int>(n);
            expected_m = m;
            have_header = true;
            continue;
        }
        long t, h;
        std::string wtok;
        if (!(ls >> t >> h >> wtok))
            throw ParseError("line " + std::to_string(lineno) + ": expected '<tail> <head> <weight>'");
        std::string extra;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
        if (t < 0 || t >= G.n || h < 0 || h >= G.n)
            throw ParseError("line " + std::to_string(lineno) + ": vertex id out of range");
        G.edges.push_back(Edge{static_cast<int>(t), static_cast<int>(h), parse_weight(wtok)});
        ++seen_m;
    }
    if (!have_header) throw ParseError("missing 'p <n> <m>' header");
    if (seen_m != expected_m)
        throw ParseError("header declares " + std::to_string(expected_m) + " edges, found " +
                         std::to_string(seen_m));
    return G;
}

std::string write_graph(const WeightedDigraph& G) {
    std::ostringstream out;
    out << "p " << G.n << " " << G.edges.size() << "\n";
    for (const Edge& e : G.edges) {
        out << e.tail << " " << e.head << " " << e.w.to_string() << "\n";
    }
    return out.str();
}

}  // namespace svsparse
