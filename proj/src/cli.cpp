#include "svsparse/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "svsparse/dense.hpp"
#include "svsparse/errors.hpp"
#include "svsparse/gen.hpp"
#include "svsparse/graph.hpp"
#include "svsparse/graph_io.hpp"
#include "svsparse/powers.hpp"
#include "svsparse/solver.hpp"
#include "svsparse/sparsify.hpp"
#include "svsparse/walks.hpp"

namespace svsparse {

namespace {

using nlohmann::json;

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_all(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

// graph goes to `output`; the report goes next to it, or to stderr when the
// graph is written to stdout
void emit_graph_and_report(const std::string& output, const WeightedDigraph& G,
                           const json& report) {
    write_all(output, write_graph(G));
    if (output == "-") {
        std::cerr << report.dump() << "\n";
    } else {
        write_all(output + ".report.json", report.dump(2) + "\n");
    }
}

WeightedDigraph load_graph(const std::string& path) { return parse_graph(read_all(path)); }

bool degrees_match(const WeightedDigraph& A, const WeightedDigraph& B) {
    if (A.n != B.n) return false;
    const auto [ain, aout] = degrees(A);
    const auto [bin, bout] = degrees(B);
    for (int v = 0; v < A.n; ++v) {
        if (ain[v] != bin[v] || aout[v] != bout[v]) return false;
    }
    return true;
}

json plan_to_json(const PowerPlan& plan) {
    json stages = json::array();
    for (const PowerStage& st : plan.stages) {
        stages.push_back({{"kind", st.kind},
                          {"budget", st.budget},
                          {"measured", st.measured},
                          {"sigma2", st.sigma2},
                          {"edges", st.edges}});
    }
    return json{{"ell", plan.ell},
                {"eps", plan.eps},
                {"stage_count", plan.stage_count},
                {"stage_budget", plan.stage_budget},
                {"l", plan.l},
                {"stages", stages}};
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> parse_queries(
    const std::string& text) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto bar = line.find('|');
        if (bar == std::string::npos) {
            throw std::runtime_error("query line needs 'S | T': " + line);
        }
        const auto parse_side = [&line](const std::string& part) {
            std::vector<int> vs;
            std::istringstream ps(part);
            int v;
            while (ps >> v) vs.push_back(v);
            if (!ps.eof()) throw std::runtime_error("bad vertex list: " + line);
            return vs;
        };
        out.emplace_back(parse_side(line.substr(0, bar)), parse_side(line.substr(bar + 1)));
    }
    return out;
}

int cmd_sparsify(const RunConfig& cfg) {
    const WeightedDigraph G = load_graph(cfg.input);
    SparsifyOptions opts;
    opts.phi = cfg.phi;
    opts.verify = cfg.verify;
    opts.max_rounds = cfg.max_rounds;
    const WeightedDigraph H = sv_sparsify_digraph(cfg.eps, G, cfg.seed, opts);
    json report{{"command", "sparsify"}, {"n", G.n},
                {"edges_in", G.edges.size()}, {"edges_out", H.edges.size()},
                {"eps", cfg.eps}, {"phi", cfg.phi},
                {"seed", cfg.seed}, {"degrees_exact", degrees_match(G, H)}};
    if (cfg.verify && G.n <= oracle_cap()) {
        const ApproxReport m = measure_sv_eps(H, G);
        report["measured_sv"] = m.epsilon;
        report["kernel_ok"] = m.kernel_ok;
    }
    emit_graph_and_report(cfg.output, H, report);
    return 0;
}

int cmd_power(const RunConfig& cfg) {
    const WeightedDigraph G = load_graph(cfg.input);
    SparsifyOptions opts;
    opts.phi = cfg.phi;
    opts.verify = cfg.verify;
    const PowerResult R = sparsify_power(cfg.eps, G, cfg.ell, cfg.tau, cfg.seed, opts);
    json report{{"command", "power"},
                {"n", G.n},
                {"edges_in", G.edges.size()},
                {"edges_out", R.graph.edges.size()},
                {"eps", cfg.eps},
                {"ell", cfg.ell},
                {"tau", cfg.tau},
                {"seed", cfg.seed},
                {"degrees_exact", degrees_match(G, R.graph)},
                {"plan", plan_to_json(R.plan)}};
    if (cfg.verify && G.n <= oracle_cap()) {
        const Md target = matrix_power(normalized_adjacency(G), cfg.ell);
        const ApproxReport m = measure_svn_eps(normalized_adjacency(R.graph), target);
        report["measured_vs_power"] = m.epsilon;
        report["kernel_ok"] = m.kernel_ok;
    }
    emit_graph_and_report(cfg.output, R.graph, report);
    return 0;
}

int cmd_cut(const RunConfig& cfg, const std::string& queries_path) {
    const WeightedDigraph G = load_graph(cfg.input);
    const CutEstimator est = estimate_cut(cfg.eps, cfg.ell, G, cfg.s_lower, cfg.seed);
    json report{{"command", "cut"},
                {"n", G.n},
                {"edges_in", G.edges.size()},
                {"edges_out", est.H.edges.size()},
                {"eps", cfg.eps},
                {"ell", cfg.ell},
                {"s_lower", cfg.s_lower},
                {"delta", est.delta},
                {"pi_min", est.stat.pi_min},
                {"seed", cfg.seed}};
    if (!queries_path.empty()) {
        const auto queries = parse_queries(read_all(queries_path));
        const bool oracled = cfg.verify && G.n <= oracle_cap();
        Md ref_mass;
        if (oracled) {
            const Md W = walk_matrix(G);
            ref_mass = Md(matrix_power(W, cfg.ell) * est.stat.pi.asDiagonal());
        }
        json rows = json::array();
        for (const auto& [S, T] : queries) {
            const CutQuery q = est.query(S, T);
            json row{{"S", S}, {"T", T}, {"value", q.value}};
            const CutQuery& basis = q;
            if (oracled) {
                const CutQuery r = cut_mass(ref_mass, S, T);
                row["reference"] = r.value;
                row["bound"] = 2.0 * cfg.eps *
                               std::sqrt(std::min(r.cut_S, r.uncut_S) *
                                         std::min(r.cut_T, r.uncut_T));
            } else {
                row["reference"] = nullptr;
                row["bound"] = 2.0 * cfg.eps *
                               std::sqrt(std::min(basis.cut_S, basis.uncut_S) *
                                         std::min(basis.cut_T, basis.uncut_T));
            }
            rows.push_back(std::move(row));
        }
        report["rows"] = std::move(rows);
    }
    emit_graph_and_report(cfg.output, est.H, report);
    return 0;
}

int cmd_solve(const RunConfig& cfg, const std::string& mode_name) {
    const WeightedDigraph G = load_graph(cfg.input);
    SquareMode mode = SquareMode::exact;
    if (mode_name == "drsq") mode = SquareMode::drsq;
    if (mode_name == "sparse") mode = SquareMode::sparse;
    const PsChain chain = ps_chain(G, cfg.k, cfg.eps, mode, cfg.seed);
    const Preconditioner pre =
        ps_precondition(chain, deflation_projector(static_cast<int>(chain.W_list[0].rows())));
    const json report{{"command", "solve"},
                      {"k", cfg.k},
                      {"mode", mode_name},
                      {"seed", cfg.seed},
                      {"eps_list", chain.eps_list},
                      {"final_error", pre.error},
                      {"bound", 50.0 * cfg.k * cfg.k * cfg.eps}};
    write_all(cfg.output, report.dump(2) + "\n");
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& notion, const std::string& a_path,
               const std::string& b_path) {
    const WeightedDigraph Ga = load_graph(a_path);
    const WeightedDigraph Gb = load_graph(b_path);
    if (Ga.n != Gb.n) throw std::invalid_argument("verify: vertex counts differ");
    ApproxReport rep;
    if (notion == "sv") {
        rep = measure_sv_eps(Ga, Gb);
    } else if (notion == "svn") {
        rep = measure_svn_eps(normalized_adjacency(Ga), normalized_adjacency(Gb));
    } else {
        const EulerianCheck chk = validate_eulerian(Gb);
        if (!chk.ok()) {
            throw NotDefined("verify: " + notion + " needs an Eulerian reference graph");
        }
        const auto [din, dout] = degree_vectors(Gb);
        Md D = Md::Zero(Gb.n, Gb.n);
        for (int v = 0; v < Gb.n; ++v) D(v, v) = din(v);
        if (notion == "std") {
            rep.notion = "standard";
            rep.epsilon = measure_std_eps(adjacency(Ga), adjacency(Gb), D);
        } else {  // uc
            rep = measure_uc_eps(adjacency(Ga), adjacency(Gb), D);
        }
    }
    const json out{{"notion", rep.notion},
                   {"epsilon", rep.kernel_ok ? json(rep.epsilon) : json("inf")},
                   {"kernel_ok", rep.kernel_ok},
                   {"grid_points", rep.grid_points},
                   {"grid_gap", rep.grid_gap}};
    write_all(cfg.output, out.dump(2) + "\n");
    return 0;
}

int cmd_stationary(const RunConfig& cfg) {
    const WeightedDigraph G = load_graph(cfg.input);
    const StationaryInfo st = stationary(G);
    std::vector<double> pi(st.pi.data(), st.pi.data() + st.pi.size());
    const json out{{"command", "stationary"},
                   {"n", G.n},
                   {"pi", pi},
                   {"pi_min", st.pi_min},
                   {"residual", st.residual}};
    write_all(cfg.output, out.dump(2) + "\n");
    return 0;
}

long param_at(const std::vector<std::string>& params, size_t i, const char* what) {
    if (i >= params.size()) throw std::runtime_error(std::string("gen: missing ") + what);
    size_t pos = 0;
    const long v = std::stol(params[i], &pos);
    if (pos != params[i].size()) throw std::runtime_error(std::string("gen: bad ") + what);
    return v;
}

int cmd_gen(const RunConfig& cfg, const std::string& kind,
            const std::vector<std::string>& params) {
    WeightedDigraph G;
    json report{{"command", "gen"}, {"kind", kind}, {"seed", cfg.seed}};
    if (kind == "cycle") {
        G = gen_cycle(static_cast<int>(param_at(params, 0, "n")));
    } else if (kind == "lazy-cycle") {
        if (params.size() < 2) throw std::runtime_error("gen: lazy-cycle needs n and delta");
        const auto d = Dyadic::from_double(std::stod(params[1]));
        if (!d) throw std::runtime_error("gen: delta not representable");
        G = gen_lazy_cycle(static_cast<int>(param_at(params, 0, "n")), *d);
    } else if (kind == "complete-loops") {
        G = gen_complete_loops(static_cast<int>(param_at(params, 0, "n")));
    } else if (kind == "regular-random") {
        G = gen_regular_random(static_cast<int>(param_at(params, 0, "n")),
                               static_cast<int>(param_at(params, 1, "d")), cfg.seed);
    } else if (kind == "eulerian-random") {
        G = gen_eulerian_random(static_cast<int>(param_at(params, 0, "n")),
                                static_cast<int>(param_at(params, 1, "d")), cfg.seed);
    } else if (kind == "strong-random") {
        G = gen_strong_random(static_cast<int>(param_at(params, 0, "n")),
                              static_cast<int>(param_at(params, 1, "extra")),
                              static_cast<int>(param_at(params, 2, "wmax")), cfg.seed);
    } else if (kind == "expander") {
        const int d = static_cast<int>(param_at(params, 0, "d"));
        const int c = static_cast<int>(param_at(params, 1, "c"));
        const double target = params.size() > 2 ? std::stod(params[2]) : 1.0;
        const ExpanderSpec H = make_expander(d, c, cfg.seed, target);
        G.n = d;
        G.name = "expander-" + std::to_string(d) + "x" + std::to_string(c);
        for (int i = 0; i < d; ++i) {
            for (int j : H.table[i]) G.edges.push_back({i, j, Dyadic::one()});
        }
        report["lambda"] = H.lambda;
    } else {
        throw std::runtime_error("gen: unknown kind: " + kind);
    }
    report["n"] = G.n;
    report["edges"] = G.edges.size();
    emit_graph_and_report(cfg.output, G, report);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"singular-value approximation and sparsification for Eulerian digraphs"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string mode_name = "exact";
    std::string notion = "sv";
    std::string a_path, b_path, queries_path, gen_kind;
    std::vector<std::string> gen_params;
    int cap_override = -1;

    const auto add_io = [&cfg](CLI::App* sub) {
        sub->add_option("-i,--input", cfg.input, "input graph path, - for stdin");
        sub->add_option("-o,--output", cfg.output, "output path, - for stdout");
    };

    CLI::App* sp = app.add_subcommand("sparsify", "degree-preserving sparsification");
    sp->add_option("--eps", cfg.eps, "target epsilon")->required();
    sp->add_option("--phi", cfg.phi, "expander partition parameter");
    sp->add_option("--seed", cfg.seed, "random seed");
    sp->add_option("--max-rounds", cfg.max_rounds, "cap on sparsification rounds");
    sp->add_flag("--verify,!--no-verify", cfg.verify, "dense certification when feasible");
    add_io(sp);

    CLI::App* pw = app.add_subcommand("power", "sparsify a walk power");
    pw->add_option("--ell", cfg.ell, "power to approximate")->required();
    pw->add_option("--eps", cfg.eps, "target epsilon")->required();
    pw->add_option("--tau", cfg.tau, "singular-gap parameter, sigma_2 <= 1 - 1/tau")->required();
    pw->add_option("--seed", cfg.seed, "random seed");
    pw->add_option("--phi", cfg.phi, "expander partition parameter");
    pw->add_flag("--verify,!--no-verify", cfg.verify, "dense certification when feasible");
    add_io(pw);

    CLI::App* ct = app.add_subcommand("cut", "sparse ell-step cut estimator");
    ct->add_option("--ell", cfg.ell, "walk length")->required();
    ct->add_option("--eps", cfg.eps, "target epsilon")->required();
    ct->add_option("--s-lower", cfg.s_lower, "lower bound on the stationary minimum")
        ->required();
    ct->add_option("--seed", cfg.seed, "random seed");
    ct->add_option("--queries", queries_path, "file of 'S | T' vertex lists");
    ct->add_flag("--verify,!--no-verify", cfg.verify, "dense reference when feasible");
    add_io(ct);

    CLI::App* so = app.add_subcommand("solve", "squaring-recursion preconditioner");
    so->add_option("--k", cfg.k, "chain depth")->required();
    so->add_option("--eps", cfg.eps, "per-step budget for randomized modes");
    so->add_option("--mode", mode_name, "exact | drsq | sparse")
        ->check(CLI::IsMember({"exact", "drsq", "sparse"}));
    so->add_option("--seed", cfg.seed, "random seed");
    add_io(so);

    CLI::App* vf = app.add_subcommand("verify", "measure approximation quality");
    vf->add_option("--notion", notion, "sv | svn | std | uc")
        ->check(CLI::IsMember({"sv", "svn", "std", "uc"}));
    vf->add_option("--a", a_path, "approximating graph")->required();
    vf->add_option("--b", b_path, "reference graph")->required();
    vf->add_option("-o,--output", cfg.output, "output path, - for stdout");

    CLI::App* st = app.add_subcommand("stationary", "stationary distribution");
    add_io(st);

    CLI::App* gn = app.add_subcommand("gen", "deterministic test graphs");
    gn->add_option("kind", gen_kind,
                   "cycle | lazy-cycle | complete-loops | regular-random | "
                   "eulerian-random | strong-random | expander")
        ->required();
    gn->add_option("params", gen_params, "kind-specific numeric parameters");
    gn->add_option("--seed", cfg.seed, "random seed");
    gn->add_option("-o,--output", cfg.output, "output path, - for stdout");

    for (CLI::App* sub : {sp, pw, ct, so, vf, st, gn}) {
        sub->add_option("--oracle-cap", cap_override,
                        "dense certification vertex cap for this run");
    }

    std::vector<const char*> argv;
    argv.push_back("svsparse");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cap_override >= 0) {
        setenv("SVSPARSE_ORACLE_CAP", std::to_string(cap_override).c_str(), 1);
    }

    try {
        if (app.got_subcommand(sp)) return cmd_sparsify(cfg);
        if (app.got_subcommand(pw)) return cmd_power(cfg);
        if (app.got_subcommand(ct)) return cmd_cut(cfg, queries_path);
        if (app.got_subcommand(so)) return cmd_solve(cfg, mode_name);
        if (app.got_subcommand(vf)) return cmd_verify(cfg, notion, a_path, b_path);
        if (app.got_subcommand(st)) return cmd_stationary(cfg);
        if (app.got_subcommand(gn)) return cmd_gen(cfg, gen_kind, gen_params);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}

}  // namespace svsparse
