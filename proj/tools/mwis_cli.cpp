#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mwis/approx.hpp"
#include "mwis/errors.hpp"
#include "mwis/experiment.hpp"
#include "mwis/graph_io.hpp"
#include "mwis/oracles.hpp"

namespace {

mwis::Rational parse_rat(const std::string& text, const std::string& what) {
    try {
        return mwis::parse_rational(text);
    } catch (const mwis::ParseError&) {
        throw CLI::ValidationError(what, "expected an integer or p/q rational, got '" + text + "'");
    }
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    // "7" or "1,5,9" or "1..20"
    std::vector<std::uint64_t> seeds;
    const auto range = text.find("..");
    if (range != std::string::npos) {
        const std::uint64_t lo = std::stoull(text.substr(0, range));
        const std::uint64_t hi = std::stoull(text.substr(range + 2));
        for (std::uint64_t s = lo; s <= hi; ++s) {
            seeds.push_back(s);
        }
        return seeds;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        seeds.push_back(std::stoull(tok));
    }
    return seeds;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw mwis::InputError("cannot open output file '" + path + "'");
    }
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CONGEST maximum-weight-independent-set approximation toolkit"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a graph file");
    std::string gen_type = "forest";
    int gen_n = 0, gen_param = 1;
    std::uint64_t gen_seed = 0;
    bool gen_seed_set = false;
    long long wmin = 0, wmax = 0;
    std::string gen_out = "-";
    gen->add_option("--type", gen_type, "forest | dout | ring")
        ->check(CLI::IsMember({"forest", "dout", "ring"}));
    gen->add_option("-n,--nodes", gen_n, "node count")->required();
    gen->add_option("-a,--alpha", gen_param, "forest count (type=forest)");
    gen->add_option("-d,--dout", gen_param, "max out-degree (type=dout)");
    gen->add_option("--seed", gen_seed, "generator seed (mandatory)")
        ->each([&](const std::string&) { gen_seed_set = true; });
    gen->add_option("--wmin", wmin, "min node weight");
    gen->add_option("--wmax", wmax, "max node weight");
    gen->add_option("-o,--output", gen_out, "output path ('-' for stdout)");

    // ---- run ----
    auto* run = app.add_subcommand("run", "run an approximation algorithm");
    mwis::ExperimentConfig cfg;
    std::string run_graph, run_gen_type, run_seeds, run_eps = "1/2", run_tau, run_gamma,
                run_eps_prime, run_oracle = "auto", run_certs = "on", run_out = "-";
    int run_n = 0, run_gen_param = 1, run_alpha = 0, run_d = 0, run_k = 0, run_cap = -1;
    long long run_wmin = 0, run_wmax = 0;
    run->add_option("--algo", cfg.algorithm,
                    "basic | squared | generic | linear | alpha-power | directed | delta-eps")
        ->required();
    run->add_option("--graph", run_graph, "input graph file");
    run->add_option("--gen", run_gen_type, "generator: forest | dout | ring");
    run->add_option("-n,--nodes", run_n, "generator node count");
    run->add_option("--gen-param", run_gen_param, "generator parameter (a or d)");
    run->add_option("--seeds", run_seeds, "generator seeds: '7', '1,5,9' or '1..20'");
    run->add_option("--wmin", run_wmin, "generator min weight");
    run->add_option("--wmax", run_wmax, "generator max weight");
    run->add_option("--alpha", run_alpha, "declared arboricity bound");
    run->add_option("--d", run_d, "declared out-degree bound (directed)");
    run->add_option("--eps", run_eps, "epsilon (rational)");
    run->add_option("--k", run_k, "phase count (generic)");
    run->add_option("--tau", run_tau, "tau (linear / alpha-power)");
    run->add_flag("--unknown-alpha", cfg.unknown_alpha, "do not hand alpha to the nodes");
    run->add_option("--gamma", run_gamma, "unknown-alpha estimate growth (rational)");
    run->add_option("--eps-prime", run_eps_prime, "unknown-alpha inner epsilon (rational)");
    run->add_option("--oracle", run_oracle, "auto | on | off")
        ->check(CLI::IsMember({"auto", "on", "off"}));
    run->add_option("--certs", run_certs, "on | off")->check(CLI::IsMember({"on", "off"}));
    run->add_option("--oracle-cap", run_cap, "exact solver size cap");
    run->add_flag("--decimal", cfg.decimal, "append decimal convenience columns");
    run->add_option("-o,--output", run_out, "CSV output path ('-' for stdout)");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check a solution file against a graph");
    std::string ver_graph, ver_solution, ver_q = "1";
    verify->add_option("--graph", ver_graph)->required();
    verify->add_option("--solution", ver_solution)->required();
    verify->add_option("--q", ver_q, "claimed approximation ratio (rational)");

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "exact reference computations");
    std::string orc_graph, orc_arb = "";
    bool orc_mwis = false;
    oracle->add_option("--graph", orc_graph)->required();
    oracle->add_flag("--mwis", orc_mwis, "exact maximum weight independent set");
    oracle->add_option("--arboricity", orc_arb, "exact | bound")
        ->check(CLI::IsMember({"exact", "bound"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            if (!gen_seed_set) {
                throw mwis::InputError("--seed is mandatory for generators");
            }
            mwis::WeightRange wr{wmin, wmax};
            mwis::Graph g(0);
            if (gen_type == "forest") {
                g = mwis::gen_forest_union(gen_n, gen_param, gen_seed, wr);
            } else if (gen_type == "dout") {
                g = mwis::gen_random_dout(gen_n, gen_param, gen_seed, wr);
            } else {
                g = mwis::gen_oriented_ring(gen_n, gen_seed,
                                            (wmin == 0 && wmax == 0) ? mwis::WeightRange{1, 1} : wr);
            }
            std::ostringstream os;
            mwis::save_graph(g, os);
            write_output(gen_out, os.str());
            return 0;
        }
        if (*run) {
            if (!run_graph.empty()) {
                cfg.graph_path = run_graph;
            }
            if (!run_gen_type.empty()) {
                mwis::GeneratorSpec spec;
                if (run_gen_type == "forest") {
                    spec.kind = mwis::GeneratorSpec::Kind::ForestUnion;
                } else if (run_gen_type == "dout") {
                    spec.kind = mwis::GeneratorSpec::Kind::RandomDout;
                } else if (run_gen_type == "ring") {
                    spec.kind = mwis::GeneratorSpec::Kind::OrientedRing;
                    spec.weights = mwis::WeightRange{1, 1};
                } else {
                    throw mwis::InputError("unknown generator '" + run_gen_type + "'");
                }
                spec.n = run_n;
                spec.param = run_gen_param;
                if (run_wmin != 0 || run_wmax != 0) {
                    spec.weights = mwis::WeightRange{run_wmin, run_wmax};
                }
                spec.seeds = parse_seeds(run_seeds);
                cfg.generator = spec;
            }
            if (run_alpha > 0) {
                cfg.alpha = run_alpha;
            }
            if (run_d > 0) {
                cfg.d = run_d;
            }
            cfg.eps = parse_rat(run_eps, "--eps");
            if (run_k > 0) {
                cfg.k = run_k;
            } else if (run->count("--k")) {
                cfg.k = run_k; // let validation reject k <= 0 with a clear message
            }
            if (!run_tau.empty()) {
                cfg.tau = parse_rat(run_tau, "--tau");
            }
            if (!run_gamma.empty()) {
                cfg.gamma = parse_rat(run_gamma, "--gamma");
            }
            if (!run_eps_prime.empty()) {
                cfg.eps_prime = parse_rat(run_eps_prime, "--eps-prime");
            }
            cfg.verify_certificates = run_certs == "on";
            cfg.oracle = run_oracle == "on"    ? mwis::ExperimentConfig::OracleMode::On
                         : run_oracle == "off" ? mwis::ExperimentConfig::OracleMode::Off
                                               : mwis::ExperimentConfig::OracleMode::Auto;
            cfg.oracle_cap = run_cap;
            const mwis::ExperimentOutput out = mwis::run_experiment(cfg);
            write_output(run_out, out.csv);
            return out.all_ok ? 0 : 1;
        }
        if (*verify) {
            return mwis::verify_file(ver_graph, ver_solution, parse_rat(ver_q, "--q"), std::cout);
        }
        if (*oracle) {
            const mwis::LoadedGraph loaded = mwis::load_graph_file(orc_graph);
            if (orc_mwis) {
                const mwis::OracleResult res = mwis::exact_mwis(loaded.graph);
                std::cout << "opt_weight " << mwis::rational_str(res.opt_weight) << '\n';
                std::cout << "witness";
                for (mwis::NodeId v : res.witness) {
                    std::cout << ' ' << loaded.original_ids[static_cast<std::size_t>(v)];
                }
                std::cout << '\n';
                std::cout << "nodes_explored " << res.nodes_explored << '\n';
            }
            if (orc_arb == "exact") {
                std::cout << "arboricity " << mwis::exact_arboricity(loaded.graph) << '\n';
            } else if (orc_arb == "bound") {
                std::cout << "arboricity_upper_bound " << mwis::arboricity_upper_bound(loaded.graph)
                          << '\n';
            }
            return 0;
        }
    } catch (const mwis::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
