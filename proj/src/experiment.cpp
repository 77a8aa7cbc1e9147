#include "mwis/experiment.hpp"

#include <ostream>
#include <sstream>
#include <unordered_map>

#include "mwis/approx.hpp"
#include "mwis/errors.hpp"
#include "mwis/graph_io.hpp"
#include "mwis/oracles.hpp"

namespace mwis {

namespace {

const char* kBaseHeader =
    "instance,algorithm,n,m,alpha,d,eps,k,tau,unknown_alpha,seed,claimed_ratio,"
    "w_solution,w_total,opt,rounds,max_message_bits,independent,certificates,ratio_ok";

void validate(const ExperimentConfig& cfg) {
    const std::string& algo = cfg.algorithm;
    const bool known = algo == "basic" || algo == "squared" || algo == "generic" ||
                       algo == "linear" || algo == "alpha-power" || algo == "directed" ||
                       algo == "delta-eps";
    if (!known) {
        throw InputError("unknown algorithm '" + algo + "'");
    }
    if (algo == "delta-eps") {
        approx_delta_eps(Graph(0), cfg.eps); // always throws UnsupportedError
    }
    if (cfg.graph_path.has_value() == cfg.generator.has_value()) {
        throw InputError("exactly one of --graph or a generator must be given");
    }
    if (cfg.generator && cfg.generator->seeds.empty()) {
        throw InputError("generator seeds are mandatory");
    }
    if (algo == "directed") {
        if (!cfg.d || *cfg.d < 1) {
            throw InputError("algorithm 'directed' requires --d >= 1");
        }
    } else {
        if (!cfg.alpha || *cfg.alpha < 1) {
            throw InputError("algorithm '" + algo + "' requires --alpha >= 1");
        }
    }
    if (algo == "basic" || algo == "squared") {
        if (sgn(cfg.eps) <= 0) {
            throw InputError("algorithm '" + algo + "' requires --eps > 0");
        }
    }
    if (algo == "generic" && (!cfg.k || *cfg.k < 1)) {
        throw InputError("algorithm 'generic' requires --k >= 1");
    }
    if ((algo == "linear" || algo == "alpha-power") && (!cfg.tau || sgn(*cfg.tau) <= 0)) {
        throw InputError("algorithm '" + algo + "' requires --tau > 0");
    }
}

std::string flag(bool pass) { return pass ? "pass" : "fail"; }

} // namespace

std::string experiment_csv_header(bool decimal) {
    std::string header = kBaseHeader;
    if (decimal) {
        header += ",claimed_ratio_dec,w_solution_dec,w_total_dec,opt_dec";
    }
    return header;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    std::ostringstream csv;
    csv << experiment_csv_header(cfg.decimal) << '\n';
    ExperimentOutput output;

    struct Instance {
        Graph graph;
        std::string seed; // empty for file inputs
    };
    std::vector<Instance> instances;
    if (cfg.graph_path) {
        instances.push_back(Instance{load_graph_file(*cfg.graph_path).graph, ""});
    } else {
        for (std::uint64_t seed : cfg.generator->seeds) {
            const auto& spec = *cfg.generator;
            Graph g(0);
            switch (spec.kind) {
                case GeneratorSpec::Kind::ForestUnion:
                    g = gen_forest_union(spec.n, spec.param, seed, spec.weights);
                    break;
                case GeneratorSpec::Kind::RandomDout:
                    g = gen_random_dout(spec.n, spec.param, seed, spec.weights);
                    break;
                case GeneratorSpec::Kind::OrientedRing:
                    g = gen_oriented_ring(spec.n, seed, spec.weights);
                    break;
            }
            instances.push_back(Instance{std::move(g), std::to_string(seed)});
        }
    }

    AlgoKnobs knobs;
    knobs.unknown_alpha = cfg.unknown_alpha;
    knobs.gamma = cfg.gamma;
    knobs.eps_prime = cfg.eps_prime;
    knobs.verify_certificates = cfg.verify_certificates;

    const int cap = cfg.oracle_cap >= 1 ? std::min(cfg.oracle_cap, kOracleHardCap)
                                        : oracle_cap_from_env();

    for (std::size_t idx = 0; idx < instances.size(); ++idx) {
        const Graph& g = instances[idx].graph;
        ApproxResult result;
        if (cfg.algorithm == "basic") {
            result = approx_basic(g, *cfg.alpha, cfg.eps, knobs);
        } else if (cfg.algorithm == "squared") {
            result = approx_squared(g, *cfg.alpha, cfg.eps, knobs);
        } else if (cfg.algorithm == "generic") {
            result = approx_generic(g, *cfg.alpha, *cfg.k, knobs);
        } else if (cfg.algorithm == "linear") {
            result = approx_linear(g, *cfg.alpha, *cfg.tau, knobs);
        } else if (cfg.algorithm == "alpha-power") {
            result = approx_alpha_power(g, *cfg.alpha, *cfg.tau, knobs);
        } else if (cfg.algorithm == "directed") {
            result = approx_directed(g, *cfg.d, knobs);
        }

        const bool independent = is_independent(g, result.solution);
        std::string opt_text;
        std::string ratio_flag = "skip";
        Rational opt;
        const bool want_oracle = cfg.oracle != ExperimentConfig::OracleMode::Off;
        bool oracle_ran = false;
        if (want_oracle) {
            if (g.node_count() <= cap) {
                opt = exact_mwis(g, cap).opt_weight;
                oracle_ran = true;
            } else if (cfg.oracle == ExperimentConfig::OracleMode::On) {
                throw InputError("oracle forced on but n=" + std::to_string(g.node_count()) +
                                 " exceeds the cap " + std::to_string(cap));
            }
        }
        if (oracle_ran) {
            opt_text = rational_str(opt);
            ratio_flag = flag(result.claimed_ratio * result.solution_weight >= opt);
        }
        const std::string cert_flag =
            cfg.verify_certificates ? flag(result.certificates_ok) : "skip";

        const bool row_ok = independent && (!cfg.verify_certificates || result.certificates_ok) &&
                            ratio_flag != "fail";
        output.all_ok = output.all_ok && row_ok;

        csv << idx << ',' << cfg.algorithm << ',' << g.node_count() << ',' << g.edge_count() << ',';
        csv << (cfg.alpha ? std::to_string(*cfg.alpha) : "") << ',';
        csv << (cfg.d ? std::to_string(*cfg.d) : "") << ',';
        const bool uses_eps = cfg.algorithm == "basic" || cfg.algorithm == "squared";
        csv << (uses_eps ? rational_str(cfg.eps) : "") << ',';
        csv << (cfg.k ? std::to_string(*cfg.k) : "") << ',';
        csv << (cfg.tau ? rational_str(*cfg.tau) : "") << ',';
        csv << (cfg.unknown_alpha ? "1" : "0") << ',';
        csv << instances[idx].seed << ',';
        csv << rational_str(result.claimed_ratio) << ',';
        csv << rational_str(result.solution_weight) << ',';
        csv << rational_str(result.total_weight) << ',';
        csv << opt_text << ',';
        csv << result.rounds << ',';
        csv << result.max_message_bits << ',';
        csv << flag(independent) << ',' << cert_flag << ',' << ratio_flag;
        if (cfg.decimal) {
            csv << ',' << rational_decimal_str(result.claimed_ratio) << ','
                << rational_decimal_str(result.solution_weight) << ','
                << rational_decimal_str(result.total_weight) << ','
                << (oracle_ran ? rational_decimal_str(opt) : "");
        }
        csv << '\n';
        ++output.rows;
    }
    output.csv = csv.str();
    return output;
}

int verify_file(const std::string& graph_path, const std::string& solution_path, const Rational& q,
                std::ostream& out) {
    const LoadedGraph loaded = load_graph_file(graph_path);
    const std::vector<long long> raw = load_node_set_file(solution_path);
    std::unordered_map<long long, NodeId> to_dense;
    for (std::size_t i = 0; i < loaded.original_ids.size(); ++i) {
        to_dense.emplace(loaded.original_ids[i], static_cast<NodeId>(i));
    }
    std::vector<NodeId> solution;
    solution.reserve(raw.size());
    for (long long id : raw) {
        const auto it = to_dense.find(id);
        if (it == to_dense.end()) {
            throw InputError("solution references unknown node id " + std::to_string(id));
        }
        solution.push_back(it->second);
    }
    const RatioReport report = check_ratio(loaded.graph, solution, q);
    out << "independent: " << (report.independent ? "pass" : "fail") << '\n';
    out << "w(X) = " << rational_str(report.solution_weight) << ", OPT = "
        << rational_str(report.opt) << ", q = " << rational_str(q) << '\n';
    out << "ratio q*w(X) >= OPT: " << (report.ratio_ok ? "pass" : "fail") << '\n';
    if (!report.pass) {
        out << "verdict: FAIL (" << report.detail << ")\n";
        return 1;
    }
    out << "verdict: PASS\n";
    return 0;
}

} // namespace mwis
