#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mwis/approx.hpp"
#include "mwis/coloring.hpp"
#include "mwis/experiment.hpp"
#include "mwis/generators.hpp"
#include "mwis/graph_io.hpp"
#include "mwis/oracles.hpp"
#include "mwis/sparse_set.hpp"

namespace py = pybind11;
using namespace mwis;

namespace {

Rational rat(const std::string& text) { return parse_rational(text); }

AlgoKnobs knobs_from(bool unknown_alpha, const std::string& gamma, const std::string& eps_prime,
                     bool verify_certificates) {
    AlgoKnobs knobs;
    knobs.unknown_alpha = unknown_alpha;
    if (!gamma.empty()) {
        knobs.gamma = rat(gamma);
    }
    if (!eps_prime.empty()) {
        knobs.eps_prime = rat(eps_prime);
    }
    knobs.verify_certificates = verify_certificates;
    return knobs;
}

py::dict result_dict(const ApproxResult& r) {
    py::dict d;
    d["algorithm"] = r.algorithm;
    d["solution"] = r.solution;
    d["claimed_ratio"] = rational_str(r.claimed_ratio);
    d["solution_weight"] = rational_str(r.solution_weight);
    d["total_weight"] = rational_str(r.total_weight);
    d["rounds"] = r.rounds;
    d["max_message_bits"] = r.max_message_bits;
    d["layers"] = r.layers;
    d["colors"] = r.colors;
    d["effective_k"] = r.effective_k;
    d["certificates_ok"] = r.certificates_ok;
    py::list weights;
    for (const auto& w : r.phase_weights) {
        weights.append(rational_str(w));
    }
    d["phase_weights"] = weights;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "CONGEST maximum-weight-independent-set approximation toolkit";

    py::register_exception<Error>(m, "MwisError");

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, bool>(), py::arg("n"), py::arg("directed") = false)
        .def_property_readonly("n", &Graph::node_count)
        .def_property_readonly("m", &Graph::edge_count)
        .def_property_readonly("directed", &Graph::directed)
        .def("add_edge", &Graph::add_edge)
        .def("has_edge", &Graph::has_edge)
        .def("degree", &Graph::degree)
        .def("out_degree", &Graph::out_degree)
        .def("weight", [](const Graph& g, NodeId v) { return rational_str(g.weight(v)); })
        .def("set_weight", [](Graph& g, NodeId v, const std::string& w) { g.set_weight(v, rat(w)); })
        .def("total_weight", [](const Graph& g) { return rational_str(g.total_weight()); })
        .def("edges",
             [](const Graph& g) {
                 std::vector<std::pair<NodeId, NodeId>> out;
                 out.reserve(static_cast<std::size_t>(g.edge_count()));
                 for (const auto& e : g.edges()) {
                     out.emplace_back(e.a, e.b);
                 }
                 return out;
             })
        .def("__repr__", [](const Graph& g) {
            std::ostringstream os;
            os << "Graph(n=" << g.node_count() << ", m=" << g.edge_count()
               << (g.directed() ? ", directed" : "") << ")";
            return os.str();
        });

    m.def(
        "gen_forest_union",
        [](int n, int a, std::uint64_t seed, long long wmin, long long wmax) {
            return gen_forest_union(n, a, seed, WeightRange{wmin, wmax});
        },
        py::arg("n"), py::arg("a"), py::arg("seed"), py::arg("wmin") = 0, py::arg("wmax") = 0);
    m.def(
        "gen_random_dout",
        [](int n, int d, std::uint64_t seed, long long wmin, long long wmax) {
            return gen_random_dout(n, d, seed, WeightRange{wmin, wmax});
        },
        py::arg("n"), py::arg("d"), py::arg("seed"), py::arg("wmin") = 0, py::arg("wmax") = 0);
    m.def(
        "gen_oriented_ring",
        [](int n, std::uint64_t seed) { return gen_oriented_ring(n, seed); }, py::arg("n"),
        py::arg("seed") = 0);

    m.def("load_graph", [](const std::string& path) {
        LoadedGraph loaded = load_graph_file(path);
        return py::make_tuple(std::move(loaded.graph), loaded.original_ids);
    });
    m.def("save_graph", [](const Graph& g, const std::string& path) { save_graph_file(g, path); });
    m.def("induced_subgraph", [](const Graph& g, const std::vector<NodeId>& nodes) {
        InducedSubgraph sub = induced_subgraph(g, nodes);
        return py::make_tuple(std::move(sub.graph), sub.to_parent);
    });

    m.def(
        "exact_mwis",
        [](const Graph& g, int cap) {
            const OracleResult r = exact_mwis(g, cap);
            py::dict d;
            d["opt_weight"] = rational_str(r.opt_weight);
            d["witness"] = r.witness;
            d["nodes_explored"] = r.nodes_explored;
            return d;
        },
        py::arg("g"), py::arg("cap") = -1);
    m.def("exact_arboricity", &exact_arboricity);
    m.def("arboricity_upper_bound", &arboricity_upper_bound);
    m.def("is_independent", [](const Graph& g, const std::vector<NodeId>& nodes) {
        return is_independent(g, nodes);
    });
    m.def(
        "check_ratio",
        [](const Graph& g, const std::vector<NodeId>& nodes, const std::string& q, int cap) {
            const RatioReport r = check_ratio(g, nodes, rat(q), cap);
            py::dict d;
            d["independent"] = r.independent;
            d["ratio_ok"] = r.ratio_ok;
            d["opt"] = rational_str(r.opt);
            d["solution_weight"] = rational_str(r.solution_weight);
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            return d;
        },
        py::arg("g"), py::arg("nodes"), py::arg("q"), py::arg("cap") = -1);

    m.def(
        "sparse_set",
        [](const Graph& g, const std::vector<long long>& colors, int beta, long long f) {
            BoundedColoring c;
            c.beta = beta;
            c.color.reserve(colors.size());
            for (long long value : colors) {
                c.color.push_back(Color::flat(value));
            }
            const SparseSetOutcome outcome = sparse_set(g, c, f);
            const DualCertificate cert = build_dual_certificate(g, outcome);
            const CertReport report = verify_certificate(g, outcome, cert);
            py::dict d;
            d["selected"] = outcome.selected;
            py::list statuses;
            for (NodeStatus s : outcome.status) {
                statuses.append(std::string(status_str(s)));
            }
            d["status"] = statuses;
            py::list lambdas;
            for (const auto& l : outcome.lambda) {
                lambdas.append(rational_str(l));
            }
            d["lambda"] = lambdas;
            d["rounds"] = outcome.trace.rounds_used;
            d["colors_used"] = outcome.colors_used;
            d["selected_weight"] = rational_str(outcome.selected_weight(g));
            d["certificate_pass"] = report.pass();
            return d;
        },
        py::arg("g"), py::arg("colors"), py::arg("beta"), py::arg("f"),
        "Run the two-stage selection under a flat beta-bounded coloring and "
        "verify its dual certificate.");

    m.def(
        "approx_basic",
        [](const Graph& g, int a, const std::string& eps, bool unknown_alpha,
           const std::string& gamma, const std::string& eps_prime, bool verify) {
            return result_dict(
                approx_basic(g, a, rat(eps), knobs_from(unknown_alpha, gamma, eps_prime, verify)));
        },
        py::arg("g"), py::arg("a"), py::arg("eps") = "1/2", py::arg("unknown_alpha") = false,
        py::arg("gamma") = "", py::arg("eps_prime") = "", py::arg("verify") = true);
    m.def(
        "approx_squared",
        [](const Graph& g, int a, const std::string& eps, bool unknown_alpha,
           const std::string& gamma, const std::string& eps_prime, bool verify) {
            return result_dict(approx_squared(g, a, rat(eps),
                                              knobs_from(unknown_alpha, gamma, eps_prime, verify)));
        },
        py::arg("g"), py::arg("a"), py::arg("eps") = "1/2", py::arg("unknown_alpha") = false,
        py::arg("gamma") = "", py::arg("eps_prime") = "", py::arg("verify") = true);
    m.def(
        "approx_generic",
        [](const Graph& g, int a, int k, bool unknown_alpha, const std::string& gamma,
           const std::string& eps_prime, bool verify) {
            return result_dict(
                approx_generic(g, a, k, knobs_from(unknown_alpha, gamma, eps_prime, verify)));
        },
        py::arg("g"), py::arg("a"), py::arg("k"), py::arg("unknown_alpha") = false,
        py::arg("gamma") = "", py::arg("eps_prime") = "", py::arg("verify") = true);
    m.def(
        "approx_linear",
        [](const Graph& g, int a, const std::string& tau, bool verify) {
            AlgoKnobs knobs;
            knobs.verify_certificates = verify;
            return result_dict(approx_linear(g, a, rat(tau), knobs));
        },
        py::arg("g"), py::arg("a"), py::arg("tau"), py::arg("verify") = true);
    m.def(
        "approx_alpha_power",
        [](const Graph& g, int a, const std::string& tau, bool verify) {
            AlgoKnobs knobs;
            knobs.verify_certificates = verify;
            return result_dict(approx_alpha_power(g, a, rat(tau), knobs));
        },
        py::arg("g"), py::arg("a"), py::arg("tau"), py::arg("verify") = true);
    m.def(
        "approx_directed",
        [](const Graph& g, int d, bool verify) {
            AlgoKnobs knobs;
            knobs.verify_certificates = verify;
            return result_dict(approx_directed(g, d, knobs));
        },
        py::arg("g"), py::arg("d"), py::arg("verify") = true);
    m.def("approx_delta_eps", [](const Graph& g, const std::string& eps) {
        return result_dict(approx_delta_eps(g, rat(eps)));
    });

    m.def(
        "run_experiment_csv",
        [](const std::string& algorithm, const std::string& gen, int n, int param,
           const std::vector<std::uint64_t>& seeds, int alpha, int d, const std::string& eps,
           int k, const std::string& tau, bool unknown_alpha, bool decimal) {
            ExperimentConfig cfg;
            cfg.algorithm = algorithm;
            GeneratorSpec spec;
            if (gen == "forest") {
                spec.kind = GeneratorSpec::Kind::ForestUnion;
            } else if (gen == "dout") {
                spec.kind = GeneratorSpec::Kind::RandomDout;
            } else if (gen == "ring") {
                spec.kind = GeneratorSpec::Kind::OrientedRing;
                spec.weights = WeightRange{1, 1};
            } else {
                throw InputError("unknown generator '" + gen + "'");
            }
            spec.n = n;
            spec.param = param;
            spec.seeds = seeds;
            cfg.generator = spec;
            if (alpha > 0) {
                cfg.alpha = alpha;
            }
            if (d > 0) {
                cfg.d = d;
            }
            cfg.eps = rat(eps);
            if (k > 0) {
                cfg.k = k;
            }
            if (!tau.empty()) {
                cfg.tau = rat(tau);
            }
            cfg.unknown_alpha = unknown_alpha;
            cfg.decimal = decimal;
            const ExperimentOutput out = run_experiment(cfg);
            return py::make_tuple(out.csv, out.all_ok);
        },
        py::arg("algorithm"), py::arg("gen"), py::arg("n"), py::arg("param"), py::arg("seeds"),
        py::arg("alpha") = 0, py::arg("d") = 0, py::arg("eps") = "1/2", py::arg("k") = 0,
        py::arg("tau") = "", py::arg("unknown_alpha") = false, py::arg("decimal") = false);
}
