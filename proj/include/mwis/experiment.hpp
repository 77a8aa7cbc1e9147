#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mwis/generators.hpp"
#include "mwis/rational.hpp"

namespace mwis {

struct GeneratorSpec {
    enum class Kind { ForestUnion, RandomDout, OrientedRing };
    Kind kind = Kind::ForestUnion;
    int n = 0;
    int param = 1; // a for forests, d for digraphs (ignored for rings)
    std::vector<std::uint64_t> seeds;
    WeightRange weights;
};

struct ExperimentConfig {
    std::string algorithm; // basic|squared|generic|linear|alpha-power|directed|delta-eps
    std::optional<std::string> graph_path;
    std::optional<GeneratorSpec> generator;

    std::optional<int> alpha;
    std::optional<int> d;
    Rational eps{1, 2};
    std::optional<int> k;
    std::optional<Rational> tau;

    bool unknown_alpha = false;
    Rational gamma{0};
    Rational eps_prime{0};

    bool verify_certificates = true;
    enum class OracleMode { Auto, On, Off };
    OracleMode oracle = OracleMode::Auto;
    int oracle_cap = -1; // -1: MWIS_ORACLE_CAP or default

    bool decimal = false;
};

struct ExperimentOutput {
    std::string csv;
    int rows = 0;
    bool all_ok = true; // exit status is nonzero iff any verification failed
};

std::string experiment_csv_header(bool decimal);

/// Validates the config, runs one row per instance, and returns the CSV.
/// Identical config + seeds produce byte-identical CSV.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Loads a graph and a solution (external ids), checks independence and the
/// ratio q*w(X) >= OPT, prints a verdict, and returns a process exit status.
int verify_file(const std::string& graph_path, const std::string& solution_path, const Rational& q,
                std::ostream& out);

} // namespace mwis
