#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace irf {

enum class OutputFormat { Json, Csv };

struct RunConfig {
    std::string command;  // verify | simulate | observables | asymptotics
    std::string preset;
    std::string config_path;
    std::uint64_t seed = 0;
    std::size_t samples = 10000;
    int threads = 1;
    std::string out;  // empty: standard output
    OutputFormat format = OutputFormat::Json;
    std::optional<double> tolerance;
    bool timing = false;

    // verify
    std::string suite = "identities";

    // simulate / observables / asymptotics
    std::string model;
    double lambda_bar = 1.0;
    double q = 0.5;
    double alpha = 1.0;
    double t = 1.0;
    std::vector<int> xs;
    int N = 1;
    std::vector<std::string> compare;
    long x_min = -10;
    long x_max = 10;
    int X = 6;
    int Y = 6;

    // asymptotics
    std::string study = "suite";  // suite | profile | limit
    double L = 400.0;
    double tau = 1.0;
    std::vector<double> chis;
    std::string regime = "I";
    double l = 1.0;
    std::size_t ks_trajectories = 200;
    bool ks = true;

    void validate() const;
};

// Exit codes: 0 all hard checks pass, 1 a check failed (names on err), 2 usage
// or parameter error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (program name first) and runs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace irf
