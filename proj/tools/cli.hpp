#pragma once

#include "bipot/io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bipot::cli
{

using io::json;

enum Exit : int
{
    ok = 0,
    check_failed = 1,
    usage_error = 2,
};

struct RunConfig
{
    std::string subcommand;
    std::string mode;
    std::map<std::string, std::string> inputs;

    double grid_r = 8.0;
    std::size_t grid_n = 0;  ///< 0: default per dimension
    std::optional<double> tol;
    std::size_t lambda_n = 21;
    double p_max = 16.0;
    std::size_t p_n = 64;
    std::size_t m_max = 3;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    std::size_t workers = 1;

    double mu = 0.5;
    double lambda = 0.5;
    std::string x;
    std::string y;
    std::string method = "fast";
    std::string branch = "all";
    std::size_t probes = 10000;
    std::size_t trials = 200;
    std::size_t angles = 40;
    double phi0 = 0.0;
};

/// Everything that determines the numbers in a report; workers and the output
/// path are left out.
json config_json(const RunConfig& c, double resolved_tol);

struct Outcome
{
    int exit = Exit::ok;
    json report;
    /// Tabular CSV for subcommands that produce one; otherwise the report is flattened.
    std::optional<std::string> csv;
};

Outcome run_conjugate(const RunConfig& c);
Outcome run_infconv(const RunConfig& c);
Outcome run_subdiff(const RunConfig& c);
Outcome run_graph_check(const RunConfig& c);
Outcome run_bipot_check(const RunConfig& c);
Outcome run_thm31(const RunConfig& c);
Outcome run_cor33(const RunConfig& c);
Outcome run_cover_check(const RunConfig& c);
Outcome run_coulomb(const RunConfig& c);
Outcome run_paper_suite(const RunConfig& c);

/// "a,b,c" -> vector; "a,b;c,d" -> list of vectors. Throw io::InputError.
Vector parse_point(const std::string& text, const std::string& flag);
std::vector<Vector> parse_points(const std::string& text, const std::string& flag);

Grid grid_for(const RunConfig& c, std::size_t dim);

/// One row per leaf: path,value.
std::string flatten_csv(const json& report);

}  // namespace bipot::cli
