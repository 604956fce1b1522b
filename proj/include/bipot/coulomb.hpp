#pragma once

#include "bipot/bipotential.hpp"
#include "bipot/cover.hpp"
#include "bipot/graphs.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bipot
{

/// Coordinates throughout: x = (x_n, x_t1, x_t2), y = (y_n, y_t1, y_t2).
struct CoulombParams
{
    double mu = 0.5;

    /// Throws std::invalid_argument unless 0 < mu < inf.
    explicit CoulombParams(double friction);
};

struct ContactPoint
{
    double xn = 0.0;
    std::array<double, 2> xt{};
    double yn = 0.0;
    std::array<double, 2> yt{};

    [[nodiscard]] Vector x() const { return {xn, xt[0], xt[1]}; }
    [[nodiscard]] Vector y() const { return {yn, yt[0], yt[1]}; }
    /// Throws std::invalid_argument unless both vectors are 3-D.
    static ContactPoint from_vectors(const Vector& x, const Vector& y);

    friend bool operator==(const ContactPoint&, const ContactPoint&) = default;
};

enum class ContactKind
{
    Separation,
    Sticking,
    Sliding,
    NotInGraph,
};

std::string to_string(ContactKind kind);

struct ContactClass
{
    ContactKind kind = ContactKind::NotInGraph;
    /// x_t / ||x_t|| for Sliding.
    std::array<double, 2> slip_direction{};
    /// Sliding with y = 0: the meeting point of the sliding and separation
    /// branches, counted as in the graph.
    bool sliding_limit = false;
};

/// Branches tested in order Separation, Sticking, Sliding with absolute tolerance tol:
/// Separation: x_n < -tol and ||y|| <= tol;
/// Sticking:   ||x|| <= tol and ||y_t|| <= mu y_n + tol;
/// Sliding:    |x_n| <= tol, ||x_t|| > tol, y_n >= -tol and ||y_t - mu y_n x_t / ||x_t|| || <= tol.
ContactClass classify(const ContactPoint& pt, const CoulombParams& params, double tol = 1e-9);

enum class Cone
{
    K_mu,       ///< ||v_t|| <= mu v_n
    K_mu_star,  ///< mu ||v_t|| + v_n <= 0
    K_0,        ///< v_t = 0, v_n >= 0
    K_0_star,   ///< v_n <= 0
    Disc,       ///< 2-D: ||v|| <= mu p
};

/// Exact inequality test. Cones need 3-D vectors, Disc a 2-D vector.
bool cone_membership(const Vector& v, Cone cone, const CoulombParams& params, double p = 0.0);

enum class Potential
{
    Phi,
    Psi,
    PhiStar,
    PsiStar,
};

/// phi_p(x) = p x_n + mu p ||x_t||, psi_p(y) = indicator of D(p) in y_t,
/// phi_p*(y) = indicator {p} in y_n + indicator D(p) in y_t,
/// psi_p*(x) = mu p ||x_t|| + indicator {0} in x_n; at p = 0: phi_0 = 0,
/// psi_0 = indicator K_0, phi_0* = indicator {0}, psi_0* = indicator K_0*.
/// Throws std::invalid_argument for p < 0 or non-finite p.
ConvexFunction potential_family(double p, Potential which, const CoulombParams& params);

/// mu p ||x_t|| + ind D(p)(y_t) + ind {p}(y_n) + ind {0}(x_n) for p > 0,
/// ind {0}(y) + ind (-inf, 0](x_n) for p = 0, +inf everywhere for p = +inf.
ExtReal b_p(double p, const Vector& x, const Vector& y, const CoulombParams& params);

/// max(phi_p + phi_p*, psi_p* + psi_p) as a spec; p = +inf gives the
/// everywhere-infinite member.
BipotentialSpec b_p_spec(double p, const CoulombParams& params);

/// mu y_n ||x_t|| + ind K_mu(y) + ind K_0*(x).
ExtReal coulomb_bipotential(const Vector& x, const Vector& y, const CoulombParams& params);
BipotentialSpec coulomb_bipotential_spec(const CoulombParams& params);

constexpr double default_p_max = 16.0;
constexpr std::size_t default_p_count = 64;

/// {0} followed by p_max 2^((k - (n - 1)) / 8), k = 0..n-1 (ascending, last = p_max).
std::vector<double> p_grid(double p_max = default_p_max, std::size_t n = default_p_count);

/// Family p -> b_p over the given parameters, optionally followed by p = +inf.
CoverSpec coulomb_cover(const CoulombParams& params,
                        const std::vector<double>& p_values,
                        bool include_infinity = true,
                        std::optional<GraphSample> target = std::nullopt);

enum class Branch
{
    Separation,
    Sticking,
    Sliding,
    All,
};

struct SampleDensity
{
    std::size_t angles = 40;
    /// Sticking radii as fractions of mu p.
    std::vector<double> sticking_radii = {0.5, 1.0};
    /// Sliding multipliers lambda, log-spaced over [lambda_lo, lambda_hi].
    std::size_t slide_lambdas = 3;
    double lambda_lo = 1e-3;
    double lambda_hi = 1e3;
    /// Add (0, (p, 0, 0)) for every p.
    bool include_anchor = true;
    /// Separation: x_n in {-extent k / n}, k = 1..n, times an x_t grid on [-extent, extent]^2.
    std::size_t separation_xn = 4;
    std::size_t separation_xt = 5;
    double separation_extent = 1.0;
};

/// Deterministic stratified sample of the requested branches. Sticking and
/// sliding pairs are generated for every p > 0 in p_values. Every pair
/// classifies as in the graph.
GraphSample sample_graph(const CoulombParams& params, Branch branch, const SampleDensity& density, const std::vector<double>& p_values);

enum class ProbeStratum
{
    Separation,
    Sticking,
    Sliding,
    SlidingLimit,
    OpenGapLoaded,     ///< x_n < 0, y in K_mu \ {0}
    SlipInsideCone,    ///< x_n = 0, x_t != 0, ||y_t|| < mu y_n
    SlipMisaligned,    ///< x_n = 0, x_t != 0, ||y_t|| = mu y_n, y_t not along x_t
    Penetration,       ///< x_n > 0
    OutsideCone,       ///< y not in K_mu
    StuckOutsideCone,  ///< x = 0, y not in K_mu
    Generic,           ///< uniform in a box
};

std::string to_string(ProbeStratum s);
constexpr std::size_t probe_stratum_count = 11;

struct Probe
{
    ContactPoint point;
    ProbeStratum stratum = ProbeStratum::Generic;
};

/// Probes spread evenly over the strata (round robin), deterministic in seed.
/// Wherever y_n > 0 is needed it is drawn from the positive entries of p_values.
std::vector<Probe> stratified_probes(const CoulombParams& params, std::size_t count, std::uint64_t seed, const std::vector<double>& p_values);

struct ProbeMismatch
{
    Probe probe;
    ExtReal lhs;
    ExtReal rhs;
    std::string detail;
};

struct CoulombVerifyReport
{
    double mu = 0.0;
    std::size_t probes = 0;
    std::size_t in_graph = 0;
    std::size_t critical = 0;
    std::size_t sliding_limit = 0;
    /// b(x, y) = <x, y> (within 1e-9 (1 + |<x, y>|)) disagreeing with classify.
    std::vector<ProbeMismatch> critical_mismatches;

    /// Cover identity: min over the p grid of b_p against b.
    std::size_t cover_checked = 0;
    std::size_t cover_outside_cone = 0;
    std::size_t cover_truncated = 0;  ///< y in K_mu with y_n > p_max
    std::size_t cover_mismatch_count = 0;
    std::vector<ProbeMismatch> cover_mismatches;  ///< first 100

    /// b_p = max(b_1p, b_2p) exactly.
    std::size_t max_identity_checked = 0;
    std::vector<ProbeMismatch> max_identity_mismatches;

    [[nodiscard]] bool critical_ok() const { return critical_mismatches.empty(); }
    [[nodiscard]] bool cover_ok() const { return cover_mismatch_count == 0; }
    [[nodiscard]] bool max_identity_ok() const { return max_identity_mismatches.empty(); }
};

CoulombVerifyReport verify_coulomb(const CoulombParams& params,
                                   std::size_t probe_count,
                                   std::uint64_t seed,
                                   const std::vector<double>& p_values,
                                   double tol = 1e-9);

/// Grids for the conjugate-identity sweep of (phi_p, psi_p*): x_n in {-1, 0, 1} and
/// x_t on [-1, 1]^2 with nx_t nodes per axis; y_n in {p/2, p, 3p/2} and y_t on
/// [-1.25 mu p, 1.25 mu p]^2 with ny_t nodes per axis.
Grid coulomb_grid_x(std::size_t nx_t);
Grid coulomb_grid_y(double p, const CoulombParams& params, std::size_t ny_t);

}  // namespace bipot
