#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fracsync/solver.hpp"
#include "fracsync/systems.hpp"
#include "fracsync/trajectory.hpp"

namespace fracsync {

enum class Scenario { TT, RT };
enum class Mode { Sync, Anti };
enum class GainKind { Paper, Corrected, Stabilized };

struct GainVariant {
    GainKind kind = GainKind::Paper;
    std::array<double, 3> k{1.0, 1.0, 1.0};  // stabilized only

    static GainVariant paper() { return {GainKind::Paper, {}}; }
    static GainVariant corrected() { return {GainKind::Corrected, {}}; }
    static GainVariant stabilized(std::array<double, 3> k) {
        return {GainKind::Stabilized, k};
    }
};

struct CouplingScheme {
    Scenario scenario = Scenario::TT;
    Mode mode = Mode::Sync;
    GainVariant gains;
    std::vector<double> orders = {0.9, 0.5, 0.6};
    std::map<std::string, double> t_params;        // a1, b1, c1
    std::map<std::string, double> rossler_params;  // a2, b2, c2 (RT only)
};

struct ClosedLoopDiagonal {
    std::array<double, 3> lambda{};
    std::vector<double> orders;
};

struct CoupledRun {
    Trajectory drive;
    Trajectory response;
    Trajectory error;
};

// Scheme with preset parameters; overrides replace preset values key by key.
CouplingScheme make_scheme(Scenario scenario, Mode mode, GainVariant gains,
                           std::vector<double> orders = {0.9, 0.5, 0.6},
                           const std::map<std::string, double>& t_overrides = {},
                           const std::map<std::string, double>& rossler_overrides = {});

// Linear-feedback matrix A with v = A e.
std::array<std::array<double, 3>, 3> gain_matrix(const CouplingScheme& scheme);

// Cancellation control u evaluated at a joint state (u = cancellation + A e).
std::array<double, 3> build_control(const CouplingScheme& scheme,
                                    std::span<const double> drive_state,
                                    std::span<const double> response_state);

// Eigenvalues of the analytically reduced error system D^{a_i} e_i = lambda_i e_i.
ClosedLoopDiagonal closed_loop_of(const CouplingScheme& scheme);

// (controlled response field - drive field combined per mode) minus the claimed
// diagonal field, evaluated at one joint state. Zero when the cancellation
// algebra is exact.
std::array<double, 3> closed_loop_residual(const CouplingScheme& scheme,
                                           std::span<const double> drive_state,
                                           std::span<const double> response_state);

// Joint 6-dimensional solve; error rows computed as response -/+ drive per mode.
CoupledRun simulate_coupled(const CouplingScheme& scheme,
                            const std::vector<double>& drive_x0,
                            const std::vector<double>& response_x0,
                            const SolverConfig& config);

Trajectory simulate_diagonal(const ClosedLoopDiagonal& closed,
                             const std::array<double, 3>& e0,
                             const SolverConfig& config);

Scenario scenario_from_name(const std::string& name, Mode& mode_out);
std::string scenario_name(Scenario scenario, Mode mode);

}  // namespace fracsync
