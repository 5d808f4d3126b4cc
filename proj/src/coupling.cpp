#include "fracsync/coupling.hpp"

#include <cmath>

#include "fracsync/errors.hpp"

namespace fracsync {

namespace {

struct Params {
    double a1 = 0, b1 = 0, c1 = 0;
    double a2 = 0, b2 = 0, c2 = 0;
};

Params extract(const CouplingScheme& scheme) {
    Params p;
    p.a1 = scheme.t_params.at("a1");
    p.b1 = scheme.t_params.at("b1");
    p.c1 = scheme.t_params.at("c1");
    if (scheme.scenario == Scenario::RT) {
        p.a2 = scheme.rossler_params.at("a2");
        p.b2 = scheme.rossler_params.at("b2");
        p.c2 = scheme.rossler_params.at("c2");
    }
    return p;
}

std::map<std::string, double> merged(const std::map<std::string, double>& preset,
                                     const std::map<std::string, double>& overrides,
                                     const std::string& which) {
    std::map<std::string, double> out = preset;
    for (const auto& [key, value] : overrides) {
        if (out.find(key) == out.end())
            throw ConfigError("no parameter '" + key + "' in " + which + " preset");
        out[key] = value;
    }
    return out;
}

// Response vector field before control. TT reuses the T system; RT uses the
// modified T form whose cross term carries a2.
void response_base(const CouplingScheme& scheme, const Params& p,
                   std::span<const double> s, std::span<double> d) {
    if (scheme.scenario == Scenario::TT) {
        d[0] = p.a1 * (s[1] - s[0]);
        d[1] = (p.c1 - p.a1) * s[0] - p.a1 * s[0] * s[2];
        d[2] = s[0] * s[1] - p.b1 * s[2];
    } else {
        d[0] = p.a1 * (s[1] - s[0]);
        d[1] = (p.c1 - p.a1) * s[0] - p.a2 * s[0] * s[2];
        d[2] = s[0] * s[1] - p.b1 * s[2];
    }
}

void drive_field(const CouplingScheme& scheme, const Params& p,
                 std::span<const double> s, std::span<double> d) {
    if (scheme.scenario == Scenario::TT) {
        d[0] = p.a1 * (s[1] - s[0]);
        d[1] = (p.c1 - p.a1) * s[0] - p.a1 * s[0] * s[2];
        d[2] = s[0] * s[1] - p.b1 * s[2];
    } else {
        d[0] = -s[1] - s[2];
        d[1] = s[0] + p.a2 * s[1];
        d[2] = p.b2 + s[2] * (s[0] - p.c2);
    }
}

}  // namespace

CouplingScheme make_scheme(Scenario scenario, Mode mode, GainVariant gains,
                           std::vector<double> orders,
                           const std::map<std::string, double>& t_overrides,
                           const std::map<std::string, double>& rossler_overrides) {
    if (orders.size() != 3) throw DomainError("coupling schemes are 3-dimensional");
    for (double a : orders)
        if (!(a > 0.0 && a <= 1.0)) throw DomainError("orders must lie in (0, 1]");
    if (gains.kind == GainKind::Stabilized)
        for (double k : gains.k)
            if (!(k > 0.0)) throw ConfigError("stabilized gains require positive k");
    CouplingScheme scheme;
    scheme.scenario = scenario;
    scheme.mode = mode;
    scheme.gains = gains;
    scheme.orders = std::move(orders);
    scheme.t_params = merged(t_preset(), t_overrides, "t");
    scheme.rossler_params = merged(rossler_preset(), rossler_overrides, "rossler");
    return scheme;
}

std::array<std::array<double, 3>, 3> gain_matrix(const CouplingScheme& scheme) {
    const Params p = extract(scheme);
    const auto& k = scheme.gains.k;
    if (scheme.scenario == Scenario::TT) {
        switch (scheme.gains.kind) {
            case GainKind::Paper:
                return {{{0.0, p.a1, 0.0},
                         {-(p.c1 - p.a1), p.c1, 0.0},
                         {0.0, 0.0, 2.0 * p.b1}}};
            case GainKind::Corrected:
                return {{{2.0 * p.a1, -p.a1, 0.0},
                         {-(p.c1 - p.a1), p.c1, 0.0},
                         {0.0, 0.0, 2.0 * p.b1}}};
            case GainKind::Stabilized:
                return {{{p.a1 - k[0], -p.a1, 0.0},
                         {-(p.c1 - p.a1), -k[1], 0.0},
                         {0.0, 0.0, p.b1 - k[2]}}};
        }
    } else {
        switch (scheme.gains.kind) {
            case GainKind::Paper:
            case GainKind::Corrected:
                return {{{2.0 * p.a1, -(p.a1 - 1.0), 1.0},
                         {-(p.c1 - p.a1 + 1.0), 0.0, 0.0},
                         {0.0, 0.0, 2.0 * p.b1 + p.c2}}};
            case GainKind::Stabilized:
                return {{{p.a1 - k[0], -(p.a1 - 1.0), 1.0},
                         {-(p.c1 - p.a1 + 1.0), -p.a2 - k[1], 0.0},
                         {0.0, 0.0, p.b1 + p.c2 - k[2]}}};
        }
    }
    throw ConfigError("unreachable gain variant");
}

std::array<double, 3> build_control(const CouplingScheme& scheme,
                                    std::span<const double> drive_state,
                                    std::span<const double> response_state) {
    for (double v : drive_state)
        if (!std::isfinite(v)) throw DomainError("build_control requires finite states");
    for (double v : response_state)
        if (!std::isfinite(v)) throw DomainError("build_control requires finite states");

    const Params p = extract(scheme);
    const double x1 = drive_state[0], y1 = drive_state[1], z1 = drive_state[2];
    const double x2 = response_state[0], y2 = response_state[1], z2 = response_state[2];
    const double sign = scheme.mode == Mode::Sync ? -1.0 : 1.0;

    std::array<double, 3> e{x2 + sign * x1, y2 + sign * y1, z2 + sign * z1};
    const auto a = gain_matrix(scheme);
    std::array<double, 3> v{};
    for (int r = 0; r < 3; ++r)
        v[r] = a[r][0] * e[0] + a[r][1] * e[1] + a[r][2] * e[2];

    std::array<double, 3> u{};
    if (scheme.scenario == Scenario::TT) {
        if (scheme.mode == Mode::Sync) {
            u[0] = v[0];
            u[1] = p.a1 * (x2 * z2 - x1 * z1) + v[1];
            u[2] = x1 * y1 - x2 * y2 + v[2];
        } else {
            u[0] = v[0];
            u[1] = p.a1 * (x2 * z2 + x1 * z1) + v[1];
            u[2] = -x1 * y1 - x2 * y2 + v[2];
        }
    } else {
        if (scheme.mode == Mode::Sync) {
            u[0] = -p.a1 * (y1 - x1) - y2 - z2 + v[0];
            u[1] = -(p.c1 - p.a1) * x1 + x2 + p.a2 * x2 * z2 + p.a2 * y2 + v[1];
            u[2] = p.b2 - x2 * y2 + p.b1 * z1 + z1 * x1 - p.c2 * z2 + v[2];
        } else {
            u[0] = -p.a1 * (x1 - y1) - y2 - z2 + v[0];
            u[1] = (p.c1 - p.a1) * x1 + x2 + p.a2 * x2 * z2 + p.a2 * y2 + v[1];
            u[2] = -p.b2 - x2 * y2 - p.b1 * z1 - z1 * x1 - p.c2 * z2 + v[2];
        }
    }
    return u;
}

ClosedLoopDiagonal closed_loop_of(const CouplingScheme& scheme) {
    const Params p = extract(scheme);
    ClosedLoopDiagonal closed;
    closed.orders = scheme.orders;
    if (scheme.gains.kind == GainKind::Stabilized)
        closed.lambda = {-scheme.gains.k[0], -scheme.gains.k[1], -scheme.gains.k[2]};
    else if (scheme.scenario == Scenario::TT)
        closed.lambda = {p.a1, p.c1, p.b1};
    else
        closed.lambda = {p.a1, p.a2, p.b1};
    return closed;
}

std::array<double, 3> closed_loop_residual(const CouplingScheme& scheme,
                                           std::span<const double> drive_state,
                                           std::span<const double> response_state) {
    const Params p = extract(scheme);
    const double sign = scheme.mode == Mode::Sync ? -1.0 : 1.0;
    std::array<double, 3> dd{}, dr{};
    drive_field(scheme, p, drive_state, std::span<double>(dd));
    response_base(scheme, p, response_state, std::span<double>(dr));
    const auto u = build_control(scheme, drive_state, response_state);
    const auto closed = closed_loop_of(scheme);
    std::array<double, 3> res{};
    for (int i = 0; i < 3; ++i) {
        const double e_i = response_state[i] + sign * drive_state[i];
        const double de_i = dr[i] + u[i] + sign * dd[i];
        res[i] = de_i - closed.lambda[i] * e_i;
    }
    return res;
}

CoupledRun simulate_coupled(const CouplingScheme& scheme,
                            const std::vector<double>& drive_x0,
                            const std::vector<double>& response_x0,
                            const SolverConfig& config) {
    if (drive_x0.size() != 3 || response_x0.size() != 3)
        throw DomainError("simulate_coupled requires 3-dimensional initial conditions");
    const Params p = extract(scheme);

    Field joint = [scheme, p](double t, std::span<const double> s, std::span<double> d) {
        (void)t;
        const std::span<const double> xd = s.subspan(0, 3);
        const std::span<const double> xr = s.subspan(3, 3);
        drive_field(scheme, p, xd, d.subspan(0, 3));
        response_base(scheme, p, xr, d.subspan(3, 3));
        const auto u = build_control(scheme, xd, xr);
        d[3] += u[0];
        d[4] += u[1];
        d[5] += u[2];
    };

    std::vector<double> orders6(6), x06(6);
    for (int i = 0; i < 3; ++i) {
        orders6[i] = scheme.orders[i];
        orders6[i + 3] = scheme.orders[i];
        x06[i] = drive_x0[i];
        x06[i + 3] = response_x0[i];
    }

    const Trajectory joint_traj = abm_solve(joint, orders6, x06, config);
    const double sign = scheme.mode == Mode::Sync ? -1.0 : 1.0;

    CoupledRun run;
    for (Trajectory* t : {&run.drive, &run.response, &run.error}) {
        t->step_h = joint_traj.step_h;
        t->dim = 3;
        t->times = joint_traj.times;
        t->status = joint_traj.status;
        t->diverged_at = joint_traj.diverged_at;
        t->states.resize(joint_traj.rows() * 3);
    }
    for (std::size_t r = 0; r < joint_traj.rows(); ++r)
        for (int i = 0; i < 3; ++i) {
            const double xd = joint_traj.state(r, i);
            const double xr = joint_traj.state(r, i + 3);
            run.drive.states[r * 3 + i] = xd;
            run.response.states[r * 3 + i] = xr;
            run.error.states[r * 3 + i] = xr + sign * xd;
        }
    return run;
}

Trajectory simulate_diagonal(const ClosedLoopDiagonal& closed,
                             const std::array<double, 3>& e0,
                             const SolverConfig& config) {
    const std::array<double, 3> lambda = closed.lambda;
    Field diag = [lambda](double, std::span<const double> s, std::span<double> d) {
        d[0] = lambda[0] * s[0];
        d[1] = lambda[1] * s[1];
        d[2] = lambda[2] * s[2];
    };
    return abm_solve(diag, closed.orders, {e0[0], e0[1], e0[2]}, config);
}

Scenario scenario_from_name(const std::string& name, Mode& mode_out) {
    if (name == "tt-sync") { mode_out = Mode::Sync; return Scenario::TT; }
    if (name == "tt-anti") { mode_out = Mode::Anti; return Scenario::TT; }
    if (name == "rt-sync") { mode_out = Mode::Sync; return Scenario::RT; }
    if (name == "rt-anti") { mode_out = Mode::Anti; return Scenario::RT; }
    throw ConfigError("unknown scenario '" + name +
                      "' (expected tt-sync, tt-anti, rt-sync, rt-anti)");
}

std::string scenario_name(Scenario scenario, Mode mode) {
    std::string out = scenario == Scenario::TT ? "tt" : "rt";
    out += mode == Mode::Sync ? "-sync" : "-anti";
    return out;
}

}  // namespace fracsync
