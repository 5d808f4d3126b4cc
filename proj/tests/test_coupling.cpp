#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <doctest.h>

#include "fracsync/coupling.hpp"
#include "fracsync/errors.hpp"
#include "fracsync/mittag_leffler.hpp"
#include "fracsync/solver.hpp"
#include "fracsync/systems.hpp"

using namespace fracsync;

namespace {

SolverConfig cfg(double h, std::size_t n_steps) {
    SolverConfig c;
    c.step_h = h;
    c.n_steps = n_steps;
    return c;
}

CouplingScheme scheme_of(Scenario s, Mode m, GainVariant g) {
    return make_scheme(s, m, g);
}

double max_abs_error(const CoupledRun& run) {
    double worst = 0.0;
    for (double v : run.error.states) worst = std::max(worst, std::fabs(v));
    return worst;
}

}  // namespace

TEST_SUITE("coupling") {

TEST_CASE("build_control: TT sync zero-error fixed point") {
    const auto scheme = scheme_of(Scenario::TT, Mode::Sync, GainVariant::paper());
    const std::array<double, 3> state{1.0, 1.0, 1.0};
    const auto u = build_control(scheme, state, state);
    CHECK(u[0] == 0.0);
    CHECK(u[1] == 0.0);
    CHECK(u[2] == 0.0);
}

TEST_CASE("build_control: TT sync worked example (paper gains)") {
    const auto scheme = scheme_of(Scenario::TT, Mode::Sync, GainVariant::paper());
    const std::array<double, 3> drive{1.0, 2.0, 3.0};
    const std::array<double, 3> response{4.0, 5.0, 6.0};
    const auto u = build_control(scheme, drive, response);
    CHECK(u[0] == doctest::Approx(6.3).epsilon(1e-13));
    CHECK(u[1] == doctest::Approx(50.4).epsilon(1e-13));
    CHECK(u[2] == doctest::Approx(-14.4).epsilon(1e-13));
}

TEST_CASE("build_control: TT anti mirror state") {
    const auto scheme = scheme_of(Scenario::TT, Mode::Anti, GainVariant::paper());
    const std::array<double, 3> drive{1.0, 1.0, 1.0};
    const std::array<double, 3> response{-1.0, -1.0, -1.0};
    const auto u = build_control(scheme, drive, response);
    CHECK(u[0] == 0.0);
    CHECK(u[1] == doctest::Approx(4.2).epsilon(1e-15));
    CHECK(u[2] == -2.0);
}

TEST_CASE("build_control rejects non-finite states") {
    const auto scheme = scheme_of(Scenario::TT, Mode::Sync, GainVariant::paper());
    const std::array<double, 3> good{1.0, 1.0, 1.0};
    const std::array<double, 3> bad{1.0, std::nan(""), 1.0};
    CHECK_THROWS_AS(build_control(scheme, bad, good), DomainError);
    CHECK_THROWS_AS(build_control(scheme, good, bad), DomainError);
}

TEST_CASE("gain matrices: exact entries at presets") {
    const auto tt_paper = gain_matrix(scheme_of(Scenario::TT, Mode::Sync, GainVariant::paper()));
    const double a1 = 2.1, b1 = 0.6, c1 = 30.0;
    CHECK(tt_paper[0][0] == 0.0);
    CHECK(tt_paper[0][1] == a1);
    CHECK(tt_paper[0][2] == 0.0);
    CHECK(tt_paper[1][0] == doctest::Approx(-(c1 - a1)).epsilon(1e-15));
    CHECK(tt_paper[1][1] == c1);
    CHECK(tt_paper[2][2] == doctest::Approx(2 * b1).epsilon(1e-15));

    const auto tt_corr = gain_matrix(scheme_of(Scenario::TT, Mode::Sync, GainVariant::corrected()));
    CHECK(tt_corr[0][0] == doctest::Approx(2 * a1).epsilon(1e-15));
    CHECK(tt_corr[0][1] == doctest::Approx(-a1).epsilon(1e-15));
    // Rows 2 and 3 are shared between the paper and corrected variants.
    for (std::size_t r : {std::size_t{1}, std::size_t{2}})
        for (std::size_t c = 0; c < 3; ++c) CHECK(tt_corr[r][c] == tt_paper[r][c]);

    const auto rt_paper = gain_matrix(scheme_of(Scenario::RT, Mode::Sync, GainVariant::paper()));
    const auto rt_corr = gain_matrix(scheme_of(Scenario::RT, Mode::Sync, GainVariant::corrected()));
    const double c2 = 5.7;
    CHECK(rt_paper[0][0] == doctest::Approx(2 * a1).epsilon(1e-15));
    CHECK(rt_paper[0][1] == doctest::Approx(-(a1 - 1)).epsilon(1e-15));
    CHECK(rt_paper[0][2] == 1.0);
    CHECK(rt_paper[1][0] == doctest::Approx(-(c1 - a1 + 1)).epsilon(1e-15));
    CHECK(rt_paper[1][1] == 0.0);
    CHECK(rt_paper[2][2] == doctest::Approx(2 * b1 + c2).epsilon(1e-15));
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(rt_paper[r][c] == rt_corr[r][c]);

    const auto tt_stab =
        gain_matrix(scheme_of(Scenario::TT, Mode::Sync, GainVariant::stabilized({1, 2, 3})));
    CHECK(tt_stab[0][0] == doctest::Approx(a1 - 1).epsilon(1e-15));
    CHECK(tt_stab[0][1] == doctest::Approx(-a1).epsilon(1e-15));
    CHECK(tt_stab[1][1] == -2.0);
    CHECK(tt_stab[2][2] == doctest::Approx(b1 - 3).epsilon(1e-15));

    const auto rt_stab =
        gain_matrix(scheme_of(Scenario::RT, Mode::Sync, GainVariant::stabilized({1, 1, 1})));
    const double a2 = 0.2;
    CHECK(rt_stab[0][0] == doctest::Approx(a1 - 1).epsilon(1e-15));
    CHECK(rt_stab[1][1] == doctest::Approx(-a2 - 1).epsilon(1e-15));
    CHECK(rt_stab[2][2] == doctest::Approx(b1 + c2 - 1).epsilon(1e-15));
}

TEST_CASE("closed_loop_of eigenvalues") {
    const auto tt = closed_loop_of(scheme_of(Scenario::TT, Mode::Sync, GainVariant::paper()));
    CHECK(tt.lambda == std::array<double, 3>{2.1, 30.0, 0.6});
    const auto tt_anti =
        closed_loop_of(scheme_of(Scenario::TT, Mode::Anti, GainVariant::corrected()));
    CHECK(tt_anti.lambda == std::array<double, 3>{2.1, 30.0, 0.6});
    const auto rt = closed_loop_of(scheme_of(Scenario::RT, Mode::Sync, GainVariant::paper()));
    CHECK(rt.lambda == std::array<double, 3>{2.1, 0.2, 0.6});
    const auto stab =
        closed_loop_of(scheme_of(Scenario::RT, Mode::Anti, GainVariant::stabilized({1, 2, 3})));
    CHECK(stab.lambda == std::array<double, 3>{-1.0, -2.0, -3.0});
    CHECK(tt.orders == std::vector<double>{0.9, 0.5, 0.6});
}

TEST_CASE("cancellation residual: corrected TT and paper RT are exact") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 3> d{dist(rng), dist(rng), dist(rng)};
        std::array<double, 3> r{dist(rng), dist(rng), dist(rng)};
        for (auto [scenario, mode, gains] :
             {std::tuple{Scenario::TT, Mode::Sync, GainVariant::corrected()},
              std::tuple{Scenario::TT, Mode::Anti, GainVariant::corrected()},
              std::tuple{Scenario::RT, Mode::Sync, GainVariant::paper()},
              std::tuple{Scenario::RT, Mode::Anti, GainVariant::paper()}}) {
            const auto res = closed_loop_residual(scheme_of(scenario, mode, gains), d, r);
            for (double v : res) CHECK(std::fabs(v) <= 1e-12);
        }
    }
}

TEST_CASE("cancellation residual: paper TT gains leave 2 a1 (e2 - e1) in row 1") {
    const auto scheme = scheme_of(Scenario::TT, Mode::Sync, GainVariant::paper());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::array<double, 3> d{dist(rng), dist(rng), dist(rng)};
        const std::array<double, 3> r{dist(rng), dist(rng), dist(rng)};
        const double e1 = r[0] - d[0], e2 = r[1] - d[1];
        const auto res = closed_loop_residual(scheme, d, r);
        CHECK(res[0] == doctest::Approx(2 * 2.1 * (e2 - e1)).epsilon(1e-10));
        CHECK(std::fabs(res[1]) <= 1e-12);
        CHECK(std::fabs(res[2]) <= 1e-12);
    }
    // A state where the discrepancy is plainly visible.
    const std::array<double, 3> at_rest{0.0, 0.0, 0.0};
    const std::array<double, 3> kicked{0.0, 1.0, 0.0};
    const auto res = closed_loop_residual(scheme, at_rest, kicked);
    CHECK(std::fabs(res[0]) > 1e-6);
}

TEST_CASE("coupled run equals the claimed diagonal closed loop (prefix)") {
    // Fast mirror of the full equivalence criterion: one TT (corrected) and
    // one RT (paper) scenario at h = 0.001 over horizon 0.5.
    struct Case {
        Scenario scenario;
        Mode mode;
        GainVariant gains;
    };
    for (const Case& tc : {Case{Scenario::TT, Mode::Sync, GainVariant::corrected()},
                           Case{Scenario::RT, Mode::Sync, GainVariant::paper()}}) {
        const auto scheme = scheme_of(tc.scenario, tc.mode, tc.gains);
        const std::vector<double> d0{0.01, 0.01, 0.01};
        const std::vector<double> r0{0.5, 0.5, 0.5};
        // The TT loop's lambda2 = 30 blows up fast; cap the divergence
        // threshold so the comparison stays where rounding noise from the
        // cancelled quadratic terms (~eps * |e|) is far below the tolerance.
        SolverConfig config = cfg(0.001, 500);
        config.divergence_threshold = 1e9;
        const auto run = simulate_coupled(scheme, d0, r0, config);

        const auto closed = closed_loop_of(scheme);
        const double sgn = tc.mode == Mode::Sync ? -1.0 : 1.0;
        const std::array<double, 3> e0{r0[0] + sgn * d0[0], r0[1] + sgn * d0[1],
                                       r0[2] + sgn * d0[2]};
        const auto diag = simulate_diagonal(closed, e0, config);

        const std::size_t rows = std::min(run.error.rows(), diag.rows());
        REQUIRE(rows >= 20);
        double worst = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            double mag = 0.0;
            for (std::size_t i = 0; i < 3; ++i)
                mag = std::max(mag, std::fabs(diag.state(r, i)));
            if (mag > config.divergence_threshold) continue;  // sentinel row
            for (std::size_t i = 0; i < 3; ++i) {
                const double rel = std::fabs(run.error.state(r, i) - diag.state(r, i)) /
                                   std::fabs(diag.state(r, i));
                worst = std::max(worst, rel);
            }
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("TT sync with equal initial conditions stays at e = 0 exactly") {
    const auto scheme = scheme_of(Scenario::TT, Mode::Sync, GainVariant::paper());
    const std::vector<double> x0{0.01, 0.01, 0.01};
    const auto run = simulate_coupled(scheme, x0, x0, cfg(0.005, 1000));
    REQUIRE(run.error.completed());
    for (double v : run.error.states) CHECK(v == 0.0);  // bitwise
}

TEST_CASE("RT sync with equal initial conditions stays at e = 0 within 1e-12") {
    const auto scheme = scheme_of(Scenario::RT, Mode::Sync, GainVariant::paper());
    const std::vector<double> x0{0.01, 0.01, 0.01};
    const auto run = simulate_coupled(scheme, x0, x0, cfg(0.005, 400));
    REQUIRE(run.error.completed());
    CHECK(max_abs_error(run) <= 1e-12);
}

TEST_CASE("mode duality: anti mode with mirrored ICs stays at e = 0") {
    const std::vector<double> d0{0.3, -0.2, 0.7};
    const std::vector<double> r0{-0.3, 0.2, -0.7};
    for (Scenario scenario : {Scenario::TT, Scenario::RT}) {
        const auto scheme =
            scheme_of(scenario, Mode::Anti, GainVariant::stabilized({1, 1, 1}));
        const auto run = simulate_coupled(scheme, d0, r0, cfg(0.005, 1000));
        REQUIRE(run.error.completed());
        CHECK(max_abs_error(run) <= 1e-12);
    }
}

TEST_CASE("stabilized gains deliver decay toward zero error") {
    const auto scheme = scheme_of(Scenario::TT, Mode::Sync, GainVariant::stabilized({1, 1, 1}));
    const auto run = simulate_coupled(scheme, {0.01, 0.01, 0.01}, {0.5, 0.5, 0.5},
                                      cfg(0.005, 2000));  // horizon 10
    REQUIRE(run.error.completed());
    const std::size_t last = run.error.rows() - 1;
    double start_norm = 0.0, end_norm = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        start_norm = std::max(start_norm, std::fabs(run.error.state(0, i)));
        end_norm = std::max(end_norm, std::fabs(run.error.state(last, i)));
    }
    CHECK(start_norm == doctest::Approx(0.49).epsilon(1e-12));
    CHECK(end_norm < 0.2);  // well below the IC gap, still above the t^-alpha tail

    // The closed loop is D^a e_i = -e_i; the slowest component is alpha = 0.5.
    const double predicted =
        0.49 * mittag_leffler(0.5, -std::pow(10.0, 0.5));
    CHECK(run.error.state(last, 1) == doctest::Approx(predicted).epsilon(0.05));
}

TEST_CASE("error output is exactly the response/drive combination") {
    const auto scheme = scheme_of(Scenario::RT, Mode::Anti, GainVariant::stabilized({2, 2, 2}));
    const auto run =
        simulate_coupled(scheme, {0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}, cfg(0.01, 300));
    REQUIRE(run.error.rows() == run.drive.rows());
    REQUIRE(run.error.rows() == run.response.rows());
    for (std::size_t r = 0; r < run.error.rows(); ++r)
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(run.error.state(r, i) ==
                  run.response.state(r, i) + run.drive.state(r, i));  // anti: e = xr + xd
}

TEST_CASE("drive evolves autonomously: identical to a standalone solve") {
    const auto scheme = scheme_of(Scenario::TT, Mode::Sync, GainVariant::stabilized({1, 1, 1}));
    const auto run =
        simulate_coupled(scheme, {0.01, 0.01, 0.01}, {0.5, 0.5, 0.5}, cfg(0.005, 400));
    const SystemDef t_def = registry_lookup("t");
    const Trajectory alone =
        abm_solve(t_def.field, {0.9, 0.5, 0.6}, {0.01, 0.01, 0.01}, cfg(0.005, 400));
    REQUIRE(run.drive.rows() == alone.rows());
    for (std::size_t i = 0; i < alone.states.size(); ++i)
        CHECK(run.drive.states[i] == alone.states[i]);  // bitwise
}

TEST_CASE("simulate_diagonal oracle checks") {
    // Full eigenvalue set (2.1, 30, 0.6): horizon limited to 0.01 because
    // component 2 grows like E_0.5(30 sqrt(t)).
    SUBCASE("all three components within 2% at t = 0.01") {
        const auto traj = simulate_diagonal({{2.1, 30.0, 0.6}, {0.9, 0.5, 0.6}},
                                            {1.0, 1.0, 1.0}, cfg(1e-5, 1000));
        REQUIRE(traj.completed());
        const std::size_t last = traj.rows() - 1;
        const double t = traj.times[last];
        const std::array<double, 3> lambda{2.1, 30.0, 0.6};
        const std::array<double, 3> alpha{0.9, 0.5, 0.6};
        for (std::size_t i = 0; i < 3; ++i) {
            const double exact =
                mittag_leffler(alpha[i], lambda[i] * std::pow(t, alpha[i]));
            CHECK(traj.state(last, i) == doctest::Approx(exact).epsilon(0.02));
        }
    }
    SUBCASE("slow components reach t = 1 within 2%") {
        const auto traj = simulate_diagonal({{2.1, -1.0, 0.6}, {0.9, 0.5, 0.6}},
                                            {1.0, 1.0, 1.0}, cfg(0.001, 1000));
        REQUIRE(traj.completed());
        const std::size_t last = traj.rows() - 1;
        CHECK(traj.state(last, 0) ==
              doctest::Approx(mittag_leffler(0.9, 2.1)).epsilon(1e-4));
        CHECK(traj.state(last, 2) ==
              doctest::Approx(mittag_leffler(0.6, 0.6)).epsilon(1e-4));
    }
    SUBCASE("zero initial error is an exact equilibrium") {
        const auto traj = simulate_diagonal({{-1.0, -1.0, -1.0}, {0.9, 0.5, 0.6}},
                                            {0.0, 0.0, 0.0}, cfg(0.01, 100));
        for (double v : traj.states) CHECK(v == 0.0);
    }
    SUBCASE("zero eigenvalues freeze the trajectory at e0") {
        const auto traj = simulate_diagonal({{0.0, 0.0, 0.0}, {0.9, 0.5, 0.6}},
                                            {1.5, -2.5, 0.25}, cfg(0.01, 100));
        for (std::size_t r = 0; r < traj.rows(); ++r) {
            CHECK(traj.state(r, 0) == 1.5);
            CHECK(traj.state(r, 1) == -2.5);
            CHECK(traj.state(r, 2) == 0.25);
        }
    }
}

TEST_CASE("scenario names round-trip") {
    Mode mode{};
    CHECK(scenario_from_name("tt-sync", mode) == Scenario::TT);
    CHECK(mode == Mode::Sync);
    CHECK(scenario_from_name("rt-anti", mode) == Scenario::RT);
    CHECK(mode == Mode::Anti);
    CHECK(scenario_name(Scenario::TT, Mode::Anti) == "tt-anti");
    CHECK(scenario_name(Scenario::RT, Mode::Sync) == "rt-sync");
    CHECK_THROWS_AS(scenario_from_name("tr-sync", mode), ConfigError);
}

TEST_CASE("scheme validation") {
    CHECK_THROWS_AS(make_scheme(Scenario::TT, Mode::Sync, GainVariant::paper(),
                                {0.9, 0.5}),
                    DomainError);
    CHECK_THROWS_AS(make_scheme(Scenario::TT, Mode::Sync, GainVariant::paper(),
                                {0.9, 0.5, 1.5}),
                    DomainError);
    CHECK_THROWS_AS(make_scheme(Scenario::TT, Mode::Sync,
                                GainVariant::stabilized({1.0, -1.0, 1.0})),
                    ConfigError);
    CHECK_THROWS_AS(make_scheme(Scenario::TT, Mode::Sync, GainVariant::paper(),
                                {0.9, 0.5, 0.6}, {{"zz", 1.0}}),
                    ConfigError);
    CHECK_THROWS_AS(simulate_coupled(scheme_of(Scenario::TT, Mode::Sync,
                                               GainVariant::paper()),
                                     {0.1, 0.1}, {0.1, 0.1, 0.1}, cfg(0.01, 10)),
                    DomainError);
}

}  // TEST_SUITE("coupling")
