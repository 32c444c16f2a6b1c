// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Runs the full stack end to end at the pinned tolerances.

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qreset/eig.hpp"
#include "qreset/ensemble.hpp"
#include "qreset/models.hpp"
#include "qreset/montecarlo.hpp"
#include "qreset/observables.hpp"
#include "qreset/poisson.hpp"
#include "qreset/schedules.hpp"
#include "test_helpers.hpp"

using namespace qreset;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& label, const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, label.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

GateModel ni_model(double theta) {
    return GateModel(noninteracting_generator(), theta, up_up_state());
}
GateModel ent_model(double theta) {
    return GateModel(entangling_generator(), theta, up_up_state());
}

// 1. weak-reset limits reproduce the six reference matrices entrywise <= 1e-12
void criterion_1() {
    double worst = 0.0;
    const auto track = [&](const ComplexMatrix& got, const ComplexMatrix& want) {
        worst = std::max(worst, testref::max_entry_diff(got, want));
    };
    track(weak_reset_limit(ni_model(1.0)), testref::ni_generic_state());
    track(weak_reset_limit(ni_model(M_PI / 2)), testref::ni_flip_state());
    track(weak_reset_limit(ent_model(1.0)), testref::ent_generic_state());
    for (double theta : {M_PI / 5, 2 * M_PI / 5, 3 * M_PI / 5, 4 * M_PI / 5})
        track(weak_reset_limit(ent_model(theta)), testref::ent_pi5_state());
    for (double theta : {M_PI / 4, 3 * M_PI / 4})
        track(weak_reset_limit(ent_model(theta)), testref::ent_pi4_state());
    for (double theta : {M_PI / 3, 2 * M_PI / 3})
        track(weak_reset_limit(ent_model(theta)), testref::ent_pi3_state());
    report(1, worst <= 1e-12, "weak-reset steady states match the reference matrices",
           "max entry diff " + fmt(worst));
}

// 2. scalar correlation values on the weak-limit states
void criterion_2() {
    bool pass = true;
    std::string detail;

    const ComplexMatrix generic = testref::ni_generic_state();
    const double c_generic = zz_correlation(generic);
    const double conc_generic = concurrence(generic);
    const double lqu_generic = lqu(generic);
    pass &= std::abs(c_generic - 0.5) <= 1e-12;
    pass &= conc_generic <= 1e-10;
    pass &= std::abs(lqu_generic - 0.29) <= 0.01;
    detail += "noninteracting: C=" + fmt(c_generic) + " conc=" + fmt(conc_generic) +
              " lqu=" + fmt(lqu_generic);

    // the 0.055 / 0.11 values live on the resonant families; the nonresonant
    // entangling state is exactly uncorrelated
    for (const ComplexMatrix& rho : {testref::ent_pi5_state(), testref::ent_pi3_state()}) {
        pass &= std::abs(zz_correlation(rho) - 0.055) <= 0.001;
        pass &= std::abs(lqu(rho) - 0.11) <= 0.01;
        pass &= concurrence(rho) <= 1e-10;
    }
    detail += "; resonant family: C=" + fmt(zz_correlation(testref::ent_pi5_state())) +
              " lqu=" + fmt(lqu(testref::ent_pi5_state()));

    const ComplexMatrix pi4 = testref::ent_pi4_state();
    pass &= std::abs(zz_correlation(pi4)) <= 1e-10;
    pass &= concurrence(pi4) <= 1e-10;
    pass &= lqu(pi4) <= 1e-10;

    const ComplexMatrix nonres = testref::ent_generic_state();
    pass &= std::abs(zz_correlation(nonres)) <= 1e-10;
    pass &= lqu(nonres) <= 1e-10;

    report(2, pass, "scalar correlation values on the limit states", detail);
}

// 3. series / solver / fixed-point triangle over random generators
void criterion_3() {
    std::mt19937_64 rng(40);
    std::uniform_real_distribution<double> theta_dist(0.05, 3.1);
    std::uniform_real_distribution<double> r_dist(0.05, 0.95);
    double worst_pair = 0.0, worst_fp = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const GateModel model(testref::random_hermitian(rng, 4), theta_dist(rng), up_up_state());
        const double r = r_dist(rng);
        const ComplexMatrix series = steady_state_series(model, r, 1e-14);
        const ComplexMatrix solved = steady_state_solve(model, r);
        worst_pair = std::max(worst_pair, one_norm(series - solved));

        const ComplexMatrix gate = model.unitary();
        for (const ComplexMatrix* rho : {&series, &solved}) {
            ComplexMatrix mapped = Complex(1.0 - r) * (gate * (*rho) * gate.adjoint());
            mapped(0, 0) += r; // reset state |uu><uu|
            worst_fp = std::max(worst_fp, (mapped - *rho).max_abs());
        }
    }
    report(3, worst_pair < 1e-9 && worst_fp < 1e-12, "series/solver/fixed-point triangle",
           "max |series-solve|_1 " + fmt(worst_pair) + ", max fixed-point residual " +
               fmt(worst_fp));
}

// 4. analytic correlator against the numeric steady state on a 20x20 grid
void criterion_4() {
    const auto spec = hermitian_eig(noninteracting_generator());
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double theta = M_PI * i / 20.0;
        const ComplexMatrix gate = gate_from_generator(spec, theta);
        for (int j = 0; j < 20; ++j) {
            const double r = 0.05 + (0.95 - 0.05) * j / 19.0;
            const ComplexMatrix rho = steady_state_solve_from_gate(gate, up_up_state(), r);
            worst = std::max(worst,
                             std::abs(analytic_zz_correlation(r, theta) - zz_correlation(rho)));
        }
    }
    report(4, worst < 1e-10, "closed-form zz correlator on a 20x20 grid",
           "max deviation " + fmt(worst));
}

// 5. resonance enumeration with provenance
void criterion_5() {
    bool pass = true;
    const auto ent = resonance_scan(entangling_generator(), 0.0, M_PI);
    const std::vector<std::pair<double, std::vector<std::array<int, 3>>>> want = {
        {M_PI / 5, {{0, 3, 1}}},       {M_PI / 4, {{1, 3, 1}}},
        {M_PI / 3, {{2, 3, 1}}},       {2 * M_PI / 5, {{0, 3, 2}}},
        {M_PI / 2, {{0, 2, 1}, {1, 3, 2}}}, {3 * M_PI / 5, {{0, 3, 3}}},
        {2 * M_PI / 3, {{2, 3, 2}}},   {3 * M_PI / 4, {{1, 3, 3}}},
        {4 * M_PI / 5, {{0, 3, 4}}}};
    pass &= ent.resonances.size() == want.size() && ent.degenerate_pairs.empty();
    if (pass)
        for (std::size_t k = 0; k < want.size(); ++k) {
            pass &= std::abs(ent.resonances[k].theta - want[k].first) < 1e-9;
            pass &= ent.resonances[k].pairs == want[k].second;
        }

    const auto ni = resonance_scan(noninteracting_generator(), 0.0, M_PI);
    pass &= ni.resonances.size() == 1 && ni.degenerate_pairs.size() == 1;
    if (pass) {
        pass &= std::abs(ni.resonances[0].theta - M_PI / 2) < 1e-9;
        pass &= ni.resonances[0].pairs == std::vector<std::array<int, 3>>{{0, 3, 1}};
        pass &= ni.degenerate_pairs[0] == std::array<int, 2>{1, 2};
    }
    report(5, pass, "resonance enumeration with provenance",
           "entangling " + std::to_string(ent.resonances.size()) + "/9, noninteracting " +
               std::to_string(ni.resonances.size()) + "/1 + degenerate doublet");
}

// 6. continuous vanishing at theta = pi/4 vs sudden death at pi/4 +- 0.01
void criterion_6() {
    const std::vector<double> rates = {0.3, 0.1, 0.03, 0.01, 3e-3};
    bool pass = true;
    std::string detail = "conc(pi/4, r)=";

    double prev = 2.0;
    for (double r : rates) {
        const double c = concurrence(steady_state_solve(ent_model(M_PI / 4), r));
        detail += fmt(c) + " ";
        pass &= c > 0.0;
        pass &= c < prev;
        prev = c;
    }
    // the decrease is C ~ r/2, which crosses 1e-3 one rung below the list
    const double c_cross = concurrence(steady_state_solve(ent_model(M_PI / 4), 1e-3));
    pass &= c_cross < 1e-3 && c_cross > 0.0;
    detail += "| conc(1e-3)=" + fmt(c_cross);

    for (double offset : {0.01, -0.01}) {
        bool died = false;
        for (double r : rates)
            died |= concurrence(steady_state_solve(ent_model(M_PI / 4 + offset), r)) == 0.0;
        pass &= died;
    }
    report(6, pass, "continuous entanglement vanishing vs sudden death near pi/4", detail);
}

// 7. non-Poissonian convergence dichotomy at theta = pi/4, gamma = 0.2
void criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;

    const GateModel model = ni_model(M_PI / 4);
    for (double alpha : {0.2, 1.0}) {
        const auto rec =
            evolve_until(model, ResetSchedule::power_law(0.2, alpha), 1e-10, 10000, {});
        const bool ok = rec.converged;
        pass &= ok;
        detail += "alpha=" + fmt(alpha) + (ok ? " converged@t=" + std::to_string(rec.steps_used)
                                              : " final |drho|=" + fmt(rec.delta_norms.back())) +
                  "; ";
    }
    {
        const auto rec =
            evolve_until(model, ResetSchedule::power_law(0.2, 2.0), 1e-10, 10000, {});
        double min_delta = 1e300;
        for (double d : rec.delta_norms) min_delta = std::min(min_delta, d);
        const bool ok = !rec.converged && min_delta > 1e-3;
        pass &= ok;
        detail += "alpha=2 min |drho|=" + fmt(min_delta);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail += " [" + fmt(secs) + "s]";
    report(7, pass, "convergence dichotomy for power-law resets", detail);
}

// 8. survival asymptotics at t = 1e5 (gamma in the weak-reset regime where
// the linearized exponent is valid)
void criterion_8() {
    const double gamma = 0.05;
    const std::size_t t = 100000;
    bool pass = true;
    std::string detail;

    for (double alpha : {2.0, 1.0}) {
        const auto s = ResetSchedule::power_law(gamma, alpha);
        const double exact = no_reset_prob(s, t);
        const double asym = no_reset_asymptote(s, t);
        const double rel = std::abs(asym - exact) / exact;
        pass &= rel < (alpha == 1.0 ? 0.02 : 0.01);
        detail += "alpha=" + fmt(alpha) + " rel=" + fmt(rel) + "; ";
    }
    {
        // alpha = 0.5: the value is ~1e-14; compare logarithms
        const auto s = ResetSchedule::power_law(gamma, 0.5);
        const double log_exact = std::log(no_reset_prob(s, t));
        const double log_asym = std::log(no_reset_asymptote(s, t));
        const double rel = std::abs(log_asym - log_exact) / std::abs(log_exact);
        pass &= rel < 0.01;
        detail += "alpha=0.5 log-rel=" + fmt(rel);
    }
    report(8, pass, "survival probability asymptotics at t = 1e5", detail);
}

// 9. Monte Carlo consistency against the Bernoulli chain
void criterion_9() {
    const auto s = ResetSchedule::poisson(0.5);
    const std::size_t horizon = 3, samples = 1000000;
    const auto hist = empirical_distribution(s, horizon, samples, 20240521, 4);

    std::vector<double> exact = {1.0};
    for (std::size_t t = 0; t < horizon; ++t) exact = step_probabilities(exact, s);
    const double tv = total_variation(hist, exact);

    const GateModel model = ni_model(0.9);
    std::vector<StateVector> branches = {model.initial_state()};
    const ComplexMatrix gate = model.unitary();
    while (branches.size() <= horizon) branches.push_back(gate.apply(branches.back()));
    const double state_dist =
        one_norm(build_density(hist, branches) - build_density(exact, branches));

    const bool pass = tv < 0.005 && state_dist < 0.01;
    report(9, pass, "Monte Carlo histogram and state consistency",
           "tv " + fmt(tv) + ", state 1-norm " + fmt(state_dist));
}

// 10. hard-coded entangling generator against the circuit product
void criterion_10() {
    const double dist = one_norm(ent_model(M_PI / 8).unitary() - bell_circuit_unitary());
    report(10, dist < 1e-10, "exp(i pi H/8) equals CNOT (H x 1)", "1-norm " + fmt(dist));
}

} // namespace

int main(int argc, char** argv) {
    void (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
    if (argc > 1) {
        const int which = std::atoi(argv[1]);
        if (which < 1 || which > 10) {
            std::fprintf(stderr, "usage: %s [criterion 1..10]\n", argv[0]);
            return 64;
        }
        criteria[which - 1]();
        return g_failures;
    }
    for (auto* criterion : criteria) criterion();
    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
