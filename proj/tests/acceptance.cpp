// Acceptance gate: one pass/fail line per criterion, exit 0 only if all
// pass. Tolerances are the pinned module tolerances; every check here is
// a property of the library observable from the public headers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "helpers.hpp"
#include "vqsl/vqsl.hpp"

using namespace vqsl;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1
void criterion_cptp() {
    const double gammas[] = {0.1, 0.5, 1.0, 2.0, 5.0};
    const double lambdas[] = {0.1, 0.5, 1.0, 5.0, 10.0};
    const double times[] = {0.1, 1.0, 10.0};
    const double thetas[] = {1.0, 0.6};
    const DensityMatrix states[] = {werner(0.7, WernerVariant::Psi0), horodecki(0.9)};

    double worst_completeness = 0.0, worst_herm = 0.0, worst_trace = 0.0, worst_eig = 0.0;
    for (double g : gammas)
        for (double l : lambdas)
            for (double th : thetas)
                for (double t : times) {
                    const ChannelParams p = ChannelParams::symmetric(g, l, th);
                    const KrausSet ks = kraus_set(p, t);
                    Mat sum(3);
                    for (int i = 0; i < 3; ++i) sum += ks.k[i].adjoint() * ks.k[i];
                    worst_completeness =
                        std::max(worst_completeness, max_abs_diff(sum, Mat::identity(3)));
                    for (const DensityMatrix& rho0 : states) {
                        const Mat rt = evolve_pair(rho0, p, t).mat();
                        worst_herm = std::max(worst_herm, rt.hermiticity_defect());
                        worst_trace = std::max(worst_trace, std::abs(rt.trace() - cx(1, 0)));
                        worst_eig = std::min(worst_eig, hermitian_eigenvalues(rt).min());
                    }
                }
    const bool ok = worst_completeness <= 1e-10 && worst_herm <= 1e-10 && worst_trace <= 1e-10 &&
                    worst_eig >= -1e-9;
    report(1, ok,
           "channel completeness and evolved-state validity on the 150-point grid (completeness "
           "dev " +
               fmt(worst_completeness) + ", hermiticity " + fmt(worst_herm) + ", trace " +
               fmt(worst_trace) + ", min eigenvalue " + fmt(worst_eig) + ")");
}

// ---------------------------------------------------------------- 2
void criterion_amplitude_oracle() {
    const std::vector<ChannelParams> params = {
        ChannelParams::symmetric(1.0, 1.0, 1.0),   // oscillatory
        ChannelParams::symmetric(5.0, 0.1, 1.0),   // deep memory regime
        ChannelParams::symmetric(0.1, 10.0, 1.0),  // overdamped
        ChannelParams::symmetric(1.0, 2.0, 0.0),   // exact critical crossover
        {1.0, 1.0, 1.999, 0.031623},               // near-critical
        {3.0, 1.0, 5.0, 0.5},                      // asymmetric rates
    };
    std::vector<double> times(401);
    for (int i = 0; i <= 400; ++i) times[i] = 20.0 * i / 400;

    double worst = 0.0;
    for (const ChannelParams& p : params) {
        const std::vector<AmplitudePair> ode = oracle_amplitude_ode(p, times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const AmplitudePair a = amplitude(p, times[i]);
            worst = std::max({worst, std::abs(a.g_plus - ode[i].g_plus),
                              std::abs(a.g_minus - ode[i].g_minus),
                              std::abs(a.gdot_plus - ode[i].gdot_plus),
                              std::abs(a.gdot_minus - ode[i].gdot_minus)});
        }
    }
    report(2, worst <= 1e-8,
           "closed-form amplitude matches the integrated ODE on 6 parameter sets over [0,20] "
           "(max dev " +
               fmt(worst) + ", bound 1e-08)");
}

// ---------------------------------------------------------------- 3
void criterion_dark_state() {
    double worst = 0.0;
    for (double g : {0.5, 1.0, 2.0})
        for (double l : {0.1, 1.0, 10.0}) {
            const ChannelParams p = ChannelParams::symmetric(g, l, 1.0);
            for (int i = 0; i <= 500; ++i) {
                const AmplitudePair a = amplitude(p, 50.0 * i / 500);
                worst = std::max(worst, std::abs(a.g_minus - 1.0));
            }
        }
    report(3, worst <= 1e-12,
           "equal rates at full interference freeze the protected mode on [0,50] (max dev " +
               fmt(worst) + ", bound 1e-12)");
}

// ---------------------------------------------------------------- 4
void criterion_derivative() {
    const std::vector<ChannelParams> params = {
        ChannelParams::symmetric(1.0, 1.0, 1.0), ChannelParams::symmetric(5.0, 0.1, 1.0),
        ChannelParams::symmetric(0.5, 10.0, 1.0), {3.0, 1.0, 2.0, 0.6},
        {0.2, 2.0, 0.7, -0.8},
    };
    std::mt19937_64 rng(2026);
    const double h = 1e-5;
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const DensityMatrix rho = testutil::random_density(9, rng);
        for (const ChannelParams& p : params) {
            for (double t : {0.5, 2.0}) {
                const Mat fd =
                    (evolve_pair(rho, p, t + h).mat() - evolve_pair(rho, p, t - h).mat()) *
                    cx(1.0 / (2.0 * h), 0.0);
                worst = std::max(worst, max_abs_diff(rho_dot_pair(rho, p, t), fd));
            }
        }
    }
    report(4, worst <= 1e-6,
           "analytic state derivative matches central differences on 20 states x 5 parameter "
           "sets (max dev " +
               fmt(worst) + ", bound 1e-06)");
}

// ------------------------------------------------------- sweep block
struct SweepBank {
    // keyed by (family, lambda); rows ordered by (param, gamma)
    std::map<std::pair<int, double>, std::vector<SweepRow>> rows;
    double elapsed = 0.0;
    std::string csv;

    const std::vector<SweepRow>& of(StateFamily f, double lambda) const {
        return rows.at({static_cast<int>(f), lambda});
    }
};

std::vector<double> family_params(StateFamily f) {
    if (f == StateFamily::Horodecki) return {0.0, 0.5, 0.9, 1.5};
    return {0.3, 0.5, 0.7, 1.0};
}

SweepConfig default_config(StateFamily f, double lambda) {
    SweepConfig cfg;
    cfg.state_family = f;
    cfg.state_params = family_params(f);
    cfg.gamma_grid = default_gamma_grid();
    cfg.lambda = lambda;
    cfg.theta = 1.0;
    return cfg;
}

SweepBank run_default_sweeps() {
    SweepBank bank;
    const auto t0 = std::chrono::steady_clock::now();
    for (StateFamily f : {StateFamily::WernerPsi0, StateFamily::WernerPsi1,
                          StateFamily::WernerPsi1Swapped, StateFamily::Horodecki})
        for (double lambda : {0.1, 1.0, 10.0}) {
            std::vector<SweepRow> r = run_sweep(default_config(f, lambda));
            bank.csv += csv_string(r);
            bank.rows.emplace(std::make_pair(static_cast<int>(f), lambda), std::move(r));
        }
    bank.elapsed = seconds_since(t0);
    return bank;
}

// ---------------------------------------------------------------- 5
void criterion_bound_validity(const SweepBank& bank) {
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& [key, rows] : bank.rows) {
        (void)key;
        for (const SweepRow& r : rows) {
            worst = std::max(worst, r.tau_qsl - r.tau);
            ++n;
        }
    }
    const bool ok = worst <= 1e-9 && bank.elapsed < 60.0;
    report(5, ok,
           "minimal-time bound holds on all " + std::to_string(n) +
               " default sweep points (max excess " + fmt(worst) + ", sweep took " +
               fmt(bank.elapsed) + "s)");
}

// ---------------------------------------------------------------- 6
void criterion_werner_ordering(const SweepBank& bank) {
    // params {0.3, 0.5, 0.7, 1.0}: compare at 0.3, 0.7, 1.0
    const std::size_t ng = default_gamma_grid().size();
    double worst = 0.0;
    const SweepRow* at = nullptr;
    for (double lambda : {0.1, 1.0, 10.0}) {
        const std::vector<SweepRow>& a = bank.of(StateFamily::WernerPsi0, lambda);
        const std::vector<SweepRow>& b = bank.of(StateFamily::WernerPsi1, lambda);
        for (std::size_t ip : {std::size_t{0}, std::size_t{2}, std::size_t{3}})
            for (std::size_t ig = 0; ig < ng; ++ig) {
                const double gap = a[ip * ng + ig].tau_qsl - b[ip * ng + ig].tau_qsl;
                if (gap > worst) {
                    worst = gap;
                    at = &a[ip * ng + ig];
                }
            }
    }
    std::string where;
    if (at)
        where = " at lambda=" + fmt(at->lambda) + " gamma=" + fmt(at->gamma) +
                " p=" + fmt(at->state_param);
    report(6, worst <= 1e-9,
           "off-diagonal family bound dominates the diagonal family across the default grid "
           "(max violation " +
               fmt(worst) + where + ", slack 1e-09)");
}

// ---------------------------------------------------------------- 7
void criterion_reversal() {
    const ChannelParams p = ChannelParams::symmetric(5.0, 0.1, 1.0);
    const std::vector<double> ps = {0.3, 0.5, 0.7, 1.0};
    std::vector<double> t0s, t1s;
    for (double sp : ps) {
        t0s.push_back(qsl_time(werner(sp, WernerVariant::Psi0), p, 1.0).tau_qsl);
        t1s.push_back(qsl_time(werner(sp, WernerVariant::Psi1), p, 1.0).tau_qsl);
    }
    double worst = 0.0;
    std::string where;
    for (std::size_t i = 1; i < ps.size(); ++i) {
        if (t0s[i] - t0s[i - 1] > worst) {  // psi0 must not increase
            worst = t0s[i] - t0s[i - 1];
            where = " (diagonal family, p " + fmt(ps[i - 1]) + " -> " + fmt(ps[i]) + ")";
        }
        if (t1s[i - 1] - t1s[i] > worst) {  // psi1 must not decrease
            worst = t1s[i - 1] - t1s[i];
            where = " (off-diagonal family, p " + fmt(ps[i - 1]) + " -> " + fmt(ps[i]) + ")";
        }
    }
    report(7, worst <= 1e-9,
           "deep-memory channel reverses the entanglement direction of the bound (max "
           "monotonicity violation " +
               fmt(worst) + where + ")");
}

// ---------------------------------------------------------------- 8
void criterion_markovian_ordering() {
    double worst = 0.0;
    std::string where;
    for (double g : {1.0, 5.0}) {
        const ChannelParams p = ChannelParams::symmetric(g, 10.0, 1.0);
        for (WernerVariant v : {WernerVariant::Psi0, WernerVariant::Psi1}) {
            double prev = -1.0, prev_sp = 0.0;
            for (double sp : {0.3, 0.5, 0.7, 1.0}) {
                const double t = qsl_time(werner(sp, v), p, 1.0).tau_qsl;
                if (prev >= 0.0 && prev - t > worst) {
                    worst = prev - t;
                    where = " at gamma=" + fmt(g) +
                            (v == WernerVariant::Psi0 ? " (diagonal" : " (off-diagonal") +
                            " family, p " + fmt(prev_sp) + " -> " + fmt(sp) + ")";
                }
                prev = t;
                prev_sp = sp;
            }
        }
    }
    report(8, worst <= 1e-9,
           "broad-reservoir bound grows with entanglement for both families (max violation " +
               fmt(worst) + where + ")");
}

// ---------------------------------------------------------------- 9
void criterion_intermediacy() {
    bool ok = true;
    std::string detail;
    for (double lambda : {0.1, 1.0, 10.0}) {
        for (double g : {1.0, 5.0}) {
            const ChannelParams p = ChannelParams::symmetric(g, lambda, 1.0);
            double lo = 1e300, hi = -1e300;
            for (double sp : {0.3, 0.5, 0.7, 1.0}) {
                lo = std::min(lo, qsl_time(werner(sp, WernerVariant::Psi0), p, 1.0).tau_qsl);
                hi = std::max(hi, qsl_time(werner(sp, WernerVariant::Psi1), p, 1.0).tau_qsl);
            }
            for (double alpha : {0.0, 0.5, 0.9}) {
                const double t = qsl_time(horodecki(alpha), p, 1.0).tau_qsl;
                if (!(t >= lo - 1e-9 && t <= hi + 1e-9)) {
                    ok = false;
                    detail += " [lambda=" + fmt(lambda) + " gamma=" + fmt(g) +
                              " alpha=" + fmt(alpha) + ": " + fmt(t) + " outside [" + fmt(lo) +
                              ", " + fmt(hi) + "]]";
                }
            }
        }
    }
    report(9, ok,
           ok ? "diagonal-family bound lies inside the two-family envelope at all 18 checks"
              : "envelope violations:" + detail);
}

// ---------------------------------------------------------------- 10
void criterion_swap_symmetry(const SweepBank& bank) {
    double worst = 0.0;
    for (double lambda : {0.1, 1.0, 10.0}) {
        const std::vector<SweepRow>& a = bank.of(StateFamily::WernerPsi1, lambda);
        const std::vector<SweepRow>& b = bank.of(StateFamily::WernerPsi1Swapped, lambda);
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i].tau_qsl - b[i].tau_qsl));
    }
    report(10, worst <= 1e-10,
           "exchanging the parties leaves the bound unchanged across the default grid (max dev " +
               fmt(worst) + ", bound 1e-10)");
}

// ---------------------------------------------------------------- 11
void criterion_backflow_trends() {
    const auto t0 = std::chrono::steady_clock::now();
    BlpOptions narrow;
    narrow.t_max = 100.0;  // covers the slow lambda/2 envelope at lambda = 0.1

    const double n_half = blp_measure(ChannelParams::symmetric(0.5, 0.1, 1.0), narrow).n_measure;
    const double n_two = blp_measure(ChannelParams::symmetric(2.0, 0.1, 1.0), narrow).n_measure;
    const double n_th1 = blp_measure(ChannelParams::symmetric(1.0, 0.1, 1.0), narrow).n_measure;
    const double n_th06 = blp_measure(ChannelParams::symmetric(1.0, 0.1, 0.6), narrow).n_measure;
    const double n_markov = blp_measure(ChannelParams::symmetric(0.5, 10.0, 1.0)).n_measure;
    const double elapsed = seconds_since(t0);

    const bool ok = n_two > n_half && n_th1 >= n_th06 && n_markov <= 1e-4 && elapsed < 60.0;
    report(11, ok,
           "backflow grows with coupling and interference, vanishes for a broad reservoir "
           "(N(2)=" +
               fmt(n_two) + " > N(0.5)=" + fmt(n_half) + ", N(th=1)=" + fmt(n_th1) +
               " >= N(th=.6)=" + fmt(n_th06) + ", Markovian N=" + fmt(n_markov) + ", " +
               fmt(elapsed) + "s)");
}

// ---------------------------------------------------------------- 12
void criterion_state_checks() {
    // bisect the negativity crossing of the isotropic mixture
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (negativity(werner(mid, WernerVariant::Psi0)) > 0.0 ? hi : lo) = mid;
    }
    const double crossing = 0.5 * (lo + hi);
    bool ok = std::abs(crossing - 0.25) <= 1e-6;
    std::string detail = "negativity crossing at p=" + fmt(crossing);

    for (double alpha : {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0})
        if (negativity(horodecki(alpha)) != 0.0) {
            ok = false;
            detail += " [alpha=" + fmt(alpha) + " not PPT]";
        }
    for (double alpha : {0.0, 0.5, 4.5, 5.0})
        if (!(negativity(horodecki(alpha)) > 0.0)) {
            ok = false;
            detail += " [alpha=" + fmt(alpha) + " not NPT]";
        }

    double worst_trace = 0.0;
    for (int i = 0; i <= 100; ++i) {
        for (StateFamily f : {StateFamily::WernerPsi0, StateFamily::WernerPsi1,
                              StateFamily::WernerPsi1Swapped})
            worst_trace = std::max(
                worst_trace, std::abs(make_state(f, i / 100.0).mat().trace() - cx(1, 0)));
        worst_trace = std::max(
            worst_trace,
            std::abs(make_state(StateFamily::Horodecki, i / 20.0).mat().trace() - cx(1, 0)));
    }
    if (worst_trace > 1e-12) ok = false;
    report(12, ok,
           detail + ", PPT/NPT spans verified, max trace dev " + fmt(worst_trace));
}

// ---------------------------------------------------------------- 13
void criterion_determinism(const SweepBank& bank) {
    const SweepBank again = run_default_sweeps();
    const bool ok = bank.csv == again.csv && !bank.csv.empty();
    report(13, ok,
           ok ? "rerunning the full default sweep reproduces the CSV byte for byte"
              : "CSV outputs differ between identical runs");
}

}  // namespace

int main() {
    criterion_cptp();
    criterion_amplitude_oracle();
    criterion_dark_state();
    criterion_derivative();
    const SweepBank bank = run_default_sweeps();
    criterion_bound_validity(bank);
    criterion_werner_ordering(bank);
    criterion_reversal();
    criterion_markovian_ordering();
    criterion_intermediacy();
    criterion_swap_symmetry(bank);
    criterion_backflow_trends();
    criterion_state_checks();
    criterion_determinism(bank);

    if (g_failures == 0)
        std::printf("acceptance: all 13 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
