// Distance measures and the two headline quantities: the quantum-speed-limit
// time bound and the BLP non-Markovianity measure.
//
// QSL bound for a driving time tau:
//
//   tau_qsl = |1 - F(rho_0, rho_tau)| / X(tau),
//   F(a, b) = Tr(a b) / sqrt(Tr a^2 Tr b^2),
//   X(tau)  = (2/tau) Integral_0^tau sqrt(Tr rho_dot^2 / Tr rho^2) dt,
//
// where tau_qsl <= tau always (Cauchy-Schwarz on the speed integral). The
// integral runs over composite Simpson with automatic interval doubling.
//
// BLP measure: N = max over initial pairs of the accumulated positive
// increments of the trace distance D(rho_1(t), rho_2(t)) on a uniform time
// grid. The maximization family is a 16-point phase grid of equatorial
// pure-state pairs in the excited subspace plus seeded random orthogonal
// pure pairs; the reported N is a lower bound on the true supremum. The
// channel is linear, so the difference operator evolves directly and each
// pair costs one 3x3 map application plus one eigensolve per grid point.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vqsl/errors.hpp"
#include "vqsl/qmat.hpp"
#include "vqsl/states.hpp"
#include "vqsl/tolerances.hpp"
#include "vqsl/vchannel.hpp"

namespace vqsl {

struct QslResult {
    double tau;
    double fidelity;
    double x_of_tau;
    double tau_qsl;
    int n_quadrature_steps;  // intervals of the accepted Simpson grid
};

struct NonMarkovResult {
    double n_measure;
    std::string pair_description;  // the optimizing initial pair
    double grid_step;
    double t_max;
};

inline double fidelity_alt(const DensityMatrix& rho0, const DensityMatrix& rhot) {
    if (rho0.dim() != rhot.dim()) throw DimensionError("fidelity_alt: dimension mismatch");
    const double num = trace_product_re(rho0.mat(), rhot.mat());
    // sqrt(pa * pb) rather than sqrt(pa) * sqrt(pb): identical arguments then
    // give exactly 1.
    return num / std::sqrt(purity(rho0) * purity(rhot));
}

inline double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) throw DimensionError("trace_distance: dimension mismatch");
    return 0.5 * trace_norm(rho1.mat() - rho2.mat());
}

namespace detail {

// sqrt(Tr rho_dot^2 / Tr rho^2) from the raw two-qutrit buffers.
inline double speed_from(const LocalChannel& ch, const CMat9& rho0) {
    CMat9 rho, rhodot;
    pair_state_and_deriv(ch, rho0, rho, rhodot);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 81; ++i) {
        num += std::norm(rhodot[i]);
        den += std::norm(rho[i]);
    }
    return std::sqrt(num / den);
}

inline double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size() - 1;  // interval count, even
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i < n; i += 2) odd += f[i];
    for (std::size_t i = 2; i < n; i += 2) even += f[i];
    return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

}  // namespace detail

inline double speed_integrand(const DensityMatrix& rho0, const ChannelParams& p, double t) {
    if (rho0.dim() != 9) throw DimensionError("speed_integrand: state dim must be 9");
    if (!(t >= 0.0)) throw ParamError("speed_integrand: t must be >= 0");
    const detail::LocalChannel ch = detail::local_channel(p, t);
    return detail::speed_from(ch, detail::to_cmat9(rho0.mat()));
}

// Time-averaged evolution speed X(tau). Starts from n_steps Simpson
// intervals and doubles (reusing existing nodes) until one doubling moves
// the value by less than tol::quad_rel relatively; n_steps_used reports the
// accepted interval count.
inline double x_of_tau(const DensityMatrix& rho0, const ChannelParams& p, double tau, int n_steps,
                       int* n_steps_used = nullptr) {
    if (rho0.dim() != 9) throw DimensionError("x_of_tau: state dim must be 9");
    if (!(tau > 0.0)) throw ParamError("x_of_tau: tau must be positive");
    if (n_steps < 32 || n_steps % 2 != 0)
        throw ParamError("x_of_tau: n_steps must be even and >= 32");
    if (n_steps > tol::quad_max_intervals)
        throw ParamError("x_of_tau: n_steps exceeds the refinement cap");
    p.validate();

    const detail::CMat9 r0 = detail::to_cmat9(rho0.mat());
    auto eval = [&](double t) {
        return detail::speed_from(detail::local_channel(p, t), r0);
    };

    int n = n_steps;
    std::vector<double> f(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) f[static_cast<std::size_t>(i)] = eval(tau * i / n);
    double integral = detail::simpson(f, tau / n);

    while (true) {
        const int n2 = 2 * n;
        std::vector<double> g(static_cast<std::size_t>(n2) + 1);
        for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(2 * i)] = f[static_cast<std::size_t>(i)];
        for (int i = 0; i < n; ++i)
            g[static_cast<std::size_t>(2 * i + 1)] = eval(tau * (2 * i + 1) / n2);
        const double refined = detail::simpson(g, tau / n2);
        const bool converged =
            std::abs(refined - integral) <= tol::quad_rel * std::max(std::abs(refined), tol::x_epsilon);
        n = n2;
        f = std::move(g);
        integral = refined;
        if (converged) break;
        if (n >= tol::quad_max_intervals)
            throw QuadratureError("x_of_tau: no convergence at " + std::to_string(n) +
                                  " intervals");
    }

    if (n_steps_used) *n_steps_used = n;
    return 2.0 / tau * integral;
}

inline QslResult qsl_time(const DensityMatrix& rho0, const ChannelParams& p, double tau,
                          int n_steps = 256) {
    const DensityMatrix rho_tau = evolve_pair(rho0, p, tau);
    QslResult r;
    r.tau = tau;
    r.fidelity = fidelity_alt(rho0, rho_tau);
    r.x_of_tau = x_of_tau(rho0, p, tau, n_steps, &r.n_quadrature_steps);
    // X below noise means the state never moved; the minimal-time bound for
    // no evolution is zero, which also resolves the 0/0 with 1 - F.
    r.tau_qsl = (r.x_of_tau > tol::x_epsilon) ? std::abs(1.0 - r.fidelity) / r.x_of_tau : 0.0;
    return r;
}

struct BlpOptions {
    double t_max = 0.0;  // 0 requests the automatic horizon 20/min(gamma+, lambda)
    double dt = 5e-3;
    std::uint64_t seed = 12345;
    int phase_grid = 16;
    int random_pairs = 64;
};

namespace detail {

// Standard normal from raw mt19937_64 words (Box-Muller); keeps the random
// pair family reproducible independently of any library distribution.
class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

private:
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_ = false;
};

inline void normalize3(std::array<cx, 3>& v) {
    double n2 = 0.0;
    for (const cx& c : v) n2 += std::norm(c);
    const double inv = 1.0 / std::sqrt(n2);
    for (cx& c : v) c *= inv;
}

// Difference of the two projectors |u><u| - |w><w|.
inline CMat3 projector_difference(const std::array<cx, 3>& u, const std::array<cx, 3>& w) {
    CMat3 d;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            d[3 * i + j] = u[i] * std::conj(u[j]) - w[i] * std::conj(w[j]);
    return d;
}

// Half the trace norm of a Hermitian 3x3 difference operator.
inline double half_trace_norm3(const CMat3& m) {
    std::array<cx, 9> a = m;
    double w[3];
    jacobi_eigenvalues(a.data(), 3, w);
    return 0.5 * (std::abs(w[0]) + std::abs(w[1]) + std::abs(w[2]));
}

}  // namespace detail

inline NonMarkovResult blp_measure(const ChannelParams& p, const BlpOptions& opt = {}) {
    const DerivedRates rates = derived_rates(p);
    if (!(opt.dt > 0.0) || opt.dt > 1e-2)
        throw GridError("blp_measure: dt must lie in (0, 1e-2]");
    if (opt.t_max < 0.0) throw GridError("blp_measure: t_max must be positive or 0 for automatic");
    if (opt.phase_grid < 0 || opt.random_pairs < 0)
        throw GridError("blp_measure: family sizes must be nonnegative");
    if (opt.phase_grid + opt.random_pairs == 0)
        throw GridError("blp_measure: candidate family is empty");

    // Automatic horizon: ten envelope times of the slowest scale present
    // (reservoir memory or slow decay), which covers the revival train in
    // the strongly non-Markovian regimes.
    const double slow = std::min(std::max(rates.gamma_plus, 1e-300), p.lambda);
    const double t_max = (opt.t_max > 0.0) ? opt.t_max : 20.0 / slow;
    const long n_steps = static_cast<long>(std::ceil(t_max / opt.dt));

    // Candidate pairs as difference operators at t = 0.
    std::vector<detail::CMat3> diffs;
    std::vector<std::string> names;
    const int i2 = level_index(2), i1 = level_index(1);
    for (int k = 0; k < opt.phase_grid; ++k) {
        const double phi = 2.0 * 3.14159265358979323846 * k / opt.phase_grid;
        std::array<cx, 3> u{}, w{};
        const double r = 1.0 / std::sqrt(2.0);
        u[i2] = r;
        u[i1] = r * cx(std::cos(phi), std::sin(phi));
        w[i2] = r;
        w[i1] = -u[i1];
        diffs.push_back(detail::projector_difference(u, w));
        names.push_back("phase-grid " + std::to_string(k) + "/" + std::to_string(opt.phase_grid));
    }
    detail::Gaussian gauss(opt.seed);
    for (int k = 0; k < opt.random_pairs; ++k) {
        std::array<cx, 3> u, w;
        while (true) {
            for (int i = 0; i < 3; ++i) u[i] = cx(gauss(), gauss());
            detail::normalize3(u);
            for (int i = 0; i < 3; ++i) w[i] = cx(gauss(), gauss());
            cx overlap = 0.0;
            for (int i = 0; i < 3; ++i) overlap += std::conj(u[i]) * w[i];
            double rem = 0.0;
            for (int i = 0; i < 3; ++i) {
                w[i] -= overlap * u[i];
                rem += std::norm(w[i]);
            }
            if (rem > 1e-16) {
                detail::normalize3(w);
                break;
            }
        }
        diffs.push_back(detail::projector_difference(u, w));
        names.push_back("random pair " + std::to_string(k));
    }

    const std::size_t n_pairs = diffs.size();
    std::vector<double> accum(n_pairs, 0.0);
    std::vector<double> d_prev(n_pairs);
    for (std::size_t j = 0; j < n_pairs; ++j) d_prev[j] = detail::half_trace_norm3(diffs[j]);

    detail::CMat3 evolved;
    for (long i = 1; i <= n_steps; ++i) {
        const detail::LocalChannel ch = detail::local_channel(p, opt.dt * i);
        for (std::size_t j = 0; j < n_pairs; ++j) {
            detail::apply_channel3(ch, diffs[j], evolved);
            const double d = detail::half_trace_norm3(evolved);
            accum[j] += std::max(0.0, d - d_prev[j]);
            d_prev[j] = d;
        }
    }

    std::size_t winner = 0;
    for (std::size_t j = 1; j < n_pairs; ++j)
        if (accum[j] > accum[winner]) winner = j;

    NonMarkovResult out;
    out.n_measure = accum[winner];
    out.pair_description =
        (out.n_measure > 0.0) ? names[winner] : "none (trace distance contracted monotonically)";
    out.grid_step = opt.dt;
    out.t_max = t_max;
    return out;
}

}  // namespace vqsl
