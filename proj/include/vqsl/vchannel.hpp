// Exact reduced dynamics of a V-type three-level atom whose two upper
// levels decay into a common Lorentzian reservoir at resonance.
//
// Levels |2>, |1> decay to |0> with rates gamma1, gamma2; the reservoir
// has spectral width lambda; theta in [-1, 1] sets the cross coupling
// between the two decay channels (theta = 0 decouples them, |theta| = 1
// maximizes interference). Diagonalizing the coupled channel pair gives
// effective rates
//
//   q        = sqrt((gamma1 - gamma2)^2 + 4 gamma1 gamma2 theta^2)
//   gamma+/- = (gamma1 + gamma2 +/- q) / 2
//
// and each effective channel carries the damped amplitude
//
//   G(t) = e^{-lambda t/2} [cosh(d t/2) + (lambda/d) sinh(d t/2)],
//   d    = sqrt(lambda^2 - 2 lambda gamma),
//
// real-exponential for lambda > 2 gamma and oscillatory below. The
// channel has three Kraus operators in the effective basis, rotated back
// by the real mixing matrix U built from q. gamma- = 0 (theta = +/-1,
// gamma1 = gamma2) freezes one channel entirely: G- stays 1 for all t.
//
// Everything here is closed-form except oracle_amplitude_ode, a direct
// integration of the equivalent local system
//
//   G' = -(gamma lambda / 2) z,   z' = G - lambda z,
//
// kept as an independent cross-check for the amplitude formulas.

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "vqsl/errors.hpp"
#include "vqsl/qmat.hpp"
#include "vqsl/tolerances.hpp"

namespace vqsl {

struct ChannelParams {
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double lambda = 1.0;
    double theta = 1.0;

    static ChannelParams symmetric(double gamma, double lambda, double theta) {
        return ChannelParams{gamma, gamma, lambda, theta};
    }

    void validate() const {
        if (!(gamma1 > 0.0) || !std::isfinite(gamma1))
            throw ParamError("ChannelParams: gamma1 must be positive, got " + std::to_string(gamma1));
        if (!(gamma2 > 0.0) || !std::isfinite(gamma2))
            throw ParamError("ChannelParams: gamma2 must be positive, got " + std::to_string(gamma2));
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw ParamError("ChannelParams: lambda must be positive, got " + std::to_string(lambda));
        if (!(std::abs(theta) <= 1.0))
            throw ParamError("ChannelParams: |theta| must be <= 1, got " + std::to_string(theta));
    }
};

struct DerivedRates {
    double q;            // channel splitting
    double gamma_plus;   // fast effective rate
    double gamma_minus;  // slow effective rate, clamped to >= 0
    cx d_plus;           // sqrt(lambda^2 - 2 lambda gamma+), principal branch
    cx d_minus;
};

inline DerivedRates derived_rates(const ChannelParams& p) {
    p.validate();
    const double dg = p.gamma1 - p.gamma2;
    const double q = std::sqrt(dg * dg + 4.0 * p.gamma1 * p.gamma2 * p.theta * p.theta);
    DerivedRates r;
    r.q = q;
    r.gamma_plus = 0.5 * (p.gamma1 + p.gamma2 + q);
    // Rounding can push gamma- a few ulp below zero when q ~ gamma1 + gamma2;
    // a decay rate cannot be negative, and an exact zero makes the frozen
    // channel exact (d = lambda, G = 1 identically).
    r.gamma_minus = std::max(0.0, 0.5 * (p.gamma1 + p.gamma2 - q));
    auto d_of = [&p](double gamma) -> cx {
        if (gamma == 0.0) return cx(p.lambda, 0.0);
        return std::sqrt(cx(p.lambda * p.lambda - 2.0 * p.lambda * gamma, 0.0));
    };
    r.d_plus = d_of(r.gamma_plus);
    r.d_minus = d_of(r.gamma_minus);
    return r;
}

// Amplitudes of both effective channels and their time derivatives.
struct AmplitudePair {
    double g_plus;
    double gdot_plus;
    double g_minus;
    double gdot_minus;
};

namespace detail {

// One channel's G and dG/dt. Two regimes around x = d t/2:
//   |x| small: G = e^{-lambda t/2} (cosh x + (lambda t/2) sinhc x) with
//     sinhc evaluated through x^2 (real for either branch of d), series
//     below the tol::sinhc_series cutoff; immune to d -> 0.
//   |x| large: split into the two characteristic exponentials,
//     G = (1 + lambda/d)/2 e^{x - lambda t/2} + (1 - lambda/d)/2 e^{-x - lambda t/2},
//     whose exponents never have positive real part; no cosh overflow.
// Both regimes produce a real value; the large-|x| path runs in complex
// arithmetic and checks that the imaginary residue is at rounding level.
struct GPair {
    double g;
    double gdot;
};

inline GPair amplitude_one(double lambda, double gamma, cx d, double t) {
    // A frozen channel does not move at all; returning the solution exactly
    // keeps sqrt(1 - G^2) pinned at zero instead of wobbling at rounding
    // level, which matters to everything downstream that differentiates it.
    if (gamma == 0.0) return GPair{1.0, 0.0};

    const double u = 0.5 * t;
    const double w = lambda * lambda - 2.0 * lambda * gamma;  // d^2
    const double x2 = w * u * u;                              // x^2, real
    const double ax = std::sqrt(std::abs(x2));

    GPair out;
    if (ax < tol::amp_branch_switch) {
        double ch, shc;  // cosh x, sinh(x)/x as functions of x^2
        if (ax < tol::sinhc_series) {
            ch = 1.0 + x2 * (0.5 + x2 / 24.0);
            shc = 1.0 + x2 * (1.0 / 6.0 + x2 / 120.0);
        } else if (x2 > 0.0) {
            ch = std::cosh(ax);
            shc = std::sinh(ax) / ax;
        } else {
            ch = std::cos(ax);
            shc = std::sin(ax) / ax;
        }
        const double e = std::exp(-lambda * u);
        out.g = e * (ch + lambda * u * shc);
        out.gdot = -gamma * lambda * u * e * shc;
    } else {
        const cx x = d * u;
        const cx lod = lambda / d;
        const cx ep = std::exp(x - lambda * u);
        const cx em = std::exp(-x - lambda * u);
        const cx g = 0.5 * ((1.0 + lod) * ep + (1.0 - lod) * em);
        const cx gdot = -(gamma * lambda) / d * (0.5 * (ep - em));
        if (std::abs(g.imag()) > tol::amp_imag_residue ||
            std::abs(gdot.imag()) > tol::amp_imag_residue)
            throw Error("amplitude: imaginary residue above tolerance");
        out.g = g.real();
        out.gdot = gdot.real();
    }
    return out;
}

}  // namespace detail

inline AmplitudePair amplitude(const ChannelParams& p, double t) {
    if (!(t >= 0.0)) throw ParamError("amplitude: t must be >= 0");
    const DerivedRates r = derived_rates(p);
    const detail::GPair gp = detail::amplitude_one(p.lambda, r.gamma_plus, r.d_plus, t);
    const detail::GPair gm = detail::amplitude_one(p.lambda, r.gamma_minus, r.d_minus, t);
    return AmplitudePair{gp.g, gp.gdot, gm.g, gm.gdot};
}

// Integrates G' = -(gamma lambda/2) z, z' = G - lambda z for both effective
// channels with classical RK4 and returns (G, G') at the requested times.
// Step size shrinks with the stiffest rate so the result stays well below
// the comparison tolerances used against the closed form.
inline std::vector<AmplitudePair> oracle_amplitude_ode(const ChannelParams& p,
                                                       const std::vector<double>& times) {
    const DerivedRates r = derived_rates(p);
    if (!times.empty() && times.front() != 0.0)
        throw GridError("oracle_amplitude_ode: grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] >= times[i - 1]))
            throw GridError("oracle_amplitude_ode: times must be ascending");

    const double lam = p.lambda;
    const double h0 = tol::ode_max_step / std::max({1.0, lam, r.gamma_plus});

    // State y = (G+, z+, G-, z-).
    std::array<double, 4> y{1.0, 0.0, 1.0, 0.0};
    const double gp = r.gamma_plus, gm = r.gamma_minus;
    auto f = [lam, gp, gm](const std::array<double, 4>& s) {
        return std::array<double, 4>{-0.5 * gp * lam * s[1], s[0] - lam * s[1],
                                     -0.5 * gm * lam * s[3], s[2] - lam * s[3]};
    };
    auto rk4_step = [&f](std::array<double, 4>& s, double h) {
        const auto k1 = f(s);
        std::array<double, 4> t1, t2, t3;
        for (int i = 0; i < 4; ++i) t1[i] = s[i] + 0.5 * h * k1[i];
        const auto k2 = f(t1);
        for (int i = 0; i < 4; ++i) t2[i] = s[i] + 0.5 * h * k2[i];
        const auto k3 = f(t2);
        for (int i = 0; i < 4; ++i) t3[i] = s[i] + h * k3[i];
        const auto k4 = f(t3);
        for (int i = 0; i < 4; ++i) s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    };

    std::vector<AmplitudePair> out;
    out.reserve(times.size());
    double t_now = 0.0;
    for (double target : times) {
        const double span = target - t_now;
        if (span > 0.0) {
            const long n = static_cast<long>(std::ceil(span / h0));
            const double h = span / static_cast<double>(n);
            for (long i = 0; i < n; ++i) rk4_step(y, h);
            t_now = target;
        }
        out.push_back(AmplitudePair{y[0], -0.5 * gp * lam * y[1], y[2], -0.5 * gm * lam * y[3]});
    }
    return out;
}

// Real rotation between the bare levels |2>, |1> and the effective channel
// pair. Columns are the effective modes:
//
//   U = [[ a, -b, 0],
//        [ b,  a, 0],
//        [ 0,  0, 1]],
//   a = sqrt((q + gamma1 - gamma2) / 2q), b = sqrt((q - gamma1 + gamma2) / 2q).
//
// q -> 0 only when theta -> 0 with gamma1 = gamma2, where every rotation
// angle gives the same channel; identity is the convention here.
inline Mat mixing_unitary(const ChannelParams& p) {
    const DerivedRates r = derived_rates(p);
    double a = 1.0, b = 0.0;
    if (r.q > tol::degenerate_q * (p.gamma1 + p.gamma2)) {
        a = std::sqrt(std::max(0.0, (r.q + p.gamma1 - p.gamma2) / (2.0 * r.q)));
        b = std::sqrt(std::max(0.0, (r.q - p.gamma1 + p.gamma2) / (2.0 * r.q)));
    }
    Mat u(3);
    u(0, 0) = a;
    u(0, 1) = -b;
    u(1, 0) = b;
    u(1, 1) = a;
    u(2, 2) = 1.0;
    return u;
}

namespace detail {

using Mat3r = std::array<double, 9>;   // real 3x3, row major
using CMat3 = std::array<cx, 9>;       // complex 3x3, row major
using CMat9 = std::array<cx, 81>;      // complex 9x9, row major

// One atom's channel at a fixed time: three Kraus operators and their time
// derivatives, all real in this model.
struct LocalChannel {
    double time = 0.0;
    std::array<Mat3r, 3> k{};
    std::array<Mat3r, 3> kdot{};
};

inline LocalChannel local_channel(const ChannelParams& p, double t) {
    const AmplitudePair amp = amplitude(p, t);
    const Mat u = mixing_unitary(p);
    const double a = u(0, 0).real();
    const double b = u(1, 0).real();

    auto loss = [](double g, double gdot, double& c, double& cdot) {
        const double m = std::max(0.0, 1.0 - g * g);
        c = std::sqrt(m);
        // d/dt sqrt(1 - G^2) = -G G' / sqrt(1 - G^2); the guard zone around
        // t = 0 (and the frozen channel, where the factor is identically
        // zero) reports a zero derivative.
        cdot = (m < tol::sqrt1mg2_guard) ? 0.0 : -g * gdot / c;
    };
    double cp, cpdot, cm, cmdot;
    loss(amp.g_plus, amp.gdot_plus, cp, cpdot);
    loss(amp.g_minus, amp.gdot_minus, cm, cmdot);

    LocalChannel ch;
    ch.time = t;

    // K1 = U^T diag(G+, G-, 1) U, symmetric 2x2 block plus the fixed ground
    // level. K2, K3 move population into row 2 along the effective modes.
    auto blockdiag = [a, b](double dp, double dm, double corner) {
        Mat3r m{};
        m[0] = a * a * dp + b * b * dm;        // (0,0)
        m[1] = a * b * (dm - dp);              // (0,1)
        m[3] = m[1];                           // (1,0)
        m[4] = b * b * dp + a * a * dm;        // (1,1)
        m[8] = corner;                         // (2,2)
        return m;
    };
    ch.k[0] = blockdiag(amp.g_plus, amp.g_minus, 1.0);
    ch.kdot[0] = blockdiag(amp.gdot_plus, amp.gdot_minus, 0.0);

    auto bottomrow = [](double c0, double c1) {
        Mat3r m{};
        m[6] = c0;  // (2,0)
        m[7] = c1;  // (2,1)
        return m;
    };
    ch.k[1] = bottomrow(cp * a, -cp * b);
    ch.kdot[1] = bottomrow(cpdot * a, -cpdot * b);
    ch.k[2] = bottomrow(cm * b, cm * a);
    ch.kdot[2] = bottomrow(cmdot * b, cmdot * a);
    return ch;
}

// y += A x B^T with A, B real 3x3 (row major) and x complex 3x3 accessed
// through explicit row/column strides. The strides let the same kernel act
// on a contiguous 3x3, on a block of a 9x9, or across the blocks of a 9x9.
inline void sandwich_add(cx* y, int yrs, int ycs, const Mat3r& a, const cx* x, int xrs, int xcs,
                         const Mat3r& b) {
    cx t[9];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t[3 * i + j] = a[3 * i] * x[j * xcs] + a[3 * i + 1] * x[xrs + j * xcs] +
                           a[3 * i + 2] * x[2 * xrs + j * xcs];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            y[i * yrs + j * ycs] += t[3 * i] * b[3 * j] + t[3 * i + 1] * b[3 * j + 1] +
                                    t[3 * i + 2] * b[3 * j + 2];
}

// out = sum_i K_i x K_i^T on a contiguous complex 3x3.
inline void apply_channel3(const LocalChannel& ch, const CMat3& x, CMat3& out) {
    out.fill(cx{});
    for (int i = 0; i < 3; ++i) sandwich_add(out.data(), 3, 1, ch.k[i], x.data(), 3, 1, ch.k[i]);
}

// Applies sum_i K_i . K_i^T to the second tensor factor of a 9x9: each
// 3x3 block transforms independently.
inline void map_second(const LocalChannel& ch, const CMat9& in, CMat9& out, bool deriv) {
    out.fill(cx{});
    for (int bi = 0; bi < 3; ++bi)
        for (int bj = 0; bj < 3; ++bj) {
            const cx* x = in.data() + 27 * bi + 3 * bj;
            cx* y = out.data() + 27 * bi + 3 * bj;
            for (int i = 0; i < 3; ++i) {
                if (deriv) {
                    sandwich_add(y, 9, 1, ch.kdot[i], x, 9, 1, ch.k[i]);
                    sandwich_add(y, 9, 1, ch.k[i], x, 9, 1, ch.kdot[i]);
                } else {
                    sandwich_add(y, 9, 1, ch.k[i], x, 9, 1, ch.k[i]);
                }
            }
        }
}

// Same on the first tensor factor: for each fixed pair of second-factor
// indices the strided 3x3 across blocks transforms.
inline void map_first(const LocalChannel& ch, const CMat9& in, CMat9& out, bool deriv) {
    out.fill(cx{});
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            const cx* x = in.data() + 9 * k + l;
            cx* y = out.data() + 9 * k + l;
            for (int i = 0; i < 3; ++i) {
                if (deriv) {
                    sandwich_add(y, 27, 3, ch.kdot[i], x, 27, 3, ch.k[i]);
                    sandwich_add(y, 27, 3, ch.k[i], x, 27, 3, ch.kdot[i]);
                } else {
                    sandwich_add(y, 27, 3, ch.k[i], x, 27, 3, ch.k[i]);
                }
            }
        }
}

// rho(t) for two atoms in independent identical reservoirs,
// rho = (Phi tensor Phi)(rho0), factored through the two one-sided maps.
inline void pair_state(const LocalChannel& ch, const CMat9& rho0, CMat9& rho) {
    CMat9 mid;
    map_second(ch, rho0, mid, false);
    map_first(ch, mid, rho, false);
}

// rho(t) and d rho/dt together. The product rule across the two factors
// reuses the one-sided intermediates:
//   rho'  = Phi_A'(Phi_B(rho0)) + Phi_A(Phi_B'(rho0)).
inline void pair_state_and_deriv(const LocalChannel& ch, const CMat9& rho0, CMat9& rho,
                                 CMat9& rhodot) {
    CMat9 mid, middot, tmp;
    map_second(ch, rho0, mid, false);
    map_second(ch, rho0, middot, true);
    map_first(ch, mid, rho, false);
    map_first(ch, mid, rhodot, true);
    map_first(ch, middot, tmp, false);
    for (int i = 0; i < 81; ++i) rhodot[i] += tmp[i];
}

inline CMat9 to_cmat9(const Mat& m) {
    if (m.dim() != 9) throw DimensionError("to_cmat9: dim must be 9");
    CMat9 out;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) out[9 * i + j] = m(i, j);
    return out;
}

inline Mat from_cmat9(const CMat9& a) {
    Mat m(9);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) m(i, j) = a[9 * i + j];
    return m;
}

inline CMat3 to_cmat3(const Mat& m) {
    if (m.dim() != 3) throw DimensionError("to_cmat3: dim must be 3");
    CMat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[3 * i + j] = m(i, j);
    return out;
}

inline Mat from_cmat3(const CMat3& a) {
    Mat m(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = a[3 * i + j];
    return m;
}

}  // namespace detail

// The channel's Kraus operators and their derivatives as full matrices.
struct KrausSet {
    double time;
    std::array<Mat, 3> k;
    std::array<Mat, 3> kdot;
};

inline KrausSet kraus_set(const ChannelParams& p, double t) {
    const detail::LocalChannel ch = detail::local_channel(p, t);
    KrausSet ks{ch.time, {Mat(3), Mat(3), Mat(3)}, {Mat(3), Mat(3), Mat(3)}};
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                ks.k[i](r, c) = ch.k[i][3 * r + c];
                ks.kdot[i](r, c) = ch.kdot[i][3 * r + c];
            }
    return ks;
}

inline DensityMatrix evolve_single(const DensityMatrix& rho0, const ChannelParams& p, double t) {
    if (rho0.dim() != 3) throw DimensionError("evolve_single: state dim must be 3");
    const detail::LocalChannel ch = detail::local_channel(p, t);
    detail::CMat3 in = detail::to_cmat3(rho0.mat()), out;
    detail::apply_channel3(ch, in, out);
    return DensityMatrix::trusted(detail::from_cmat3(out));
}

inline DensityMatrix evolve_pair(const DensityMatrix& rho0, const ChannelParams& p, double t) {
    if (rho0.dim() != 9) throw DimensionError("evolve_pair: state dim must be 9");
    const detail::LocalChannel ch = detail::local_channel(p, t);
    detail::CMat9 in = detail::to_cmat9(rho0.mat()), out;
    detail::pair_state(ch, in, out);
    return DensityMatrix::trusted(detail::from_cmat9(out));
}

inline Mat rho_dot_pair(const DensityMatrix& rho0, const ChannelParams& p, double t) {
    if (rho0.dim() != 9) throw DimensionError("rho_dot_pair: state dim must be 9");
    const detail::LocalChannel ch = detail::local_channel(p, t);
    detail::CMat9 in = detail::to_cmat9(rho0.mat()), rho, rhodot;
    detail::pair_state_and_deriv(ch, in, rho, rhodot);
    return detail::from_cmat9(rhodot);
}

}  // namespace vqsl
