// Central tolerance table. Library code and the test suites read the same
// constants so a contract enforced here is the identical contract asserted
// there.

#pragma once

namespace vqsl::tol {

// Density-matrix invariants.
inline constexpr double hermiticity = 1e-10;   // max-entry norm of M - M^dag
inline constexpr double unit_trace = 1e-10;    // |Tr - 1|
inline constexpr double psd_min_eig = -1e-9;   // smallest admissible eigenvalue

// Hermitian Jacobi eigensolver.
inline constexpr double jacobi_off_diag = 1e-14;  // off-diagonal Frobenius mass at convergence
inline constexpr int jacobi_max_sweeps = 60;

// Spectrum sanity (sum and sum-of-squares moment matching).
inline constexpr double spectrum_moment = 1e-8;

// Kraus channel.
inline constexpr double completeness = 1e-10;      // ||sum K^dag K - I||_max
inline constexpr double kraus_deriv = 1e-8;        // d/dt of the completeness sum
inline constexpr double amp_imag_residue = 1e-12;  // discarded imaginary part of G
inline constexpr double amp_branch_switch = 0.5;   // |d t/2| below which the cosh/sinhc form is used
inline constexpr double sinhc_series = 1e-4;       // |x| below which sinh(x)/x uses its series
inline constexpr double sqrt1mg2_guard = 1e-12;    // 1-G^2 below which d/dt sqrt(1-G^2) is taken as 0
inline constexpr double degenerate_q = 1e-12;      // q below which the mixing unitary is identity
inline constexpr double rho_dot_trace = 1e-9;      // |Tr rho_dot|
inline constexpr double dark_state = 1e-12;        // |G_-(t) - 1| when gamma_- = 0

// Entanglement diagnostics.
inline constexpr double negativity_floor = 1e-12;  // sums below this are an exact PPT zero

// Quadrature for the time-averaged evolution speed.
inline constexpr double quad_rel = 1e-6;            // relative change across one refinement
inline constexpr int quad_max_intervals = 1 << 14;  // refinement cap
inline constexpr double x_epsilon = 1e-12;          // X below this resolves tau_qsl to 0

// Amplitude ODE oracle.
inline constexpr double ode_max_step = 1e-3;

}  // namespace vqsl::tol
