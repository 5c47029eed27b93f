// Shared generators for the test suites. Everything is seeded explicitly so
// failures reproduce.

#pragma once

#include <random>
#include <vector>

#include "vqsl/qmat.hpp"

namespace testutil {

using vqsl::cx;
using vqsl::Mat;

inline Mat random_complex(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Mat m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = cx(n(rng), n(rng));
    return m;
}

inline Mat random_hermitian(int dim, std::mt19937_64& rng) {
    const Mat a = random_complex(dim, rng);
    Mat h = a + a.adjoint();
    h *= cx(0.5, 0.0);
    return h;
}

// A A^dag / Tr(A A^dag): Hermitian, unit trace, positive semidefinite.
inline Mat random_density_mat(int dim, std::mt19937_64& rng) {
    const Mat a = random_complex(dim, rng);
    Mat rho = a * a.adjoint();
    const double tr = rho.trace().real();
    rho *= cx(1.0 / tr, 0.0);
    // Symmetrize away the last-bit asymmetry so checked() never trips on it.
    Mat h = rho + rho.adjoint();
    h *= cx(0.5, 0.0);
    return h;
}

inline vqsl::DensityMatrix random_density(int dim, std::mt19937_64& rng) {
    return vqsl::DensityMatrix::checked(random_density_mat(dim, rng));
}

inline std::vector<cx> random_ket(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    std::vector<cx> v(dim);
    double norm2 = 0.0;
    for (cx& c : v) {
        c = cx(n(rng), n(rng));
        norm2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cx& c : v) c *= inv;
    return v;
}

}  // namespace testutil
