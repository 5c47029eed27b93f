// Two-qutrit initial states and entanglement diagnostics.
//
// Level labels 0 (ground), 1, 2 map to matrix indices 2, 1, 0: the basis
// is ordered |2>, |1>, |0> per qutrit, and |a b> sits at 3*(2-a) + (2-b).
// Factories below take level labels, so the storage order never leaks.
//
// Families:
//   werner(p, v):  (1-p) I9/9 + p |psi><psi| with psi one of
//     psi0        = (|00> + |11> + |22>)/sqrt(3)
//     psi1        = (|01> + |12> + |20>)/sqrt(3)
//     psi1swapped = (|10> + |21> + |02>)/sqrt(3)
//   horodecki(alpha) = (2/7)|psi0><psi0| + (alpha/7) sigma+ + ((5-alpha)/7) sigma-
//
// Entanglement: negativity sums the magnitudes of the negative eigenvalues
// of the partial transpose. The Werner family crosses PPT at p = 1/4; the
// Horodecki family is NPT exactly on [0,1) and (4,5], PPT on [1,4], and
// carries bound entanglement on [1,2) and (3,4] (asserted from the known
// classification, not re-detected here).

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vqsl/errors.hpp"
#include "vqsl/qmat.hpp"
#include "vqsl/tolerances.hpp"

namespace vqsl {

// Matrix index of a single-qutrit level label.
inline int level_index(int level) {
    if (level < 0 || level > 2) throw ParamError("level_index: level must be 0, 1, or 2");
    return 2 - level;
}

// Matrix index of the product-basis vector |a b>.
inline int pair_index(int level_a, int level_b) {
    return 3 * level_index(level_a) + level_index(level_b);
}

enum class WernerVariant { Psi0, Psi1, Psi1Swapped };

enum class RegionLabel { Separable, FreeEntangled, BoundEntangled };

inline const char* region_name(RegionLabel label) {
    switch (label) {
        case RegionLabel::Separable: return "Separable";
        case RegionLabel::FreeEntangled: return "FreeEntangled";
        case RegionLabel::BoundEntangled: return "BoundEntangled";
    }
    throw Error("region_name: unreachable");
}

struct EntanglementRegion {
    RegionLabel label;
    double parameter;
};

namespace detail {

// Coefficient vector of one of the three maximally entangled kets above,
// given as level pairs.
inline std::vector<cx> entangled_ket(const int (*pairs)[2]) {
    std::vector<cx> v(9, cx{});
    const double amp = 1.0 / std::sqrt(3.0);
    for (int n = 0; n < 3; ++n) v[pair_index(pairs[n][0], pairs[n][1])] = amp;
    return v;
}

inline std::vector<cx> psi_ket(WernerVariant v) {
    static constexpr int kPsi0[3][2] = {{0, 0}, {1, 1}, {2, 2}};
    static constexpr int kPsi1[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    static constexpr int kPsi1Swapped[3][2] = {{1, 0}, {2, 1}, {0, 2}};
    switch (v) {
        case WernerVariant::Psi0: return entangled_ket(kPsi0);
        case WernerVariant::Psi1: return entangled_ket(kPsi1);
        case WernerVariant::Psi1Swapped: return entangled_ket(kPsi1Swapped);
    }
    throw Error("psi_ket: unreachable");
}

}  // namespace detail

inline DensityMatrix werner(double p, WernerVariant v) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParamError("werner: p must lie in [0,1]");
    Mat m = projector(detail::psi_ket(v));
    m *= cx(p, 0.0);
    const double iso = (1.0 - p) / 9.0;
    for (int i = 0; i < 9; ++i) m(i, i) += iso;
    return DensityMatrix::checked(std::move(m));
}

// I3 tensor S with S the cyclic level shift S|j> = |j-1 mod 3>. Note the
// adjoint convention: I tensor S maps psi0 to the swapped variant, and
// I tensor S^dag maps psi0 to psi1.
inline Mat shift_unitary() {
    Mat s(3);
    s(level_index(2), level_index(0)) = 1.0;
    s(level_index(0), level_index(1)) = 1.0;
    s(level_index(1), level_index(2)) = 1.0;
    return tensor(Mat::identity(3), s);
}

inline DensityMatrix horodecki(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 5.0)) throw ParamError("horodecki: alpha must lie in [0,5]");
    Mat m = projector(detail::psi_ket(WernerVariant::Psi0));
    m *= cx(2.0 / 7.0, 0.0);
    static constexpr int kPlus[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    static constexpr int kMinus[3][2] = {{1, 0}, {2, 1}, {0, 2}};
    for (int n = 0; n < 3; ++n) {
        m(pair_index(kPlus[n][0], kPlus[n][1]), pair_index(kPlus[n][0], kPlus[n][1])) +=
            alpha / 21.0;
        m(pair_index(kMinus[n][0], kMinus[n][1]), pair_index(kMinus[n][0], kMinus[n][1])) +=
            (5.0 - alpha) / 21.0;
    }
    return DensityMatrix::checked(std::move(m));
}

// Exchanges the two parties: level pair (a,b) -> (b,a) on both sides.
inline DensityMatrix swap_parties(const DensityMatrix& rho) {
    if (rho.dim() != 9) throw DimensionError("swap_parties: dim must be 9");
    Mat out(9);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l)
                    out(3 * i + k, 3 * j + l) = rho(3 * k + i, 3 * l + j);
    return DensityMatrix::trusted(std::move(out));
}

// Sum of |negative eigenvalues| of the partial transpose; zero for PPT
// states, with rounding-level sums clipped to an exact zero.
inline double negativity(const DensityMatrix& rho) {
    if (rho.dim() != 9) throw DimensionError("negativity: dim must be 9");
    const Spectrum s = hermitian_eigenvalues(partial_transpose_second(rho.mat()));
    double neg = 0.0;
    for (double v : s.values)
        if (v < 0.0) neg -= v;
    return (neg < tol::negativity_floor) ? 0.0 : neg;
}

enum class StateFamily { WernerPsi0, WernerPsi1, WernerPsi1Swapped, Horodecki };

inline const char* family_label(StateFamily f) {
    switch (f) {
        case StateFamily::WernerPsi0: return "werner-psi0";
        case StateFamily::WernerPsi1: return "werner-psi1";
        case StateFamily::WernerPsi1Swapped: return "werner-psi1-swapped";
        case StateFamily::Horodecki: return "horodecki";
    }
    throw Error("family_label: unreachable");
}

inline StateFamily parse_family(const std::string& label) {
    if (label == "werner-psi0") return StateFamily::WernerPsi0;
    if (label == "werner-psi1") return StateFamily::WernerPsi1;
    if (label == "werner-psi1-swapped") return StateFamily::WernerPsi1Swapped;
    if (label == "horodecki") return StateFamily::Horodecki;
    throw ValidationError("unknown state family '" + label +
                          "' (expected werner-psi0, werner-psi1, werner-psi1-swapped, or "
                          "horodecki)");
}

inline DensityMatrix make_state(StateFamily f, double param) {
    switch (f) {
        case StateFamily::WernerPsi0: return werner(param, WernerVariant::Psi0);
        case StateFamily::WernerPsi1: return werner(param, WernerVariant::Psi1);
        case StateFamily::WernerPsi1Swapped: return werner(param, WernerVariant::Psi1Swapped);
        case StateFamily::Horodecki: return horodecki(param);
    }
    throw Error("make_state: unreachable");
}

// Region of the family's known entanglement classification. The PPT
// intervals [1,2) and (3,4] of the Horodecki family hold bound
// entanglement that the PPT test alone cannot certify; the label encodes
// the classification, negativity stays zero there.
inline EntanglementRegion classify_region(StateFamily f, double param) {
    if (f == StateFamily::Horodecki) {
        if (!(param >= 0.0 && param <= 5.0))
            throw ParamError("classify_region: alpha must lie in [0,5]");
        RegionLabel label;
        if (param < 1.0)
            label = RegionLabel::FreeEntangled;
        else if (param < 2.0)
            label = RegionLabel::BoundEntangled;
        else if (param <= 3.0)
            label = RegionLabel::Separable;
        else if (param <= 4.0)
            label = RegionLabel::BoundEntangled;
        else
            label = RegionLabel::FreeEntangled;
        return EntanglementRegion{label, param};
    }
    if (!(param >= 0.0 && param <= 1.0)) throw ParamError("classify_region: p must lie in [0,1]");
    return EntanglementRegion{
        (param <= 0.25) ? RegionLabel::Separable : RegionLabel::FreeEntangled, param};
}

}  // namespace vqsl
