#pragma once

#include <cmath>
#include <cstdint>

#include "ymlab/algebra.hpp"
#include "ymlab/forms4d.hpp"

namespace ymtest {

using namespace ymlab;

inline constexpr GroupKind kAllKinds[] = {GroupKind::U1, GroupKind::SU2, GroupKind::SU3};

/// SU(2) generator -(i/2) sigma_a, a = 1..3.
inline AlgebraElement su2_generator(int a) {
    const cplx i(0.0, 1.0);
    CMatrix m(2);
    if (a == 1) {
        m(0, 1) = -0.5 * i;
        m(1, 0) = -0.5 * i;
    } else if (a == 2) {
        m(0, 1) = -0.5;
        m(1, 0) = 0.5;
    } else {
        m(0, 0) = -0.5 * i;
        m(1, 1) = 0.5 * i;
    }
    return AlgebraElement::from_matrix(GroupKind::SU2, m);
}

inline double distance(const AlgebraElement& a, const AlgebraElement& b) { return (a - b).norm(); }
inline double distance(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

/// Random group element exp(X), X with coordinates uniform in [-amp, amp].
inline GroupElement random_group(GroupKind k, Rng& rng, double amp = 3.0) {
    return exp_map(random_algebra(k, rng, amp));
}

/// Random complex matrix with entries uniform in the unit square.
inline CMatrix random_matrix(int n, Rng& rng) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return m;
}

inline TwoForm<double> random_scalar_form(Rng& rng) {
    std::array<double, 6> c{};
    for (auto& v : c) v = rng.uniform(-1, 1);
    return TwoForm<double>(c);
}

inline TwoForm<AlgebraElement> random_form(GroupKind k, Rng& rng) {
    std::array<AlgebraElement, 6> c;
    for (auto& v : c) v = random_algebra(k, rng, 1.0);
    return TwoForm<AlgebraElement>(c);
}

inline OneForm<AlgebraElement> random_one_form(GroupKind k, Rng& rng) {
    std::array<AlgebraElement, 4> c;
    for (auto& v : c) v = random_algebra(k, rng, 1.0);
    return OneForm<AlgebraElement>(c);
}

inline double form_distance(const TwoForm<AlgebraElement>& a, const TwoForm<AlgebraElement>& b) {
    double s = 0.0;
    for (int p = 0; p < 6; ++p) s = std::max(s, distance(a.component(p), b.component(p)));
    return s;
}

inline double form_distance(const TwoForm<double>& a, const TwoForm<double>& b) {
    double s = 0.0;
    for (int p = 0; p < 6; ++p) s = std::max(s, std::abs(a.component(p) - b.component(p)));
    return s;
}

}  // namespace ymtest
