#pragma once

// Pointwise exterior algebra on an oriented Euclidean 4-dimensional fiber.
//
// Directions are 0-based (0..3). Orientation: epsilon_{0123} = +1.
// A 2-form stores only its six mu < nu components in the order
// 01, 02, 03, 12, 13, 23; f(nu, mu) = -f(mu, nu) is computed on access.
//
// Values are either plain reals or AlgebraElements. The wedge of two
// ad-valued 1-forms follows the bracket convention
//   (psi ^ phi)_{mu nu} = ([psi_mu, phi_nu] - [psi_nu, phi_mu]) / 2,
// so (psi ^ psi)_{mu nu} = [psi_mu, psi_nu].

#include <array>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "ymlab/algebra.hpp"

namespace ymlab {

inline double zero_like(double) { return 0.0; }
inline AlgebraElement zero_like(const AlgebraElement& x) { return AlgebraElement::zero(x.kind()); }
inline double inner(double a, double b) { return a * b; }

/// Index of the plane (mu, nu), mu < nu, in the six-component storage.
constexpr int plane_index(int mu, int nu) {
    constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[mu][nu];
}

constexpr std::array<std::pair<int, int>, 6> kPlanes4{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

enum class Duality { SelfDual, AntiSelfDual };

template <class T>
class OneForm {
public:
    OneForm() = default;
    explicit OneForm(std::array<T, 4> c) : c_(std::move(c)) {}

    const T& operator[](int mu) const { return c_.at(mu); }
    T& operator[](int mu) { return c_.at(mu); }

    OneForm& operator+=(const OneForm& o) {
        for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
        return *this;
    }
    OneForm& operator*=(double s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
    friend OneForm operator*(double s, OneForm a) { return a *= s; }

private:
    std::array<T, 4> c_{};
};

template <class T>
class TwoForm {
public:
    TwoForm() = default;
    /// Components in plane order 01, 02, 03, 12, 13, 23.
    explicit TwoForm(std::array<T, 6> c) : c_(std::move(c)) {}

    static TwoForm zero(const T& like) {
        std::array<T, 6> c;
        c.fill(zero_like(like));
        return TwoForm(c);
    }

    /// Antisymmetric access; the diagonal returns zero.
    T operator()(int mu, int nu) const {
        if (mu == nu) return zero_like(c_[0]);
        if (mu < nu) return c_[plane_index(mu, nu)];
        T v = c_[plane_index(nu, mu)];
        v *= -1.0;
        return v;
    }
    const T& component(int plane) const { return c_.at(plane); }
    T& component(int plane) { return c_.at(plane); }
    const std::array<T, 6>& components() const { return c_; }

    TwoForm& operator+=(const TwoForm& o) {
        for (int i = 0; i < 6; ++i) c_[i] += o.c_[i];
        return *this;
    }
    TwoForm& operator-=(const TwoForm& o) {
        for (int i = 0; i < 6; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    TwoForm& operator*=(double s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
    friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
    friend TwoForm operator*(double s, TwoForm a) { return a *= s; }

private:
    std::array<T, 6> c_{};
};

/// (*f)_{mu nu} = eps_{mu nu rho sigma} f_{rho sigma} / 2.
template <class T>
TwoForm<T> hodge_star(const TwoForm<T>& f) {
    const auto& c = f.components();
    auto neg = [](T v) { v *= -1.0; return v; };
    // *e01 = e23, *e02 = -e13, *e03 = e12 and the inverse relations.
    return TwoForm<T>({c[5], neg(c[4]), c[3], c[2], neg(c[1]), c[0]});
}

/// P+- f = (f +- *f) / 2.
template <class T>
TwoForm<T> project_pm(const TwoForm<T>& f, Duality which) {
    TwoForm<T> s = hodge_star(f);
    TwoForm<T> r = which == Duality::SelfDual ? f + s : f - s;
    r *= 0.5;
    return r;
}

/// (i_mu f)_nu = f_{mu nu}.
template <class T>
OneForm<T> interior(int mu, const TwoForm<T>& f) {
    if (mu < 0 || mu > 3) throw std::out_of_range("direction must be in 0..3");
    return OneForm<T>({f(mu, 0), f(mu, 1), f(mu, 2), f(mu, 3)});
}

/// Sum over mu < nu of the component inner products.
template <class T>
double inner(const TwoForm<T>& f, const TwoForm<T>& g) {
    double s = 0.0;
    for (int p = 0; p < 6; ++p) s += inner(f.component(p), g.component(p));
    return s;
}

template <class T>
double inner(const OneForm<T>& a, const OneForm<T>& b) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) s += inner(a[mu], b[mu]);
    return s;
}

/// Plain wedge of real 1-forms: (a ^ b)_{mu nu} = a_mu b_nu - a_nu b_mu.
inline TwoForm<double> wedge11(const OneForm<double>& a, const OneForm<double>& b) {
    std::array<double, 6> c{};
    for (int p = 0; p < 6; ++p) {
        const auto [mu, nu] = kPlanes4[p];
        c[p] = a[mu] * b[nu] - a[nu] * b[mu];
    }
    return TwoForm<double>(c);
}

/// Bracket wedge of ad-valued 1-forms.
inline TwoForm<AlgebraElement> wedge11(const OneForm<AlgebraElement>& psi, const OneForm<AlgebraElement>& phi) {
    std::array<AlgebraElement, 6> c;
    for (int p = 0; p < 6; ++p) {
        const auto [mu, nu] = kPlanes4[p];
        c[p] = (commutator(psi[mu], phi[nu]) - commutator(psi[nu], phi[mu])) * 0.5;
    }
    return TwoForm<AlgebraElement>(c);
}

/// Adjoint of left wedge multiplication by psi:
///   <f, psi ^ w> = <contract_estar(psi, f), w>  for every ad-valued 1-form w,
/// with components (e*(psi) f)_nu = (1/2) sum_mu [f_{mu nu}, psi_mu].
inline OneForm<AlgebraElement> contract_estar(const OneForm<AlgebraElement>& psi,
                                              const TwoForm<AlgebraElement>& f) {
    std::array<AlgebraElement, 4> c;
    for (int nu = 0; nu < 4; ++nu) {
        AlgebraElement acc = AlgebraElement::zero(psi[0].kind());
        for (int mu = 0; mu < 4; ++mu) {
            if (mu == nu) continue;
            acc += commutator(f(mu, nu), psi[mu]);
        }
        c[nu] = acc * 0.5;
    }
    return OneForm<AlgebraElement>(c);
}

/// sum_mu i_mu f ^ i_mu g  (the quadratic form appearing in the SD/ASD closure identity).
template <class T>
TwoForm<T> contracted_square(const TwoForm<T>& f, const TwoForm<T>& g) {
    TwoForm<T> acc = TwoForm<T>::zero(f.component(0));
    for (int mu = 0; mu < 4; ++mu) acc += wedge11(interior(mu, f), interior(mu, g));
    return acc;
}

}  // namespace ymlab
