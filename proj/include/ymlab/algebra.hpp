#pragma once

// Compact structure groups U(1), SU(2), SU(3): Lie algebra and group element
// arithmetic used on lattice sites and links.
//
// Algebra elements are anti-Hermitian (traceless for SU(n)) matrices. The
// metric is inner(X, Y) = -Re tr(XY); with it the SU(2) generators
// T_a = -(i/2) sigma_a have squared norm 1/2. Every energy reported by the
// library is measured in this metric.
//
// U(1) is carried as scalars: an algebra element is the single imaginary
// entry i*x, and a group element is its phase angle.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ymlab {

using cplx = std::complex<double>;

enum class GroupKind : std::uint8_t { U1 = 0, SU2 = 1, SU3 = 2 };

constexpr int matrix_dim(GroupKind k) noexcept {
    switch (k) {
    case GroupKind::U1: return 1;
    case GroupKind::SU2: return 2;
    case GroupKind::SU3: return 3;
    }
    return 0;
}

/// Real dimension of the Lie algebra (1, 3, 8).
constexpr int algebra_dim(GroupKind k) noexcept {
    switch (k) {
    case GroupKind::U1: return 1;
    case GroupKind::SU2: return 3;
    case GroupKind::SU3: return 8;
    }
    return 0;
}

std::string_view to_string(GroupKind k);
GroupKind parse_group_kind(std::string_view name);

class KindMismatch : public std::invalid_argument {
public:
    KindMismatch() : std::invalid_argument("mismatched group kinds") {}
};

/// Dense n x n complex matrix, n <= 3, row-major with stride n.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int n) : n_(n) {}

    static CMatrix zero(int n) { return CMatrix(n); }
    static CMatrix identity(int n);

    int dim() const noexcept { return n_; }
    cplx& operator()(int i, int j) noexcept { return a_[i * n_ + j]; }
    const cplx& operator()(int i, int j) const noexcept { return a_[i * n_ + j]; }

    CMatrix adjoint() const;
    cplx trace() const;
    cplx determinant() const;
    /// Inverse via the adjugate; throws on a singular matrix.
    CMatrix inverse() const;
    /// Frobenius norm squared.
    double norm2() const;
    /// Largest absolute entry.
    double max_abs() const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(double s);
    CMatrix& operator*=(cplx s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, double s) { return a *= s; }
    friend CMatrix operator*(double s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend bool operator==(const CMatrix& a, const CMatrix& b) = default;

private:
    int n_ = 0;
    std::array<cplx, 9> a_{};
};

class AlgebraElement {
public:
    AlgebraElement() = default;
    static AlgebraElement zero(GroupKind k) { return AlgebraElement(k, CMatrix(matrix_dim(k))); }
    /// Wraps a matrix that is already in the algebra; no projection is done.
    static AlgebraElement from_matrix(GroupKind k, const CMatrix& m);
    /// sum_a coords[a] * B_a over the orthonormal basis returned by basis().
    static AlgebraElement from_coords(GroupKind k, const double* coords);
    /// a-th element of an orthonormal basis: inner(B_a, B_b) = delta_ab.
    static AlgebraElement basis(GroupKind k, int a);

    GroupKind kind() const noexcept { return kind_; }
    const CMatrix& matrix() const noexcept { return m_; }
    /// Coordinates in the orthonormal basis.
    void coords(double* out) const;

    double norm2() const;
    double norm() const;

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(double s) { m_ *= s; return *this; }
    AlgebraElement operator-() const { AlgebraElement r = *this; r.m_ *= -1.0; return r; }

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }
    friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) = default;

private:
    AlgebraElement(GroupKind k, const CMatrix& m) : kind_(k), m_(m) {}
    GroupKind kind_ = GroupKind::U1;
    CMatrix m_{1};
};

class GroupElement {
public:
    GroupElement() = default;
    static GroupElement identity(GroupKind k);
    static GroupElement from_phase(double angle);
    /// Wraps a matrix assumed to lie in SU(n); U(1) input is converted to its phase.
    static GroupElement from_matrix(GroupKind k, const CMatrix& m);

    GroupKind kind() const noexcept { return kind_; }
    /// U(1) phase angle; zero for the matrix groups.
    double phase() const noexcept { return phase_; }
    /// Matrix form (the 1x1 exp(i*phase) for U(1)).
    CMatrix matrix() const;
    GroupElement adjoint() const;

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
    friend bool operator==(const GroupElement& a, const GroupElement& b) = default;

private:
    GroupKind kind_ = GroupKind::U1;
    double phase_ = 0.0;
    CMatrix m_{};
};

AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y);
double inner(const AlgebraElement& x, const AlgebraElement& y);
GroupElement exp_map(const AlgebraElement& x);
/// Anti-Hermitian (traceless) part: (M - M^dagger)/2 - tr/n for SU(n).
AlgebraElement project_algebra(GroupKind k, const CMatrix& m);
/// Nearest unitary (polar factor) with the determinant phase removed for SU(n).
GroupElement reunitarize(GroupKind k, const CMatrix& m);
inline GroupElement reunitarize(const GroupElement& u) {
    return reunitarize(u.kind(), u.matrix());
}
/// Conjugation g X g^dagger.
AlgebraElement conjugate(const GroupElement& g, const AlgebraElement& x);

/// Distance from unitarity, max |U^dagger U - I| entry (zero for U(1)).
double unitarity_defect(const GroupElement& u);

/// Deterministic 64-bit stream used for every random draw in the library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform in [0, 1), 53-bit resolution, independent of the standard
    /// library's distribution implementations.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Coordinates i.i.d. uniform in [-amplitude, amplitude] in the orthonormal basis.
AlgebraElement random_algebra(GroupKind k, Rng& rng, double amplitude);
AlgebraElement random_algebra(GroupKind k, std::uint64_t seed, double amplitude);

}  // namespace ymlab
