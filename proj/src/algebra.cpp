#include "ymlab/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace ymlab {

namespace {

// Real-arithmetic complex multiply; avoids the libgcc NaN-recovery path of
// std::complex operator* in the inner loops.
inline cplx cmul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Gell-Mann matrices; the first three are the Pauli matrices embedded in SU(2).
CMatrix gell_mann(int n, int a) {
    CMatrix m(n);
    const cplx I{0.0, 1.0};
    if (n == 2) {
        switch (a) {
        case 0: m(0, 1) = 1; m(1, 0) = 1; break;
        case 1: m(0, 1) = -I; m(1, 0) = I; break;
        case 2: m(0, 0) = 1; m(1, 1) = -1; break;
        default: break;
        }
        return m;
    }
    switch (a) {
    case 0: m(0, 1) = 1; m(1, 0) = 1; break;
    case 1: m(0, 1) = -I; m(1, 0) = I; break;
    case 2: m(0, 0) = 1; m(1, 1) = -1; break;
    case 3: m(0, 2) = 1; m(2, 0) = 1; break;
    case 4: m(0, 2) = -I; m(2, 0) = I; break;
    case 5: m(1, 2) = 1; m(2, 1) = 1; break;
    case 6: m(1, 2) = -I; m(2, 1) = I; break;
    case 7: {
        const double s = 1.0 / std::sqrt(3.0);
        m(0, 0) = s; m(1, 1) = s; m(2, 2) = -2.0 * s;
        break;
    }
    default: break;
    }
    return m;
}

CMatrix exp_series(const CMatrix& x) {
    const int n = x.dim();
    double nrm = std::sqrt(x.norm2());
    int squarings = 0;
    while (nrm > 0.25) {
        nrm *= 0.5;
        ++squarings;
    }
    const CMatrix y = x * std::ldexp(1.0, -squarings);
    CMatrix result = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= 18; ++k) {
        term = term * y;
        term *= 1.0 / k;
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

CMatrix exp_su2(const CMatrix& x) {
    const double theta2 = 0.5 * x.norm2();
    const double theta = std::sqrt(theta2);
    double c;
    double sinc;
    if (theta < 1e-4) {
        c = 1.0 - theta2 / 2.0 + theta2 * theta2 / 24.0;
        sinc = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
    } else {
        c = std::cos(theta);
        sinc = std::sin(theta) / theta;
    }
    CMatrix r = x * sinc;
    r(0, 0) += c;
    r(1, 1) += c;
    return r;
}

}  // namespace

std::string_view to_string(GroupKind k) {
    switch (k) {
    case GroupKind::U1: return "U1";
    case GroupKind::SU2: return "SU2";
    case GroupKind::SU3: return "SU3";
    }
    return "?";
}

GroupKind parse_group_kind(std::string_view name) {
    if (name == "U1") return GroupKind::U1;
    if (name == "SU2") return GroupKind::SU2;
    if (name == "SU3") return GroupKind::SU3;
    throw std::invalid_argument("unknown group '" + std::string(name) + "' (expected U1, SU2 or SU3)");
}

// ---------------------------------------------------------------- CMatrix

CMatrix CMatrix::identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

cplx CMatrix::determinant() const {
    const auto& m = *this;
    switch (n_) {
    case 1: return m(0, 0);
    case 2: return cmul(m(0, 0), m(1, 1)) - cmul(m(0, 1), m(1, 0));
    case 3:
        return cmul(m(0, 0), cmul(m(1, 1), m(2, 2)) - cmul(m(1, 2), m(2, 1)))
             - cmul(m(0, 1), cmul(m(1, 0), m(2, 2)) - cmul(m(1, 2), m(2, 0)))
             + cmul(m(0, 2), cmul(m(1, 0), m(2, 1)) - cmul(m(1, 1), m(2, 0)));
    default: return 0.0;
    }
}

CMatrix CMatrix::inverse() const {
    const cplx det = determinant();
    if (std::abs(det) < 1e-300) throw std::domain_error("singular matrix");
    const cplx inv = 1.0 / det;
    const auto& m = *this;
    CMatrix r(n_);
    switch (n_) {
    case 1: r(0, 0) = inv; break;
    case 2:
        r(0, 0) = m(1, 1) * inv;
        r(0, 1) = -m(0, 1) * inv;
        r(1, 0) = -m(1, 0) * inv;
        r(1, 1) = m(0, 0) * inv;
        break;
    case 3:
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                // cofactor of (j, i)
                const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                r(i, j) = (cmul(m(r0, c0), m(r1, c1)) - cmul(m(r0, c1), m(r1, c0))) * inv;
            }
        }
        break;
    default: break;
    }
    return r;
}

double CMatrix::norm2() const {
    double s = 0.0;
    for (int i = 0; i < n_ * n_; ++i) s += std::norm(a_[i]);
    return s;
}

double CMatrix::max_abs() const {
    double s = 0.0;
    for (int i = 0; i < n_ * n_; ++i) s = std::max(s, std::abs(a_[i]));
    return s;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    for (int i = 0; i < n_ * n_; ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    for (int i = 0; i < n_ * n_; ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(double s) {
    for (int i = 0; i < n_ * n_; ++i) a_[i] *= s;
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (int i = 0; i < n_ * n_; ++i) a_[i] = cmul(a_[i], s);
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    const int n = a.n_;
    CMatrix r(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double re = 0.0, im = 0.0;
            for (int k = 0; k < n; ++k) {
                const cplx x = a.a_[i * n + k];
                const cplx y = b.a_[k * n + j];
                re += x.real() * y.real() - x.imag() * y.imag();
                im += x.real() * y.imag() + x.imag() * y.real();
            }
            r.a_[i * n + j] = {re, im};
        }
    }
    return r;
}

// --------------------------------------------------------- AlgebraElement

AlgebraElement AlgebraElement::from_matrix(GroupKind k, const CMatrix& m) {
    if (m.dim() != matrix_dim(k)) throw std::invalid_argument("matrix dimension does not match group kind");
    return AlgebraElement(k, m);
}

AlgebraElement AlgebraElement::basis(GroupKind k, int a) {
    const int n = matrix_dim(k);
    if (a < 0 || a >= algebra_dim(k)) throw std::out_of_range("algebra basis index");
    if (k == GroupKind::U1) {
        CMatrix m(1);
        m(0, 0) = cplx(0.0, 1.0);
        return AlgebraElement(k, m);
    }
    return AlgebraElement(k, gell_mann(n, a) * cplx(0.0, -kInvSqrt2));
}

AlgebraElement AlgebraElement::from_coords(GroupKind k, const double* coords) {
    AlgebraElement r = zero(k);
    for (int a = 0; a < algebra_dim(k); ++a) r += basis(k, a) * coords[a];
    return r;
}

void AlgebraElement::coords(double* out) const {
    for (int a = 0; a < algebra_dim(kind_); ++a) out[a] = inner(basis(kind_, a), *this);
}

double AlgebraElement::norm2() const { return m_.norm2(); }
double AlgebraElement::norm() const { return std::sqrt(m_.norm2()); }

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    if (o.kind_ != kind_) throw KindMismatch();
    m_ += o.m_;
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    if (o.kind_ != kind_) throw KindMismatch();
    m_ -= o.m_;
    return *this;
}

// ----------------------------------------------------------- GroupElement

GroupElement GroupElement::identity(GroupKind k) {
    GroupElement g;
    g.kind_ = k;
    if (k != GroupKind::U1) g.m_ = CMatrix::identity(matrix_dim(k));
    return g;
}

GroupElement GroupElement::from_phase(double angle) {
    GroupElement g;
    g.kind_ = GroupKind::U1;
    g.phase_ = angle;
    return g;
}

GroupElement GroupElement::from_matrix(GroupKind k, const CMatrix& m) {
    if (m.dim() != matrix_dim(k)) throw std::invalid_argument("matrix dimension does not match group kind");
    if (k == GroupKind::U1) return from_phase(std::arg(m(0, 0)));
    GroupElement g;
    g.kind_ = k;
    g.m_ = m;
    return g;
}

CMatrix GroupElement::matrix() const {
    if (kind_ == GroupKind::U1) {
        CMatrix m(1);
        m(0, 0) = cplx(std::cos(phase_), std::sin(phase_));
        return m;
    }
    return m_;
}

GroupElement GroupElement::adjoint() const {
    GroupElement g = *this;
    if (kind_ == GroupKind::U1)
        g.phase_ = -phase_;
    else
        g.m_ = m_.adjoint();
    return g;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.kind_ != b.kind_) throw KindMismatch();
    GroupElement g;
    g.kind_ = a.kind_;
    if (a.kind_ == GroupKind::U1)
        g.phase_ = a.phase_ + b.phase_;
    else
        g.m_ = a.m_ * b.m_;
    return g;
}

// ------------------------------------------------------------- operations

AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.kind() != y.kind()) throw KindMismatch();
    if (x.kind() == GroupKind::U1) return AlgebraElement::zero(GroupKind::U1);
    return AlgebraElement::from_matrix(x.kind(), x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

double inner(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.kind() != y.kind()) throw KindMismatch();
    // -Re tr(XY) = -Re sum_ij X_ij Y_ji
    const CMatrix& a = x.matrix();
    const CMatrix& b = y.matrix();
    const int n = a.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += a(i, j).real() * b(j, i).real() - a(i, j).imag() * b(j, i).imag();
    return -s;
}

GroupElement exp_map(const AlgebraElement& x) {
    switch (x.kind()) {
    case GroupKind::U1: return GroupElement::from_phase(x.matrix()(0, 0).imag());
    case GroupKind::SU2: return GroupElement::from_matrix(GroupKind::SU2, exp_su2(x.matrix()));
    case GroupKind::SU3: return GroupElement::from_matrix(GroupKind::SU3, exp_series(x.matrix()));
    }
    return {};
}

AlgebraElement project_algebra(GroupKind k, const CMatrix& m) {
    const int n = matrix_dim(k);
    if (m.dim() != n) throw std::invalid_argument("matrix dimension does not match group kind");
    CMatrix r = (m - m.adjoint()) * 0.5;
    if (k != GroupKind::U1) {
        const cplx t = r.trace() / static_cast<double>(n);
        for (int i = 0; i < n; ++i) r(i, i) -= t;
    }
    return AlgebraElement::from_matrix(k, r);
}

GroupElement reunitarize(GroupKind k, const CMatrix& m) {
    const int n = matrix_dim(k);
    if (m.dim() != n) throw std::invalid_argument("matrix dimension does not match group kind");
    if (k == GroupKind::U1) {
        if (std::abs(m(0, 0)) < 1e-300) throw std::domain_error("singular matrix");
        return GroupElement::from_phase(std::arg(m(0, 0)));
    }
    // Newton iteration for the unitary polar factor.
    CMatrix x = m;
    for (int it = 0; it < 60; ++it) {
        CMatrix next = (x + x.inverse().adjoint()) * 0.5;
        const double change = (next - x).max_abs();
        x = next;
        if (change < 1e-15) break;
    }
    const double phi = std::arg(x.determinant());
    x *= std::polar(1.0, -phi / n);
    return GroupElement::from_matrix(k, x);
}

AlgebraElement conjugate(const GroupElement& g, const AlgebraElement& x) {
    if (g.kind() != x.kind()) throw KindMismatch();
    if (g.kind() == GroupKind::U1) return x;
    const CMatrix gm = g.matrix();
    return AlgebraElement::from_matrix(x.kind(), gm * x.matrix() * gm.adjoint());
}

double unitarity_defect(const GroupElement& u) {
    if (u.kind() == GroupKind::U1) return 0.0;
    const CMatrix m = u.matrix();
    return (m.adjoint() * m - CMatrix::identity(m.dim())).max_abs();
}

AlgebraElement random_algebra(GroupKind k, Rng& rng, double amplitude) {
    if (amplitude < 0.0) throw std::invalid_argument("amplitude must be non-negative");
    std::array<double, 8> c{};
    for (int a = 0; a < algebra_dim(k); ++a) c[a] = rng.uniform(-amplitude, amplitude);
    return AlgebraElement::from_coords(k, c.data());
}

AlgebraElement random_algebra(GroupKind k, std::uint64_t seed, double amplitude) {
    Rng rng(seed);
    return random_algebra(k, rng, amplitude);
}

}  // namespace ymlab
