#include "ymlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ymlab {

void require_compatible(const LatticeGeometry& ga, GroupKind ka, const LatticeGeometry& gb, GroupKind kb) {
    if (!(ga == gb)) throw std::invalid_argument("lattice geometries differ");
    if (ka != kb) throw KindMismatch();
}

// ------------------------------------------------------------- containers

LinkField::LinkField(LatticeGeometry geometry, GroupKind kind)
    : geom_(std::move(geometry)), kind_(kind), links_(geom_.num_links(), GroupElement::identity(kind)) {}

void LinkField::reunitarize() {
    for (auto& u : links_) u = ymlab::reunitarize(u);
}

double LinkField::max_unitarity_defect() const {
    double d = 0.0;
    for (const auto& u : links_) d = std::max(d, unitarity_defect(u));
    return d;
}

SiteAlgebraField::SiteAlgebraField(LatticeGeometry geometry, GroupKind kind)
    : geom_(std::move(geometry)), kind_(kind), values_(geom_.volume(), AlgebraElement::zero(kind)) {}

LinkAlgebraField::LinkAlgebraField(LatticeGeometry geometry, GroupKind kind)
    : geom_(std::move(geometry)), kind_(kind), values_(geom_.num_links(), AlgebraElement::zero(kind)) {}

double LinkAlgebraField::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, v.norm());
    return m;
}

double LinkAlgebraField::norm2() const {
    double s = 0.0;
    for (const auto& v : values_) s += v.norm2();
    return s;
}

double LinkAlgebraField::l1_norm() const {
    double s = 0.0;
    std::array<double, 8> c{};
    for (const auto& v : values_) {
        v.coords(c.data());
        for (int a = 0; a < algebra_dim(kind_); ++a) s += std::abs(c[a]);
    }
    return s;
}

double inner(const LinkAlgebraField& a, const LinkAlgebraField& b) {
    require_compatible(a.geom_, a.kind_, b.geom_, b.kind_);
    double s = 0.0;
    for (std::size_t i = 0; i < a.values_.size(); ++i) s += inner(a.values_[i], b.values_[i]);
    return s;
}

LinkAlgebraField& LinkAlgebraField::operator*=(double s) {
    for (auto& v : values_) v *= s;
    return *this;
}

LinkAlgebraField& LinkAlgebraField::operator+=(const LinkAlgebraField& o) {
    require_compatible(geom_, kind_, o.geom_, o.kind_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

SiteTwoFormField::SiteTwoFormField(LatticeGeometry geometry, GroupKind kind)
    : geom_(std::move(geometry)),
      kind_(kind),
      nplanes_(geom_.num_planes()),
      values_(geom_.volume() * nplanes_, AlgebraElement::zero(kind)) {}

AlgebraElement SiteTwoFormField::operator()(SiteIndex x, int mu, int nu) const {
    if (mu == nu) return AlgebraElement::zero(kind_);
    if (mu < nu) return plane(x, geom_.plane_of(mu, nu));
    return -plane(x, geom_.plane_of(nu, mu));
}

TwoForm<AlgebraElement> SiteTwoFormField::at(SiteIndex x) const {
    if (geom_.dim() != 4) throw std::invalid_argument("full 2-form access needs a 4-dimensional lattice");
    std::array<AlgebraElement, 6> c;
    for (int p = 0; p < 6; ++p) c[p] = plane(x, p);
    return TwoForm<AlgebraElement>(c);
}

void SiteTwoFormField::set(SiteIndex x, const TwoForm<AlgebraElement>& f) {
    if (geom_.dim() != 4) throw std::invalid_argument("full 2-form access needs a 4-dimensional lattice");
    for (int p = 0; p < 6; ++p) {
        if (f.component(p).kind() != kind_) throw KindMismatch();
        plane(x, p) = f.component(p);
    }
}

double SiteTwoFormField::norm2() const {
    double s = 0.0;
    for (const auto& v : values_) s += v.norm2();
    return s;
}

GaugeTransform::GaugeTransform(LatticeGeometry geometry, GroupKind kind)
    : geom_(std::move(geometry)), kind_(kind), values_(geom_.volume(), GroupElement::identity(kind)) {}

// ----------------------------------------------------------------- starts

LinkField cold_start(const LatticeGeometry& geometry, GroupKind kind) { return LinkField(geometry, kind); }

LinkField hot_start(const LatticeGeometry& geometry, GroupKind kind, std::uint64_t seed, double amplitude) {
    if (amplitude < 0.0) throw std::invalid_argument("amplitude must be non-negative");
    LinkField u(geometry, kind);
    Rng rng(seed);
    for (auto& link : u.links()) link = exp_map(random_algebra(kind, rng, amplitude));
    return u;
}

LinkField abelian_flux_start(const LatticeGeometry& geometry, const FluxMatrix& n) {
    if (geometry.dim() != 4) throw std::invalid_argument("abelian flux start needs a 4-dimensional lattice");
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            if (n[mu][nu] != std::round(n[mu][nu])) throw std::invalid_argument("flux quanta must be integers");
            if (n[mu][nu] != -n[nu][mu]) throw std::invalid_argument("flux matrix must be antisymmetric");
        }
    }
    LinkField u(geometry, GroupKind::U1);
    std::vector<double> phase(geometry.num_links(), 0.0);
    for (SiteIndex x = 0; x < geometry.volume(); ++x) {
        const Coords c = geometry.coords(x);
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = mu + 1; nu < 4; ++nu) {
                if (n[mu][nu] == 0.0) continue;
                const int lm = geometry.extent(mu), ln = geometry.extent(nu);
                const double phi = 2.0 * std::numbers::pi * n[mu][nu] / (static_cast<double>(lm) * ln);
                // nu-links wind along mu; the mu-links on the last mu-slice close the flux.
                phase[geometry.link_index(x, nu)] += phi * c[mu];
                if (c[mu] == lm - 1) phase[geometry.link_index(x, mu)] -= phi * lm * c[nu];
            }
        }
    }
    for (std::size_t i = 0; i < phase.size(); ++i) u.links()[i] = GroupElement::from_phase(phase[i]);
    return u;
}

// ------------------------------------------------------- gauge transforms

GaugeTransform random_gauge(const LatticeGeometry& geometry, GroupKind kind, std::uint64_t seed,
                            double amplitude) {
    GaugeTransform g(geometry, kind);
    Rng rng(seed);
    for (SiteIndex x = 0; x < geometry.volume(); ++x) g[x] = exp_map(random_algebra(kind, rng, amplitude));
    return g;
}

LinkField apply_gauge(const LinkField& u, const GaugeTransform& g) {
    require_compatible(u.geometry(), u.kind(), g.geometry(), g.kind());
    const auto& geom = u.geometry();
    LinkField r(geom, u.kind());
    for (SiteIndex x = 0; x < geom.volume(); ++x)
        for (int mu = 0; mu < geom.dim(); ++mu) r(x, mu) = g[x] * u(x, mu) * g[geom.up(x, mu)].adjoint();
    return r;
}

SiteAlgebraField apply_gauge(const SiteAlgebraField& s, const GaugeTransform& g) {
    require_compatible(s.geometry(), s.kind(), g.geometry(), g.kind());
    SiteAlgebraField r(s.geometry(), s.kind());
    for (SiteIndex x = 0; x < s.geometry().volume(); ++x) r[x] = conjugate(g[x], s[x]);
    return r;
}

// ------------------------------------------------------------ plaquettes

GroupElement plaquette(const LinkField& u, SiteIndex x, int mu, int nu) {
    const auto c = u.geometry().plaquette_corners(x, mu, nu);
    return u(c[0], mu) * u(c[1], nu) * u(c[3], mu).adjoint() * u(c[0], nu).adjoint();
}

SiteTwoFormField clover(const LinkField& u) {
    const auto& geom = u.geometry();
    const GroupKind kind = u.kind();
    SiteTwoFormField f(geom, kind);
    const auto& planes = geom.planes();
    for (SiteIndex x = 0; x < geom.volume(); ++x) {
        for (int p = 0; p < static_cast<int>(planes.size()); ++p) {
            const int mu = planes[p][0], nu = planes[p][1];
            const SiteIndex xpm = geom.up(x, mu), xmm = geom.down(x, mu);
            const SiteIndex xpn = geom.up(x, nu), xmn = geom.down(x, nu);
            const SiteIndex xmm_pn = geom.up(xmm, nu), xmm_mn = geom.down(xmm, nu);
            const SiteIndex xpm_mn = geom.down(xpm, nu);
            // four leaves, all traversed mu -> nu, each starting and ending at x
            const GroupElement l1 = u(x, mu) * u(xpm, nu) * u(xpn, mu).adjoint() * u(x, nu).adjoint();
            const GroupElement l2 =
                u(x, nu) * u(xmm_pn, mu).adjoint() * u(xmm, nu).adjoint() * u(xmm, mu);
            const GroupElement l3 =
                u(xmm, mu).adjoint() * u(xmm_mn, nu).adjoint() * u(xmm_mn, mu) * u(xmn, nu);
            const GroupElement l4 = u(xmn, nu).adjoint() * u(xmn, mu) * u(xpm_mn, nu) * u(x, mu).adjoint();
            CMatrix q = l1.matrix();
            q += l2.matrix();
            q += l3.matrix();
            q += l4.matrix();
            AlgebraElement v = project_algebra(kind, q);
            v *= 0.25;
            f.plane(x, p) = v;
        }
    }
    return f;
}

SiteAlgebraField covariant_diff(const LinkField& u, const SiteAlgebraField& s, int mu) {
    require_compatible(u.geometry(), u.kind(), s.geometry(), s.kind());
    const auto& geom = u.geometry();
    if (mu < 0 || mu >= geom.dim()) throw std::out_of_range("direction out of range");
    SiteAlgebraField r(geom, u.kind());
    for (SiteIndex x = 0; x < geom.volume(); ++x) r[x] = conjugate(u(x, mu), s[geom.up(x, mu)]) - s[x];
    return r;
}

}  // namespace ymlab
