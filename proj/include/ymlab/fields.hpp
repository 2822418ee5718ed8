#pragma once

// Gauge field configurations on a periodic lattice: link variables, starts,
// gauge transformations, plaquettes, the clover field strength and forward
// covariant differences.

#include <array>
#include <cstdint>
#include <vector>

#include "ymlab/algebra.hpp"
#include "ymlab/forms4d.hpp"
#include "ymlab/lattice.hpp"

namespace ymlab {

/// One group element per (site, direction), stored at geometry.link_index(x, mu).
class LinkField {
public:
    LinkField(LatticeGeometry geometry, GroupKind kind);

    const LatticeGeometry& geometry() const noexcept { return geom_; }
    GroupKind kind() const noexcept { return kind_; }

    const GroupElement& operator()(SiteIndex x, int mu) const { return links_[geom_.link_index(x, mu)]; }
    GroupElement& operator()(SiteIndex x, int mu) { return links_[geom_.link_index(x, mu)]; }
    const std::vector<GroupElement>& links() const noexcept { return links_; }
    std::vector<GroupElement>& links() noexcept { return links_; }

    /// Polar-project every link back onto the group.
    void reunitarize();
    double max_unitarity_defect() const;

    friend bool operator==(const LinkField& a, const LinkField& b) = default;

private:
    LatticeGeometry geom_;
    GroupKind kind_;
    std::vector<GroupElement> links_;
};

/// Algebra element per site.
class SiteAlgebraField {
public:
    SiteAlgebraField(LatticeGeometry geometry, GroupKind kind);

    const LatticeGeometry& geometry() const noexcept { return geom_; }
    GroupKind kind() const noexcept { return kind_; }
    const AlgebraElement& operator[](SiteIndex x) const { return values_[x]; }
    AlgebraElement& operator[](SiteIndex x) { return values_[x]; }

private:
    LatticeGeometry geom_;
    GroupKind kind_;
    std::vector<AlgebraElement> values_;
};

/// Algebra element per (site, direction): forces, and ad-valued 1-forms
/// living on sites. A 1-form is promoted to links by using the site value
/// at each link's base point, so the same container serves both.
class LinkAlgebraField {
public:
    LinkAlgebraField(LatticeGeometry geometry, GroupKind kind);

    const LatticeGeometry& geometry() const noexcept { return geom_; }
    GroupKind kind() const noexcept { return kind_; }
    const AlgebraElement& operator()(SiteIndex x, int mu) const { return values_[geom_.link_index(x, mu)]; }
    AlgebraElement& operator()(SiteIndex x, int mu) { return values_[geom_.link_index(x, mu)]; }
    const std::vector<AlgebraElement>& values() const noexcept { return values_; }

    /// sup over links of the element norm.
    double sup_norm() const;
    /// sum over links of squared norms.
    double norm2() const;
    /// sum over links and algebra coordinates of |coordinate|.
    double l1_norm() const;
    /// sum over links of inner products.
    friend double inner(const LinkAlgebraField& a, const LinkAlgebraField& b);

    LinkAlgebraField& operator*=(double s);
    LinkAlgebraField& operator+=(const LinkAlgebraField& o);

private:
    LatticeGeometry geom_;
    GroupKind kind_;
    std::vector<AlgebraElement> values_;
};

using OneFormField = LinkAlgebraField;

/// Clover field strength: one algebra element per site and plane mu < nu,
/// planes in LatticeGeometry::planes() order (six for d = 4, three for d = 3).
class SiteTwoFormField {
public:
    SiteTwoFormField(LatticeGeometry geometry, GroupKind kind);

    const LatticeGeometry& geometry() const noexcept { return geom_; }
    GroupKind kind() const noexcept { return kind_; }

    /// Antisymmetric access; mu == nu gives zero.
    AlgebraElement operator()(SiteIndex x, int mu, int nu) const;
    const AlgebraElement& plane(SiteIndex x, int p) const { return values_[x * nplanes_ + p]; }
    AlgebraElement& plane(SiteIndex x, int p) { return values_[x * nplanes_ + p]; }

    /// Full 2-form at a site (d = 4 only).
    TwoForm<AlgebraElement> at(SiteIndex x) const;
    void set(SiteIndex x, const TwoForm<AlgebraElement>& f);

    /// sum over sites and planes of squared norms.
    double norm2() const;

private:
    LatticeGeometry geom_;
    GroupKind kind_;
    int nplanes_;
    std::vector<AlgebraElement> values_;
};

class GaugeTransform {
public:
    GaugeTransform(LatticeGeometry geometry, GroupKind kind);

    const LatticeGeometry& geometry() const noexcept { return geom_; }
    GroupKind kind() const noexcept { return kind_; }
    const GroupElement& operator[](SiteIndex x) const { return values_[x]; }
    GroupElement& operator[](SiteIndex x) { return values_[x]; }

private:
    LatticeGeometry geom_;
    GroupKind kind_;
    std::vector<GroupElement> values_;
};

/// Integer flux quanta n_{mu nu}; must be antisymmetric.
using FluxMatrix = std::array<std::array<double, 4>, 4>;

LinkField cold_start(const LatticeGeometry& geometry, GroupKind kind);
/// U_mu(x) = exp(random_algebra(amplitude)), links drawn in storage order from one stream.
LinkField hot_start(const LatticeGeometry& geometry, GroupKind kind, std::uint64_t seed, double amplitude);
/// U(1) links on T^4 whose (mu, nu)-plaquettes all carry phase 2 pi n_{mu nu} / (L_mu L_nu).
LinkField abelian_flux_start(const LatticeGeometry& geometry, const FluxMatrix& n);

GaugeTransform random_gauge(const LatticeGeometry& geometry, GroupKind kind, std::uint64_t seed,
                            double amplitude);
/// U_mu(x) -> g(x) U_mu(x) g(x + mu)^dagger.
LinkField apply_gauge(const LinkField& u, const GaugeTransform& g);
SiteAlgebraField apply_gauge(const SiteAlgebraField& s, const GaugeTransform& g);

/// U_mu(x) U_nu(x+mu) U_mu(x+nu)^dagger U_nu(x)^dagger.
GroupElement plaquette(const LinkField& u, SiteIndex x, int mu, int nu);

/// F_{mu nu}(x) = project_algebra(Q_{mu nu}(x)) / 4, Q the sum of the four
/// same-orientation plaquette loops based at x.
SiteTwoFormField clover(const LinkField& u);

/// (nabla_mu S)(x) = U_mu(x) S(x+mu) U_mu(x)^dagger - S(x).
SiteAlgebraField covariant_diff(const LinkField& u, const SiteAlgebraField& s, int mu);

/// Verifies geometry and kind agree; throws std::invalid_argument otherwise.
void require_compatible(const LatticeGeometry& ga, GroupKind ka, const LatticeGeometry& gb, GroupKind kb);

}  // namespace ymlab
