#include "ymlab/lattice.hpp"

#include <stdexcept>
#include <string>

namespace ymlab {

LatticeGeometry::LatticeGeometry(int dim, std::vector<int> extents, double spacing)
    : dim_(dim), extents_(std::move(extents)), spacing_(spacing), volume_(1) {
    if (dim_ != 3 && dim_ != 4) throw std::invalid_argument("lattice dimension must be 3 or 4");
    if (static_cast<int>(extents_.size()) != dim_)
        throw std::invalid_argument("expected " + std::to_string(dim_) + " extents");
    for (int l : extents_) {
        if (l <= 0) throw std::invalid_argument("lattice extents must be positive");
        volume_ *= static_cast<std::size_t>(l);
    }
    if (!(spacing_ > 0.0)) throw std::invalid_argument("lattice spacing must be positive");

    for (int mu = 0; mu < dim_; ++mu)
        for (int nu = mu + 1; nu < dim_; ++nu) planes_.push_back({mu, nu});

    fwd_.resize(volume_ * dim_);
    bwd_.resize(volume_ * dim_);
    for (SiteIndex x = 0; x < volume_; ++x) {
        const Coords c = coords(x);
        for (int mu = 0; mu < dim_; ++mu) {
            Coords up = c, down = c;
            up[mu] = (c[mu] + 1) % extents_[mu];
            down[mu] = (c[mu] + extents_[mu] - 1) % extents_[mu];
            fwd_[x * dim_ + mu] = index(up);
            bwd_[x * dim_ + mu] = index(down);
        }
    }
}

int LatticeGeometry::plane_of(int mu, int nu) const {
    check_direction(mu);
    check_direction(nu);
    if (mu >= nu) throw std::invalid_argument("plane_of requires mu < nu");
    // lexicographic position of (mu, nu)
    int p = 0;
    for (int a = 0; a < mu; ++a) p += dim_ - 1 - a;
    return p + (nu - mu - 1);
}

Coords LatticeGeometry::coords(SiteIndex x) const {
    Coords c{};
    for (int mu = 0; mu < dim_; ++mu) {
        c[mu] = static_cast<int>(x % extents_[mu]);
        x /= extents_[mu];
    }
    return c;
}

SiteIndex LatticeGeometry::index(const Coords& c) const {
    SiteIndex x = 0;
    for (int mu = dim_ - 1; mu >= 0; --mu) {
        if (c[mu] < 0 || c[mu] >= extents_[mu]) throw std::out_of_range("coordinate out of range");
        x = x * extents_[mu] + static_cast<SiteIndex>(c[mu]);
    }
    return x;
}

void LatticeGeometry::check_direction(int mu) const {
    if (mu < 0 || mu >= dim_) throw std::out_of_range("direction " + std::to_string(mu) + " out of range");
}

SiteIndex LatticeGeometry::shift(SiteIndex x, int mu, int s) const {
    check_direction(mu);
    if (s == 1) return fwd_[x * dim_ + mu];
    if (s == -1) return bwd_[x * dim_ + mu];
    throw std::invalid_argument("shift step must be +1 or -1");
}

std::array<SiteIndex, 4> LatticeGeometry::plaquette_corners(SiteIndex x, int mu, int nu) const {
    if (mu == nu) throw std::invalid_argument("plaquette needs two distinct directions");
    const SiteIndex xm = shift(x, mu, 1);
    return {x, xm, shift(xm, nu, 1), shift(x, nu, 1)};
}

}  // namespace ymlab
