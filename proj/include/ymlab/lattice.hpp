#pragma once

// Periodic hypercubic lattices for T^3 and T^4.
//
// Sites are linearized row-major with x_1 fastest:
//   index = x_1 + L_1 (x_2 + L_2 (x_3 + ...)).
// Directions are 0-based internally; user-facing tools print them 1-based.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ymlab {

using SiteIndex = std::size_t;
using Coords = std::array<int, 4>;

class LatticeGeometry {
public:
    /// Throws std::invalid_argument unless dim is 3 or 4 and every extent is positive.
    LatticeGeometry(int dim, std::vector<int> extents, double spacing = 1.0);

    int dim() const noexcept { return dim_; }
    const std::vector<int>& extents() const noexcept { return extents_; }
    int extent(int mu) const { return extents_.at(mu); }
    double spacing() const noexcept { return spacing_; }
    std::size_t volume() const noexcept { return volume_; }
    std::size_t num_links() const noexcept { return volume_ * dim_; }
    int num_planes() const noexcept { return dim_ * (dim_ - 1) / 2; }
    /// Planes (mu, nu), mu < nu, in lexicographic order.
    const std::vector<std::array<int, 2>>& planes() const noexcept { return planes_; }
    /// Position of (mu, nu), mu < nu, in planes().
    int plane_of(int mu, int nu) const;

    Coords coords(SiteIndex x) const;
    SiteIndex index(const Coords& c) const;
    /// Neighbor of x one step in direction mu, s = +1 or -1, periodic.
    SiteIndex shift(SiteIndex x, int mu, int s) const;
    /// x, x+mu, x+mu+nu, x+nu.
    std::array<SiteIndex, 4> plaquette_corners(SiteIndex x, int mu, int nu) const;

    std::size_t link_index(SiteIndex x, int mu) const noexcept { return x * dim_ + mu; }
    /// Unchecked neighbors for inner loops.
    SiteIndex up(SiteIndex x, int mu) const noexcept { return fwd_[x * dim_ + mu]; }
    SiteIndex down(SiteIndex x, int mu) const noexcept { return bwd_[x * dim_ + mu]; }

    friend bool operator==(const LatticeGeometry& a, const LatticeGeometry& b) {
        return a.dim_ == b.dim_ && a.extents_ == b.extents_ && a.spacing_ == b.spacing_;
    }

private:
    void check_direction(int mu) const;

    int dim_;
    std::vector<int> extents_;
    double spacing_;
    std::size_t volume_;
    std::vector<std::array<int, 2>> planes_;
    std::vector<SiteIndex> fwd_;  // [x * dim + mu]
    std::vector<SiteIndex> bwd_;
};

}  // namespace ymlab
