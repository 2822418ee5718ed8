#include <doctest.h>

#include <numbers>

#include "support.hpp"
#include "ymlab/action.hpp"

using namespace ymtest;

namespace {

double energy_after_rotation(LinkField u, SiteIndex x, int mu, const AlgebraElement& v, double t) {
    u(x, mu) = exp_map(t * v) * u(x, mu);
    return wilson_energy(u);
}

FluxMatrix flux_12_34() {
    FluxMatrix n{};
    n[0][1] = 1;
    n[1][0] = -1;
    n[2][3] = 1;
    n[3][2] = -1;
    return n;
}

}  // namespace

TEST_CASE("energy of special fields") {
    const LatticeGeometry g(4, {4, 4, 4, 4});
    CHECK(wilson_energy(cold_start(g, GroupKind::SU3)) == 0.0);
    FluxMatrix n{};
    n[0][1] = 1;
    n[1][0] = -1;
    const double expect = 2.0 * 256.0 * (1.0 - std::cos(std::numbers::pi / 8.0));
    CHECK(wilson_energy(abelian_flux_start(g, n)) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("energy is quadratic near the identity") {
    const LatticeGeometry g(4, {2, 2, 2, 2});
    Rng rng(1);
    for (GroupKind k : kAllKinds) {
        const LinkField cold = cold_start(g, k);
        const AlgebraElement v = random_algebra(k, rng, 1.0);
        // E(t) = c t^2 + O(t^4): the ratio E(t)/t^2 settles to a non-negative constant
        const double c1 = energy_after_rotation(cold, 3, 1, v, 1e-2) / 1e-4;
        const double c2 = energy_after_rotation(cold, 3, 1, v, 5e-3) / 2.5e-5;
        CHECK(c1 > 0.0);
        CHECK(std::abs(c1 - c2) / c2 < 1e-3);
        // one link sits in 2(d-1) = 6 plaquettes, each contributing |X|^2
        CHECK(c2 == doctest::Approx(6.0 * v.norm2()).epsilon(1e-3));
    }
}

TEST_CASE("force is the exact gradient") {
    Rng rng(2);
    for (GroupKind k : kAllKinds) {
        for (int d : {3, 4}) {
            const LatticeGeometry g(d, std::vector<int>(d, 2));
            const LinkField u = hot_start(g, k, 3 + d, 1.0);
            const LinkAlgebraField f = force(u);
            for (int t = 0; t < 20; ++t) {
                const SiteIndex x = rng.next() % g.volume();
                const int mu = static_cast<int>(rng.next() % d);
                const AlgebraElement v = random_algebra(k, rng, 1.0);
                const double h = 1e-4;
                const double fd =
                    (energy_after_rotation(u, x, mu, v, h) - energy_after_rotation(u, x, mu, v, -h)) / (2 * h);
                const double exact = inner(v, f(x, mu));
                CHECK(std::abs(fd - exact) < 1e-6 * (1.0 + std::abs(exact)));
            }
        }
    }
    CHECK(force(cold_start(LatticeGeometry(4, {2, 2, 2, 2}), GroupKind::SU2)).sup_norm() == 0.0);
}

TEST_CASE("energy split") {
    const LatticeGeometry g(4, {2, 2, 2, 2});
    const EnergySplit cold = energy_split(cold_start(g, GroupKind::SU2));
    CHECK(cold.total == 0.0);
    CHECK(cold.e_plus == 0.0);
    CHECK(cold.e_minus == 0.0);
    CHECK(cold.q == 0.0);

    // hand-built self-dual field
    SiteTwoFormField sd(g, GroupKind::SU2);
    Rng rng(3);
    for (SiteIndex x = 0; x < g.volume(); ++x) sd.set(x, project_pm(random_form(GroupKind::SU2, rng), Duality::SelfDual));
    const EnergySplit s = energy_split(sd);
    CHECK(s.e_minus < 1e-28);
    CHECK(s.e_plus == doctest::Approx(s.total));
    CHECK(s.e_plus - s.e_minus == doctest::Approx(8.0 * std::numbers::pi * std::numbers::pi * s.q));

    for (GroupKind k : kAllKinds) {
        const EnergySplit r = energy_split(hot_start(g, k, 4, 0.7));
        CHECK(r.e_plus + r.e_minus == doctest::Approx(r.total).epsilon(1e-12));
        CHECK(r.e_plus - r.e_minus == doctest::Approx(8.0 * std::numbers::pi * std::numbers::pi * r.q).epsilon(1e-10));
    }
    CHECK_THROWS(topological_charge(cold_start(LatticeGeometry(3, {2, 2, 2}), GroupKind::SU2)));
}

TEST_CASE("topological charge of the abelian flux field") {
    const LatticeGeometry g(4, {6, 6, 6, 6});
    const LinkField u = abelian_flux_start(g, flux_12_34());
    const double q = topological_charge(u);
    CHECK(std::abs(q - 1.0) < 0.02);
    CHECK(!topologically_ambiguous(q));
    CHECK(force(u).sup_norm() < 1e-10);
    const double phi = 2.0 * std::numbers::pi / 36.0;
    const double closed = 2.0 * 2.0 * g.volume() * (1.0 - std::cos(phi));
    CHECK(std::abs(wilson_energy(u) - closed) / closed < 1e-10);
    CHECK(topological_charge(apply_gauge(u, random_gauge(g, GroupKind::U1, 5, 3.0))) ==
          doctest::Approx(q).epsilon(1e-10));
    CHECK(topologically_ambiguous(0.5));
}

TEST_CASE("charge is gauge invariant for SU(2)") {
    const LatticeGeometry g(4, {3, 2, 3, 2});
    const LinkField u = hot_start(g, GroupKind::SU2, 6, 0.9);
    const double q = topological_charge(u);
    const double qg = topological_charge(apply_gauge(u, random_gauge(g, GroupKind::SU2, 7, 3.0)));
    CHECK(std::abs(q - qg) < 1e-10);
}
