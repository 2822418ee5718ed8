#include <doctest.h>

#include "support.hpp"
#include "ymlab/flow.hpp"

using namespace ymtest;

namespace {

const LatticeGeometry kG(4, {2, 2, 2, 2});

FlowConfig quick_config() {
    FlowConfig cfg;
    cfg.measure_every = 10;
    cfg.max_iters = 20000;
    return cfg;
}

/// psi_mu(x) = omega(x) - U_mu(x) omega(x + mu) U_mu(x)^dagger, the infinitesimal gauge direction.
LinkAlgebraField gauge_direction(const LinkField& u, std::uint64_t seed) {
    const auto& g = u.geometry();
    SiteAlgebraField omega(g, u.kind());
    Rng rng(seed);
    for (SiteIndex x = 0; x < g.volume(); ++x) omega[x] = random_algebra(u.kind(), rng, 1.0);
    LinkAlgebraField psi(g, u.kind());
    for (int mu = 0; mu < g.dim(); ++mu) {
        const SiteAlgebraField d = covariant_diff(u, omega, mu);
        for (SiteIndex x = 0; x < g.volume(); ++x) psi(x, mu) = -d[x];
    }
    return psi;
}

}  // namespace

TEST_CASE("minimize on already critical fields") {
    for (GroupKind k : kAllKinds) {
        const auto [u, rep] = minimize(cold_start(kG, k), quick_config());
        CHECK(rep.converged);
        CHECK(rep.iters == 0);
        CHECK(rep.energy == 0.0);
        CHECK(rep.history.size() == 1);
    }
    const LatticeGeometry g(4, {4, 4, 4, 4});
    FluxMatrix n{};
    n[0][2] = 1;
    n[2][0] = -1;
    const LinkField start = abelian_flux_start(g, n);
    const auto [u, rep] = minimize(start, quick_config());
    CHECK(rep.converged);
    CHECK(rep.iters == 0);
    CHECK(rep.energy == wilson_energy(start));
}

TEST_CASE("minimize a small hot start") {
    for (GroupKind k : kAllKinds) {
        long calls = 0;
        const auto [u, rep] = minimize(hot_start(kG, k, 7, 0.5), quick_config(), [&](long, const LinkField&) { ++calls; });
        CHECK(rep.converged);
        CHECK(!rep.stalled);
        CHECK(rep.force_inf < 1e-8);
        CHECK(force(u).sup_norm() < 1e-8);
        CHECK(calls == static_cast<long>(rep.history.size()));
        for (std::size_t i = 1; i < rep.history.size(); ++i) {
            CHECK(rep.history[i].energy <= rep.history[i - 1].energy);
            CHECK(rep.history[i].iter > rep.history[i - 1].iter);
        }
        CHECK(rep.history.back().iter == rep.iters);
        CHECK(rep.split.has_value());
        CHECK(rep.history.front().q.has_value());
    }
}

TEST_CASE("three-dimensional flow has no charge columns") {
    const LatticeGeometry g(3, {3, 3, 3});
    const auto [u, rep] = minimize(hot_start(g, GroupKind::SU2, 2, 0.5), quick_config());
    CHECK(rep.converged);
    CHECK(!rep.split.has_value());
    CHECK(!rep.history.front().q.has_value());
    CHECK(rep.energy < 1e-10);
}

TEST_CASE("iteration cap") {
    FlowConfig cfg = quick_config();
    cfg.max_iters = 3;
    const auto [u, rep] = minimize(hot_start(kG, GroupKind::SU2, 8, 1.0), cfg);
    CHECK(!rep.converged);
    CHECK(rep.iters == 3);
}

TEST_CASE("config validation") {
    FlowConfig cfg;
    cfg.step_shrink = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = FlowConfig{};
    cfg.tol_force = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = FlowConfig{};
    cfg.measure_every = 0;
    CHECK_THROWS_AS(minimize(cold_start(kG, GroupKind::U1), cfg), std::invalid_argument);
}

TEST_CASE("line probes") {
    const LinkField u = hot_start(kG, GroupKind::SU2, 9, 0.6);
    const LinkAlgebraField zero(kG, GroupKind::SU2);
    const auto e = line_probe(u, zero, {-1.0, 0.0, 0.5, 2.0});
    for (double v : e) CHECK(v == e[1]);
    CHECK(e[1] == wilson_energy(u));

    // gauge directions at the cold field: E(t) = O(t^4), even in t at leading order
    // (the odd part is O(t^5) for non-abelian groups)
    for (GroupKind k : kAllKinds) {
        const LinkField cold = cold_start(kG, k);
        const LinkAlgebraField psi = gauge_direction(cold, 10);
        for (double t : {1e-3, 1e-2, 0.1}) {
            const auto p = line_probe(cold, psi, {-t, t});
            CHECK(std::abs(p[0] - p[1]) <= 10.0 * t * std::max(p[0], p[1]) + 1e-15);
            CHECK(p[0] <= 1e3 * t * t * t * t + 1e-13);
        }
        if (k == GroupKind::U1) CHECK(line_probe(cold, psi, {0.3})[0] < 1e-24);
    }
}

TEST_CASE("curvature of line probes at a minimum") {
    const auto [u, rep] = minimize(hot_start(kG, GroupKind::SU2, 11, 0.5), quick_config());
    REQUIRE(rep.converged);
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
        LinkAlgebraField psi(kG, GroupKind::SU2);
        for (SiteIndex x = 0; x < kG.volume(); ++x)
            for (int mu = 0; mu < 4; ++mu) psi(x, mu) = random_algebra(GroupKind::SU2, rng, 1.0);
        const double h = 1e-3;
        const auto e = line_probe(u, psi, {-h, 0.0, h});
        CHECK((e[0] - 2 * e[1] + e[2]) / (h * h) >= -1e-6 * (1.0 + psi.norm2()));
    }
}

TEST_CASE("transport") {
    const LinkField u = hot_start(kG, GroupKind::SU3, 13, 0.4);
    Rng rng(14);
    LinkAlgebraField psi(kG, GroupKind::SU3);
    for (SiteIndex x = 0; x < kG.volume(); ++x)
        for (int mu = 0; mu < 4; ++mu) psi(x, mu) = random_algebra(GroupKind::SU3, rng, 1.0);
    CHECK(transport(u, psi, 0.0) == u);
    const LinkField back = transport(transport(u, psi, 0.3), psi, -0.3);
    for (std::size_t i = 0; i < u.links().size(); ++i)
        CHECK(distance(back.links()[i].matrix(), u.links()[i].matrix()) < 1e-13);
}
