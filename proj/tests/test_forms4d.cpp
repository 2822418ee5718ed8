#include <doctest.h>

#include "support.hpp"

using namespace ymtest;

namespace {

TwoForm<double> unit_form(int mu, int nu) {
    std::array<double, 6> c{};
    c[plane_index(mu, nu)] = 1.0;
    return TwoForm<double>(c);
}

OneForm<double> unit_one_form(int mu) {
    std::array<double, 4> c{};
    c[mu] = 1.0;
    return OneForm<double>(c);
}

}  // namespace

TEST_CASE("hodge star conventions") {
    CHECK(form_distance(hodge_star(unit_form(0, 1)), unit_form(2, 3)) == 0.0);
    CHECK(form_distance(hodge_star(unit_form(0, 2)), -1.0 * unit_form(1, 3)) == 0.0);
    CHECK(form_distance(hodge_star(unit_form(0, 3)), unit_form(1, 2)) == 0.0);
    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
        const auto f = random_scalar_form(rng);
        CHECK(form_distance(hodge_star(hodge_star(f)), f) == 0.0);
        const auto g = random_form(GroupKind::SU3, rng);
        CHECK(form_distance(hodge_star(hodge_star(g)), g) == 0.0);
    }
}

TEST_CASE("antisymmetric access") {
    Rng rng(2);
    const auto f = random_form(GroupKind::SU2, rng);
    for (int mu = 0; mu < 4; ++mu) {
        CHECK(f(mu, mu).norm() == 0.0);
        for (int nu = 0; nu < 4; ++nu) CHECK(distance(f(mu, nu), -f(nu, mu)) == 0.0);
    }
}

TEST_CASE("self-dual and anti-self-dual projectors") {
    const auto p = project_pm(unit_form(0, 1), Duality::SelfDual);
    CHECK(form_distance(p, 0.5 * (unit_form(0, 1) + unit_form(2, 3))) == 0.0);
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const auto f = random_form(GroupKind::SU2, rng);
        const auto fp = project_pm(f, Duality::SelfDual);
        const auto fm = project_pm(f, Duality::AntiSelfDual);
        CHECK(form_distance(fp + fm, f) < 1e-15);
        CHECK(form_distance(project_pm(fp, Duality::SelfDual), fp) < 1e-15);
        CHECK(form_distance(project_pm(fp, Duality::AntiSelfDual), TwoForm<AlgebraElement>::zero(f.component(0))) <
              1e-15);
        CHECK(std::abs(inner(fp, fm)) < 1e-14);
        CHECK(inner(f, f) == doctest::Approx(inner(fp, fp) + inner(fm, fm)).epsilon(1e-13));
    }
}

TEST_CASE("interior products") {
    const auto i1 = interior(0, unit_form(0, 1));
    CHECK(i1[1] == 1.0);
    CHECK(i1[0] == 0.0);
    CHECK(i1[2] == 0.0);
    CHECK(i1[3] == 0.0);
    const auto i3 = interior(2, unit_form(0, 1));
    for (int nu = 0; nu < 4; ++nu) CHECK(i3[nu] == 0.0);
    CHECK_THROWS_AS(interior(4, unit_form(0, 1)), std::out_of_range);

    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        const auto f = random_scalar_form(rng);
        TwoForm<double> acc;
        for (int mu = 0; mu < 4; ++mu) acc += wedge11(unit_one_form(mu), interior(mu, f));
        CHECK(form_distance(acc, 2.0 * f) < 1e-15);
    }
}

TEST_CASE("bracket wedge") {
    Rng rng(5);
    const auto a = random_one_form(GroupKind::U1, rng);
    for (int p = 0; p < 6; ++p) CHECK(wedge11(a, a).component(p).norm() == 0.0);
    for (int t = 0; t < 50; ++t) {
        const auto psi = random_one_form(GroupKind::SU2, rng);
        const auto phi = random_one_form(GroupKind::SU2, rng);
        const auto chi = random_one_form(GroupKind::SU2, rng);
        const auto sq = wedge11(psi, psi);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) CHECK(distance(sq(mu, nu), commutator(psi[mu], psi[nu])) < 1e-15);
        const double s = rng.uniform(-2, 2);
        CHECK(form_distance(wedge11(psi + s * phi, chi), wedge11(psi, chi) + s * wedge11(phi, chi)) < 1e-13);
        CHECK(form_distance(wedge11(chi, psi + s * phi), wedge11(chi, psi) + s * wedge11(chi, phi)) < 1e-13);
        // graded symmetry of the bracket wedge of 1-forms
        CHECK(form_distance(wedge11(psi, phi), wedge11(phi, psi)) < 1e-15);
    }
}

TEST_CASE("contraction is the adjoint of the wedge") {
    Rng rng(6);
    const auto zero = TwoForm<AlgebraElement>::zero(AlgebraElement::zero(GroupKind::SU2));
    const auto psi0 = random_one_form(GroupKind::SU2, rng);
    for (int mu = 0; mu < 4; ++mu) CHECK(contract_estar(psi0, zero)[mu].norm() == 0.0);
    const auto pu = random_one_form(GroupKind::U1, rng);
    const auto fu = random_form(GroupKind::U1, rng);
    for (int mu = 0; mu < 4; ++mu) CHECK(contract_estar(pu, fu)[mu].norm() == 0.0);

    for (GroupKind k : {GroupKind::SU2, GroupKind::SU3}) {
        for (int t = 0; t < 100; ++t) {
            const auto psi = random_one_form(k, rng);
            const auto w = random_one_form(k, rng);
            const auto f = random_form(k, rng);
            CHECK(inner(f, wedge11(psi, w)) == doctest::Approx(inner(contract_estar(psi, f), w)).epsilon(1e-12));
        }
    }
}

TEST_CASE("closure of the contracted square on scalar forms") {
    Rng rng(7);
    for (int t = 0; t < 1000; ++t) {
        for (Duality s : {Duality::SelfDual, Duality::AntiSelfDual}) {
            const Duality other = s == Duality::SelfDual ? Duality::AntiSelfDual : Duality::SelfDual;
            const auto f = project_pm(random_scalar_form(rng), s);
            const auto g = project_pm(random_scalar_form(rng), s);
            // the diagonal square vanishes for scalar forms; the polarized one carries the content
            CHECK(form_distance(project_pm(contracted_square(f, g), other), TwoForm<double>()) < 1e-13);
            CHECK(form_distance(contracted_square(f, f), TwoForm<double>()) < 1e-15);
        }
    }
}

TEST_CASE("closure of the contracted square on ad-valued forms") {
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        for (Duality s : {Duality::SelfDual, Duality::AntiSelfDual}) {
            const Duality other = s == Duality::SelfDual ? Duality::AntiSelfDual : Duality::SelfDual;
            const auto f = project_pm(random_form(GroupKind::SU2, rng), s);
            const auto sq = contracted_square(f, f);
            CHECK(inner(sq, sq) > 0.0);
            const auto wrong = project_pm(sq, other);
            CHECK(inner(wrong, wrong) < 1e-26);
        }
        // without the duality assumption the square has both parts
        const auto generic = random_form(GroupKind::SU2, rng);
        const auto mixed = project_pm(contracted_square(generic, generic), Duality::AntiSelfDual);
        CHECK(inner(mixed, mixed) > 1e-6);
    }
}

TEST_CASE("cyclic identity of the contracted square") {
    Rng rng(9);
    for (GroupKind k : {GroupKind::SU2, GroupKind::SU3}) {
        for (int t = 0; t < 1000; ++t) {
            const auto p1 = random_form(k, rng), p2 = random_form(k, rng), p3 = random_form(k, rng);
            const double a = inner(p1, contracted_square(p2, p3));
            const double b = inner(p3, contracted_square(p1, p2));
            CHECK(std::abs(a - b) < 1e-12);
        }
    }
}
