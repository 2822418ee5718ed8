#include "ymlab/action.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ymlab {

namespace {

double plaquette_deviation(const GroupElement& p) {
    if (p.kind() == GroupKind::U1) {
        const double s = std::sin(0.5 * p.phase());
        return 4.0 * s * s;
    }
    CMatrix d = p.matrix();
    for (int i = 0; i < d.dim(); ++i) d(i, i) -= 1.0;
    return d.norm2();
}

void require_dim4(const LatticeGeometry& g, const char* what) {
    if (g.dim() != 4) throw std::invalid_argument(std::string(what) + " is defined on 4-dimensional lattices only");
}

}  // namespace

double wilson_energy(const LinkField& u) {
    const auto& geom = u.geometry();
    double e = 0.0;
    for (SiteIndex x = 0; x < geom.volume(); ++x)
        for (const auto& pl : geom.planes()) e += plaquette_deviation(plaquette(u, x, pl[0], pl[1]));
    return e;
}

LinkAlgebraField force(const LinkField& u) {
    const auto& geom = u.geometry();
    const GroupKind kind = u.kind();
    const int n = matrix_dim(kind);
    LinkAlgebraField f(geom, kind);
    for (SiteIndex x = 0; x < geom.volume(); ++x) {
        for (int mu = 0; mu < geom.dim(); ++mu) {
            const SiteIndex xpm = geom.up(x, mu);
            // W = sum over plaquettes through U_mu(x), each rotated to start with U_mu(x)
            CMatrix w(n);
            for (int nu = 0; nu < geom.dim(); ++nu) {
                if (nu == mu) continue;
                const SiteIndex xpn = geom.up(x, nu), xmn = geom.down(x, nu);
                const SiteIndex xpm_mn = geom.down(xpm, nu);
                const GroupElement up =
                    u(x, mu) * u(xpm, nu) * u(xpn, mu).adjoint() * u(x, nu).adjoint();
                const GroupElement down =
                    u(x, mu) * u(xpm_mn, nu).adjoint() * u(xmn, mu).adjoint() * u(xmn, nu);
                w += up.matrix();
                w += down.matrix();
            }
            // d/dt 2 sum (n - Re tr e^{tX} W) = -2 Re tr(XW) = inner(X, 2 P(W))
            AlgebraElement g = project_algebra(kind, w);
            g *= 2.0;
            f(x, mu) = g;
        }
    }
    return f;
}

double clover_energy(const SiteTwoFormField& f) { return f.norm2(); }

EnergySplit energy_split(const SiteTwoFormField& f) {
    require_dim4(f.geometry(), "energy_split");
    EnergySplit s;
    for (SiteIndex x = 0; x < f.geometry().volume(); ++x) {
        const auto form = f.at(x);
        const auto fp = project_pm(form, Duality::SelfDual);
        const auto fm = project_pm(form, Duality::AntiSelfDual);
        s.e_plus += inner(fp, fp);
        s.e_minus += inner(fm, fm);
        s.total += inner(form, form);
    }
    s.q = topological_charge(f);
    return s;
}

EnergySplit energy_split(const LinkField& u) {
    require_dim4(u.geometry(), "energy_split");
    return energy_split(clover(u));
}

double topological_charge(const SiteTwoFormField& f) {
    require_dim4(f.geometry(), "topological_charge");
    // eps sum = 8 (F01.F23 - F02.F13 + F03.F12) with -Re tr(XY) = inner(X, Y)
    double s = 0.0;
    for (SiteIndex x = 0; x < f.geometry().volume(); ++x) {
        s += inner(f.plane(x, 0), f.plane(x, 5)) - inner(f.plane(x, 1), f.plane(x, 4)) +
             inner(f.plane(x, 2), f.plane(x, 3));
    }
    return 8.0 * s / (32.0 * std::numbers::pi * std::numbers::pi);
}

double topological_charge(const LinkField& u) {
    require_dim4(u.geometry(), "topological_charge");
    return topological_charge(clover(u));
}

}  // namespace ymlab
