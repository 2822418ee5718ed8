#include "ymlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ymlab/action.hpp"
#include "ymlab/flow.hpp"

namespace ymlab {

namespace {

void require_dim(const LatticeGeometry& g, int d, const char* what) {
    if (g.dim() != d)
        throw std::invalid_argument(std::string(what) + " needs a " + std::to_string(d) + "-dimensional lattice");
}

// (e* psi F)_nu = (1/2) sum_mu [F_{mu nu}, psi_mu], any dimension, squared norm at x.
double estar_norm2_at(const OneFormField& psi, const SiteTwoFormField& f, SiteIndex x) {
    const int d = f.geometry().dim();
    double s = 0.0;
    for (int nu = 0; nu < d; ++nu) {
        AlgebraElement acc = AlgebraElement::zero(f.kind());
        for (int mu = 0; mu < d; ++mu) {
            if (mu == nu) continue;
            acc += commutator(f(x, mu, nu), psi(x, mu));
        }
        acc *= 0.5;
        s += acc.norm2();
    }
    return s;
}

double estar_rms(const OneFormField& psi, const SiteTwoFormField& projected, const SiteTwoFormField& full) {
    require_compatible(psi.geometry(), psi.kind(), full.geometry(), full.kind());
    const auto vol = static_cast<double>(full.geometry().volume());
    double s = 0.0;
    for (SiteIndex x = 0; x < full.geometry().volume(); ++x) s += estar_norm2_at(psi, projected, x);
    return std::sqrt(s / vol) / (rms_norm(psi) * rms_norm(full) + kNormEpsilon);
}

CommutatorResult max_commutator(const SiteTwoFormField& a, const SiteTwoFormField& b, double scale) {
    CommutatorResult best;
    if (scale == 0.0) return best;
    const auto& geom = a.geometry();
    const auto& planes = geom.planes();
    const int np = geom.num_planes();
    double top = -1.0;
    for (SiteIndex x = 0; x < geom.volume(); ++x) {
        for (int p = 0; p < np; ++p) {
            for (int q = 0; q < np; ++q) {
                const double c = commutator(a.plane(x, p), b.plane(x, q)).norm();
                if (c > top) {
                    top = c;
                    best.where.site = geom.coords(x);
                    best.where.plane_a = planes[p];
                    best.where.plane_b = planes[q];
                }
            }
        }
    }
    best.value = top / (scale + kNormEpsilon);
    return best;
}

}  // namespace

double rms_norm(const SiteTwoFormField& f) {
    return std::sqrt(f.norm2() / static_cast<double>(f.geometry().volume()));
}

double rms_norm(const OneFormField& psi) {
    return std::sqrt(psi.norm2() / static_cast<double>(psi.geometry().volume()));
}

SiteTwoFormField project_pm(const SiteTwoFormField& f, Duality which) {
    require_dim(f.geometry(), 4, "SD/ASD projection");
    SiteTwoFormField r(f.geometry(), f.kind());
    for (SiteIndex x = 0; x < f.geometry().volume(); ++x) r.set(x, project_pm(f.at(x), which));
    return r;
}

CommutatorResult commutator_diagnostic(const SiteTwoFormField& f) {
    require_dim(f.geometry(), 4, "commutator_diagnostic");
    const SiteTwoFormField fp = project_pm(f, Duality::SelfDual);
    const SiteTwoFormField fm = project_pm(f, Duality::AntiSelfDual);
    const double rp = rms_norm(fp), rm = rms_norm(fm);
    if (rp == 0.0 || rm == 0.0) return {};
    return max_commutator(fp, fm, rp * rm);
}

CommutatorResult self_commutator_diagnostic(const SiteTwoFormField& f) {
    const double r = rms_norm(f);
    if (r == 0.0) return {};
    return max_commutator(f, f, r * r);
}

double estar_residual(const OneFormField& psi, const SiteTwoFormField& f, Duality sign) {
    require_dim(f.geometry(), 4, "estar_residual");
    return estar_rms(psi, project_pm(f, sign), f);
}

OneFormField dual_one_form(const SiteTwoFormField& f) {
    require_dim(f.geometry(), 3, "dual_one_form");
    OneFormField psi(f.geometry(), f.kind());
    for (SiteIndex x = 0; x < f.geometry().volume(); ++x) {
        psi(x, 0) = f(x, 1, 2);
        psi(x, 1) = f(x, 2, 0);
        psi(x, 2) = f(x, 0, 1);
    }
    return psi;
}

double estar_residual_dual(const SiteTwoFormField& f) { return estar_rms(dual_one_form(f), f, f); }

OneFormField build_killing_variation(const SiteTwoFormField& f, int mu, Duality sign) {
    require_dim(f.geometry(), 4, "build_killing_variation");
    if (mu < 0 || mu > 3) throw std::out_of_range("direction must be in 0..3");
    OneFormField psi(f.geometry(), f.kind());
    for (SiteIndex x = 0; x < f.geometry().volume(); ++x) {
        const auto part = project_pm(f.at(x), sign);
        for (int nu = 0; nu < 4; ++nu) psi(x, nu) = part(mu, nu);
    }
    return psi;
}

OneFormField random_variation(const LatticeGeometry& geometry, GroupKind kind, std::uint64_t seed,
                              double amplitude) {
    OneFormField psi(geometry, kind);
    Rng rng(seed);
    for (SiteIndex x = 0; x < geometry.volume(); ++x)
        for (int mu = 0; mu < geometry.dim(); ++mu) psi(x, mu) = random_algebra(kind, rng, amplitude);
    return psi;
}

double direct_second_variation(const LinkField& u, const SiteTwoFormField& f, const OneFormField& psi) {
    require_compatible(u.geometry(), u.kind(), psi.geometry(), psi.kind());
    const auto& geom = u.geometry();
    const int d = geom.dim();
    // nabla[mu][nu] = nabla_mu psi_nu
    std::vector<SiteAlgebraField> comp;
    for (int nu = 0; nu < d; ++nu) {
        SiteAlgebraField s(geom, u.kind());
        for (SiteIndex x = 0; x < geom.volume(); ++x) s[x] = psi(x, nu);
        comp.push_back(std::move(s));
    }
    std::vector<std::vector<SiteAlgebraField>> nabla(d);
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) nabla[mu].push_back(covariant_diff(u, comp[nu], mu));

    double total = 0.0;
    for (SiteIndex x = 0; x < geom.volume(); ++x) {
        for (int p = 0; p < geom.num_planes(); ++p) {
            const int mu = geom.planes()[p][0], nu = geom.planes()[p][1];
            const AlgebraElement dpsi = nabla[mu][nu][x] - nabla[nu][mu][x];
            total += inner(dpsi, dpsi) + 2.0 * inner(f.plane(x, p), commutator(psi(x, mu), psi(x, nu)));
        }
    }
    return total;
}

VariationReport second_variation(const LinkField& u, const OneFormField& psi, double h, std::string label) {
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    const auto e = line_probe(u, psi, {-h, 0.0, h});
    VariationReport r;
    r.psi_label = std::move(label);
    r.h = h;
    r.fd_first = (e[2] - e[0]) / (2.0 * h);
    r.fd_second = (e[2] - 2.0 * e[1] + e[0]) / (h * h);
    r.direct_second = direct_second_variation(u, clover(u), psi);
    r.psi_norm2 = psi.norm2();
    return r;
}

NablaFNorm nabla_f_norm(const LinkField& u) {
    const auto& geom = u.geometry();
    const SiteTwoFormField f = clover(u);
    NablaFNorm out;
    for (int p = 0; p < geom.num_planes(); ++p) {
        SiteAlgebraField comp(geom, u.kind());
        for (SiteIndex x = 0; x < geom.volume(); ++x) comp[x] = f.plane(x, p);
        for (int mu = 0; mu < geom.dim(); ++mu) {
            const SiteAlgebraField dv = covariant_diff(u, comp, mu);
            for (SiteIndex x = 0; x < geom.volume(); ++x) out.absolute += dv[x].norm2();
        }
    }
    const double f2 = f.norm2();
    out.relative = f2 > 0.0 ? out.absolute / f2 : 0.0;
    return out;
}

DiagnosticsReport run_diagnostics(const LinkField& u) {
    DiagnosticsReport rep;
    rep.dims = u.geometry().dim();
    const SiteTwoFormField f = clover(u);
    if (rep.dims == 4) {
        const CommutatorResult c = commutator_diagnostic(f);
        rep.commutator_max = c.value;
        rep.commutator_argmax = c.where;
        double worst = 0.0;
        for (int mu = 0; mu < 4; ++mu) {
            worst = std::max(worst, estar_residual(build_killing_variation(f, mu, Duality::SelfDual), f,
                                                   Duality::AntiSelfDual));
            worst = std::max(worst, estar_residual(build_killing_variation(f, mu, Duality::AntiSelfDual), f,
                                                   Duality::SelfDual));
        }
        rep.estar_residual = worst;
    } else {
        const CommutatorResult c = self_commutator_diagnostic(f);
        rep.commutator_max = c.value;
        rep.commutator_argmax = c.where;
        rep.estar_residual = estar_residual_dual(f);
        rep.note = "flat torus: Ric = 0, so the Ric(*F,*F) term vanishes identically";
    }
    const NablaFNorm nf = nabla_f_norm(u);
    rep.nabla_f_norm = nf.absolute;
    rep.nabla_f_relative = nf.relative;
    return rep;
}

}  // namespace ymlab
