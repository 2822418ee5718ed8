#include "ymlab/flow.hpp"

#include <algorithm>
#include <stdexcept>

namespace ymlab {

void FlowConfig::validate() const {
    if (!(step_init > 0.0)) throw std::invalid_argument("step_init must be positive");
    if (!(step_shrink > 0.0 && step_shrink < 1.0)) throw std::invalid_argument("step_shrink must lie in (0, 1)");
    if (!(step_grow > 1.0)) throw std::invalid_argument("step_grow must exceed 1");
    if (!(tol_force > 0.0)) throw std::invalid_argument("tol_force must be positive");
    if (max_iters < 0) throw std::invalid_argument("max_iters must be non-negative");
    if (measure_every <= 0) throw std::invalid_argument("measure_every must be positive");
    if (reunitarize_every <= 0) throw std::invalid_argument("reunitarize_every must be positive");
}

LinkField transport(const LinkField& u, const LinkAlgebraField& psi, double t) {
    require_compatible(u.geometry(), u.kind(), psi.geometry(), psi.kind());
    LinkField r = u;
    auto& links = r.links();
    const auto& v = psi.values();
    for (std::size_t i = 0; i < links.size(); ++i) links[i] = exp_map(v[i] * t) * links[i];
    return r;
}

std::vector<double> line_probe(const LinkField& u, const LinkAlgebraField& psi, const std::vector<double>& ts) {
    require_compatible(u.geometry(), u.kind(), psi.geometry(), psi.kind());
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(wilson_energy(transport(u, psi, t)));
    return out;
}

namespace {

HistoryRow measure(long iter, const LinkField& u, double energy, double force_inf, double step) {
    HistoryRow row;
    row.iter = iter;
    row.energy = energy;
    row.force_inf = force_inf;
    row.step = step;
    if (u.geometry().dim() == 4) {
        LinkField clean = u;
        clean.reunitarize();
        const EnergySplit s = energy_split(clean);
        row.e_plus = s.e_plus;
        row.e_minus = s.e_minus;
        row.q = s.q;
    }
    return row;
}

}  // namespace

std::pair<LinkField, MinimizeReport> minimize(LinkField u, const FlowConfig& cfg, const FlowObserver& observer) {
    cfg.validate();
    MinimizeReport rep;

    double energy = wilson_energy(u);
    LinkAlgebraField f = force(u);
    double finf = f.sup_norm();
    double step = cfg.step_init;
    double last_step = 0.0;
    long iter = 0;

    auto record = [&] {
        rep.history.push_back(measure(iter, u, energy, finf, last_step));
        if (observer) observer(iter, u);
    };
    record();

    while (true) {
        if (finf < cfg.tol_force) {
            rep.converged = true;
            break;
        }
        if (iter >= cfg.max_iters) break;

        LinkField trial = transport(u, f, -step);
        double trial_energy = wilson_energy(trial);
        while (!(trial_energy < energy)) {
            step *= cfg.step_shrink;
            if (step < 1e-15) break;
            trial = transport(u, f, -step);
            trial_energy = wilson_energy(trial);
        }
        if (!(trial_energy < energy)) {
            rep.stalled = true;
            break;
        }

        u = std::move(trial);
        energy = trial_energy;
        last_step = step;
        step = std::min(step * cfg.step_grow, cfg.step_init * 10.0);
        ++iter;

        if (iter % cfg.reunitarize_every == 0) {
            u.reunitarize();
            energy = wilson_energy(u);
        }
        f = force(u);
        finf = f.sup_norm();
        if (iter % cfg.measure_every == 0 && !(finf < cfg.tol_force)) record();
    }

    if (rep.history.back().iter != iter) record();
    rep.iters = iter;
    rep.energy = energy;
    rep.force_inf = finf;
    if (u.geometry().dim() == 4) {
        LinkField clean = u;
        clean.reunitarize();
        rep.split = energy_split(clean);
    }
    return {std::move(u), std::move(rep)};
}

}  // namespace ymlab
