#pragma once

// Backtracking gradient descent on the Wilson energy.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ymlab/action.hpp"

namespace ymlab {

struct FlowConfig {
    double step_init = 0.05;
    double step_shrink = 0.5;
    double step_grow = 1.1;
    double tol_force = 1e-8;  ///< target for the sup-norm of the force
    long max_iters = 200000;
    long measure_every = 100;
    long reunitarize_every = 100;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

struct HistoryRow {
    long iter = 0;
    double energy = 0.0;
    /// Clover split and charge; absent on 3-dimensional lattices.
    std::optional<double> e_plus, e_minus, q;
    double force_inf = 0.0;
    double step = 0.0;  ///< step length of the last accepted update
};

struct MinimizeReport {
    bool converged = false;
    bool stalled = false;
    long iters = 0;
    double energy = 0.0;
    std::optional<EnergySplit> split;
    double force_inf = 0.0;
    std::vector<HistoryRow> history;
};

/// Called with (iteration, field) whenever a history row is recorded.
using FlowObserver = std::function<void(long, const LinkField&)>;

/// U_mu(x) <- exp(-step force_mu(x)) U_mu(x); a step is accepted only if the
/// energy strictly decreases, otherwise it is halved (step_shrink) and retried.
/// Stops when the force sup-norm drops below tol_force, after max_iters
/// accepted steps, or when the step underflows 1e-15 (reported as stalled).
std::pair<LinkField, MinimizeReport> minimize(LinkField u, const FlowConfig& cfg,
                                              const FlowObserver& observer = {});

/// Energies of U_mu(x) -> exp(t psi_mu(x)) U_mu(x) for each t; u is not modified.
std::vector<double> line_probe(const LinkField& u, const LinkAlgebraField& psi, const std::vector<double>& ts);

/// exp(t psi_mu(x)) U_mu(x) on every link.
LinkField transport(const LinkField& u, const LinkAlgebraField& psi, double t);

}  // namespace ymlab
