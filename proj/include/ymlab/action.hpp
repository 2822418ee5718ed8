#pragma once

// Wilson energy, its exact gradient, the self-dual / anti-self-dual split of
// the clover energy and the clover topological charge.

#include <cmath>

#include "ymlab/fields.hpp"

namespace ymlab {

struct EnergySplit {
    double total = 0.0;    ///< clover energy sum_x sum_{mu<nu} |F_{mu nu}(x)|^2
    double e_plus = 0.0;   ///< |F+|^2
    double e_minus = 0.0;  ///< |F-|^2
    double q = 0.0;        ///< topological charge
};

/// E(U) = 2 sum_x sum_{mu<nu} (n - Re tr P_{mu nu}(x)).
///
/// Evaluated as sum |P - 1|_F^2 (SU(n)) or 4 sin^2(theta/2) (U(1)); these
/// equal the Wilson form for unitary P and keep full relative precision when
/// the plaquettes are close to the identity.
double wilson_energy(const LinkField& u);

/// Gradient of wilson_energy under U_mu(x) -> exp(tX) U_mu(x):
///   d/dt E = inner(X, force_mu(x)).
LinkAlgebraField force(const LinkField& u);

/// Clover energy of a site field (any dimension).
double clover_energy(const SiteTwoFormField& f);

EnergySplit energy_split(const LinkField& u);
EnergySplit energy_split(const SiteTwoFormField& f);

/// Q = (1/32 pi^2) sum_x eps_{mu nu rho sigma} (-Re tr F_{mu nu} F_{rho sigma}).
double topological_charge(const LinkField& u);
double topological_charge(const SiteTwoFormField& f);

/// |Q - round(Q)| > 0.25: no sector can be assigned.
inline bool topologically_ambiguous(double q) { return std::abs(q - std::round(q)) > 0.25; }

}  // namespace ymlab
