#pragma once

// Structure checks at a (numerically) critical configuration.
//
// Every quantity is a normalized residual: the continuum statements they
// probe hold exactly only in the limit, and lattice artifacts enter at O(a)
// in covariant derivatives and O(a^2) in the clover field strength.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ymlab/fields.hpp"

namespace ymlab {

/// Added to normalizations so vanishing fields give zero rather than NaN.
inline constexpr double kNormEpsilon = 1e-30;

struct CommutatorLocation {
    Coords site{};
    std::array<int, 2> plane_a{};  ///< (mu, nu) of the first factor
    std::array<int, 2> plane_b{};  ///< (rho, sigma) of the second factor
};

struct CommutatorResult {
    double value = 0.0;
    CommutatorLocation where;
};

struct DiagnosticsReport {
    int dims = 4;
    double commutator_max = 0.0;
    CommutatorLocation commutator_argmax;
    double estar_residual = 0.0;
    double nabla_f_norm = 0.0;
    double nabla_f_relative = 0.0;
    std::string note;
};

struct VariationReport {
    std::string psi_label;
    double fd_first = 0.0;
    double fd_second = 0.0;
    /// |d_A psi|^2 + 2 <F, psi ^ psi>; for smooth fields fd_second ~ 2 * direct_second.
    double direct_second = 0.0;
    double h = 0.0;
    double psi_norm2 = 0.0;
};

/// rms over sites of the per-site 2-form norm.
double rms_norm(const SiteTwoFormField& f);
/// rms over sites of the per-site 1-form norm.
double rms_norm(const OneFormField& psi);

/// Pointwise P+- of every site 2-form (d = 4).
SiteTwoFormField project_pm(const SiteTwoFormField& f, Duality which);

/// max over x, (mu nu), (rho sigma) of |[F+_{mu nu}(x), F-_{rho sigma}(x)]| / (|F+|_rms |F-|_rms + eps).
CommutatorResult commutator_diagnostic(const SiteTwoFormField& f);

/// Same statistic with both factors taken from F itself (any dimension):
/// vanishes when F takes values in a commutative subalgebra.
CommutatorResult self_commutator_diagnostic(const SiteTwoFormField& f);

/// rms over x of |e*(psi(x)) P^sign F(x)|, normalized by |psi|_rms |F|_rms + eps (d = 4).
double estar_residual(const OneFormField& psi, const SiteTwoFormField& f, Duality sign);

/// Residual of e*(psi) F with psi = *F the dual 1-form (d = 3).
double estar_residual_dual(const SiteTwoFormField& f);

/// psi_nu(x) = (P^sign F(x))_{mu nu}: interior product with the translation field e_mu.
OneFormField build_killing_variation(const SiteTwoFormField& f, int mu, Duality sign);

/// psi_mu(x) = (1/2) eps_{mu nu rho} F_{nu rho}(x) (d = 3).
OneFormField dual_one_form(const SiteTwoFormField& f);

/// Random ad-valued 1-form field with i.i.d. uniform algebra coordinates.
OneFormField random_variation(const LatticeGeometry& geometry, GroupKind kind, std::uint64_t seed,
                              double amplitude);

/// Finite-difference and direct second variation along U -> exp(t psi) U.
VariationReport second_variation(const LinkField& u, const OneFormField& psi, double h,
                                 std::string label = {});

/// sum_x |d_A psi|^2 + 2 <F, psi ^ psi> with forward covariant differences and clover F.
double direct_second_variation(const LinkField& u, const SiteTwoFormField& f, const OneFormField& psi);

struct NablaFNorm {
    double absolute = 0.0;  ///< sum_{x, mu, nu<rho} |nabla_mu F_{nu rho}(x)|^2
    double relative = 0.0;  ///< absolute / |F|^2, zero when F vanishes
};
NablaFNorm nabla_f_norm(const LinkField& u);

/// The full diagnostics pass used by the tools: 4d runs get the SD/ASD
/// commutator and the Killing-variation e* residuals, 3d runs get the
/// self-commutator and the e*(*F) F residual.
DiagnosticsReport run_diagnostics(const LinkField& u);

}  // namespace ymlab
