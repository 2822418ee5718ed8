#pragma once

// Exact verification of the algebraic reduction step in the induction for
// minimizing connections on homogeneous 4-manifolds.
//
// For a degree-N induction level and a direction u in R^4 the unknowns are
//   p_{ik}   = [(u.nabla)^N F+_{1i}, F-_{1k}],   i, k in {2, 3, 4}   (9)
//   p_{ik,a} = d p_{ik} / d u^a,                 a in {1, 2, 3, 4}    (36)
// and the linear constraints are, in row order,
//   (a)  9 Euler relations  sum_a u^a p_{ik,a} - N p_{ik} = 0
//   (b)  4 contracted e*-equations evaluated at u
//   (c) 16 partial derivatives of (b) in u^1..u^4
//   (d)  9 Bianchi-derived derivative relations
//   (e)  9 relations from moving the derivative onto F-.
// Every kernel vector of this 47 x 45 system must have all p_{ik} = 0.
//
// All arithmetic is exact (GMP rationals).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ymlab {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

inline constexpr int kReductionUnknowns = 45;
inline constexpr int kReductionRows = 47;

/// Column of p_{ik}, i, k in {2, 3, 4} (1-based labels as in the equations).
int p_column(int i, int k);
/// Column of p_{ik,a}, a in {1, ..., 4}.
int dp_column(int i, int k, int a);
/// "p22", "p34,1", ...
std::string column_label(int col);

enum RowGroup : unsigned {
    kEuler = 1u << 0,
    kBase = 1u << 1,
    kDerivatives = 1u << 2,
    kBianchi = 1u << 3,
    kShifted = 1u << 4,
    kAllRows = kEuler | kBase | kDerivatives | kBianchi | kShifted,
    /// Ablation control: without the two relation groups the claim must fail.
    kWithoutRelations = kEuler | kBase | kDerivatives,
};

struct ReductionSystem {
    long n = 1;
    std::array<Rational, 4> u;
    unsigned groups = kAllRows;
    RationalMatrix matrix;           ///< rows x 45
    std::vector<std::string> row_labels;
};

/// Throws std::invalid_argument for n < 1 or u = 0.
ReductionSystem build_system(long n, const std::array<Rational, 4>& u, unsigned groups = kAllRows);

struct EchelonCertificate {
    RationalMatrix rref;
    std::vector<int> pivots;
    int rank = 0;
};

struct NullspaceResult {
    std::vector<RationalVector> basis;
    EchelonCertificate certificate;
};

/// Exact kernel basis by Gauss-Jordan elimination, pivoting over columns in
/// `column_order` (defaults to 0, 1, ..., cols-1). One basis vector per free column.
NullspaceResult nullspace(const RationalMatrix& m, const std::vector<int>& column_order = {});
NullspaceResult nullspace(const ReductionSystem& system);

/// Exact product m * v.
RationalVector multiply(const RationalMatrix& m, const RationalVector& v);

struct SampleOutcome {
    std::array<Rational, 4> u;
    int rank = 0;
    int kernel_dim = 0;
    /// Rank from the reversed pivot order; must equal `rank`.
    int rank_reversed = 0;
    bool pass = false;
    /// First kernel vector with a nonzero p_{ik} coordinate, if any.
    RationalVector offending;
};

struct VerificationReport {
    long n = 1;
    unsigned groups = kAllRows;
    std::vector<SampleOutcome> samples;
    bool pass = false;
    /// Rank equal across all samples (a drop signals a non-generic u).
    bool rank_consistent = true;
    double elapsed_ms = 0.0;
};

/// Samples u with coordinates uniform in {-9, ..., 9} (u = 0 redrawn), builds the
/// system and checks every kernel vector has vanishing p_{ik}.
VerificationReport verify_forces_zero(long n, int samples, std::uint64_t seed, unsigned groups = kAllRows);

/// Same check at a prescribed u.
SampleOutcome verify_at(long n, const std::array<Rational, 4>& u, unsigned groups = kAllRows);

/// Plain-text dump of the reduced row-echelon certificate.
std::string format_certificate(const ReductionSystem& system, const EchelonCertificate& cert);

/// Average of prod_i u_i^alpha_i over the unit sphere S^{n-1} in R^n:
/// zero if any exponent is odd, else prod (alpha_i - 1)!! / prod_{k < |alpha|/2} (n + 2k).
/// Throws for n < 2, negative exponents, or a nonzero exponent beyond the n-th coordinate.
Rational sphere_moment(const std::vector<int>& alpha, int n);

std::string to_string(const Rational& q);

}  // namespace ymlab
