#include "ymlab/reduce_verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ymlab/algebra.hpp"

namespace ymlab {

namespace {

struct Term {
    int coeff;  // u^coeff multiplies the term (1-based)
    int sign;
    int i, k;
};

// The four contracted equations sum_{a,s} [(u.nabla)^N u^a F+_{as}, F-_{st}] = 0,
// t = 1..4, written in the p_{ik} basis. The third equation's "p_{43a}" is
// read as p_{43}, matching the pattern of the other three.
const std::array<std::vector<Term>, 4> kBaseEquations = {{
    {{1, 1, 2, 2}, {1, 1, 3, 3}, {1, 1, 4, 4}, {2, -1, 3, 4}, {2, 1, 4, 3},
     {3, 1, 2, 4}, {3, -1, 4, 2}, {4, -1, 2, 3}, {4, 1, 3, 2}},
    {{1, 1, 3, 4}, {1, -1, 4, 3}, {2, -1, 2, 2}, {2, 1, 4, 4}, {2, 1, 3, 3},
     {3, -1, 3, 2}, {3, -1, 2, 3}, {4, -1, 4, 2}, {4, -1, 2, 4}},
    {{1, -1, 2, 4}, {1, 1, 4, 2}, {2, -1, 2, 3}, {2, -1, 3, 2}, {3, -1, 3, 3},
     {3, 1, 4, 4}, {3, 1, 2, 2}, {4, -1, 4, 3}, {4, -1, 3, 4}},
    {{1, 1, 2, 3}, {1, -1, 3, 2}, {2, -1, 2, 4}, {2, -1, 4, 2}, {3, -1, 3, 4},
     {3, -1, 4, 3}, {4, -1, 4, 4}, {4, 1, 3, 3}, {4, 1, 2, 2}},
}};

// p_{x} - p_{y} - p_{z} = 0 with each entry (i, k, a).
using Relation = std::array<std::array<int, 3>, 3>;

std::vector<Relation> bianchi_relations() {
    std::vector<Relation> out;
    for (int k = 2; k <= 4; ++k) {
        out.push_back({{{3, k, 2}, {2, k, 3}, {4, k, 1}}});
        out.push_back({{{4, k, 3}, {3, k, 4}, {2, k, 1}}});
        out.push_back({{{2, k, 4}, {4, k, 2}, {3, k, 1}}});
    }
    return out;
}

const std::vector<Relation> kShiftedRelations = {
    {{{2, 4, 2}, {2, 2, 4}, {2, 3, 1}}}, {{{2, 2, 3}, {2, 3, 2}, {2, 4, 1}}}, {{{2, 3, 4}, {2, 4, 3}, {2, 2, 1}}},
    {{{3, 4, 2}, {3, 2, 4}, {3, 3, 1}}}, {{{3, 2, 3}, {3, 3, 2}, {3, 4, 1}}}, {{{3, 3, 4}, {3, 4, 3}, {3, 2, 1}}},
    {{{4, 4, 2}, {4, 2, 4}, {4, 3, 1}}}, {{{4, 2, 3}, {4, 3, 2}, {4, 4, 1}}}, {{{4, 3, 4}, {4, 4, 3}, {4, 2, 1}}},
};

RationalVector zero_row() { return RationalVector(kReductionUnknowns, Rational(0)); }

void add_relation(ReductionSystem& s, const Relation& r, const std::string& group) {
    RationalVector row = zero_row();
    row[dp_column(r[0][0], r[0][1], r[0][2])] += 1;
    row[dp_column(r[1][0], r[1][1], r[1][2])] -= 1;
    row[dp_column(r[2][0], r[2][1], r[2][2])] -= 1;
    s.matrix.push_back(std::move(row));
    s.row_labels.push_back(group + ": " + column_label(dp_column(r[0][0], r[0][1], r[0][2])) + " - " +
                           column_label(dp_column(r[1][0], r[1][1], r[1][2])) + " - " +
                           column_label(dp_column(r[2][0], r[2][1], r[2][2])));
}

}  // namespace

int p_column(int i, int k) {
    if (i < 2 || i > 4 || k < 2 || k > 4) throw std::out_of_range("p index must lie in {2,3,4}");
    return (i - 2) * 3 + (k - 2);
}

int dp_column(int i, int k, int a) {
    if (a < 1 || a > 4) throw std::out_of_range("derivative index must lie in {1,...,4}");
    return 9 + p_column(i, k) * 4 + (a - 1);
}

std::string column_label(int col) {
    if (col < 0 || col >= kReductionUnknowns) throw std::out_of_range("column");
    if (col < 9) return "p" + std::to_string(col / 3 + 2) + std::to_string(col % 3 + 2);
    const int pk = (col - 9) / 4, a = (col - 9) % 4 + 1;
    return "p" + std::to_string(pk / 3 + 2) + std::to_string(pk % 3 + 2) + "," + std::to_string(a);
}

std::string to_string(const Rational& q) { return q.get_str(); }

ReductionSystem build_system(long n, const std::array<Rational, 4>& u, unsigned groups) {
    if (n < 1) throw std::invalid_argument("induction level N must be at least 1");
    if (std::all_of(u.begin(), u.end(), [](const Rational& q) { return q == 0; }))
        throw std::invalid_argument("sample point u must be nonzero");

    ReductionSystem s;
    s.n = n;
    s.u = u;
    s.groups = groups;

    if (groups & kEuler) {
        for (int i = 2; i <= 4; ++i) {
            for (int k = 2; k <= 4; ++k) {
                RationalVector row = zero_row();
                for (int a = 1; a <= 4; ++a) row[dp_column(i, k, a)] += u[a - 1];
                row[p_column(i, k)] -= Rational(n);
                s.matrix.push_back(std::move(row));
                s.row_labels.push_back("euler: " + column_label(p_column(i, k)));
            }
        }
    }
    if (groups & kBase) {
        for (int e = 0; e < 4; ++e) {
            RationalVector row = zero_row();
            for (const Term& t : kBaseEquations[e]) row[p_column(t.i, t.k)] += t.sign * u[t.coeff - 1];
            s.matrix.push_back(std::move(row));
            s.row_labels.push_back("base: equation " + std::to_string(e + 1));
        }
    }
    if (groups & kDerivatives) {
        for (int e = 0; e < 4; ++e) {
            for (int j = 1; j <= 4; ++j) {
                RationalVector row = zero_row();
                for (const Term& t : kBaseEquations[e]) {
                    if (t.coeff == j) row[p_column(t.i, t.k)] += t.sign;
                    row[dp_column(t.i, t.k, j)] += t.sign * u[t.coeff - 1];
                }
                s.matrix.push_back(std::move(row));
                s.row_labels.push_back("derivative: d/du" + std::to_string(j) + " of equation " +
                                       std::to_string(e + 1));
            }
        }
    }
    if (groups & kBianchi)
        for (const auto& r : bianchi_relations()) add_relation(s, r, "bianchi");
    if (groups & kShifted)
        for (const auto& r : kShiftedRelations) add_relation(s, r, "shifted");
    return s;
}

NullspaceResult nullspace(const RationalMatrix& m, const std::vector<int>& column_order) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    std::vector<int> order = column_order;
    if (order.empty()) {
        order.resize(cols);
        std::iota(order.begin(), order.end(), 0);
    }
    if (static_cast<int>(order.size()) != cols) throw std::invalid_argument("column order has wrong length");

    RationalMatrix r = m;
    std::vector<int> pivots;
    int row = 0;
    for (int c : order) {
        if (row == rows) break;
        int sel = -1;
        for (int i = row; i < rows; ++i) {
            if (r[i][c] != 0) {
                sel = i;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(r[row], r[sel]);
        const Rational inv = 1 / r[row][c];
        for (auto& v : r[row]) v *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || r[i][c] == 0) continue;
            const Rational f = r[i][c];
            for (int j = 0; j < cols; ++j)
                if (r[row][j] != 0) r[i][j] -= f * r[row][j];
        }
        pivots.push_back(c);
        ++row;
    }

    NullspaceResult out;
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][f];
        out.basis.push_back(std::move(v));
    }
    out.certificate.rref = std::move(r);
    out.certificate.pivots = std::move(pivots);
    out.certificate.rank = static_cast<int>(out.certificate.pivots.size());
    return out;
}

NullspaceResult nullspace(const ReductionSystem& system) { return nullspace(system.matrix); }

RationalVector multiply(const RationalMatrix& m, const RationalVector& v) {
    RationalVector out;
    out.reserve(m.size());
    for (const auto& row : m) {
        if (row.size() != v.size()) throw std::invalid_argument("dimension mismatch");
        Rational s = 0;
        for (std::size_t j = 0; j < v.size(); ++j) s += row[j] * v[j];
        out.push_back(s);
    }
    return out;
}

SampleOutcome verify_at(long n, const std::array<Rational, 4>& u, unsigned groups) {
    const ReductionSystem sys = build_system(n, u, groups);
    const NullspaceResult ns = nullspace(sys);
    std::vector<int> reversed(kReductionUnknowns);
    std::iota(reversed.rbegin(), reversed.rend(), 0);
    const NullspaceResult ns_rev = nullspace(sys.matrix, reversed);

    SampleOutcome out;
    out.u = u;
    out.rank = ns.certificate.rank;
    out.rank_reversed = ns_rev.certificate.rank;
    out.kernel_dim = static_cast<int>(ns.basis.size());
    out.pass = out.rank == out.rank_reversed;
    for (const auto& v : ns.basis) {
        const auto image = multiply(sys.matrix, v);
        const bool in_kernel = std::all_of(image.begin(), image.end(), [](const Rational& q) { return q == 0; });
        const bool p_zero = std::all_of(v.begin(), v.begin() + 9, [](const Rational& q) { return q == 0; });
        if (!in_kernel || !p_zero) {
            out.pass = false;
            if (out.offending.empty()) out.offending = v;
        }
    }
    return out;
}

VerificationReport verify_forces_zero(long n, int samples, std::uint64_t seed, unsigned groups) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.n = n;
    rep.groups = groups;
    Rng rng(seed);
    rep.pass = true;
    for (int s = 0; s < samples; ++s) {
        std::array<Rational, 4> u;
        do {
            for (auto& c : u) c = static_cast<long>(rng.next() % 19) - 9;
        } while (std::all_of(u.begin(), u.end(), [](const Rational& q) { return q == 0; }));
        SampleOutcome o = verify_at(n, u, groups);
        rep.pass = rep.pass && o.pass;
        if (!rep.samples.empty() && o.rank != rep.samples.front().rank) rep.rank_consistent = false;
        rep.samples.push_back(std::move(o));
    }
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string format_certificate(const ReductionSystem& system, const EchelonCertificate& cert) {
    std::ostringstream os;
    os << "# reduced row-echelon certificate\n";
    os << "# N = " << system.n << ", u = (" << system.u[0] << ", " << system.u[1] << ", " << system.u[2] << ", "
       << system.u[3] << ")\n";
    os << "# rank = " << cert.rank << ", kernel dimension = " << kReductionUnknowns - cert.rank << "\n";
    os << "# columns:";
    for (int c = 0; c < kReductionUnknowns; ++c) os << ' ' << column_label(c);
    os << "\n";
    for (std::size_t i = 0; i < cert.pivots.size(); ++i) {
        os << column_label(cert.pivots[i]) << " =";
        bool any = false;
        for (int c = 0; c < kReductionUnknowns; ++c) {
            if (c == cert.pivots[i] || cert.rref[i][c] == 0) continue;
            const Rational coef = -cert.rref[i][c];
            os << ' ' << (coef > 0 ? "+" : "-") << ' ' << abs(coef) << ' ' << column_label(c);
            any = true;
        }
        if (!any) os << " 0";
        os << "\n";
    }
    return os.str();
}

Rational sphere_moment(const std::vector<int>& alpha, int n) {
    if (n < 2) throw std::invalid_argument("sphere dimension n must be at least 2");
    if (static_cast<int>(alpha.size()) > n) {
        for (std::size_t i = n; i < alpha.size(); ++i)
            if (alpha[i] != 0) throw std::invalid_argument("more nonzero exponents than coordinates");
    }
    int total = 0;
    for (int a : alpha) {
        if (a < 0) throw std::invalid_argument("exponents must be non-negative");
        if (a % 2 != 0) return Rational(0);
        total += a;
    }
    mpz_class num = 1;
    for (int a : alpha)
        for (int j = a - 1; j > 0; j -= 2) num *= j;
    mpz_class den = 1;
    for (int k = 0; k < total / 2; ++k) den *= n + 2 * k;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace ymlab
