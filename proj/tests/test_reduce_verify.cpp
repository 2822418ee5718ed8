#include <doctest.h>

#include "sphere_oracle.hpp"
#include "ymlab/reduce_verify.hpp"

using namespace ymlab;
using ymtest::each_exponent;
using ymtest::oracle_moment;

namespace {

const std::array<Rational, 4> kOnes{1, 1, 1, 1};

}  // namespace

TEST_CASE("system shape and labels") {
    const ReductionSystem s = build_system(3, {2, -1, 5, 7});
    CHECK(s.matrix.size() == kReductionRows);
    for (const auto& row : s.matrix) CHECK(row.size() == kReductionUnknowns);
    CHECK(s.row_labels.size() == s.matrix.size());
    CHECK(column_label(p_column(2, 2)) == "p22");
    CHECK(column_label(dp_column(3, 4, 1)) == "p34,1");
    CHECK_THROWS_AS(p_column(1, 2), std::out_of_range);
    CHECK_THROWS_AS(dp_column(2, 2, 5), std::out_of_range);
    CHECK_THROWS_AS(build_system(0, kOnes), std::invalid_argument);
    CHECK_THROWS_AS(build_system(1, {0, 0, 0, 0}), std::invalid_argument);
    CHECK(build_system(1, kOnes, kWithoutRelations).matrix.size() == 29);
}

TEST_CASE("first contracted equation at u = e_1") {
    const ReductionSystem s = build_system(1, {1, 0, 0, 0});
    const auto& row = s.matrix[9];
    CHECK(s.row_labels[9] == "base: equation 1");
    for (int c = 0; c < kReductionUnknowns; ++c) {
        const bool diagonal = c == p_column(2, 2) || c == p_column(3, 3) || c == p_column(4, 4);
        CHECK(row[c] == (diagonal ? 1 : 0));
    }
}

TEST_CASE("Euler row") {
    const ReductionSystem s = build_system(1, kOnes);
    const auto& row = s.matrix[0];
    CHECK(row[p_column(2, 2)] == -1);
    for (int a = 1; a <= 4; ++a) CHECK(row[dp_column(2, 2, a)] == 1);
    int nonzero = 0;
    for (const auto& v : row) nonzero += v != 0;
    CHECK(nonzero == 5);
}

TEST_CASE("nullspace") {
    RationalMatrix id(6, RationalVector(4, 0));
    for (int i = 0; i < 4; ++i) id[i][i] = 1;
    CHECK(nullspace(id).basis.empty());

    const RationalMatrix m = {{1, 2, 3}, {2, 4, 6}};
    const NullspaceResult r = nullspace(m);
    CHECK(r.certificate.rank == 1);
    CHECK(r.basis.size() == 2);
    for (const auto& v : r.basis)
        for (const auto& x : multiply(m, v)) CHECK(x == 0);

    for (long n : {1L, 4L, 8L}) {
        const ReductionSystem s = build_system(n, {3, -2, 7, 1});
        const NullspaceResult fwd = nullspace(s);
        std::vector<int> reversed(kReductionUnknowns);
        std::iota(reversed.rbegin(), reversed.rend(), 0);
        const NullspaceResult rev = nullspace(s.matrix, reversed);
        CHECK(fwd.certificate.rank == rev.certificate.rank);
        CHECK(static_cast<int>(fwd.basis.size()) == kReductionUnknowns - fwd.certificate.rank);
        for (const auto& v : fwd.basis)
            for (const auto& x : multiply(s.matrix, v)) CHECK(x == 0);
        for (const auto& v : rev.basis)
            for (const auto& x : multiply(s.matrix, v)) CHECK(x == 0);
    }
}

TEST_CASE("the relations force p = 0") {
    const SampleOutcome one = verify_at(1, kOnes);
    CHECK(one.pass);
    CHECK(one.rank == one.rank_reversed);
    CHECK(one.kernel_dim == kReductionUnknowns - one.rank);
    for (long n = 1; n <= 8; ++n) {
        const VerificationReport r = verify_forces_zero(n, 5, 100 + n);
        CHECK(r.pass);
        CHECK(r.rank_consistent);
        CHECK(r.samples.size() == 5);
    }
}

TEST_CASE("ablation control fails") {
    const SampleOutcome s = verify_at(1, kOnes, kWithoutRelations);
    CHECK(!s.pass);
    REQUIRE(s.offending.size() == kReductionUnknowns);
    bool some = false;
    for (int c = 0; c < 9; ++c) some = some || s.offending[c] != 0;
    CHECK(some);
    for (long n = 1; n <= 8; ++n) CHECK(!verify_forces_zero(n, 2, n, kWithoutRelations).pass);
}

TEST_CASE("verification is deterministic in the seed") {
    const VerificationReport a = verify_forces_zero(3, 4, 42), b = verify_forces_zero(3, 4, 42);
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].u == b.samples[i].u);
}

TEST_CASE("certificate dump") {
    const ReductionSystem s = build_system(2, kOnes);
    const std::string text = format_certificate(s, nullspace(s).certificate);
    CHECK(text.find("p22") != std::string::npos);
}

TEST_CASE("sphere moments") {
    CHECK(sphere_moment({2, 0, 0, 0}, 4) == Rational(1, 4));
    CHECK(sphere_moment({4, 0, 0, 0}, 4) == Rational(1, 8));
    CHECK(sphere_moment({1, 1, 0, 0}, 4) == 0);
    CHECK(sphere_moment({}, 4) == 1);
    CHECK(sphere_moment({2}, 3) == Rational(1, 3));
    CHECK_THROWS(sphere_moment({2, 0}, 1));
    CHECK_THROWS(sphere_moment({-2, 0}, 4));
    CHECK(sphere_moment({2, 0, 0, 0, 0}, 4) == Rational(1, 4));
    CHECK_THROWS(sphere_moment({0, 0, 0, 0, 2}, 4));

    for (int n : {2, 3, 4, 5}) {
        std::vector<int> alpha(n, 0);
        int checked = 0;
        each_exponent(n, 8, alpha, 0, [&](const std::vector<int>& a) {
            const Rational m = sphere_moment(a, n);
            CHECK(m == oracle_moment(a));
            for (int v : a)
                if (v % 2) CHECK(m == 0);
            ++checked;
        });
        CHECK(checked > 0);
    }
}
