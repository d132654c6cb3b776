#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <random>

#include "errors.hpp"
#include "fock.hpp"
#include "oracle.hpp"

using namespace majed;

TEST_CASE("sector dimensions") {
    CHECK(binomial(28, 7) == 1184040);
    CHECK(SectorBasis(7, 7, Parity::Even).size() == 592020);
    CHECK(SectorBasis(7, 7, Parity::Odd).size() == 592020);
    CHECK(SectorBasis(1, 0, Parity::Unrestricted).size() == 1);
    CHECK(SectorBasis(2, 8, Parity::Unrestricted).size() == 1);
    // One site, two particles: only {up+, down-} and {down+, up-} have even P+.
    const SectorBasis b(1, 2, Parity::Even);
    REQUIRE(b.size() == 2);
    CHECK(b[0] == 0b0110);
    CHECK(b[1] == 0b1001);
}

TEST_CASE("enumeration is sorted, filtered and invertible") {
    for (int L = 1; L <= 4; ++L)
        for (int n = 0; n <= 4 * L; n += 3)
            for (Parity p : {Parity::Even, Parity::Odd, Parity::Unrestricted}) {
                const SectorBasis b(L, n, p);
                std::uint64_t expected = 0;
                for (std::uint64_t s = 0; s < (std::uint64_t{1} << (4 * L)); ++s)
                    if (std::popcount(s) == n && (p == Parity::Unrestricted || parity_plus(s) == static_cast<int>(p)))
                        ++expected;
                REQUIRE(b.size() == expected);
                for (std::size_t i = 0; i < b.size(); ++i) {
                    if (i) CHECK(b[i - 1] < b[i]);
                    CHECK(b.find(b[i]) == static_cast<std::int64_t>(i));
                }
            }
    const SectorBasis even(3, 4, Parity::Even);
    CHECK(even.find(0b0001'0001'0001'0001) == -1);  // wrong particle number
    CHECK(even.find(0b1) == -1);
}

TEST_CASE("wide lattices fall back to the hash lookup") {
    const SectorBasis b(12, 2, Parity::Even);
    for (std::size_t i = 0; i < b.size(); i += 37) CHECK(b.find(b[i]) == static_cast<std::int64_t>(i));
}

TEST_CASE("bad sector arguments are domain errors") {
    CHECK_THROWS_AS(SectorBasis(0, 0, Parity::Even), DomainError);
    CHECK_THROWS_AS(SectorBasis(17, 1, Parity::Even), DomainError);
    CHECK_THROWS_AS(SectorBasis(2, 9, Parity::Even), DomainError);
    CHECK_THROWS_AS(SectorBasis(2, -1, Parity::Even), DomainError);
}

TEST_CASE("parity operators") {
    for (std::uint64_t s = 0; s < (1u << 12); ++s) {
        CHECK((parity_plus(s) + parity_minus(s)) % 2 == std::popcount(s) % 2);
        if (std::popcount(s) % 2 == 0) CHECK(parity_plus(s) == parity_minus(s));
    }
    CHECK(parity_plus(0b0001) == 1);  // up+
    CHECK(parity_plus(0b1000) == 1);  // down-
    CHECK(parity_plus(0b0110) == 0);
}

TEST_CASE("single mode operators carry the Jordan-Wigner sign") {
    const std::uint64_t s = 0b1011'0110;
    for (int m = 0; m < 8; ++m) {
        const int below = std::popcount(s & ((std::uint64_t{1} << m) - 1));
        const auto c = apply_mode_op(OpKind::Create, m, s);
        const auto a = apply_mode_op(OpKind::Annihilate, m, s);
        if ((s >> m) & 1) {
            CHECK_FALSE(c.has_value());
            REQUIRE(a.has_value());
            CHECK(a->sign == (below % 2 ? -1 : 1));
        } else {
            CHECK_FALSE(a.has_value());
            REQUIRE(c.has_value());
            CHECK(c->sign == (below % 2 ? -1 : 1));
            CHECK(c->state == (s | (std::uint64_t{1} << m)));
        }
    }
}

TEST_CASE("creation is nilpotent and operators anticommute") {
    for (std::uint64_t s = 0; s < 256; ++s)
        for (int m = 0; m < 8; ++m) {
            const ModeOp twice[] = {{OpKind::Create, m}, {OpKind::Create, m}};
            CHECK_FALSE(apply_string(twice, s).has_value());
            for (int n = 0; n < 8; ++n) {
                // {a_m, a^dag_n} = delta_mn
                const ModeOp an[] = {{OpKind::Annihilate, m}, {OpKind::Create, n}};
                const ModeOp na[] = {{OpKind::Create, n}, {OpKind::Annihilate, m}};
                const auto x = apply_string(an, s), y = apply_string(na, s);
                int coeff = 0;
                if (x) coeff += x->sign * (x->state == s ? 1 : 0);
                if (y) coeff += y->sign * (y->state == s ? 1 : 0);
                if (m == n) {
                    CHECK(coeff == 1);
                } else {
                    CHECK(x.has_value() == y.has_value());
                    if (x && y) CHECK(x->sign == -y->sign);
                }
            }
        }
}

TEST_CASE("operator strings agree with the Kronecker-product Jordan-Wigner oracle") {
    const int M = 8;
    std::vector<oracle::Sparse> a;
    for (int m = 0; m < M; ++m) a.push_back(oracle::annihilator(m, M));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> mode(0, M - 1), kind(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ModeOp> ops;
        oracle::Sparse product(1 << M, 1 << M);
        product.setIdentity();
        const int len = 1 + trial % 4;
        for (int i = 0; i < len; ++i) {
            const int m = mode(rng);
            const bool create = kind(rng) == 1;
            ops.push_back({create ? OpKind::Create : OpKind::Annihilate, m});
            const oracle::Sparse op = create ? oracle::Sparse(a[m].transpose()) : a[m];
            product = product * op;  // written left to right, acts right to left
        }
        const Eigen::MatrixXd dense(product);
        for (std::uint64_t s = 0; s < (1u << M); s += 3) {
            const auto hit = apply_string(ops, s);
            for (std::uint64_t t = 0; t < (1u << M); ++t) {
                const double expected = dense(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s));
                const double got = hit && hit->state == t ? hit->sign : 0.0;
                if (expected != got) FAIL("mismatch at trial " << trial << " s=" << s << " t=" << t);
            }
        }
    }
}

TEST_CASE("spin-exchange string sign against the oracle") {
    // a^dag_{up+} a^dag_{down-} a_{down+} a_{up-} on one site: |down+, up-> -> sign |up+, down->
    const ModeOp ops[] = {{OpKind::Create, 0}, {OpKind::Create, 3}, {OpKind::Annihilate, 1}, {OpKind::Annihilate, 2}};
    const auto hit = apply_string(ops, 0b0110);
    REQUIRE(hit.has_value());
    CHECK(hit->state == 0b1001);
    const Eigen::MatrixXd op(oracle::Sparse(oracle::annihilator(0, 4).transpose()) *
                             oracle::Sparse(oracle::annihilator(3, 4).transpose()) * oracle::annihilator(1, 4) *
                             oracle::annihilator(2, 4));
    CHECK(op(0b1001, 0b0110) == hit->sign);
}

TEST_CASE("sign corruption hook drops every sign") {
    testing::set_sign_corruption(true);
    const auto hit = apply_mode_op(OpKind::Create, 3, 0b0111);
    testing::set_sign_corruption(false);
    REQUIRE(hit.has_value());
    CHECK(hit->sign == 1);
    CHECK(apply_mode_op(OpKind::Create, 3, 0b0111)->sign == -1);
}

TEST_CASE("species and parity names round-trip") {
    for (Species s : kAllSpecies) CHECK(parse_species(species_name(s)) == s);
    for (Parity p : {Parity::Even, Parity::Odd, Parity::Unrestricted}) CHECK(parse_parity(parity_name(p)) == p);
    CHECK_FALSE(parse_parity("sideways").has_value());
}
