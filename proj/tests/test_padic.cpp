#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quintic/padic.hpp"

using namespace quintic;

TEST_CASE("PadicNum construction and valuation", "[padic]") {
    PadicNum a(7, 3, 98);  // 2 * 7^2
    REQUIRE(a.valuation() == 2);
    REQUIRE(a.unit_part() == 2);
    REQUIRE(!a.is_unit());
    REQUIRE(PadicNum(7, 3, 0).valuation() == 3);
    REQUIRE_THROWS_AS(PadicNum(2, 3, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(PadicNum(7, 0, 1), std::invalid_argument);
}

TEST_CASE("PadicNum truncation is a ring homomorphism", "[padic][property]") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Int x(static_cast<unsigned long>(rng() % 117649));
        Int y(static_cast<unsigned long>(rng() % 117649));
        PadicNum a(7, 6, x), b(7, 6, y);
        for (int M = 1; M <= 6; ++M) {
            REQUIRE((a + b).truncate(M) == a.truncate(M) + b.truncate(M));
            REQUIRE((a * b).truncate(M) == a.truncate(M) * b.truncate(M));
        }
    }
}

TEST_CASE("PadicNum inverse and division", "[padic]") {
    PadicNum a(7, 4, 3);
    REQUIRE(a * a.inv() == a.one());
    PadicNum b(7, 4, 7);
    REQUIRE_THROWS_AS(b.inv(), PrecisionLoss);
}

TEST_CASE("padic sqrt", "[padic]") {
    PadicNum two(7, 5, 2);
    PadicNum r = padic_sqrt_unit(two);
    REQUIRE(r * r == two);
    REQUIRE_THROWS_AS(padic_sqrt_unit(PadicNum(5, 3, 3)), std::domain_error);
}

TEST_CASE("hensel_quadratic_roots: x^2 - 1 over Z_5, N=3", "[padic]") {
    PadicNum a(5, 3, 1), b(5, 3, 0), c(5, 3, -1);
    auto roots = hensel_quadratic_roots(a, b, c);
    REQUIRE(roots.status == QuadraticRootStatus::TwoRoots);
    std::set<Int> rs{roots.r1.residue(), roots.r2.residue()};
    REQUIRE(rs == std::set<Int>{Int(1), Int(124)});
}

TEST_CASE("hensel_quadratic_roots: x^2 - 2 over Z_7, N=3", "[padic]") {
    // Brute-force oracle over residues mod 343: 108^2 = 11664 = 34*343 + 2.
    std::uint64_t p3 = 343;
    std::set<Int> expect;
    for (std::uint64_t x = 0; x < p3; ++x)
        if ((x * x) % p3 == 2) expect.insert(Int(static_cast<unsigned long>(x)));
    REQUIRE(expect == std::set<Int>{Int(108), Int(235)});
    PadicNum a(7, 3, 1), b(7, 3, 0), c(7, 3, -2);
    auto roots = hensel_quadratic_roots(a, b, c);
    REQUIRE(roots.status == QuadraticRootStatus::TwoRoots);
    REQUIRE(std::set<Int>{roots.r1.residue(), roots.r2.residue()} == expect);
}

TEST_CASE("hensel_quadratic_roots: x^2 - 3 over Z_5 has no root", "[padic]") {
    PadicNum a(5, 3, 1), b(5, 3, 0), c(5, 3, -3);
    auto roots = hensel_quadratic_roots(a, b, c);
    REQUIRE(roots.status == QuadraticRootStatus::NoRoot);
}

TEST_CASE("hensel_quadratic_roots: degenerate and reduced-precision cases", "[padic]") {
    PadicNum p7(7, 4, 7);
    REQUIRE_THROWS_AS(hensel_quadratic_roots(p7, p7.one(), p7.one()), std::domain_error);
    // x^2 - 49: disc = 4*49, valuation 2, roots +-7 known mod 7^3.
    PadicNum a(7, 4, 1), b(7, 4, 0), c(7, 4, -49);
    auto roots = hensel_quadratic_roots(a, b, c);
    REQUIRE(roots.status == QuadraticRootStatus::ReducedPrecision);
    REQUIRE(roots.r1.precision() == 3);
    std::set<Int> rs{roots.r1.residue(), roots.r2.residue()};
    REQUIRE(rs == std::set<Int>{Int(7), Int(343 - 7)});
    // Odd valuation: x^2 - 7 has no root.
    auto none = hensel_quadratic_roots(a, b, PadicNum(7, 4, -7));
    REQUIRE(none.status == QuadraticRootStatus::NoRoot);
}

TEST_CASE("quadratic roots squared back reproduce the constant term", "[padic][property]") {
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 200) {
        PadicNum a(7, 5, static_cast<std::int64_t>(1 + rng() % 6));
        PadicNum b(7, 5, static_cast<std::int64_t>(rng() % 16807));
        PadicNum c(7, 5, static_cast<std::int64_t>(rng() % 16807));
        auto roots = hensel_quadratic_roots(a, b, c);
        if (roots.status != QuadraticRootStatus::TwoRoots) continue;
        for (const PadicNum& r : {roots.r1, roots.r2})
            REQUIRE((a * r * r + b * r + c).is_zero());
        // Vieta: product of roots = c/a.
        REQUIRE(roots.r1 * roots.r2 == c / a);
        ++checked;
    }
}

TEST_CASE("Qp capped-relative arithmetic", "[padic]") {
    Qp a = Qp::from_padic(PadicNum(7, 6, 98));  // 2*7^2 + O(7^6)
    REQUIRE(a.valuation() == 2);
    REQUIRE(a.rel_prec() == 4);
    Qp b = a.inv();
    REQUIRE(b.valuation() == -2);
    REQUIRE((a * b - a.one()).is_zero());
    // Cancellation loses absolute precision honestly.
    Qp c = Qp(7, 0, 6, Int(1)) - Qp(7, 0, 6, Int(1) + Int(2401));
    REQUIRE(!c.is_zero());
    REQUIRE(c.valuation() == 4);
    REQUIRE(c.abs_prec() == 6);
    Qp z = Qp(7, 0, 4, Int(3)) - Qp(7, 0, 4, Int(3));
    REQUIRE(z.is_zero());
    REQUIRE(z.valuation() == 4);  // zero to absolute precision 4
    REQUIRE_THROWS_AS(z.inv(), PrecisionLoss);
}

TEST_CASE("Qp sqrt and shift", "[padic]") {
    Qp a(7, 2, 4, Int(2));  // 2*7^2
    Qp r = a.sqrt();
    REQUIRE((r * r - a).is_zero());
    REQUIRE(r.valuation() == 1);
    REQUIRE(a.shift(-2).valuation() == 0);
}

TEST_CASE("PadicNum serialization round trip", "[padic]") {
    PadicNum a(7, 6, 98);
    REQUIRE(a.str() == "2*7^2 mod 7^6");
    REQUIRE(PadicNum::parse(a.str(), 7, 6) == a);
    PadicNum u(7, 6, 5);
    REQUIRE(u.str() == "5 mod 7^6");
    REQUIRE(PadicNum::parse("5", 7, 6) == u);
    REQUIRE(PadicNum::parse("0 mod 7^6", 0, 0).is_zero());
}
