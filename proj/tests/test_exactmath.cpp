#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "gepner/exactmath.hpp"
#include "gepner/linalg.hpp"

using namespace gepner;
using cld = std::complex<long double>;

namespace {

// Oracle: direct floating evaluation of sum c_k e^{2 pi i k/d}.
cld naive_value(const CycloNum& x) {
    cld s = 0;
    for (size_t k = 0; k < x.coeffs().size(); ++k) {
        long double ang = 2.0L * M_PIl * static_cast<long double>(k) / x.d();
        s += x.coeffs()[k].convert_to<long double>() * cld(std::cos(ang), std::sin(ang));
    }
    return s;
}

CycloNum random_cyclo(std::mt19937& rng, int d) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::vector<Rational> cs(static_cast<size_t>(d));
    for (auto& c : cs) c = Rational(num(rng), den(rng));
    return CycloNum(d, cs);
}

}  // namespace

TEST_CASE("cyclo constructor values") {
    CycloNum i = cyclo(4, 1);
    CHECK(i.coeffs() == std::vector<Rational>{0, 1});
    CHECK(cyclo(3, 2) == CycloNum(-1) - cyclo(3, 1));
    CHECK(cyclo(6, 3) == CycloNum(-1));
    CHECK(cyclo(5, 5) == CycloNum(1));
    CHECK(cyclo(7, -1) == cyclo(7, 6));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == std::vector<Integer>{-1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<Integer>{1, 0, 1});
    CHECK(cyclotomic_poly(6) == std::vector<Integer>{1, -1, 1});
    CHECK(cyclotomic_poly(12) == std::vector<Integer>{1, 0, -1, 0, 1});
    for (int d = 1; d <= 60; ++d) CHECK(static_cast<int>(cyclotomic_poly(d).size()) - 1 == euler_phi(d));
}

TEST_CASE("zeta^d = 1 and Phi_d(zeta) = 0") {
    for (int d : {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 30}) {
        CHECK(cyclo(d, 1).pow(d) == CycloNum(1));
        CycloNum s(0);
        const auto& phi = cyclotomic_poly(d);
        for (size_t k = 0; k < phi.size(); ++k) s += CycloNum(Rational(phi[k])) * cyclo(d, static_cast<long long>(k));
        CHECK(s.is_zero());
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(12345);
    for (int d : {3, 4, 6, 12}) {
        for (int t = 0; t < 1000; ++t) {
            CycloNum x = random_cyclo(rng, d), y = random_cyclo(rng, d), z = random_cyclo(rng, d);
            REQUIRE(x * y == y * x);
            REQUIRE(x * (y + z) == x * y + x * z);
            if (t % 10 == 0) REQUIRE((x * y) * z == x * (y * z));
        }
    }
}

TEST_CASE("inverse and mixed orders") {
    std::mt19937 rng(7);
    for (int d : {3, 5, 8, 12}) {
        for (int t = 0; t < 20; ++t) {
            CycloNum x = random_cyclo(rng, d);
            if (x.is_zero()) continue;
            CHECK(x * x.inverse() == CycloNum(1));
        }
    }
    // Q(zeta_4) and Q(zeta_3) meet inside Q(zeta_12)
    CycloNum s = cyclo(4, 1) + cyclo(3, 1);
    CHECK(s.d() == 12);
    cld v = naive_value(s);
    CHECK(std::abs(v - (cld(0, 1) + std::polar(1.0L, 2 * M_PIl / 3))) < 1e-15L);
    CHECK(cyclo(6, 2) == cyclo(3, 1));
}

TEST_CASE("conjugation") {
    CHECK(cyclo(4, 1).conj() == cyclo(4, 3));
    CycloNum x = CycloNum(2) + cyclo(5, 2);
    CHECK(x.conj().conj() == x);
    CHECK(std::abs(naive_value(x.conj()) - std::conj(naive_value(x))) < 1e-15L);
}

TEST_CASE("sqrt_neg") {
    for (int q : {1, 2, 3, 5, 6, 7, 12, 15}) {
        CycloNum r = sqrt_neg(Rational(q));
        CHECK(r * r == CycloNum(-q));
        CHECK(std::abs(naive_value(r) - cld(0, std::sqrt(static_cast<long double>(q)))) < 1e-12L);
    }
    CycloNum r = sqrt_neg(Rational(3, 4));
    CHECK(r * r == CycloNum(Rational(-3, 4)));
    CHECK(sqrt_neg(Rational(3)) == CycloNum(2) * cyclo(6, 1) - CycloNum(1));
}

TEST_CASE("embed contains the true value") {
    CHECK(embed(cyclo(4, 1)).contains(cld(0, 1)));
    ComplexInterval e = embed(CycloNum(1) - cyclo(3, 1));
    CHECK(e.contains(cld(1.5L, -std::sqrt(3.0L) / 2)));
    CHECK(std::fabs(e.im + 0.8660254037844386L) < 1e-12L);
    ComplexInterval z = embed(CycloNum(0));
    CHECK(z.re == 0);
    CHECK(z.im == 0);
    CHECK(z.radius == 0);
    std::mt19937 rng(99);
    for (int t = 0; t < 200; ++t) {
        int d = 3 + t % 10;
        CycloNum x = random_cyclo(rng, d), y = random_cyclo(rng, d);
        ComplexInterval ex = embed(x, 40), ey = embed(y, 40), exy = embed(x * y, 40);
        long double h = x.height().convert_to<long double>();
        CHECK(ex.radius <= std::ldexp(1.0L, -38) * h + 1e-15L);
        cld prod = cld(ex.re, ex.im) * cld(ey.re, ey.im);
        long double slack = 4 * (ex.radius * std::abs(cld(ey.re, ey.im)) + ey.radius * std::abs(cld(ex.re, ex.im)) +
                                 ex.radius * ey.radius) + exy.radius;
        CHECK(std::abs(prod - cld(exy.re, exy.im)) <= slack + 1e-15L);
        CHECK(std::abs(naive_value(x) - cld(ex.re, ex.im)) <= 2 * ex.radius + 1e-15L);
    }
}

TEST_CASE("sign_real") {
    CycloNum sqrt2 = cyclo(8, 1) + cyclo(8, -1);
    CHECK(sign_real(sqrt2) == 1);
    CHECK(sign_real(sqrt2 - CycloNum(Rational(141421, 100000))) == 1);
    CHECK(sign_real(sqrt2 - CycloNum(Rational(141422, 100000))) == -1);
    CHECK(sign_real(CycloNum(0)) == 0);
    CHECK_THROWS(sign_real(cyclo(4, 1)));
}

TEST_CASE("phase_of exact phases") {
    Phase p = phase_of(CycloNum(1) - cyclo(4, 1), Rational(-1));
    CHECK(p.exact);
    CHECK(p.value == Rational(-1, 4));
    Phase m = phase_of(CycloNum(-1), Rational(0));
    CHECK(m.exact);
    CHECK(m.value == 1);
    Phase cw = phase_of(CycloNum(2) + CycloNum(2) * cyclo(4, 1), Rational(0));
    CHECK(cw.exact);
    CHECK(cw.value == Rational(1, 4));
    CHECK(phase_of(CycloNum(5), Rational(0)).value == 2);
    CHECK(phase_of(CycloNum(5), Rational(-1)).value == 0);
    CHECK_THROWS_AS(phase_of(CycloNum(0), Rational(0)), ZeroValue);
}

TEST_CASE("phase_of shifts by 2/d under multiplication by zeta") {
    std::mt19937 rng(3);
    for (int d : {3, 4, 5, 6, 8, 12}) {
        for (int k = 0; k < 2 * d; ++k) {
            CycloNum x = CycloNum(1) - cyclo(d, k);
            if (x.is_zero()) continue;
            Phase a = phase_of(x, Rational(0)), b = phase_of(cyclo(d, 1) * x, Rational(0));
            REQUIRE(a.exact);
            REQUIRE(b.exact);
            CHECK(mod2(b.value - a.value - Rational(2, d)) == 0);
        }
    }
}

TEST_CASE("phase_of float fallback") {
    CycloNum x = CycloNum(2) + cyclo(4, 1);  // 2 + i
    Phase p = phase_of(x, Rational(0));
    CHECK_FALSE(p.exact);
    CHECK(std::fabs(p.approx - std::atan2(1.0, 2.0) / M_PI) < 1e-9);
    Phase q = phase_of(-x, Rational(-1));
    CHECK(std::fabs(q.approx - (std::atan2(1.0, 2.0) / M_PI - 1)) < 1e-9);
}

TEST_CASE("json round trip") {
    CycloNum x = CycloNum(Rational(3, 2)) - cyclo(6, 1);
    nlohmann::json j = x;
    CHECK(j["d"] == 6);
    CHECK(j["coeffs"][0] == "3/2");
    CHECK(j.get<CycloNum>() == x);
}

TEST_CASE("exact linear algebra over cyclotomic fields") {
    CMat m(2, 2);
    m << cyclo(4, 1), CycloNum(1), CycloNum(1), cyclo(4, 1);
    auto inv = inverse(m);
    REQUIRE(inv);
    CMat id = m * (*inv);
    CHECK(id(0, 0) == CycloNum(1));
    CHECK(id(0, 1).is_zero());
    CHECK(id(1, 0).is_zero());
    CHECK(determinant(m) == CycloNum(-2));
    CMat sing(2, 2);
    sing << CycloNum(1), cyclo(4, 1), cyclo(4, 1), CycloNum(-1);
    CHECK(rank(sing) == 1);
    CMat k = kernel(sing);
    CHECK(k.cols() == 1);
    CHECK((sing * k)(0, 0).is_zero());
}
