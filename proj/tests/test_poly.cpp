#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "regcert/poly.hpp"

using namespace regcert;

static Poly X() { return Poly::variable(kVarX); }
static Poly Y() { return Poly::variable(kVarY); }
static Poly C1() { return Poly::variable(0); }
static Poly N(long v) { return Poly::from_int(v); }

static Poly rand_poly(std::mt19937_64& rng, int max_terms = 4, int max_deg = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long> coeff(-5, 5);
    Poly p;
    int n = nterms(rng);
    for (int i = 0; i < n; i++) {
        Poly t = N(coeff(rng));
        t = t * Poly::variable(kVarX, unsigned(deg(rng)));
        t = t * Poly::variable(kVarY, unsigned(deg(rng)));
        if (deg(rng) == 0) t = t * Poly::variable(0, unsigned(deg(rng)));
        p += t;
    }
    return p;
}

TEST_CASE("arithmetic sanity") {
    Poly p = (X() + Y()) * (X() - Y());
    CHECK(p == X() * X() - Y() * Y());
    CHECK((X() + Y()).pow(2) == X() * X() + N(2) * X() * Y() + Y() * Y());
    CHECK(p.deg(kVarX) == 2);
    CHECK(p.ord(kVarX) == 0);
    CHECK((X() * X() * Y()).ord(kVarX) == 2);
}

TEST_CASE("derivative and theta") {
    Poly p = X().pow(3) * Y() + N(2) * Y();
    CHECK(p.derivative(kVarX) == N(3) * X().pow(2) * Y());
    CHECK(p.theta(kVarX) == N(3) * X().pow(3) * Y());
    CHECK(p.theta(kVarY) == X().pow(3) * Y() + N(2) * Y());
}

TEST_CASE("gcd basics") {
    Poly a = (X() + Y()) * (X() - Y());
    Poly b = (X() + Y()) * X();
    CHECK(Poly::gcd(a, b) == X() + Y());
    CHECK(Poly::gcd(a, Poly()) == a.normalized());
    CHECK(Poly::gcd(N(6), N(4)) == N(2));
    // content is included
    CHECK(Poly::gcd(N(2) * X(), N(4) * X() * Y()) == N(2) * X());
}

TEST_CASE("gcd randomized: g divides both and f*gcd(a,b) = gcd(fa, fb) up to sign") {
    std::mt19937_64 rng(777001);
    int done = 0;
    while (done < 60) {
        Poly a = rand_poly(rng), b = rand_poly(rng), f = rand_poly(rng, 3, 2);
        if (a.is_zero() || b.is_zero() || f.is_zero()) continue;
        done++;
        Poly g = Poly::gcd(a, b);
        CHECK(Poly::divides(g, a));
        CHECK(Poly::divides(g, b));
        Poly lhs = f * g;
        if (lhs.leading_coeff() < 0) lhs = -lhs;
        // gcd over Z includes integer content and is canonical up to sign
        CHECK(lhs == Poly::gcd(f * a, f * b));
    }
}

TEST_CASE("exact division round trips") {
    std::mt19937_64 rng(777002);
    int done = 0;
    while (done < 60) {
        Poly a = rand_poly(rng), b = rand_poly(rng);
        if (a.is_zero() || b.is_zero()) continue;
        done++;
        CHECK(Poly::exact_div(a * b, b) == a);
        CHECK(Poly::divides(b, a * b));
    }
}

TEST_CASE("resultant") {
    // res_y(y^2 - x^3, y - x) = x^2 - x^3
    Poly r = Poly::resultant(Y() * Y() - X().pow(3), Y() - X(), kVarY);
    CHECK(r == X() * X() - X().pow(3));
    // common factor means zero resultant
    Poly s = Poly::resultant((Y() - X()) * Y(), (Y() - X()) * X(), kVarY);
    CHECK(s.is_zero());
    // resultant vanishes exactly at common roots: res_x(x-1, x-2) != 0
    CHECK_FALSE(Poly::resultant(X() - N(1), X() - N(2), kVarX).is_zero());
}

TEST_CASE("resultant vanishes at common zeros (randomized)") {
    std::mt19937_64 rng(777003);
    int done = 0;
    while (done < 30) {
        // construct polynomials with the common zero (1, 2)
        Poly base1 = rand_poly(rng), base2 = rand_poly(rng);
        Poly f = (X() - N(1)) * base1 + (Y() - N(2)) * base2;
        Poly g = (X() - N(1)) * rand_poly(rng) + (Y() - N(2)) * rand_poly(rng);
        if (f.deg(kVarY) < 1 || g.deg(kVarY) < 1) continue;
        done++;
        Poly r = Poly::resultant(f, g, kVarY);
        // r(1) must vanish
        Poly at1 = r.substitute({{kVarX, N(1)}});
        CHECK(at1.is_zero());
    }
}

TEST_CASE("divides_power_of") {
    Poly d = (Y() - N(1)).pow(3);
    CHECK(Poly::divides_power_of(d, Y() - N(1)));
    CHECK(Poly::divides_power_of(d, (Y() - N(1)) * Y()));
    CHECK_FALSE(Poly::divides_power_of(d * Y(), Y() - N(1)));
    CHECK(Poly::divides_power_of(N(5), Y())); // constants are units
}

TEST_CASE("stretch and swap") {
    Poly p = X() * X() * Y() + X();
    CHECK(p.stretch(kVarX, 3) == X().pow(6) * Y() + X().pow(3));
    CHECK(p.swap_vars(kVarX, kVarY) == Y() * Y() * X() + Y());
    CHECK(p.swap_vars(kVarX, kVarY).swap_vars(kVarX, kVarY) == p);
}

TEST_CASE("substitute") {
    Poly p = Y() * Y() - X().pow(3);
    std::map<int, Poly> sub{{kVarX, X() * X()}, {kVarY, X().pow(3)}};
    CHECK(p.substitute(sub).is_zero());
    std::map<int, Poly> shift{{kVarX, X() + N(1)}};
    CHECK((X() * X()).substitute(shift) == X() * X() + N(2) * X() + N(1));
    CHECK(C1().substitute(shift) == C1());
}

TEST_CASE("content and primitive parts") {
    Poly p = N(2) * X() * Y() + N(4) * Y();
    CHECK(p.content() == 2);
    CHECK(p.content_in(kVarX) == N(2) * Y());
    CHECK(p.primitive_part_in(kVarX) == X() + N(2));
}
