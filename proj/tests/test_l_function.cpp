#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wesv/euler_char.hpp"
#include "wesv/l_function.hpp"

using namespace wesv;

namespace {

constexpr double kPi = 3.14159265358979323846;

SheafDescriptor trivial_sky(const NumberFieldData& k, const PlaceData& x) {
    return SheafDescriptor::skyscraper(k, x, FrobeniusModule::trivial_rank1(x.norm()));
}

RationalFunction rf(std::initializer_list<long> num, std::initializer_list<long> den) {
    RatPoly n, d;
    for (long v : num) n.c.push_back(Rat(v));
    for (long v : den) d.c.push_back(Rat(v));
    n.trim();
    d.trim();
    return RationalFunction::of(n, d);
}

}  // namespace

TEST_CASE("polynomial arithmetic and division by (1 - t)") {
    RatPoly p;  // 1 - t^2
    p.c = {Rat(1), Rat(0), Rat(-1)};
    RatPoly q = p.divide_one_minus_t();  // 1 + t
    CHECK(q.c == std::vector<Rat>{Rat(1), Rat(1)});
    CHECK_THROWS(RatPoly::one().divide_one_minus_t());
    RatPoly shifted = RatPoly::one_minus(Rat(1)).shift_scale(Int(5));  // 1 - t/5
    CHECK(shifted.eval(Rat(5)) == 0);
}

TEST_CASE("q_factor examples") {
    // identity on Z: 1/(1-t)
    CHECK(q_factor(FrobeniusModule::trivial_rank1(2), 0).equals(rf({1}, {1, -1})));
    // phi = -1 on Z: 1/(1+t)
    CHECK(q_factor(FrobeniusModule::free(IntMatrix::of({{-1}}), 2), 0).equals(rf({1}, {1, 1})));
    // swap on Z^2: 1/(1-t^2); oracle: det(I - t swap) = (1)(1) - t*t
    CHECK(q_factor(FrobeniusModule::free(IntMatrix::of({{0, 1}, {1, 0}}), 2), 0)
              .equals(rf({1}, {1, 0, -1})));
    // shift: identity at s+1 over residue size 3: 1/(1 - t/3)
    RationalFunction s = q_factor(FrobeniusModule::trivial_rank1(3), 1);
    CHECK(s.den.eval(Rat(3)) == 0);
    CHECK(s.den.eval(Rat(0)) == 1);
}

TEST_CASE("local factors of the constant sheaf are zeta factors at s+1") {
    SheafDescriptor f = SheafDescriptor::constant_z(rational_field());
    LocalFactor l = local_factor_dual(f, PlaceData{7, 1, 0});
    CHECK(l.r.equals(rf({7}, {7, -1})));  // 1/(1 - t/7)
    NumberFieldData k5 = quadratic_field(5);
    LocalFactor inert = local_factor_dual(SheafDescriptor::constant_z(k5), PlaceData{3, 2, 0});
    // N = 9: 1/(1 - t/9)
    CHECK(inert.r.equals(rf({9}, {9, -1})));
}

TEST_CASE("local factors of j_! Z") {
    NumberFieldData q = rational_field();
    SPlaceSet s = s_data(q, {PlaceData{3, 1, 0}});
    SheafDescriptor f = SheafDescriptor::shriek_z(q, s);
    // at removed place: (1 - t)/(1 - t/3)
    CHECK(local_factor_dual(f, PlaceData{3, 1, 0}).r.equals(rf({3, -3}, {3, -1})));
    // elsewhere: zeta factor
    CHECK(local_factor_dual(f, PlaceData{5, 1, 0}).r.equals(rf({5}, {5, -1})));
}

TEST_CASE("local factors of skyscrapers") {
    NumberFieldData q = rational_field();
    SheafDescriptor f = trivial_sky(q, PlaceData{2, 1, 0});
    CHECK(local_factor_dual(f, PlaceData{2, 1, 0}).r.equals(rf({1}, {1, -1})));
    CHECK(local_factor_dual(f, PlaceData{3, 1, 0}).r.identically_one());
    // phi = -1 skyscraper: (1 + t)^{-1}
    SheafDescriptor g = SheafDescriptor::skyscraper(
        q, PlaceData{5, 1, 0}, FrobeniusModule::free(IntMatrix::of({{-1}}), 5));
    CHECK(local_factor_dual(g, PlaceData{5, 1, 0}).r.equals(rf({1}, {1, 1})));
}

TEST_CASE("pushforward local factors match the Dedekind factorization (criterion-6 oracle shape)") {
    for (long d : {-1, 5, -5}) {
        NumberFieldData l = quadratic_field(d);
        SheafDescriptor f = SheafDescriptor::pushforward(l);
        for (long p : primes_up_to(100)) {
            LocalFactor lf = local_factor_dual(f, PlaceData{p, 1, 0});
            // oracle: product of zeta_L factors at s+1 over the places above p
            RationalFunction want = RationalFunction::one();
            for (const auto& w : places_above(l, p)) {
                // zeta_w(s+1) in the variable t = p^{-s}: N(w)^{-(s+1)} =
                // t^f / N(w)
                RatPoly den;
                if (w.f == 1) {
                    den.c = {Rat(1), Rat(-1, w.norm())};
                } else {
                    den.c = {Rat(1), Rat(0), Rat(-1, w.norm())};
                }
                want = want * RationalFunction::of(RatPoly::one(), den);
            }
            CHECK(lf.r.equals(want));
        }
    }
}

TEST_CASE("multiplicativity of local factors over direct sums") {
    NumberFieldData q = rational_field();
    SheafDescriptor a = SheafDescriptor::constant_z(q);
    SheafDescriptor b = trivial_sky(q, PlaceData{3, 1, 0});
    SheafDescriptor s = SheafDescriptor::direct_sum({a, b});
    for (long p : primes_up_to(30)) {
        PlaceData x{p, 1, 0};
        RationalFunction lhs = local_factor_dual(s, x).r;
        RationalFunction rhs = local_factor_dual(a, x).r * local_factor_dual(b, x).r;
        CHECK(lhs.equals(rhs));
    }
}

TEST_CASE("global factorization reproduces local factors at every prime <= 100") {
    NumberFieldData ki = quadratic_field(-1);
    SheafDescriptor f = SheafDescriptor::constant_z(ki);
    GlobalFactorization g = global_factorization(f);
    REQUIRE(g.constituents.size() == 2);
    bool has_zeta = false, has_dirichlet = false;
    for (const auto& c : g.constituents) {
        if (c.kind == ConstituentKind::zeta_shifted) has_zeta = true;
        if (c.kind == ConstituentKind::dirichlet_shifted) {
            has_dirichlet = true;
            CHECK(c.disc == -4);
        }
    }
    CHECK(has_zeta);
    CHECK(has_dirichlet);
    // factor-by-factor: zeta(s+1) L(chi, s+1) at p equals the product of the
    // local factors of Z^D over the places above p, as polynomials in t=p^{-s}
    for (long p : primes_up_to(100)) {
        RationalFunction want = RationalFunction::one();
        // zeta factor: 1/(1 - t/p)
        want = want * RationalFunction::of(RatPoly::one(), RatPoly::one_minus(Rat(1, p)));
        // dirichlet factor: 1/(1 - chi(p) t/p)
        int chi = kronecker_symbol(-4, p);
        if (chi != 0)
            want = want * RationalFunction::of(RatPoly::one(), RatPoly::one_minus(Rat(chi, p)));
        RationalFunction got = RationalFunction::one();
        for (const auto& x : places_above(ki, p)) {
            // express the factor at x in the rational variable t = p^{-s}:
            // for f = 2 the local t_x = t^2
            RationalFunction lx = local_factor_dual(f, x).r;
            if (x.f == 2) {
                // substitute t -> t^2
                RatPoly num2, den2;
                for (std::size_t k = 0; k < lx.num.c.size(); ++k) {
                    num2.c.resize(2 * lx.num.c.size(), Rat(0));
                    num2.c[2 * k] = lx.num.c[k];
                }
                for (std::size_t k = 0; k < lx.den.c.size(); ++k) {
                    den2.c.resize(2 * lx.den.c.size(), Rat(0));
                    den2.c[2 * k] = lx.den.c[k];
                }
                num2.trim();
                den2.trim();
                lx = RationalFunction::of(num2, den2);
            }
            got = got * lx;
        }
        CHECK(got.equals(want));
    }
}

TEST_CASE("leading value of the constant sheaf over Q: simple pole with residue 1") {
    LeadingValue v = leading_value(SheafDescriptor::constant_z(rational_field()));
    CHECK(v.order == -1);
    CHECK(v.coefficient == doctest::Approx(1.0));
    CHECK_FALSE(v.exact.has_value());
    // numeric oracle: s * zeta(1+s) -> 1 as s -> 0, via a direct partial sum
    for (double s : {1e-3, 1e-4}) {
        double zeta = 0;
        long cut = 2000000;
        for (long n = 1; n <= cut; ++n) zeta += std::pow(n, -1.0 - s);
        zeta += std::pow(cut, -s) / s;  // integral tail
        CHECK(std::fabs(s * zeta - 1.0) < 5e-3);
    }
}

TEST_CASE("leading value of a trivial skyscraper: order -1, coefficient 1/log p") {
    NumberFieldData q = rational_field();
    LeadingValue v = leading_value(trivial_sky(q, PlaceData{2, 1, 0}));
    CHECK(v.order == -1);
    CHECK(v.coefficient == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));
    REQUIRE(v.exact.has_value());
    CHECK(v.exact->rational == Rat(1));
    CHECK(v.exact->log_exponents.at(2) == -1);
}

TEST_CASE("leading value of j_! Z over Q with S = {p}: order 0, coefficient log p") {
    NumberFieldData q = rational_field();
    SPlaceSet s = s_data(q, {PlaceData{7, 1, 0}});
    LeadingValue v = leading_value(SheafDescriptor::shriek_z(q, s));
    CHECK(v.order == 0);
    CHECK(v.coefficient == doctest::Approx(std::log(7.0)).epsilon(1e-12));
}

TEST_CASE("constant finite sheaves have L identically 1") {
    NumberFieldData q = rational_field();
    SheafDescriptor f = SheafDescriptor::constant_finite(q, 3);
    LeadingValue v = leading_value(f);
    CHECK(v.order == 0);
    CHECK(v.coefficient == 1.0);
    REQUIRE(v.exact.has_value());
    CHECK(v.exact->rational == Rat(1));
    CHECK(v.exact->log_exponents.empty());
    for (long p : {2L, 3L, 5L})
        CHECK(local_factor_dual(f, PlaceData{p, 1, 0}).r.identically_one());
}

TEST_CASE("vanishing order formula across the catalog") {
    NumberFieldData q = rational_field();
    NumberFieldData k5 = quadratic_field(5);
    CHECK(vanishing_order_formula(SheafDescriptor::constant_z(q)) == -1);
    CHECK(vanishing_order_formula(SheafDescriptor::constant_z(k5)) == -1);
    SPlaceSet s1 = s_data(q, {PlaceData{2, 1, 0}});
    CHECK(vanishing_order_formula(SheafDescriptor::shriek_z(q, s1)) == 0);
    SPlaceSet s2 = s_data(q, {PlaceData{2, 1, 0}, PlaceData{3, 1, 0}});
    CHECK(vanishing_order_formula(SheafDescriptor::shriek_z(q, s2)) == 1);
    CHECK(vanishing_order_formula(trivial_sky(q, PlaceData{5, 1, 0})) == -1);
    // rank-2 swap skyscraper: fixed rank 1
    SheafDescriptor sw = SheafDescriptor::skyscraper(
        q, PlaceData{3, 1, 0}, FrobeniusModule::free(IntMatrix::of({{0, 1}, {1, 0}}), 3));
    CHECK(vanishing_order_formula(sw) == -1);
    CHECK(vanishing_order_formula(SheafDescriptor::constant_finite(q, 6)) == 0);
    CHECK(vanishing_order_formula(SheafDescriptor::pushforward(quadratic_field(-1))) == -1);
    // orders agree with the L-side for these descriptors
    for (const SheafDescriptor& f :
         {SheafDescriptor::constant_z(q), SheafDescriptor::shriek_z(q, s2),
          trivial_sky(q, PlaceData{5, 1, 0}), sw, SheafDescriptor::constant_finite(q, 6),
          SheafDescriptor::pushforward(quadratic_field(-1))})
        CHECK(leading_value(f).order == vanishing_order_formula(f));
}

TEST_CASE("euler product truncation sanity") {
    NumberFieldData q = rational_field();
    // zeta(2) at s = 1
    EulerProductValue z2 = euler_product_truncation(SheafDescriptor::constant_z(q), 1.0, 100000);
    CHECK(std::fabs(z2.value - kPi * kPi / 6) < 1e-4);
    CHECK(euler_product_truncation(SheafDescriptor::constant_finite(q, 5), 1.0, 50).value == 1.0);
    EulerProductValue sky = euler_product_truncation(trivial_sky(q, PlaceData{2, 1, 0}), 1.0, 50);
    CHECK(sky.value == doctest::Approx(2.0));
    CHECK_THROWS(euler_product_truncation(SheafDescriptor::constant_z(q), -0.5, 50));
}
