#pragma once

#include <string>
#include <vector>

#include "wesv/exact_linalg.hpp"

namespace wesv {

/// Univariate polynomial in t with exact rational coefficients, c[k] t^k.
struct RatPoly {
    std::vector<Rat> c;

    static RatPoly zero() { return {}; }
    static RatPoly one() { return {{Rat(1)}}; }
    static RatPoly constant(Rat v);
    /// 1 - a*t
    static RatPoly one_minus(Rat a);

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    void trim();

    Rat eval(const Rat& t) const;
    double eval(double t) const;

    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    bool operator==(const RatPoly& o) const = default;

    /// Substitute t -> t / n (exact).
    RatPoly shift_scale(const Int& n) const;
    /// Factor out (1 - t): p = (1 - t) q; requires p(1) = 0.
    RatPoly divide_one_minus_t() const;

    std::string str() const;
};

/// Characteristic Euler polynomial det(I - t A) over the rationals.
RatPoly det_one_minus_tA(const IntMatrix& a);

/// Value-semantics rational function R(t) = num/den. Euler factors keep the
/// normalization R(0) = 1.
struct RationalFunction {
    RatPoly num = RatPoly::one();
    RatPoly den = RatPoly::one();

    static RationalFunction one() { return {}; }
    static RationalFunction of(RatPoly n, RatPoly d);

    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction inverse() const;
    bool identically_one() const;
    /// Cross-multiplied exact equality.
    bool equals(const RationalFunction& o) const;

    double eval(double t) const;
    /// Order of vanishing at t = 1 (negative for a pole).
    int order_at_one() const;
    /// lim (t->1) R(t)/(1-t)^m for m = order_at_one(), exact.
    Rat leading_at_one() const;

    std::string str() const;
};

}  // namespace wesv
