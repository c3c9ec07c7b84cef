#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wesv/polynomial.hpp"
#include "wesv/sheaf.hpp"

namespace wesv {

/// Local Euler factor at a place, stored as the rational function R with
/// L_x(s) = R(N(x)^{-s}); Euler normalization R(0) = 1.
struct LocalFactor {
    PlaceData place;
    RationalFunction r;
};

/// rational * prod_p log(p)^{e_p} * pi^{e_pi}, exact.
struct ExactForm {
    Rat rational = Rat(1);
    std::map<long, int> log_exponents;
    int pi_exponent = 0;

    double value() const;
    bool operator==(const ExactForm& o) const = default;
    ExactForm operator*(const ExactForm& o) const;
    std::string str() const;
};

struct LeadingValue {
    int order = 0;          // vanishing order at s = 0; negative = pole
    double coefficient = 1;  // leading Taylor coefficient
    std::optional<ExactForm> exact;
};

enum class ConstituentKind { zeta_shifted, dirichlet_shifted };

struct GlobalConstituent {
    ConstituentKind kind = ConstituentKind::zeta_shifted;
    long disc = 0;  // fundamental discriminant for dirichlet_shifted
    int exponent = 1;
};

/// L = prod of zeta(s+1)^e * L(chi_D, s+1)^e * finite local corrections.
struct GlobalFactorization {
    std::vector<GlobalConstituent> constituents;
    std::vector<LocalFactor> corrections;
};

/// Q_x(M, s) = det(I - N(x)^{-s} phi | M (x) Q)^{-1}; shift = 1 evaluates at
/// s + 1 by the exact substitution t -> t / N(x).
RationalFunction q_factor(const FrobeniusModule& m, int shift);

/// The local factor of L_X(F^D, s) at x per the explicit local-factor
/// theorem: Q(dual inertia invariants, s+1) Q(dual stalk, s) / Q(dual inertia
/// invariants, s).
LocalFactor local_factor_dual(const SheafDescriptor& f, const PlaceData& x);

GlobalFactorization global_factorization(const SheafDescriptor& f);

/// Vanishing order and leading coefficient of L_X(F^D, s) at s = 0, assembled
/// from the global factorization. The exact form is populated when no zeta or
/// Dirichlet constituent occurs (purely local L-functions).
LeadingValue leading_value(const SheafDescriptor& f);

/// rank H^1(X, F) - rank H^0(X, F), the cohomological vanishing-order
/// prediction coming from the Weil-Arakelov dimensions.
int vanishing_order_formula(const SheafDescriptor& f);

struct EulerProductValue {
    double value = 1;
    double tail_bound = 0;
};

/// Partial Euler product over N(x) <= bound at a real point s in the
/// convergence region. Diagnostic only; the tail estimate is crude.
EulerProductValue euler_product_truncation(const SheafDescriptor& f, double s, long bound);

std::vector<long> primes_up_to(long bound);

}  // namespace wesv
