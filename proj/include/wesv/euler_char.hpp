#pragma once

#include <optional>

#include "wesv/l_function.hpp"
#include "wesv/lattice_det.hpp"
#include "wesv/sheaf.hpp"

namespace wesv {

/// The quantities entering the explicit Euler characteristic formula
///   chi = (2 pi)^{r2F} 2^{r1F} [H^0 tor][Ext^1 tor] R / ([H^1 tor][Hom tor]
///          [lie_h0][N2] Disc).
struct EulerCharInputs {
    Int h0_tor = 1;
    Int h1_tor = 1;
    Int hom_tor = 1;
    Int ext1_tor = 1;
    int r1F = 0;
    int r2F = 0;
    Int n2 = 1;
    Int lie_h0 = 1;
    double disc = 1.0;
    double regulator = 1.0;  // R(F^D)
};

double chi(const EulerCharInputs& in);

/// Per-variant assembly of the inputs; for skyscrapers the log N(v) weights
/// of the duality pairing are folded into the regulator entry, matching
/// R((i_* M)^D) = 1 / (R(M) log N(v)^{rank}).
EulerCharInputs chi_inputs(const SheafDescriptor& f);

double chi_of(const SheafDescriptor& f);

/// Exact factored form of chi for the purely local cases (skyscrapers,
/// constant finite sheaves, shriek over Q and sums of those); nullopt when a
/// transcendental constituent (regulator of a real field, L(1, chi)) occurs.
std::optional<ExactForm> chi_exact_form(const SheafDescriptor& f);

/// Relative error of chi(mid) against chi(sub) * chi(quot) for the built-in
/// short exact patterns: (j_! Z, Z, sum of trivial skyscrapers on S) and
/// (Z -n-> Z -> Z/n). Throws std::invalid_argument for non-pattern triples.
double multiplicativity_check(const SheafDescriptor& sub, const SheafDescriptor& mid,
                              const SheafDescriptor& quot);

}  // namespace wesv
