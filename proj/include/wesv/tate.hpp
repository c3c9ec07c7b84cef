#pragma once

#include <vector>

#include "wesv/exact_linalg.hpp"
#include "wesv/galois.hpp"

namespace wesv {

/// One graded piece of Tate cohomology, split as (free-part contribution,
/// torsion-part contribution) with explicit generator lifts: columns of
/// `free_lifts` live in Z^rank, columns of `torsion_lifts` in the torsion
/// coordinate lattice Z^t.
struct TateGroup {
    FiniteAbelianGroup free_part;
    IntMatrix free_lifts;
    FiniteAbelianGroup torsion_part;
    IntMatrix torsion_lifts;

    Int order() const { return free_part.order() * torsion_part.order(); }
    bool trivial() const { return free_part.trivial() && torsion_part.trivial(); }
};

/// H^0(G,M) = M^G / N(M), N = sum of group elements.
TateGroup tate_h0(const IntegralGModule& m);

/// H^{-1}(G,M) = ker(N) / sum_g im(1-g).
TateGroup tate_hminus1(const IntegralGModule& m);

/// H^i for cyclic G via 2-periodicity (even -> H^0, odd -> H^{-1}).
TateGroup tate_cyclic(const IntegralGModule& m, long i);

/// Values in Q/Z as exact rationals in [0,1).
struct PairingMatrix {
    std::vector<std::vector<Rat>> values;

    std::size_t rows() const { return values.size(); }
    std::size_t cols() const { return values.empty() ? 0 : values[0].size(); }
};

/// Whether the pairing identifies `a` with the Pontryagin dual of `b`:
/// the induced map is surjective (SNF of the lifted integer matrix against
/// the target moduli) and the orders agree.
bool pairing_is_perfect(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b,
                        const PairingMatrix& p);

struct DualityPairing {
    PairingMatrix free_pairing;     // H^0(G,M^vee) x H^0(G,M_free) -> Q/Z
    PairingMatrix torsion_pairing;  // H^{-1}(G,M^*) x H^0(G,M_tor) -> Q/Z
    FiniteAbelianGroup free_lhs, free_rhs, torsion_lhs, torsion_rhs;
    bool perfect = false;
};

/// The cup-product duality pairing in degree 0 (free part, normalized through
/// H^0(G,Z) = Z/|G| -> Q/Z by k -> k/|G|) and degree (-1,0) (torsion part,
/// through the Pontryagin evaluation). Splitness of M is structural here.
DualityPairing duality_pairing(const IntegralGModule& m);

}  // namespace wesv
