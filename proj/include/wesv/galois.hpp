#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wesv/exact_linalg.hpp"

namespace wesv {

/// Finite group given by its multiplication table. Element 0 is the identity.
/// Profinite actions (decomposition groups, inertia, tame quotients) are
/// always represented through a finite quotient, which is fully general for
/// finite-type discrete modules.
struct FiniteGroup {
    std::vector<std::vector<std::size_t>> table;  // table[g][h] = g*h
    std::vector<std::size_t> generators;

    std::size_t order() const { return table.size(); }
    std::size_t mul(std::size_t g, std::size_t h) const { return table[g][h]; }
    std::size_t inv(std::size_t g) const;
    std::size_t element_order(std::size_t g) const;
    /// Group-law check: identity, inverses, associativity. Throws on failure.
    void validate() const;

    static FiniteGroup trivial();
    static FiniteGroup cyclic(std::size_t m);
    static FiniteGroup klein_four();
    static FiniteGroup symmetric3();

    bool operator==(const FiniteGroup& o) const = default;
};

/// Finite direct sum of Z/d_i with an integral action. An integer matrix B
/// acts on (x_i mod d_i) when d_j * B_ij = 0 mod d_i for all i, j.
struct TorsionModule {
    std::vector<Int> factors;          // invariant factors, chain d1 | d2 | ...
    std::vector<IntMatrix> actions;    // per group element

    std::size_t size() const { return factors.size(); }
    Int order() const;
};

bool torsion_action_well_defined(const std::vector<Int>& factors, const IntMatrix& b);

/// Finite-type split Z[G]-module: free part Z^rank with unimodular action
/// matrices plus an optional finite part. Mixed (non-split) extensions are
/// out of scope; the catalog sheaves are all split.
struct IntegralGModule {
    FiniteGroup group;
    std::size_t rank = 0;
    std::vector<IntMatrix> actions;  // per element, rank x rank
    std::optional<TorsionModule> torsion;
    bool dual_dropped_torsion = false;

    const IntMatrix& action(std::size_t g) const { return actions[g]; }
    /// Checks the homomorphism property and unimodularity. Throws on failure.
    void validate() const;

    static IntegralGModule trivial(const FiniteGroup& g, std::size_t rank);
    /// Build a module from matrices assigned to group.generators; all other
    /// element actions are derived by filling in words. Throws when the
    /// assignment is inconsistent.
    static IntegralGModule from_generator_actions(const FiniteGroup& g,
                                                  const std::vector<IntMatrix>& gen_actions,
                                                  std::optional<TorsionModule> torsion = std::nullopt);
};

/// Derive per-element action matrices from generator assignments. When `mods`
/// is given (torsion actions), entries of row i are reduced mod mods[i] and
/// consistency is checked modulo the factors.
std::vector<IntMatrix> fill_actions_from_generators(const FiniteGroup& g,
                                                    const std::vector<IntMatrix>& gen_actions,
                                                    std::size_t dim,
                                                    const std::vector<Int>* mods = nullptr);

/// Degree-0 dual: free part rank n with g acting by transpose(action(g^-1)).
/// The torsion part is dropped and flagged; its (shifted) dual lives in the
/// Tate-duality module.
IntegralGModule dual(const IntegralGModule& m);

/// Pontryagin dual Hom(T, Q/Z) of the torsion part, with the induced action.
TorsionModule pontryagin_dual(const TorsionModule& t);

/// Induction along a subgroup embedding. `h_embedding[i]` is the element of
/// G that the i-th element of H maps to; rejects non-subgroup images.
IntegralGModule induce(const FiniteGroup& g, const std::vector<std::size_t>& h_embedding,
                       const IntegralGModule& m);

struct InvariantsCoinvariants {
    IntMatrix invariants_basis;  // saturated fixed lattice of the free part
    std::size_t coinvariants_rank = 0;
    FiniteAbelianGroup coinvariants_torsion;
};
InvariantsCoinvariants invariants_coinvariants(const IntegralGModule& m);

/// Basis of the saturation of the fixed sublattice of the free part.
IntMatrix rationalized_invariants(const IntegralGModule& m);

/// g -> trace(action(g)); fallback comparison data for module isomorphism.
std::vector<Int> character(const IntegralGModule& m);

/// Finite-type module with a finite-order (geometric) Frobenius and the
/// residue size N(x) of the supporting place.
struct FrobeniusModule {
    std::size_t rank = 0;
    IntMatrix frobenius;
    std::vector<Int> torsion_factors;
    IntMatrix torsion_frobenius;
    Int residue_size = 2;

    static constexpr std::size_t kDefaultOrderBound = 24;

    /// Multiplicative order of the Frobenius pair; throws past the bound.
    std::size_t frobenius_order(std::size_t bound = kDefaultOrderBound) const;
    /// The same data as a module over the cyclic group generated by Frobenius.
    IntegralGModule as_g_module(std::size_t bound = kDefaultOrderBound) const;
    /// Dual free part (inverse-transpose Frobenius), torsion dropped.
    FrobeniusModule dual_free() const;

    static FrobeniusModule free(IntMatrix frob, Int residue_size);
    static FrobeniusModule trivial_rank1(Int residue_size);
};

}  // namespace wesv
