#include "wesv/tate.hpp"

#include <stdexcept>

namespace wesv {

namespace {

// Basis of {x in Z^t : a*x = 0 mod diag(mods), for every a in blocks}.
IntMatrix congruence_kernel(const std::vector<IntMatrix>& blocks, const std::vector<Int>& mods) {
    std::size_t t = mods.size();
    if (blocks.empty()) return IntMatrix::identity(t);
    std::size_t nb = blocks.size();
    IntMatrix big(nb * t, t + nb * t);
    for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t i = 0; i < t; ++i) {
            for (std::size_t j = 0; j < t; ++j) big.at(b * t + i, j) = blocks[b].at(i, j);
            big.at(b * t + i, t + b * t + i) = -mods[i];
        }
    IntMatrix ker = kernel_basis(big);
    IntMatrix proj(t, ker.cols());
    for (std::size_t j = 0; j < ker.cols(); ++j)
        for (std::size_t i = 0; i < t; ++i) proj.at(i, j) = ker.at(i, j);
    return hermite_column_form(proj);
}

IntMatrix norm_matrix(const IntegralGModule& m) {
    IntMatrix n(m.rank, m.rank);
    for (std::size_t g = 0; g < m.group.order(); ++g) n = n + m.action(g);
    return n;
}

IntMatrix torsion_norm(const TorsionModule& t) {
    IntMatrix n(t.size(), t.size());
    for (const auto& a : t.actions) n = n + a;
    return n;
}

void check_finite(const LatticeQuotient& q, const char* what) {
    if (q.free_rank != 0) throw std::logic_error(std::string("unexpected free rank in ") + what);
}

IntMatrix mod_columns(IntMatrix m, const std::vector<Int>& mods) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_fdiv_r(m.at(i, j).get_mpz_t(), m.at(i, j).get_mpz_t(), mods[i].get_mpz_t());
    return m;
}

}  // namespace

TateGroup tate_h0(const IntegralGModule& m) {
    TateGroup out;
    if (m.rank > 0) {
        IntMatrix fixed = rationalized_invariants(m);
        LatticeQuotient q = quotient_lattice(fixed, norm_matrix(m));
        check_finite(q, "tate_h0 free part");
        out.free_part = q.group;
        out.free_lifts = q.lifts;
    }
    if (m.torsion && m.torsion->size() > 0) {
        const TorsionModule& t = *m.torsion;
        std::vector<IntMatrix> diffs;
        for (std::size_t g = 1; g < t.actions.size(); ++g)
            diffs.push_back(t.actions[g] - IntMatrix::identity(t.size()));
        IntMatrix fixed = congruence_kernel(diffs, t.factors);
        IntMatrix dmat(t.size(), t.size());
        for (std::size_t i = 0; i < t.size(); ++i) dmat.at(i, i) = t.factors[i];
        IntMatrix sub = IntMatrix::hstack({torsion_norm(t), dmat});
        LatticeQuotient q = quotient_lattice(fixed, sub);
        check_finite(q, "tate_h0 torsion part");
        out.torsion_part = q.group;
        out.torsion_lifts = mod_columns(q.lifts, t.factors);
    }
    return out;
}

TateGroup tate_hminus1(const IntegralGModule& m) {
    TateGroup out;
    if (m.rank > 0) {
        IntMatrix kerN = kernel_basis(norm_matrix(m));
        std::vector<IntMatrix> diffs;
        for (std::size_t g = 1; g < m.group.order(); ++g)
            diffs.push_back(m.action(g) - IntMatrix::identity(m.rank));
        IntMatrix sub = diffs.empty() ? IntMatrix(m.rank, 0) : IntMatrix::hstack(diffs);
        if (kerN.cols() > 0) {
            LatticeQuotient q = quotient_lattice(kerN, sub);
            check_finite(q, "tate_hminus1 free part");
            out.free_part = q.group;
            out.free_lifts = q.lifts;
        }
    }
    if (m.torsion && m.torsion->size() > 0) {
        const TorsionModule& t = *m.torsion;
        IntMatrix kerN = congruence_kernel({torsion_norm(t)}, t.factors);
        IntMatrix dmat(t.size(), t.size());
        for (std::size_t i = 0; i < t.size(); ++i) dmat.at(i, i) = t.factors[i];
        std::vector<IntMatrix> subs;
        for (std::size_t g = 1; g < t.actions.size(); ++g)
            subs.push_back(t.actions[g] - IntMatrix::identity(t.size()));
        subs.push_back(dmat);
        LatticeQuotient q = quotient_lattice(kerN, IntMatrix::hstack(subs));
        check_finite(q, "tate_hminus1 torsion part");
        out.torsion_part = q.group;
        out.torsion_lifts = mod_columns(q.lifts, t.factors);
    }
    return out;
}

TateGroup tate_cyclic(const IntegralGModule& m, long i) {
    bool cyclic = m.group.generators.size() <= 1;
    if (!cyclic) throw std::invalid_argument("full degree range requires a cyclic group");
    long r = ((i % 2) + 2) % 2;
    return r == 0 ? tate_h0(m) : tate_hminus1(m);
}

namespace {

Rat frac_mod1(Rat v) {
    Int num = v.get_num(), den = v.get_den();
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    v -= Rat(q);
    v.canonicalize();
    return v;
}

}  // namespace

bool pairing_is_perfect(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b,
                        const PairingMatrix& p) {
    if (a.order() != b.order()) return false;
    if (a.trivial()) return true;
    std::size_t na = a.invariant_factors.size(), nb = b.invariant_factors.size();
    if (p.rows() != na || p.cols() != nb) return false;
    // lift the map A -> Hom(B, Q/Z) to integers against the target moduli
    IntMatrix c(nb, na + nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            Rat scaled = p.values[i][j] * Rat(b.invariant_factors[j]);
            scaled.canonicalize();
            if (scaled.get_den() != 1) return false;  // pairing not well-defined on generators
            c.at(j, i) = scaled.get_num();
        }
    for (std::size_t j = 0; j < nb; ++j) c.at(j, na + j) = b.invariant_factors[j];
    SmithDecomposition s = smith_normal_form(c);
    for (std::size_t k = 0; k < nb; ++k)
        if (s.d.at(k, k) != 1) return false;
    return true;
}

DualityPairing duality_pairing(const IntegralGModule& m) {
    DualityPairing out;
    Int g_order = static_cast<long>(m.group.order());

    TateGroup rhs = tate_h0(m);
    out.free_rhs = rhs.free_part;
    out.torsion_rhs = rhs.torsion_part;

    // free part: H^0(G, M^vee) x H^0(G, M) -> (1/|G|) Z / Z
    IntegralGModule md = dual(m);
    TateGroup lhs = tate_h0(md);
    out.free_lhs = lhs.free_part;
    out.free_pairing.values.assign(lhs.free_part.invariant_factors.size(),
                                   std::vector<Rat>(rhs.free_part.invariant_factors.size()));
    for (std::size_t i = 0; i < out.free_pairing.rows(); ++i)
        for (std::size_t j = 0; j < out.free_pairing.cols(); ++j) {
            Int dot = 0;
            for (std::size_t k = 0; k < m.rank; ++k)
                dot += lhs.free_lifts.at(k, i) * rhs.free_lifts.at(k, j);
            out.free_pairing.values[i][j] = frac_mod1(Rat(dot) / Rat(g_order));
        }

    // torsion part: H^{-1}(G, M^*) x H^0(G, M_tor) -> Q/Z via evaluation
    if (m.torsion && m.torsion->size() > 0) {
        IntegralGModule star;
        star.group = m.group;
        star.rank = 0;
        star.actions.assign(m.group.order(), IntMatrix(0, 0));
        star.torsion = pontryagin_dual(*m.torsion);
        TateGroup tl = tate_hminus1(star);
        out.torsion_lhs = tl.torsion_part;
        out.torsion_pairing.values.assign(tl.torsion_part.invariant_factors.size(),
                                          std::vector<Rat>(rhs.torsion_part.invariant_factors.size()));
        for (std::size_t i = 0; i < out.torsion_pairing.rows(); ++i)
            for (std::size_t j = 0; j < out.torsion_pairing.cols(); ++j) {
                Rat v = 0;
                for (std::size_t k = 0; k < m.torsion->size(); ++k)
                    v += Rat(tl.torsion_lifts.at(k, i) * rhs.torsion_lifts.at(k, j), m.torsion->factors[k]);
                out.torsion_pairing.values[i][j] = frac_mod1(v);
            }
    }

    out.perfect = pairing_is_perfect(out.free_lhs, out.free_rhs, out.free_pairing) &&
                  pairing_is_perfect(out.torsion_lhs, out.torsion_rhs, out.torsion_pairing);
    return out;
}

}  // namespace wesv
