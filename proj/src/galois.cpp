#include "wesv/galois.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace wesv {

std::size_t FiniteGroup::inv(std::size_t g) const {
    for (std::size_t h = 0; h < order(); ++h)
        if (mul(g, h) == 0) return h;
    throw std::logic_error("element has no inverse");
}

std::size_t FiniteGroup::element_order(std::size_t g) const {
    std::size_t k = 1, x = g;
    while (x != 0) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

void FiniteGroup::validate() const {
    std::size_t n = order();
    if (n == 0) throw std::invalid_argument("empty group");
    for (std::size_t g = 0; g < n; ++g) {
        if (table[g].size() != n) throw std::invalid_argument("ragged multiplication table");
        if (mul(0, g) != g || mul(g, 0) != g) throw std::invalid_argument("0 is not an identity");
        inv(g);  // throws if missing
        for (std::size_t h = 0; h < n; ++h) {
            if (mul(g, h) >= n) throw std::invalid_argument("table entry out of range");
            for (std::size_t k = 0; k < n; ++k)
                if (mul(mul(g, h), k) != mul(g, mul(h, k)))
                    throw std::invalid_argument("multiplication table is not associative");
        }
    }
    for (std::size_t g : generators)
        if (g >= n) throw std::invalid_argument("generator index out of range");
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup{{{0}}, {}}; }

FiniteGroup FiniteGroup::cyclic(std::size_t m) {
    FiniteGroup g;
    g.table.assign(m, std::vector<std::size_t>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) g.table[a][b] = (a + b) % m;
    if (m > 1) g.generators = {1};
    return g;
}

FiniteGroup FiniteGroup::klein_four() {
    FiniteGroup g;
    g.table.assign(4, std::vector<std::size_t>(4));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) g.table[a][b] = a ^ b;
    g.generators = {1, 2};
    return g;
}

FiniteGroup FiniteGroup::symmetric3() {
    // Elements as permutations of {0,1,2}: e, (01), (02), (12), (012), (021).
    const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    auto compose = [&](int a, int b) {  // (a*b)(x) = a(b(x))
        int r[3];
        for (int x = 0; x < 3; ++x) r[x] = perms[a][perms[b][x]];
        for (int c = 0; c < 6; ++c)
            if (r[0] == perms[c][0] && r[1] == perms[c][1] && r[2] == perms[c][2]) return c;
        throw std::logic_error("s3 closure");
    };
    FiniteGroup g;
    g.table.assign(6, std::vector<std::size_t>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) g.table[a][b] = static_cast<std::size_t>(compose(a, b));
    g.generators = {1, 4};  // (01) and (012)
    return g;
}

Int TorsionModule::order() const {
    Int o = 1;
    for (const auto& d : factors) o *= d;
    return o;
}

bool torsion_action_well_defined(const std::vector<Int>& factors, const IntMatrix& b) {
    std::size_t t = factors.size();
    if (b.rows() != t || b.cols() != t) return false;
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j)
            if ((b.at(i, j) * factors[j]) % factors[i] != 0) return false;
    return true;
}

namespace {

bool is_unimodular(const IntMatrix& a) {
    if (a.rows() != a.cols()) return false;
    SmithDecomposition s = smith_normal_form(a);
    for (std::size_t k = 0; k < a.rows(); ++k)
        if (s.d.at(k, k) != 1) return false;
    return true;
}

bool torsion_equal(const std::vector<Int>& factors, const IntMatrix& a, const IntMatrix& b) {
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = 0; j < factors.size(); ++j)
            if ((a.at(i, j) - b.at(i, j)) % factors[i] != 0) return false;
    return true;
}

}  // namespace

void IntegralGModule::validate() const {
    std::size_t n = group.order();
    if (actions.size() != n) throw std::invalid_argument("one action matrix per group element required");
    for (std::size_t g = 0; g < n; ++g) {
        if (actions[g].rows() != rank || actions[g].cols() != rank)
            throw std::invalid_argument("action matrix shape mismatch");
        if (!is_unimodular(actions[g])) throw std::invalid_argument("action matrix is not in GL(n,Z)");
    }
    if (!actions.empty() && !actions[0].is_identity())
        throw std::invalid_argument("identity must act trivially");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            if (actions[g] * actions[h] != actions[group.mul(g, h)])
                throw std::invalid_argument("action is not a homomorphism");
    if (torsion) {
        if (torsion->actions.size() != n) throw std::invalid_argument("torsion action count mismatch");
        for (std::size_t i = 0; i + 1 < torsion->factors.size(); ++i)
            if (torsion->factors[i + 1] % torsion->factors[i] != 0)
                throw std::invalid_argument("torsion factors must form a divisibility chain");
        for (std::size_t g = 0; g < n; ++g)
            if (!torsion_action_well_defined(torsion->factors, torsion->actions[g]))
                throw std::invalid_argument("torsion action not well-defined mod invariant factors");
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h)
                if (!torsion_equal(torsion->factors, torsion->actions[g] * torsion->actions[h],
                                   torsion->actions[group.mul(g, h)]))
                    throw std::invalid_argument("torsion action is not a homomorphism");
    }
}

IntegralGModule IntegralGModule::trivial(const FiniteGroup& g, std::size_t rank) {
    IntegralGModule m;
    m.group = g;
    m.rank = rank;
    m.actions.assign(g.order(), IntMatrix::identity(rank));
    return m;
}

std::vector<IntMatrix> fill_actions_from_generators(const FiniteGroup& g,
                                                    const std::vector<IntMatrix>& gen_actions,
                                                    std::size_t dim,
                                                    const std::vector<Int>* mods) {
    if (gen_actions.size() != g.generators.size())
        throw std::invalid_argument("one matrix per generator required");
    auto reduce = [&](IntMatrix m) {
        if (mods)
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    mpz_fdiv_r(m.at(i, j).get_mpz_t(), m.at(i, j).get_mpz_t(),
                               (*mods)[i].get_mpz_t());
        return m;
    };
    std::size_t n = g.order();
    std::vector<IntMatrix> actions(n);
    std::vector<bool> known(n, false);
    actions[0] = reduce(IntMatrix::identity(dim));
    known[0] = true;
    // breadth-first closure over generator multiplication
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t e = 0; e < n; ++e) {
            if (!known[e]) continue;
            for (std::size_t gi = 0; gi < g.generators.size(); ++gi) {
                std::size_t t = g.mul(g.generators[gi], e);
                IntMatrix prod = reduce(gen_actions[gi] * actions[e]);
                if (!known[t]) {
                    actions[t] = prod;
                    known[t] = true;
                    progress = true;
                } else if (actions[t] != prod) {
                    throw std::invalid_argument("generator actions are inconsistent with relations");
                }
            }
        }
    }
    if (!std::all_of(known.begin(), known.end(), [](bool b) { return b; }))
        throw std::invalid_argument("generators do not generate the group");
    return actions;
}

IntegralGModule IntegralGModule::from_generator_actions(const FiniteGroup& g,
                                                        const std::vector<IntMatrix>& gen_actions,
                                                        std::optional<TorsionModule> torsion) {
    IntegralGModule m;
    m.group = g;
    m.rank = gen_actions.empty() ? 0 : gen_actions[0].rows();
    if (g.generators.empty() && !gen_actions.empty())
        throw std::invalid_argument("group has no designated generators");
    if (g.generators.empty()) {
        m.actions.assign(1, IntMatrix::identity(m.rank));
    } else {
        m.actions = fill_actions_from_generators(g, gen_actions, m.rank);
    }
    m.torsion = std::move(torsion);
    m.validate();
    return m;
}

IntegralGModule dual(const IntegralGModule& m) {
    IntegralGModule d;
    d.group = m.group;
    d.rank = m.rank;
    d.actions.resize(m.group.order());
    for (std::size_t g = 0; g < m.group.order(); ++g)
        d.actions[g] = m.action(m.group.inv(g)).transposed();
    d.dual_dropped_torsion = m.torsion.has_value();
    return d;
}

TorsionModule pontryagin_dual(const TorsionModule& t) {
    // Hom(+Z/d_i, Q/Z) = +Z/d_i; g acts by f -> f o g^{-1}. Writing the
    // pairing <f, m> = sum f_k m_k / d_k gives the matrix
    // B*[j][k] = (d_j / d_k) * B_{g^{-1}}[k][j], integral by well-definedness.
    TorsionModule out;
    out.factors = t.factors;
    std::size_t n = t.actions.size();
    out.actions.resize(n);
    // group inversion is not available here; the caller passes per-element
    // actions, so recover inverses by searching for B_g * B_h = id mod D.
    auto is_id = [&](const IntMatrix& a) {
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j) {
                Int want = (i == j) ? 1 : 0;
                if ((a.at(i, j) - want) % t.factors[i] != 0) return false;
            }
        return true;
    };
    for (std::size_t g = 0; g < n; ++g) {
        std::size_t ginv = n;
        for (std::size_t h = 0; h < n; ++h)
            if (is_id(t.actions[g] * t.actions[h])) {
                ginv = h;
                break;
            }
        if (ginv == n) throw std::invalid_argument("torsion action has no inverse element");
        IntMatrix b(t.size(), t.size());
        for (std::size_t j = 0; j < t.size(); ++j)
            for (std::size_t k = 0; k < t.size(); ++k) {
                Int num = t.factors[j] * t.actions[ginv].at(k, j);
                if (num % t.factors[k] != 0)
                    throw std::logic_error("pontryagin dual action not integral");
                Int v = num / t.factors[k];
                mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), t.factors[j].get_mpz_t());
                b.at(j, k) = v;
            }
        out.actions[g] = b;
    }
    return out;
}

IntegralGModule induce(const FiniteGroup& g, const std::vector<std::size_t>& h_embedding,
                       const IntegralGModule& m) {
    std::size_t nh = h_embedding.size();
    if (m.group.order() != nh) throw std::invalid_argument("embedding size must match subgroup order");
    if (h_embedding.empty() || h_embedding[0] != 0)
        throw std::invalid_argument("embedding must send identity to identity");
    // closure check: the image must be closed under multiplication
    std::map<std::size_t, std::size_t> img_index;
    for (std::size_t i = 0; i < nh; ++i) {
        if (img_index.count(h_embedding[i])) throw std::invalid_argument("embedding not injective");
        img_index[h_embedding[i]] = i;
    }
    for (std::size_t a = 0; a < nh; ++a)
        for (std::size_t b = 0; b < nh; ++b) {
            std::size_t prod = g.mul(h_embedding[a], h_embedding[b]);
            auto it = img_index.find(prod);
            if (it == img_index.end())
                throw std::invalid_argument("embedded image is not closed under multiplication");
            if (it->second != m.group.mul(a, b))
                throw std::invalid_argument("embedding is not a homomorphism");
        }
    // left coset representatives
    std::size_t ng = g.order();
    std::vector<std::size_t> rep;
    std::vector<long> coset_of(ng, -1);
    for (std::size_t x = 0; x < ng; ++x) {
        if (coset_of[x] >= 0) continue;
        std::size_t r = rep.size();
        rep.push_back(x);
        for (std::size_t i = 0; i < nh; ++i) coset_of[g.mul(x, h_embedding[i])] = static_cast<long>(r);
    }
    std::size_t c = rep.size();  // index [G:H]
    std::size_t n = m.rank;
    IntegralGModule out;
    out.group = g;
    out.rank = c * n;
    out.actions.assign(ng, IntMatrix(c * n, c * n));
    std::optional<TorsionModule> tor;
    if (m.torsion) {
        tor = TorsionModule{};
        // c block copies of the torsion factors; the copies must still form a
        // divisibility chain in block order (true for uniform factor lists)
        for (std::size_t copy = 0; copy < c; ++copy)
            for (const auto& f : m.torsion->factors) tor->factors.push_back(f);
        for (std::size_t i = 0; i + 1 < tor->factors.size(); ++i)
            if (tor->factors[i + 1] % tor->factors[i] != 0)
                throw std::invalid_argument("induction of mixed torsion factors is unsupported");
        tor->actions.assign(ng, IntMatrix(tor->factors.size(), tor->factors.size()));
    }
    for (std::size_t x = 0; x < ng; ++x) {
        for (std::size_t j = 0; j < c; ++j) {
            std::size_t y = g.mul(x, rep[j]);
            std::size_t i = static_cast<std::size_t>(coset_of[y]);
            // y = rep[i] * h for a unique h in H
            std::size_t h_in_g = g.mul(g.inv(rep[i]), y);
            std::size_t h = img_index.at(h_in_g);
            const IntMatrix& a = m.action(h);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s) out.actions[x].at(i * n + r, j * n + s) = a.at(r, s);
            if (tor) {
                std::size_t t = m.torsion->size();
                const IntMatrix& b = m.torsion->actions[h];
                for (std::size_t r = 0; r < t; ++r)
                    for (std::size_t s = 0; s < t; ++s)
                        tor->actions[x].at(i * t + r, j * t + s) = b.at(r, s);
            }
        }
    }
    out.torsion = tor;
    out.validate();
    return out;
}

InvariantsCoinvariants invariants_coinvariants(const IntegralGModule& m) {
    std::size_t ng = m.group.order();
    std::vector<IntMatrix> diffs;
    for (std::size_t g = 1; g < ng; ++g) diffs.push_back(m.action(g) - IntMatrix::identity(m.rank));
    InvariantsCoinvariants out;
    if (m.rank == 0 || ng == 1) {
        out.invariants_basis = IntMatrix::identity(m.rank);
        out.coinvariants_rank = m.rank;
        return out;
    }
    out.invariants_basis = kernel_basis(IntMatrix::vstack(diffs));
    CokernelData ck = cokernel(IntMatrix::hstack(diffs));
    out.coinvariants_rank = ck.free_rank;
    out.coinvariants_torsion = ck.torsion;
    return out;
}

IntMatrix rationalized_invariants(const IntegralGModule& m) {
    return invariants_coinvariants(m).invariants_basis;
}

std::vector<Int> character(const IntegralGModule& m) {
    std::vector<Int> chi(m.group.order());
    for (std::size_t g = 0; g < m.group.order(); ++g) {
        Int t = 0;
        for (std::size_t i = 0; i < m.rank; ++i) t += m.action(g).at(i, i);
        chi[g] = t;
    }
    return chi;
}

std::size_t FrobeniusModule::frobenius_order(std::size_t bound) const {
    std::size_t of = 1;
    if (rank > 0) {
        IntMatrix p = frobenius;
        of = 1;
        while (!p.is_identity()) {
            p = p * frobenius;
            if (++of > bound) throw std::invalid_argument("frobenius order exceeds bound");
        }
    }
    std::size_t ot = 1;
    if (!torsion_factors.empty()) {
        auto is_id = [&](const IntMatrix& a) {
            for (std::size_t i = 0; i < torsion_factors.size(); ++i)
                for (std::size_t j = 0; j < torsion_factors.size(); ++j) {
                    Int want = (i == j) ? 1 : 0;
                    if ((a.at(i, j) - want) % torsion_factors[i] != 0) return false;
                }
            return true;
        };
        IntMatrix p = torsion_frobenius;
        ot = 1;
        while (!is_id(p)) {
            p = p * torsion_frobenius;
            if (++ot > bound) throw std::invalid_argument("torsion frobenius order exceeds bound");
        }
    }
    std::size_t l = std::lcm(of, ot);
    if (l > bound) throw std::invalid_argument("frobenius order exceeds bound");
    return l;
}

IntegralGModule FrobeniusModule::as_g_module(std::size_t bound) const {
    std::size_t m = frobenius_order(bound);
    FiniteGroup g = FiniteGroup::cyclic(m);
    IntegralGModule out;
    out.group = g;
    out.rank = rank;
    out.actions.resize(m);
    out.actions[0] = IntMatrix::identity(rank);
    for (std::size_t k = 1; k < m; ++k) out.actions[k] = out.actions[k - 1] * frobenius;
    if (!torsion_factors.empty()) {
        TorsionModule t;
        t.factors = torsion_factors;
        t.actions.resize(m);
        t.actions[0] = IntMatrix::identity(t.factors.size());
        for (std::size_t k = 1; k < m; ++k) t.actions[k] = t.actions[k - 1] * torsion_frobenius;
        out.torsion = std::move(t);
    }
    out.validate();
    return out;
}

FrobeniusModule FrobeniusModule::dual_free() const {
    FrobeniusModule d;
    d.rank = rank;
    if (rank > 0) d.frobenius = inverse_unimodular(frobenius).transposed();
    d.residue_size = residue_size;
    return d;
}

FrobeniusModule FrobeniusModule::free(IntMatrix frob, Int residue_size) {
    FrobeniusModule m;
    m.rank = frob.rows();
    m.frobenius = std::move(frob);
    m.residue_size = std::move(residue_size);
    m.frobenius_order();  // validate finiteness
    return m;
}

FrobeniusModule FrobeniusModule::trivial_rank1(Int residue_size) {
    return free(IntMatrix::identity(1), std::move(residue_size));
}

}  // namespace wesv
