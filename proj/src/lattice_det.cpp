#include "wesv/lattice_det.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wesv/prng.hpp"
#include "wesv/tate.hpp"

namespace wesv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRankTol = 1e-8;

}  // namespace

void LatticeComplex::check_shapes() const {
    std::size_t n = dims.size();
    if (lattices.size() != n || boundaries.size() + 1 != std::max<std::size_t>(n, 1))
        throw std::invalid_argument("lattice complex shape mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (lattices[i].rows() != dims[i] || lattices[i].cols() != dims[i])
            throw std::invalid_argument("lattice basis must be square full-rank");
        if (i + 1 < n &&
            (boundaries[i].rows() != dims[i + 1] || boundaries[i].cols() != dims[i]))
            throw std::invalid_argument("boundary map shape mismatch");
    }
}

DetInfo det_zr_info(const LatticeComplex& c) {
    c.check_shapes();
    DetInfo info;
    double log_value = 0;
    std::size_t n = c.length();
    Eigen::MatrixXd incoming(n ? c.dims[0] : 0, 0);  // image basis from below
    for (std::size_t idx = 0; idx < n; ++idx) {
        int deg = c.first_degree + static_cast<int>(idx);
        int dim = c.dims[idx];
        if (dim == 0) {
            if (incoming.cols() != 0)
                throw std::invalid_argument("complex not acyclic at degree " + std::to_string(deg));
            incoming = Eigen::MatrixXd(idx + 1 < n ? c.dims[idx + 1] : 0, 0);
            continue;
        }
        Eigen::MatrixXd d = (idx + 1 < n) ? c.boundaries[idx] : Eigen::MatrixXd(0, dim);
        int rank = 0;
        Eigen::MatrixXd complement(dim, 0);
        if (d.rows() > 0) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            double smax = sv.size() ? sv(0) : 0.0;
            double cut = kRankTol * std::max(1.0, smax);
            for (int i = 0; i < sv.size(); ++i)
                if (sv(i) > cut) ++rank;
            if (rank > 0 && rank < sv.size())
                info.min_rank_gap = std::min(info.min_rank_gap, sv(rank - 1) / std::max(smax, 1e-300));
            complement = svd.matrixV().leftCols(rank);  // orthonormal complement of ker d
        }
        int kernel_dim = dim - rank;
        if (kernel_dim != incoming.cols())
            throw std::invalid_argument("complex not acyclic at degree " + std::to_string(deg) +
                                        " (kernel dim " + std::to_string(kernel_dim) +
                                        ", incoming rank " + std::to_string(incoming.cols()) + ")");
        // residual of the incoming image inside ker d
        if (incoming.cols() > 0 && d.rows() > 0) {
            double resid = (d * incoming).norm() / std::max(1.0, incoming.norm() * d.norm());
            if (resid > 1e-6)
                throw std::invalid_argument("boundary composition nonzero at degree " +
                                            std::to_string(deg));
        }
        Eigen::MatrixXd basis(dim, dim);
        basis << incoming, complement;
        Eigen::PartialPivLU<Eigen::MatrixXd> lat(c.lattices[idx]);
        Eigen::MatrixXd t = lat.solve(basis);
        double det = std::fabs(t.determinant());
        if (!(det > 0) || !std::isfinite(det))
            throw std::invalid_argument("degenerate change of basis at degree " + std::to_string(deg));
        int parity = ((deg % 2) + 2) % 2;
        log_value += (parity == 1 ? 1.0 : -1.0) * std::log(det);
        incoming = (idx + 1 < n) ? Eigen::MatrixXd(d * complement) : Eigen::MatrixXd(0, 0);
    }
    if (incoming.cols() != 0) throw std::invalid_argument("complex not acyclic at the top degree");
    info.value = std::exp(log_value);
    return info;
}

double det_zr(const LatticeComplex& c) { return det_zr_info(c).value; }

namespace {

Eigen::MatrixXd identity_lattice(int n) { return Eigen::MatrixXd::Identity(n, n); }

// B-complex of the (S-)unit logarithm for (j_! Z)^D / Z^D:
//   deg -1: ker(sum) in R^{s_f}           (dual of H^1(X, j_! Z))
//   deg  0: (S-)units mod torsion
//   deg  1: prod_{v | infinity} R         (normalized log map)
//   deg  2: R (sum of components; only when S is empty, where H^0 = Z)
LatticeComplex unit_log_complex(const NumberFieldData& k, const SPlaceSet* s) {
    std::size_t sf = s ? s->s_f() : 0;
    int arch = k.r1 + k.r2;
    int unit_rank = k.unit_rank() + static_cast<int>(sf);

    // archimedean log columns: fundamental units then S-prime generators
    Eigen::MatrixXd arch_log(arch, unit_rank);
    int col = 0;
    if (k.unit_rank() > 0) {
        const UnitData& u = *k.fundamental_unit;
        for (int v = 0; v < arch; ++v) arch_log(v, col) = u.log_abs[v];  // r2 = 0 here
        ++col;
    }
    std::vector<double> gen_finite_log;
    if (s)
        for (const auto& sp : s->primes) {
            auto logs = log_abs_embeddings(k, sp.generator);
            if (k.r2 > 0) {
                // one complex place: normalized |.|_v = |.|^2
                arch_log(0, col) = 2 * logs[0];
            } else {
                for (int v = 0; v < arch; ++v) arch_log(v, col) = logs[v];
            }
            ++col;
        }

    LatticeComplex c;
    if (sf == 0) {
        // 0 -> units -> prod_v R -> R -> 0 in degrees 0, 1, 2
        c.first_degree = 0;
        c.dims = {unit_rank, arch, 1};
        c.lattices = {identity_lattice(unit_rank), identity_lattice(arch), identity_lattice(1)};
        Eigen::MatrixXd sum_map(1, arch);
        sum_map.setOnes();
        c.boundaries = {arch_log, sum_map};
        return c;
    }

    // finite valuation-log rows: v_p(gen) log N(p) at each S-place
    Eigen::MatrixXd fin_log = Eigen::MatrixXd::Zero(static_cast<int>(sf), unit_rank);
    for (std::size_t i = 0; i < sf; ++i) {
        const auto& sp = s->primes[i];
        int gen_col = (k.unit_rank() > 0 ? 1 : 0) + static_cast<int>(i);
        // the generator of p_i^{h_i} has valuation h_i at p_i and 0 at the
        // other S-places (norm is a pure prime power and the conjugate place
        // is excluded by construction)
        double log_nv = static_cast<double>(sp.place.f) * std::log(static_cast<double>(sp.place.p));
        fin_log(static_cast<int>(i), gen_col) = -static_cast<double>(sp.class_order) * log_nv;
    }

    // deg -1 lattice: ker(sum : Z^{s_f} -> Z), basis e_i - e_{i+1}
    int km = static_cast<int>(sf) - 1;
    Eigen::MatrixXd ker_basis = Eigen::MatrixXd::Zero(static_cast<int>(sf), km);
    for (int i = 0; i < km; ++i) {
        ker_basis(i, i) = 1;
        ker_basis(i + 1, i) = -1;
    }
    // connecting map: a in ker(sum) -> the S-unit (tensor R) with archimedean
    // logs 0 and valuation-log vector a; solve [fin_log; arch_log] u = [a; 0]
    Eigen::MatrixXd full(static_cast<int>(sf) + arch, unit_rank);
    full << fin_log, arch_log;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(static_cast<int>(sf) + arch, km);
    rhs.topRows(static_cast<int>(sf)) = ker_basis;
    Eigen::MatrixXd d_minus1 =
        full.completeOrthogonalDecomposition().solve(rhs);  // unit_rank x km
    double resid = (full * d_minus1 - rhs).norm();
    if (resid > 1e-7 * std::max(1.0, rhs.norm()))
        throw std::logic_error("S-unit log system is inconsistent");

    c.first_degree = -1;
    c.dims = {km, unit_rank, arch};
    c.lattices = {identity_lattice(km), identity_lattice(unit_rank), identity_lattice(arch)};
    c.boundaries = {d_minus1, arch_log};
    return c;
}

// Pairing complex of Prop. special_value_point, without the log N weight:
// (H^0(G_x,M)_R)^vee -> H^0(G_x, M^vee)_R via the evaluation form.
LatticeComplex skyscraper_pairing_complex(const FrobeniusModule& m) {
    IntegralGModule g = m.as_g_module();
    IntMatrix fixed = m.rank ? rationalized_invariants(g) : IntMatrix(0, 0);
    IntegralGModule gd = dual(g);
    IntMatrix fixed_dual = m.rank ? rationalized_invariants(gd) : IntMatrix(0, 0);
    int n = static_cast<int>(fixed.cols());
    if (static_cast<int>(fixed_dual.cols()) != n)
        throw std::logic_error("fixed ranks of M and its dual disagree");
    // pairing matrix P_ij = <dual_i, m_j>
    IntMatrix p = fixed_dual.transposed() * fixed;
    LatticeComplex c;
    c.first_degree = 2;
    c.dims = {n, n};
    c.lattices = {identity_lattice(n), identity_lattice(n)};
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = p.at(i, j).get_d();
    // map (H^0(M)_R)^vee -> H^0(M^vee)_R is the inverse of the pairing matrix
    c.boundaries = {d.inverse()};
    return c;
}

}  // namespace

double regulator_RFD(const SheafDescriptor& f) {
    f.validate();
    switch (f.variant) {
        case SheafVariant::constant_z:
            return det_zr(unit_log_complex(f.base, nullptr));
        case SheafVariant::shriek_z:
            return det_zr(unit_log_complex(f.base, &*f.s_set));
        case SheafVariant::skyscraper: {
            if (f.sky_module->rank == 0) return 1.0;
            // R(M): |det| of the evaluation pairing between the fixed lattices
            LatticeComplex c = skyscraper_pairing_complex(*f.sky_module);
            double det_inv = det_zr(c);  // = 1 / R(M)
            return 1.0 / det_inv;
        }
        case SheafVariant::pushforward_constant:
            return regulator_RFD(SheafDescriptor::constant_z(*f.extension));
        case SheafVariant::constant_finite:
            return 1.0;
        case SheafVariant::sum: {
            double r = 1;
            for (const auto& p : f.summands) r *= regulator_RFD(p);
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

// D-complex of the discriminant: 2i*pi lattice -> Lie lattice -> archimedean
// Hom lattice, in coordinates (sigma_v real; Re sigma_v, Im sigma_v complex).
LatticeComplex disc_complex(const NumberFieldData& k,
                            const std::vector<std::vector<std::complex<double>>>& lie) {
    int deg = static_cast<int>(lie.empty() ? 0 : lie[0].size());
    int r1 = k.r1, r2 = k.r2;
    LatticeComplex c;
    c.first_degree = -1;
    c.dims = {r2, deg, r1 + r2};
    // deg -1: (2 i pi Z)^{r2} with lattice generator 2*pi in the Im coordinate
    c.lattices = {Eigen::MatrixXd::Identity(r2, r2) * (2 * kPi), Eigen::MatrixXd(deg, deg),
                  identity_lattice(r1 + r2)};
    // deg 0 lattice: integral basis in (real rows; Re, Im of one complex
    // embedding per pair) coordinates
    Eigen::MatrixXd lat(deg, deg);
    for (int j = 0; j < deg; ++j) {
        int row = 0;
        for (int v = 0; v < r1; ++v) lat(row++, j) = lie[v][j].real();
        for (int v = 0; v < r2; ++v) {
            lat(row++, j) = lie[r1 + v][j].real();
            lat(row++, j) = lie[r1 + v][j].imag();
        }
    }
    c.lattices[1] = lat;
    // d_{-1}: k-th generator of 2i*pi Z^{r2} lands on the Im coordinate of the
    // k-th complex place
    Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(deg, r2);
    for (int v = 0; v < r2; ++v) d1(r1 + 2 * v + 1, v) = 1.0;
    // d_0: real places record sigma_v, complex places 2 Re sigma_v
    Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(r1 + r2, deg);
    for (int v = 0; v < r1; ++v) d2(v, v) = 1.0;
    for (int v = 0; v < r2; ++v) d2(r1 + v, r1 + 2 * v) = 2.0;
    c.boundaries = {d1, d2};
    return c;
}

}  // namespace

double discriminant(const SheafDescriptor& f) {
    f.validate();
    switch (f.variant) {
        case SheafVariant::constant_z:
        case SheafVariant::shriek_z: {
            LieData lie = lie_data(f);
            LatticeComplex c = disc_complex(f.base, lie.lattice_embeddings);
            return std::pow(2 * kPi, f.base.r2) * det_zr(c);
        }
        case SheafVariant::skyscraper:
        case SheafVariant::constant_finite:
            return 1.0;
        case SheafVariant::pushforward_constant:
            return discriminant(SheafDescriptor::constant_z(*f.extension));
        case SheafVariant::sum: {
            double r = 1;
            for (const auto& p : f.summands) r *= discriminant(p);
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

LatticeComplex bicomplex_row(const LatticeBicomplex& b, int i) {
    LatticeComplex c;
    c.first_degree = 0;
    for (int j = 0; j < b.ncols; ++j) {
        c.dims.push_back(b.dims[i][j]);
        c.lattices.push_back(b.lattices[i][j]);
        if (j + 1 < b.ncols) c.boundaries.push_back(b.horiz[i][j]);
    }
    return c;
}

LatticeComplex bicomplex_col(const LatticeBicomplex& b, int j) {
    LatticeComplex c;
    c.first_degree = 0;
    for (int i = 0; i < b.nrows; ++i) {
        c.dims.push_back(b.dims[i][j]);
        c.lattices.push_back(b.lattices[i][j]);
        if (i + 1 < b.nrows) c.boundaries.push_back(b.vert[i][j]);
    }
    return c;
}

}  // namespace

BicomplexCheck bicomplex_identity_check(const LatticeBicomplex& b) {
    BicomplexCheck out;
    double log_lhs = 0, log_rhs = 0;
    for (int i = 0; i < b.nrows; ++i)
        log_lhs += (i % 2 == 0 ? 1.0 : -1.0) * std::log(det_zr(bicomplex_row(b, i)));
    for (int j = 0; j < b.ncols; ++j)
        log_rhs += (j % 2 == 0 ? 1.0 : -1.0) * std::log(det_zr(bicomplex_col(b, j)));
    out.lhs = std::exp(log_lhs);
    out.rhs = std::exp(log_rhs);
    out.rel_err = std::fabs(out.lhs - out.rhs) / std::max({std::fabs(out.lhs), std::fabs(out.rhs), 1e-300});
    return out;
}

namespace {

IntMatrix random_unimodular_lattice(Prng& rng, int n, int ops) {
    IntMatrix u = IntMatrix::identity(n);
    for (int k = 0; k < ops; ++k) {
        std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        long c = rng.range(-2, 2);
        for (int r = 0; r < n; ++r) u.at(i, r) += c * u.at(j, r);
    }
    return u;
}

Eigen::MatrixXd to_eigen(const IntMatrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m.at(i, j).get_d();
    return e;
}

// Exact integer 3-term complex 0 -> Z^a -> Z^{a+c} -> Z^c -> 0 with
// unimodular-conjugated diagonal interior maps.
struct ExactTriple {
    int a, c;
    IntMatrix d1, d2;  // d2 * d1 = 0, real-exact
};

ExactTriple random_exact_triple(Prng& rng) {
    ExactTriple t;
    t.a = 1 + static_cast<int>(rng.below(2));
    t.c = 1 + static_cast<int>(rng.below(2));
    int n = t.a + t.c;
    IntMatrix u = random_unimodular_lattice(rng, n, 6);
    IntMatrix uinv = inverse_unimodular(u);
    IntMatrix inj(n, t.a);
    for (int i = 0; i < t.a; ++i) inj.at(i, i) = rng.range(1, 3);  // diagonal core
    IntMatrix proj(t.c, n);
    for (int i = 0; i < t.c; ++i) proj.at(i, t.a + i) = rng.range(1, 3);
    t.d1 = u * inj;
    t.d2 = proj * uinv;
    return t;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
    return k;
}

IntMatrix random_invertible_lattice(Prng& rng, int n) {
    // triangular with nonzero diagonal, then unimodular mixing
    IntMatrix l(n, n);
    for (int i = 0; i < n; ++i) {
        l.at(i, i) = rng.range(1, 3);
        for (int j = 0; j < i; ++j) l.at(i, j) = rng.range(-2, 2);
    }
    return random_unimodular_lattice(rng, n, 4) * l;
}

}  // namespace

LatticeBicomplex random_biacyclic_bicomplex(std::uint64_t seed) {
    Prng rng(seed);
    Prng rng_a = rng.split(1), rng_b = rng.split(2), rng_l = rng.split(3);
    ExactTriple ta = random_exact_triple(rng_a);
    ExactTriple tb = random_exact_triple(rng_b);
    std::vector<int> adims = {ta.a, ta.a + ta.c, ta.c};
    std::vector<IntMatrix> abnd = {ta.d1, ta.d2};
    std::vector<int> bdims = {tb.a, tb.a + tb.c, tb.c};
    std::vector<IntMatrix> bbnd = {tb.d1, tb.d2};

    LatticeBicomplex out;
    out.nrows = 3;
    out.ncols = 3;
    out.dims.assign(3, std::vector<int>(3));
    out.lattices.assign(3, std::vector<Eigen::MatrixXd>(3));
    out.horiz.assign(3, std::vector<Eigen::MatrixXd>(3));
    out.vert.assign(3, std::vector<Eigen::MatrixXd>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int dim = adims[i] * bdims[j];
            out.dims[i][j] = dim;
            out.lattices[i][j] = to_eigen(random_invertible_lattice(rng_l, dim));
            if (j + 1 < 3)
                out.horiz[i][j] = to_eigen(kron(IntMatrix::identity(adims[i]), bbnd[j]));
            if (i + 1 < 3)
                out.vert[i][j] = to_eigen(kron(abnd[i], IntMatrix::identity(bdims[j])));
        }
    return out;
}

}  // namespace wesv
