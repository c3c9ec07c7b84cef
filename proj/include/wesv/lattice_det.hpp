#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "wesv/sheaf.hpp"

namespace wesv {

/// Bounded complex of real vector spaces with a full-rank lattice in each
/// degree. lattices[i] is dims[i] x dims[i] (columns = lattice basis);
/// boundaries[i] maps degree first_degree+i to first_degree+i+1 and has shape
/// dims[i+1] x dims[i]. The complex must be acyclic.
struct LatticeComplex {
    int first_degree = 0;
    std::vector<int> dims;
    std::vector<Eigen::MatrixXd> lattices;
    std::vector<Eigen::MatrixXd> boundaries;

    std::size_t length() const { return dims.size(); }
    void check_shapes() const;
};

struct DetInfo {
    double value = 1.0;
    /// Smallest ratio of a kept singular value to the largest one across all
    /// boundary maps; a small value flags ill-conditioned rank decisions.
    double min_rank_gap = 1.0;
};

/// det_{Z,R}: positive real measuring the lattices against the canonical
/// trivialization of the acyclic complex. Throws std::invalid_argument with
/// the failing degree when the complex is not acyclic at the 1e-8 rank
/// threshold.
double det_zr(const LatticeComplex& c);
DetInfo det_zr_info(const LatticeComplex& c);

/// R(F^D) from the sheaf's concrete B-complex: the unit/S-unit logarithmic
/// complex for (shriek) constant sheaves, the fixed-points evaluation pairing
/// for skyscrapers (the pairing determinant R(M), without the log N weights).
double regulator_RFD(const SheafDescriptor& f);

/// Disc(F) = (2 pi)^{r2(F)} det_{Z,R}(D-complex) built from the Lie lattice
/// embeddings; equals sqrt|Delta_K| for the constant sheaf.
double discriminant(const SheafDescriptor& f);

/// Double complex of real vector spaces with lattices, rows and columns both
/// acyclic. horiz[i][j]: (i,j) -> (i,j+1); vert[i][j]: (i,j) -> (i+1,j).
struct LatticeBicomplex {
    int nrows = 0, ncols = 0;
    std::vector<std::vector<int>> dims;
    std::vector<std::vector<Eigen::MatrixXd>> lattices;
    std::vector<std::vector<Eigen::MatrixXd>> horiz;
    std::vector<std::vector<Eigen::MatrixXd>> vert;
};

struct BicomplexCheck {
    double lhs = 1.0;  // prod_i det(row_i)^{(-1)^i}
    double rhs = 1.0;  // prod_j det(col_j)^{(-1)^j}
    double rel_err = 0.0;
};

BicomplexCheck bicomplex_identity_check(const LatticeBicomplex& b);

/// Seeded random biacyclic double complex: tensor of two exact integer
/// complexes built from unimodular-conjugated diagonal maps, with fresh
/// random integer lattices in every cell.
LatticeBicomplex random_biacyclic_bicomplex(std::uint64_t seed);

}  // namespace wesv
