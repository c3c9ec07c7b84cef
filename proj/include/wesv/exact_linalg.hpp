#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace wesv {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense matrix of arbitrary-precision integers, row-major.
/// All cohomology and torsion computations run through this type; matrices
/// are tiny (dims <= ~30), so no attention is paid to asymptotics.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    /// Small-literal constructor for tests and fixed catalog matrices.
    static IntMatrix of(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_zero() const;
    bool is_identity() const;

    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;

    IntMatrix column(std::size_t j) const;
    /// Stack matrices side by side (equal row counts).
    static IntMatrix hstack(const std::vector<IntMatrix>& parts);
    /// Stack matrices on top of each other (equal column counts).
    static IntMatrix vstack(const std::vector<IntMatrix>& parts);

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> e_;
};

/// Finite abelian group in invariant-factor form: d1 | d2 | ... | dk, di >= 2.
struct FiniteAbelianGroup {
    std::vector<Int> invariant_factors;

    Int order() const;
    bool trivial() const { return invariant_factors.empty(); }
    Int exponent() const { return trivial() ? Int(1) : invariant_factors.back(); }
    bool operator==(const FiniteAbelianGroup& o) const = default;
    std::string str() const;
};

struct SmithDecomposition {
    IntMatrix u, d, v;  // u*a*v = d, |det u| = |det v| = 1
};

/// Smith normal form with deterministic smallest-absolute-value pivoting.
SmithDecomposition smith_normal_form(const IntMatrix& a);

struct CokernelData {
    std::size_t free_rank = 0;
    FiniteAbelianGroup torsion;
};

/// coker(Z^cols -> Z^rows) read off from the SNF diagonal.
CokernelData cokernel(const IntMatrix& a);

/// Z-basis of ker(a) (saturated), columns in Hermite-reduced form.
IntMatrix kernel_basis(const IntMatrix& a);

/// Canonical column-style Hermite form of the lattice spanned by the columns.
/// Zero columns are dropped; pivots are positive and entries to their right
/// are reduced.
IntMatrix hermite_column_form(const IntMatrix& a);

/// Solve a*x = b over the integers. Returns false when no integral solution
/// exists. When the solution is not unique any particular solution is valid;
/// the one derived from the SNF transform is returned.
bool solve_integer(const IntMatrix& a, const IntMatrix& b, IntMatrix& x);

/// Inverse of a matrix with determinant +-1.
IntMatrix inverse_unimodular(const IntMatrix& u);

/// Generators-and-relations quotient of lattices: given a basis (columns of
/// `basis`) of a lattice L and columns of `sub` generating a finite-index
/// sublattice W of L, returns the invariant factors of L/W together with
/// lifts of the corresponding generators (columns, in ambient coordinates).
struct LatticeQuotient {
    FiniteAbelianGroup group;
    IntMatrix lifts;        // one column per nontrivial invariant factor
    std::size_t free_rank;  // nonzero iff W does not have finite index
};
LatticeQuotient quotient_lattice(const IntMatrix& basis, const IntMatrix& sub);

}  // namespace wesv
