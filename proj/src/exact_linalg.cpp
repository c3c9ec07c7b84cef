#include "wesv/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wesv {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::of(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
        std::size_t j = 0;
        for (long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& v) { return v == 0; });
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += a * o.at(k, j);
        }
    return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    IntMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] + o.e_[i];
    return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
    IntMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] - o.e_[i];
    return s;
}

IntMatrix IntMatrix::column(std::size_t j) const {
    IntMatrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
}

IntMatrix IntMatrix::hstack(const std::vector<IntMatrix>& parts) {
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
        if (p.cols() == 0) continue;
        if (r == 0) r = p.rows();
        if (p.rows() != r) throw std::invalid_argument("hstack row mismatch");
        c += p.cols();
    }
    IntMatrix m(r, c);
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) m.at(i, off + j) = p.at(i, j);
        off += p.cols();
    }
    return m;
}

IntMatrix IntMatrix::vstack(const std::vector<IntMatrix>& parts) {
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
        if (p.rows() == 0) continue;
        if (c == 0) c = p.cols();
        if (p.cols() != c) throw std::invalid_argument("vstack col mismatch");
        r += p.rows();
    }
    IntMatrix m(r, c);
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) m.at(off + i, j) = p.at(i, j);
        off += p.rows();
    }
    return m;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

Int FiniteAbelianGroup::order() const {
    Int o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

std::string FiniteAbelianGroup::str() const {
    if (trivial()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i)
        os << (i ? " + " : "") << "Z/" << invariant_factors[i].get_str();
    return os.str();
}

namespace {

struct SnfWork {
    IntMatrix d, u, v;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(a, j), u.at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, a), v.at(i, b));
    }
    // row[a] -= q * row[b]
    void row_op(std::size_t a, std::size_t b, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(a, j) -= q * d.at(b, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(a, j) -= q * u.at(b, j);
    }
    // col[a] -= q * col[b]
    void col_op(std::size_t a, std::size_t b, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < d.rows(); ++i) d.at(i, a) -= q * d.at(i, b);
        for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, a) -= q * v.at(i, b);
    }
    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(a, j) = -d.at(a, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(a, j) = -u.at(a, j);
    }
};

// Deterministic pivot selection: smallest nonzero |entry| in the trailing
// submatrix, ties broken by row-major scan order.
bool find_pivot(const IntMatrix& d, std::size_t k, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = k; i < d.rows(); ++i)
        for (std::size_t j = k; j < d.cols(); ++j) {
            const Int& e = d.at(i, j);
            if (e == 0) continue;
            Int a = abs(e);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    SnfWork w{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
    std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            std::size_t pi, pj;
            if (!find_pivot(w.d, k, pi, pj)) { goto done; }
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            bool dirty = false;
            for (std::size_t i = k + 1; i < w.d.rows(); ++i) {
                if (w.d.at(i, k) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w.d.at(i, k).get_mpz_t(), w.d.at(k, k).get_mpz_t());
                w.row_op(i, k, q);
                if (w.d.at(i, k) != 0) dirty = true;
            }
            for (std::size_t j = k + 1; j < w.d.cols(); ++j) {
                if (w.d.at(k, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w.d.at(k, j).get_mpz_t(), w.d.at(k, k).get_mpz_t());
                w.col_op(j, k, q);
                if (w.d.at(k, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // pivot now divides its row/col remainders (all zero); enforce
            // divisibility into the trailing block
            bool fixed = false;
            for (std::size_t i = k + 1; i < w.d.rows() && !fixed; ++i)
                for (std::size_t j = k + 1; j < w.d.cols() && !fixed; ++j)
                    if (w.d.at(i, j) % w.d.at(k, k) != 0) {
                        w.row_op(k, i, Int(-1));  // add row i to row k
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (w.d.at(k, k) < 0) w.negate_row(k);
    }
done:
    return SmithDecomposition{w.u, w.d, w.v};
}

CokernelData cokernel(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    CokernelData out;
    std::size_t n = std::min(a.rows(), a.cols());
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Int& d = s.d.at(k, k);
        if (d == 0) break;
        ++rank;
        if (d > 1) out.torsion.invariant_factors.push_back(d);
    }
    out.free_rank = a.rows() - rank;
    return out;
}

IntMatrix kernel_basis(const IntMatrix& a) {
    if (a.cols() == 0) return IntMatrix(a.rows() == 0 ? 0 : 0, 0);
    SmithDecomposition s = smith_normal_form(a);
    std::size_t n = std::min(a.rows(), a.cols());
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (s.d.at(k, k) != 0) ++rank;
    IntMatrix basis(a.cols(), a.cols() - rank);
    for (std::size_t j = rank; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.cols(); ++i) basis.at(i, j - rank) = s.v.at(i, j);
    return hermite_column_form(basis);
}

IntMatrix hermite_column_form(const IntMatrix& a) {
    // Column-operations-only elimination to a lower-echelon canonical form.
    IntMatrix m = a;
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t lead = 0;
    for (std::size_t i = 0; i < rows && lead < cols; ++i) {
        // gcd out row i across columns lead..end
        for (;;) {
            std::size_t best = cols;
            for (std::size_t j = lead; j < cols; ++j)
                if (m.at(i, j) != 0 && (best == cols || abs(m.at(i, j)) < abs(m.at(i, best)))) best = j;
            if (best == cols) break;
            if (best != lead)
                for (std::size_t r = 0; r < rows; ++r) std::swap(m.at(r, lead), m.at(r, best));
            bool clean = true;
            for (std::size_t j = lead + 1; j < cols; ++j) {
                if (m.at(i, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, j).get_mpz_t(), m.at(i, lead).get_mpz_t());
                for (std::size_t r = 0; r < rows; ++r) m.at(r, j) -= q * m.at(r, lead);
                if (m.at(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m.at(i, lead) == 0) continue;
        if (m.at(i, lead) < 0)
            for (std::size_t r = 0; r < rows; ++r) m.at(r, lead) = -m.at(r, lead);
        // reduce earlier columns against this pivot
        for (std::size_t j = 0; j < lead; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(i, j).get_mpz_t(), m.at(i, lead).get_mpz_t());
            if (q != 0)
                for (std::size_t r = 0; r < rows; ++r) m.at(r, j) -= q * m.at(r, lead);
        }
        ++lead;
    }
    // drop zero columns
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < cols; ++j) {
        bool z = true;
        for (std::size_t i = 0; i < rows; ++i)
            if (m.at(i, j) != 0) { z = false; break; }
        if (!z) keep.push_back(j);
    }
    IntMatrix out(rows, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) out.at(i, j) = m.at(i, keep[j]);
    return out;
}

bool solve_integer(const IntMatrix& a, const IntMatrix& b, IntMatrix& x) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
    SmithDecomposition s = smith_normal_form(a);
    IntMatrix ub = s.u * b;
    std::size_t n = std::min(a.rows(), a.cols());
    IntMatrix y(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Int d = (i < n) ? s.d.at(i, i) : Int(0);
            if (d == 0) {
                if (ub.at(i, j) != 0) return false;
            } else {
                if (ub.at(i, j) % d != 0) return false;
                if (i < a.cols()) y.at(i, j) = ub.at(i, j) / d;
            }
        }
    }
    x = s.v * y;
    return true;
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
    IntMatrix inv;
    if (!solve_integer(u, IntMatrix::identity(u.rows()), inv))
        throw std::invalid_argument("matrix is not invertible over Z");
    return inv;
}

LatticeQuotient quotient_lattice(const IntMatrix& basis, const IntMatrix& sub) {
    LatticeQuotient out;
    std::size_t k = basis.cols();
    if (k == 0) {
        out.free_rank = 0;
        return out;
    }
    IntMatrix x;
    if (sub.cols() == 0) {
        x = IntMatrix(k, 0);
    } else if (!solve_integer(basis, sub, x)) {
        throw std::invalid_argument("sublattice generators do not lie in the lattice");
    }
    SmithDecomposition s = smith_normal_form(x);
    IntMatrix uinv = inverse_unimodular(s.u);
    std::size_t n = std::min(x.rows(), x.cols());
    std::vector<std::size_t> gens;
    out.free_rank = 0;
    for (std::size_t i = 0; i < k; ++i) {
        Int d = (i < n) ? s.d.at(i, i) : Int(0);
        if (d == 0)
            ++out.free_rank;
        else if (d > 1) {
            out.group.invariant_factors.push_back(d);
            gens.push_back(i);
        }
    }
    IntMatrix lifts_in_basis(k, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < k; ++i) lifts_in_basis.at(i, j) = uinv.at(i, gens[j]);
    out.lifts = basis * lifts_in_basis;
    return out;
}

}  // namespace wesv
