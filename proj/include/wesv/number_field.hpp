#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "wesv/exact_linalg.hpp"

namespace wesv {

/// Element x + y*w of a quadratic order, where w = (1+sqrt(d))/2 for
/// d = 1 mod 4 and w = sqrt(d) otherwise. For Q the y part is unused.
struct QuadInt {
    Int x = 0, y = 0;
    bool operator==(const QuadInt& o) const = default;
};

enum class Splitting { split, inert, ramified };

/// Finite place of the base field. For split rational primes in a quadratic
/// field the two conjugate places are distinguished by `index` (0 labels the
/// place whose Frobenius root of the minimal polynomial of w mod p is the
/// smaller residue).
struct PlaceData {
    long p = 0;
    int f = 1;
    int index = 0;
    Int norm() const {
        Int n = p;
        return f == 2 ? n * n : n;
    }
    bool operator==(const PlaceData& o) const = default;
};

struct UnitData {
    QuadInt coeffs;
    int norm_sign = 1;                         // N(eps) = +-1
    std::vector<std::complex<double>> embeddings;
    std::vector<double> log_abs;               // log|sigma_v(eps)| per embedding
    std::vector<int> signs_at_real_places;     // +1 / -1
};

struct NumberFieldData {
    std::string label;
    int degree = 1;
    long disc = 1;
    long d = 0;  // squarefree radicand; 0 for Q
    int r1 = 1, r2 = 0;
    long omega = 2;
    long h = 1;
    long h_plus = 1;
    double regulator = 1.0;
    /// One row per embedding (reals first, then conjugate complex pairs),
    /// columns = images of the integral basis (1, w).
    std::vector<std::vector<std::complex<double>>> integral_basis_embeddings;
    std::optional<UnitData> fundamental_unit;
    std::string provenance = "native";

    bool is_rational() const { return d == 0; }
    int unit_rank() const { return r1 + r2 - 1; }
};

NumberFieldData rational_field();

/// Builds arithmetic data for Q(sqrt(d)). Imaginary class numbers are counted
/// natively via reduced forms; real ones come from the bundled table (or the
/// explicit override). Throws std::invalid_argument on bad input.
NumberFieldData quadratic_field(long d, std::optional<long> h_override = std::nullopt);

/// Kronecker symbol (a|n).
int kronecker_symbol(long a, long n);

Splitting splitting_type(const NumberFieldData& k, long p);
std::vector<PlaceData> places_above(const NumberFieldData& k, long p);

/// Embeddings of x + y*w, ordered like integral_basis_embeddings rows.
std::vector<std::complex<double>> embed(const NumberFieldData& k, const QuadInt& a);
Int norm(const NumberFieldData& k, const QuadInt& a);
/// log|sigma_v(a)| per embedding, robust to values beyond double range.
std::vector<double> log_abs_embeddings(const NumberFieldData& k, const QuadInt& a);

/// L(1, chi_Delta) through the finite Gauss-sum formulas.
double dirichlet_L_at_1(long delta);

/// List the fundamental discriminants bundled for real quadratic ingestion.
const std::vector<std::pair<long, long>>& real_quadratic_class_table();

struct SPrimeData {
    PlaceData place;
    Splitting splitting;
    long class_order = 1;    // order of [p] in Cl(K)
    QuadInt generator;       // generator of p^class_order
};

struct SPlaceSet {
    std::vector<SPrimeData> primes;
    long h_s = 1;
    long h_s_plus = 1;
    std::size_t s_f() const { return primes.size(); }
};

/// S-class data and S-unit generators for the finite places in `places`.
SPlaceSet s_data(const NumberFieldData& k, const std::vector<PlaceData>& places);

/// Order of the class of the prime form above p (imaginary quadratic only).
long form_class_order(long delta, long p);

}  // namespace wesv
