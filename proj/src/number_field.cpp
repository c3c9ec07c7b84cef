#include "wesv/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wesv {

// Implemented in json_io.cpp: WESV_DATA_DIR/real_quadratic_h.json override.
std::optional<long> ingested_real_quadratic_h(long delta);

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_squarefree(long d) {
    long a = std::labs(d);
    if (a == 0) return false;
    for (long q = 2; q * q <= a; ++q)
        while (a % q == 0) {
            a /= q;
            if (a % q == 0) return false;
        }
    return true;
}

long fundamental_discriminant(long d) { return ((d % 4 + 4) % 4 == 1) ? d : 4 * d; }

// ---- binary quadratic forms, negative discriminant ------------------------

struct QForm {
    Int a, b, c;
    bool operator==(const QForm& o) const = default;
    bool operator<(const QForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

QForm reduce_form(QForm f) {
    for (;;) {
        Int two_a = 2 * f.a;
        Int r = f.b % two_a;
        if (r > f.a) r -= two_a;
        if (r <= -f.a) r += two_a;
        if (r != f.b) {
            Int disc = f.b * f.b - 4 * f.a * f.c;
            f.b = r;
            f.c = (f.b * f.b - disc) / (4 * f.a);
        }
        if (f.a > f.c) {
            f = QForm{f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

QForm principal_form(long delta) {
    Int b = (delta % 2 + 2) % 2;
    Int c = (b * b - delta) / 4;
    return QForm{1, b, c};
}

// Arndt composition of primitive forms of the same discriminant.
QForm compose(const QForm& f1, const QForm& f2, long delta) {
    Int beta = (f1.b + f2.b) / 2;
    Int g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), f1.a.get_mpz_t(), f2.a.get_mpz_t());
    Int m, s, t;
    mpz_gcdext(m.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), beta.get_mpz_t());
    Int x = s * u, y = s * v, z = t;
    // a1 x + a2 y + beta z = m = gcd(a1, a2, beta)
    Int bigA = (f1.a / m) * (f2.a / m);
    Int num = f1.a * f2.b * x + f2.a * f1.b * y + z * (f1.b * f2.b + delta) / 2;
    if (num % m != 0) throw std::logic_error("form composition: inexact division");
    Int bigB = num / m;
    Int twoA = 2 * bigA;
    mpz_fdiv_r(bigB.get_mpz_t(), bigB.get_mpz_t(), twoA.get_mpz_t());
    Int bigC = (bigB * bigB - delta) / (4 * bigA);
    return reduce_form(QForm{bigA, bigB, bigC});
}

long count_reduced_forms(long delta) {
    // reduced primitive (a,b,c): b^2 - 4ac = delta, |b| <= a <= c,
    // with b >= 0 when |b| = a or a = c
    long count = 0;
    for (Int b = (delta % 2 + 2) % 2; b * b * 3 <= -delta; b += 2) {
        Int m4 = b * b - delta;
        if (m4 % 4 != 0) continue;
        Int m = m4 / 4;
        for (Int a = std::max(Int(1), b); a * a <= m; ++a) {
            if (m % a != 0) continue;
            Int c = m / a;
            Int g = gcd(gcd(a, b), c);
            if (g != 1) continue;
            ++count;
            if (b != 0 && b != a && a != c) ++count;  // (a,-b,c)
        }
    }
    return count;
}

std::optional<QForm> prime_form(long delta, long p) {
    for (Int b = 0; b < 2 * p; ++b) {
        Int r = (b * b - delta) % (4 * p);
        if (r == 0) return reduce_form(QForm{p, b, (b * b - delta) / (4 * p)});
    }
    return std::nullopt;
}

long form_order(long delta, const QForm& f) {
    QForm id = reduce_form(principal_form(delta));
    QForm acc = f;
    long k = 1;
    while (!(acc == id)) {
        acc = compose(acc, f, delta);
        if (++k > 100000) throw std::logic_error("runaway form order");
    }
    return k;
}

std::size_t form_subgroup_size(long delta, const std::vector<QForm>& gens) {
    std::set<QForm> seen{reduce_form(principal_form(delta))};
    std::vector<QForm> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<QForm> next;
        for (const auto& f : frontier)
            for (const auto& g : gens) {
                QForm h = compose(f, g, delta);
                if (seen.insert(h).second) next.push_back(h);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

// ---- continued fraction fundamental unit ----------------------------------

Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = isqrt(n);
    return root * root == n;
}

// Fundamental unit of O_K for real squarefree d: expand the continued
// fraction of w and test convergents p_k + q_k * w for |norm| = 1.
QuadInt fundamental_unit_cf(long d) {
    bool one_mod4 = ((d % 4 + 4) % 4 == 1);
    Int D = d;
    Int sq = isqrt(D);
    Int P = one_mod4 ? 1 : 0;
    Int Q = one_mod4 ? 2 : 1;
    Int p_prev = 1, q_prev = 0;
    Int p_cur, q_cur;
    bool have_cur = false;
    auto norm_xy = [&](const Int& x, const Int& y) -> Int {
        if (one_mod4) return Int(x * x + x * y - y * y * ((D - 1) / 4));
        return Int(x * x - D * y * y);
    };
    for (int step = 0; step < 100000; ++step) {
        Int a = (P + sq) / Q;
        Int p_new = have_cur ? a * p_cur + p_prev : a;
        Int q_new = have_cur ? a * q_cur + q_prev : Int(1);
        if (have_cur) {
            p_prev = p_cur;
            q_prev = q_cur;
        }
        p_cur = p_new;
        q_cur = q_new;
        have_cur = true;
        // units are p - q * conj(w): for d = 1 mod 4, conj(w) = 1 - w, so the
        // candidate is (p - q) + q w; otherwise conj(w) = -w and it is p + q w
        Int x = one_mod4 ? Int(p_cur - q_cur) : p_cur;
        Int n = norm_xy(x, q_cur);
        if (q_cur > 0 && (n == 1 || n == -1)) return QuadInt{x, q_cur};
        P = a * Q - P;
        Q = (D - P * P) / Q;
        if (Q == 0) throw std::invalid_argument("d must not be a perfect square");
    }
    throw std::logic_error("continued fraction did not close");
}

// ---- bundled real quadratic class numbers ----------------------------------

// Classical class numbers of real quadratic fields with fundamental
// discriminant 0 < D <= 200, keyed by D. Cross-checked at test time against
// the analytic class number formula.
const std::vector<std::pair<long, long>> kRealQuadraticH = {
    {5, 1},   {8, 1},   {12, 1},  {13, 1},  {17, 1},  {21, 1},  {24, 1},  {28, 1},  {29, 1},
    {33, 1},  {37, 1},  {40, 2},  {41, 1},  {44, 1},  {53, 1},  {56, 1},  {57, 1},  {60, 2},
    {61, 1},  {65, 2},  {69, 1},  {73, 1},  {76, 1},  {77, 1},  {85, 2},  {88, 1},  {89, 1},
    {92, 1},  {93, 1},  {97, 1},  {101, 1}, {104, 2}, {105, 2}, {109, 1}, {113, 1}, {120, 2},
    {124, 1}, {129, 1}, {133, 1}, {136, 2}, {137, 1}, {140, 2}, {141, 1}, {145, 4}, {149, 1},
    {152, 1}, {156, 2}, {157, 1}, {161, 1}, {165, 2}, {168, 2}, {172, 1}, {173, 1}, {177, 1},
    {181, 1}, {184, 1}, {185, 2}, {188, 1}, {193, 1}, {197, 1},
};

std::optional<long> table_lookup(long delta) {
    if (auto v = ingested_real_quadratic_h(delta)) return v;
    for (const auto& [dd, hh] : kRealQuadraticH)
        if (dd == delta) return hh;
    return std::nullopt;
}

double omega_real_root(long d, int which) {  // which = 0: +sqrt branch
    double sq = std::sqrt(static_cast<double>(d));
    if (((d % 4) + 4) % 4 == 1) return which == 0 ? (1 + sq) / 2 : (1 - sq) / 2;
    return which == 0 ? sq : -sq;
}

// log|m| via mantissa/exponent split, safe for huge integers.
double log_abs_mpz(const Int& m) {
    long exp;
    double mant = mpz_get_d_2exp(&exp, m.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

const std::vector<std::pair<long, long>>& real_quadratic_class_table() { return kRealQuadraticH; }

int kronecker_symbol(long a, long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2 == 1) {
        long r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

NumberFieldData rational_field() {
    NumberFieldData k;
    k.label = "Q";
    k.degree = 1;
    k.disc = 1;
    k.d = 0;
    k.r1 = 1;
    k.r2 = 0;
    k.omega = 2;
    k.h = 1;
    k.h_plus = 1;
    k.regulator = 1.0;
    k.integral_basis_embeddings = {{{1.0, 0.0}}};
    k.provenance = "native";
    return k;
}

std::vector<std::complex<double>> embed(const NumberFieldData& k, const QuadInt& a) {
    std::vector<std::complex<double>> out;
    for (const auto& row : k.integral_basis_embeddings) {
        std::complex<double> v = a.x.get_d() * row[0];
        if (row.size() > 1) v += a.y.get_d() * row[1];
        out.push_back(v);
    }
    return out;
}

Int norm(const NumberFieldData& k, const QuadInt& a) {
    if (k.is_rational()) return a.x;
    long d = k.d;
    if (((d % 4) + 4) % 4 == 1) return a.x * a.x + a.x * a.y - a.y * a.y * ((Int(d) - 1) / 4);
    return a.x * a.x - Int(d) * a.y * a.y;
}

std::vector<double> log_abs_embeddings(const NumberFieldData& k, const QuadInt& a) {
    if (k.is_rational()) return {log_abs_mpz(a.x)};
    if (k.d > 0) {
        auto lin = [&](int which) {
            double s = omega_real_root(k.d, which);
            double vx = a.x.get_d(), vy = a.y.get_d();
            double v = vx + vy * s;
            if (v != 0.0 && std::isfinite(v)) return std::log(std::fabs(v));
            // |x + y s| = |y| * |x/y + s|, with |x/y| formed in log space
            if (a.y == 0) return log_abs_mpz(a.x);
            double ratio = std::exp(log_abs_mpz(a.x) - log_abs_mpz(a.y));
            if (sgn(a.x) * sgn(a.y) < 0) ratio = -ratio;
            return log_abs_mpz(a.y) + std::log(std::fabs(ratio + s));
        };
        return {lin(0), lin(1)};
    }
    Int n = norm(k, a);
    double half_log_norm = log_abs_mpz(n) / 2;
    return {half_log_norm, half_log_norm};
}

NumberFieldData quadratic_field(long d, std::optional<long> h_override) {
    if (d == 0 || d == 1) throw std::invalid_argument("d must be a squarefree integer != 0, 1");
    if (!is_squarefree(d)) throw std::invalid_argument("d must be squarefree");
    NumberFieldData k;
    k.d = d;
    k.degree = 2;
    k.disc = fundamental_discriminant(d);
    std::ostringstream lab;
    lab << "Q(sqrt(" << d << "))";
    k.label = lab.str();
    if (d > 0) {
        k.r1 = 2;
        k.r2 = 0;
        k.omega = 2;
    } else {
        k.r1 = 0;
        k.r2 = 1;
        k.omega = (k.disc == -3) ? 6 : (k.disc == -4) ? 4 : 2;
    }

    bool one_mod4 = ((d % 4) + 4) % 4 == 1;
    if (d > 0) {
        double w0 = omega_real_root(d, 0), w1 = omega_real_root(d, 1);
        k.integral_basis_embeddings = {{{1.0, 0.0}, {w0, 0.0}}, {{1.0, 0.0}, {w1, 0.0}}};
    } else {
        double sq = std::sqrt(static_cast<double>(-d));
        std::complex<double> w =
            one_mod4 ? std::complex<double>(0.5, sq / 2) : std::complex<double>(0.0, sq);
        k.integral_basis_embeddings = {{{1.0, 0.0}, w}, {{1.0, 0.0}, std::conj(w)}};
    }

    if (d < 0) {
        k.h = h_override.value_or(count_reduced_forms(k.disc));
        k.h_plus = k.h;
        k.regulator = 1.0;
        k.provenance = h_override ? "override" : "native";
    } else {
        QuadInt eps = fundamental_unit_cf(d);
        UnitData u;
        u.coeffs = eps;
        u.norm_sign = (norm(k, eps) == 1) ? 1 : -1;
        u.log_abs = log_abs_embeddings(k, eps);
        if (u.log_abs[0] < u.log_abs[1]) {
            // store the conjugate that exceeds 1 at the first embedding
            QuadInt c = one_mod4 ? QuadInt{eps.x + eps.y, -eps.y} : QuadInt{eps.x, -eps.y};
            u.coeffs = c;
            u.log_abs = log_abs_embeddings(k, c);
        }
        u.embeddings = embed(k, u.coeffs);
        for (int e = 0; e < 2; ++e) {
            double s = omega_real_root(d, e);
            double vx = u.coeffs.x.get_d(), vy = u.coeffs.y.get_d();
            double v = vx + vy * s;
            int sign;
            if (v != 0 && std::isfinite(v)) {
                sign = v > 0 ? 1 : -1;
            } else {
                double lx = u.coeffs.x == 0 ? -1e300 : log_abs_mpz(u.coeffs.x);
                double ly = u.coeffs.y == 0 ? -1e300 : log_abs_mpz(u.coeffs.y) + std::log(std::fabs(s));
                sign = lx > ly ? sgn(u.coeffs.x) : sgn(u.coeffs.y) * (s > 0 ? 1 : -1);
            }
            u.signs_at_real_places.push_back(sign);
        }
        k.regulator = std::max(u.log_abs[0], u.log_abs[1]);
        k.fundamental_unit = u;
        auto th = h_override ? h_override : table_lookup(k.disc);
        if (!th)
            throw std::invalid_argument(
                "class number of real quadratic field not in the bundled table; pass --h-override");
        k.h = *th;
        k.provenance = h_override ? "override" : "ingested";
        k.h_plus = (u.norm_sign == -1) ? k.h : 2 * k.h;
    }
    return k;
}

Splitting splitting_type(const NumberFieldData& k, long p) {
    if (k.is_rational()) throw std::invalid_argument("splitting is defined for quadratic fields");
    if (k.disc % p == 0) return Splitting::ramified;
    return kronecker_symbol(k.disc, p) == 1 ? Splitting::split : Splitting::inert;
}

std::vector<PlaceData> places_above(const NumberFieldData& k, long p) {
    if (k.is_rational()) return {PlaceData{p, 1, 0}};
    switch (splitting_type(k, p)) {
        case Splitting::split:
            return {PlaceData{p, 1, 0}, PlaceData{p, 1, 1}};
        case Splitting::ramified:
            return {PlaceData{p, 1, 0}};
        case Splitting::inert:
            return {PlaceData{p, 2, 0}};
    }
    throw std::logic_error("unreachable");
}

namespace {

// Roots of the minimal polynomial of w mod p, sorted.
std::vector<long> omega_roots_mod_p(const NumberFieldData& k, long p) {
    bool one_mod4 = ((k.d % 4) + 4) % 4 == 1;
    std::vector<long> roots;
    for (long r = 0; r < p; ++r) {
        Int v;
        if (one_mod4)
            v = Int(r) * r - r - (Int(k.d) - 1) / 4;
        else
            v = Int(r) * r - k.d;
        if (v % p == 0) roots.push_back(r);
    }
    return roots;
}

Int residue_at(const NumberFieldData& k, const PlaceData& pl, const QuadInt& a) {
    std::vector<long> roots = omega_roots_mod_p(k, pl.p);
    if (roots.empty()) throw std::logic_error("no degree-1 residue map at an inert place");
    long r = roots[std::min<std::size_t>(pl.index, roots.size() - 1)];
    Int v = (a.x + a.y * r) % pl.p;
    if (v < 0) v += pl.p;
    return v;
}

// Enumerate x for a given y with N(x + y w) = n, exactly.
std::vector<Int> solve_x_for_norm(long d, const Int& y, const Int& n) {
    std::vector<Int> out;
    bool one_mod4 = ((d % 4) + 4) % 4 == 1;
    if (one_mod4) {
        // x^2 + x y - y^2 (d-1)/4 = n  =>  x = (-y +- sqrt(d y^2 + 4n)) / 2
        Int disc = Int(d) * y * y + 4 * n, root;
        if (!perfect_square(disc, root)) return out;
        for (int s : {1, -1}) {
            Int num = -y + s * root;
            if (num % 2 == 0) out.push_back(num / 2);
            if (root == 0) break;
        }
    } else {
        // x^2 - d y^2 = n
        Int rhs = n + Int(d) * y * y, root;
        if (!perfect_square(rhs, root)) return out;
        out.push_back(root);
        if (root != 0) out.push_back(-root);
    }
    return out;
}

// Search an element of norm +-target satisfying pred. The y-window is wide
// enough that an empty result certifies there is none (up to units); beyond
// the desk-scale cap the search refuses instead of answering incompletely.
std::optional<QuadInt> find_element_of_norm(const NumberFieldData& k, const Int& target,
                                            const std::function<bool(const QuadInt&)>& pred) {
    double t = std::exp(log_abs_mpz(target) / 2);  // sqrt|target|
    double by;
    if (k.d < 0) {
        by = 2 * t / std::sqrt(std::fabs(static_cast<double>(k.d))) + 2;
    } else {
        double gap = std::fabs(omega_real_root(k.d, 0) - omega_real_root(k.d, 1));
        by = (t * std::exp(k.regulator) + t) / gap + 2;
    }
    if (by > 2.0e6)
        throw std::invalid_argument("S-prime generator search exceeds the desk-scale window");
    long BY = static_cast<long>(by);
    std::vector<Int> signs{target};
    if (k.d > 0) signs.push_back(-target);
    for (long y = 0; y <= BY; ++y)
        for (long sy : {1, -1}) {
            if (y == 0 && sy < 0) continue;
            Int yy = Int(y) * sy;
            for (const Int& n : signs)
                for (const Int& x : solve_x_for_norm(k.d, yy, n)) {
                    QuadInt cand{x, yy};
                    if (pred(cand)) return cand;
                }
        }
    return std::nullopt;
}

std::optional<QuadInt> generator_of_prime_power(const NumberFieldData& k, const PlaceData& pl,
                                                long kpow) {
    Int target = 1;
    for (long i = 0; i < kpow; ++i) target *= pl.p;
    bool split = splitting_type(k, pl.p) == Splitting::split;
    PlaceData other{pl.p, 1, 1 - pl.index};
    return find_element_of_norm(k, target, [&](const QuadInt& cand) {
        if (residue_at(k, pl, cand) != 0) return false;
        if (split && residue_at(k, other, cand) == 0) return false;
        return true;
    });
}

}  // namespace

long form_class_order(long delta, long p) {
    if (delta >= 0) throw std::invalid_argument("form classes implemented for imaginary fields");
    auto f = prime_form(delta, p);
    if (!f) return 1;  // inert: principal
    return form_order(delta, *f);
}

SPlaceSet s_data(const NumberFieldData& k, const std::vector<PlaceData>& places) {
    SPlaceSet out;
    if (k.is_rational()) {
        for (const auto& pl : places) {
            SPrimeData sp;
            sp.place = pl;
            sp.splitting = Splitting::split;
            sp.class_order = 1;
            sp.generator = QuadInt{pl.p, 0};
            out.primes.push_back(sp);
        }
        out.h_s = 1;
        out.h_s_plus = 1;
        return out;
    }

    for (const auto& pl : places) {
        SPrimeData sp;
        sp.place = pl;
        sp.splitting = splitting_type(k, pl.p);
        if ((sp.splitting == Splitting::inert) != (pl.f == 2))
            throw std::invalid_argument("place residue degree inconsistent with splitting");
        if (sp.splitting == Splitting::inert) {
            sp.class_order = 1;
            sp.generator = QuadInt{pl.p, 0};
        } else {
            long ord = 0;
            std::optional<QuadInt> gen;
            for (long kk = 1; kk <= std::max<long>(k.h, 1); ++kk) {
                gen = generator_of_prime_power(k, pl, kk);
                if (gen) {
                    ord = kk;
                    break;
                }
            }
            if (!gen) throw std::invalid_argument("could not locate the class of an S-prime");
            sp.class_order = ord;
            sp.generator = *gen;
        }
        out.primes.push_back(sp);
    }

    if (k.d < 0) {
        std::vector<QForm> gens;
        for (const auto& sp : out.primes)
            if (sp.splitting != Splitting::inert)
                if (auto f = prime_form(k.disc, sp.place.p)) gens.push_back(*f);
        std::size_t sub = gens.empty() ? 1 : form_subgroup_size(k.disc, gens);
        if (k.h % static_cast<long>(sub) != 0)
            throw std::logic_error("subgroup size does not divide h");
        out.h_s = k.h / static_cast<long>(sub);
    } else {
        // relations among the S-prime classes by principality of products
        std::vector<const SPrimeData*> nontriv;
        for (const auto& sp : out.primes)
            if (sp.class_order > 1) nontriv.push_back(&sp);
        long box = 1;
        for (auto* sp : nontriv) box *= sp->class_order;
        if (box > 64) throw std::invalid_argument("S-class structure too large for the table data");
        long relations = 0;
        for (long code = 0; code < box; ++code) {
            long c = code;
            Int target = 1;
            std::vector<std::pair<const SPrimeData*, long>> exps;
            for (auto* sp : nontriv) {
                long e = c % sp->class_order;
                c /= sp->class_order;
                exps.push_back({sp, e});
                for (long i = 0; i < e; ++i) target *= sp->place.p;
            }
            if (code == 0) {
                ++relations;
                continue;
            }
            auto gen = find_element_of_norm(k, target, [&](const QuadInt& cand) {
                for (auto& [sp, e] : exps) {
                    if (e == 0) continue;
                    if (residue_at(k, sp->place, cand) != 0) return false;
                    if (sp->splitting == Splitting::split) {
                        PlaceData other{sp->place.p, 1, 1 - sp->place.index};
                        if (residue_at(k, other, cand) == 0) return false;
                    }
                }
                return true;
            });
            if (gen) ++relations;
        }
        if (box % relations != 0) throw std::logic_error("relation set is not a subgroup");
        out.h_s = k.h / (box / relations);
    }

    if (k.r1 == 0) {
        out.h_s_plus = out.h_s;
    } else {
        std::vector<std::vector<int>> gens;
        gens.push_back(std::vector<int>(k.r1, -1));
        if (k.fundamental_unit) gens.push_back(k.fundamental_unit->signs_at_real_places);
        for (const auto& sp : out.primes) {
            std::vector<int> s;
            auto em = embed(k, sp.generator);
            for (int e = 0; e < k.r1; ++e) s.push_back(em[e].real() > 0 ? 1 : -1);
            gens.push_back(s);
        }
        std::set<std::vector<int>> signs{std::vector<int>(k.r1, 1)};
        bool grow = true;
        while (grow) {
            grow = false;
            for (const auto& s : std::vector<std::vector<int>>(signs.begin(), signs.end()))
                for (const auto& g : gens) {
                    std::vector<int> t(k.r1);
                    for (int i = 0; i < k.r1; ++i) t[i] = s[i] * g[i];
                    if (signs.insert(t).second) grow = true;
                }
        }
        long img = static_cast<long>(signs.size());
        out.h_s_plus = out.h_s * (1L << k.r1) / img;
    }
    return out;
}

double dirichlet_L_at_1(long delta) {
    if (delta == 1 || delta == 0)
        throw std::invalid_argument("delta must be a fundamental discriminant != 1");
    bool ok = false;
    if (((delta % 4) + 4) % 4 == 1 && is_squarefree(delta)) ok = true;
    if (delta % 4 == 0) {
        long m = delta / 4;
        long r = ((m % 4) + 4) % 4;
        if ((r == 2 || r == 3) && is_squarefree(m)) ok = true;
    }
    if (!ok) throw std::invalid_argument("delta is not a fundamental discriminant");
    if (delta < 0) {
        long q = -delta;
        double s = 0;
        for (long a = 1; a < q; ++a) s += kronecker_symbol(delta, a) * static_cast<double>(a);
        return kPi / std::pow(static_cast<double>(q), 1.5) * std::fabs(s);
    }
    double s = 0;
    for (long a = 1; a < delta; ++a) {
        int chi = kronecker_symbol(delta, a);
        if (chi == 0) continue;
        s += chi * std::log(std::sin(kPi * a / delta));
    }
    return -s / std::sqrt(static_cast<double>(delta));
}

}  // namespace wesv
