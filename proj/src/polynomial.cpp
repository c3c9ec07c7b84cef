#include "wesv/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace wesv {

RatPoly RatPoly::constant(Rat v) {
    RatPoly p;
    if (v != 0) p.c = {v};
    return p;
}

RatPoly RatPoly::one_minus(Rat a) {
    RatPoly p;
    p.c = {Rat(1), -a};
    p.trim();
    return p;
}

void RatPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat RatPoly::eval(const Rat& t) const {
    Rat v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
    return v;
}

double RatPoly::eval(double t) const {
    double v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k].get_d();
    return v;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    RatPoly r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (std::size_t k = 0; k < r.c.size(); ++k) {
        if (k < c.size()) r.c[k] += c[k];
        if (k < o.c.size()) r.c[k] += o.c[k];
    }
    r.trim();
    return r;
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
    RatPoly neg = o;
    for (auto& v : neg.c) v = -v;
    return *this + neg;
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    RatPoly r;
    r.c.assign(c.size() + o.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
}

RatPoly RatPoly::shift_scale(const Int& n) const {
    RatPoly r = *this;
    Rat pw = 1;
    for (std::size_t k = 0; k < r.c.size(); ++k) {
        r.c[k] *= pw;
        pw /= Rat(n);
    }
    r.trim();
    return r;
}

RatPoly RatPoly::divide_one_minus_t() const {
    // p(t) = (1-t) q(t): q_k = c_k + q_{k-1}; remainder = q_{deg} must vanish
    if (is_zero()) return zero();
    RatPoly q;
    q.c.assign(c.size(), Rat(0));
    Rat carry = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        carry += c[k];
        q.c[k] = carry;
    }
    if (q.c.back() != 0) throw std::invalid_argument("polynomial is not divisible by (1 - t)");
    q.c.pop_back();
    q.trim();
    return q;
}

std::string RatPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        if (!first) os << " + ";
        os << c[k].get_str();
        if (k >= 1) os << "*t";
        if (k >= 2) os << "^" << k;
        first = false;
    }
    return os.str();
}

RatPoly det_one_minus_tA(const IntMatrix& a) {
    std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("square matrix required");
    if (n == 0) return RatPoly::one();
    // cofactor expansion over RatPoly; matrices here have rank <= ~8
    std::vector<std::vector<RatPoly>> m(n, std::vector<RatPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RatPoly e;
            if (i == j) e.c = {Rat(1), -Rat(a.at(i, j))};
            else e.c = {Rat(0), -Rat(a.at(i, j))};
            e.trim();
            m[i][j] = e;
        }
    // recursive expansion along the first row with explicit minors
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
    struct Rec {
        const std::vector<std::vector<RatPoly>>& m;
        RatPoly run(std::size_t row, std::vector<std::size_t> cols) {
            if (cols.size() == 1) return m[row][cols[0]];
            RatPoly acc;
            for (std::size_t j = 0; j < cols.size(); ++j) {
                std::vector<std::size_t> rest;
                for (std::size_t k = 0; k < cols.size(); ++k)
                    if (k != j) rest.push_back(cols[k]);
                RatPoly term = m[row][cols[j]] * run(row + 1, rest);
                if (j % 2 == 1) {
                    for (auto& v : term.c) v = -v;
                }
                acc = acc + term;
            }
            return acc;
        }
    } rec{m};
    return rec.run(0, cols);
}

RationalFunction RationalFunction::of(RatPoly n, RatPoly d) {
    if (d.is_zero()) throw std::invalid_argument("zero denominator");
    RationalFunction r;
    r.num = std::move(n);
    r.den = std::move(d);
    return r;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return of(num * o.num, den * o.den);
}

RationalFunction RationalFunction::inverse() const {
    if (num.is_zero()) throw std::invalid_argument("inverse of zero");
    return of(den, num);
}

bool RationalFunction::identically_one() const { return num == den; }

bool RationalFunction::equals(const RationalFunction& o) const {
    return num * o.den == o.num * den;
}

double RationalFunction::eval(double t) const { return num.eval(t) / den.eval(t); }

int RationalFunction::order_at_one() const {
    int ord = 0;
    RatPoly n = num, d = den;
    while (!n.is_zero() && n.eval(Rat(1)) == 0) {
        n = n.divide_one_minus_t();
        ++ord;
    }
    while (!d.is_zero() && d.eval(Rat(1)) == 0) {
        d = d.divide_one_minus_t();
        --ord;
    }
    return ord;
}

Rat RationalFunction::leading_at_one() const {
    RatPoly n = num, d = den;
    while (!n.is_zero() && n.eval(Rat(1)) == 0) n = n.divide_one_minus_t();
    while (!d.is_zero() && d.eval(Rat(1)) == 0) d = d.divide_one_minus_t();
    Rat nv = n.eval(Rat(1)), dv = d.eval(Rat(1));
    if (dv == 0) throw std::logic_error("denominator leading value vanished");
    Rat r = nv / dv;
    r.canonicalize();
    return r;
}

std::string RationalFunction::str() const {
    return "(" + num.str() + ") / (" + den.str() + ")";
}

}  // namespace wesv
