#include "wesv/l_function.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wesv {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double ExactForm::value() const {
    double v = rational.get_d();
    for (const auto& [p, e] : log_exponents) v *= std::pow(std::log(static_cast<double>(p)), e);
    v *= std::pow(kPi, pi_exponent);
    return v;
}

ExactForm ExactForm::operator*(const ExactForm& o) const {
    ExactForm r = *this;
    r.rational *= o.rational;
    r.rational.canonicalize();
    for (const auto& [p, e] : o.log_exponents) {
        r.log_exponents[p] += e;
        if (r.log_exponents[p] == 0) r.log_exponents.erase(p);
    }
    r.pi_exponent += o.pi_exponent;
    return r;
}

std::string ExactForm::str() const {
    std::ostringstream os;
    os << rational.get_str();
    for (const auto& [p, e] : log_exponents) {
        os << " * log(" << p << ")";
        if (e != 1) os << "^" << e;
    }
    if (pi_exponent != 0) {
        os << " * pi";
        if (pi_exponent != 1) os << "^" << pi_exponent;
    }
    return os.str();
}

RationalFunction q_factor(const FrobeniusModule& m, int shift) {
    RatPoly den = det_one_minus_tA(m.frobenius);
    if (shift == 1) den = den.shift_scale(m.residue_size);
    else if (shift != 0) throw std::invalid_argument("shift must be 0 or 1");
    return RationalFunction::of(RatPoly::one(), den);
}

namespace {

// Frobenius data of the C2-module machinery behind pi_* Z for quadratic L/Q.
struct PushforwardLocalData {
    FrobeniusModule inertia_invariants_dual;  // (F_eta^vee)^{I_y} with Frobenius
    FrobeniusModule stalk_dual;               // F_x^vee with Frobenius
};

PushforwardLocalData pushforward_local_data(const NumberFieldData& l, long p) {
    FiniteGroup c2 = FiniteGroup::cyclic(2);
    IntegralGModule f_eta =
        IntegralGModule::from_generator_actions(c2, {IntMatrix::of({{0, 1}, {1, 0}})});
    Splitting sp = splitting_type(l, p);
    std::size_t frob_elt = (sp == Splitting::inert) ? 1 : 0;
    bool ramified = (sp == Splitting::ramified);

    auto invariants_with_frobenius = [&](const IntegralGModule& m) -> FrobeniusModule {
        IntMatrix basis;
        if (!ramified) {
            basis = IntMatrix::identity(m.rank);
        } else {
            // inertia = all of C2
            basis = rationalized_invariants(m);
        }
        IntMatrix image = m.action(frob_elt) * basis;
        IntMatrix x;
        if (!solve_integer(basis, image, x))
            throw std::logic_error("Frobenius does not preserve the invariant lattice");
        FrobeniusModule out;
        out.rank = basis.cols();
        out.frobenius = x;
        out.residue_size = p;
        return out;
    };

    PushforwardLocalData out;
    out.inertia_invariants_dual = invariants_with_frobenius(dual(f_eta));
    // the stalk of pi_* Z is the inertia-invariant lattice of F_eta itself
    FrobeniusModule stalk = invariants_with_frobenius(f_eta);
    out.stalk_dual = stalk.dual_free();
    return out;
}

bool place_in_set(const SPlaceSet& s, const PlaceData& x) {
    for (const auto& sp : s.primes)
        if (sp.place == x) return true;
    return false;
}

}  // namespace

LocalFactor local_factor_dual(const SheafDescriptor& f, const PlaceData& x) {
    f.validate();
    LocalFactor out;
    out.place = x;
    switch (f.variant) {
        case SheafVariant::constant_z:
            out.r = RationalFunction::of(RatPoly::one(),
                                         RatPoly::one_minus(Rat(1, x.norm())));
            break;
        case SheafVariant::shriek_z: {
            if (place_in_set(*f.s_set, x)) {
                out.r = RationalFunction::of(RatPoly::one_minus(Rat(1)),
                                             RatPoly::one_minus(Rat(1, x.norm())));
            } else {
                out.r = RationalFunction::of(RatPoly::one(),
                                             RatPoly::one_minus(Rat(1, x.norm())));
            }
            break;
        }
        case SheafVariant::skyscraper:
            if (x == *f.sky_place)
                out.r = q_factor(f.sky_module->dual_free(), 0);
            else
                out.r = RationalFunction::one();
            break;
        case SheafVariant::pushforward_constant: {
            PushforwardLocalData d = pushforward_local_data(*f.extension, x.p);
            RationalFunction num1 = q_factor(d.inertia_invariants_dual, 1);
            RationalFunction num2 = q_factor(d.stalk_dual, 0);
            RationalFunction den = q_factor(d.inertia_invariants_dual, 0);
            out.r = num1 * num2 * den.inverse();
            break;
        }
        case SheafVariant::constant_finite:
            out.r = RationalFunction::one();
            break;
        case SheafVariant::sum: {
            RationalFunction acc = RationalFunction::one();
            for (const auto& p : f.summands) acc = acc * local_factor_dual(p, x).r;
            out.r = acc;
            break;
        }
    }
    return out;
}

GlobalFactorization global_factorization(const SheafDescriptor& f) {
    f.validate();
    GlobalFactorization out;
    auto add_constituent = [&](ConstituentKind kind, long disc, int e) {
        for (auto& c : out.constituents)
            if (c.kind == kind && c.disc == disc) {
                c.exponent += e;
                return;
            }
        out.constituents.push_back({kind, disc, e});
    };
    switch (f.variant) {
        case SheafVariant::constant_z:
            add_constituent(ConstituentKind::zeta_shifted, 0, 1);
            if (!f.base.is_rational())
                add_constituent(ConstituentKind::dirichlet_shifted, f.base.disc, 1);
            break;
        case SheafVariant::shriek_z: {
            if (f.s_set->s_f() == 0)
                return global_factorization(SheafDescriptor::constant_z(f.base));
            add_constituent(ConstituentKind::zeta_shifted, 0, 1);
            if (!f.base.is_rational())
                add_constituent(ConstituentKind::dirichlet_shifted, f.base.disc, 1);
            for (const auto& sp : f.s_set->primes)
                out.corrections.push_back(
                    {sp.place, RationalFunction::of(RatPoly::one_minus(Rat(1)), RatPoly::one())});
            break;
        }
        case SheafVariant::skyscraper:
            out.corrections.push_back({*f.sky_place, q_factor(f.sky_module->dual_free(), 0)});
            break;
        case SheafVariant::pushforward_constant:
            add_constituent(ConstituentKind::zeta_shifted, 0, 1);
            add_constituent(ConstituentKind::dirichlet_shifted, f.extension->disc, 1);
            break;
        case SheafVariant::constant_finite:
            break;
        case SheafVariant::sum:
            for (const auto& p : f.summands) {
                GlobalFactorization g = global_factorization(p);
                for (const auto& c : g.constituents) add_constituent(c.kind, c.disc, c.exponent);
                for (const auto& c : g.corrections) out.corrections.push_back(c);
            }
            break;
    }
    return out;
}

LeadingValue leading_value(const SheafDescriptor& f) {
    GlobalFactorization g = global_factorization(f);
    LeadingValue out;
    bool pure_local = true;
    double coeff = 1;
    ExactForm exact;
    for (const auto& c : g.constituents) {
        if (c.exponent == 0) continue;
        pure_local = false;
        if (c.kind == ConstituentKind::zeta_shifted) {
            // zeta(s+1) = 1/s + gamma + ...: order -1, leading coefficient 1
            out.order -= c.exponent;
        } else {
            double l1 = dirichlet_L_at_1(c.disc);
            for (int e = 0; e < c.exponent; ++e) coeff *= l1;
        }
    }
    for (const auto& c : g.corrections) {
        int m = c.r.order_at_one();
        Rat lead = c.r.leading_at_one();
        // R(N^{-s}) ~ lead * (s log N)^m
        out.order += m;
        double log_n = c.place.f * std::log(static_cast<double>(c.place.p));
        coeff *= lead.get_d() * std::pow(log_n, m);
        ExactForm part;
        part.rational = lead;
        Int fpow = 1;
        for (int e = 0; e < std::abs(m); ++e) fpow *= c.place.f;
        part.rational *= (m >= 0) ? Rat(fpow) : Rat(1, fpow);
        part.rational.canonicalize();
        if (m != 0) part.log_exponents[c.place.p] = m;
        exact = exact * part;
    }
    out.coefficient = coeff;
    if (pure_local) out.exact = exact;
    return out;
}

int vanishing_order_formula(const SheafDescriptor& f) {
    CohomologySummary e = etale_cohomology(f);
    return e.rank(1) - e.rank(0);
}

std::vector<long> primes_up_to(long bound) {
    std::vector<bool> sieve(bound + 1, true);
    std::vector<long> out;
    for (long p = 2; p <= bound; ++p) {
        if (!sieve[p]) continue;
        out.push_back(p);
        for (long q = 2 * p; q <= bound; q += p) sieve[q] = false;
    }
    return out;
}

namespace {

bool has_generic_fiber(const SheafDescriptor& f) {
    switch (f.variant) {
        case SheafVariant::constant_z:
        case SheafVariant::shriek_z:
        case SheafVariant::pushforward_constant:
            return true;
        case SheafVariant::sum:
            for (const auto& p : f.summands)
                if (has_generic_fiber(p)) return true;
            return false;
        default:
            return false;
    }
}

int generic_fiber_rank(const SheafDescriptor& f) {
    switch (f.variant) {
        case SheafVariant::constant_z:
        case SheafVariant::shriek_z:
            return 1;
        case SheafVariant::pushforward_constant:
            return 2;
        case SheafVariant::sum: {
            int r = 0;
            for (const auto& p : f.summands) r += generic_fiber_rank(p);
            return r;
        }
        default:
            return 0;
    }
}

}  // namespace

EulerProductValue euler_product_truncation(const SheafDescriptor& f, double s, long bound) {
    if (has_generic_fiber(f) && s <= 0)
        throw std::invalid_argument("evaluation point outside the convergence region (need s > 0)");
    if (bound < 2) throw std::invalid_argument("bound must be at least 2");
    EulerProductValue out;
    for (long p : primes_up_to(bound)) {
        // local factors live at the places of the base field; the pushforward
        // factor at a rational prime already aggregates everything above it
        std::vector<PlaceData> places = places_above(f.base, p);
        for (const auto& x : places) {
            LocalFactor lf = local_factor_dual(f, x);
            double t = std::pow(x.norm().get_d(), -s);
            out.value *= lf.r.eval(t);
        }
    }
    int deg = generic_fiber_rank(f);
    if (deg > 0)
        out.tail_bound =
            2.0 * deg * std::pow(static_cast<double>(bound), -s) / (s * std::log(static_cast<double>(bound)));
    return out;
}

}  // namespace wesv
