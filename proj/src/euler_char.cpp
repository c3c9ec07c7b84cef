#include "wesv/euler_char.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace wesv {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double chi(const EulerCharInputs& in) {
    if (in.disc <= 0 || in.regulator <= 0) throw std::invalid_argument("Disc and R must be positive");
    double num = std::pow(2 * kPi, in.r2F) * std::pow(2.0, in.r1F) * in.h0_tor.get_d() *
                 in.ext1_tor.get_d() * in.regulator;
    double den = in.h1_tor.get_d() * in.hom_tor.get_d() * in.lie_h0.get_d() * in.n2.get_d() * in.disc;
    return num / den;
}

EulerCharInputs chi_inputs(const SheafDescriptor& f) {
    f.validate();
    EulerCharInputs in;
    switch (f.variant) {
        case SheafVariant::constant_z: {
            // [Hom_X(Z, G_X)_tor] = omega, [Ext^1_X(Z, G_X)_tor] = h
            in.hom_tor = f.base.omega;
            in.ext1_tor = f.base.h;
            ArchimedeanInvariants a = archimedean_invariants(f);
            in.r1F = a.r1F;
            in.r2F = a.r2F;
            in.n2 = a.n2_order;
            in.lie_h0 = lie_data(f).h0_order;
            in.disc = discriminant(f);
            in.regulator = regulator_RFD(f);
            break;
        }
        case SheafVariant::shriek_z: {
            if (f.s_set->s_f() == 0) return chi_inputs(SheafDescriptor::constant_z(f.base));
            // Hom_X(j_! Z, G_X) = O_{K,S}^x, Ext^1_X(j_! Z, G_X) = Pic(U)
            in.hom_tor = f.base.omega;
            in.ext1_tor = f.s_set->h_s;
            ArchimedeanInvariants a = archimedean_invariants(f);
            in.r1F = a.r1F;
            in.r2F = a.r2F;
            in.n2 = a.n2_order;
            in.lie_h0 = lie_data(f).h0_order;
            in.disc = discriminant(f);
            in.regulator = regulator_RFD(f);
            break;
        }
        case SheafVariant::skyscraper: {
            FrobeniusCohomology c = frobenius_cohomology(*f.sky_module);
            in.h0_tor = c.h0_torsion;
            in.h1_tor = c.h1_order;
            double log_nv = f.sky_place->f * std::log(static_cast<double>(f.sky_place->p));
            in.regulator = 1.0 / (regulator_RFD(f) * std::pow(log_nv, c.h0_rank));
            break;
        }
        case SheafVariant::pushforward_constant:
            if (!f.tame)
                throw std::invalid_argument("chi of a pushforward requires the tame flag");
            return chi_inputs(SheafDescriptor::constant_z(*f.extension));
        case SheafVariant::constant_finite:
            // ratio rule along 0 -> Z -n-> Z -> Z/n -> 0: all contributions
            // cancel, chi = 1
            break;
        case SheafVariant::sum:
            throw std::invalid_argument("chi inputs of a direct sum are assembled per summand");
    }
    return in;
}

double chi_of(const SheafDescriptor& f) {
    f.validate();
    if (f.variant == SheafVariant::sum) {
        double v = 1;
        for (const auto& p : f.summands) v *= chi_of(p);
        return v;
    }
    if (f.variant == SheafVariant::constant_finite) return 1.0;
    return chi(chi_inputs(f));
}

std::optional<ExactForm> chi_exact_form(const SheafDescriptor& f) {
    f.validate();
    switch (f.variant) {
        case SheafVariant::skyscraper: {
            FrobeniusCohomology c = frobenius_cohomology(*f.sky_module);
            // R(M) is the determinant of an integer pairing matrix
            IntegralGModule g = f.sky_module->as_g_module();
            Rat rm(1);
            if (f.sky_module->rank > 0) {
                IntMatrix fixed = rationalized_invariants(g);
                IntMatrix fixed_dual = rationalized_invariants(dual(g));
                IntMatrix p = fixed_dual.transposed() * fixed;
                // exact determinant of the pairing matrix
                std::size_t n = p.rows();
                std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(p.at(i, j));
                Rat det = 1;
                for (std::size_t k = 0; k < n; ++k) {
                    std::size_t piv = k;
                    while (piv < n && m[piv][k] == 0) ++piv;
                    if (piv == n) {
                        det = 0;
                        break;
                    }
                    if (piv != k) {
                        std::swap(m[piv], m[k]);
                        det = -det;
                    }
                    det *= m[k][k];
                    for (std::size_t i = k + 1; i < n; ++i) {
                        Rat fct = m[i][k] / m[k][k];
                        for (std::size_t j = k; j < n; ++j) m[i][j] -= fct * m[k][j];
                    }
                }
                if (det == 0) return std::nullopt;
                rm = abs(det);
            }
            ExactForm e;
            e.rational = Rat(c.h0_torsion) / (Rat(c.h1_order) * rm);
            Int fpow = 1;
            for (int i = 0; i < c.h0_rank; ++i) fpow *= f.sky_place->f;
            e.rational /= Rat(fpow);
            e.rational.canonicalize();
            if (c.h0_rank > 0) e.log_exponents[f.sky_place->p] = -c.h0_rank;
            return e;
        }
        case SheafVariant::constant_finite:
            return ExactForm{};
        case SheafVariant::shriek_z: {
            if (!f.base.is_rational()) return std::nullopt;
            if (f.s_set->s_f() == 0) return std::nullopt;  // chi(Z^D over Q) = 1 but keep float path
            // chi = h_S * R_S over Q: R_S = prod log p_i, h_S = 1
            ExactForm e;
            e.rational = Rat(f.s_set->h_s);
            for (const auto& sp : f.s_set->primes) {
                e.log_exponents[sp.place.p] += 1;
                e.rational *= Rat(sp.place.f * sp.class_order);
            }
            e.rational.canonicalize();
            return e;
        }
        case SheafVariant::sum: {
            ExactForm acc;
            for (const auto& p : f.summands) {
                auto e = chi_exact_form(p);
                if (!e) return std::nullopt;
                acc = acc * *e;
            }
            return acc;
        }
        default:
            return std::nullopt;
    }
}

namespace {

bool is_trivial_rank1_skyscraper(const SheafDescriptor& f) {
    return f.variant == SheafVariant::skyscraper && f.sky_module->rank == 1 &&
           f.sky_module->frobenius.is_identity() && f.sky_module->torsion_factors.empty();
}

}  // namespace

double multiplicativity_check(const SheafDescriptor& sub, const SheafDescriptor& mid,
                              const SheafDescriptor& quot) {
    sub.validate();
    mid.validate();
    quot.validate();
    bool pattern_jshriek =
        sub.variant == SheafVariant::shriek_z && mid.variant == SheafVariant::constant_z &&
        sub.base.disc == mid.base.disc;
    if (pattern_jshriek) {
        // quotient must be the direct sum of trivial skyscrapers on S
        std::vector<SheafDescriptor> skies;
        if (quot.variant == SheafVariant::sum)
            skies = quot.summands;
        else
            skies = {quot};
        if (skies.size() != sub.s_set->s_f()) pattern_jshriek = false;
        if (pattern_jshriek)
            for (const auto& s : skies)
                if (!is_trivial_rank1_skyscraper(s)) pattern_jshriek = false;
        if (pattern_jshriek) {
            std::vector<PlaceData> want, got;
            for (const auto& sp : sub.s_set->primes) want.push_back(sp.place);
            for (const auto& s : skies) got.push_back(*s.sky_place);
            auto key = [](const PlaceData& p) { return std::tuple(p.p, p.f, p.index); };
            std::sort(want.begin(), want.end(),
                      [&](auto& a, auto& b) { return key(a) < key(b); });
            std::sort(got.begin(), got.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
            if (want != got) pattern_jshriek = false;
        }
    }
    bool pattern_zn = sub.variant == SheafVariant::constant_z &&
                      mid.variant == SheafVariant::constant_z &&
                      quot.variant == SheafVariant::constant_finite &&
                      sub.base.disc == mid.base.disc && quot.base.disc == mid.base.disc;
    if (!pattern_jshriek && !pattern_zn)
        throw std::invalid_argument("triple does not match a built-in exact pattern");
    double mid_chi = chi_of(mid);
    double split = chi_of(sub) * chi_of(quot);
    return std::fabs(mid_chi - split) / std::fabs(mid_chi);
}

}  // namespace wesv
