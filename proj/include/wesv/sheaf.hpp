#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wesv/galois.hpp"
#include "wesv/number_field.hpp"

namespace wesv {

enum class SheafVariant {
    constant_z,
    shriek_z,
    skyscraper,
    pushforward_constant,
    constant_finite,
    sum,
};

/// Catalog element describing a Z-constructible sheaf on Spec(O_K).
struct SheafDescriptor {
    SheafVariant variant = SheafVariant::constant_z;
    NumberFieldData base;

    std::optional<SPlaceSet> s_set;             // shriek_z
    std::optional<PlaceData> sky_place;         // skyscraper
    std::optional<FrobeniusModule> sky_module;  // skyscraper
    std::optional<NumberFieldData> extension;   // pushforward_constant (base Q)
    bool tame = true;
    long finite_n = 0;                          // constant_finite
    std::vector<SheafDescriptor> summands;      // sum, flat

    static SheafDescriptor constant_z(NumberFieldData k);
    static SheafDescriptor shriek_z(NumberFieldData k, SPlaceSet s);
    static SheafDescriptor skyscraper(NumberFieldData k, PlaceData x, FrobeniusModule m);
    static SheafDescriptor pushforward(NumberFieldData l, bool tame = true);
    static SheafDescriptor constant_finite(NumberFieldData k, long n);
    static SheafDescriptor direct_sum(std::vector<SheafDescriptor> parts);

    void validate() const;
    std::string name() const;
};

struct DegreeData {
    int rank = 0;
    Int torsion_order = 1;
    bool operator==(const DegreeData& o) const = default;
};

enum class CohomologyKind { etale, compact_support, weil_etale };

/// Per-degree (rank, torsion order) summary; degrees whose groups are not of
/// finite type (Q/Z parts of compactly supported cohomology in degrees 1, 2)
/// are simply absent.
struct CohomologySummary {
    CohomologyKind kind = CohomologyKind::etale;
    std::map<int, DegreeData> groups;

    DegreeData at(int degree) const {
        auto it = groups.find(degree);
        return it == groups.end() ? DegreeData{} : it->second;
    }
    int rank(int degree) const { return at(degree).rank; }
    Int torsion(int degree) const { return at(degree).torsion_order; }
};

CohomologySummary etale_cohomology(const SheafDescriptor& f);
CohomologySummary compact_support_cohomology(const SheafDescriptor& f);
CohomologySummary weil_etale_cohomology(const SheafDescriptor& f);

struct ArchimedeanInvariants {
    int r1F = 0;
    int r2F = 0;
    Int ext2_order = 1;
    Int n2_order = 1;
};
ArchimedeanInvariants archimedean_invariants(const SheafDescriptor& f);

struct LieData {
    int h_minus1_rank = 0;
    Int h0_order = 1;
    /// Embedded basis of the H^{-1} lattice (rows per embedding of the
    /// relevant field, columns per basis vector); empty when rank 0 or for
    /// direct sums (handled componentwise).
    std::vector<std::vector<std::complex<double>>> lattice_embeddings;
};
LieData lie_data(const SheafDescriptor& f);

/// H^0 and H^1 data of the cyclic module <frobenius> acting on m, i.e. the
/// etale cohomology of the skyscraper stalk: H^0 = ker(phi - 1),
/// H^1 = H^1(Zhat, m) (finite for finite-type m).
struct FrobeniusCohomology {
    int h0_rank = 0;
    Int h0_torsion = 1;   // fixed points of the torsion part
    Int h1_order = 1;
};
FrobeniusCohomology frobenius_cohomology(const FrobeniusModule& m);

}  // namespace wesv
