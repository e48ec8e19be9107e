#pragma once

// Rigidity normalization and dimensions.  The evaluation/coevaluation
// pair for each simple label carries a free invertible scalar mu_i;
// dimensions are built from those and the special symbols:
//
//   dim_L(i) = mu_{ibar} / (mu_i Fo_{ibar}),   dim_R(i) = dim_L(ibar)
//   dim_L(i) dim_R(i) = 1 / (Fo_i Fo_{ibar})   (mu-independent)

#include <string>
#include <vector>

#include "fsym.hpp"

namespace fusion6j {

enum class MuPolicy { AllOnes, Balanced, UserSupplied };

struct MuChoice {
    MuPolicy policy = MuPolicy::AllOnes;
    std::vector<Scalar> mu;
};

// Balanced fixes mu_i^2 / mu_{ibar}^2 = Fo_i / Fo_{ibar}, which makes the
// left and right dimension functions coincide.  The lower label of each
// dual orbit keeps mu = 1.
inline MuChoice choose_mu(const CategoryData& C, MuPolicy policy, RootChoice& rc) {
    const FusionRing& R = C.ring;
    MuChoice out;
    out.policy = policy;
    out.mu.assign(R.rank(), C.one());
    if (policy != MuPolicy::Balanced) return out;
    SpecialSymbols sp = special_symbols(C);
    for (Label i = 0; i < R.rank(); ++i) {
        Label ib = R.bar(i);
        if (ib <= i) continue;
        Scalar ratio = sp.fo[ib] / sp.fo[i];
        out.mu[ib] = rc.sqrt(ratio, "mu:" + R.name(ib));
    }
    return out;
}

inline MuChoice user_mu(std::vector<Scalar> values) {
    return MuChoice{MuPolicy::UserSupplied, std::move(values)};
}

struct DimensionTable {
    std::vector<Scalar> dim_l, dim_r, paired, rel;
};

inline DimensionTable dimensions(const CategoryData& C, const MuChoice& mu) {
    const FusionRing& R = C.ring;
    SpecialSymbols sp = special_symbols(C);
    DimensionTable t;
    for (Label i = 0; i < R.rank(); ++i) {
        Label ib = R.bar(i);
        t.dim_l.push_back(mu.mu[ib] / (mu.mu[i] * sp.fo[ib]));
    }
    for (Label i = 0; i < R.rank(); ++i) {
        Label ib = R.bar(i);
        t.dim_r.push_back(t.dim_l[ib]);
        Scalar paired = t.dim_l[i] * t.dim_l[ib];
        if (paired != (sp.fo[i] * sp.fo[ib]).inv())
            throw FormulaMismatch("paired dimension != 1/(Fo_i Fo_ibar) at " + R.name(i));
        t.paired.push_back(paired);
        t.rel.push_back(t.dim_l[i] / t.dim_l[ib]);
    }
    return t;
}

// The canonical square root of the paired dimension is the reciprocal of
// the rebalanced special symbol: 1/Fo_i for self-dual i, otherwise
// 1/sqrt(Fo_i Fo_{ibar}) with the root recorded per dual orbit.
inline Scalar sqrt_paired(const CategoryData& C, const SpecialSymbols& sp,
                          RootChoice& rc, Label i) {
    const FusionRing& R = C.ring;
    Label ib = R.bar(i);
    if (ib == i) return sp.fo[i].inv();
    Label rep = std::min(i, ib);
    Scalar prod = sp.fo[i] * sp.fo[ib];
    return rc.sqrt(prod, "paired-dim:" + R.name(rep)).inv();
}

} // namespace fusion6j
