#pragma once

// Fusion-ring data: label set with unit and dual involution plus the
// multiplicity tensor N_{ij}^k, stored densely.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "report.hpp"

namespace fusion6j {

using Label = int;

struct FusionRing {
    std::vector<std::string> names;
    Label unit = 0;
    std::vector<Label> dual;
    std::vector<int> mult;  // N[(i*rank + j)*rank + k]

    int rank() const { return int(names.size()); }

    int N(Label i, Label j, Label k) const {
        return mult[size_t(i * rank() + j) * rank() + k];
    }

    void set_N(Label i, Label j, Label k, int n) {
        mult[size_t(i * rank() + j) * rank() + k] = n;
    }

    Label bar(Label i) const { return dual[i]; }

    const std::string& name(Label i) const { return names[i]; }

    static FusionRing empty(std::vector<std::string> names, Label unit,
                            std::vector<Label> dual) {
        FusionRing r;
        r.names = std::move(names);
        r.unit = unit;
        r.dual = std::move(dual);
        r.mult.assign(size_t(r.rank()) * r.rank() * r.rank(), 0);
        return r;
    }
};

inline std::string label_triple(const FusionRing& r, Label i, Label j, Label k) {
    return "(" + r.name(i) + "," + r.name(j) + "," + r.name(k) + ")";
}

inline ValidationReport validate_ring(const FusionRing& r) {
    ValidationReport rep;
    const int n = r.rank();
    if (r.unit < 0 || r.unit >= n) {
        rep.add("unit-range", "unit label out of range");
        return rep;
    }
    if (int(r.dual.size()) != n || int(r.mult.size()) != n * n * n) {
        rep.add("shape", "dual or multiplicity tensor has wrong size");
        return rep;
    }
    for (Label i = 0; i < n; ++i)
        if (r.bar(r.bar(i)) != i)
            rep.add("involution", "dual(dual(" + r.name(i) + ")) != " + r.name(i));
    for (Label i = 0; i < n; ++i)
        for (Label j = 0; j < n; ++j) {
            int want = (i == j) ? 1 : 0;
            if (r.N(i, r.unit, j) != want)
                rep.add("unit-law", "N" + label_triple(r, i, r.unit, j) + " != " + std::to_string(want));
            if (r.N(r.unit, i, j) != want)
                rep.add("unit-law", "N" + label_triple(r, r.unit, i, j) + " != " + std::to_string(want));
            if (r.N(i, j, r.unit) != ((j == r.bar(i)) ? 1 : 0))
                rep.add("duality", "N" + label_triple(r, i, j, r.unit) + " violates N_{ij}^1 = delta_{j,ibar}");
        }
    for (Label i = 0; i < n && rep.ok(); ++i)
        for (Label j = 0; j < n; ++j)
            for (Label k = 0; k < n; ++k)
                for (Label l = 0; l < n; ++l) {
                    long lhs = 0, rhs = 0;
                    for (Label p = 0; p < n; ++p) lhs += long(r.N(j, k, p)) * r.N(i, p, l);
                    for (Label q = 0; q < n; ++q) rhs += long(r.N(i, j, q)) * r.N(q, k, l);
                    if (lhs != rhs)
                        rep.add("associativity",
                                "sum_p N(j,k,p)N(i,p,l) != sum_q N(i,j,q)N(q,k,l) at " +
                                    label_triple(r, i, j, k) + "->" + r.name(l));
                }
    return rep;
}

// (rows, cols) of the associator block at (i,j,k;l):
//   rows = sum_p N_{jk}^p N_{ip}^l,  cols = sum_q N_{ij}^q N_{qk}^l
inline std::pair<int, int> block_dims(const FusionRing& r, Label i, Label j, Label k, Label l) {
    int rows = 0, cols = 0;
    for (Label p = 0; p < r.rank(); ++p) rows += r.N(j, k, p) * r.N(i, p, l);
    for (Label q = 0; q < r.rank(); ++q) cols += r.N(i, j, q) * r.N(q, k, l);
    return {rows, cols};
}

} // namespace fusion6j
