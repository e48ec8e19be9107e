#pragma once

// Pivotal structures.  A pivotal structure exists only when every sign
// table is constant per triple; the scalars then solve the multiplicative
// system
//
//   w_i w_j = eps(i,j|k) w_k   whenever N_{ij}^k != 0,   w_1 = 1,
//
// which we treat as an integer-linear system over the unit group of the
// field: Smith reduction of the exponent matrix turns it into equations
// y^d = c whose root-of-unity solutions are enumerated per field.

#include <optional>
#include <string>
#include <vector>

#include "partial.hpp"

namespace fusion6j {

// triples whose sign depends on the eigenbasis vector obstruct pivotality
inline ValidationReport pivotal_obstruction(const CategoryData& C, const EpsilonTable& table) {
    ValidationReport rep;
    for (auto& [key, ent] : table.entries)
        if (ent.alpha_dependent)
            rep.add("alpha-dependent",
                    "sign spectrum is mixed at " + label_triple(C.ring, key[0], key[1], key[2]));
    return rep;
}

struct PivotalSolution {
    std::vector<Scalar> varpi;
    std::vector<Scalar> dim_l_piv, dim_r_piv;
    bool spherical = true;
};

struct PivotalResult {
    std::vector<PivotalSolution> solutions;
    std::optional<std::string> unsolvable_witness;
};

namespace detail {

struct SmithForm {
    std::vector<std::vector<long>> d, u, v;  // d = u * a * v with u, v unimodular
};

inline SmithForm smith_reduce(std::vector<std::vector<long>> a, int rows, int cols) {
    SmithForm s;
    s.d = std::move(a);
    s.u.assign(rows, std::vector<long>(rows, 0));
    s.v.assign(cols, std::vector<long>(cols, 0));
    for (int i = 0; i < rows; ++i) s.u[i][i] = 1;
    for (int j = 0; j < cols; ++j) s.v[j][j] = 1;

    auto row_sub = [&](int dst, int src, long q) {
        for (int j = 0; j < cols; ++j) s.d[dst][j] -= q * s.d[src][j];
        for (int j = 0; j < rows; ++j) s.u[dst][j] -= q * s.u[src][j];
    };
    auto col_sub = [&](int dst, int src, long q) {
        for (int i = 0; i < rows; ++i) s.d[i][dst] -= q * s.d[i][src];
        for (int i = 0; i < cols; ++i) s.v[i][dst] -= q * s.v[i][src];
    };
    auto row_swap = [&](int x, int y) {
        std::swap(s.d[x], s.d[y]);
        std::swap(s.u[x], s.u[y]);
    };
    auto col_swap = [&](int x, int y) {
        for (int i = 0; i < rows; ++i) std::swap(s.d[i][x], s.d[i][y]);
        for (int i = 0; i < cols; ++i) std::swap(s.v[i][x], s.v[i][y]);
    };

    for (int t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            int pi = -1, pj = -1;
            long best = 0;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j)
                    if (s.d[i][j] != 0 && (best == 0 || std::abs(s.d[i][j]) < best)) {
                        best = std::abs(s.d[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return s;
            if (pi != t) row_swap(pi, t);
            if (pj != t) col_swap(pj, t);
            bool clean = true;
            for (int i = t + 1; i < rows; ++i)
                if (s.d[i][t] != 0) {
                    row_sub(i, t, s.d[i][t] / s.d[t][t]);
                    if (s.d[i][t] != 0) clean = false;
                }
            for (int j = t + 1; j < cols; ++j)
                if (s.d[t][j] != 0) {
                    col_sub(j, t, s.d[t][j] / s.d[t][t]);
                    if (s.d[t][j] != 0) clean = false;
                }
            if (clean) break;
        }
    }
    return s;
}

inline std::vector<Scalar> roots_of_power(const Scalar& c, long d, FieldKind kind) {
    std::vector<Scalar> out;
    if (d < 0) return roots_of_power(c.inv(), -d, kind);
    if (d == 0) return {};
    if (kind == FieldKind::C) {
        std::complex<double> z = c.float_value();
        double r = std::pow(std::abs(z), 1.0 / double(d));
        double th = std::arg(z);
        for (long m = 0; m < d; ++m) {
            double a = (th + 2.0 * M_PI * double(m)) / double(d);
            out.push_back(Scalar::complex({r * std::cos(a), r * std::sin(a)}));
        }
        return out;
    }
    for (const Scalar& t : field_roots_of_unity(kind))
        if (t.pow(d) == c) out.push_back(t);
    return out;
}

} // namespace detail

// enumerate all pivotal scalar assignments by Smith reduction of the
// coboundary system; Unsolvable reports an inconsistent combination
inline PivotalResult solve_pivotal(const CategoryData& C, const EpsilonTable& table) {
    const FusionRing& R = C.ring;
    PivotalResult result;
    ValidationReport obstruction = pivotal_obstruction(C, table);
    if (!obstruction.ok()) {
        result.unsolvable_witness = obstruction.entries.front().detail;
        return result;
    }

    const int n = R.rank();
    std::vector<int> var(n, -1);
    int m = 0;
    for (Label i = 0; i < n; ++i)
        if (i != R.unit) var[i] = m++;

    std::vector<std::vector<long>> A;
    std::vector<Scalar> rhs;
    for (Label i = 0; i < n; ++i)
        for (Label j = 0; j < n; ++j)
            for (Label k = 0; k < n; ++k) {
                if (!R.N(i, j, k)) continue;
                std::vector<long> row(m, 0);
                if (var[i] >= 0) row[var[i]] += 1;
                if (var[j] >= 0) row[var[j]] += 1;
                if (var[k] >= 0) row[var[k]] -= 1;
                A.push_back(std::move(row));
                rhs.push_back(Scalar::integer(table.eps(i, j, k, 0), C.field));
            }
    // duality pairing: w_i w_ibar = 1
    for (Label i = 0; i < n; ++i) {
        if (i > R.bar(i) || i == R.unit) continue;
        std::vector<long> row(m, 0);
        if (var[i] >= 0) row[var[i]] += 1;
        if (var[R.bar(i)] >= 0) row[var[R.bar(i)]] += 1;
        A.push_back(std::move(row));
        rhs.push_back(C.one());
    }

    const int rows = int(A.size());
    std::vector<std::vector<Scalar>> partial_sols;
    if (m == 0) {
        partial_sols.push_back({});
    } else {
        detail::SmithForm s = detail::smith_reduce(A, rows, m);
        std::vector<Scalar> cprime;
        for (int t = 0; t < rows; ++t) {
            Scalar c = C.one();
            for (int r = 0; r < rows; ++r) c *= rhs[r].pow(s.u[t][r]);
            cprime.push_back(c);
        }
        for (int t = m; t < rows; ++t)
            if (cprime[t] != C.one()) {
                result.unsolvable_witness =
                    "inconsistent sign product along a fusion cycle (reduced row " +
                    std::to_string(t) + ")";
                return result;
            }
        std::vector<std::vector<Scalar>> ys{{}};
        for (int t = 0; t < m; ++t) {
            long d = t < rows ? s.d[t][t] : 0;
            Scalar c = t < rows ? cprime[t] : C.one();
            std::vector<Scalar> opts;
            if (d == 0) {
                if (c != C.one()) {
                    result.unsolvable_witness = "inconsistent zero-exponent equation";
                    return result;
                }
                opts = C.field == FieldKind::C ? std::vector<Scalar>{C.one()}
                                               : field_roots_of_unity(C.field);
            } else {
                opts = detail::roots_of_power(c, d, C.field);
            }
            std::vector<std::vector<Scalar>> next;
            for (auto& base : ys)
                for (auto& o : opts) {
                    auto ext = base;
                    ext.push_back(o);
                    next.push_back(std::move(ext));
                }
            ys = std::move(next);
        }
        for (auto& y : ys) {
            std::vector<Scalar> x(m, C.one());
            for (int i = 0; i < m; ++i)
                for (int t = 0; t < m; ++t) x[i] *= y[t].pow(s.v[i][t]);
            partial_sols.push_back(std::move(x));
        }
    }

    SpecialSymbols sp = special_symbols(C);
    RootChoice rc_local;
    for (auto& x : partial_sols) {
        PivotalSolution sol;
        sol.varpi.assign(n, C.one());
        for (Label i = 0; i < n; ++i)
            if (var[i] >= 0) sol.varpi[i] = x[var[i]];
        // re-verify the full coboundary system and the duality pairing
        bool good = true;
        for (Label i = 0; i < n && good; ++i)
            for (Label j = 0; j < n && good; ++j)
                for (Label k = 0; k < n && good; ++k)
                    if (R.N(i, j, k) &&
                        sol.varpi[i] * sol.varpi[j] !=
                            Scalar::integer(table.eps(i, j, k, 0), C.field) * sol.varpi[k])
                        good = false;
        for (Label i = 0; i < n && good; ++i)
            if (sol.varpi[i] * sol.varpi[R.bar(i)] != C.one()) good = false;
        if (!good) continue;
        for (Label i = 0; i < n; ++i) {
            Scalar sq = sqrt_paired(C, sp, rc_local, i);
            sol.dim_l_piv.push_back(sq / sol.varpi[i]);
            sol.dim_r_piv.push_back(sq * sol.varpi[i]);
            if (sol.varpi[i] != C.one() && sol.varpi[i] != -C.one()) sol.spherical = false;
        }
        result.solutions.push_back(std::move(sol));
    }
    if (result.solutions.empty() && !result.unsolvable_witness)
        result.unsolvable_witness = "no root-of-unity assignment solves the sign system";
    return result;
}

// the scalars are roots of unity: some power up to the cutoff returns 1
inline bool varpi_is_root_of_unity(const CategoryData& C, const Scalar& w, long cutoff) {
    Scalar p = w;
    for (long e = 1; e <= cutoff; ++e) {
        if (p == C.one()) return true;
        p *= w;
    }
    return false;
}

// Perron root of the fusion matrix N_i by power iteration
inline std::vector<double> fp_dimensions(const FusionRing& R, double tol = 1e-12,
                                         long max_iter = 100000) {
    const int n = R.rank();
    std::vector<double> out;
    for (Label i = 0; i < n; ++i) {
        std::vector<double> v(n, 1.0), w(n, 0.0);
        double lambda = 0.0, prev = -1.0;
        long it = 0;
        for (; it < max_iter; ++it) {
            for (int j = 0; j < n; ++j) {
                w[j] = 0.0;
                for (int k = 0; k < n; ++k) w[j] += double(R.N(i, j, k)) * v[k];
            }
            double norm = 0.0;
            for (double x : w) norm = std::max(norm, std::abs(x));
            if (norm == 0.0) { lambda = 0.0; break; }
            lambda = norm;
            for (int j = 0; j < n; ++j) v[j] = w[j] / norm;
            if (std::abs(lambda - prev) <= tol) break;
            prev = lambda;
        }
        if (it >= max_iter)
            throw NonConvergence("power iteration stalled for label " + R.name(i));
        out.push_back(lambda);
    }
    return out;
}

struct PseudoUnitarityVerdict {
    bool pseudo_unitary = true;
    std::vector<double> paired_float, fp_squared;
    ValidationReport consistency;  // pivotal-dimension identities
};

inline PseudoUnitarityVerdict pseudo_unitarity(const CategoryData& C, const MuChoice& mu,
                                               const PivotalSolution& pi,
                                               const std::vector<double>& fp,
                                               const EpsilonTable& table, double tol = 1e-6) {
    const FusionRing& R = C.ring;
    DimensionTable dims = dimensions(C, mu);
    PseudoUnitarityVerdict v;
    for (Label i = 0; i < R.rank(); ++i) {
        double paired = dims.paired[i].to_complex().real();
        double fsq = fp[i] * fp[i];
        v.paired_float.push_back(paired);
        v.fp_squared.push_back(fsq);
        if (std::abs(paired - fsq) > tol * std::max(1.0, std::abs(fsq)))
            v.pseudo_unitary = false;
        if (std::abs(dims.paired[i].to_complex().imag()) > tol) v.pseudo_unitary = false;
        // paired pivotal dimension equals the mu-paired dimension
        if (pi.dim_l_piv[i] * pi.dim_r_piv[i] != dims.paired[i])
            v.consistency.add("paired-pivotal", "dimLpiv dimRpiv != paired at " + R.name(i));
        if (pi.dim_r_piv[i] != pi.dim_l_piv[R.bar(i)])
            v.consistency.add("pivotal-duality", "dimRpiv(i) != dimLpiv(ibar) at " + R.name(i));
    }
    if (v.pseudo_unitary && !table.all_plus_one())
        v.consistency.add("eps", "pseudo-unitary data must have all signs +1");
    return v;
}

// self-dual labels inherit their indicator from the pivotal scalar;
// dual pairs can always be normalized to 1
inline std::vector<Scalar> fs_indicators(const CategoryData& C, const PivotalSolution& pi) {
    const FusionRing& R = C.ring;
    std::vector<Scalar> nu(R.rank(), C.one());
    for (Label i = 0; i < R.rank(); ++i)
        if (R.bar(i) == i) nu[i] = pi.varpi[i];
    for (Label i = 0; i < R.rank(); ++i)
        if (nu[i] * nu[R.bar(i)] != C.one())
            throw FormulaMismatch("nu_i nu_ibar != 1 at " + R.name(i));
    return nu;
}

} // namespace fusion6j
