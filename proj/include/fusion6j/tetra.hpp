#pragma once

// The S4 action on the direct sum over labels (i,j,k,l,p,q) of
//
//   Fside:  H(j@k->p) (x) Hbar(q@k->l) (x) H(i@p->l) (x) Hbar(i@j->q)
//   Gside:  the same four spaces with orientations flipped
//
// and the rescaled 6j function on it,
//
//   F|_(Fside basis) = sqrtp_l * F(i,j,k;l)[(p,a,b),(q,c,d)]
//   F|_(Gside basis) = sqrtp_l * Finv(i,j,k;l)[(q,c,d),(p,a,b)].
//
// The three transpositions act by permuting slots, relabelling, flipping
// the side and applying modified partial duals on two slots:
//
//   t12: (i,j,k,l,p,q) -> (ibar,q,k,p,l,j), slots (2,1,Lb 3,Lb 4)
//   t23: (i,j,k,l,p,q) -> (q,jbar,p,l,k,i), slots (Lb 1,3,2,Rb 4)
//   t34: (i,j,k,l,p,q) -> (i,p,kbar,q,j,l), slots (Rb 1,Rb 2,4,3)

#include <random>
#include <string>
#include <vector>

#include "partial.hpp"

namespace fusion6j {

struct H4Key {
    bool gside = false;
    Label i = 0, j = 0, k = 0, l = 0, p = 0, q = 0;
    // slot indices: b in H(j@k->p), d in H(q@k->l), a in H(i@p->l), c in H(i@j->q)
    int b = 0, d = 0, a = 0, c = 0;

    auto tie() const { return std::tie(gside, i, j, k, l, p, q, b, d, a, c); }
    bool operator<(const H4Key& o) const { return tie() < o.tie(); }
    bool operator==(const H4Key& o) const { return tie() == o.tie(); }
};

using H4Vector = std::map<H4Key, Scalar>;

inline bool h4_valid(const CategoryData& C, const H4Key& k) {
    const FusionRing& R = C.ring;
    return k.b < R.N(k.j, k.k, k.p) && k.d < R.N(k.q, k.k, k.l) && k.a < R.N(k.i, k.p, k.l) &&
           k.c < R.N(k.i, k.j, k.q) && k.b >= 0 && k.d >= 0 && k.a >= 0 && k.c >= 0;
}

inline std::string h4_str(const CategoryData& C, const H4Key& k) {
    const FusionRing& R = C.ring;
    return std::string(k.gside ? "G" : "F") + "(" + R.name(k.i) + "," + R.name(k.j) + "," +
           R.name(k.k) + "," + R.name(k.l) + "," + R.name(k.p) + "," + R.name(k.q) + ")[" +
           std::to_string(k.b) + "," + std::to_string(k.d) + "," + std::to_string(k.a) + "," +
           std::to_string(k.c) + "]";
}

inline void h4_add(H4Vector& v, const H4Key& k, const Scalar& s) {
    if (s.is_zero()) return;
    auto it = v.find(k);
    if (it == v.end()) {
        v.emplace(k, s);
        return;
    }
    it->second += s;
    if (it->second.is_zero()) v.erase(it);
}

inline std::vector<H4Key> h4_basis(const CategoryData& C) {
    const FusionRing& R = C.ring;
    std::vector<H4Key> out;
    const int n = R.rank();
    for (Label i = 0; i < n; ++i)
        for (Label j = 0; j < n; ++j)
            for (Label k = 0; k < n; ++k)
                for (Label l = 0; l < n; ++l)
                    for (Label p = 0; p < n; ++p) {
                        if (!R.N(j, k, p) || !R.N(i, p, l)) continue;
                        for (Label q = 0; q < n; ++q) {
                            if (!R.N(i, j, q) || !R.N(q, k, l)) continue;
                            for (int b = 0; b < R.N(j, k, p); ++b)
                                for (int d = 0; d < R.N(q, k, l); ++d)
                                    for (int a = 0; a < R.N(i, p, l); ++a)
                                        for (int c = 0; c < R.N(i, j, q); ++c)
                                            for (int side = 0; side < 2; ++side) {
                                                H4Key key{side == 1, i, j, k, l, p, q, b, d, a, c};
                                                out.push_back(key);
                                            }
                        }
                    }
    return out;
}

// the four slot spaces of a summand; Gside flips every orientation
inline HomRef h4_slot_ref(const H4Key& k, int slot) {
    auto orient = [&](bool to_on_fside) {
        bool to = k.gside ? !to_on_fside : to_on_fside;
        return to ? Orient::ToK : Orient::FromK;
    };
    switch (slot) {
    case 1: return {orient(true), k.j, k.k, k.p};
    case 2: return {orient(false), k.q, k.k, k.l};
    case 3: return {orient(true), k.i, k.p, k.l};
    default: return {orient(false), k.i, k.j, k.q};
    }
}

namespace detail {

struct TauMove {
    // relabel(i,j,k,l,p,q) and slot shuffle with the two mapped slots
    int perm[4];       // out slot s takes in slot perm[s]
    int mapped[2];     // in-slot numbers (1-based) that pass through Lb/Rb
    bool use_l[2];     // true = Lb, false = Rb
};

inline H4Vector apply_tau_generic(const CategoryData& C, const SpecialSymbols& sp,
                                  const MuChoice& mu, const H4Vector& v, int which) {
    H4Vector out;
    for (auto& [key, coeff] : v) {
        Label i = key.i, j = key.j, k = key.k, l = key.l, p = key.p, q = key.q;
        H4Key base;
        base.gside = !key.gside;
        TauMove mv{};
        switch (which) {
        case 12:
            base.i = C.ring.bar(i); base.j = q; base.k = k; base.l = p; base.p = l; base.q = j;
            mv = {{2, 1, 3, 4}, {3, 4}, {true, true}};
            break;
        case 23:
            base.i = q; base.j = C.ring.bar(j); base.k = p; base.l = l; base.p = k; base.q = i;
            mv = {{1, 3, 2, 4}, {1, 4}, {true, false}};
            break;
        default:  // 34
            base.i = i; base.j = p; base.k = C.ring.bar(k); base.l = q; base.p = j; base.q = l;
            mv = {{1, 2, 4, 3}, {1, 2}, {false, false}};
            break;
        }
        const int in_idx[5] = {0, key.b, key.d, key.a, key.c};
        HomMap m0 = mv.use_l[0] ? modified_L(C, sp, mu, h4_slot_ref(key, mv.mapped[0]))
                                  : modified_R(C, sp, mu, h4_slot_ref(key, mv.mapped[0]));
        HomMap m1 = mv.use_l[1] ? modified_L(C, sp, mu, h4_slot_ref(key, mv.mapped[1]))
                                  : modified_R(C, sp, mu, h4_slot_ref(key, mv.mapped[1]));
        for (int t0 = 0; t0 < m0.m.rows; ++t0) {
            Scalar c0 = m0.m.at(t0, in_idx[mv.mapped[0]]);
            if (c0.is_zero()) continue;
            for (int t1 = 0; t1 < m1.m.rows; ++t1) {
                Scalar c1 = m1.m.at(t1, in_idx[mv.mapped[1]]);
                if (c1.is_zero()) continue;
                int out_idx[5] = {0, 0, 0, 0, 0};
                for (int s = 1; s <= 4; ++s) {
                    int from = mv.perm[s - 1];
                    if (from == mv.mapped[0]) out_idx[s] = t0;
                    else if (from == mv.mapped[1]) out_idx[s] = t1;
                    else out_idx[s] = in_idx[from];
                }
                H4Key nk = base;
                nk.b = out_idx[1];
                nk.d = out_idx[2];
                nk.a = out_idx[3];
                nk.c = out_idx[4];
                h4_add(out, nk, coeff * c0 * c1);
            }
        }
    }
    return out;
}

} // namespace detail

inline H4Vector tau12(const CategoryData& C, const SpecialSymbols& sp, const MuChoice& mu,
                      const H4Vector& v) {
    return detail::apply_tau_generic(C, sp, mu, v, 12);
}

inline H4Vector tau23(const CategoryData& C, const SpecialSymbols& sp, const MuChoice& mu,
                      const H4Vector& v) {
    return detail::apply_tau_generic(C, sp, mu, v, 23);
}

inline H4Vector tau34(const CategoryData& C, const SpecialSymbols& sp, const MuChoice& mu,
                      const H4Vector& v) {
    return detail::apply_tau_generic(C, sp, mu, v, 34);
}

// rescaled 6j function; DimWeighted additionally multiplies by
// sqrt(d_i d_j d_k d_lbar)
inline Scalar f_value(const CategoryData& C, const SpecialSymbols& sp,
                      const DimensionTable& dims, RootChoice& rc, const H4Key& k) {
    if (!h4_valid(C, k)) throw ShapeMismatch("evaluation outside the summand domain: " + h4_str(C, k));
    Scalar pref = sqrt_paired(C, sp, rc, k.l);
    if (C.convention == CodualConvention::DimWeighted) {
        Scalar w = dims.dim_l[k.i] * dims.dim_l[k.j] * dims.dim_l[k.k] *
                   dims.dim_l[C.ring.bar(k.l)];
        pref *= rc.sqrt(w, "dimweighted:" + C.ring.name(k.i) + "," + C.ring.name(k.j) + "," +
                               C.ring.name(k.k) + "," + C.ring.name(k.l));
    }
    Scalar entry = k.gside ? C.gentry(k.i, k.j, k.k, k.l, k.q, k.c, k.d, k.p, k.a, k.b)
                           : C.fentry(k.i, k.j, k.k, k.l, k.p, k.a, k.b, k.q, k.c, k.d);
    return pref * entry;
}

inline Scalar f_function(const CategoryData& C, const SpecialSymbols& sp,
                         const DimensionTable& dims, RootChoice& rc, const H4Vector& v) {
    Scalar out = C.zero();
    for (auto& [key, coeff] : v) out += coeff * f_value(C, sp, dims, rc, key);
    return out;
}

struct S4Report {
    bool relations_hold = true;
    bool double_dual_identity = true;
    bool consistent = true;  // relations_hold <=> double dual = id
    long checked = 0;
    std::vector<std::string> witnesses;
};

// Coxeter relations on a basis of the summand space: squares of the three
// generators, both braid relations and the commuting relation.  Full
// basis for rank <= 3, seeded sample of 1000 otherwise.
inline S4Report check_s4(const CategoryData& C, const SpecialSymbols& sp, const MuChoice& mu,
                         const DimensionTable& dims, unsigned long seed = 0) {
    S4Report rep;
    std::vector<H4Key> basis = h4_basis(C);
    if (C.ring.rank() > 3 && basis.size() > 1000) {
        std::mt19937_64 rng(seed);
        std::shuffle(basis.begin(), basis.end(), rng);
        basis.resize(1000);
    }
    auto t12 = [&](const H4Vector& v) { return tau12(C, sp, mu, v); };
    auto t23 = [&](const H4Vector& v) { return tau23(C, sp, mu, v); };
    auto t34 = [&](const H4Vector& v) { return tau34(C, sp, mu, v); };
    auto is_unit_vec = [&](const H4Vector& v, const H4Key& k) {
        if (v.size() != 1) return false;
        auto& [key, c] = *v.begin();
        return key == k && c == C.one();
    };
    for (const H4Key& k : basis) {
        ++rep.checked;
        H4Vector e{{k, C.one()}};
        struct Rel {
            const char* name;
            H4Vector value;
        };
        std::vector<Rel> rels;
        rels.push_back({"t12^2", t12(t12(e))});
        rels.push_back({"t23^2", t23(t23(e))});
        rels.push_back({"t34^2", t34(t34(e))});
        H4Vector v = e;
        for (int s = 0; s < 3; ++s) v = t12(t23(v));
        rels.push_back({"(t12 t23)^3", v});
        v = e;
        for (int s = 0; s < 3; ++s) v = t23(t34(v));
        rels.push_back({"(t23 t34)^3", v});
        v = t12(t34(t12(t34(e))));
        rels.push_back({"(t12 t34)^2", v});
        for (auto& r : rels)
            if (!is_unit_vec(r.value, k)) {
                rep.relations_hold = false;
                if (rep.witnesses.size() < 8)
                    rep.witnesses.push_back(std::string(r.name) + " != id at " + h4_str(C, k));
            }
    }
    for (const HomRef& r : detail::all_refs(C))
        if (!double_dual_map(C, sp, mu, dims, r).m.is_identity()) {
            rep.double_dual_identity = false;
            break;
        }
    rep.consistent = rep.relations_hold == rep.double_dual_identity;
    return rep;
}

struct TetraVerdict {
    bool s4_relations_hold = false;
    bool f_invariant = true;          // F o tau = F for all three generators
    bool t23_identity = true;         // tau23 fixes F with no extra factor
    bool t12_m_form = true;           // tau12(F) matches the M-contraction
    bool t34_m_form = true;
    bool t12_diagonal = true;         // tau12(F) = sqrt(rel dbar_i) eps F (eigenbases)
    bool t34_diagonal = true;
    bool composite_identity = true;   // explicit three-factor expansion of F
    long checked = 0;
    std::vector<std::string> witnesses;
};

// Per-basis-element identities for the function F; expects eigenbasis
// data (any basis when every space is one-dimensional).  The identities
// are stated in the unit covector pairing, so the evaluation ignores a
// DimWeighted convention flag on the input.
inline TetraVerdict check_tau_identities(const CategoryData& Cin, const MuChoice& mu,
                                         const EpsilonTable& table, RootChoice& rc,
                                         unsigned long seed = 0) {
    CategoryData C = Cin;
    C.convention = CodualConvention::UnitPairing;
    const FusionRing& R = C.ring;
    SpecialSymbols sp = special_symbols(C);
    DimensionTable dims = dimensions(C, mu);
    TetraVerdict out;
    auto note = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (out.witnesses.size() < 12) out.witnesses.push_back(msg);
    };

    std::vector<H4Key> basis = h4_basis(C);
    if (R.rank() > 3 && basis.size() > 2000) {
        std::mt19937_64 rng(seed);
        std::shuffle(basis.begin(), basis.end(), rng);
        basis.resize(2000);
    }
    for (const H4Key& k : basis) {
        ++out.checked;
        H4Vector e{{k, C.one()}};
        Scalar fx = f_value(C, sp, dims, rc, k);
        Scalar f12 = f_function(C, sp, dims, rc, tau12(C, sp, mu, e));
        Scalar f23 = f_function(C, sp, dims, rc, tau23(C, sp, mu, e));
        Scalar f34 = f_function(C, sp, dims, rc, tau34(C, sp, mu, e));
        if (f12 != fx || f23 != fx || f34 != fx) out.f_invariant = false;
        if (k.gside) continue;  // the entrywise identities below are stated per Fside

        if (f23 != fx) note(out.t23_identity, "tau23(F) != F at " + h4_str(C, k));

        // gauge-independent contractions against M
        Matrix m_ipl = m_matrix(C, k.i, k.p, k.l);
        Scalar rhs12 = C.zero();
        for (int m = 0; m < R.N(k.i, k.p, k.l); ++m)
            rhs12 += m_ipl.at(k.a, m) * C.fentry(k.i, k.j, k.k, k.l, k.p, m, k.b, k.q, k.c, k.d);
        rhs12 *= dims.dim_l[R.bar(k.i)] * sqrt_paired(C, sp, rc, k.p);
        if (f12 != rhs12) note(out.t12_m_form, "tau12(F) M-contraction fails at " + h4_str(C, k));

        Matrix m_qkl = m_matrix(C, k.q, k.k, k.l);
        Scalar rhs34 = C.zero();
        for (int m = 0; m < R.N(k.q, k.k, k.l); ++m)
            rhs34 += C.fentry(k.i, k.j, k.k, k.l, k.p, k.a, k.b, k.q, k.c, m) * m_qkl.at(m, k.d);
        rhs34 *= dims.dim_l[k.k] * sqrt_paired(C, sp, rc, k.q);
        if (f34 != rhs34) note(out.t34_m_form, "tau34(F) M-contraction fails at " + h4_str(C, k));

        // diagonal forms through the sign spectrum
        Scalar pre12 = dims.dim_l[R.bar(k.i)] / sqrt_paired(C, sp, rc, k.i) *
                       Scalar::integer(table.eps(k.i, k.p, k.l, k.a), C.field);
        if (f12 != pre12 * fx) note(out.t12_diagonal, "tau12 diagonal form fails at " + h4_str(C, k));
        Scalar pre34 = dims.dim_l[k.k] / sqrt_paired(C, sp, rc, k.k) *
                       Scalar::integer(table.eps(k.q, k.k, k.l, k.d), C.field);
        if (f34 != pre34 * fx) note(out.t34_diagonal, "tau34 diagonal form fails at " + h4_str(C, k));

        // explicit three-factor expansion (the tau23 route), any gauge
        Label jb = R.bar(k.j);
        Scalar comp = C.zero();
        for (int b2 = 0; b2 < R.N(jb, k.p, k.k); ++b2)
            for (int c2 = 0; c2 < R.N(k.q, jb, k.i); ++c2)
                comp += C.fentry(jb, k.j, k.k, k.k, k.p, b2, k.b, R.unit, 0, 0) *
                        C.fentry(k.i, k.j, jb, k.i, R.unit, 0, 0, k.q, k.c, c2) *
                        C.gentry(k.q, jb, k.p, k.l, k.i, c2, k.a, k.k, k.d, b2);
        comp /= sp.fo[jb];
        if (comp != C.fentry(k.i, k.j, k.k, k.l, k.p, k.a, k.b, k.q, k.c, k.d))
            note(out.composite_identity, "three-factor expansion fails at " + h4_str(C, k));
    }
    return out;
}

struct MfReductionReport {
    bool multiplicity_free = true;
    bool gauge_condition_holds = true;   // the sqrt(d_p/(d_i d_k)) pattern
    long relations_checked = 0;
    long relations_failed = 0;
    std::vector<std::string> witnesses;
};

// Multiplicity-free reduction: when the one-dimensional evaluation
// entries all equal sqrt(d_p/(d_i d_k)), the function identities become
// entrywise proportionalities between F and inverse blocks.
inline MfReductionReport check_mf_reduction(const CategoryData& C, const MuChoice& mu,
                                            RootChoice& rc) {
    const FusionRing& R = C.ring;
    SpecialSymbols sp = special_symbols(C);
    DimensionTable dims = dimensions(C, mu);
    MfReductionReport rep;
    for (Label i = 0; i < R.rank() && rep.multiplicity_free; ++i)
        for (Label j = 0; j < R.rank() && rep.multiplicity_free; ++j)
            for (Label k = 0; k < R.rank(); ++k)
                if (R.N(i, j, k) > 1) {
                    rep.multiplicity_free = false;
                    rep.witnesses.push_back("multiplicity above one at " + label_triple(R, i, j, k));
                    break;
                }
    if (!rep.multiplicity_free) return rep;

    auto sqrt_ratio = [&](Label num1, std::optional<Label> num2, Label den1, Label den2,
                          const std::string& key) {
        Scalar v = dims.dim_l[num1];
        if (num2) v *= dims.dim_l[*num2];
        v /= dims.dim_l[den1] * dims.dim_l[den2];
        return rc.sqrt(v, key);
    };

    for (Label i = 0; i < R.rank(); ++i)
        for (Label k = 0; k < R.rank(); ++k)
            for (Label p = 0; p < R.rank(); ++p) {
                Label ib = R.bar(i), kb = R.bar(k);
                if (!R.N(i, k, p) || !R.N(ib, p, k) || !R.N(p, kb, i)) continue;
                Scalar e1 = C.fentry(ib, i, k, k, p, 0, 0, R.unit, 0, 0);
                Scalar e2 = C.fentry(i, k, kb, i, R.unit, 0, 0, p, 0, 0);
                Scalar e3 = C.gentry(i, k, kb, i, p, 0, 0, R.unit, 0, 0);
                Scalar e4 = C.gentry(ib, i, k, k, R.unit, 0, 0, p, 0, 0);
                bool equal = e1 == e2 && e2 == e3 && e3 == e4;
                bool square = e1 * e1 == dims.dim_l[p] / (dims.dim_l[i] * dims.dim_l[k]);
                if (!(equal && square)) {
                    rep.gauge_condition_holds = false;
                    if (rep.witnesses.size() < 8)
                        rep.witnesses.push_back("evaluation entry pattern fails at (" + R.name(i) +
                                                "," + R.name(k) + ";" + R.name(p) + ")");
                }
            }
    if (!rep.gauge_condition_holds) return rep;

    for (auto& quad : C.nonzero_quads()) {
        auto [i, j, k, l] = quad;
        Label ib = R.bar(i), jb = R.bar(j), kb = R.bar(k);
        for (Label p = 0; p < R.rank(); ++p) {
            if (!R.N(j, k, p) || !R.N(i, p, l)) continue;
            for (Label q = 0; q < R.rank(); ++q) {
                if (!R.N(i, j, q) || !R.N(q, k, l)) continue;
                Scalar f = C.fentry(i, j, k, l, p, 0, 0, q, 0, 0);
                Scalar pq_jl = sqrt_ratio(p, q, j, l, "s4onf:" + R.name(p) + R.name(q) + ":" +
                                                          R.name(j) + R.name(l));
                Scalar pq_ik = sqrt_ratio(p, q, i, k, "s4onf:" + R.name(p) + R.name(q) + ":" +
                                                          R.name(i) + R.name(k));
                Scalar r1 = pq_jl * C.gentry(ib, q, k, p, j, 0, 0, l, 0, 0);
                Scalar r2 = pq_ik * C.gentry(q, jb, p, l, i, 0, 0, k, 0, 0);
                Scalar r3 = pq_jl * C.gentry(i, p, kb, q, l, 0, 0, j, 0, 0);
                for (auto& [name, rhs] : {std::pair<const char*, Scalar>{"r12", r1},
                                          {"r23", r2},
                                          {"r34", r3}}) {
                    ++rep.relations_checked;
                    if (f != rhs) {
                        ++rep.relations_failed;
                        if (rep.witnesses.size() < 8)
                            rep.witnesses.push_back(std::string(name) + " fails at (" + R.name(i) +
                                                    "," + R.name(j) + "," + R.name(k) + ";" +
                                                    R.name(l) + ") p=" + R.name(p) +
                                                    " q=" + R.name(q));
                    }
                }
            }
        }
    }
    return rep;
}

} // namespace fusion6j
