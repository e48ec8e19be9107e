#pragma once

// Associator data.  The block at (i,j,k;l) is the matrix of the linear
// isomorphism
//
//   (+)_p H(i@p -> l) (x) H(j@k -> p)   -->   (+)_q H(i@j -> q) (x) H(q@k -> l)
//
// ("@" is the tensor product).  Rows are labelled (p, a, b) with
// a indexing H(i@p -> l) and b indexing H(j@k -> p); columns are
// labelled (q, c, d) with c indexing H(i@j -> q) and d indexing
// H(q@k -> l).  Enumeration is lexicographic: intermediate label
// ascending, then the first multiplicity index, then the second.
//
// The inverse block is stored with rows carrying column labels and
// columns carrying row labels.  The accessor gentry() follows the
// conventional subscript layout for inverse 6j-symbols, in which the
// written row (p, a, b) has a in H(i@j -> p), b in H(p@k -> l) and the
// written column (q, c, d) has c in H(i@q -> l), d in H(j@k -> q).

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "report.hpp"
#include "ring.hpp"
#include "scalar.hpp"

namespace fusion6j {

using BlockKey = std::array<Label, 4>;

enum class CodualConvention { UnitPairing, DimWeighted };

struct CategoryData {
    FusionRing ring;
    FieldKind field = FieldKind::Q;
    CodualConvention convention = CodualConvention::UnitPairing;
    std::map<BlockKey, Matrix> fblocks;
    // set when the data went through a gauge that does not preserve the
    // covector duality pairing; sign tables downstream then carry a warning
    bool covector_warning = false;

    mutable std::map<BlockKey, Matrix> gcache;

    int row_dim(Label i, Label j, Label k, Label l) const {
        return block_dims(ring, i, j, k, l).first;
    }

    int row_offset(Label i, Label j, Label k, Label l, Label p, int a, int b) const {
        int off = 0;
        for (Label t = 0; t < p; ++t) off += ring.N(i, t, l) * ring.N(j, k, t);
        return off + a * ring.N(j, k, p) + b;
    }

    int col_offset(Label i, Label j, Label k, Label l, Label q, int c, int d) const {
        int off = 0;
        for (Label t = 0; t < q; ++t) off += ring.N(i, j, t) * ring.N(t, k, l);
        return off + c * ring.N(q, k, l) + d;
    }

    const Matrix& fblock(Label i, Label j, Label k, Label l) const {
        auto it = fblocks.find({i, j, k, l});
        if (it == fblocks.end())
            throw MissingBlock("no block at (" + ring.name(i) + "," + ring.name(j) + "," +
                               ring.name(k) + ";" + ring.name(l) + ")");
        return it->second;
    }

    // inverse block, cached; rows = column labels, columns = row labels
    const Matrix& gblock(Label i, Label j, Label k, Label l) const {
        BlockKey key{i, j, k, l};
        auto it = gcache.find(key);
        if (it == gcache.end())
            it = gcache.emplace(key, fblock(i, j, k, l).inverse()).first;
        return it->second;
    }

    Scalar fentry(Label i, Label j, Label k, Label l, Label p, int a, int b,
                  Label q, int c, int d) const {
        return fblock(i, j, k, l).at(row_offset(i, j, k, l, p, a, b),
                                     col_offset(i, j, k, l, q, c, d));
    }

    Scalar gentry(Label i, Label j, Label k, Label l, Label p, int a, int b,
                  Label q, int c, int d) const {
        return gblock(i, j, k, l).at(col_offset(i, j, k, l, p, a, b),
                                     row_offset(i, j, k, l, q, c, d));
    }

    std::vector<BlockKey> nonzero_quads() const {
        std::vector<BlockKey> out;
        const int n = ring.rank();
        for (Label i = 0; i < n; ++i)
            for (Label j = 0; j < n; ++j)
                for (Label k = 0; k < n; ++k)
                    for (Label l = 0; l < n; ++l)
                        if (block_dims(ring, i, j, k, l).first > 0)
                            out.push_back({i, j, k, l});
        return out;
    }

    bool is_unit_block(const BlockKey& k) const {
        return k[0] == ring.unit || k[1] == ring.unit || k[2] == ring.unit;
    }

    Scalar zero() const { return Scalar::zero(field); }
    Scalar one() const { return Scalar::one(field); }
};

// presence and shape of the block table: every nonzero-dimension
// quadruple present, none extra, all blocks square
inline ValidationReport validate_blocks(const CategoryData& C) {
    ValidationReport rep;
    auto quads = C.nonzero_quads();
    for (auto& q : quads) {
        auto [rows, cols] = block_dims(C.ring, q[0], q[1], q[2], q[3]);
        auto it = C.fblocks.find(q);
        if (it == C.fblocks.end()) {
            rep.add("missing-block", "(" + C.ring.name(q[0]) + "," + C.ring.name(q[1]) + "," +
                                         C.ring.name(q[2]) + ";" + C.ring.name(q[3]) + ")");
            continue;
        }
        if (it->second.rows != rows || it->second.cols != cols)
            rep.add("block-shape", "(" + C.ring.name(q[0]) + "," + C.ring.name(q[1]) + "," +
                                       C.ring.name(q[2]) + ";" + C.ring.name(q[3]) + ")");
    }
    for (auto& [key, m] : C.fblocks) {
        (void)m;
        auto [rows, cols] = block_dims(C.ring, key[0], key[1], key[2], key[3]);
        if (rows == 0 || cols == 0)
            rep.add("extra-block", "(" + C.ring.name(key[0]) + "," + C.ring.name(key[1]) + "," +
                                       C.ring.name(key[2]) + ";" + C.ring.name(key[3]) + ")");
    }
    return rep;
}

// blocks with the unit in any tensor slot must be identity matrices
inline ValidationReport check_triangle(const CategoryData& C) {
    ValidationReport rep;
    for (auto& q : C.nonzero_quads()) {
        if (!C.is_unit_block(q)) continue;
        auto it = C.fblocks.find(q);
        if (it == C.fblocks.end()) continue;  // reported by validate_blocks
        if (!it->second.is_identity())
            rep.add("triangle", "unit block (" + C.ring.name(q[0]) + "," + C.ring.name(q[1]) +
                                    "," + C.ring.name(q[2]) + ";" + C.ring.name(q[3]) +
                                    ") is not the identity");
    }
    return rep;
}

struct PentagonResult {
    bool ok = true;
    double max_residual = 0.0;
    long instances = 0;
    std::string first_violation;
};

// One pentagon instance per label tuple (p,q,r,s,t,u,v,x,y) and free
// multiplicity indices (al, be, ga, de, mu, nu):
//
//   sum_{w,ka,la,eta} F(pqr;x)[(w,la,eta),(u,al,de)]
//                     F(pws;t)[(y,mu,ka),(x,la,nu)]
//                     F(qrs;y)[(v,be,ga),(w,eta,ka)]
// =
//   sum_{si} F(pqv;t)[(y,mu,be),(u,al,si)] F(urs;t)[(v,si,ga),(x,de,nu)]
inline PentagonResult check_pentagon(const CategoryData& C,
                                     const std::vector<Label>& restrict_labels = {}) {
    const FusionRing& R = C.ring;
    const int n = R.rank();
    PentagonResult res;
    std::vector<Label> outer;
    if (restrict_labels.empty())
        for (Label i = 0; i < n; ++i) outer.push_back(i);
    else
        outer = restrict_labels;

    for (Label p : outer)
        for (Label q : outer)
            for (Label r : outer)
                for (Label s : outer)
                    for (Label t = 0; t < n; ++t)
                        for (Label u = 0; u < n; ++u) {
                            if (!R.N(p, q, u)) continue;
                            for (Label x = 0; x < n; ++x) {
                                if (!R.N(u, r, x) || !R.N(x, s, t)) continue;
                                for (Label v = 0; v < n; ++v) {
                                    if (!R.N(r, s, v) || !R.N(u, v, t)) continue;
                                    for (Label y = 0; y < n; ++y) {
                                        if (!R.N(q, v, y) || !R.N(p, y, t)) continue;
                                        for (int al = 0; al < R.N(p, q, u); ++al)
                                            for (int be = 0; be < R.N(q, v, y); ++be)
                                                for (int ga = 0; ga < R.N(r, s, v); ++ga)
                                                    for (int de = 0; de < R.N(u, r, x); ++de)
                                                        for (int mu = 0; mu < R.N(p, y, t); ++mu)
                                                            for (int nu = 0; nu < R.N(x, s, t); ++nu) {
                                                                Scalar lhs = C.zero();
                                                                for (Label w = 0; w < n; ++w) {
                                                                    if (!R.N(q, r, w) || !R.N(p, w, x) || !R.N(w, s, y)) continue;
                                                                    for (int ka = 0; ka < R.N(w, s, y); ++ka)
                                                                        for (int la = 0; la < R.N(p, w, x); ++la)
                                                                            for (int eta = 0; eta < R.N(q, r, w); ++eta)
                                                                                lhs += C.fentry(p, q, r, x, w, la, eta, u, al, de) *
                                                                                       C.fentry(p, w, s, t, y, mu, ka, x, la, nu) *
                                                                                       C.fentry(q, r, s, y, v, be, ga, w, eta, ka);
                                                                }
                                                                Scalar rhs = C.zero();
                                                                for (int si = 0; si < R.N(u, v, t); ++si)
                                                                    rhs += C.fentry(p, q, v, t, y, mu, be, u, al, si) *
                                                                           C.fentry(u, r, s, t, v, si, ga, x, de, nu);
                                                                ++res.instances;
                                                                if (lhs != rhs) {
                                                                    double d = lhs.abs_diff(rhs);
                                                                    if (res.ok) {
                                                                        res.ok = false;
                                                                        res.first_violation =
                                                                            "labels (" + R.name(p) + "," + R.name(q) + "," + R.name(r) + "," +
                                                                            R.name(s) + "," + R.name(t) + "," + R.name(u) + "," + R.name(v) +
                                                                            "," + R.name(x) + "," + R.name(y) + ") indices (" +
                                                                            std::to_string(al) + "," + std::to_string(be) + "," +
                                                                            std::to_string(ga) + "," + std::to_string(de) + "," +
                                                                            std::to_string(mu) + "," + std::to_string(nu) + ")";
                                                                    }
                                                                    res.max_residual = std::max(res.max_residual, d);
                                                                }
                                                            }
                                    }
                                }
                            }
                        }
    return res;
}

struct SpecialSymbols {
    std::vector<Scalar> fo, go;
};

// Fo_i = F(i,ibar,i;i) at row (1,0,0), column (1,0,0); Go_i is the same
// entry of the inverse block.  Go_i = Fo_{ibar} holds for consistent
// data, and on one-dimensional blocks Go_i = 1/Fo_i.
inline SpecialSymbols special_symbols(const CategoryData& C) {
    const FusionRing& R = C.ring;
    SpecialSymbols out;
    out.fo.reserve(R.rank());
    out.go.reserve(R.rank());
    for (Label i = 0; i < R.rank(); ++i) {
        Label ib = R.bar(i), e = R.unit;
        out.fo.push_back(C.fentry(i, ib, i, i, e, 0, 0, e, 0, 0));
        out.go.push_back(C.gentry(i, ib, i, i, e, 0, 0, e, 0, 0));
    }
    for (Label i = 0; i < R.rank(); ++i) {
        if (out.go[i] != out.fo[R.bar(i)])
            throw FormulaMismatch("Go(" + R.name(i) + ") != Fo(" + R.name(R.bar(i)) + ")");
        if (C.fblock(i, R.bar(i), i, i).rows == 1 && out.go[i] * out.fo[i] != C.one())
            throw FormulaMismatch("Go(" + R.name(i) + ") != 1/Fo(" + R.name(i) + ") on 1-dim block");
    }
    return out;
}

inline bool is_veined(const CategoryData& C) {
    for (Label i = 0; i < C.ring.rank(); ++i) {
        Label ib = C.ring.bar(i), e = C.ring.unit;
        if (C.fentry(i, ib, i, i, e, 0, 0, e, 0, 0).is_zero()) return false;
    }
    return true;
}

// covector trace of the completeness relation:
//   sum_{k,a,b} G(ibar,i,j;j)[(1,0,0),(k,a,b)] F(ibar,i,j;j)[(k,a,b),(1,0,0)] = 1
inline ValidationReport check_completeness(const CategoryData& C) {
    ValidationReport rep;
    const FusionRing& R = C.ring;
    for (Label i = 0; i < R.rank(); ++i)
        for (Label j = 0; j < R.rank(); ++j) {
            Label ib = R.bar(i), e = R.unit;
            Scalar sum = C.zero();
            for (Label k = 0; k < R.rank(); ++k)
                for (int a = 0; a < R.N(ib, k, j); ++a)
                    for (int b = 0; b < R.N(i, j, k); ++b)
                        sum += C.gentry(ib, i, j, j, e, 0, 0, k, a, b) *
                               C.fentry(ib, i, j, j, k, a, b, e, 0, 0);
            if (sum != C.one())
                rep.add("completeness", "trace != 1 at (" + R.name(i) + "," + R.name(j) + ")");
        }
    return rep;
}

// change of basis in the fundamental spaces H(i@j -> k); columns of a
// gauge matrix are the new basis vectors in old coordinates
struct GaugeTransform {
    std::map<std::array<Label, 3>, Matrix> blocks;

    const Matrix* find(Label i, Label j, Label k) const {
        auto it = blocks.find({i, j, k});
        return it == blocks.end() ? nullptr : &it->second;
    }

    // preserves the covector pairing iff every block is orthogonal
    bool preserves_covector_duality() const {
        for (auto& [key, g] : blocks) {
            (void)key;
            if (!(g.transpose() * g).is_identity()) return false;
        }
        return true;
    }
};

inline CategoryData apply_gauge(const CategoryData& C, const GaugeTransform& g) {
    std::map<std::array<Label, 3>, Matrix> inv;
    for (auto& [key, m] : g.blocks) {
        if (m.rows != m.cols || m.rows != C.ring.N(key[0], key[1], key[2]))
            throw NonInvertibleGauge("gauge block shape at (" + C.ring.name(key[0]) + "," +
                                     C.ring.name(key[1]) + "," + C.ring.name(key[2]) + ")");
        try {
            inv.emplace(key, m.inverse());
        } catch (const SingularBlock&) {
            throw NonInvertibleGauge("gauge block singular at (" + C.ring.name(key[0]) + "," +
                                     C.ring.name(key[1]) + "," + C.ring.name(key[2]) + ")");
        }
    }
    auto gmat = [&](Label i, Label j, Label k) -> const Matrix* { return g.find(i, j, k); };
    auto gi = [&](Label i, Label j, Label k) -> const Matrix* {
        auto it = inv.find({i, j, k});
        return it == inv.end() ? nullptr : &it->second;
    };
    auto entry = [](const Matrix* m, int r, int c, FieldKind kind) {
        if (!m) return r == c ? Scalar::one(kind) : Scalar::zero(kind);
        return m->at(r, c);
    };

    CategoryData out = C;
    out.gcache.clear();
    if (!g.preserves_covector_duality()) out.covector_warning = true;

    const FusionRing& R = C.ring;
    for (auto& [key, F] : C.fblocks) {
        auto [i, j, k, l] = key;
        Matrix M(F.rows, F.cols, C.field);
        for (Label p = 0; p < R.rank(); ++p)
            for (int a = 0; a < R.N(i, p, l); ++a)
                for (int b = 0; b < R.N(j, k, p); ++b) {
                    int row = C.row_offset(i, j, k, l, p, a, b);
                    for (Label q = 0; q < R.rank(); ++q)
                        for (int c = 0; c < R.N(i, j, q); ++c)
                            for (int d = 0; d < R.N(q, k, l); ++d) {
                                int col = C.col_offset(i, j, k, l, q, c, d);
                                Scalar acc = C.zero();
                                for (int a2 = 0; a2 < R.N(i, p, l); ++a2)
                                    for (int b2 = 0; b2 < R.N(j, k, p); ++b2) {
                                        Scalar lf = entry(gmat(i, p, l), a2, a, C.field) *
                                                    entry(gmat(j, k, p), b2, b, C.field);
                                        if (lf.is_zero()) continue;
                                        for (int c2 = 0; c2 < R.N(i, j, q); ++c2)
                                            for (int d2 = 0; d2 < R.N(q, k, l); ++d2)
                                                acc += lf *
                                                       F.at(C.row_offset(i, j, k, l, p, a2, b2),
                                                            C.col_offset(i, j, k, l, q, c2, d2)) *
                                                       entry(gi(i, j, q), c, c2, C.field) *
                                                       entry(gi(q, k, l), d, d2, C.field);
                                    }
                                M.at(row, col) = acc;
                            }
                }
        out.fblocks[key] = std::move(M);
    }
    return out;
}

// Rescale the evaluation bases of dual pairs so that the rebalanced
// special symbols satisfy Fo~_i = Fo~_{ibar} = sqrt(Fo_i Fo_{ibar}).
inline CategoryData rebalance_fo(const CategoryData& C, RootChoice& rc) {
    const FusionRing& R = C.ring;
    SpecialSymbols sp = special_symbols(C);
    GaugeTransform g;
    for (Label i = 0; i < R.rank(); ++i) {
        Label ib = R.bar(i);
        if (ib <= i) continue;  // self-dual labels need no rescaling
        if (sp.fo[i].is_zero() || sp.fo[ib].is_zero())
            throw NoRootInField("special symbol vanishes; data is not veined");
        Scalar ratio = sp.fo[i] / sp.fo[ib];
        Scalar half = rc.sqrt(ratio, "rebalance:sqrt:" + R.name(i));
        Scalar xi = rc.sqrt(half, "rebalance:xi:" + R.name(i));
        Matrix mi(1, 1, C.field), mb(1, 1, C.field);
        mi.at(0, 0) = xi;
        mb.at(0, 0) = xi.inv();
        g.blocks.emplace(std::array<Label, 3>{i, ib, R.unit}, mi);
        g.blocks.emplace(std::array<Label, 3>{ib, i, R.unit}, mb);
    }
    if (g.blocks.empty()) return C;
    return apply_gauge(C, g);
}

} // namespace fusion6j
