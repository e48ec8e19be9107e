#pragma once

// Category file format and report rendering.  Files are JSON documents:
//
//   {
//     "schema": "v1",
//     "field": "Q" | "Q(sqrt5)" | "Q(sqrt3,i)" | "C",
//     "labels": ["1","x",...],
//     "unit": 0,
//     "dual": [0,1,...],
//     "fusion": [[i,j,k,N], ...],              sparse, omitted = 0
//     "fblocks": [[i,j,k,l,p,a,b,q,c,d,"v"], ...],  sparse, omitted = 0
//     "convention": "unit" | "dimweighted"
//   }
//
// Omitted blocks whose labels contain the unit default to identity
// matrices.  Scalars use the grammar of scalar.hpp.

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "builtins.hpp"
#include "fsym.hpp"

namespace fusion6j {

inline std::string save_category(const CategoryData& C) {
    nlohmann::json j;
    j["schema"] = "v1";
    j["field"] = field_name(C.field);
    j["labels"] = C.ring.names;
    j["unit"] = C.ring.unit;
    j["dual"] = C.ring.dual;
    j["convention"] = C.convention == CodualConvention::DimWeighted ? "dimweighted" : "unit";
    nlohmann::json fusion = nlohmann::json::array();
    for (Label i = 0; i < C.ring.rank(); ++i)
        for (Label jj = 0; jj < C.ring.rank(); ++jj)
            for (Label k = 0; k < C.ring.rank(); ++k)
                if (C.ring.N(i, jj, k))
                    fusion.push_back({i, jj, k, C.ring.N(i, jj, k)});
    j["fusion"] = fusion;
    nlohmann::json blocks = nlohmann::json::array();
    for (auto& [key, m] : C.fblocks) {
        auto [i, jj, k, l] = key;
        for (Label p = 0; p < C.ring.rank(); ++p)
            for (int a = 0; a < C.ring.N(i, p, l); ++a)
                for (int b = 0; b < C.ring.N(jj, k, p); ++b)
                    for (Label q = 0; q < C.ring.rank(); ++q)
                        for (int c = 0; c < C.ring.N(i, jj, q); ++c)
                            for (int d = 0; d < C.ring.N(q, k, l); ++d) {
                                Scalar v = m.at(C.row_offset(i, jj, k, l, p, a, b),
                                                C.col_offset(i, jj, k, l, q, c, d));
                                if (v.is_zero()) continue;
                                blocks.push_back({i, jj, k, l, p, a, b, q, c, d, v.str()});
                            }
    }
    j["fblocks"] = blocks;
    return j.dump(1);
}

namespace detail {

inline std::string line_col(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace detail

inline CategoryData load_category(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("malformed JSON at " + detail::line_col(text, e.byte) + ": " + e.what());
    }
    try {
        if (!j.contains("schema") || j["schema"] != "v1")
            throw ParseError("missing or unsupported schema (want \"v1\")");
        CategoryData C;
        C.field = field_from_name(j.at("field").get<std::string>());
        std::vector<std::string> names = j.at("labels").get<std::vector<std::string>>();
        Label unit = j.at("unit").get<Label>();
        std::vector<Label> dual = j.at("dual").get<std::vector<Label>>();
        if (dual.size() != names.size()) throw ParseError("dual permutation has wrong length");
        C.ring = FusionRing::empty(std::move(names), unit, std::move(dual));
        const int n = C.ring.rank();
        for (auto& row : j.at("fusion")) {
            if (!row.is_array() || row.size() != 4) throw ParseError("fusion rows are [i,j,k,N]");
            int i = row[0], jj = row[1], k = row[2], N = row[3];
            if (i < 0 || i >= n || jj < 0 || jj >= n || k < 0 || k >= n || N < 0)
                throw ParseError("fusion indices out of range");
            C.ring.set_N(i, jj, k, N);
        }
        if (j.contains("convention") && j["convention"] == "dimweighted")
            C.convention = CodualConvention::DimWeighted;

        auto ring_rep = validate_ring(C.ring);
        if (!ring_rep.ok())
            throw RingInvalid("fusion ring invalid: " + ring_rep.entries.front().code + " " +
                              ring_rep.entries.front().detail);

        // allocate every nonzero block; unit-containing ones default to identity
        for (auto& q : C.nonzero_quads()) {
            auto [rows, cols] = block_dims(C.ring, q[0], q[1], q[2], q[3]);
            (void)cols;
            C.fblocks.emplace(q, C.is_unit_block(q) ? Matrix::identity(rows, C.field)
                                                    : Matrix(rows, rows, C.field));
        }
        std::set<BlockKey> touched;
        if (j.contains("fblocks"))
            for (auto& row : j.at("fblocks")) {
                if (!row.is_array() || row.size() != 11)
                    throw ParseError("fblock rows are [i,j,k,l,p,a,b,q,c,d,value]");
                BlockKey key{row[0].get<Label>(), row[1].get<Label>(), row[2].get<Label>(),
                             row[3].get<Label>()};
                auto it = C.fblocks.find(key);
                if (it == C.fblocks.end())
                    throw RingInvalid("fblock entry at zero-dimension quadruple (" +
                                      std::to_string(int(key[0])) + "," + std::to_string(int(key[1])) +
                                      "," + std::to_string(int(key[2])) + ";" +
                                      std::to_string(int(key[3])) + ")");
                Label p = row[4], q = row[7];
                int a = row[5], b = row[6], c = row[8], d = row[9];
                if (p < 0 || p >= n || q < 0 || q >= n || a < 0 || b < 0 || c < 0 || d < 0 ||
                    a >= C.ring.N(key[0], p, key[3]) || b >= C.ring.N(key[1], key[2], p) ||
                    c >= C.ring.N(key[0], key[1], q) || d >= C.ring.N(q, key[2], key[3]))
                    throw ParseError("fblock multiplicity indices out of range");
                if (touched.insert(key).second && C.is_unit_block(key)) {
                    // explicit entries replace the identity default wholesale
                    it->second = Matrix(it->second.rows, it->second.cols, C.field);
                }
                it->second.at(C.row_offset(key[0], key[1], key[2], key[3], p, a, b),
                              C.col_offset(key[0], key[1], key[2], key[3], q, c, d)) =
                    parse_scalar(row[10].get<std::string>(), C.field);
            }

        // a non-unit block left entirely at zero was simply missing
        for (auto& [key, m] : C.fblocks) {
            if (C.is_unit_block(key) || touched.count(key)) continue;
            bool all_zero = true;
            for (auto& v : m.a) all_zero &= v.is_zero();
            if (all_zero)
                throw RingInvalid("missing F-block at (" + C.ring.name(key[0]) + "," +
                                  C.ring.name(key[1]) + "," + C.ring.name(key[2]) + ";" +
                                  C.ring.name(key[3]) + ")");
        }
        return C;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad category document: ") + e.what());
    }
}

inline CategoryData load_category_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read \"" + path + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_category(ss.str());
}

// exact data embedded into the float backend
inline CategoryData to_float(const CategoryData& C) {
    if (C.field == FieldKind::C) return C;
    CategoryData out = C;
    out.field = FieldKind::C;
    out.gcache.clear();
    for (auto& [key, m] : out.fblocks) {
        (void)key;
        Matrix f(m.rows, m.cols, FieldKind::C);
        for (size_t t = 0; t < m.a.size(); ++t) f.a[t] = Scalar::complex(m.a[t].to_complex());
        m = std::move(f);
    }
    return out;
}

} // namespace fusion6j
