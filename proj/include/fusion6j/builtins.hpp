#pragma once

// Built-in category data: the trivial category, the two rank-2 solutions
// of the pentagon equations (golden-ratio and its Galois conjugate), and
// the pointed cyclic families with their standard 3-cocycles.

#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "fsym.hpp"

namespace fusion6j {

inline CategoryData make_vec(FieldKind kind = FieldKind::Q) {
    CategoryData C;
    C.ring = FusionRing::empty({"1"}, 0, {0});
    C.ring.set_N(0, 0, 0, 1);
    C.field = kind;
    C.fblocks[{0, 0, 0, 0}] = Matrix::identity(1, kind);
    return C;
}

// rank-2 data with x@x = 1 + x; a solves a^2 = a + 1, b is the free
// basis parameter of H(x@x -> x).  golden = true picks a = (1-sqrt5)/2.
inline CategoryData make_rank2(FieldKind kind, bool golden,
                               std::optional<Scalar> b_opt = std::nullopt) {
    if (kind != FieldKind::QSqrt5 && kind != FieldKind::C)
        throw FieldMismatch("rank-2 data needs Q(sqrt5) or C");
    CategoryData C;
    C.ring = FusionRing::empty({"1", "x"}, 0, {0, 1});
    C.ring.set_N(0, 0, 0, 1);
    C.ring.set_N(0, 1, 1, 1);
    C.ring.set_N(1, 0, 1, 1);
    C.ring.set_N(1, 1, 0, 1);
    C.ring.set_N(1, 1, 1, 1);
    C.field = kind;

    Scalar a = kind == FieldKind::C
                   ? Scalar::complex({golden ? (1 - std::sqrt(5.0)) / 2 : (1 + std::sqrt(5.0)) / 2, 0})
                   : Scalar::exact(kind, mpq_class(1, 2), mpq_class(golden ? -1 : 1, 2));
    Scalar b;
    if (b_opt) {
        b = *b_opt;
    } else if (kind == FieldKind::C) {
        b = Scalar::complex(std::sqrt(-a.float_value()));
    } else {
        // sqrt(-a) lies outside Q(sqrt5); the exact backend defaults to b = 1
        b = C.one();
    }
    if (b.is_zero()) throw NonInvertibleGauge("basis parameter b must be invertible");

    for (auto& q : C.nonzero_quads()) {
        if (C.is_unit_block(q)) {
            C.fblocks[q] = Matrix::identity(block_dims(C.ring, q[0], q[1], q[2], q[3]).first, kind);
        } else if (q[3] == 0) {
            Matrix m(1, 1, kind);
            m.at(0, 0) = C.one();
            C.fblocks[q] = m;
        } else {
            // rows/columns ordered (unit, x)
            Matrix m(2, 2, kind);
            m.at(0, 0) = -a;
            m.at(0, 1) = -a / b;
            m.at(1, 0) = b;
            m.at(1, 1) = a;
            C.fblocks[q] = m;
        }
    }
    return C;
}

inline CategoryData make_fibonacci(FieldKind kind = FieldKind::QSqrt5,
                                   std::optional<Scalar> b = std::nullopt) {
    return make_rank2(kind, true, b);
}

inline CategoryData make_yanglee(FieldKind kind = FieldKind::QSqrt5,
                                 std::optional<Scalar> b = std::nullopt) {
    return make_rank2(kind, false, b);
}

// Pointed cyclic data: labels Z_n, g@h = g+h mod n, associator given by
// the standard 3-cocycle  w(g,h,k) = e^(2 pi i s g (h+k-((h+k) mod n)) / n^2).
inline CategoryData make_pointed(int n, long s, FieldKind kind) {
    if (n < 1) throw UnknownBuiltin("pointed family needs n >= 1");
    CategoryData C;
    std::vector<std::string> names;
    std::vector<Label> dual;
    for (int g = 0; g < n; ++g) {
        names.push_back("g" + std::to_string(g));
        dual.push_back((n - g) % n);
    }
    C.ring = FusionRing::empty(std::move(names), 0, std::move(dual));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) C.ring.set_N(g, h, (g + h) % n, 1);
    C.field = kind;
    auto omega = [&](long g, long h, long k) {
        long carry = (h + k) / n;  // 0 or 1
        return root_of_unity(s * g * carry, n, kind);
    };
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int k = 0; k < n; ++k) {
                Matrix m(1, 1, kind);
                m.at(0, 0) = omega(g, h, k);
                C.fblocks[{g, h, k, (g + h + k) % n}] = m;
            }
    return C;
}

// "vec" | "fib" | "yanglee" | "pointed:Z<n>:<s>", optional b override
inline CategoryData builtin(const std::string& name, FieldKind kind,
                            const std::optional<std::string>& b_str = std::nullopt) {
    std::optional<Scalar> b;
    if (b_str) b = parse_scalar(*b_str, kind);
    if (name == "vec") return make_vec(kind == FieldKind::C ? kind : FieldKind::Q);
    if (name == "fib") return make_fibonacci(kind, b);
    if (name == "yanglee") return make_yanglee(kind, b);
    if (name.rfind("pointed:Z", 0) == 0) {
        std::string rest = name.substr(9);
        size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw UnknownBuiltin("pointed builtin must look like pointed:Z<n>:<s>");
        try {
            int n = std::stoi(rest.substr(0, colon));
            long s = std::stol(rest.substr(colon + 1));
            return make_pointed(n, s, kind);
        } catch (const std::invalid_argument&) {
            throw UnknownBuiltin("bad pointed parameters in \"" + name + "\"");
        }
    }
    throw UnknownBuiltin("no builtin named \"" + name + "\"");
}

// natural exact field of a builtin name
inline FieldKind builtin_exact_field(const std::string& name) {
    if (name == "vec") return FieldKind::Q;
    if (name == "fib" || name == "yanglee") return FieldKind::QSqrt5;
    if (name.rfind("pointed:Z", 0) == 0) {
        int n = std::atoi(name.c_str() + 9);
        if (n >= 1 && 12 % n == 0) return n <= 2 ? FieldKind::Q : FieldKind::QSqrt3i;
        return FieldKind::C;
    }
    throw UnknownBuiltin("no builtin named \"" + name + "\"");
}

} // namespace fusion6j
