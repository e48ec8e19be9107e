#pragma once

// Coefficient-field arithmetic with two interchangeable backends.
//
// The exact backend stores rational coordinates over the basis
// {1, sqrt(D), i, i*sqrt(D)} of Q, Q(sqrt5) or Q(sqrt3,i); the float
// backend stores a complex double compared against a global relative
// tolerance.  Square roots go through RootChoice so that every branch
// decision is keyed, recorded and reproducible within a run.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <gmpxx.h>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fusion6j {

enum class FieldKind { Q, QSqrt5, QSqrt3i, C };

inline const char* field_name(FieldKind k) {
    switch (k) {
    case FieldKind::Q:       return "Q";
    case FieldKind::QSqrt5:  return "Q(sqrt5)";
    case FieldKind::QSqrt3i: return "Q(sqrt3,i)";
    case FieldKind::C:       return "C";
    }
    return "?";
}

inline FieldKind field_from_name(const std::string& s) {
    if (s == "Q") return FieldKind::Q;
    if (s == "Q(sqrt5)") return FieldKind::QSqrt5;
    if (s == "Q(sqrt3,i)") return FieldKind::QSqrt3i;
    if (s == "C") return FieldKind::C;
    throw ParseError("unknown field \"" + s + "\"");
}

// radicand D of the sqrt adjoined to the exact field; 0 when none
inline int field_radicand(FieldKind k) {
    if (k == FieldKind::QSqrt5) return 5;
    if (k == FieldKind::QSqrt3i) return 3;
    return 0;
}

inline bool field_has_i(FieldKind k) {
    return k == FieldKind::QSqrt3i || k == FieldKind::C;
}

// Global relative tolerance of the float backend (CLI flag / FUSION6J_TOL).
inline double& float_tolerance() {
    static double tol = [] {
        if (const char* env = std::getenv("FUSION6J_TOL")) {
            double v = std::atof(env);
            if (v > 0) return v;
        }
        return 1e-9;
    }();
    return tol;
}

class Scalar {
public:
    Scalar() : kind_(FieldKind::Q) {}

    static Scalar zero(FieldKind k) { return Scalar(k); }

    static Scalar one(FieldKind k) {
        Scalar s(k);
        if (k == FieldKind::C) s.z_ = 1.0;
        else s.c_[0] = 1;
        return s;
    }

    static Scalar integer(long n, FieldKind k) {
        Scalar s(k);
        if (k == FieldKind::C) s.z_ = double(n);
        else s.c_[0] = n;
        return s;
    }

    static Scalar rational(const mpq_class& q, FieldKind k) {
        Scalar s(k);
        if (k == FieldKind::C) s.z_ = q.get_d();
        else s.c_[0] = q;
        return s;
    }

    static Scalar rational(long num, long den, FieldKind k) {
        mpq_class q(num, den);
        q.canonicalize();
        return rational(q, k);
    }

    // coordinates (c0, c1, c2, c3) over {1, sqrt(D), i, i*sqrt(D)}
    static Scalar exact(FieldKind k, mpq_class c0, mpq_class c1 = 0,
                        mpq_class c2 = 0, mpq_class c3 = 0) {
        if (k == FieldKind::C) throw FieldMismatch("exact coordinates on float backend");
        if (field_radicand(k) == 0 && c1 != 0) throw FieldMismatch("sqrt coordinate outside field");
        if ((field_radicand(k) == 0 && c3 != 0) || (!field_has_i(k) && (c2 != 0 || c3 != 0)))
            throw FieldMismatch("imaginary coordinate outside field");
        Scalar s(k);
        s.c_[0] = std::move(c0);
        s.c_[1] = std::move(c1);
        s.c_[2] = std::move(c2);
        s.c_[3] = std::move(c3);
        for (auto& c : s.c_) c.canonicalize();
        return s;
    }

    static Scalar complex(std::complex<double> z) {
        Scalar s(FieldKind::C);
        s.z_ = z;
        return s;
    }

    FieldKind kind() const { return kind_; }
    bool is_float() const { return kind_ == FieldKind::C; }
    const mpq_class& coord(int i) const { return c_[i]; }
    std::complex<double> float_value() const { return z_; }

    bool is_zero() const {
        if (is_float()) return std::abs(z_) <= float_tolerance();
        return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
    }

    bool is_rational() const {
        return !is_float() && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
    }

    // exact values embed into the double field via sqrt5 -> 2.236..., sqrt3 -> 1.732...
    std::complex<double> to_complex() const {
        if (is_float()) return z_;
        double r = field_radicand(kind_) ? std::sqrt(double(field_radicand(kind_))) : 0.0;
        double re = c_[0].get_d() + c_[1].get_d() * r;
        double im = c_[2].get_d() + c_[3].get_d() * r;
        return {re, im};
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        auto [x, y, k] = promote(a, b);
        if (k == FieldKind::C) return complex(x.z_ + y.z_);
        Scalar r(k);
        for (int i = 0; i < 4; ++i) r.c_[i] = x.c_[i] + y.c_[i];
        return r;
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    Scalar operator-() const {
        Scalar r(*this);
        if (is_float()) r.z_ = -z_;
        else for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        auto [x, y, k] = promote(a, b);
        if (k == FieldKind::C) return complex(x.z_ * y.z_);
        const long D = field_radicand(k);
        const mpq_class *u = x.c_, *v = y.c_;
        Scalar r(k);
        r.c_[0] = u[0] * v[0] + D * (u[1] * v[1]) - u[2] * v[2] - D * (u[3] * v[3]);
        r.c_[1] = u[0] * v[1] + u[1] * v[0] - u[2] * v[3] - u[3] * v[2];
        r.c_[2] = u[0] * v[2] + u[2] * v[0] + D * (u[1] * v[3] + u[3] * v[1]);
        r.c_[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] + u[2] * v[1];
        return r;
    }

    Scalar inv() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        if (is_float()) return complex(1.0 / z_);
        const long D = field_radicand(kind_);
        // 1/(p+qi) = (p-qi)/(p^2+q^2), then invert the Q(sqrt D) norm
        Scalar conj(*this);
        conj.c_[2] = -conj.c_[2];
        conj.c_[3] = -conj.c_[3];
        mpq_class n0 = c_[0] * c_[0] + D * (c_[1] * c_[1]) + c_[2] * c_[2] + D * (c_[3] * c_[3]);
        mpq_class n1 = 2 * (c_[0] * c_[1] + c_[2] * c_[3]);
        mpq_class norm = n0 * n0 - D * (n1 * n1);
        Scalar m = exact_with_kind(kind_, n0 / norm, -n1 / norm, 0, 0);
        return conj * m;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        auto [x, y, k] = promote(a, b);
        if (k == FieldKind::C) {
            double scale = std::max({1.0, std::abs(x.z_), std::abs(y.z_)});
            return std::abs(x.z_ - y.z_) <= float_tolerance() * scale;
        }
        for (int i = 0; i < 4; ++i)
            if (x.c_[i] != y.c_[i]) return false;
        return true;
    }

    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(long e) const {
        if (e < 0) return inv().pow(-e);
        Scalar r = one(kind_), base = *this;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    // |a - b| as a double, for residual ranking
    double abs_diff(const Scalar& o) const {
        return std::abs(to_complex() - o.to_complex());
    }

    // square root with the canonical sign: exact roots get a positive
    // leading rational coordinate, float roots the principal branch
    std::optional<Scalar> try_sqrt() const {
        if (is_float()) return complex(std::sqrt(z_));
        std::optional<Scalar> r = exact_sqrt();
        if (!r) return std::nullopt;
        for (int i = 0; i < 4; ++i) {
            if (r->c_[i] == 0) continue;
            if (r->c_[i] < 0) *r = -*r;
            break;
        }
        return r;
    }

    std::string str() const;  // serialization, see grammar below

private:
    explicit Scalar(FieldKind k) : kind_(k), z_(0.0) {}

    // Q embeds into every field; other exact kinds never mix with each other or with C.
    static std::tuple<Scalar, Scalar, FieldKind> promote(const Scalar& a, const Scalar& b) {
        if (a.kind_ == b.kind_) return {a, b, a.kind_};
        if (a.kind_ == FieldKind::Q && a.is_rational()) {
            Scalar x = b.is_float() ? complex(a.c_[0].get_d()) : a;
            x.kind_ = b.kind_;
            if (!b.is_float()) x.z_ = 0.0;
            return {x, b, b.kind_};
        }
        if (b.kind_ == FieldKind::Q && b.is_rational()) {
            auto [y, x, k] = promote(b, a);
            return {x, y, k};
        }
        throw FieldMismatch(std::string("cannot combine ") + field_name(a.kind_) +
                            " with " + field_name(b.kind_));
    }

    static bool rational_sqrt(const mpq_class& x, mpq_class& out) {
        if (x < 0) return false;
        mpz_class num = x.get_num(), den = x.get_den();
        if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
        if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        out = mpq_class(rn) / mpq_class(rd);
        return true;
    }

    // (x + y sqrt D)^2 = a + b sqrt D over the rationals
    static bool quad_sqrt(const mpq_class& a, const mpq_class& b, long D,
                          mpq_class& x, mpq_class& y) {
        if (b == 0) {
            if (rational_sqrt(a, x)) { y = 0; return true; }
            if (D != 0 && rational_sqrt(a / D, y)) { x = 0; return true; }
            return false;
        }
        mpq_class disc = a * a - D * b * b, t;
        if (!rational_sqrt(disc, t)) return false;
        for (int sign = 0; sign < 2; ++sign) {
            mpq_class x2 = (a + (sign ? -t : t)) / 2;
            if (rational_sqrt(x2, x) && x != 0) {
                y = b / (2 * x);
                return true;
            }
        }
        return false;
    }

    std::optional<Scalar> exact_sqrt() const {
        const long D = field_radicand(kind_);
        mpq_class x, y;
        if (!field_has_i(kind_)) {
            if (quad_sqrt(c_[0], c_[1], D, x, y))
                return exact_with_kind(kind_, x, y, 0, 0);
            return std::nullopt;
        }
        // z = p + q i with p, q in Q(sqrt D)
        const mpq_class &p0 = c_[0], &p1 = c_[1], &q0 = c_[2], &q1 = c_[3];
        if (q0 == 0 && q1 == 0) {
            if (quad_sqrt(p0, p1, D, x, y))
                return exact_with_kind(kind_, x, y, 0, 0);
            if (quad_sqrt(-p0, -p1, D, x, y))
                return exact_with_kind(kind_, 0, 0, x, y);
            return std::nullopt;
        }
        // |z|^2 = p^2 + q^2, then u^2 = (p + |z|)/2, v = q/(2u)
        mpq_class m0 = p0 * p0 + D * p1 * p1 + q0 * q0 + D * q1 * q1;
        mpq_class m1 = 2 * (p0 * p1 + q0 * q1);
        mpq_class t0, t1;
        if (!quad_sqrt(m0, m1, D, t0, t1)) return std::nullopt;
        for (int sign = 0; sign < 2; ++sign) {
            mpq_class a0 = (p0 + (sign ? -t0 : t0)) / 2;
            mpq_class a1 = (p1 + (sign ? -t1 : t1)) / 2;
            mpq_class u0, u1;
            if (!quad_sqrt(a0, a1, D, u0, u1)) continue;
            Scalar u = exact_with_kind(kind_, u0, u1, 0, 0);
            if (u.is_zero()) continue;
            Scalar q = exact_with_kind(kind_, q0, q1, 0, 0);
            Scalar v = q / (Scalar::integer(2, kind_) * u);
            Scalar w = exact_with_kind(kind_, u0, u1, v.c_[0], v.c_[1]);
            if (w * w == *this) return w;
        }
        return std::nullopt;
    }

    static Scalar exact_with_kind(FieldKind k, mpq_class a, mpq_class b,
                                  mpq_class c, mpq_class d) {
        Scalar s(k);
        s.c_[0] = std::move(a);
        s.c_[1] = std::move(b);
        s.c_[2] = std::move(c);
        s.c_[3] = std::move(d);
        return s;
    }

    FieldKind kind_;
    mpq_class c_[4];
    std::complex<double> z_{0.0, 0.0};
};

// e^(2 pi i num/den); exact when den divides 12
inline Scalar root_of_unity(long num, long den, FieldKind kind) {
    num %= den;
    if (num < 0) num += den;
    if (num == 0) {
        den = 1;
    } else {
        long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    if (kind == FieldKind::C) {
        double th = 2.0 * M_PI * double(num) / double(den);
        return Scalar::complex({std::cos(th), std::sin(th)});
    }
    if (12 % den != 0)
        throw NoRootInField("root of unity of order " + std::to_string(den) +
                            " needs the float backend");
    static const mpq_class h(1, 2);
    // coordinates of e^(2 pi i k/12) over {1, sqrt3, i, i sqrt3}
    static const mpq_class tab[12][4] = {
        {1, 0, 0, 0},  {0, h, h, 0},   {h, 0, 0, h},   {0, 0, 1, 0},
        {-h, 0, 0, h}, {0, -h, h, 0},  {-1, 0, 0, 0},  {0, -h, -h, 0},
        {-h, 0, 0, -h}, {0, 0, -1, 0}, {h, 0, 0, -h},  {0, h, -h, 0},
    };
    long k = num * (12 / den);
    const mpq_class* c = tab[k];
    if (kind == FieldKind::Q) {
        if (c[1] != 0 || c[2] != 0 || c[3] != 0)
            throw NoRootInField("root of unity outside Q");
        return Scalar::rational(c[0], kind);
    }
    if (kind != FieldKind::QSqrt3i) throw NoRootInField("root of unity outside field");
    return Scalar::exact(kind, c[0], c[1], c[2], c[3]);
}

// all roots of unity representable in an exact field
inline std::vector<Scalar> field_roots_of_unity(FieldKind kind) {
    std::vector<Scalar> out;
    if (kind == FieldKind::QSqrt3i) {
        for (long k = 0; k < 12; ++k) out.push_back(root_of_unity(k, 12, kind));
    } else {
        out.push_back(Scalar::one(kind));
        out.push_back(-Scalar::one(kind));
    }
    return out;
}

// Deterministic per-use-site square roots.  A key resolves to the same
// root for the entire run; distinct keys may pick distinct branches.
class RootChoice {
public:
    Scalar sqrt(const Scalar& s, const std::string& key) {
        auto it = roots_.find(key);
        if (it != roots_.end()) {
            if (it->second * it->second != s)
                throw NoRootInField("root recorded under \"" + key + "\" no longer squares to its argument");
            return it->second;
        }
        if (s.is_float() && s.is_zero())
            throw NoRootInField("float sqrt of zero under \"" + key + "\"");
        auto r = s.try_sqrt();
        if (!r)
            throw NoRootInField("no square root of " + s.str() + " in " +
                                field_name(s.kind()) + " (key \"" + key + "\")");
        roots_.emplace(key, *r);
        return *r;
    }

    const std::map<std::string, Scalar>& recorded() const { return roots_; }

private:
    std::map<std::string, Scalar> roots_;
};

// --- scalar string grammar -------------------------------------------------
//
// exact:  sum of terms  r | r*sqrt(D) | r*I | r*sqrt(D)*I  with r = p or p/q
// float:  "<re>[+-]<im>i"

namespace detail {

inline std::string rat_str(const mpq_class& q) { return q.get_str(); }

inline void append_term(std::string& out, const mpq_class& c, const std::string& tail) {
    if (c == 0) return;
    std::string r = rat_str(c);
    if (!out.empty() && r[0] != '-') out += "+";
    out += r;
    out += tail;
}

} // namespace detail

inline std::string Scalar::str() const {
    if (is_float()) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z_.real(), z_.imag());
        return buf;
    }
    std::string out;
    std::string rad = "*sqrt(" + std::to_string(field_radicand(kind_)) + ")";
    detail::append_term(out, c_[0], "");
    detail::append_term(out, c_[1], rad);
    detail::append_term(out, c_[2], "*I");
    detail::append_term(out, c_[3], rad + "*I");
    return out.empty() ? "0" : out;
}

Scalar parse_scalar(const std::string& text, FieldKind kind);

namespace detail {

inline mpq_class parse_rational(std::string t, const std::string& ctx) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty() || t.find_first_not_of("-/0123456789") != std::string::npos)
        throw ParseError("bad rational \"" + t + "\" in \"" + ctx + "\"");
    try {
        mpq_class q(t);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw ParseError("bad rational \"" + t + "\" in \"" + ctx + "\"");
    }
}

} // namespace detail

inline Scalar parse_scalar(const std::string& text, FieldKind kind) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty scalar");

    if (kind == FieldKind::C) {
        if (s.back() != 'i') {
            char* end = nullptr;
            double re = std::strtod(s.c_str(), &end);
            if (end != s.c_str() + s.size()) throw ParseError("bad float scalar \"" + text + "\"");
            return Scalar::complex({re, 0.0});
        }
        std::string body = s.substr(0, s.size() - 1);
        size_t split = std::string::npos;
        for (size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) throw ParseError("bad float scalar \"" + text + "\"");
        char* end = nullptr;
        std::string res = body.substr(0, split), ims = body.substr(split);
        double re = std::strtod(res.c_str(), &end);
        if (end != res.c_str() + res.size()) throw ParseError("bad float scalar \"" + text + "\"");
        double im = std::strtod(ims.c_str(), &end);
        if (end != ims.c_str() + ims.size()) throw ParseError("bad float scalar \"" + text + "\"");
        return Scalar::complex({re, im});
    }

    mpq_class coord[4];
    size_t pos = 0;
    while (pos < s.size()) {
        size_t start = pos;
        if (s[pos] == '+' || s[pos] == '-') ++pos;
        while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
        std::string term = s.substr(start, pos - start);

        bool has_rad = false, has_i = false;
        std::string rad = "sqrt(" + std::to_string(field_radicand(kind)) + ")";
        auto strip_tail = [&](const std::string& tail) {
            if (term.size() >= tail.size() &&
                term.compare(term.size() - tail.size(), tail.size(), tail) == 0) {
                term.erase(term.size() - tail.size());
                return true;
            }
            return false;
        };
        if (strip_tail("*I") || (term == "I" && (term.clear(), true)) ||
            (term == "-I" && (term = "-", true)) || (term == "+I" && (term = "+", true)))
            has_i = true;
        if (field_radicand(kind) && (strip_tail("*" + rad) || strip_tail(rad)))
            has_rad = true;
        if (term.empty() || term == "+") term = "1";
        else if (term == "-") term = "-1";
        mpq_class r = detail::parse_rational(term, text);

        int slot = (has_i ? 2 : 0) + (has_rad ? 1 : 0);
        if (slot >= 2 && !field_has_i(kind))
            throw ParseError("imaginary term in \"" + text + "\" outside field " + field_name(kind));
        if (has_rad && !field_radicand(kind))
            throw ParseError("sqrt term in \"" + text + "\" outside field " + field_name(kind));
        coord[slot] += r;
    }
    return Scalar::exact(kind, coord[0], coord[1], coord[2], coord[3]);
}

} // namespace fusion6j
