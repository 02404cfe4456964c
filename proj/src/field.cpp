#include "gq/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace gq {
namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// --- plain polynomial arithmetic over Z/p, little-endian coefficient vectors ---

using Poly = std::vector<int>;

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return trim(r);
}

// remainder of a modulo monic b
Poly poly_mod(Poly a, const Poly& b, int p) {
    a = trim(a);
    while (a.size() >= b.size()) {
        int c = a.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
        a = trim(a);
    }
    return a;
}

// monic modulus irreducible over Z/p?  Trial division by every monic
// polynomial of degree 1..deg/2.
bool poly_irreducible(const Poly& modulus, int p) {
    int k = int(modulus.size()) - 1;
    if (k < 1) return false;
    for (int d = 1; 2 * d <= k; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p; // p^d monic candidates
        for (long long idx = 0; idx < count; ++idx) {
            Poly div(d + 1, 0);
            long long t = idx;
            for (int i = 0; i < d; ++i) { div[i] = int(t % p); t /= p; }
            div[d] = 1;
            if (poly_mod(modulus, div, p).empty()) return false;
        }
    }
    return true;
}

// Built-in monic irreducible modulus per (p, k); covers all q = p^k <= 169.
const std::map<std::pair<int, int>, Poly>& modulus_table() {
    static const std::map<std::pair<int, int>, Poly> table = {
        {{2, 1}, {1, 1}},
        {{2, 2}, {1, 1, 1}},             // x^2 + x + 1
        {{2, 3}, {1, 1, 0, 1}},          // x^3 + x + 1
        {{2, 4}, {1, 1, 0, 0, 1}},       // x^4 + x + 1
        {{2, 5}, {1, 0, 1, 0, 0, 1}},    // x^5 + x^2 + 1
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}}, // x^6 + x^4 + x^3 + x + 1
        {{2, 7}, {1, 0, 0, 1, 0, 0, 0, 1}}, // x^7 + x^3 + 1
        {{3, 1}, {1, 1}},
        {{3, 2}, {1, 0, 1}},             // x^2 + 1
        {{3, 3}, {1, 2, 0, 1}},          // x^3 + 2x + 1
        {{3, 4}, {2, 1, 0, 0, 1}},       // x^4 + x + 2
        {{5, 1}, {3, 1}},
        {{5, 2}, {2, 0, 1}},             // x^2 + 2
        {{5, 3}, {1, 1, 0, 1}},          // x^3 + x + 1
        {{7, 1}, {4, 1}},
        {{7, 2}, {1, 0, 1}},             // x^2 + 1
        {{11, 1}, {9, 1}},
        {{11, 2}, {1, 0, 1}},            // x^2 + 1
        {{13, 1}, {11, 1}},
        {{13, 2}, {2, 0, 1}},            // x^2 + 2
    };
    return table;
}

} // namespace

Field::Field(int p, int k, std::vector<int> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw Error("field characteristic " + std::to_string(p_) + " is not prime");
    if (k_ < 1) throw Error("field degree must be positive");
    long long q = 1;
    for (int i = 0; i < k_; ++i) q *= p_;
    if (q > 169) throw Error("field order " + std::to_string(q) + " exceeds the supported bound 169");
    q_ = int(q);
    if (int(modulus_.size()) != k_ + 1 || modulus_.back() != 1)
        throw Error("modulus must be monic of degree k");
    for (int c : modulus_)
        if (c < 0 || c >= p_) throw Error("modulus coefficients must lie in [0, p)");
    if (!poly_irreducible(modulus_, p_))
        throw Error("modulus is reducible over GF(" + std::to_string(p_) + ")");

    auto code_to_poly = [&](Fel a) {
        Poly c(k_);
        for (int i = 0; i < k_; ++i) { c[i] = a % p_; a /= Fel(p_); }
        return trim(c);
    };
    auto poly_to_code = [&](const Poly& c) {
        long long code = 0, base = 1;
        for (size_t i = 0; i < c.size(); ++i) { code += c[i] * base; base *= p_; }
        return Fel(code);
    };

    add_.resize(size_t(q_) * q_);
    mul_.resize(size_t(q_) * q_);
    neg_.resize(q_);
    inv_.resize(q_);
    frob_.resize(q_);
    for (Fel a = 0; a < q_; ++a) {
        Poly pa = code_to_poly(a);
        for (Fel b = 0; b < q_; ++b) {
            Poly pb = code_to_poly(b);
            Poly s(std::max(pa.size(), pb.size()), 0);
            for (size_t i = 0; i < s.size(); ++i) {
                int v = (i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0);
                s[i] = v % p_;
            }
            add_[size_t(a) * q_ + b] = poly_to_code(trim(s));
            mul_[size_t(a) * q_ + b] = poly_to_code(poly_mod(poly_mul(pa, pb, p_), modulus_, p_));
        }
    }
    for (Fel a = 0; a < q_; ++a) {
        Poly na = code_to_poly(a);
        for (int& c : na) c = (p_ - c) % p_;
        neg_[a] = poly_to_code(trim(na));
    }
    for (Fel a = 1; a < q_; ++a) {
        for (Fel b = 1; b < q_; ++b)
            if (mul(a, b) == 1) { inv_[a] = b; break; }
    }
    for (Fel a = 0; a < q_; ++a) frob_[a] = pow(a, p_);

    // least multiplicative generator, by brute force
    for (Fel g = 1; g < q_; ++g) {
        int order = 1;
        Fel x = g;
        while (x != 1) { x = mul(x, g); ++order; }
        if (order == q_ - 1) { gen_ = g; break; }
    }
    if (q_ > 1 && gen_ == 0) throw Error("multiplicative group is not cyclic (internal error)");
}

Fel Field::inv(Fel a) const {
    if (a == 0) throw Error("division by zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
}

Fel Field::div(Fel a, Fel b) const { return mul(a, inv(b)); }

Fel Field::arith(Fel a, Fel b, ArithKind kind) const {
    if (a >= q_ || b >= q_) throw Error("element code out of range");
    switch (kind) {
        case ArithKind::Add: return add(a, b);
        case ArithKind::Sub: return sub(a, b);
        case ArithKind::Mul: return mul(a, b);
        case ArithKind::Div: return div(a, b);
    }
    throw Error("unknown arithmetic kind");
}

Fel Field::pow(Fel a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Fel r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fel Field::frobenius(Fel a, int e) const {
    if (e < 0) throw Error("frobenius exponent must be non-negative");
    for (int i = 0, n = e % k_; i < n; ++i) a = frob_[a]; // frob^k is the identity
    return a;
}

std::vector<int> Field::coeffs(Fel a) const {
    std::vector<int> c(k_);
    for (int i = 0; i < k_; ++i) { c[i] = a % p_; a /= Fel(p_); }
    return c;
}

Fel Field::from_coeffs(const std::vector<int>& c) const {
    if (int(c.size()) > k_) throw Error("coefficient sequence longer than field degree");
    long long code = 0, base = 1;
    for (int v : c) {
        if (v < 0 || v >= p_) throw Error("coefficient out of range [0, p)");
        code += v * base;
        base *= p_;
    }
    return Fel(code);
}

Fel Field::from_int(long long v) const {
    long long r = v % p_;
    if (r < 0) r += p_;
    return Fel(r);
}

std::string Field::to_string(Fel a) const {
    if (k_ == 1) return std::to_string(a);
    std::string s = "(";
    auto c = coeffs(a);
    for (int i = 0; i < k_; ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

std::vector<Fel> Field::embedding_into(const Field& ext) const {
    if (ext.p_ != p_) throw Error("embedding requires equal characteristic");
    if (ext.k_ % k_ != 0)
        throw Error("no subfield embedding: extension degree is not a multiple");
    // least root of our modulus in ext
    Fel root = 0;
    bool found = false;
    for (Fel r = 0; r < ext.q_ && !found; ++r) {
        // Horner evaluation of modulus at r inside ext
        Fel v = 0;
        for (int i = k_; i >= 0; --i)
            v = ext.add(ext.mul(v, r), ext.from_int(modulus_[i]));
        if (v == 0) { root = r; found = true; }
    }
    if (!found) throw Error("modulus has no root in the extension (internal error)");
    std::vector<Fel> map(q_);
    for (Fel a = 0; a < q_; ++a) {
        auto c = coeffs(a);
        Fel v = 0, rp = 1;
        for (int i = 0; i < k_; ++i) {
            v = ext.add(v, ext.mul(ext.from_int(c[i]), rp));
            rp = ext.mul(rp, root);
        }
        map[a] = v;
    }
    return map;
}

std::shared_ptr<const Field> Field::get(int p, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto mt = modulus_table().find(key);
    if (mt == modulus_table().end()) {
        // still validate p, k so the error message is precise
        if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
        long long q = 1;
        for (int i = 0; i < k; ++i) q *= p;
        throw Error("no built-in modulus for GF(" + std::to_string(q) +
                    (q > 169 ? "): order exceeds the supported bound 169" : "): unsupported (p, k)"));
    }
    auto f = std::shared_ptr<const Field>(new Field(p, k, mt->second));
    cache[key] = f;
    return f;
}

std::shared_ptr<const Field> Field::for_order(int q) {
    if (q < 2) throw Error("field order must be at least 2");
    int p = 2;
    while (q % p != 0) {
        ++p;
        if (p > q) throw Error("field order must be a prime power");
    }
    int k = 0, rest = q;
    while (rest % p == 0) { rest /= p; ++k; }
    if (rest != 1) throw Error("field order " + std::to_string(q) + " is not a prime power");
    return get(p, k);
}

std::shared_ptr<const Field> Field::with_modulus(int p, int k, const std::vector<int>& modulus) {
    return std::shared_ptr<const Field>(new Field(p, k, modulus));
}

} // namespace gq
