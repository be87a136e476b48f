#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

#include "l2switch/matrix.hpp"

namespace l2switch {

// Integer polynomial, coefficients ascending by degree.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPolynomial constant(const mpz_class& v) { return IntPolynomial({v}); }
    // x - a
    static IntPolynomial linear_root(const mpz_class& a) { return IntPolynomial({-a, 1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero polynomial
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpz_class>& coefficients() const { return c_; }
    mpz_class coefficient(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : mpz_class(0);
    }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

    IntPolynomial operator+(const IntPolynomial& o) const {
        std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), mpz_class(0));
        for (size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
        return IntPolynomial(std::move(r));
    }
    IntPolynomial operator*(const IntPolynomial& o) const {
        if (is_zero() || o.is_zero()) return IntPolynomial();
        std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, mpz_class(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return IntPolynomial(std::move(r));
    }
    IntPolynomial operator*(const mpz_class& s) const {
        if (s == 0) return IntPolynomial();
        std::vector<mpz_class> r = c_;
        for (auto& x : r) x *= s;
        return IntPolynomial(std::move(r));
    }

    mpz_class eval(const mpz_class& x) const {
        mpz_class v(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const mpz_class& a = c_[k];
            if (a == 0) continue;
            if (!s.empty()) s += (a > 0) ? " + " : " - ";
            else if (a < 0) s += "-";
            mpz_class mag = abs(a);
            bool show_coeff = (mag != 1) || (k == 0);
            if (show_coeff) s += mag.get_str();
            if (k > 0) {
                if (show_coeff) s += "*";
                s += "x";
                if (k > 1) s += "^" + std::to_string(k);
            }
        }
        return s.empty() ? "0" : s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<mpz_class> c_; // ascending
};

// Fraction-free (Bareiss) determinant. Input is copied.
inline mpz_class det_bareiss(IntMatrix m) {
    if (!m.square()) throw dimension_error("determinant of non-square matrix");
    const int n = m.rows();
    mpz_class prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                mpz_class q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (r != 0) throw exactness_error("Bareiss division not exact");
                m(i, j) = q;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : mpz_class(-m(n - 1, n - 1));
}

// det(xI - a), exact and monic. Evaluates the determinant fraction-free at
// x = 0..n and interpolates through the falling-factorial basis, where all
// divided differences of an integer-coefficient polynomial at consecutive
// integers are integers.
inline IntPolynomial char_poly(const IntMatrix& a) {
    if (!a.square()) throw dimension_error("char_poly of non-square matrix");
    const int n = a.rows();
    std::vector<mpz_class> vals(n + 1);
    for (int x = 0; x <= n; ++x) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m(i, j) = -a(i, j);
                if (i == j) m(i, j) += x;
            }
        vals[x] = det_bareiss(std::move(m));
    }
    // forward differences: coefficient on C(x,k)*k! basis is diff^k vals[0] / k!
    IntPolynomial result;
    IntPolynomial falling = IntPolynomial::constant(1);
    mpz_class kfact(1);
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            kfact *= k;
            for (int i = 0; i <= n - k; ++i) vals[i] = vals[i + 1] - vals[i];
            falling = falling * IntPolynomial::linear_root(k - 1);
        }
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), vals[0].get_mpz_t(), kfact.get_mpz_t());
        if (r != 0) throw exactness_error("interpolation divided difference not integral");
        result = result + falling * q;
    }
    return result;
}

inline IntPolynomial char_poly(const SmallMatrix& a) { return char_poly(to_big(a)); }

} // namespace l2switch
