#ifndef ZETALAB_TAYLOR_SERIES_HPP
#define ZETALAB_TAYLOR_SERIES_HPP

// Truncated Taylor (jet) arithmetic.  A TaylorSeries<N> holds the coefficients
// of a polynomial of degree <= N in a local variable x; products are truncated
// at degree N.  Composing elementary functions through this type yields exact
// high-order derivatives of smooth expressions without symbolic algebra:
// f^{(k)}(p) = k! * coeff_k of f(p + x).

#include <array>
#include <cmath>
#include <cstddef>

namespace zetalab {

template <int N>
struct TaylorSeries {
    std::array<double, N + 1> c{};

    static TaylorSeries constant(double a) {
        TaylorSeries s;
        s.c[0] = a;
        return s;
    }
    // a + b*x
    static TaylorSeries linear(double a, double b) {
        TaylorSeries s;
        s.c[0] = a;
        if constexpr (N >= 1) s.c[1] = b;
        return s;
    }

    double operator[](int k) const { return c[k]; }
    double& operator[](int k) { return c[k]; }

    double derivative(int k) const {
        double f = 1.0;
        for (int j = 2; j <= k; ++j) f *= j;
        return c[k] * f;
    }

    TaylorSeries operator+(const TaylorSeries& o) const {
        TaylorSeries r;
        for (int k = 0; k <= N; ++k) r.c[k] = c[k] + o.c[k];
        return r;
    }
    TaylorSeries operator-(const TaylorSeries& o) const {
        TaylorSeries r;
        for (int k = 0; k <= N; ++k) r.c[k] = c[k] - o.c[k];
        return r;
    }
    TaylorSeries operator*(const TaylorSeries& o) const {
        TaylorSeries r;
        for (int i = 0; i <= N; ++i) {
            if (c[i] == 0.0) continue;
            for (int j = 0; i + j <= N; ++j) r.c[i + j] += c[i] * o.c[j];
        }
        return r;
    }
    TaylorSeries operator*(double a) const {
        TaylorSeries r;
        for (int k = 0; k <= N; ++k) r.c[k] = c[k] * a;
        return r;
    }

    // 1/this; requires a nonzero constant term.
    TaylorSeries reciprocal() const {
        TaylorSeries r;
        r.c[0] = 1.0 / c[0];
        for (int k = 1; k <= N; ++k) {
            double acc = 0.0;
            for (int j = 1; j <= k; ++j) acc += c[j] * r.c[k - j];
            r.c[k] = -acc / c[0];
        }
        return r;
    }

    // Synthetic division by (x - root); the caller asserts that `root` is a
    // zero of the polynomial, the (tiny) remainder is dropped.
    TaylorSeries deflate(double root) const {
        TaylorSeries r;
        double carry = c[N];
        for (int k = N - 1; k >= 0; --k) {
            r.c[k] = carry;
            carry = c[k] + root * carry;
        }
        return r;
    }
};

// cos and sin of a series with arbitrary constant term: split off the constant
// phase and expand cos/sin of the remainder by their power series.
template <int N>
void sincos_series(const TaylorSeries<N>& q, TaylorSeries<N>& sin_out, TaylorSeries<N>& cos_out) {
    TaylorSeries<N> r = q;
    const double q0 = r.c[0];
    r.c[0] = 0.0;

    TaylorSeries<N> cos_r = TaylorSeries<N>::constant(1.0);
    TaylorSeries<N> sin_r; // zero
    TaylorSeries<N> pw = TaylorSeries<N>::constant(1.0);
    double fact = 1.0;
    for (int k = 1; k <= N; ++k) {
        pw = pw * r;
        fact *= k;
        const double coef = 1.0 / fact;
        switch (k & 3) {
            case 0: cos_r = cos_r + pw * coef; break;
            case 1: sin_r = sin_r + pw * coef; break;
            case 2: cos_r = cos_r - pw * coef; break;
            case 3: sin_r = sin_r - pw * coef; break;
        }
    }
    const double c0 = std::cos(q0), s0 = std::sin(q0);
    cos_out = cos_r * c0 - sin_r * s0;
    sin_out = sin_r * c0 + cos_r * s0;
}

} // namespace zetalab

#endif
