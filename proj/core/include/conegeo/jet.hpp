#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace conegeo {

/// Truncated bivariate Taylor value: a scalar together with its partial
/// derivatives with respect to up to two seed parameters, carried to total
/// degree <= 3. All arithmetic propagates derivatives exactly (forward-mode
/// dual arithmetic), so chart derivatives come out at machine precision.
///
/// Storage is Taylor-coefficient form, c[(i,j)] = d^{i+j}f / (i! j!), which
/// makes multiplication a plain truncated convolution. `order()` tracks how
/// many total degrees of the stored coefficients are trustworthy: products
/// and sums are valid to the minimum operand order, and the polynomial
/// derivative of an order-k jet is valid to order k-1.
class Jet {
public:
    static constexpr int kMaxOrder = 3;
    static constexpr int kCoeffs = 10;

    Jet() : c_{}, ord_(kMaxOrder) {}

    static Jet constant(double v) {
        Jet j;
        j.c_[0] = v;
        return j;
    }
    /// Seed variable in direction `dir` (0 or 1).
    static Jet variable(double v, int dir) {
        Jet j;
        j.c_[0] = v;
        j.c_[dir == 0 ? 1 : 2] = 1.0;
        return j;
    }

    int order() const { return ord_; }
    Jet truncated(int k) const {
        Jet j(*this);
        if (k < j.ord_) j.ord_ = k;
        for (int t = 0; t < kCoeffs; ++t)
            if (deg_[t] > j.ord_) j.c_[t] = 0.0;
        return j;
    }

    double value() const { return c_[0]; }
    /// First derivative d f / d u_dir.
    double d(int dir) const { return c_[dir == 0 ? 1 : 2]; }
    /// Second derivative d^2 f / (d u_a d u_b); requires order >= 2.
    double d2(int a, int b) const {
        const int i = (a == 0) + (b == 0);
        const int j = (a == 1) + (b == 1);
        return c_[idx(i, j)] * fact_[i] * fact_[j];
    }
    /// Coefficient access by multi-index (Taylor form).
    double coeff(int i, int j) const { return c_[idx(i, j)]; }

    /// Polynomial derivative with respect to seed direction `dir`;
    /// the result is valid one order lower.
    Jet derivative(int dir) const;

    Jet operator-() const {
        Jet j(*this);
        for (auto& v : j.c_) v = -v;
        return j;
    }
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator+=(double s) { c_[0] += s; return *this; }
    Jet& operator-=(double s) { c_[0] -= s; return *this; }
    Jet& operator*=(double s) { for (auto& v : c_) v *= s; return *this; }

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator+(Jet a, double s) { a += s; return a; }
    friend Jet operator+(double s, Jet a) { a += s; return a; }
    friend Jet operator-(Jet a, double s) { a -= s; return a; }
    friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
    friend Jet operator*(Jet a, double s) { a *= s; return a; }
    friend Jet operator*(double s, Jet a) { a *= s; return a; }
    friend Jet operator/(Jet a, double s) { a *= 1.0 / s; return a; }
    friend Jet operator*(const Jet& a, const Jet& b) { return mul(a, b); }
    friend Jet operator/(const Jet& a, const Jet& b);

    static Jet mul(const Jet& a, const Jet& b);

    /// Composition with an analytic univariate function given by its Taylor
    /// coefficients a[k] = phi^(k)(value())/k!, k = 0..order(). Used by all
    /// elementary functions below.
    Jet compose(const double* series, int n) const;

    bool finite() const {
        for (double v : c_) if (!std::isfinite(v)) return false;
        return true;
    }

private:
    static int idx(int i, int j);
    static const std::array<int8_t, kCoeffs> di_, dj_, deg_;
    static const std::array<double, 4> fact_;

    std::array<double, kCoeffs> c_;
    int ord_;
};

Jet sqrt(const Jet& w);
Jet sin(const Jet& w);
Jet cos(const Jet& w);
Jet exp(const Jet& w);
Jet log(const Jet& w);
Jet pow_int(const Jet& w, int k);

/// sin(sqrt(q))/sqrt(q) as an entire function of q; smooth through q = 0,
/// evaluated by a truncated power series (accurate for 0 <= q <~ 14).
Jet sin_sqrt_over_sqrt(const Jet& q);
/// cos(sqrt(q)) as an entire function of q.
Jet cos_sqrt(const Jet& q);

/// Fixed-capacity vector of jets for ambient coordinates (N <= 3).
struct JetVec {
    std::array<Jet, 3> v{};
    int n = 0;

    JetVec() = default;
    explicit JetVec(int size) : n(size) {}

    Jet& operator[](int i) { return v[i]; }
    const Jet& operator[](int i) const { return v[i]; }
    int size() const { return n; }

    JetVec operator+(const JetVec& o) const {
        JetVec r(n);
        for (int i = 0; i < n; ++i) r.v[i] = v[i] + o.v[i];
        return r;
    }
    JetVec operator-(const JetVec& o) const {
        JetVec r(n);
        for (int i = 0; i < n; ++i) r.v[i] = v[i] - o.v[i];
        return r;
    }
    JetVec operator*(const Jet& s) const {
        JetVec r(n);
        for (int i = 0; i < n; ++i) r.v[i] = v[i] * s;
        return r;
    }
    JetVec operator*(double s) const {
        JetVec r(n);
        for (int i = 0; i < n; ++i) r.v[i] = v[i] * s;
        return r;
    }
    JetVec derivative(int dir) const {
        JetVec r(n);
        for (int i = 0; i < n; ++i) r.v[i] = v[i].derivative(dir);
        return r;
    }
    JetVec truncated(int k) const {
        JetVec r(n);
        for (int i = 0; i < n; ++i) r.v[i] = v[i].truncated(k);
        return r;
    }
};

Jet dot(const JetVec& a, const JetVec& b);
JetVec cross(const JetVec& a, const JetVec& b);  // n == 3 only
Jet squared_norm(const JetVec& a);

}  // namespace conegeo
