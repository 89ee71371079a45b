#include "conegeo/jet.hpp"

#include <algorithm>

namespace conegeo {

// Multi-index layout: degree-major, (i,j) with i+j <= 3.
const std::array<int8_t, Jet::kCoeffs> Jet::di_ = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
const std::array<int8_t, Jet::kCoeffs> Jet::dj_ = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};
const std::array<int8_t, Jet::kCoeffs> Jet::deg_ = {0, 1, 1, 2, 2, 2, 3, 3, 3, 3};
const std::array<double, 4> Jet::fact_ = {1.0, 1.0, 2.0, 6.0};

int Jet::idx(int i, int j) {
    static constexpr int table[4][4] = {
        {0, 2, 5, 9}, {1, 4, 8, -1}, {3, 7, -1, -1}, {6, -1, -1, -1}};
    return table[i][j];
}

Jet& Jet::operator+=(const Jet& o) {
    for (int t = 0; t < kCoeffs; ++t) c_[t] += o.c_[t];
    ord_ = std::min(ord_, o.ord_);
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (int t = 0; t < kCoeffs; ++t) c_[t] -= o.c_[t];
    ord_ = std::min(ord_, o.ord_);
    return *this;
}

Jet Jet::mul(const Jet& a, const Jet& b) {
    Jet r;
    r.c_.fill(0.0);
    r.ord_ = std::min(a.ord_, b.ord_);
    for (int p = 0; p < kCoeffs; ++p) {
        if (a.c_[p] == 0.0) continue;
        for (int q = 0; q < kCoeffs; ++q) {
            const int i = di_[p] + di_[q];
            const int j = dj_[p] + dj_[q];
            if (i + j > r.ord_) continue;
            r.c_[idx(i, j)] += a.c_[p] * b.c_[q];
        }
    }
    return r;
}

Jet Jet::derivative(int dir) const {
    Jet r;
    r.c_.fill(0.0);
    r.ord_ = std::max(0, ord_ - 1);
    for (int t = 0; t < kCoeffs; ++t) {
        const int i = di_[t], j = dj_[t];
        if (dir == 0) {
            if (i + 1 + j <= kMaxOrder) r.c_[t] = (i + 1) * c_[idx(i + 1, j)];
        } else {
            if (i + j + 1 <= kMaxOrder) r.c_[t] = (j + 1) * c_[idx(i, j + 1)];
        }
        if (i + j > r.ord_) r.c_[t] = 0.0;
    }
    return r;
}

Jet Jet::compose(const double* series, int n) const {
    // Horner evaluation of sum_k series[k] * h^k, h = *this - value().
    Jet h(*this);
    h -= c_[0];
    Jet r = Jet::constant(series[n - 1]);
    r.ord_ = ord_;
    for (int k = n - 2; k >= 0; --k) {
        r = mul(r, h);
        r += series[k];
    }
    r.ord_ = ord_;
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    const double b0 = b.value();
    if (b0 == 0.0) throw std::domain_error("Jet division by zero constant term");
    const double r = 1.0 / b0;
    const double series[4] = {r, -r * r, r * r * r, -r * r * r * r};
    return Jet::mul(a, b.compose(series, 4));
}

Jet sqrt(const Jet& w) {
    const double w0 = w.value();
    if (w0 <= 0.0) throw std::domain_error("Jet sqrt requires positive constant term");
    const double s = std::sqrt(w0);
    const double series[4] = {s, 0.5 / s, -1.0 / (8.0 * s * w0), 1.0 / (16.0 * s * w0 * w0)};
    return w.compose(series, 4);
}

Jet sin(const Jet& w) {
    const double s = std::sin(w.value()), c = std::cos(w.value());
    const double series[4] = {s, c, -s / 2.0, -c / 6.0};
    return w.compose(series, 4);
}

Jet cos(const Jet& w) {
    const double s = std::sin(w.value()), c = std::cos(w.value());
    const double series[4] = {c, -s, -c / 2.0, s / 6.0};
    return w.compose(series, 4);
}

Jet exp(const Jet& w) {
    const double e = std::exp(w.value());
    const double series[4] = {e, e, e / 2.0, e / 6.0};
    return w.compose(series, 4);
}

Jet log(const Jet& w) {
    const double w0 = w.value();
    if (w0 <= 0.0) throw std::domain_error("Jet log requires positive constant term");
    const double r = 1.0 / w0;
    const double series[4] = {std::log(w0), r, -r * r / 2.0, r * r * r / 3.0};
    return w.compose(series, 4);
}

Jet pow_int(const Jet& w, int k) {
    if (k == 0) return Jet::constant(1.0).truncated(w.order());
    if (k < 0) return Jet::constant(1.0) / pow_int(w, -k);
    Jet r = w;
    for (int i = 1; i < k; ++i) r = Jet::mul(r, w);
    return r;
}

namespace {
// Power series of sin(sqrt(q))/sqrt(q) = sum (-1)^m q^m/(2m+1)! and
// cos(sqrt(q)) = sum (-1)^m q^m/(2m)!; 24 terms keep the truncation error
// below 1e-18 for q up to ~14 (geodesic radii up to ~3.7).
constexpr int kSeriesTerms = 24;

struct SqrtSeries {
    std::array<double, kSeriesTerms> sinc{}, cosc{};
    SqrtSeries() {
        double f = 1.0;  // (2m+1)! running value
        double g = 1.0;  // (2m)!
        for (int m = 0; m < kSeriesTerms; ++m) {
            const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
            if (m > 0) {
                g *= (2.0 * m - 1.0) * (2.0 * m);
                f *= (2.0 * m) * (2.0 * m + 1.0);
            }
            sinc[m] = sgn / f;
            cosc[m] = sgn / g;
        }
    }
};
const SqrtSeries kSqrtSeries;

Jet horner(const Jet& q, const std::array<double, kSeriesTerms>& a) {
    Jet r = Jet::constant(a[kSeriesTerms - 1]).truncated(q.order());
    for (int k = kSeriesTerms - 2; k >= 0; --k) {
        r = Jet::mul(r, q);
        r += a[k];
    }
    return r;
}
}  // namespace

Jet sin_sqrt_over_sqrt(const Jet& q) { return horner(q, kSqrtSeries.sinc); }
Jet cos_sqrt(const Jet& q) { return horner(q, kSqrtSeries.cosc); }

Jet dot(const JetVec& a, const JetVec& b) {
    Jet r = Jet::constant(0.0);
    for (int i = 0; i < a.n; ++i) r += a.v[i] * b.v[i];
    return r;
}

JetVec cross(const JetVec& a, const JetVec& b) {
    JetVec r(3);
    r.v[0] = a.v[1] * b.v[2] - a.v[2] * b.v[1];
    r.v[1] = a.v[2] * b.v[0] - a.v[0] * b.v[2];
    r.v[2] = a.v[0] * b.v[1] - a.v[1] * b.v[0];
    return r;
}

Jet squared_norm(const JetVec& a) { return dot(a, a); }

}  // namespace conegeo
