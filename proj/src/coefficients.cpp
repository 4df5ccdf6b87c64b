#include "circinv/coefficients.hpp"

#include <cmath>
#include <numbers>

namespace circinv {

using std::numbers::pi;

double beta_tilde(double alpha, int k) {
    if (k < 0) throw IndexOutOfRange("beta_tilde: k must be >= 0");
    double b = 1.0;
    for (int j = 1; j <= k; ++j) b *= (j - 1.0 + alpha) / j;
    return b;
}

std::vector<double> beta_tilde_seq(double alpha, int len) {
    std::vector<double> b(len);
    if (len == 0) return b;
    b[0] = 1.0;
    for (int k = 1; k < len; ++k) b[k] = b[k - 1] * (k - 1.0 + alpha) / k;
    return b;
}

std::vector<double> beta_theta0_seq(double alpha, double theta0, int len) {
    // coefficients of (1 - chi conj(chi0))^{-a} (1 - chi chi0)^{-a}
    const auto bt = beta_tilde_seq(alpha, len);
    std::vector<cplx> a1(len), a2(len);
    for (int k = 0; k < len; ++k) {
        const cplx ph = std::polar(1.0, k * theta0);
        a1[k] = bt[k] * ph;
        a2[k] = bt[k] * std::conj(ph);
    }
    auto conv = fft_convolve(a1, a2);
    std::vector<double> out(len);
    for (int k = 0; k < len; ++k) out[k] = conv[k].real();
    return out;
}

cplx beta_theta0(double alpha, double theta0, int k) {
    if (k < 0) throw IndexOutOfRange("beta_theta0: k must be >= 0");
    // exact finite convolution; fine for isolated queries
    cplx acc = 0.0;
    double bu = 1.0;
    for (int u = 0; u <= k; ++u) {
        if (u > 0) bu *= (u - 1.0 + alpha) / u;
        acc += bu * beta_tilde(alpha, k - u) * std::polar(1.0, (2.0 * u - k) * theta0);
    }
    return acc;
}

std::vector<double> beta_full_seq(const GegenbauerSymbol& sym, const OuterFactor& outer, int len) {
    auto base = beta_theta0_seq(sym.alpha, sym.theta0, len);
    if (outer.is_trivial()) return base;
    const auto& c = outer.inv_taylor;
    // the stored expansion must have decayed below threshold at its end
    double tail = 0.0;
    for (std::size_t i = c.size() > 8 ? c.size() - 8 : 0; i < c.size(); ++i)
        tail = std::max(tail, std::abs(c[i]));
    if (tail > 1e-10)
        throw TruncationTooShort("beta_full_seq: 1/c11 coefficient tail above 1e-10");
    std::vector<double> out(len, 0.0);
    const int cl = std::min<int>(len, static_cast<int>(c.size()));
    // correct reading of the printed convolution: sum_s beta_{s,theta0} c_{k-s}
    for (int k = 0; k < len; ++k) {
        double acc = 0.0;
        const int lo = std::max(0, k - cl + 1);
        for (int s = lo; s <= k; ++s) acc += base[s] * c[k - s];
        out[k] = acc;
    }
    return out;
}

cplx beta_theta0_c1(const GegenbauerSymbol& sym, int k) {
    if (k < 0) throw IndexOutOfRange("beta_theta0_c1: k must be >= 0");
    if (sym.regular.is_one()) return beta_theta0(sym.alpha, sym.theta0, k);
    OuterFactor outer = outer_factorize(sym.regular);
    auto seq = beta_full_seq(sym, outer, k + 1);
    return seq[k] / seq[0];  // normalization beta_0 = 1
}

double gamma_tilde(double alpha, int k) {
    const double d = k + alpha;
    if (std::abs(d) < 1e-14) throw PoleAtIndex("gamma_tilde: k + alpha = 0");
    return std::sin(pi * alpha) / pi / d;
}

double two_zero_ratio_coeff(double alpha, double theta0, int m) {
    const double d = 2.0 * alpha - m;
    if (std::abs(d) < 1e-12) {
        // removable limit (m = 2 alpha: the alpha = 0, m = 0 and alpha = 1/2,
        // m = 1 lattices): the integrand degenerates to the constant phases
        //   (1/2pi) [theta0 (1 + e^{-4 pi i a}) + e^{-2 pi i a} (2 pi - 2 theta0)]
        const cplx v = theta0 * (1.0 + std::polar(1.0, -4.0 * pi * alpha)) +
                       std::polar(1.0, -2.0 * pi * alpha) * (2.0 * pi - 2.0 * theta0);
        return v.real() / (2.0 * pi);
    }
    return (2.0 * std::sin(pi * alpha) / pi) * std::cos(d * theta0 - pi * alpha) / d;
}

std::vector<double> ratio_coeffs_full(const GegenbauerSymbol& sym, const OuterFactor& outer,
                                      int win) {
    std::vector<double> out(2 * win + 1);
    if (outer.is_trivial()) {
        for (int m = -win; m <= win; ++m)
            out[m + win] = two_zero_ratio_coeff(sym.alpha, sym.theta0, m);
        return out;
    }
    // window of the rational ratio c11/conj(c11); geometric decay
    int rw = 4096;
    auto full = outer.ratio_coeffs(rw);
    int eff = 1;
    for (int d = 0; d <= rw; ++d)
        if (std::abs(full[rw + d]) > 1e-16 || std::abs(full[rw - d]) > 1e-16) eff = d;
    if (eff == rw && std::max(std::abs(full.front()), std::abs(full.back())) > 1e-10)
        throw TruncationTooShort("ratio_coeffs_full: rational ratio window tail above 1e-10");
    for (int m = -win; m <= win; ++m) {
        double acc = 0.0;
        for (int d = -eff; d <= eff; ++d)
            acc += full[d + rw].real() * two_zero_ratio_coeff(sym.alpha, sym.theta0, m - d);
        out[m + win] = acc;
    }
    return out;
}

cplx gamma_full(const GegenbauerSymbol& sym, int k, int trunc) {
    // gamma index convention: gamma_full(k) = standard coefficient at -k
    if (sym.regular.is_one()) return two_zero_ratio_coeff(sym.alpha, sym.theta0, -k);
    OuterFactor outer = outer_factorize(sym.regular);
    const int rw = std::min(trunc, 4096);
    auto r3 = outer.ratio_coeffs(rw);
    if (std::max(std::abs(r3.front()), std::abs(r3.back())) > 1e-10)
        throw TruncationTooShort("gamma_full: rational ratio window tail above 1e-10 at trunc");
    cplx acc = 0.0;
    for (int d = -rw; d <= rw; ++d)
        acc += r3[d + rw] * two_zero_ratio_coeff(sym.alpha, sym.theta0, -k - d);
    return acc;
}

CoefficientSeries::CoefficientSeries(SeriesKind kind, GegenbauerSymbol sym)
    : kind_(kind), sym_(std::move(sym)) {
    if (kind_ == SeriesKind::beta_theta0_c1 || kind_ == SeriesKind::gamma_full ||
        kind_ == SeriesKind::c_inv_coeffs)
        outer_ = outer_factorize(sym_.regular);
}

void CoefficientSeries::extend(int len) {
    if (len <= size()) return;
    switch (kind_) {
        case SeriesKind::beta_tilde: {
            auto s = beta_tilde_seq(sym_.alpha, len);
            values_.assign(s.begin(), s.end());
            break;
        }
        case SeriesKind::beta_theta0: {
            auto s = beta_theta0_seq(sym_.alpha, sym_.theta0, len);
            values_.assign(s.begin(), s.end());
            break;
        }
        case SeriesKind::beta_theta0_c1: {
            auto s = beta_full_seq(sym_, outer_, len);
            const double b0 = s[0];
            values_.resize(len);
            for (int i = 0; i < len; ++i) values_[i] = s[i] / b0;
            break;
        }
        case SeriesKind::gamma_tilde: {
            values_.resize(len);
            for (int i = 0; i < len; ++i) values_[i] = gamma_tilde(sym_.alpha, i);
            break;
        }
        case SeriesKind::gamma_full: {
            values_.resize(len);
            for (int i = 0; i < len; ++i) values_[i] = gamma_full(sym_, i);
            break;
        }
        case SeriesKind::c_inv_coeffs: {
            values_.resize(len);
            for (int i = 0; i < len; ++i)
                values_[i] = i < static_cast<int>(outer_.inv_taylor.size()) ? outer_.inv_taylor[i] : 0.0;
            break;
        }
    }
}

cplx CoefficientSeries::at(int k) const {
    if (k < 0 || k >= size()) throw IndexOutOfRange("CoefficientSeries::at: extend first");
    return values_[k];
}

}  // namespace circinv
