#include "circinv/asymptotics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "circinv/coefficients.hpp"

namespace circinv {

using std::numbers::pi;

double gamma_fn(double x) {
    if (x > 0.0) return std::tgamma(x);
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    return pi / (std::sin(pi * x) * std::tgamma(1.0 - x));
}

AsymptoticConstants constants(const GegenbauerSymbol& sym) {
    AsymptoticConstants c;
    OuterFactor outer = outer_factorize(sym.regular);
    PointData pd = point_data(sym, outer);
    const double a = sym.alpha, th = sym.theta0;
    c.phi0 = pd.phi0;
    c.phi0_prime = pd.phi0_prime;
    c.phi_alpha = wrap_angle(a * (2.0 * th - pi));
    c.K = std::pow(2.0, 1.0 - a) * std::pow(std::sin(th), -a) / std::sqrt(pd.c1_at_chi0);
    c.omega = wrap_angle(a * th + pd.phi0 - pi * a / 2.0);
    c.omega_prime = wrap_angle(c.phi_alpha + pd.phi0_prime);
    c.err_exponent = a < 0.0 ? a - 0.5 : a;
    c.norm0 = outer.value_at_zero();
    return c;
}

double predict_first_column(const GegenbauerSymbol& sym, int k, int N) {
    if (k <= 0 || k >= N) throw DomainError("predict_first_column: 0 < k < N");
    const auto c = constants(sym);
    const double a = sym.alpha;
    return (1.0 / c.norm0) * c.K / gamma_fn(a) * std::cos(k * sym.theta0 + c.omega) *
           std::pow(double(k), a - 1.0) * std::pow(1.0 - double(k) / N, a);
}

double predict_first_column_via_baseline(const GegenbauerSymbol& sym, int k, int N,
                                         FirstColumnBaseline baseline) {
    if (k <= 0 || k >= N) throw DomainError("predict_first_column_via_baseline: 0 < k < N");
    const auto c = constants(sym);
    const double a = sym.alpha;
    const double mod = (1.0 / c.norm0) * c.K * std::cos(k * sym.theta0 + c.omega);
    if (baseline == FirstColumnBaseline::formula) {
        const double x = double(k) / N;
        return mod * std::pow(double(N), a - 1.0) / gamma_fn(a) * std::pow(x, a - 1.0) *
               std::pow(1.0 - x, a);
    }
    // exact one-zero column of T_N(|chi - 1|^{2a})
    FourierTable tab;
    tab.n_max = N;
    auto w = one_zero_coeffs(a, N);
    tab.coeffs.assign(w.begin(), w.end());
    ToeplitzSystem sys(tab, N);
    auto col = first_column_inverse(sys);
    return mod * col[k].real();
}

double predict_gegenbauer_coeff(const GegenbauerSymbol& sym, int j, int N, double normalization) {
    if (j <= 0 || j >= N) throw DomainError("predict_gegenbauer_coeff: 0 < j < N");
    // delta_j of Phi_N equals conj((T^-1)_{N-j+1,1}) / (T^-1)_{11}; the
    // printed exponents of the direct statement are inconsistent with the
    // first-column law under k = N - j, so the prediction is the reversal.
    return predict_first_column(sym, N - j, N) / normalization;
}

cplx predict_small_k(const GegenbauerSymbol& sym, int k, int N) {
    if (k < 0 || k > N) throw DomainError("predict_small_k: 0 <= k <= N");
    if (sym.regular.is_one()) return beta_theta0(sym.alpha, sym.theta0, k);
    OuterFactor outer = outer_factorize(sym.regular);
    auto b = beta_full_seq(sym, outer, k + 1);
    return b[0] * b[k];  // beta0 * beta_k, unnormalized
}

double predict_half(const GegenbauerSymbol& sym, int k, int N) {
    if (k <= 0 || k > N) throw DomainError("predict_half: 0 < k <= N");
    GegenbauerSymbol half(0.5, sym.theta0, sym.regular);
    const auto c = constants(half);
    const double v = 1.0 / double(k) - 1.0 / double(N);
    return (1.0 / c.norm0) * c.K * std::cos(k * sym.theta0 + c.omega) * std::sqrt(std::max(0.0, v));
}

double kernel_g(double alpha, double x, double y) {
    if (!(alpha > 0.0) || !(alpha <= 0.5)) throw DomainError("kernel_g: alpha in (0, 1/2]");
    if (!(x > 0.0) || !(y > 0.0) || !(x < 1.0) || !(y < 1.0))
        throw DomainError("kernel_g: x, y in (0, 1)");
    if (std::abs(x - y) < 1e-6)
        throw DiagonalSingularity("kernel_g: integral diverges at x = y for alpha <= 1/2");
    const double m = std::max(x, y), mn = std::min(x, y);
    // t = m + s^{1/a}: (t - m)^{a-1} dt = (1/a) ds, integrand becomes smooth
    const double smax = std::pow(1.0 - m, alpha);
    auto f = [&](double s) {
        const double t = m + std::pow(s, 1.0 / alpha);
        return std::pow(t - mn, alpha - 1.0) * std::pow(t, -2.0 * alpha) / alpha;
    };
    double err = 0.0;
    const double I = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, 0.0, smax, 12, 1e-10, &err);
    if (!(std::abs(I) >= 0.0) || (std::abs(I) > 0.0 && err > 1e-6 * std::abs(I)))
        throw QuadratureFailure("kernel_g: adaptive quadrature did not reach tolerance");
    const double g = gamma_fn(alpha);
    return std::pow(x, alpha) * std::pow(y, alpha) / (g * g) * I;
}

double predict_inverse_entry(const GegenbauerSymbol& sym, int k, int l, int N,
                             EntryBaseline baseline) {
    const double a = sym.alpha;
    if (!(a > 0.0) || !(a <= 0.5)) throw DomainError("predict_inverse_entry: alpha in (0, 1/2]");
    if (k == l) throw DiagonalSingularity("predict_inverse_entry: k = l");
    if (k <= 0 || l <= 0 || k >= N || l >= N)
        throw DomainError("predict_inverse_entry: 0 < k != l < N");
    const auto c = constants(sym);
    const double mod = c.K * c.K * std::cos(sym.theta0 * (k - l));
    if (baseline == EntryBaseline::kernel)
        return std::pow(double(N), 2.0 * a - 1.0) * mod * kernel_g(a, double(k) / N, double(l) / N);
    FourierTable tab;
    tab.n_max = N;
    auto w = one_zero_coeffs(a, N);
    tab.coeffs.assign(w.begin(), w.end());
    ToeplitzSystem one_zero(tab, N);
    PredictorPolynomial p = predictor(one_zero);
    return mod * gs_entry(p, k, l).real();
}

double baseline_toepmoinsdeux(double alpha, double x, double y, int N) {
    if (!(alpha > 0.0) || !(alpha < 0.5)) throw DomainError("baseline_toepmoinsdeux: alpha in (0, 1/2)");
    return std::pow(double(N), 2.0 * alpha - 1.0) * kernel_g(alpha, x, y);
}

FourierTable two_zero_general_fourier(double alpha, double theta1, double theta2,
                                      const RationalRegularPart& reg, int n_max) {
    // coefficients of (2-2cos(t-th1))^a (2-2cos(t-th2))^a c1 by direct
    // convolution of the two shifted one-zero weights (no centering)
    const int T = std::max(16384, 8 * n_max);
    std::vector<double> w = one_zero_coeffs(alpha, T + n_max + 8);
    const int len = 2 * T + 1;
    std::vector<cplx> a1(len), a2(len);
    for (int i = 0; i < len; ++i) {
        const int u = i - T;
        a1[i] = w[std::abs(u)] * std::polar(1.0, -u * theta1);
        a2[i] = w[std::abs(u)] * std::polar(1.0, -u * theta2);
    }
    auto conv = fft_convolve(a1, a2);
    FourierTable tab;
    tab.n_max = n_max;
    tab.method = FourierMethod::analytic;
    if (reg.is_one()) {
        tab.coeffs.assign(n_max + 1, 0.0);
        for (int s = 0; s <= n_max; ++s) tab.coeffs[s] = conv[s + 2 * T];
        return tab;
    }
    OuterFactor outer = outer_factorize(reg);
    const auto& t = outer.taylor;
    int eff = 1;
    for (int i = 0; i < static_cast<int>(t.size()); ++i)
        if (std::abs(t[i]) > 1e-16) eff = i + 1;
    tab.coeffs.assign(n_max + 1, 0.0);
    for (int s = 0; s <= n_max; ++s) {
        cplx acc = 0.0;
        for (int m = -(eff - 1); m <= eff - 1; ++m) {
            double c1m = 0.0;
            for (int p = std::max(0, m); p < eff && p - m < eff; ++p) c1m += t[p] * t[p - m];
            acc += c1m * conv[s - m + 2 * T];
        }
        tab.coeffs[s] = acc;
    }
    return tab;
}

JacobiConjugation jacobi_conjugation(double alpha, double theta1, double theta2,
                                     const RationalRegularPart& reg, int N) {
    if (theta1 == theta2) throw DegenerateZeros("jacobi_conjugation: theta1 = theta2");
    const double half = std::abs(theta1 - theta2) / 2.0;
    if (!(half > 0.0) || !(half < pi))
        throw DomainError("jacobi_conjugation: |theta1 - theta2|/2 in (0, pi)");
    if (!reg.is_one())
        throw DomainError(
            "jacobi_conjugation: the centered symbol needs the rotated regular part, which "
            "leaves the real-coefficient rational class; only c1 == 1 is supported");
    JacobiConjugation out;
    out.centered = GegenbauerSymbol(alpha, half, reg);
    out.mid = (theta1 + theta2) / 2.0;
    auto sys = build_system(out.centered, N);
    DenseOracle oracle(sys);
    out.conjugated_inverse.assign(N + 1, std::vector<cplx>(N + 1));
    // shifted symbol f(theta) = f_c(theta - mid): T = D T_c D^{-1} with
    // D_jj = e^{i j mid}, so T^{-1} = D T_c^{-1} D^{-1}
    for (int l = 0; l <= N; ++l) {
        auto col = oracle.solve_unit(l);
        for (int k = 0; k <= N; ++k)
            out.conjugated_inverse[k][l] =
                col[k] * std::polar(1.0, k * out.mid) * std::polar(1.0, -l * out.mid);
    }
    return out;
}

cplx predict_jacobi_coeff(double alpha, double theta1, double theta2,
                          const RationalRegularPart& reg, int j, int N, double normalization) {
    if (theta1 == theta2) throw DegenerateZeros("predict_jacobi_coeff: theta1 = theta2");
    if (!reg.is_one())
        throw DomainError("predict_jacobi_coeff: only c1 == 1 is supported (see jacobi_conjugation)");
    const double half = std::abs(theta1 - theta2) / 2.0;
    GegenbauerSymbol centered(alpha, half, reg);
    const double base = predict_gegenbauer_coeff(centered, j, N, normalization);
    const cplx mu = std::polar(1.0, (theta1 + theta2) / 2.0);
    return std::pow(std::conj(mu), double(N - j)) * base;
}

EnvelopeFit fit_envelope(const std::vector<double>& y, int k0, int len, double theta0) {
    // least squares on y_k = a cos(k th0) + b sin(k th0)
    double caa = 0.0, cab = 0.0, cbb = 0.0, ra = 0.0, rb = 0.0;
    for (int k = k0; k < k0 + len; ++k) {
        const double c = std::cos(k * theta0), s = std::sin(k * theta0);
        caa += c * c;
        cab += c * s;
        cbb += s * s;
        ra += c * y[k];
        rb += s * y[k];
    }
    const double det = caa * cbb - cab * cab;
    if (std::abs(det) < 1e-12) throw NumericError("fit_envelope: degenerate window");
    const double a = (cbb * ra - cab * rb) / det;
    const double b = (caa * rb - cab * ra) / det;
    EnvelopeFit f;
    f.amplitude = std::hypot(a, b);
    f.phase = std::atan2(-b, a);
    return f;
}

int envelope_window(double theta0) {
    return static_cast<int>(std::ceil(2.0 * pi / theta0)) * 4;
}

double envelope_rel_error(const std::vector<double>& exact, const std::vector<double>& predicted,
                          int k_c, double theta0) {
    const int w = envelope_window(theta0);
    int k0 = std::max(0, k_c - w / 2);
    if (k0 + w > static_cast<int>(exact.size()))
        k0 = static_cast<int>(exact.size()) - w;
    if (k0 < 0) throw DomainError("envelope_rel_error: sequence shorter than the window");
    const auto fe = fit_envelope(exact, k0, w, theta0);
    const auto fp = fit_envelope(predicted, k0, w, theta0);
    if (fe.amplitude == 0.0) throw NumericError("envelope_rel_error: zero exact amplitude");
    return std::abs(fe.amplitude - fp.amplitude) / fe.amplitude;
}

double oscillation_peak_frequency(const std::vector<double>& seq, double alpha) {
    // flatten the k^{a-1} envelope, then locate the dominant FFT bin
    const int n = static_cast<int>(seq.size());
    std::size_t G = next_pow2(2 * n);
    std::vector<cplx> x(G, 0.0);
    for (int k = 1; k < n; ++k) x[k] = seq[k] * std::pow(double(k), 1.0 - alpha);
    fft_forward(x);
    int best = 1;
    double best_mag = 0.0;
    for (std::size_t b = 1; b + 1 < G / 2; ++b) {
        const double m = std::abs(x[b]);
        if (m > best_mag) {
            best_mag = m;
            best = static_cast<int>(b);
        }
    }
    return 2.0 * pi * best / double(G);
}

}  // namespace circinv
