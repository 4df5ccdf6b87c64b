#include "circinv/symbol.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace circinv {

using std::numbers::pi;

namespace {

constexpr double kRootCircleGap = 1e-8;

std::vector<double> trim_poly(std::vector<double> p) {
    while (p.size() > 1 && std::abs(p.back()) == 0.0) p.pop_back();
    return p;
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs) {
    auto p = trim_poly(coeffs);
    const int d = static_cast<int>(p.size()) - 1;
    if (d <= 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -p[i] / p[d];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = es.eigenvalues()[i];
    return roots;
}

std::complex<double> poly_eval(const std::vector<double>& p, std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

// Rebuild a real-coefficient monic polynomial from roots (conjugate pairs).
std::vector<double> poly_from_roots(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> acc{1.0};
    for (const auto& r : roots) {
        std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] += acc[i] * (-r);
            next[i + 1] += acc[i];
        }
        acc = std::move(next);
    }
    std::vector<double> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].real();
    return out;
}

// Taylor coefficients of num/den at 0, den[0] != 0.
std::vector<double> series_divide(const std::vector<double>& num, const std::vector<double>& den,
                                  int len) {
    std::vector<double> t(len, 0.0);
    for (int k = 0; k < len; ++k) {
        double v = k < static_cast<int>(num.size()) ? num[k] : 0.0;
        for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) v -= den[j] * t[k - j];
        t[k] = v / den[0];
    }
    return t;
}

}  // namespace

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    if (a > pi) a -= 2.0 * pi;
    return a;
}

RationalRegularPart::RationalRegularPart(std::vector<double> num, std::vector<double> den)
    : numerator(std::move(num)), denominator(std::move(den)) {
    validate();
}

bool RationalRegularPart::is_one() const {
    auto n = trim_poly(numerator), d = trim_poly(denominator);
    return n.size() == 1 && d.size() == 1 && n[0] == d[0];
}

double RationalRegularPart::eval(double theta) const {
    const std::complex<double> z = std::polar(1.0, theta);
    const double pn = std::norm(poly_eval(numerator, z));
    const double pd = std::norm(poly_eval(denominator, z));
    return pn / pd;
}

void RationalRegularPart::validate() const {
    if (trim_poly(denominator).empty() ||
        (trim_poly(denominator).size() == 1 && trim_poly(denominator)[0] == 0.0))
        throw NotPositive("regular part: denominator is the zero polynomial");
    if (trim_poly(numerator).size() == 1 && trim_poly(numerator)[0] == 0.0)
        throw NotPositive("regular part: numerator is the zero polynomial");
    for (const auto& poly : {numerator, denominator}) {
        for (const auto& r : poly_roots(poly)) {
            if (std::abs(std::abs(r) - 1.0) <= kRootCircleGap)
                throw RootOnCircle("regular part: root within 1e-8 of the unit circle");
        }
    }
    constexpr int kGrid = 4096;
    for (int i = 0; i < kGrid; ++i) {
        const double v = eval(2.0 * pi * (i + 0.5) / kGrid);
        if (!(v > 0.0)) throw NotPositive("regular part: c1 <= 0 on the sampling grid");
    }
}

GegenbauerSymbol::GegenbauerSymbol(double a, double t0, RationalRegularPart reg)
    : alpha(a), theta0(t0), regular(std::move(reg)) {
    if (!(alpha > -0.5) || !(alpha <= 0.5))
        throw DomainError("alpha must lie in (-1/2, 1/2]");
    if (!(theta0 > 0.0) || !(theta0 < pi))
        throw DomainError("theta0 must lie in (0, pi)");
}

GegenbauerSymbol GegenbauerSymbol::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("symbol JSON parse failure: ") + e.what());
    }
    if (!j.contains("alpha") || !j.contains("theta0"))
        throw ConfigError("symbol JSON needs 'alpha' and 'theta0'");
    std::vector<double> num = j.value("numerator", std::vector<double>{1.0});
    std::vector<double> den = j.value("denominator", std::vector<double>{1.0});
    try {
        return GegenbauerSymbol(j["alpha"].get<double>(), j["theta0"].get<double>(),
                                RationalRegularPart(std::move(num), std::move(den)));
    } catch (const NumericError& e) {
        throw ConfigError(std::string("symbol JSON invalid: ") + e.what());
    }
}

GegenbauerSymbol GegenbauerSymbol::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open symbol file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string GegenbauerSymbol::to_json_text() const {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["theta0"] = theta0;
    j["numerator"] = regular.numerator;
    j["denominator"] = regular.denominator;
    return j.dump();
}

double eval_symbol(const GegenbauerSymbol& sym, double theta) {
    const double d = std::abs(std::cos(theta) - std::cos(sym.theta0));
    if (d == 0.0) return sym.alpha > 0.0 ? 0.0 : (sym.alpha == 0.0 ? sym.regular.eval(theta)
                                                                   : std::numeric_limits<double>::infinity());
    return std::pow(2.0, 2.0 * sym.alpha) * std::pow(d, 2.0 * sym.alpha) * sym.regular.eval(theta);
}

std::complex<double> OuterFactor::eval(std::complex<double> z) const {
    return scale * poly_eval(num, z) / poly_eval(den, z);
}

bool OuterFactor::is_trivial() const {
    return num.size() == 1 && den.size() == 1 && std::abs(scale * num[0] / den[0] - 1.0) < 1e-15;
}

std::vector<cplx> OuterFactor::ratio_coeffs(int win) const {
    std::vector<cplx> out(2 * win + 1, 0.0);
    if (is_trivial()) {
        out[win] = 1.0;
        return out;
    }
    // c11/conj(c11): coefficient at m is sum_p taylor[p] * inv_taylor[p-m]
    // (conj(c11) on the circle has coefficients inv-reversed; all real).
    const int L = static_cast<int>(taylor.size());
    for (int m = -win; m <= win; ++m) {
        double acc = 0.0;
        for (int p = std::max(0, m); p < L && p - m < L; ++p) acc += taylor[p] * inv_taylor[p - m];
        out[m + win] = acc;
    }
    return out;
}

OuterFactor outer_factorize(const RationalRegularPart& reg, int taylor_len) {
    reg.validate();
    OuterFactor f;
    auto process = [](const std::vector<double>& poly) {
        auto p = trim_poly(poly);
        const double lead = p.back();
        std::vector<std::complex<double>> kept;
        double comp = std::abs(lead);
        for (const auto& r : poly_roots(p)) {
            if (std::abs(r) < 1.0) {
                if (std::abs(r) > 1e-14) {
                    kept.push_back(1.0 / std::conj(r));  // reflect inside root
                    comp *= std::abs(r);
                }
                // a root at the origin contributes modulus 1 on the circle
            } else {
                kept.push_back(r);
            }
        }
        return std::pair(poly_from_roots(kept), comp);
    };
    auto [num_out, num_comp] = process(reg.numerator);
    auto [den_out, den_comp] = process(reg.denominator);
    f.num = num_out;
    f.den = den_out;
    f.scale = num_comp / den_comp;
    // normalize c11(0) > 0 by a global sign
    if (f.eval(0.0).real() < 0.0)
        for (auto& c : f.num) c = -c;

    std::vector<double> snum(f.num);
    for (auto& c : snum) c *= f.scale;
    f.taylor = series_divide(snum, f.den, taylor_len);
    f.inv_taylor = series_divide(f.den, snum, taylor_len);

    // reconstruction check: |c11|^2 == c1 pointwise on the grid
    constexpr int kGrid = 4096;
    for (int i = 0; i < kGrid; ++i) {
        const double th = 2.0 * pi * (i + 0.5) / kGrid;
        const double want = reg.eval(th);
        const double got = std::norm(f.eval(std::polar(1.0, th)));
        if (std::abs(got - want) > 1e-9 * std::max(1.0, std::abs(want)))
            throw NotPositive("outer factorization failed the reconstruction check");
    }
    return f;
}

std::vector<double> one_zero_coeffs(double alpha, int n) {
    std::vector<double> w(n + 1);
    w[0] = std::tgamma(2.0 * alpha + 1.0) / std::pow(std::tgamma(1.0 + alpha), 2);
    for (int k = 0; k < n; ++k) w[k + 1] = w[k] * (k - alpha) / (k + 1.0 + alpha);
    return w;
}

static std::vector<cplx> two_zero_fourier(double alpha, double theta0, int n_max) {
    // hat h2z(s) = sum_u w_u w_{s-u} e^{-i(2u-s) theta0}, w = one-zero coefficients.
    // Partial sum over |u| <= T by FFT convolution, then Abel-transformed tail
    // completion (the tail oscillates with ratio z = e^{-2 i theta0}).
    const int T = std::max(16384, 8 * n_max);
    std::vector<double> w = one_zero_coeffs(alpha, T + n_max + 8);
    const int len = 2 * T + 1;
    std::vector<cplx> a1(len), a2(len);
    for (int i = 0; i < len; ++i) {
        const int u = i - T;
        const cplx ph = std::polar(1.0, -u * theta0);
        a1[i] = w[std::abs(u)] * ph;        // coefficients of (2-2cos(t-theta0))^a
        a2[i] = w[std::abs(u)] * std::conj(ph);
    }
    std::vector<cplx> conv = fft_convolve(a1, a2);  // index s+2T
    std::vector<cplx> out(n_max + 1);
    const cplx z = std::polar(1.0, -2.0 * theta0);
    const int r = 5;
    for (int s = 0; s <= n_max; ++s) {
        cplx val = conv[s + 2 * T];
        // the finite convolution covers u in [s-T, T]; the two tails are
        //   u >= T+1:      sum w_u w_{u-s} e^{i s th0} (e^{-2i th0})^u
        //   u <= s-T-1:    sum w_v w_{v+s} e^{i s th0} (e^{+2i th0})^v, v = -u >= T-s+1
        for (int side = 0; side < 2; ++side) {
            const int start = side == 0 ? T + 1 : T - s + 1;
            std::vector<double> fv(r + 1);
            for (int j = 0; j <= r; ++j) {
                const int u = start + j;
                fv[j] = side == 0 ? w[u] * w[u - s] : w[u] * w[u + s];
            }
            const cplx zz = side == 0 ? z : std::conj(z);
            const cplx zpow0 = std::pow(zz, double(start)) * std::polar(1.0, s * theta0);
            cplx tail = 0.0;
            cplx zp = zpow0;
            cplx denom = 1.0 - zz;
            std::vector<double> diff = fv;
            cplx dk = 1.0;
            for (int j = 0; j < r; ++j) {
                dk *= denom;
                tail += diff[0] * zp / dk;
                for (int q = 0; q + 1 < static_cast<int>(diff.size()); ++q)
                    diff[q] = diff[q + 1] - diff[q];
                diff.pop_back();
                zp *= zz;
            }
            val += tail;
        }
        out[s] = val;
    }
    return out;
}

static std::vector<double> c1_fourier_window(const OuterFactor& outer, int* half) {
    // Fourier coefficients of c1 = c11 conj(c11): hat c1(m) = sum_p t_p t_{p-m}.
    const auto& t = outer.taylor;
    int L = static_cast<int>(t.size());
    int eff = 1;
    for (int i = 0; i < L; ++i)
        if (std::abs(t[i]) > 1e-16) eff = i + 1;
    const int H = std::min(eff, 4096);
    std::vector<double> out(2 * H - 1, 0.0);
    for (int m = -(H - 1); m <= H - 1; ++m) {
        double acc = 0.0;
        for (int p = std::max(0, m); p < eff && p - m < eff; ++p) acc += t[p] * t[p - m];
        out[m + H - 1] = acc;
    }
    *half = H - 1;
    return out;
}

static FourierTable fourier_analytic(const GegenbauerSymbol& sym, int n_max) {
    FourierTable tab;
    tab.n_max = n_max;
    tab.method = FourierMethod::analytic;
    if (sym.regular.is_one()) {
        tab.coeffs = two_zero_fourier(sym.alpha, sym.theta0, n_max);
        return tab;
    }
    OuterFactor outer = outer_factorize(sym.regular);
    int half = 0;
    std::vector<double> c1co = c1_fourier_window(outer, &half);
    std::vector<cplx> base = two_zero_fourier(sym.alpha, sym.theta0, n_max + half);
    tab.coeffs.assign(n_max + 1, 0.0);
    for (int s = 0; s <= n_max; ++s) {
        cplx acc = 0.0;
        for (int m = -half; m <= half; ++m) {
            const int k = s - m;
            const cplx h2 = k >= 0 ? base[k] : std::conj(base[-k]);
            acc += c1co[m + half] * h2;
        }
        tab.coeffs[s] = acc;
    }
    return tab;
}

static FourierTable fourier_quadrature(const GegenbauerSymbol& sym, int n_max) {
    FourierTable tab;
    tab.n_max = n_max;
    tab.method = FourierMethod::quadrature;
    // midpoint-offset grids avoid sampling the zeros of the weight exactly;
    // Richardson acceleration at the known error exponents {1+2a, 2}.
    const double p1 = 1.0 + 2.0 * sym.alpha;
    std::size_t grid = next_pow2(std::max(16 * std::max(n_max, 1), 4096));
    const std::size_t grid_cap = std::size_t(1) << 23;
    std::vector<std::vector<cplx>> levels;  // raw coefficient vectors per grid level
    auto compute_level = [&](std::size_t G) {
        std::vector<cplx> x(G);
        for (std::size_t j = 0; j < G; ++j)
            x[j] = eval_symbol(sym, 2.0 * pi * (j + 0.5) / G);
        fft_forward(x);
        std::vector<cplx> co(n_max + 1);
        for (int s = 0; s <= n_max; ++s)
            co[s] = x[s] / double(G) * std::polar(1.0, -pi * s / double(G));
        return co;
    };
    auto accel = [&](const std::vector<std::vector<cplx>>& raw) {
        // Richardson steps at the midpoint-rule error orders {1+2a, 2, 3+2a}
        auto step = [&](const std::vector<std::vector<cplx>>& in, double order) {
            std::vector<std::vector<cplx>> out;
            const double w = std::pow(2.0, order);
            for (std::size_t i = 0; i + 1 < in.size(); ++i) {
                std::vector<cplx> v(n_max + 1);
                for (int s = 0; s <= n_max; ++s)
                    v[s] = (w * in[i + 1][s] - in[i][s]) / (w - 1.0);
                out.push_back(std::move(v));
            }
            return out;
        };
        auto a = step(raw, p1);
        if (a.size() >= 2) a = step(a, 2.0);
        if (a.size() >= 2) a = step(a, 3.0 + 2.0 * sym.alpha);
        return a;
    };
    while (true) {
        levels.push_back(compute_level(grid));
        if (levels.size() >= 3) {
            auto acc = accel(levels);
            if (acc.size() >= 2) {
                double delta = 0.0;
                const auto& a = acc[acc.size() - 2];
                const auto& b = acc.back();
                for (int s = 0; s <= n_max; ++s) delta = std::max(delta, std::abs(a[s] - b[s]));
                if (delta < 1e-10) {
                    tab.coeffs = acc.back();
                    return tab;
                }
                if (grid >= grid_cap) {
                    if (delta > 1e-7)
                        throw NoConvergence(
                            "quadrature refinement stalled (alpha too close to -1/2 for the grid)");
                    tab.coeffs = acc.back();
                    return tab;
                }
            }
        }
        if (grid >= grid_cap && levels.size() >= 4)
            throw NoConvergence("quadrature refinement stalled");
        grid = std::min(grid * 2, grid_cap);
    }
}

FourierTable symbol_fourier(const GegenbauerSymbol& sym, int n_max, FourierMethod method) {
    if (n_max < 0) throw DomainError("symbol_fourier: n_max must be >= 0");
    return method == FourierMethod::analytic ? fourier_analytic(sym, n_max)
                                             : fourier_quadrature(sym, n_max);
}

PointData point_data(const GegenbauerSymbol& sym, const OuterFactor& outer) {
    PointData pd;
    const std::complex<double> v = outer.eval(std::polar(1.0, sym.theta0));
    pd.c1_at_chi0 = std::norm(v);
    pd.phi0 = std::arg(v);
    pd.phi0_prime = wrap_angle(2.0 * pd.phi0);
    return pd;
}

}  // namespace circinv
