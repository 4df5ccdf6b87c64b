#include "circinv/toeplitz.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <numbers>

namespace circinv {

using std::numbers::pi;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

ToeplitzSystem::ToeplitzSystem(FourierTable fourier, int order)
    : fourier_(std::move(fourier)), n_(order) {
    if (n_ < 0) throw DomainError("ToeplitzSystem: order must be >= 0");
    if (fourier_.n_max < n_) throw IndexOutOfRange("ToeplitzSystem: Fourier table too short");
    if (!(fourier_.coeffs[0].real() > 0.0) || std::abs(fourier_.coeffs[0].imag()) > 1e-10)
        throw NotPositive("ToeplitzSystem: hat h(0) must be real positive");
}

ToeplitzSystem build_system(const GegenbauerSymbol& sym, int N, FourierMethod method) {
    return ToeplitzSystem(symbol_fourier(sym, N, method), N);
}

std::vector<cplx> first_column_inverse(const ToeplitzSystem& sys) {
    const int N = sys.order();
    // Hermitian Levinson-Durbin on the monic forward predictor a (a_0 = 1):
    //   k_n = -(sum_j a_j t_{n-j}) / E_{n-1},  a <- a + k_n * conj(reverse a),
    //   E_n = E_{n-1} (1 - |k_n|^2).
    std::vector<cplx> a{1.0};
    double E = sys.fourier().at(0).real();
    if (!(E > 0.0)) throw NotPositiveDefinite("Levinson: t_0 <= 0");
    for (int n = 1; n <= N; ++n) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) acc += a[j] * sys.fourier().at(n - j);
        const cplx k = -acc / E;
        if (std::abs(k) >= 1.0 - 1e-12)
            throw NotPositiveDefinite("Levinson: reflection coefficient magnitude >= 1 - 1e-12");
        a.push_back(0.0);
        std::vector<cplx> next(a);
        for (int j = 0; j <= n; ++j) next[j] += k * std::conj(a[n - j]);
        a = std::move(next);
        E *= 1.0 - std::norm(k);
    }
    // T (a / E) = e1
    std::vector<cplx> v(N + 1);
    for (int j = 0; j <= N; ++j) v[j] = a[j] / E;
    return v;
}

struct DenseOracle::Impl {
    Mat T;
    Eigen::PartialPivLU<Mat> lu;
};

DenseOracle::DenseOracle(const ToeplitzSystem& sys, int order_cap) {
    n_ = sys.order();
    if (n_ + 1 > order_cap + 1)
        throw DomainError("DenseOracle: order above the configured cap");
    impl_ = std::make_shared<Impl>();
    impl_->T.resize(n_ + 1, n_ + 1);
    for (int i = 0; i <= n_; ++i)
        for (int j = 0; j <= n_; ++j) impl_->T(i, j) = sys.entry(i, j);
    Eigen::LLT<Mat> llt(impl_->T);
    pos_def_ = llt.info() == Eigen::Success;
    impl_->lu.compute(impl_->T);
    // plain singularity guard: reconstruct a unit solve
    Vec e = Vec::Zero(n_ + 1);
    e[0] = 1.0;
    Vec x = impl_->lu.solve(e);
    if (!x.allFinite()) throw SingularMatrix("DenseOracle: factorization produced non-finite solve");
}

std::vector<cplx> DenseOracle::solve(const std::vector<cplx>& rhs) const {
    Vec b = Eigen::Map<const Vec>(rhs.data(), rhs.size());
    Vec x = impl_->lu.solve(b);
    // one step of iterative refinement
    Vec r = b - impl_->T * x;
    x += impl_->lu.solve(r);
    std::vector<cplx> out(x.size());
    Eigen::Map<Vec>(out.data(), out.size()) = x;
    return out;
}

std::vector<cplx> DenseOracle::solve_unit(int k) const {
    std::vector<cplx> e(n_ + 1, 0.0);
    if (k < 0 || k > n_) throw IndexOutOfRange("DenseOracle::solve_unit");
    e[k] = 1.0;
    return solve(e);
}

cplx DenseOracle::inverse_entry(int k, int l) const {
    if (k < 0 || k > n_ || l < 0 || l > n_) throw IndexOutOfRange("DenseOracle::inverse_entry");
    return solve_unit(l)[k];
}

cplx dense_inverse_entry(const ToeplitzSystem& sys, int k, int l) {
    return DenseOracle(sys).inverse_entry(k, l);
}

cplx PredictorPolynomial::eval(cplx z) const {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx OrthogonalPolynomial::eval(cplx z) const {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

PredictorPolynomial predictor(const ToeplitzSystem& sys) {
    const auto v = first_column_inverse(sys);
    PredictorPolynomial p;
    p.inv11 = v[0].real();
    if (!(p.inv11 > 0.0)) throw NotPositiveDefinite("predictor: (T^-1)_{11} <= 0");
    const double root = std::sqrt(p.inv11);
    p.coeffs.resize(v.size());
    // P_N = Phi*_N sqrt((T^-1)_{11}), Phi*_N coefficients are v_k / v_0
    for (std::size_t k = 0; k < v.size(); ++k) p.coeffs[k] = v[k] / v[0] * root;
    return p;
}

OrthogonalPolynomial orthogonal_from_predictor(const PredictorPolynomial& p) {
    OrthogonalPolynomial phi;
    const int N = p.degree();
    phi.coeffs.resize(N + 1);
    const cplx d0 = p.coeffs[0];
    // Phi_N(z) = z^N conj(Phi*_N(1/conj z)): delta_j = conj(phi*_{N-j}), monic
    for (int j = 0; j <= N; ++j) phi.coeffs[j] = std::conj(p.coeffs[N - j] / d0);
    return phi;
}

OrthogonalPolynomial orthogonal(const ToeplitzSystem& sys) {
    return orthogonal_from_predictor(predictor(sys));
}

bool is_minimum_phase(const PredictorPolynomial& p) {
    const int N = p.degree();
    if (N <= 256) {
        // companion-matrix roots
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(N, N);
        const cplx lead = p.coeffs[N];
        if (std::abs(lead) == 0.0) return false;
        for (int i = 1; i < N; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < N; ++i) comp(i, N - 1) = -p.coeffs[i] / lead;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        for (int i = 0; i < N; ++i)
            if (std::abs(es.eigenvalues()[i]) <= 1.0 + 1e-10) return false;
        return true;
    }
    // argument-principle winding count of P on the unit circle
    const int G = 64 * N;
    double winding = 0.0;
    double prev = std::arg(p.eval(std::polar(1.0, 0.0)));
    for (int j = 1; j <= G; ++j) {
        const double th = 2.0 * pi * j / G;
        const double cur = std::arg(p.eval(std::polar(1.0, th)));
        winding += wrap_angle(cur - prev);
        prev = cur;
    }
    return std::lround(winding / (2.0 * pi)) == 0;
}

double verify_polpred(const PredictorPolynomial& pred, const ToeplitzSystem& sys) {
    const int N = sys.order();
    // Fourier coefficients of 1/|P_N|^2 by oversampled FFT; 1/|P|^2 is smooth
    // (minimum phase), so plain refinement converges fast.
    std::size_t G = next_pow2(std::max(32 * (N + 1), 4096));
    std::vector<cplx> prev;
    for (int level = 0; level < 6; ++level) {
        std::vector<cplx> x(G);
        for (std::size_t j = 0; j < G; ++j) {
            const double th = 2.0 * pi * (j + 0.5) / double(G);
            const double m2 = std::norm(pred.eval(std::polar(1.0, th)));
            if (!(m2 > 0.0)) throw QuadratureFailure("verify_polpred: |P|^2 vanished on the grid");
            x[j] = 1.0 / m2;
        }
        fft_forward(x);
        std::vector<cplx> co(N + 1);
        for (int s = 0; s <= N; ++s)
            co[s] = x[s] / double(G) * std::polar(1.0, -pi * s / double(G));
        if (!prev.empty()) {
            double delta = 0.0;
            for (int s = 0; s <= N; ++s) delta = std::max(delta, std::abs(co[s] - prev[s]));
            if (delta < 1e-12) {
                prev = std::move(co);
                break;
            }
        }
        prev = std::move(co);
        G *= 2;
    }
    double err = 0.0;
    for (int s = 0; s <= N; ++s) err = std::max(err, std::abs(prev[s] - sys.fourier().at(s)));
    return err;
}

cplx gs_entry(const PredictorPolynomial& pred, int k, int l) {
    const int N = pred.degree();
    if (k < 0 || l < 0 || k > N || l > N) throw IndexOutOfRange("gs_entry: indices in 0..N");
    if (k > l) return std::conj(gs_entry(pred, l, k));
    const auto& d = pred.coeffs;
    cplx acc = 0.0;
    for (int v = 0; v <= k; ++v) acc += d[v] * std::conj(d[l - k + v]);
    for (int u = 0; u < k; ++u) acc -= std::conj(d[N + 1 - k + u]) * d[N + 1 - l + u];
    return acc;
}

double perturbation_gap(const GegenbauerSymbol& sym_at_alpha, int N, FourierMethod method) {
    if (!(sym_at_alpha.alpha > 0.0) || !(sym_at_alpha.alpha < 0.5)) {
        if (sym_at_alpha.alpha == 0.5) return 0.0;
        throw DomainError("perturbation_gap: alpha must lie in (0, 1/2]");
    }
    GegenbauerSymbol half(0.5, sym_at_alpha.theta0, sym_at_alpha.regular);
    const auto fa = symbol_fourier(sym_at_alpha, N, method);
    const auto fh = symbol_fourier(half, N, method);
    // ||A||_F^2 = sum_{|s|<=N} (N+1-|s|) |Delta hat h(s)|^2
    double fro2 = 0.0;
    for (int s = -N; s <= N; ++s)
        fro2 += (N + 1.0 - std::abs(s)) * std::norm(fa.at(s) - fh.at(s));
    return std::sqrt(fro2) / ((0.5 - sym_at_alpha.alpha) * N);
}

}  // namespace circinv
