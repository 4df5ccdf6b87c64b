// Exact finite-N machinery: Hermitian Toeplitz systems from symbol Fourier
// coefficients, Levinson recursion for the first inverse column, a dense
// pivoted-LU oracle, predictor/orthogonal polynomials, and inverse-entry
// reconstruction from the predictor coefficients.
#ifndef CIRCINV_TOEPLITZ_HPP
#define CIRCINV_TOEPLITZ_HPP

#include <memory>
#include <vector>

#include "circinv/symbol.hpp"

namespace circinv {

class ToeplitzSystem {
  public:
    // Entry (i+1, j+1) = hat h(j - i) with |j - i| <= N.
    ToeplitzSystem(FourierTable fourier, int order);

    int order() const { return n_; }
    cplx entry(int i, int j) const { return fourier_.at(j - i); }
    const FourierTable& fourier() const { return fourier_; }

  private:
    FourierTable fourier_;
    int n_;
};

ToeplitzSystem build_system(const GegenbauerSymbol& sym, int N,
                            FourierMethod method = FourierMethod::analytic);

// First column v of T^{-1} (T v = e1), Hermitian Levinson recursion.
// Reflection coefficient magnitude >= 1 - 1e-12 reports loss of positive
// definiteness.
std::vector<cplx> first_column_inverse(const ToeplitzSystem& sys);

// Dense oracle: pivoted LU with one step of iterative refinement.
class DenseOracle {
  public:
    explicit DenseOracle(const ToeplitzSystem& sys, int order_cap = 2048);
    cplx inverse_entry(int k, int l) const;
    std::vector<cplx> solve_unit(int k) const;  // column k of T^{-1}
    std::vector<cplx> solve(const std::vector<cplx>& rhs) const;
    bool positive_definite() const { return pos_def_; }

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    bool pos_def_ = false;
    int n_ = 0;
};

cplx dense_inverse_entry(const ToeplitzSystem& sys, int k, int l);

struct PredictorPolynomial {
    std::vector<cplx> coeffs;  // delta_0..delta_N of P_N = Phi*_N sqrt((T^-1)_{11})
    double inv11 = 1.0;        // (T^{-1})_{1,1} normalization record

    cplx eval(cplx z) const;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct OrthogonalPolynomial {
    std::vector<cplx> coeffs;  // Phi_N, monic of degree N
    cplx eval(cplx z) const;
};

PredictorPolynomial predictor(const ToeplitzSystem& sys);
// Phi*_N(z) = z^N conj(Phi_N(1/conj z)): conjugate reversal of the predictor.
OrthogonalPolynomial orthogonal(const ToeplitzSystem& sys);
OrthogonalPolynomial orthogonal_from_predictor(const PredictorPolynomial& p);

// Minimum-phase check: no roots in the closed unit disk. Root solving for
// N <= 256, argument-principle winding count above.
bool is_minimum_phase(const PredictorPolynomial& p);

// max_{|s| <= N} | Fourier(1/|P_N|^2)(s) - hat h(s) |, Fourier side by
// oversampled FFT quadrature.
double verify_polpred(const PredictorPolynomial& pred, const ToeplitzSystem& sys);

// Inverse entry (k+1, l+1) reconstructed from the predictor coefficients
// (first-column data):
//   E * (T^{-1})_{k+1,l+1} = sum_{v=0}^{k} a_v conj(a_{l-k+v})
//                          - sum_{u=0}^{k-1} conj(a_{N+1-k+u}) a_{N+1-l+u},
// for k <= l, with a = E^{1/2} * delta the monic predictor and E = 1/inv11.
// In delta form the prefactor is 1. Validated against the dense oracle; the
// correcting sum uses N+1 shifted indices.
cplx gs_entry(const PredictorPolynomial& pred, int k, int l);

// Frobenius-norm ratio ||T_N(f_{1/2}) - T_N(f_alpha)||_F / ((1/2 - alpha) N).
double perturbation_gap(const GegenbauerSymbol& sym_at_alpha, int N,
                        FourierMethod method = FourierMethod::analytic);

}  // namespace circinv

#endif
