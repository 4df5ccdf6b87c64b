// Coefficient families of the inverse outer factor 1/g and of the unimodular
// ratio g/conj(g). These drive every asymptotic formula downstream.
//
// Index conventions. Internally everything uses the standard Fourier
// coefficient hat(h)(m) = (1/2pi) Int h(theta) e^{-im theta} dtheta. The ratio
// coefficients are exposed with the opposite index sign (gamma_full(k) is the
// standard coefficient at -k), which is the convention the asymptotic
// formulas for gamma are written in; gamma_tilde follows the same convention.
#ifndef CIRCINV_COEFFICIENTS_HPP
#define CIRCINV_COEFFICIENTS_HPP

#include <vector>

#include "circinv/symbol.hpp"

namespace circinv {

// Taylor coefficients of (1-z)^{-alpha}: b0 = 1, b_k = b_{k-1} (k-1+alpha)/k.
double beta_tilde(double alpha, int k);
std::vector<double> beta_tilde_seq(double alpha, int len);

// beta_{k,theta0} = sum_u btilde_u chi0^u btilde_{k-u} conj(chi0)^{k-u}:
// coefficients of 1/g_{alpha,theta0} (real for this symmetric symbol).
cplx beta_theta0(double alpha, double theta0, int k);
std::vector<double> beta_theta0_seq(double alpha, double theta0, int len);

// Coefficients of 1/g_{alpha,theta0,c1} (convolution with the Taylor
// coefficients of 1/c11), normalized so the k = 0 value is 1.
cplx beta_theta0_c1(const GegenbauerSymbol& sym, int k);
// Unnormalized variant; value at k = 0 is 1/c11(0).
std::vector<double> beta_full_seq(const GegenbauerSymbol& sym, const OuterFactor& outer, int len);

// gamma_tilde(alpha, k) = sin(pi alpha)/pi * 1/(k+alpha); defined for k < 0 too.
double gamma_tilde(double alpha, int k);

// Exact coefficient of order -m (standard convention) of the two-zero
// unimodular ratio g_{alpha,theta0}/conj(g_{alpha,theta0}):
//   standard hat(ratio)(m) = (2 sin(pi a)/pi) cos((2a - m) theta0 - pi a) / (2a - m).
// Derived from the piecewise-constant-phase form of the ratio; m = 2a never
// occurs for integer m with |a| < 1/2, and the a = 1/2, m = 1 case is the
// removable limit handled explicitly.
double two_zero_ratio_coeff(double alpha, double theta0, int m_standard);

// Fourier coefficient of the full unimodular ratio
//   (g_{a,theta0}/conj g_{a,theta0}) * (c11/conj c11)
// in the gamma index convention (gamma_full(k) = standard coefficient at -k).
// Computed by convolving the exact two-zero ratio coefficients with the
// geometrically decaying coefficients of c11/conj(c11); 'trunc' bounds the
// rational-part window and is checked against its tail.
cplx gamma_full(const GegenbauerSymbol& sym, int k, int trunc = 4096);

// Standard-convention coefficients of the full ratio on -win..win (index m+win).
std::vector<double> ratio_coeffs_full(const GegenbauerSymbol& sym, const OuterFactor& outer,
                                      int win);

enum class SeriesKind {
    beta_tilde,
    beta_theta0,
    beta_theta0_c1,
    gamma_tilde,
    gamma_full,
    c_inv_coeffs
};

// Append-only cache of one coefficient family. Callers extend to the needed
// length before sharing; reads are then safe concurrently.
class CoefficientSeries {
  public:
    CoefficientSeries(SeriesKind kind, GegenbauerSymbol sym);
    void extend(int len);
    cplx at(int k) const;
    int size() const { return static_cast<int>(values_.size()); }
    SeriesKind kind() const { return kind_; }

  private:
    SeriesKind kind_;
    GegenbauerSymbol sym_;
    OuterFactor outer_;
    std::vector<cplx> values_;
};

}  // namespace circinv

#endif
