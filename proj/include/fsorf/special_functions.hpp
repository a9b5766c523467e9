#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace fsorf {

using cplx = std::complex<double>;

/// Principal branch of log Γ(z). Throws DomainError at z = 0, -1, -2, ...
cplx log_gamma_complex(cplx z);

/// True when z is (numerically exactly) a non-positive integer.
bool is_gamma_pole(cplx z);

/// Regularized upper incomplete gamma Q(p, x) = Γ(p, x) / Γ(p).
double upper_incomplete_gamma_reg(double p, double x);

/// One Γ-argument (c, C) of a Mellin–Barnes kernel, i.e. Γ(c + C s) or Γ(1 - c - C s).
struct GammaTerm {
    double value;
    double coeff = 1.0;
};

/// Fox H-function parameters in the usual (m, n, p, q) layout.
///
/// The kernel is
///   Θ(s) = ∏_{j<m} Γ(b_j + B_j s) ∏_{j<n} Γ(1 - a_j - A_j s)
///          / ( ∏_{j≥m} Γ(1 - b_j - B_j s) ∏_{j≥n} Γ(a_j + A_j s) )
/// and H(z) = (2πi)^{-1} ∫_L Θ(s) z^{-s} ds along a vertical line L that leaves the
/// poles of the first product on its left and those of the second on its right.
struct FoxHParams {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<GammaTerm> upper;  // (a_j, A_j), j = 1..p
    std::vector<GammaTerm> lower;  // (b_j, B_j), j = 1..q

    std::size_t p() const noexcept { return upper.size(); }
    std::size_t q() const noexcept { return lower.size(); }

    /// Throws ValidationError on inconsistent orders or non-positive coefficients.
    void validate() const;
};

/// Meijer G-function parameters; the unit-coefficient special case of FoxHParams.
struct MeijerGParams {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> upper;
    std::vector<double> lower;

    FoxHParams as_fox_h() const;
};

/// Real interval of admissible abscissas for the contour. Bounds may be infinite.
struct Strip {
    double left;
    double right;

    bool bounded() const noexcept;
    bool empty() const noexcept { return !(left < right); }
};

/// Strip between the rightmost left pole and the leftmost right pole.
Strip admissible_strip(const FoxHParams& params);

/// Numerical plan for one vertical-line integral.
struct ContourPlan {
    std::optional<double> abscissa;  // default: midpoint of a bounded strip, saddle otherwise
    double tail_epsilon = 1e-16;     // truncate once |integrand| < tail_epsilon * max
    double rel_tol = 1e-10;          // successive step-halving estimates must agree to this
    double initial_step = 0.5;
    double max_extent = 4000.0;      // hard limit on the truncation half-length T
    int max_levels = 14;             // step halvings before giving up
    bool full_line = false;          // sum both half-lines and report the imaginary residual
};

struct ContourResult {
    double value = 0.0;
    double imag_residual = 0.0;  // |Im| of the full-line sum (full_line plans only)
    double abscissa = 0.0;
    double step = 0.0;
    double extent = 0.0;
    std::size_t nodes = 0;
};

/// log Θ(s) without the z^{-s} factor. Returns -inf real part where a reciprocal Γ vanishes.
cplx fox_h_log_kernel(const FoxHParams& params, cplx s);

ContourResult fox_h_contour(const FoxHParams& params, double z, const ContourPlan& plan = {});

double fox_h(const FoxHParams& params, double z, const ContourPlan& plan = {});

double meijer_g(const MeijerGParams& params, double z, const ContourPlan& plan = {});

/// Coupled Γ-argument (a; α, A) of the joint group: Γ(1 - a - α s - A t) and friends.
struct JointGammaTerm {
    double value;
    double coeff_first;
    double coeff_second;
};

/// Bivariate Fox H-function in the Mathai–Saxena–Haubold layout, written with x^{-s} y^{-t}:
///
///   H(x, y) = (2πi)^{-2} ∫∫ φ(s, t) Θ_1(s) Θ_2(t) x^{-s} y^{-t} ds dt,
///   φ(s, t) = ∏_{j<n0} Γ(1 - a_j - α_j s - A_j t)
///             / ( ∏_{j≥n0} Γ(a_j + α_j s + A_j t) ∏_j Γ(1 - b_j - β_j s - B_j t) ),
///
/// where Θ_1 and Θ_2 are the univariate kernels of `first` and `second`.
struct BivariateFoxHParams {
    std::size_t n0 = 0;
    std::vector<JointGammaTerm> joint_upper;
    std::vector<JointGammaTerm> joint_lower;
    FoxHParams first;
    FoxHParams second;

    void validate() const;
};

struct BivariateContourPlan {
    std::optional<double> abscissa_first;
    std::optional<double> abscissa_second;
    double tail_epsilon = 1e-16;
    double rel_tol = 1e-9;
    double initial_step = 0.4;
    double max_extent = 400.0;
    int max_levels = 6;
    std::size_t max_nodes = 40'000'000;
};

struct BivariateResult {
    double value = 0.0;
    double abscissa_first = 0.0;
    double abscissa_second = 0.0;
    double step = 0.0;
    std::size_t nodes = 0;
};

BivariateResult fox_h_bivariate_contour(const BivariateFoxHParams& params, double x, double y,
                                        const BivariateContourPlan& plan = {});

double fox_h_bivariate(const BivariateFoxHParams& params, double x, double y,
                       const BivariateContourPlan& plan = {});

}  // namespace fsorf
