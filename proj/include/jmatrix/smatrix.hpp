#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "jmatrix/greens.hpp"
#include "jmatrix/params.hpp"
#include "jmatrix/potmat.hpp"
#include "jmatrix/refsol.hpp"

namespace jmatrix {

struct KinematicCoefficients {
  std::vector<cplx> t;        // F_n^+ / F_n^-
  std::vector<cplx> r_plus;   // F_n^+ / F_{n-1}^+; index 0 unused
  std::vector<cplx> r_minus;  // conj(r_plus)
};

/// Ratios for n = 0..upto. Throws ZeroDivisorError carrying the offending n.
KinematicCoefficients kinematic_coefficients(const ExpansionCoefficients& coeffs, std::size_t upto);

/// <phi|H0 + U - E|phi> on the first N basis functions.
SymMatrix assemble_inner_operator(const BasisSpec& basis, const PhysicalParams& params, const PotentialModel& model,
                                  std::size_t n, std::size_t quad_order = 0);

struct ScatterOptions {
  std::size_t quad_order = 0;      // 0: the matrix size
  double tail_tolerance = 1e-8;    // relative norm of the last potential column
  Precision precision = Precision::standard;
};

/// Energy-independent part of the inner problem: H0 + U and the overlap, with the
/// trailing Green rows ready for any energy.
class InnerProblem {
 public:
  InnerProblem(const BasisSpec& basis, double nu, double lambda_scale, const PotentialModel& model, std::size_t n,
               const ScatterOptions& options = {});

  const BasisSpec& basis() const noexcept { return basis_; }
  double nu() const noexcept { return nu_; }
  double lambda() const noexcept { return lambda_; }
  std::size_t size() const noexcept { return n_; }
  const ScatterOptions& options() const noexcept { return options_; }
  const FiniteGreen& green() const noexcept { return *green_; }
  const SymMatrix& potential() const noexcept { return potential_; }
  /// Norm of the last potential column over the Frobenius norm of the block.
  double tail_ratio() const noexcept { return tail_ratio_; }
  bool tail_ok() const noexcept { return tail_ratio_ < options_.tail_tolerance; }

 private:
  BasisSpec basis_;
  double nu_;
  double lambda_;
  std::size_t n_;
  ScatterOptions options_;
  SymMatrix potential_;
  std::shared_ptr<FiniteGreen> green_;
  double tail_ratio_ = 0.0;
};

/// Everything the boundary formula consumes at one energy.
struct BoundaryInputs {
  double g_last_last = 0.0;  // G_{N-1,N-1}
  double g_last_prev = 0.0;  // G_{N-1,N-2}
  double g_prev_prev = 0.0;  // G_{N-2,N-2}
  double j_last_n = 0.0;     // J_{N-1,N}
  double j_prev_n = 0.0;     // J_{N-2,N}
  double j_last_n1 = 0.0;    // J_{N-1,N+1}
  cplx t_last;               // T_{N-1}
  cplx r_n_plus, r_n1_plus;  // R_N^+, R_{N+1}^+
};

/// Bracket 1 + (G_{N-1,N-1} J_{N-1,N} + G_{N-1,N-2} J_{N-2,N}) R_N + G_{N-1,N-1} J_{N-1,N+1} R_{N+1} R_N.
cplx boundary_bracket(const BoundaryInputs& in, Sign s);
/// T_{N-1} times the ratio of the two brackets.
cplx s_from_boundary(const BoundaryInputs& in);
/// Tridiagonal form 1 + G_{N-1,N-1} J_{N-1,N} R_N in both brackets.
cplx s_tridiagonal_from_boundary(const BoundaryInputs& in);

struct ScatteringResult {
  cplx s;
  double delta = 0.0;
  double unitarity_defect = 0.0;
  std::size_t n = 0;
  BasisSpec basis = BasisSpec::laguerre(0.0);
  /// |bracket^- - conj(bracket^+)| / |bracket^+|
  double conjugacy_defect = 0.0;
  /// Relative mismatch of q_{N-2}, q_{N-1} between the inner solution and F^+ - S F^-.
  std::array<double, 2> boundary_defect{0.0, 0.0};
  BoundaryInputs inputs;
  std::vector<std::string> warnings;
};

/// Builds the inner problem and evaluates S at params.k().
ScatteringResult s_matrix(const BasisSpec& basis, const PhysicalParams& params, const PotentialModel& model,
                          std::size_t n, const ScatterOptions& options = {});
/// Reuses a prepared inner problem; params must share its nu and lambda.
ScatteringResult s_matrix(const InnerProblem& inner, const PhysicalParams& params);

ScatteringResult s_matrix_tridiagonal_limit(const BasisSpec& basis, const PhysicalParams& params,
                                            const PotentialModel& model, std::size_t n,
                                            const ScatterOptions& options = {});
ScatteringResult s_matrix_tridiagonal_limit(const InnerProblem& inner, const PhysicalParams& params);

/// Expansion of the full solution: inner p_0..p_{N-1} from the finite system and
/// outer q_n = F_n^+ - S F_n^- for n = N-2 .. N-2+outer_count-1.
struct OuterSolution {
  std::vector<cplx> inner;
  std::vector<cplx> outer;
  std::size_t first_outer = 0;
  /// q_{N-2}, q_{N-1} from the two inner boundary rows.
  std::array<cplx, 2> boundary_q{};
};

OuterSolution outer_coefficients(const InnerProblem& inner, const PhysicalParams& params,
                                 const ScatteringResult& result, std::size_t outer_count = 8);

/// Residual of row `row` of the infinite system for the stitched solution
/// (p below N-2, q from N-2 on), relative to the largest term.
double stitched_row_residual(const InnerProblem& inner, const PhysicalParams& params, const OuterSolution& sol,
                             std::size_t row);

/// delta = arg(S) / 2 in (-pi/2, pi/2]. Throws UnitarityError if ||S| - 1| > tolerance.
double phase_shift(cplx s, double tolerance = 1e-6);
/// Nearest-branch continuation modulo pi; NaN entries are skipped and kept.
std::vector<double> unwrap_phases(const std::vector<double>& delta);

struct ConvergenceReport {
  ScatteringResult result;
  bool converged = false;
  std::vector<std::size_t> sizes;
  std::vector<double> deltas;
};

/// Doubles N from n_start until successive phase shifts differ by less than tol
/// (modulo pi) or n_max is reached.
ConvergenceReport converge_s_matrix(const BasisSpec& basis, const PhysicalParams& params, const PotentialModel& model,
                                    std::size_t n_start, std::size_t n_max, double tol,
                                    const ScatterOptions& options = {});

}  // namespace jmatrix
