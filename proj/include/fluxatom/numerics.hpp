#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "fluxatom/errors.hpp"

namespace fluxatom {

using cx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Two-level operator basis: index 0 = upper level, index 1 = lower level.
Mat2 pauli_z();
Mat2 pauli_plus();
Mat2 pauli_minus();
Mat2 proj_up();
Mat2 proj_down();

bool all_finite(const CVec& v);
bool all_finite(const CMat& m);
void require_finite(const CVec& v, const char* what);
void require_finite(const CMat& m, const char* what);

// Half the trace norm of the difference of two Hermitian 2x2 matrices.
double trace_distance(const Mat2& a, const Mat2& b);

// Partial-pivot solve of a 3x3 complex system.  Rejects |det A| <= 1e-14 ||A||^3
// (Frobenius) and post-checks the residual against 1e-10 (||A|| ||x|| + ||b||).
Vec3 solve_linear3(const Mat3& A, const Vec3& b);

struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;    // ascending in [-1, 1]
  std::vector<double> weights;  // positive, sum to 2
};

// Gauss-Legendre rule on [-1, 1]: exact through polynomial degree 2*order - 1.
QuadratureRule gauss_legendre(int order);

double legendre_p(int l, double x);

// Deterministic 64-bit generator; the stream is a pure function of the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform01();  // [0, 1)
  double normal();     // standard normal, Box-Muller with cached spare

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// One finalizer round of the generator, for deriving independent sub-seeds.
std::uint64_t splitmix_hash(std::uint64_t x);

// Haar-distributed unitary: complex Gaussian matrix, QR, diagonal phase fix.
CMat haar_unitary(int n, std::uint64_t seed);

struct Rk4Sample {
  double t = 0.0;
  CVec y;
};

// Classical fixed-step RK4.  Samples every step including t = 0 and t = t_end;
// the final step is shortened to land on t_end exactly.
std::vector<Rk4Sample> rk4_evolve(const std::function<CVec(double, const CVec&)>& deriv,
                                  const CVec& y0, double t_end, double h);

}  // namespace fluxatom
