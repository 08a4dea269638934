#pragma once

#include "ontocell/types.hpp"

namespace ontocell::kern {

// Dense kernels used by every module. The main entry points parallelise
// with OpenMP above a size cutoff; kern::ref holds the plain serial
// implementations kept as the test oracle (see tools/kernel_bench.cpp
// for the timing comparison). Both paths use the same per-entry
// summation order, so results agree bitwise.

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx s);

ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v);

double frobenius_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
cplx trace(const ComplexMatrix& a);

namespace ref {
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
}  // namespace ref

}  // namespace ontocell::kern
