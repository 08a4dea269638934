#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontocell {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Basis labels are metadata carried along with operators and states;
/// no numeric content depends on them.
enum class Basis { ontological, energy, position, momentum, product };

const char* basis_name(Basis b);

/// Exact half-integer, stored as twice its value. Used for ell = (N-1)/2
/// and the SU(2) row labels r, s in {-ell, ..., +ell}.
struct HalfInt {
    int twice = 0;

    HalfInt() = default;
    explicit HalfInt(int twice_value) : twice(twice_value) {}
    static HalfInt from_int(int v) { return HalfInt(2 * v); }

    double value() const { return 0.5 * static_cast<double>(twice); }
    bool is_integer() const { return twice % 2 == 0; }
    int dim() const { return twice + 1; }  // 2*ell + 1

    friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
};

std::string to_string(HalfInt h);
HalfInt parse_half_int(const std::string& text);  // "5", "53/2", "26.5"

/// Dense complex square matrix, row-major.
struct ComplexMatrix {
    int dim = 0;
    std::vector<cplx> a;
    Basis basis = Basis::ontological;

    // Structural flags are annotations set by constructors that know them;
    // they are never consulted for numerics.
    bool flag_unitary = false;
    bool flag_hermitian = false;
    bool flag_permutation = false;

    ComplexMatrix() = default;
    explicit ComplexMatrix(int n, Basis b = Basis::ontological)
        : dim(n), a(static_cast<size_t>(n) * n, cplx(0.0, 0.0)), basis(b) {
        if (n < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    }

    static ComplexMatrix identity(int n, Basis b = Basis::ontological);

    cplx& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
    const cplx& at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }
};

struct ComplexVector {
    int dim = 0;
    std::vector<cplx> amp;
    Basis basis = Basis::ontological;

    ComplexVector() = default;
    explicit ComplexVector(int n, Basis b = Basis::ontological)
        : dim(n), amp(static_cast<size_t>(n), cplx(0.0, 0.0)), basis(b) {
        if (n < 1) throw std::invalid_argument("ComplexVector: dim must be >= 1");
    }

    static ComplexVector basis_state(int n, int k, Basis b = Basis::ontological);

    cplx& operator[](int i) { return amp[static_cast<size_t>(i)]; }
    const cplx& operator[](int i) const { return amp[static_cast<size_t>(i)]; }
};

}  // namespace ontocell
