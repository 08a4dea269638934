#include "ontocell/types.hpp"

#include <cmath>
#include <cstdlib>

namespace ontocell {

const char* basis_name(Basis b) {
    switch (b) {
        case Basis::ontological: return "ontological";
        case Basis::energy: return "energy";
        case Basis::position: return "position";
        case Basis::momentum: return "momentum";
        case Basis::product: return "product";
    }
    return "?";
}

std::string to_string(HalfInt h) {
    if (h.is_integer()) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

HalfInt parse_half_int(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const long num = std::strtol(text.substr(0, slash).c_str(), nullptr, 10);
        const long den = std::strtol(text.substr(slash + 1).c_str(), nullptr, 10);
        if (den == 2) return HalfInt(static_cast<int>(num));
        if (den == 1) return HalfInt(static_cast<int>(2 * num));
        throw std::invalid_argument("half-integer must have denominator 1 or 2: " + text);
    }
    const double v = std::strtod(text.c_str(), nullptr);
    const double tw = 2.0 * v;
    if (std::abs(tw - std::round(tw)) > 1e-9)
        throw std::invalid_argument("not a half-integer: " + text);
    return HalfInt(static_cast<int>(std::llround(tw)));
}

ComplexMatrix ComplexMatrix::identity(int n, Basis b) {
    ComplexMatrix m(n, b);
    for (int i = 0; i < n; ++i) m.at(i, i) = cplx(1.0, 0.0);
    m.flag_unitary = m.flag_hermitian = m.flag_permutation = true;
    return m;
}

ComplexVector ComplexVector::basis_state(int n, int k, Basis b) {
    ComplexVector v(n, b);
    if (k < 0 || k >= n) throw std::invalid_argument("basis_state: index out of range");
    v[k] = cplx(1.0, 0.0);
    return v;
}

}  // namespace ontocell
