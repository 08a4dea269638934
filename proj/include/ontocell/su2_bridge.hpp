#pragma once

#include "ontocell/types.hpp"

#include <string>
#include <vector>

namespace ontocell {

/// Real orthogonal change of basis between the discrete x and p eigenstates
/// of one cell, indexed by half-integers r, s in {-ell, ..., +ell}.
/// Row r is the (2r)-eigenvector of the symmetric tridiagonal recursion
/// matrix, normalised, with the sign fixed so the entry at s = +ell is
/// strictly positive (fallback: largest-magnitude entry positive).
struct BridgeMatrix {
    HalfInt ell;
    int dim = 0;  // 2*ell + 1
    std::vector<double> a;

    BridgeMatrix() = default;
    explicit BridgeMatrix(HalfInt l)
        : ell(l), dim(l.dim()), a(static_cast<size_t>(l.dim()) * l.dim(), 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * dim + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * dim + j]; }
    /// Half-integer label of index i: r = i - ell.
    HalfInt label(int i) const { return HalfInt(2 * i - ell.twice); }
};

/// Rows solved as eigenvectors of the symmetric tridiagonal matrix with
/// off-diagonals sqrt((ell+1-s)(ell+s)) and known eigenvalues 2r, by inverse
/// iteration. Rows are independent (parallelised).
BridgeMatrix bridge_by_recursion(HalfInt ell);

/// Independent oracle: mat_exp(L1, i*pi/2) on the dense spectral path,
/// made real by the analytic diagonal phase conjugation, transposed so row r
/// carries eigenvalue 2r, then sign-aligned per row.
BridgeMatrix bridge_by_rotation(HalfInt ell);

/// Raw exp(i*pi/2 * L1) in the L3 eigenbasis (unitarity diagnostics).
ComplexMatrix rotation_exponential(HalfInt ell);

/// Max |entry| over indices with r^2 + s^2 > (radius_factor*ell)^2;
/// 0 when no index qualifies. radius_factor >= 1 required.
double support_profile(const BridgeMatrix& b, double radius_factor);

/// One byte per entry: linear map [min,max] -> [255,0] (max renders black);
/// all 128 when min == max.
std::vector<unsigned char> render_bridge_pixels(const BridgeMatrix& b);

/// Writes the pixel map as a binary NetPBM P5 image.
void render_bridge(const BridgeMatrix& b, const std::string& path);

/// Entrywise max-abs difference (cross-oracle comparison).
double max_bridge_diff(const BridgeMatrix& a, const BridgeMatrix& b);

}  // namespace ontocell
