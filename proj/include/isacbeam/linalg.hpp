// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef ISACBEAM_LINALG_HPP
#define ISACBEAM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace isacbeam {

using cxd = std::complex<double>;
using CVec = std::vector<cxd>;

/// Input that violates a documented precondition (named field in what()).
class validation_error : public std::invalid_argument {
  public:
    explicit validation_error(const std::string &msg) : std::invalid_argument(msg) {}
};

/// Numerical routine failed to reach its accuracy/iteration contract.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string &msg) : std::runtime_error(msg) {}
};

// --- small vector helpers -------------------------------------------------

/// a^H b
cxd vdot(const CVec &a, const CVec &b);
double vec_norm(const CVec &v);

/// General complex matrix (row-major). Small and dense by design.
class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    cxd &operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const cxd &operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    CMat adjoint() const;
    CMat operator*(const CMat &rhs) const;
    CVec operator*(const CVec &v) const;
    /// A^H v
    CVec adjoint_apply(const CVec &v) const;
    double frob_norm() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cxd> e_;
};

/// Element of the real Hilbert space of M x M Hermitian matrices with the
/// trace inner product. Full storage; all mutating operations preserve
/// hermiticity up to roundoff, symmetrize() removes accumulated drift.
class HermMat {
  public:
    static constexpr double hermiticity_tol = 1e-12; // absolute, per entry

    HermMat() = default;
    explicit HermMat(std::size_t m) : m_(m), e_(m * m) {}
    static HermMat identity(std::size_t m);
    /// v v^H
    static HermMat outer(const CVec &v);
    /// Validates hermiticity of the given row-major entries.
    static HermMat from_entries(std::size_t m, const std::vector<cxd> &entries);

    std::size_t dim() const { return m_; }
    const cxd &operator()(std::size_t i, std::size_t j) const { return e_[i * m_ + j]; }
    cxd &at(std::size_t i, std::size_t j) { return e_[i * m_ + j]; }
    const std::vector<cxd> &data() const { return e_; }
    std::vector<cxd> &data() { return e_; }

    bool is_hermitian(double tol = hermiticity_tol) const;
    /// X <- (X + X^H)/2
    void symmetrize();
    double trace() const;

    HermMat &operator+=(const HermMat &rhs);
    HermMat &operator-=(const HermMat &rhs);
    HermMat &operator*=(double s);
    /// X <- X + alpha * G
    void axpy(double alpha, const HermMat &g);

    /// X v
    CVec apply(const CVec &v) const;
    /// Re(v^H X v); exact real for Hermitian X
    double quad_form(const CVec &v) const;

  private:
    std::size_t m_ = 0;
    std::vector<cxd> e_;
};

HermMat operator+(HermMat lhs, const HermMat &rhs);
HermMat operator-(HermMat lhs, const HermMat &rhs);
HermMat operator*(double s, HermMat x);

/// tr(B A), real by hermiticity; the trace inner product of the space.
double trace_inner(const HermMat &a, const HermMat &b);
/// Frobenius norm induced by trace_inner.
double norm_h(const HermMat &x);

struct EigenDecomposition {
    std::vector<double> values; // descending
    std::vector<CVec> vectors;  // orthonormal, vectors[i] belongs to values[i]
};

/// Cyclic complex Jacobi eigendecomposition. Deterministic rotation order,
/// intended for the small dimensions of this library (M <= a few dozen).
EigenDecomposition hermitian_eig(const HermMat &x);

struct PrincipalComponent {
    double value; // largest signed eigenvalue
    CVec vector;  // unit eigenvector
};
PrincipalComponent principal_component(const HermMat &x);

struct SvdSplit {
    CMat h_u; // U S^{1/2}
    CMat h_v; // S^{1/2} V^H
    std::vector<double> singular_values; // descending
};

/// Factor H = H_U H_V through the SVD H = U S V^H. Columns of H_U (rows of
/// H_V) belonging to negligible singular values are zero, so the product
/// reconstruction still holds.
SvdSplit svd_split(const CMat &h);

} // namespace isacbeam

#endif
