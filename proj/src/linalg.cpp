// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "isacbeam/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isacbeam {

cxd vdot(const CVec &a, const CVec &b) {
    if (a.size() != b.size())
        throw validation_error("vdot: dimension mismatch");
    cxd s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

double vec_norm(const CVec &v) {
    double s = 0.0;
    for (const cxd &x : v)
        s += std::norm(x);
    return std::sqrt(s);
}

CMat CMat::identity(std::size_t n) {
    CMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        a(i, i) = 1.0;
    return a;
}

CMat CMat::adjoint() const {
    CMat a(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            a(j, i) = std::conj((*this)(i, j));
    return a;
}

CMat CMat::operator*(const CMat &rhs) const {
    if (cols_ != rhs.rows_)
        throw validation_error("CMat::operator*: dimension mismatch");
    CMat out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cxd aik = (*this)(i, k);
            if (aik == cxd(0.0))
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += aik * rhs(k, j);
        }
    return out;
}

CVec CMat::operator*(const CVec &v) const {
    if (cols_ != v.size())
        throw validation_error("CMat::operator*: vector dimension mismatch");
    CVec out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        cxd s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j)
            s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

CVec CMat::adjoint_apply(const CVec &v) const {
    if (rows_ != v.size())
        throw validation_error("CMat::adjoint_apply: vector dimension mismatch");
    CVec out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const cxd vi = v[i];
        for (std::size_t j = 0; j < cols_; ++j)
            out[j] += std::conj((*this)(i, j)) * vi;
    }
    return out;
}

double CMat::frob_norm() const {
    double s = 0.0;
    for (const cxd &x : e_)
        s += std::norm(x);
    return std::sqrt(s);
}

HermMat HermMat::identity(std::size_t m) {
    HermMat x(m);
    for (std::size_t i = 0; i < m; ++i)
        x.at(i, i) = 1.0;
    return x;
}

HermMat HermMat::outer(const CVec &v) {
    HermMat x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            x.at(i, j) = v[i] * std::conj(v[j]);
    return x;
}

HermMat HermMat::from_entries(std::size_t m, const std::vector<cxd> &entries) {
    if (entries.size() != m * m)
        throw validation_error("HermMat::from_entries: entry count mismatch");
    HermMat x(m);
    x.e_ = entries;
    if (!x.is_hermitian())
        throw validation_error("HermMat::from_entries: input is not Hermitian");
    return x;
}

bool HermMat::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = i; j < m_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
                return false;
    return true;
}

void HermMat::symmetrize() {
    for (std::size_t i = 0; i < m_; ++i) {
        at(i, i) = cxd(at(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < m_; ++j) {
            const cxd v = 0.5 * (at(i, j) + std::conj(at(j, i)));
            at(i, j) = v;
            at(j, i) = std::conj(v);
        }
    }
}

double HermMat::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
        t += (*this)(i, i).real();
    return t;
}

HermMat &HermMat::operator+=(const HermMat &rhs) {
    if (m_ != rhs.m_)
        throw validation_error("HermMat::operator+=: dimension mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k)
        e_[k] += rhs.e_[k];
    return *this;
}

HermMat &HermMat::operator-=(const HermMat &rhs) {
    if (m_ != rhs.m_)
        throw validation_error("HermMat::operator-=: dimension mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k)
        e_[k] -= rhs.e_[k];
    return *this;
}

HermMat &HermMat::operator*=(double s) {
    for (cxd &v : e_)
        v *= s;
    return *this;
}

void HermMat::axpy(double alpha, const HermMat &g) {
    if (m_ != g.m_)
        throw validation_error("HermMat::axpy: dimension mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k)
        e_[k] += alpha * g.e_[k];
}

CVec HermMat::apply(const CVec &v) const {
    if (v.size() != m_)
        throw validation_error("HermMat::apply: vector dimension mismatch");
    CVec out(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
        cxd s = 0.0;
        for (std::size_t j = 0; j < m_; ++j)
            s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double HermMat::quad_form(const CVec &v) const {
    if (v.size() != m_)
        throw validation_error("HermMat::quad_form: vector dimension mismatch");
    cxd s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
        cxd row = 0.0;
        for (std::size_t j = 0; j < m_; ++j)
            row += (*this)(i, j) * v[j];
        s += std::conj(v[i]) * row;
    }
    return s.real();
}

HermMat operator+(HermMat lhs, const HermMat &rhs) {
    lhs += rhs;
    return lhs;
}

HermMat operator-(HermMat lhs, const HermMat &rhs) {
    lhs -= rhs;
    return lhs;
}

HermMat operator*(double s, HermMat x) {
    x *= s;
    return x;
}

double trace_inner(const HermMat &a, const HermMat &b) {
    if (a.dim() != b.dim())
        throw validation_error("trace_inner: dimension mismatch");
    // tr(BA) = sum_ij B_ij conj(A_ij); imaginary parts cancel pairwise for
    // Hermitian inputs so only the real part is accumulated.
    const std::vector<cxd> &ae = a.data();
    const std::vector<cxd> &be = b.data();
    double s = 0.0;
    for (std::size_t k = 0; k < ae.size(); ++k)
        s += ae[k].real() * be[k].real() + ae[k].imag() * be[k].imag();
    return s;
}

double norm_h(const HermMat &x) {
    double s = 0.0;
    for (const cxd &v : x.data())
        s += std::norm(v);
    return std::sqrt(s);
}

EigenDecomposition hermitian_eig(const HermMat &x) {
    if (!x.is_hermitian(HermMat::hermiticity_tol * (1.0 + norm_h(x))))
        throw validation_error("hermitian_eig: input is not Hermitian");
    const std::size_t m = x.dim();
    HermMat a = x;
    a.symmetrize();

    // eigenvector accumulator, column i = i-th eigenvector
    std::vector<cxd> v(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        v[i * m + i] = 1.0;

    const double scale = norm_h(a);
    const double off_target = 1e-14 * (scale > 0.0 ? scale : 1.0);
    const int max_sweeps = 64;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q)
                s += std::norm(a(p, q));
        return std::sqrt(2.0 * s);
    };

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_norm() <= off_target)
            break;
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const cxd b = a(p, q);
                const double babs = std::abs(b);
                if (babs <= 1e-300)
                    continue;
                // absorb the phase of b, then a classical symmetric rotation
                const cxd f = b / babs;
                const double alpha = a(p, p).real();
                const double delta = a(q, q).real();
                const double tau = (delta - alpha) / (2.0 * babs);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // unitary G = I except G(p,p)=f c, G(p,q)=f s, G(q,p)=-s, G(q,q)=c
                const cxd gpp = f * c, gpq = f * s;
                // rows: A <- G^H A
                for (std::size_t col = 0; col < m; ++col) {
                    const cxd ap = a(p, col), aq = a(q, col);
                    a.at(p, col) = std::conj(gpp) * ap - s * aq;
                    a.at(q, col) = std::conj(gpq) * ap + c * aq;
                }
                // cols: A <- A G
                for (std::size_t row = 0; row < m; ++row) {
                    const cxd ap = a(row, p), aq = a(row, q);
                    a.at(row, p) = ap * gpp - s * aq;
                    a.at(row, q) = ap * gpq + c * aq;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = cxd(a(p, p).real(), 0.0);
                a.at(q, q) = cxd(a(q, q).real(), 0.0);
                // V <- V G
                for (std::size_t row = 0; row < m; ++row) {
                    const cxd vp = v[row * m + p], vq = v[row * m + q];
                    v[row * m + p] = vp * gpp - s * vq;
                    v[row * m + q] = vp * gpq + c * vq;
                }
            }
        }
    }
    if (sweep == max_sweeps && off_norm() > off_target)
        throw numerical_error("hermitian_eig: Jacobi sweep cap exceeded");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition eig;
    eig.values.resize(m);
    eig.vectors.assign(m, CVec(m));
    for (std::size_t k = 0; k < m; ++k) {
        eig.values[k] = a(order[k], order[k]).real();
        for (std::size_t row = 0; row < m; ++row)
            eig.vectors[k][row] = v[row * m + order[k]];
    }
    return eig;
}

PrincipalComponent principal_component(const HermMat &x) {
    EigenDecomposition eig = hermitian_eig(x);
    return {eig.values[0], eig.vectors[0]};
}

SvdSplit svd_split(const CMat &h) {
    if (h.rows() != h.cols())
        throw validation_error("svd_split: matrix must be square");
    const std::size_t m = h.rows();

    // Gram route: H^H H = V S^2 V^H, then H_U column i = H v_i / sqrt(s_i).
    HermMat gram(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            cxd s = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                s += std::conj(h(k, i)) * h(k, j);
            gram.at(i, j) = s;
        }
    gram.symmetrize();
    EigenDecomposition eig = hermitian_eig(gram);

    SvdSplit out;
    out.h_u = CMat(m, m);
    out.h_v = CMat(m, m);
    out.singular_values.resize(m);
    double smax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        out.singular_values[i] = std::sqrt(std::max(eig.values[i], 0.0));
        smax = std::max(smax, out.singular_values[i]);
    }
    const double keep = 1e-13 * smax;
    for (std::size_t i = 0; i < m; ++i) {
        const double si = out.singular_values[i];
        if (si <= keep)
            continue; // zero column/row; product reconstruction unaffected
        const double rs = std::sqrt(si);
        const CVec hv = h * eig.vectors[i];
        for (std::size_t r = 0; r < m; ++r)
            out.h_u(r, i) = hv[r] / rs;
        for (std::size_t c = 0; c < m; ++c)
            out.h_v(i, c) = rs * std::conj(eig.vectors[i][c]);
    }
    return out;
}

} // namespace isacbeam
