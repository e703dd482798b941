#pragma once

#include <cstddef>
#include <vector>

namespace maxlin {

/// Dense matrix over the max-times semiring ([0,inf), max, *).
/// Entries are non-negative finite doubles; storage is row-major, 0-based.
class NonNegMatrix {
public:
    NonNegMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    NonNegMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static NonNegMatrix identity(std::size_t d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    const std::vector<double>& entries() const { return entries_; }

    bool same_shape(const NonNegMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
};

/// Max-times matrix product: result(i,j) = max_k F(i,k)*G(k,j).
NonNegMatrix odot(const NonNegMatrix& f, const NonNegMatrix& g);

/// Componentwise maximum of two equally shaped matrices.
NonNegMatrix elementwise_max(const NonNegMatrix& f, const NonNegMatrix& g);

/// k-fold odot power of a square matrix; power 0 is the identity.
NonNegMatrix odot_power(const NonNegMatrix& a, std::size_t k);

/// (I v A)^{odot (d-1)} for square A, computed by repeated squaring.
/// For A supported on a DAG edge set this is the Kleene-star style closure
/// max_{k=0..d-1} A^{odot k}.
NonNegMatrix closure(const NonNegMatrix& a);

/// True when |a-b| <= rel_tol * max(|a|,|b|); exact zeros must match exactly.
bool approx_equal(double a, double b, double rel_tol);

/// Entrywise approx_equal over equally shaped matrices.
bool approx_equal(const NonNegMatrix& a, const NonNegMatrix& b, double rel_tol);

} // namespace maxlin
