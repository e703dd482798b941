#include "maxlin/tropical.hpp"

#include "maxlin/errors.hpp"

#include <algorithm>
#include <cmath>

namespace maxlin {

namespace {

void check_entries(const std::vector<double>& entries) {
    for (double v : entries) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw InvalidArgumentError("matrix entries must be non-negative and finite");
        }
    }
}

} // namespace

NonNegMatrix::NonNegMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
        throw InvalidArgumentError("matrix dimensions must be at least 1x1");
    }
    if (!(fill >= 0.0) || !std::isfinite(fill)) {
        throw InvalidArgumentError("matrix entries must be non-negative and finite");
    }
}

NonNegMatrix::NonNegMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw InvalidArgumentError("matrix dimensions must be at least 1x1");
    }
    if (entries_.size() != rows * cols) {
        throw InvalidArgumentError("entry count does not match matrix shape");
    }
    check_entries(entries_);
}

NonNegMatrix NonNegMatrix::identity(std::size_t d) {
    NonNegMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

NonNegMatrix odot(const NonNegMatrix& f, const NonNegMatrix& g) {
    if (f.cols() != g.rows()) {
        throw InvalidArgumentError("odot: inner dimensions do not match");
    }
    NonNegMatrix out(f.rows(), g.cols());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t k = 0; k < f.cols(); ++k) {
            const double fik = f(i, k);
            if (fik == 0.0) continue;
            for (std::size_t j = 0; j < g.cols(); ++j) {
                const double v = fik * g(k, j);
                if (v > out(i, j)) out(i, j) = v;
            }
        }
    }
    return out;
}

NonNegMatrix elementwise_max(const NonNegMatrix& f, const NonNegMatrix& g) {
    if (!f.same_shape(g)) {
        throw InvalidArgumentError("elementwise_max: shapes do not match");
    }
    NonNegMatrix out(f.rows(), f.cols());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t j = 0; j < f.cols(); ++j) {
            out(i, j) = std::max(f(i, j), g(i, j));
        }
    }
    return out;
}

NonNegMatrix odot_power(const NonNegMatrix& a, std::size_t k) {
    if (!a.square()) {
        throw InvalidArgumentError("odot_power: matrix must be square");
    }
    NonNegMatrix out = NonNegMatrix::identity(a.rows());
    for (std::size_t step = 0; step < k; ++step) {
        out = odot(out, a);
    }
    return out;
}

NonNegMatrix closure(const NonNegMatrix& a) {
    if (!a.square()) {
        throw InvalidArgumentError("closure: matrix must be square");
    }
    const std::size_t d = a.rows();
    if (d == 1) return NonNegMatrix::identity(1); // (I v A)^{odot 0}
    NonNegMatrix m = elementwise_max(NonNegMatrix::identity(d), a);
    // Repeated squaring; since I v A absorbs lower powers, overshooting the
    // exponent d-1 leaves a DAG-supported result unchanged.
    std::size_t exponent = 1;
    while (exponent < d - 1) {
        m = odot(m, m);
        exponent *= 2;
    }
    return m;
}

bool approx_equal(double a, double b, double rel_tol) {
    if (a == b) return true;
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= rel_tol * scale;
}

bool approx_equal(const NonNegMatrix& a, const NonNegMatrix& b, double rel_tol) {
    if (!a.same_shape(b)) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!approx_equal(a(i, j), b(i, j), rel_tol)) return false;
        }
    }
    return true;
}

} // namespace maxlin
