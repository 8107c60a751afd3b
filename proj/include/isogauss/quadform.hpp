#pragma once

#include "isogauss/budget.hpp"
#include "isogauss/prime_field.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace isogauss {

/// Dense rows x cols matrix over F_p, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size(rows, cols), 0) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Elem operator()(int i, int j) const { return a_[at(i, j)]; }
    Elem& operator()(int i, int j) { return a_[at(i, j)]; }
    const std::vector<Elem>& data() const { return a_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    static std::size_t size(int r, int c) { return static_cast<std::size_t>(r) * static_cast<std::size_t>(c); }
    std::size_t at(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j); }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Elem> a_;
};

Matrix multiply(const PrimeContext& ctx, const Matrix& x, const Matrix& y);
Matrix transpose(const Matrix& x);
int rank(const PrimeContext& ctx, Matrix m);
Elem determinant(const PrimeContext& ctx, Matrix m);

/// Symmetric n x n matrix over F_p with reduced entries.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : m_(n, n) {}

    /// Reduces entries mod p; throws UsageError if not square and symmetric.
    static SymMatrix from_rows(const PrimeContext& ctx, const std::vector<std::vector<long long>>& rows);
    static SymMatrix from_matrix(const Matrix& m);
    static SymMatrix diagonal(const PrimeContext& ctx, const std::vector<long long>& diag);

    int n() const { return m_.rows(); }
    Elem operator()(int i, int j) const { return m_(i, j); }
    void set(int i, int j, Elem v)
    {
        m_(i, j) = v;
        m_(j, i) = v;
    }
    const Matrix& matrix() const { return m_; }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    Matrix m_;
};

/// A (+) B, block diagonal.
SymMatrix direct_sum(const SymMatrix& a, const SymMatrix& b);
/// tG T G.
SymMatrix congruent(const PrimeContext& ctx, const SymMatrix& t, const Matrix& g);
/// trace(A B) for square matrices of equal size.
Elem trace_product(const PrimeContext& ctx, const Matrix& a, const Matrix& b);

enum class DiscType { Square, NonSquare };

/// Isometry class of a symmetric matrix: dimension, rank and the square
/// class of the nondegenerate part. Rank 0 is always Square.
struct FormClass {
    int n = 0;
    int d = 0;
    DiscType disc = DiscType::Square;

    friend bool operator==(const FormClass&, const FormClass&) = default;
};

std::string disc_name(DiscType t);
DiscType parse_disc(const std::string& s);
std::string to_string(const FormClass& c);

FormClass classify(const PrimeContext& ctx, const SymMatrix& t);

/// I_d (+) 0_{n-d} or J_d (+) 0_{n-d} with J_d = I_{d-1} (+) <omega>.
SymMatrix canonical_matrix(const PrimeContext& ctx, const FormClass& c);

/// Every class of n x n symmetric matrices: rank 0, then (1,sq), (1,nonsq), ...
std::vector<FormClass> all_classes(int n);

/// |GL_n(F_p)| / o(c): number of matrices congruent to canonical_matrix(c).
mpz_class orbit_size(const PrimeContext& ctx, const FormClass& c);

/// All symmetric n x n matrices, indexed by the upper triangle read
/// row-major as base-p digits (first digit most significant).
class SymmetricStream {
public:
    SymmetricStream(const PrimeContext& ctx, int n, const Budget& budget = {});

    int n() const { return n_; }
    int digits() const { return digits_; }
    std::uint64_t size() const { return size_; }
    SymMatrix at(std::uint64_t index) const;

    /// Contiguous index ranges [lo, hi) covering [0, size()).
    std::vector<std::pair<std::uint64_t, std::uint64_t>> split(unsigned chunks) const;

    /// Calls f(const SymMatrix&) for every index in [lo, hi) in order.
    template <class F>
    void for_each(std::uint64_t lo, std::uint64_t hi, F&& f) const
    {
        for (std::uint64_t i = lo; i < hi; ++i)
            f(at(i));
    }

private:
    const PrimeContext* ctx_;
    int n_;
    int digits_;
    std::uint64_t size_;
};

SymmetricStream enumerate_symmetric(const PrimeContext& ctx, int n, const Budget& budget = {});

namespace detail {

/// In-place kernels on a scratch row-major n x n buffer (destroyed).
/// classify_kernel returns {rank, disc is square}.
std::pair<int, bool> classify_kernel(const PrimeContext& ctx, Elem* a, int n);
Elem determinant_kernel(const PrimeContext& ctx, Elem* a, int n);

} // namespace detail

} // namespace isogauss
