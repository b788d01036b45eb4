#pragma once

#include <optional>
#include <vector>

#include "expofield/field_elem.hpp"

namespace expofield {

using QVector = std::vector<Rat>;
using ZVector = std::vector<Int>;

/// Dense rectangular matrix of rationals.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rat& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    QVector apply(const QVector& x) const;
    QMatrix transposed() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> a_;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    QMatrix reduced;
    std::vector<std::size_t> pivots;
};
Echelon rref(QMatrix m);

std::size_t rank(const QMatrix& m);
/// Basis of {x : M x = 0} over Q; one vector per free column.
std::vector<QVector> kernel_basis(const QMatrix& m);
/// Some x with M x = target, or nullopt. Throws UsageError on size mismatch.
std::optional<QVector> qlin_solve(const QMatrix& m, const QVector& target);

/// Integer points of the rational kernel, as a Z-basis in Hermite form.
/// Each vector is primitive and its last nonzero entry is positive.
std::vector<ZVector> integer_kernel(const QMatrix& m);
/// A Z-basis of the subgroup of Q^d generated by `gens`.
std::vector<QVector> lattice_basis(const std::vector<QVector>& gens, std::size_t dim);

/// Smith normal form U * M * V = D of an integer matrix, U and V unimodular.
struct SmithForm {
    std::vector<ZVector> u;  // rows x rows
    std::vector<ZVector> v;  // cols x cols
    std::vector<Int> diagonal;  // nonzero invariant factors, positive
};
SmithForm smith_form(const std::vector<ZVector>& m, std::size_t cols);

Int lcm_of_denominators(const QVector& v);

// Matrices over the rational function field.
using FMatrix = std::vector<std::vector<FieldElem>>;

/// Rank over the fraction field: rows are cleared of denominators and reduced
/// by fraction-free (Bareiss) elimination with exact polynomial division.
std::size_t ff_rank(const FMatrix& m);
/// Basis of the right null space {x : M x = 0} over the fraction field.
std::vector<std::vector<FieldElem>> ff_nullspace(const FMatrix& m, std::size_t cols);

/// Q-coordinates of rational functions: column j holds the coefficients of
/// elems[j] * L where L is a common denominator; rows run over
/// (monomial, power-basis coordinate) pairs.
QMatrix coefficient_matrix(const std::vector<FieldElem>& elems);

}  // namespace expofield
