#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bfk {

using Integer = mpz_class;
using Vec = std::vector<Integer>;

class ZlinError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense integer matrix stored as rows.
struct Matrix {
    std::size_t ncols = 0;
    std::vector<Vec> rows;

    Matrix() = default;
    explicit Matrix(std::size_t cols) : ncols(cols) {}
    Matrix(std::size_t nrows, std::size_t cols);
    static Matrix identity(std::size_t n);
    static Matrix from_ints(const std::vector<std::vector<long>>& rows, std::size_t cols);

    std::size_t nrows() const { return rows.size(); }
    Integer& at(std::size_t r, std::size_t c) { return rows[r][c]; }
    const Integer& at(std::size_t r, std::size_t c) const { return rows[r][c]; }
    void push(Vec v);
    bool is_zero() const;
    bool operator==(const Matrix& o) const { return ncols == o.ncols && rows == o.rows; }
};

Matrix multiply(const Matrix& a, const Matrix& b);
Vec row_times(const Vec& v, const Matrix& m);
Matrix transpose(const Matrix& m);
/// Rows of a followed by rows of b (same column count).
Matrix stack(const Matrix& a, const Matrix& b);
bool is_zero(const Vec& v);
/// Columns of a followed by columns of b (same row count).
Matrix hconcat(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// Row-style Hermite normal form: echelon rows, positive pivots, entries above
/// each pivot reduced into [0, pivot).  Zero rows are dropped.
Matrix hnf(const Matrix& m);

/// Basis (in HNF) of {x : x m = 0}.
Matrix left_kernel(const Matrix& m);

/// Invariant factors d1 | d2 | ... of length min(rows, cols); zeros trail.
std::vector<Integer> smith_invariants(const Matrix& m);

/// A subgroup of Z^n given by an HNF row basis.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(std::size_t ambient) : basis_(ambient) {}
    static Lattice from_rows(const Matrix& rows);
    static Lattice full(std::size_t ambient);

    std::size_t ambient() const { return basis_.ncols; }
    std::size_t rank() const { return basis_.nrows(); }
    const Matrix& basis() const { return basis_; }

    /// Adds v to the generating set; returns true when the lattice grew.
    bool insert(const Vec& v);
    bool contains(const Vec& v) const;
    /// Coordinates of v in the basis; throws when v is not in the lattice.
    Vec coordinates(const Vec& v) const;
    /// Canonical representative of v modulo the lattice.
    Vec reduce(Vec v) const;
    bool contains(const Lattice& other) const;
    Lattice sum(const Lattice& other) const;
    Lattice intersect(const Lattice& other) const;
    /// Image of the lattice under x -> x m.
    Lattice image(const Matrix& m) const;
    bool operator==(const Lattice& o) const { return basis_ == o.basis_; }

private:
    void normalize_from(std::size_t row);
    Matrix basis_;
};

/// Invariant factors of b / a, dropping 1s; a zero per free summand.
std::vector<Integer> sub_quotient_invariants(const Lattice& a, const Lattice& b);

/// Z^gens modulo the row span of rels.
struct PresentedAb {
    std::size_t gens = 0;
    Matrix rels;

    PresentedAb() = default;
    explicit PresentedAb(std::size_t n) : gens(n), rels(n) {}
    PresentedAb(std::size_t n, Matrix r) : gens(n), rels(std::move(r)) {}

    Lattice relation_lattice() const { return Lattice::from_rows(rels); }
    /// Nontrivial invariant factors; 0 stands for a copy of Z.
    std::vector<Integer> invariants() const;
    bool is_zero() const { return invariants().empty(); }
    std::size_t free_rank() const;
};

PresentedAb direct_sum(const std::vector<PresentedAb>& parts);

/// Homomorphism x -> x matrix on generators (row convention).
struct AbMap {
    PresentedAb source;
    PresentedAb target;
    Matrix matrix; // source.gens x target.gens

    bool well_defined() const;
    /// Lattice of x in Z^source.gens with x M in the target relations.
    Lattice kernel_lattice() const;
    std::vector<Integer> kernel_invariants() const;
    std::vector<Integer> image_invariants() const;
    PresentedAb cokernel() const;
    bool is_injective() const { return kernel_invariants().empty(); }
    bool is_surjective() const { return cokernel().is_zero(); }
    bool is_iso() const { return is_injective() && is_surjective(); }
    /// True when every generator maps into the target relations.
    bool is_zero() const;
};

AbMap compose(const AbMap& g, const AbMap& f); // g after f

/// Finite poset by its order matrix; leq[a][b] means a <= b.
class FinitePoset {
public:
    explicit FinitePoset(std::vector<std::vector<bool>> leq);
    std::size_t size() const { return leq_.size(); }
    bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
    /// Moebius function; throws when a is not below b.
    long long mobius(std::size_t a, std::size_t b) const;

private:
    std::vector<std::vector<bool>> leq_;
    mutable std::vector<std::vector<long long>> memo_;
    mutable std::vector<std::vector<bool>> known_;
};

std::string to_string(const std::vector<Integer>& invariants);

} // namespace bfk
