#include "bfk/zlin.hpp"

#include <algorithm>
#include <sstream>

namespace bfk {

Matrix::Matrix(std::size_t nrows, std::size_t cols) : ncols(cols), rows(nrows, Vec(cols)) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.rows[i][i] = 1;
    return m;
}

Matrix Matrix::from_ints(const std::vector<std::vector<long>>& rows, std::size_t cols) {
    Matrix m(cols);
    for (const auto& r : rows) {
        if (r.size() != cols)
            throw ZlinError("row length mismatch");
        Vec v(cols);
        for (std::size_t j = 0; j < cols; ++j)
            v[j] = r[j];
        m.rows.push_back(std::move(v));
    }
    return m;
}

void Matrix::push(Vec v) {
    if (v.size() != ncols)
        throw ZlinError("row length mismatch");
    rows.push_back(std::move(v));
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.nrows() != b.nrows())
        throw ZlinError("hconcat: row counts differ");
    Matrix out(a.ncols + b.ncols);
    for (std::size_t i = 0; i < a.nrows(); ++i) {
        Vec row = a.rows[i];
        row.insert(row.end(), b.rows[i].begin(), b.rows[i].end());
        out.rows.push_back(std::move(row));
    }
    return out;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    std::size_t cols = 0;
    for (const auto& b : blocks)
        cols += b.ncols;
    Matrix out(cols);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (const auto& r : b.rows) {
            Vec row(cols);
            std::copy(r.begin(), r.end(), row.begin() + static_cast<std::ptrdiff_t>(offset));
            out.rows.push_back(std::move(row));
        }
        offset += b.ncols;
    }
    return out;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool Matrix::is_zero() const {
    return std::all_of(rows.begin(), rows.end(), [](const Vec& v) { return bfk::is_zero(v); });
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.ncols != b.nrows())
        throw ZlinError("matrix shape mismatch in product");
    Matrix out(b.ncols);
    out.rows.reserve(a.nrows());
    for (const auto& r : a.rows)
        out.rows.push_back(row_times(r, b));
    return out;
}

Vec row_times(const Vec& v, const Matrix& m) {
    if (v.size() != m.nrows())
        throw ZlinError("vector/matrix shape mismatch");
    Vec out(m.ncols);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        const auto& row = m.rows[i];
        for (std::size_t j = 0; j < m.ncols; ++j)
            if (row[j] != 0)
                out[j] += v[i] * row[j];
    }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.ncols, m.nrows());
    for (std::size_t i = 0; i < m.nrows(); ++i)
        for (std::size_t j = 0; j < m.ncols; ++j)
            out.rows[j][i] = m.rows[i][j];
    return out;
}

Matrix stack(const Matrix& a, const Matrix& b) {
    if (a.ncols != b.ncols)
        throw ZlinError("column mismatch in stack");
    Matrix out = a;
    out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
    return out;
}

namespace {

std::size_t lead(const Vec& v) {
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0)
            return j;
    return v.size();
}

// x := a*x + b*y, y := c*x + d*y (old values), over the first n entries.
void combine(Vec& x, Vec& y, const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    Integer nx, ny;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] == 0 && y[j] == 0)
            continue;
        nx = a * x[j] + b * y[j];
        ny = c * x[j] + d * y[j];
        x[j].swap(nx);
        y[j].swap(ny);
    }
}

void axpy(Vec& y, const Integer& q, const Vec& x) { // y -= q x
    if (q == 0)
        return;
    for (std::size_t j = 0; j < y.size(); ++j)
        if (x[j] != 0)
            y[j] -= q * x[j];
}

// Echelon form over the first `width` columns with the row operations applied
// to whole rows.  Returns the number of nonzero rows (moved to the front).
std::size_t echelon(std::vector<Vec>& rows, std::size_t width) {
    std::size_t r = 0;
    Integer g, s, t, a, b;
    for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
        // find rows with nonzero entry in col
        std::size_t piv = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][col] != 0) {
                if (piv == rows.size() || abs(rows[i][col]) < abs(rows[piv][col]))
                    piv = i;
            }
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0)
                continue;
            if (rows[i][col] % rows[r][col] == 0) {
                axpy(rows[i], rows[i][col] / rows[r][col], rows[r]);
                continue;
            }
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[r][col].get_mpz_t(), rows[i][col].get_mpz_t());
            a = rows[r][col] / g;
            b = rows[i][col] / g;
            // [s t; -b a] has determinant 1
            combine(rows[r], rows[i], s, t, -b, a);
        }
        if (rows[r][col] < 0)
            for (auto& x : rows[r])
                x = -x;
        ++r;
    }
    return r;
}

// Reduce entries above the pivots (rows already in echelon form, first `width` columns).
void reduce_above(std::vector<Vec>& rows, std::size_t count, std::size_t width) {
    Integer q;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t c = lead(rows[i]);
        if (c >= width)
            continue;
        for (std::size_t k = 0; k < i; ++k) {
            if (rows[k][c] == 0)
                continue;
            mpz_fdiv_q(q.get_mpz_t(), rows[k][c].get_mpz_t(), rows[i][c].get_mpz_t());
            axpy(rows[k], q, rows[i]);
        }
    }
}

} // namespace

Matrix hnf(const Matrix& m) {
    std::vector<Vec> rows = m.rows;
    const std::size_t r = echelon(rows, m.ncols);
    rows.resize(r);
    reduce_above(rows, r, m.ncols);
    Matrix out(m.ncols);
    out.rows = std::move(rows);
    return out;
}

Matrix left_kernel(const Matrix& m) {
    const std::size_t n = m.nrows();
    std::vector<Vec> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec v(m.ncols + n);
        for (std::size_t j = 0; j < m.ncols; ++j)
            v[j] = m.rows[i][j];
        v[m.ncols + i] = 1;
        rows[i] = std::move(v);
    }
    const std::size_t r = echelon(rows, m.ncols);
    Matrix k(n);
    for (std::size_t i = r; i < n; ++i)
        k.rows.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(m.ncols), rows[i].end());
    return hnf(k);
}

std::vector<Integer> smith_invariants(const Matrix& m) {
    std::vector<Vec> a = m.rows;
    const std::size_t nr = a.size(), nc = m.ncols;
    const std::size_t len = std::min(nr, nc);
    std::vector<Integer> diag;
    Integer g, s, t, x, y;
    std::size_t t0 = 0;
    while (t0 < len) {
        // pivot: smallest nonzero absolute value in the remaining block
        std::size_t pr = nr, pc = nc;
        for (std::size_t i = t0; i < nr; ++i)
            for (std::size_t j = t0; j < nc; ++j)
                if (a[i][j] != 0 && (pr == nr || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == nr)
            break;
        std::swap(a[t0], a[pr]);
        if (pc != t0)
            for (auto& row : a)
                std::swap(row[t0], row[pc]);
        bool done = false;
        while (!done) {
            done = true;
            // clear column below
            for (std::size_t i = t0 + 1; i < nr; ++i) {
                if (a[i][t0] == 0)
                    continue;
                if (a[i][t0] % a[t0][t0] == 0) {
                    axpy(a[i], a[i][t0] / a[t0][t0], a[t0]);
                } else {
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[t0][t0].get_mpz_t(), a[i][t0].get_mpz_t());
                    x = a[t0][t0] / g;
                    y = a[i][t0] / g;
                    combine(a[t0], a[i], s, t, -y, x);
                    done = false;
                }
            }
            // clear row to the right (column operations)
            for (std::size_t j = t0 + 1; j < nc; ++j) {
                if (a[t0][j] == 0)
                    continue;
                if (a[t0][j] % a[t0][t0] == 0) {
                    const Integer q = a[t0][j] / a[t0][t0];
                    for (std::size_t i = t0; i < nr; ++i)
                        if (a[i][t0] != 0)
                            a[i][j] -= q * a[i][t0];
                } else {
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[t0][t0].get_mpz_t(), a[t0][j].get_mpz_t());
                    x = a[t0][t0] / g;
                    y = a[t0][j] / g;
                    for (std::size_t i = t0; i < nr; ++i) {
                        const Integer u = a[i][t0], v = a[i][j];
                        a[i][t0] = s * u + t * v;
                        a[i][j] = -y * u + x * v;
                    }
                    done = false;
                }
            }
        }
        diag.push_back(abs(a[t0][t0]));
        ++t0;
    }
    // enforce divisibility
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[j] % diag[i] == 0)
                continue;
            Integer gg, ll;
            mpz_gcd(gg.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
            mpz_lcm(ll.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
            diag[i] = gg;
            diag[j] = ll;
        }
    while (diag.size() < len)
        diag.emplace_back(0);
    return diag;
}

Lattice Lattice::from_rows(const Matrix& rows) {
    Lattice l(rows.ncols);
    l.basis_ = hnf(rows);
    return l;
}

Lattice Lattice::full(std::size_t ambient) { return from_rows(Matrix::identity(ambient)); }

void Lattice::normalize_from(std::size_t) {
    reduce_above(basis_.rows, basis_.rows.size(), basis_.ncols);
}

bool Lattice::insert(const Vec& v0) {
    if (v0.size() != ambient())
        throw ZlinError("vector length does not match lattice ambient rank");
    Vec v = reduce(v0);
    if (bfk::is_zero(v))
        return false;
    auto& rows = basis_.rows;
    Integer g, s, t, a, b;
    std::size_t i = 0;
    while (true) {
        const std::size_t c = lead(v);
        if (c == v.size())
            break;
        while (i < rows.size() && lead(rows[i]) < c)
            ++i;
        if (i == rows.size() || lead(rows[i]) > c) {
            if (v[c] < 0)
                for (auto& x : v)
                    x = -x;
            rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(i), std::move(v));
            break;
        }
        auto& r = rows[i];
        if (v[c] % r[c] == 0) {
            axpy(v, v[c] / r[c], r);
            continue;
        }
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r[c].get_mpz_t(), v[c].get_mpz_t());
        a = r[c] / g;
        b = v[c] / g;
        combine(r, v, s, t, -b, a);
        if (r[c] < 0)
            for (auto& x : r)
                x = -x;
    }
    normalize_from(0);
    return true;
}

Vec Lattice::reduce(Vec v) const {
    if (v.size() != ambient())
        throw ZlinError("vector length does not match lattice ambient rank");
    Integer q;
    for (const auto& r : basis_.rows) {
        const std::size_t c = lead(r);
        if (v[c] == 0)
            continue;
        mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), r[c].get_mpz_t());
        axpy(v, q, r);
    }
    return v;
}

bool Lattice::contains(const Vec& v) const { return bfk::is_zero(reduce(v)); }

Vec Lattice::coordinates(const Vec& v0) const {
    Vec v = v0;
    Vec out(rank());
    for (std::size_t i = 0; i < basis_.rows.size(); ++i) {
        const auto& r = basis_.rows[i];
        const std::size_t c = lead(r);
        if (v[c] == 0)
            continue;
        if (v[c] % r[c] != 0)
            throw ZlinError("vector is not in the lattice");
        out[i] = v[c] / r[c];
        axpy(v, out[i], r);
    }
    if (!bfk::is_zero(v))
        throw ZlinError("vector is not in the lattice");
    return out;
}

bool Lattice::contains(const Lattice& other) const {
    return std::all_of(other.basis_.rows.begin(), other.basis_.rows.end(),
                       [&](const Vec& v) { return contains(v); });
}

Lattice Lattice::sum(const Lattice& other) const { return from_rows(stack(basis_, other.basis_)); }

Lattice Lattice::intersect(const Lattice& other) const {
    // x A = y B  <=>  (x, -y) in the left kernel of [A; B]
    const Matrix k = left_kernel(stack(basis_, other.basis_));
    Matrix coeffs(rank());
    for (const auto& row : k.rows)
        coeffs.rows.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(rank()));
    Lattice out(ambient());
    if (rank() == 0)
        return out;
    return from_rows(multiply(coeffs, basis_));
}

Lattice Lattice::image(const Matrix& m) const { return from_rows(multiply(basis_, m)); }

std::vector<Integer> sub_quotient_invariants(const Lattice& a, const Lattice& b) {
    if (!b.contains(a))
        throw ZlinError("sub_quotient_invariants: first lattice is not contained in the second");
    Matrix coords(b.rank());
    for (const auto& row : a.basis().rows)
        coords.push(b.coordinates(row));
    std::vector<Integer> out;
    for (const auto& d : smith_invariants(coords))
        if (d != 1 && d != 0)
            out.push_back(d);
    for (std::size_t i = a.rank(); i < b.rank(); ++i)
        out.emplace_back(0);
    return out;
}

std::vector<Integer> PresentedAb::invariants() const {
    return sub_quotient_invariants(relation_lattice(), Lattice::full(gens));
}

std::size_t PresentedAb::free_rank() const { return gens - relation_lattice().rank(); }

PresentedAb direct_sum(const std::vector<PresentedAb>& parts) {
    std::vector<Matrix> rels;
    std::size_t gens = 0;
    for (const auto& p : parts) {
        gens += p.gens;
        rels.push_back(p.rels);
    }
    return PresentedAb(gens, block_diagonal(rels));
}

bool AbMap::well_defined() const {
    if (matrix.nrows() != source.gens || matrix.ncols != target.gens)
        return false;
    const Lattice rt = target.relation_lattice();
    for (const auto& r : source.rels.rows)
        if (!rt.contains(row_times(r, matrix)))
            return false;
    return true;
}

Lattice AbMap::kernel_lattice() const {
    const Matrix k = left_kernel(stack(matrix, target.rels));
    Matrix xs(source.gens);
    for (const auto& row : k.rows)
        xs.rows.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(source.gens));
    return Lattice::from_rows(xs);
}

std::vector<Integer> AbMap::kernel_invariants() const {
    if (!well_defined())
        throw ZlinError("map does not respect the source relations");
    return sub_quotient_invariants(source.relation_lattice(), kernel_lattice());
}

std::vector<Integer> AbMap::image_invariants() const {
    const Lattice rt = target.relation_lattice();
    return sub_quotient_invariants(rt, rt.sum(Lattice::from_rows(matrix)));
}

PresentedAb AbMap::cokernel() const { return PresentedAb(target.gens, stack(target.rels, matrix)); }

bool AbMap::is_zero() const {
    const Lattice rt = target.relation_lattice();
    return std::all_of(matrix.rows.begin(), matrix.rows.end(), [&](const Vec& v) { return rt.contains(v); });
}

AbMap compose(const AbMap& g, const AbMap& f) {
    if (f.target.gens != g.source.gens)
        throw ZlinError("composing maps with mismatched middle groups");
    return AbMap{f.source, g.target, multiply(f.matrix, g.matrix)};
}

FinitePoset::FinitePoset(std::vector<std::vector<bool>> leq) : leq_(std::move(leq)) {
    const std::size_t n = leq_.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (leq_[a].size() != n || !leq_[a][a])
            throw ZlinError("poset relation must be square and reflexive");
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b && leq_[a][b] && leq_[b][a])
                throw ZlinError("poset relation is not antisymmetric");
            for (std::size_t c = 0; c < n; ++c)
                if (leq_[a][b] && leq_[b][c] && !leq_[a][c])
                    throw ZlinError("poset relation is not transitive");
        }
    }
    memo_.assign(n, std::vector<long long>(n, 0));
    known_.assign(n, std::vector<bool>(n, false));
}

long long FinitePoset::mobius(std::size_t a, std::size_t b) const {
    if (!leq_.at(a).at(b))
        throw ZlinError("mobius: first element is not below the second");
    if (a == b)
        return 1;
    if (known_[a][b])
        return memo_[a][b];
    long long sum = 0;
    for (std::size_t c = 0; c < size(); ++c)
        if (c != b && leq_[a][c] && leq_[c][b])
            sum += mobius(a, c);
    known_[a][b] = true;
    memo_[a][b] = -sum;
    return -sum;
}

std::string to_string(const std::vector<Integer>& invariants) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < invariants.size(); ++i)
        os << (i ? "," : "") << invariants[i].get_str();
    os << "]";
    return os.str();
}

} // namespace bfk
