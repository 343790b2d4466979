#include "dirac/quotient_linalg.hpp"

#include <algorithm>

namespace dirac {

bool weakly_zero(const PhasePoly& p, const GroebnerBasis* modulus) {
    if (p.is_zero())
        return true;
    if (!modulus)
        return false;
    return nf(p, *modulus).is_zero();
}

QuotientMatrix make_quotient_matrix(std::vector<std::vector<PhasePoly>> raw,
                                    const GroebnerBasis* modulus) {
    QuotientMatrix M;
    M.modulus = modulus;
    M.entries = std::move(raw);
    if (modulus)
        for (auto& row : M.entries)
            for (auto& e : row)
                e = nf(e, *modulus);
    return M;
}

namespace {

struct Elimination {
    std::vector<std::size_t> pivot_rows;
    std::vector<std::size_t> pivot_cols;
    std::vector<PhasePoly> pivots_reduced; // NF of each pivot at selection time
    int sign = 1;
    bool exhausted_exactly = false; // no nonzero polynomial entries remained
};

/// Fraction-free full-pivot elimination. `weak` selects pivots that are
/// nonzero modulo `modulus`; otherwise any polynomially nonzero entry works
/// (exact determinant mode).
Elimination bareiss(std::vector<std::vector<PhasePoly>> W, const GroebnerBasis* modulus, bool weak,
                    const OrderPtr& order) {
    Elimination out;
    const std::size_t nrows = W.size();
    const std::size_t ncols = nrows ? W[0].size() : 0;
    std::vector<std::size_t> arows, acols;
    for (std::size_t r = 0; r < nrows; ++r)
        arows.push_back(r);
    for (std::size_t c = 0; c < ncols; ++c)
        acols.push_back(c);

    PhasePoly prev = W.empty() ? PhasePoly(nullptr, nullptr) : W[0][0]; // placeholder
    bool have_prev = false;

    while (!arows.empty() && !acols.empty()) {
        // Deterministic pivot: fewest terms (of the reduced entry), then the
        // larger leading monomial, then lowest column, then lowest row.
        bool found = false;
        std::size_t best_r = 0, best_c = 0, best_ri = 0, best_ci = 0;
        PhasePoly best_red(nullptr, nullptr);
        bool any_nonzero_poly = false;
        for (std::size_t ci = 0; ci < acols.size(); ++ci) {
            for (std::size_t ri = 0; ri < arows.size(); ++ri) {
                const PhasePoly& e = W[arows[ri]][acols[ci]];
                if (e.is_zero())
                    continue;
                any_nonzero_poly = true;
                PhasePoly red = (weak && modulus) ? nf(e, *modulus) : e;
                if (red.is_zero())
                    continue;
                bool better = false;
                if (!found) {
                    better = true;
                } else if (red.term_count() != best_red.term_count()) {
                    better = red.term_count() < best_red.term_count();
                } else {
                    auto c = order->compare(red.leading_monomial(), best_red.leading_monomial());
                    if (c != 0)
                        better = c > 0;
                    else if (acols[ci] != best_c)
                        better = acols[ci] < best_c;
                    else
                        better = arows[ri] < best_r;
                }
                if (better) {
                    found = true;
                    best_r = arows[ri];
                    best_c = acols[ci];
                    best_ri = ri;
                    best_ci = ci;
                    best_red = red;
                }
            }
        }
        if (!found) {
            out.exhausted_exactly = !any_nonzero_poly;
            break;
        }
        if ((best_ri + best_ci) % 2 == 1)
            out.sign = -out.sign;
        PhasePoly pivot = W[best_r][best_c];
        out.pivot_rows.push_back(best_r);
        out.pivot_cols.push_back(best_c);
        out.pivots_reduced.push_back(best_red);
        arows.erase(arows.begin() + static_cast<std::ptrdiff_t>(best_ri));
        acols.erase(acols.begin() + static_cast<std::ptrdiff_t>(best_ci));
        for (std::size_t r : arows) {
            for (std::size_t c : acols) {
                PhasePoly num = pivot * W[r][c] - W[r][best_c] * W[best_r][c];
                if (have_prev && !num.is_zero()) {
                    auto q = exact_divide(num, prev);
                    if (!q)
                        throw InternalError("Bareiss exact division failed");
                    W[r][c] = std::move(*q);
                } else {
                    W[r][c] = std::move(num);
                }
            }
        }
        prev = pivot;
        have_prev = true;
    }
    // Remember the final working matrix? Not needed by callers.
    return out;
}

std::vector<std::vector<PhasePoly>> submatrix(const std::vector<std::vector<PhasePoly>>& A,
                                              const std::vector<std::size_t>& rows,
                                              const std::vector<std::size_t>& cols) {
    std::vector<std::vector<PhasePoly>> out;
    for (std::size_t r : rows) {
        std::vector<PhasePoly> row;
        for (std::size_t c : cols)
            row.push_back(A[r][c]);
        out.push_back(std::move(row));
    }
    return out;
}

/// Kernel basis of M (mod modulus) via Cramer expansion over the pivot block.
std::vector<std::vector<PhasePoly>> kernel_vectors(const QuotientMatrix& M, const Ring& ring,
                                                   Certificate& cert, const Elimination& elim,
                                                   const OrderPtr& order) {
    const std::size_t ncols = M.cols();
    std::vector<char> is_pivot_col(ncols, 0);
    for (std::size_t c : elim.pivot_cols)
        is_pivot_col[c] = 1;

    std::vector<std::size_t> pr = elim.pivot_rows;
    std::vector<std::size_t> pc = elim.pivot_cols;
    auto P = submatrix(M.entries, pr, pc);
    PhasePoly detP = det_exact(P, ring, order);
    if (weakly_zero(detP, M.modulus))
        throw InternalError("pivot block degenerated during kernel extraction");

    std::vector<std::vector<PhasePoly>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot_col[f])
            continue;
        std::vector<PhasePoly> v;
        for (std::size_t c = 0; c < ncols; ++c)
            v.push_back(PhasePoly(detP.table(), detP.order()));
        v[f] = detP;
        for (std::size_t i = 0; i < pc.size(); ++i) {
            auto Pi = P;
            for (std::size_t r = 0; r < pr.size(); ++r)
                Pi[r][i] = -M.entries[pr[r]][f];
            v[pc[i]] = det_exact(Pi, ring, order);
        }
        // Content normalisation, then a monic first entry.
        PhasePoly content(detP.table(), detP.order());
        for (const PhasePoly& e : v)
            if (!e.is_zero())
                content = content.is_zero() ? make_monic(e) : poly_gcd(content, e);
        if (!content.is_constant()) {
            for (PhasePoly& e : v) {
                if (e.is_zero())
                    continue;
                auto q = exact_divide(e, content);
                if (!q)
                    throw InternalError("kernel content division failed");
                e = std::move(*q);
            }
        }
        for (const PhasePoly& e : v) {
            if (e.is_zero())
                continue;
            const RatFun& lc = e.leading_coeff();
            if (!lc.is_one()) {
                cert.record_param_divisor(lc.num(), ring);
                RatFun inv = lc.inverse();
                for (PhasePoly& w : v)
                    w = w.scaled(inv);
            }
            break;
        }
        // Production-path re-verification of the defining identity.
        for (std::size_t r = 0; r < M.rows(); ++r) {
            PhasePoly acc(detP.table(), detP.order());
            for (std::size_t c = 0; c < ncols; ++c)
                acc = acc + M.entries[r][c] * v[c];
            if (!weakly_zero(acc, M.modulus))
                throw InternalError("kernel vector fails M*v == 0 modulo the constraint ideal");
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

OrderPtr order_of(const QuotientMatrix& M) {
    for (const auto& row : M.entries)
        for (const auto& e : row)
            return e.order();
    throw DomainError("empty quotient matrix");
}

} // namespace

PhasePoly det_exact(const std::vector<std::vector<PhasePoly>>& A, const Ring& ring,
                    const OrderPtr& order) {
    const std::size_t n = A.size();
    if (n == 0)
        return ring.one(order);
    for (const auto& row : A)
        if (row.size() != n)
            throw DomainError("determinant of a non-square matrix");
    std::vector<std::vector<PhasePoly>> W = A;
    std::vector<std::size_t> arows, acols;
    for (std::size_t i = 0; i < n; ++i) {
        arows.push_back(i);
        acols.push_back(i);
    }
    int sign = 1;
    PhasePoly prev = ring.one(order);
    bool have_prev = false;
    while (!arows.empty()) {
        bool found = false;
        std::size_t best_ri = 0, best_ci = 0;
        for (std::size_t ci = 0; ci < acols.size() && true; ++ci) {
            for (std::size_t ri = 0; ri < arows.size(); ++ri) {
                const PhasePoly& e = W[arows[ri]][acols[ci]];
                if (e.is_zero())
                    continue;
                if (!found) {
                    found = true;
                    best_ri = ri;
                    best_ci = ci;
                } else {
                    const PhasePoly& b = W[arows[best_ri]][acols[best_ci]];
                    bool better = false;
                    if (e.term_count() != b.term_count())
                        better = e.term_count() < b.term_count();
                    else {
                        auto c = order->compare(e.leading_monomial(), b.leading_monomial());
                        if (c != 0)
                            better = c > 0;
                        else
                            better = acols[ci] < acols[best_ci] ||
                                     (acols[ci] == acols[best_ci] && arows[ri] < arows[best_ri]);
                    }
                    if (better) {
                        best_ri = ri;
                        best_ci = ci;
                    }
                }
            }
        }
        if (!found)
            return ring.zero(order); // a zero row/column remained
        if ((best_ri + best_ci) % 2 == 1)
            sign = -sign;
        std::size_t r0 = arows[best_ri], c0 = acols[best_ci];
        PhasePoly pivot = W[r0][c0];
        arows.erase(arows.begin() + static_cast<std::ptrdiff_t>(best_ri));
        acols.erase(acols.begin() + static_cast<std::ptrdiff_t>(best_ci));
        for (std::size_t r : arows) {
            for (std::size_t c : acols) {
                PhasePoly num = pivot * W[r][c] - W[r][c0] * W[r0][c];
                if (have_prev && !num.is_zero()) {
                    auto q = exact_divide(num, prev);
                    if (!q)
                        throw InternalError("Bareiss exact division failed in determinant");
                    W[r][c] = std::move(*q);
                } else {
                    W[r][c] = std::move(num);
                }
            }
        }
        prev = pivot;
        have_prev = true;
    }
    return sign < 0 ? -prev : prev;
}

int matrix_rank_mod(const QuotientMatrix& M, const Ring& ring, Certificate& cert) {
    if (M.rows() == 0 || M.cols() == 0)
        return 0;
    OrderPtr order = order_of(M);
    Elimination elim = bareiss(M.entries, M.modulus, true, order);
    auto vanishes = [&](const PhasePoly& p) { return weakly_zero(p, M.modulus); };
    for (const PhasePoly& p : elim.pivots_reduced)
        cert.record_phase_divisor(p, ring, vanishes);
    return static_cast<int>(elim.pivot_rows.size());
}

std::vector<std::vector<PhasePoly>> null_space_mod(const QuotientMatrix& M, const Ring& ring,
                                                   Certificate& cert) {
    if (M.rows() == 0 || M.cols() == 0)
        return {};
    OrderPtr order = order_of(M);
    Elimination elim = bareiss(M.entries, M.modulus, true, order);
    auto vanishes = [&](const PhasePoly& p) { return weakly_zero(p, M.modulus); };
    for (const PhasePoly& p : elim.pivots_reduced)
        cert.record_phase_divisor(p, ring, vanishes);
    return kernel_vectors(M, ring, cert, elim, order);
}

std::vector<std::vector<PhasePoly>> complement_space(
    const std::vector<std::vector<PhasePoly>>& P, std::size_t ambient,
    const GroebnerBasis* modulus, const Ring& ring, Certificate& cert) {
    if (P.empty()) {
        // Complement of nothing: the standard basis.
        throw DomainError("complement_space of an empty vector list is the ambient space; "
                          "callers must special-case it");
    }
    for (const auto& row : P)
        if (row.size() != ambient)
            throw DomainError("complement_space: vector width mismatch");
    QuotientMatrix M = make_quotient_matrix(P, modulus);
    OrderPtr order = order_of(M);
    Elimination elim = bareiss(M.entries, M.modulus, true, order);
    if (elim.pivot_rows.size() != P.size())
        throw DomainError("complement_space: input vectors are dependent modulo the ideal");
    auto vanishes = [&](const PhasePoly& p) { return weakly_zero(p, M.modulus); };
    for (const PhasePoly& p : elim.pivots_reduced)
        cert.record_phase_divisor(p, ring, vanishes);
    return kernel_vectors(M, ring, cert, elim, order);
}

std::vector<LocalizedExpression> solve_square_mod(const std::vector<std::vector<PhasePoly>>& C,
                                                  const std::vector<PhasePoly>& rhs,
                                                  const GroebnerBasis* modulus, const Ring& ring,
                                                  Certificate& cert) {
    const std::size_t n = C.size();
    if (n == 0)
        return {};
    if (rhs.size() != n)
        throw DomainError("solve_square_mod: size mismatch");
    OrderPtr order = rhs[0].order();
    auto reduce = [&](LocalizedExpression e) {
        if (modulus)
            return LocalizedExpression::make(nf(e.num, *modulus), e.den);
        return e;
    };
    std::vector<std::vector<LocalizedExpression>> A;
    std::vector<LocalizedExpression> b;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<LocalizedExpression> row;
        for (std::size_t j = 0; j < n; ++j)
            row.push_back(LocalizedExpression::from_poly(
                modulus ? nf(C[i][j], *modulus) : C[i][j], ring));
        A.push_back(std::move(row));
        b.push_back(LocalizedExpression::from_poly(modulus ? nf(rhs[i], *modulus) : rhs[i], ring));
    }
    std::vector<std::size_t> pivot_of_col(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    auto vanishes = [&](const PhasePoly& p) { return weakly_zero(p, modulus); };
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = SIZE_MAX;
        for (std::size_t r = 0; r < n; ++r) {
            if (used[r] || weakly_zero(A[r][col].num, modulus))
                continue;
            if (best == SIZE_MAX || A[r][col].num.term_count() < A[best][col].num.term_count())
                best = r;
        }
        if (best == SIZE_MAX)
            throw InternalError("solve_square_mod: matrix is weakly singular");
        used[best] = true;
        pivot_of_col[col] = best;
        LocalizedExpression p = A[best][col];
        cert.record_phase_divisor(p.num, ring, vanishes);
        for (std::size_t c = 0; c < n; ++c)
            A[best][c] = reduce(A[best][c] / p);
        b[best] = reduce(b[best] / p);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == best || weakly_zero(A[r][col].num, modulus))
                continue;
            LocalizedExpression f = A[r][col];
            for (std::size_t c = 0; c < n; ++c)
                A[r][c] = reduce(A[r][c] - f * A[best][c]);
            b[r] = reduce(b[r] - f * b[best]);
        }
    }
    std::vector<LocalizedExpression> x;
    x.reserve(n);
    for (std::size_t col = 0; col < n; ++col)
        x.push_back(b[pivot_of_col[col]]);
    return x;
}

MatrixInverse matrix_inverse_mod(const QuotientMatrix& C, const Ring& ring, Certificate& cert) {
    const std::size_t n = C.rows();
    if (n == 0)
        throw DomainError("inverse of an empty matrix");
    for (const auto& row : C.entries)
        if (row.size() != n)
            throw DomainError("inverse of a non-square matrix");
    OrderPtr order = order_of(C);
    PhasePoly det = det_exact(C.entries, ring, order);
    PhasePoly det_red = C.modulus ? nf(det, *C.modulus) : det;
    if (det_red.is_zero())
        throw InternalError("matrix is not invertible modulo the constraint ideal "
                            "(weakly vanishing determinant)");
    auto vanishes = [&](const PhasePoly& p) { return weakly_zero(p, C.modulus); };
    cert.record_phase_divisor(det_red, ring, vanishes);

    MatrixInverse inv{{}, det_red};
    inv.adj.assign(n, std::vector<PhasePoly>(n, ring.zero(order)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t r = 0; r < n; ++r)
                if (r != i)
                    rows.push_back(r);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j)
                    cols.push_back(c);
            PhasePoly m = det_exact(submatrix(C.entries, rows, cols), ring, order);
            if ((i + j) % 2 == 1)
                m = -m;
            // adjugate = transpose of the cofactor matrix
            inv.adj[j][i] = C.modulus ? nf(m, *C.modulus) : m;
        }
    }
    // Re-verify C * adj == det * I modulo the ideal on the production path.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            PhasePoly acc = ring.zero(order);
            for (std::size_t k = 0; k < n; ++k)
                acc = acc + C.entries[i][k] * inv.adj[k][j];
            if (i == j)
                acc = acc - inv.det;
            if (!weakly_zero(acc, C.modulus))
                throw InternalError("C * adj != det * I modulo the constraint ideal");
        }
    }
    return inv;
}

} // namespace dirac
