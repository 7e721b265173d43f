"""Linear algebra helpers: Z/p^e matrices, exact determinants, ring matrices.

Everything here is exact.  Determinants are computed division-free (Bareiss
over the integers, Berkowitz over an arbitrary commutative ring) so results
are correct at full working precision with no valuation loss.
"""

from __future__ import annotations

from .errors import InternalError, ParameterError


def _val(c, p, cap):
    if c == 0:
        return cap
    v = 0
    while c % p == 0 and v < cap:
        c //= p
        v += 1
    return v


class ColumnSolver:
    """Solve sum_j x_j * col_j = b over Z/p^e, reusing one Smith-type reduction.

    Row and column transforms L, R with L*A*R = diag(p^{a_i}) are kept so
    repeated solves are cheap.
    """

    def __init__(self, columns, p, e):
        self.p = p
        self.e = e
        self.pe = p ** e
        self.nrows = len(columns[0]) if columns else 0
        self.ncols = len(columns)
        A = [[columns[j][i] % self.pe for j in range(self.ncols)]
             for i in range(self.nrows)]
        L = [[1 if i == j else 0 for j in range(self.nrows)] for i in range(self.nrows)]
        R = [[1 if i == j else 0 for j in range(self.ncols)] for i in range(self.ncols)]
        exps = []
        pe, pp = self.pe, self.p
        t = 0
        while t < min(self.nrows, self.ncols):
            best, bi, bj = e + 1, -1, -1
            for i in range(t, self.nrows):
                for j in range(t, self.ncols):
                    v = _val(A[i][j], pp, e)
                    if v < best:
                        best, bi, bj = v, i, j
            if bi < 0 or best >= e:
                break
            if bi != t:
                A[t], A[bi] = A[bi], A[t]
                L[t], L[bi] = L[bi], L[t]
            if bj != t:
                for row in A:
                    row[t], row[bj] = row[bj], row[t]
                for row in R:
                    row[t], row[bj] = row[bj], row[t]
            a = best
            pa = pp ** a
            unit = A[t][t] // pa
            uinv = pow(unit, -1, pe)
            A[t] = [(uinv * c) % pe for c in A[t]]
            L[t] = [(uinv * c) % pe for c in L[t]]
            for i in range(self.nrows):
                if i != t and A[i][t]:
                    factor = A[i][t] // pa
                    A[i] = [(A[i][j] - factor * A[t][j]) % pe for j in range(self.ncols)]
                    L[i] = [(L[i][j] - factor * L[t][j]) % pe for j in range(self.nrows)]
            for j in range(self.ncols):
                if j != t and A[t][j]:
                    factor = A[t][j] // pa
                    for row in A:
                        row[j] = (row[j] - factor * row[t]) % pe
                    for row in R:
                        row[j] = (row[j] - factor * row[t]) % pe
            exps.append(a)
            t += 1
        self.exps = exps
        self.L = L
        self.R = R

    def solve(self, b):
        """One solution x (list of ints mod p^e) of A x = b, or None."""
        pe, pp = self.pe, self.p
        y = []
        for i in range(self.nrows):
            Li = self.L[i]
            y.append(sum(Li[j] * b[j] for j in range(self.nrows)) % pe)
        z = [0] * self.ncols
        for i in range(self.nrows):
            if i < len(self.exps):
                pa = pp ** self.exps[i]
                if y[i] % pa:
                    return None
                z[i] = (y[i] // pa) % pe
            elif y[i] % pe:
                return None
        x = []
        for i in range(self.ncols):
            Ri = self.R[i]
            x.append(sum(Ri[j] * z[j] for j in range(self.ncols)) % pe)
        return x

    def kernel_log_size(self):
        """log_p of the number of solutions of A x = 0 over Z/p^e."""
        return sum(min(a, self.e) for a in self.exps) + self.e * (self.ncols - len(self.exps))


def solve_columns(columns, b, p, e):
    return ColumnSolver(columns, p, e).solve(b)


def kernel_log_size(columns, p, e):
    return ColumnSolver(columns, p, e).kernel_log_size()


def smith_exponents(columns, p, e):
    """Elementary divisor exponents of the column matrix over Z/p^e."""
    return list(ColumnSolver(columns, p, e).exps)


def det_bareiss(mat):
    """Exact integer determinant by fraction-free Gaussian elimination."""
    n = len(mat)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def det_berkowitz(mat, zero, one):
    """Division-free determinant over any commutative ring."""
    n = len(mat)
    if n == 0:
        return one
    if n == 1:
        return mat[0][0]

    def dot(u, v):
        acc = zero
        for a, b in zip(u, v):
            acc = acc + a * b
        return acc

    poly = [one, zero - mat[0][0]]
    for i in range(1, n):
        R = mat[i][:i]
        C = [mat[j][i] for j in range(i)]
        items = [one, zero - mat[i][i], zero - dot(R, C)]
        vec = C
        for _ in range(i - 1):
            vec = [dot(mat[j][:i], vec) for j in range(i)]
            items.append(zero - dot(R, vec))
        new = []
        for k in range(i + 2):
            acc = zero
            lo = max(0, k - (len(items) - 1))
            hi = min(k, len(poly) - 1)
            for j in range(lo, hi + 1):
                acc = acc + items[k - j] * poly[j]
            new.append(acc)
        poly = new
    det = poly[-1]
    return det if n % 2 == 0 else zero - det


def det_leibniz(mat, zero):
    """Permutation-expansion determinant; intended for n <= 5."""
    from itertools import permutations
    n = len(mat)
    if n == 0:
        raise ParameterError("empty matrix")
    acc = zero
    for perm in permutations(range(n)):
        inv = 0
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    inv += 1
        term = mat[0][perm[0]]
        for r in range(1, n):
            term = term * mat[r][perm[r]]
        acc = acc + term if inv % 2 == 0 else acc - term
    return acc


def ff_rank(rows):
    """Rank of a list of row vectors over a finite field (FFElem entries)."""
    rows = [list(r) for r in rows]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows))
                    if not rows[i][col].is_zero()), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [inv * c for c in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# matrices over a local ring context (entries are RingElem)

def rmat_id(ctx, n):
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def rmat_zero(ctx, rows, cols):
    return [[ctx.zero for _ in range(cols)] for _ in range(rows)]


def rmat_mul(A, B, ctx):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(rows):
        Ai = A[i]
        row = []
        for j in range(cols):
            acc = ctx.zero
            for k in range(inner):
                acc = acc + Ai[k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def rmat_vec(A, v, ctx):
    out = []
    for row in A:
        acc = ctx.zero
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out


def rmat_scale(A, s):
    return [[s * a for a in row] for row in A]


def rmat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def rmat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def rmat_eq(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def rmat_inv(A, ctx):
    """Inverse of a matrix over a local ring; requires unit pivots.

    Raises InternalError when the matrix is singular modulo the maximal ideal.
    """
    n = len(A)
    M = [row[:] for row in A]
    I = rmat_id(ctx, n)
    for col in range(n):
        piv = -1
        for i in range(col, n):
            if M[i][col].is_unit():
                piv = i
                break
        if piv < 0:
            raise InternalError("matrix over local ring is not invertible")
        M[col], M[piv] = M[piv], M[col]
        I[col], I[piv] = I[piv], I[col]
        inv = M[col][col].inv()
        M[col] = [inv * c for c in M[col]]
        I[col] = [inv * c for c in I[col]]
        for i in range(n):
            if i != col and not M[i][col].is_zero():
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
                I[i] = [a - f * b for a, b in zip(I[i], I[col])]
    return I
