"""Small dense exact linear algebra over Fraction.

Matrices are lists of lists of Fractions (rows).  Sizes in this package are
tiny (block matrices of total dimension <= ~15), so plain Gaussian elimination
with exact pivoting is both fast enough and free of numerical questions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exactgeom import format_rational, parse_rational

Matrix = List[List[Fraction]]


class SingularMatrix(ValueError):
    pass


def mat(rows) -> Matrix:
    return [[parse_rational(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def shape(a: Matrix) -> Tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(
        a[i][j] == b[i][j] for i in range(len(a)) for j in range(len(a[0]) if a else 0)
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Matrix) -> Matrix:
    c = parse_rational(c)
    return [[c * x for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ma, na = shape(a)
    mb, nb = shape(b)
    if na != mb:
        raise ValueError(f"shape mismatch: {shape(a)} @ {shape(b)}")
    out = zeros(ma, nb)
    for i in range(ma):
        rai = a[i]
        oi = out[i]
        for k in range(na):
            x = rai[k]
            if x == 0:
                continue
            rbk = b[k]
            for j in range(nb):
                oi[j] += x * rbk[j]
    return out


def mat_chain(*ms: Matrix) -> Matrix:
    """Product m1 @ m2 @ ... (rightmost acts first on column vectors)."""
    out = ms[0]
    for m in ms[1:]:
        out = mat_mul(out, m)
    return out


def transpose(a: Matrix) -> Matrix:
    m, n = shape(a)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def det(a: Matrix) -> Fraction:
    m, n = shape(a)
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    a = [row[:] for row in a]
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        result *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            f = a[r][col] * inv
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def rank(a: Matrix) -> int:
    m, n = shape(a)
    a = [row[:] for row in a]
    rk = 0
    for col in range(n):
        piv = next((r for r in range(rk, m) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = 1 / a[rk][col]
        for r in range(m):
            if r != rk and a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[rk])]
        rk += 1
        if rk == m:
            break
    return rk


def inverse(a: Matrix) -> Matrix:
    m, n = shape(a)
    if m != n:
        raise ValueError("inverse of a non-square matrix")
    a = [row[:] + irow[:] for row, irow in zip(a, identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve(a: Matrix, b: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One solution of A x = b, or None if inconsistent (A need not be square)."""
    m, n = shape(a)
    aug = [list(row) + [parse_rational(v)] for row, v in zip(a, b)]
    pivots: List[Tuple[int, int]] = []
    rk = 0
    for col in range(n):
        piv = next((r for r in range(rk, m) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[rk], aug[piv] = aug[piv], aug[rk]
        inv = 1 / aug[rk][col]
        aug[rk] = [x * inv for x in aug[rk]]
        for r in range(m):
            if r != rk and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[rk])]
        pivots.append((rk, col))
        rk += 1
    for r in range(rk, m):
        if aug[r][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in pivots:
        x[c] = aug[r][n]
    return x


def charpoly(a: Matrix) -> List[Fraction]:
    """Coefficients of det(tI - A), descending: [1, c_1, ..., c_n].

    Faddeev-LeVerrier recursion, exact over Fraction.
    """
    m, n = shape(a)
    if m != n:
        raise ValueError("characteristic polynomial of a non-square matrix")
    coeffs = [Fraction(1)]
    mk = identity(n)
    for k in range(1, n + 1):
        mk = mat_mul(a, mk)
        ck = -Fraction(sum(mk[i][i] for i in range(n)), k)
        coeffs.append(ck)
        for i in range(n):
            mk[i][i] += ck
    return coeffs


# -- block matrices ---------------------------------------------------------

def block_matrix(order: Sequence[str], dims: Dict[str, int],
                 block: Callable[[str, str], Optional[Matrix]]) -> Matrix:
    """Assemble a square block matrix over the given label order.

    ``block(src, tgt)`` returns the (tgt, src) block or None for a zero block;
    diagonal blocks default to identity when block() returns None for them.
    """
    total = sum(dims[l] for l in order)
    offset: Dict[str, int] = {}
    at = 0
    for l in order:
        offset[l] = at
        at += dims[l]
    out = zeros(total, total)
    for src in order:
        for tgt in order:
            blk = block(src, tgt)
            if blk is None:
                if src == tgt:
                    blk = identity(dims[src])
                else:
                    continue
            for i in range(dims[tgt]):
                for j in range(dims[src]):
                    out[offset[tgt] + i][offset[src] + j] = blk[i][j]
    return out


def block_of(full: Matrix, order: Sequence[str], dims: Dict[str, int],
             src: str, tgt: str) -> Matrix:
    offset: Dict[str, int] = {}
    at = 0
    for l in order:
        offset[l] = at
        at += dims[l]
    return [[full[offset[tgt] + i][offset[src] + j] for j in range(dims[src])]
            for i in range(dims[tgt])]


# -- JSON helpers -----------------------------------------------------------

def mat_to_obj(a: Matrix) -> list:
    return [[format_rational(x) for x in row] for row in a]


def mat_from_obj(obj) -> Matrix:
    return mat(obj)
