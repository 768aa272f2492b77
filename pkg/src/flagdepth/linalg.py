"""Exact linear algebra over the rationals and the integers.

Two families of helpers live here. The ``Fraction`` versions are used by the
public object model, where clarity matters more than speed. The ``int_*``
versions are the hot kernels of the depth engine and the polytope code; they
work on tuples of Python ints so that no rational normalisation happens in
inner loops.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

IntVec = tuple[int, ...]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve the square system ``a x = b``; ``None`` if singular."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [v / pv for v in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : rows v = 0}`` from the reduced row echelon form."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(v)
    return basis


# --- integer kernels -------------------------------------------------------


def common_denominator(values) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


def primitive(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries."""
    g = reduce(gcd, v, 0)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def int_dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        a, b, c = m
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_normal(vectors: Sequence[Sequence[int]]) -> IntVec:
    """Generalised cross product of ``k-1`` vectors in ``Z^k``.

    The result is orthogonal to every input and is the zero vector exactly
    when the inputs are linearly dependent.
    """
    k = len(vectors) + 1
    if k == 2:
        (v,) = vectors
        return (-v[1], v[0])
    if k == 3:
        a, b = vectors
        return (a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0])
    out = []
    for i in range(k):
        minor = [[row[j] for j in range(k) if j != i] for row in vectors]
        out.append((-1) ** (k - 1 + i) * int_det(minor))
    return tuple(out)


def int_rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return rank(vectors)


def int_nullvector(vectors: Sequence[Sequence[int]], k: int) -> IntVec:
    """A nonzero primitive integer vector orthogonal to all ``vectors``."""
    basis = nullspace(vectors, k)
    if not basis:
        raise ValueError("vectors span the whole space")
    v = basis[0]
    den = common_denominator(v)
    return primitive([int(x * den) for x in v])


def solve_int_system(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[IntVec, int] | None:
    """Solve ``rows y = rhs`` by Cramer's rule, returning ``(numerators, den)``.

    ``den`` is positive; ``None`` when the system is singular.
    """
    det = int_det(rows)
    if det == 0:
        return None
    n = len(rows)
    nums = []
    for i in range(n):
        m = [list(r) for r in rows]
        for r in range(n):
            m[r][i] = rhs[r]
        nums.append(int_det(m))
    if det < 0:
        det = -det
        nums = [-v for v in nums]
    g = reduce(gcd, nums, det)
    return tuple(v // g for v in nums), det // g
