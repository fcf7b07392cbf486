"""Exact integer linear algebra.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so
everything is hashable and arbitrary precision.  Nothing here touches floats;
the few places that need division go through :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import NoPositiveGrading

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


def vec(xs: Iterable[int]) -> IntVector:
    return tuple(int(x) for x in xs)


def mat(rows: Iterable[Iterable[int]]) -> IntMatrix:
    return tuple(vec(r) for r in rows)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: int, u: Sequence[int]) -> IntVector:
    return tuple(c * a for a in u)


def neg(u: Sequence[int]) -> IntVector:
    return tuple(-a for a in u)


def zero(n: int) -> IntVector:
    return (0,) * n


def unit_vector(n: int, i: int) -> IntVector:
    return tuple(1 if k == i else 0 for k in range(n))


def identity(n: int) -> IntMatrix:
    return tuple(unit_vector(n, i) for i in range(n))


def transpose(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def mat_vec(A: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(dot(row, v) for row in A)


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def columns_to_matrix(cols: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
    """Matrix whose columns are ``cols`` (shape ``nrows x len(cols)``)."""
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(zip(*cols))


def content(v: Sequence) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v: Sequence) -> IntVector:
    """Primitive integer vector on the ray through ``v`` (accepts Fractions)."""
    if any(type(x) is not int for x in v):
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        v = [int(Fraction(x) * den) for x in v]
    g = content(v)
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


# ---------------------------------------------------------------------------
# normal forms


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Return ``(U, D, V)`` with ``U A V = D``, ``U`` and ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.  ``ncols``
    is only needed when ``A`` has no rows.
    """
    return _snf(tuple(tuple(r) for r in A), None if A else ncols)


@lru_cache(maxsize=4096)
def _snf(A, ncols):
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (D, U):
            rs, rd = M[src], M[dst]
            for k in range(len(rd)):
                rd[k] += q * rs[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return mat(U), mat(D), mat(V)


def hermite_normal_form(rows: Iterable[Sequence[int]], n: Optional[int] = None) -> IntMatrix:
    """Row-style HNF of the lattice spanned by ``rows``; zero rows dropped.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.
    The result is a canonical basis of the row lattice.
    """
    A = [list(map(int, r)) for r in rows]
    if n is None:
        n = len(A[0]) if A else 0
    out: list[list[int]] = []
    r = 0
    for c in range(n):
        # gcd-reduce column c over rows r..
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i0] = A[i0], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    done = done and A[i][c] == 0
            if done:
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    out = A[:r]
    return mat(out)


def hnf_pivots(H: Sequence[Sequence[int]]) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in H]


def reduce_mod_lattice(v: Sequence[int], H: Sequence[Sequence[int]]) -> IntVector:
    """Canonical representative of ``v`` modulo the lattice with HNF basis ``H``."""
    v = list(v)
    for row, p in zip(H, hnf_pivots(H)):
        q = v[p] // row[p]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


def rank(A: Sequence[Sequence[int]]) -> int:
    return len(hermite_normal_form(A)) if A else 0


def kernel_basis(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> list[IntVector]:
    """Integer basis of ``{x : A x = 0}``."""
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return list(identity(n))
    _, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    Vt = transpose(V)
    return [tuple(col) for col in Vt[r:]]


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int], ncols: Optional[int] = None):
    """Some integer ``x`` with ``A x = b``, or ``None``."""
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    if m == 0:
        return zero(n)
    U, D, V = smith_normal_form(A)
    c = mat_vec(U, b)
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return mat_vec(V, y)


def det(A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return int(d)


def inverse(A: Sequence[Sequence[int]]) -> Optional[tuple[tuple[Fraction, ...], ...]]:
    """Exact rational inverse of a square matrix, ``None`` if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def integer_inverse(A: Sequence[Sequence[int]]) -> Optional[IntMatrix]:
    """Inverse of a unimodular matrix, ``None`` if ``A`` is not unimodular."""
    inv = inverse(A)
    if inv is None or any(x.denominator != 1 for row in inv for x in row):
        return None
    return tuple(tuple(int(x) for x in row) for row in inv)


# ---------------------------------------------------------------------------
# sublattices


def saturate_lattice(vectors: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """HNF basis of ``span_Q(vectors) ∩ Z^n``."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return ()
    perp = kernel_basis(vectors)
    if not perp:
        return identity(n)
    return hermite_normal_form(kernel_basis(perp), n)


def lattice_intersection(B1: Sequence[Sequence[int]], B2: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """HNF basis of the intersection of two lattices given by basis rows."""
    if not B1 or not B2:
        return ()
    k1 = len(B1)
    # columns: B1 rows then -B2 rows
    cols = [tuple(b) for b in B1] + [neg(b) for b in B2]
    K = kernel_basis(columns_to_matrix(cols, n))
    out = []
    for x in K:
        out.append(tuple(sum(x[i] * B1[i][j] for i in range(k1)) for j in range(n)))
    return hermite_normal_form(out, n)


def lattice_contains(H: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the lattice with HNF basis ``H``."""
    return not any(reduce_mod_lattice(v, H))


def coordinates(B: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[IntVector]:
    """Integer coordinates of ``v`` in the basis rows ``B``; ``None`` if outside."""
    if not B:
        return () if not any(v) else None
    return solve_integer(transpose(B), v)


def unimodular_completion(L: Sequence[Sequence[int]], n: int) -> tuple[IntMatrix, IntMatrix]:
    """Change of basis splitting off a saturated sublattice.

    Returns ``(P, Pinv)`` unimodular such that ``y = P x`` puts the lattice
    spanned by ``L`` onto the first ``len(L)`` coordinates.  ``L`` must be
    saturated.
    """
    k = len(L)
    if k == 0:
        return identity(n), identity(n)
    U, D, V = smith_normal_form(columns_to_matrix(L, n))
    if any(D[i][i] != 1 for i in range(k)):
        raise ValueError("sublattice is not saturated")
    return U, integer_inverse(U)


def unimodular_maps(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], n: int):
    """Yield every ``psi`` in ``GL_n(Z)`` mapping the finite set ``A`` onto ``B``.

    ``A`` must span ``Q^n``; ``psi`` is pinned down by the images of a basis
    chosen from ``A``, so only injective assignments of that basis are tried.
    """
    A = sorted(set(map(tuple, A)))
    B = sorted(set(map(tuple, B)))
    if len(A) != len(B):
        return
    if n == 0:
        yield ()
        return
    basis: list[IntVector] = []
    for a in A:
        if rank(basis + [a]) > len(basis):
            basis.append(a)
        if len(basis) == n:
            break
    if len(basis) < n:
        raise ValueError("vector set does not span")
    Xinv = inverse(columns_to_matrix(basis, n))
    target = set(B)
    for imgs in itertools.permutations(B, n):
        Y = columns_to_matrix(imgs, n)
        psi = [[sum(Y[i][k] * Xinv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        if any(x.denominator != 1 for row in psi for x in row):
            continue
        psi = tuple(tuple(int(x) for x in row) for row in psi)
        if abs(det(psi)) != 1:
            continue
        if {mat_vec(psi, a) for a in A} == target:
            yield psi


# ---------------------------------------------------------------------------
# nonnegative integer feasibility


@lru_cache(maxsize=4096)
def _unit_data(units: IntMatrix, n: int):
    """Lattice solver for the zero-grade generators plus a strictly positive relation."""
    if not units:
        return None, (), ()
    from .polyhedral import cone_from_inequalities

    cols = columns_to_matrix(units, n)
    K = kernel_basis(cols, len(units))
    if not K:
        return cols, None, None
    # x = K^T y with x >= 0: rays of {y : K^T_i . y >= 0}
    Kt = transpose(K)
    lines, rays = cone_from_inequalities(len(K), Kt)
    z = [0] * len(units)
    for r in rays:
        x = mat_vec(Kt, r)
        z = [a + b for a, b in zip(z, x)]
    if any(c <= 0 for c in z):
        return cols, None, None
    return cols, tuple(z), hermite_normal_form(units, n)


def solve_nonneg(G: Sequence[Sequence[int]], v: Sequence[int], grading: Optional[Sequence[int]]):
    """Find ``x`` in ``N^len(G)`` with ``sum x_i G_i = v``, or return ``None``.

    ``grading`` must be nonnegative on every generator, and the generators of
    grade zero must generate a group.  Positive-grade multiplicities are then
    bounded by ``grading . v`` and the search below is exhaustive.
    """
    G = [tuple(g) for g in G]
    v = tuple(v)
    n = len(v)
    if grading is None or len(grading) != n:
        raise NoPositiveGrading("a grading functional is required")
    grades = [dot(grading, g) for g in G]
    if any(d < 0 for d in grades):
        raise NoPositiveGrading("grading is negative on a generator")
    units_idx = [i for i, d in enumerate(grades) if d == 0 and any(G[i])]
    pos_idx = [i for i, d in enumerate(grades) if d > 0]
    units = tuple(G[i] for i in units_idx)
    cols, relation, H = _unit_data(units, n)
    if units and relation is None:
        raise NoPositiveGrading("zero-grade generators do not form a group")
    target = dot(grading, v)
    if target < 0:
        return None

    failed: set = set()
    pos = [G[i] for i in pos_idx]
    pos_grades = [grades[i] for i in pos_idx]

    def residual_ok(rem):
        if not units:
            return not any(rem)
        return not any(reduce_mod_lattice(rem, H))

    def search(i, rem, budget):
        if budget == 0:
            return [0] * (len(pos) - i) if residual_ok(rem) else None
        if i == len(pos):
            return None
        key = (i, rem)
        if key in failed:
            return None
        g, d = pos[i], pos_grades[i]
        for c in range(budget // d + 1):
            rest = search(i + 1, tuple(a - c * b for a, b in zip(rem, g)), budget - c * d)
            if rest is not None:
                return [c] + rest
        failed.add(key)
        return None

    coeffs = search(0, v, target)
    if coeffs is None:
        return None
    x = [0] * len(G)
    for i, c in zip(pos_idx, coeffs):
        x[i] = c
    if units:
        rem = sub(v, tuple(sum(x[i] * G[i][k] for i in range(len(G))) for k in range(n)))
        y = solve_integer(cols, rem)
        shift = max([0] + [(-yi + zi - 1) // zi for yi, zi in zip(y, relation) if yi < 0])
        for i, yi, zi in zip(units_idx, y, relation):
            x[i] = yi + shift * zi
    return tuple(x)
