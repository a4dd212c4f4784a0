"""Small exact matrices over the Gaussian rationals.

Matrices are tuples of tuples of GaussRat.  Only what the spin-1/2
representation checks require: products, sums, scaling, commutators.
"""

from __future__ import annotations

from .exact import GR_I, GR_ONE, GR_ZERO, GaussRat

Mat = tuple[tuple[GaussRat, ...], ...]


def mat(rows) -> Mat:
    return tuple(tuple(GaussRat.coerce(v) for v in row) for row in rows)


def mmul(a: Mat, b: Mat) -> Mat:
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(
            sum((a[i][t] * b[t][j] for t in range(k)), GR_ZERO)
            for j in range(m)
        )
        for i in range(n)
    )


def madd(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def msub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mscale(c, a: Mat) -> Mat:
    c = GaussRat.coerce(c) if not isinstance(c, GaussRat) else c
    return tuple(tuple(c * x for x in row) for row in a)


def meq(a: Mat, b: Mat) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mzero(n: int, m: int | None = None) -> Mat:
    m = n if m is None else m
    return tuple(tuple(GR_ZERO for _ in range(m)) for _ in range(n))


def meye(n: int) -> Mat:
    return tuple(
        tuple(GR_ONE if i == j else GR_ZERO for j in range(n))
        for i in range(n)
    )


def commutator(a: Mat, b: Mat) -> Mat:
    return msub(mmul(a, b), mmul(b, a))


PAULI: dict[int, Mat] = {
    1: mat([[0, 1], [1, 0]]),
    2: ((GR_ZERO, -GR_I), (GR_I, GR_ZERO)),
    3: mat([[1, 0], [0, -1]]),
}

# Spin-1/2 generators T_a = sigma_a / 2, the faithful rep used as an
# independent oracle for the abstract generator algebra.
SPIN: dict[int, Mat] = {a: mscale(GaussRat(1, 0, 2), PAULI[a]) for a in (1, 2, 3)}
