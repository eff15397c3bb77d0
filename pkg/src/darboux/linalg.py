"""Exact linear algebra: labelled rational matrices and integer nullspaces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Hashable, Sequence, TypeVar

from .poly import Polynomial, graded_lex_key

__all__ = ["ExactMatrix", "kernel_basis", "rank", "echelon_rows", "bareiss_determinant", "normalize_vector"]

T = TypeVar("T")


@dataclass(frozen=True)
class ExactMatrix:
    """Sparse rational matrix with labelled rows and columns.

    ``rows`` holds one ``{column index: nonzero Fraction}`` dict per row.
    """

    rows: tuple[dict[int, Fraction], ...]
    row_labels: tuple[Hashable, ...]
    col_labels: tuple[Hashable, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != len(self.row_labels):
            raise ValueError("row label count mismatch")
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("row labels must be unique")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("column labels must be unique")
        ncols = len(self.col_labels)
        for r in self.rows:
            if any(not 0 <= j < ncols for j in r):
                raise ValueError("column index out of range")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.col_labels)

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence], row_labels=None, col_labels=None) -> "ExactMatrix":
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else (len(col_labels) if col_labels else 0)
        rows = tuple({j: Fraction(v) for j, v in enumerate(row) if v} for row in entries)
        return cls(
            rows,
            tuple(row_labels) if row_labels is not None else tuple(range(nrows)),
            tuple(col_labels) if col_labels is not None else tuple(range(ncols)),
        )

    @classmethod
    def from_images(cls, images: Sequence[Polynomial], col_labels: Sequence[Hashable]) -> "ExactMatrix":
        """Matrix whose column ``j`` is the coefficient vector of ``images[j]``.

        Rows are the monomials occurring in any image, in descending
        graded-lex order, labelled by their exponent tuples.
        """
        monos: set = set()
        for im in images:
            monos.update(e for e, _ in im.items())
        order = sorted(monos, key=graded_lex_key, reverse=True)
        index = {e: i for i, e in enumerate(order)}
        rows: list[dict[int, Fraction]] = [{} for _ in order]
        for j, im in enumerate(images):
            for e, c in im.items():
                rows[index[e]][j] = c
        return cls(tuple(rows), tuple(order), tuple(col_labels))

    def to_dense(self) -> list[list[Fraction]]:
        n = len(self.col_labels)
        return [[r.get(j, Fraction(0)) for j in range(n)] for r in self.rows]

    def scale_rows(self, factors: Sequence[Fraction]) -> "ExactMatrix":
        rows = tuple({j: v * f for j, v in r.items()} for r, f in zip(self.rows, factors))
        return ExactMatrix(rows, self.row_labels, self.col_labels)

    def apply(self, v: Sequence) -> list[Fraction]:
        return [sum((c * v[j] for j, c in r.items()), Fraction(0)) for r in self.rows]


def _integer_row(r: dict[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in r.values():
        den = lcm(den, v.denominator)
    out = {j: int(v * den) for j, v in r.items()}
    return _primitive(out)


def _primitive(r: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return r
    if g > 1:
        return {j: v // g for j, v in r.items()}
    return r


def echelon_rows(M: ExactMatrix) -> tuple[list[dict[int, int]], list[int]]:
    """Fraction-free row echelon form.

    Rows are cleared to integers and kept primitive (content 1) after every
    update.  Pivot rule: columns are scanned left to right, and the pivot is
    the first remaining row, in construction order, with a nonzero entry.
    Returns ``(pivot rows, pivot columns)``.
    """
    pending = [_integer_row(r) for r in M.rows if r]
    pivots: list[dict[int, int]] = []
    pcols: list[int] = []
    ncols = len(M.col_labels)
    for col in range(ncols):
        if not pending:
            break
        k = next((i for i, r in enumerate(pending) if r.get(col)), None)
        if k is None:
            continue
        prow = pending.pop(k)
        p = prow[col]
        nxt = []
        for r in pending:
            a = r.get(col)
            if a:
                g = gcd(a, p)
                mp, ma = p // g, a // g
                new = {j: v * mp for j, v in r.items()}
                for j, v in prow.items():
                    w = new.get(j, 0) - ma * v
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
                if new:
                    nxt.append(_primitive(new))
            else:
                nxt.append(r)
        pending = nxt
        pivots.append(prow)
        pcols.append(col)
    return pivots, pcols


def rank(M: ExactMatrix) -> int:
    return len(echelon_rows(M)[1])


def normalize_vector(v: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Integer multiple with content 1 and positive first nonzero entry."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


def kernel_basis(M: ExactMatrix) -> list[tuple[int, ...]]:
    """Basis of the right nullspace, one vector per free column.

    The vector for free column ``f`` has a 1 in position ``f``, zeros in the
    other free positions, and is then scaled to primitive integers with a
    positive leading entry.  This is the reduced-echelon basis, so it depends
    only on the row space of ``M``.
    """
    ncols = len(M.col_labels)
    prows, pcols = echelon_rows(M)
    pivot_set = set(pcols)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        x: dict[int, Fraction] = {f: Fraction(1)}
        for r, pc in zip(reversed(prows), reversed(pcols)):
            s = Fraction(0)
            for j, v in r.items():
                if j != pc:
                    xj = x.get(j)
                    if xj:
                        s += v * xj
            if s:
                x[pc] = -s / r[pc]
        basis.append(normalize_vector([x.get(j, Fraction(0)) for j in range(ncols)]))
    return basis


def bareiss_determinant(
    entries: Sequence[Sequence[T]],
    zero: T,
    one: T,
    divide: Callable[[T, T], T],
) -> T:
    """Determinant over an integral domain by Bareiss' fraction-free scheme.

    ``divide(a, b)`` must return the exact quotient.  A zero pivot is
    replaced by swapping in the first lower row with a nonzero entry.
    """
    A = [list(r) for r in entries]
    n = len(A)
    if n == 0:
        return one
    if any(len(r) != n for r in A):
        raise ValueError("matrix is not square")
    sign = 1
    prev = one
    for k in range(n - 1):
        if A[k][k] == zero:
            swap = next((i for i in range(k + 1, n) if A[i][k] != zero), None)
            if swap is None:
                return zero
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        pk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                num = pk * A[i][j] - aik * A[k][j]
                A[i][j] = divide(num, prev) if num != zero else zero
        prev = pk
    det = A[n - 1][n - 1]
    return det if sign > 0 else zero - det
