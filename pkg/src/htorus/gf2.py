"""Linear systems over GF(2) with rows packed into Python integers.

Bit ``j`` of a row is the coefficient of variable ``j``.  Elimination is plain
XOR on big integers, which CPython stores as arrays of machine words.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def bits_of(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Gf2System:
    """``A y = b`` over GF(2).

    The row-reduced form is computed once and cached together with the
    combination of original rows that produced each reduced row.  Zero rows of
    the reduced form give the left null space of ``A``, which is what makes
    repeated right-hand-side consistency checks cheap.
    """

    def __init__(self, n_vars: int, rows: Sequence[int] = (), rhs: Sequence[int] | int = 0):
        self.n_vars = n_vars
        self.rows: list[int] = [int(r) for r in rows]
        if isinstance(rhs, int):
            self.rhs = rhs
        else:
            self.rhs = 0
            for i, b in enumerate(rhs):
                if b & 1:
                    self.rhs |= 1 << i
        self._reduced = None

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def add_row(self, coeffs: int, b: int = 0) -> int:
        self.rows.append(int(coeffs))
        if b & 1:
            self.rhs |= 1 << (len(self.rows) - 1)
        self._reduced = None
        return len(self.rows) - 1

    def reduce(self) -> Gf2System:
        if self._reduced is not None:
            return self
        work = list(self.rows)
        combo = [1 << i for i in range(len(work))]
        pivots: list[tuple[int, int]] = []  # (column, row index)
        r = 0
        for col in range(self.n_vars):
            bit = 1 << col
            piv = None
            for i in range(r, len(work)):
                if work[i] & bit:
                    piv = i
                    break
            if piv is None:
                continue
            work[r], work[piv] = work[piv], work[r]
            combo[r], combo[piv] = combo[piv], combo[r]
            for i in range(len(work)):
                if i != r and work[i] & bit:
                    work[i] ^= work[r]
                    combo[i] ^= combo[r]
            pivots.append((col, r))
            r += 1
        self._reduced = (work, combo, pivots, r)
        return self

    @property
    def rank(self) -> int:
        return self.reduce()._reduced[3]

    @property
    def reduced_rows(self) -> list[int]:
        return list(self.reduce()._reduced[0][: self.rank])

    @property
    def pivot_columns(self) -> list[int]:
        return [c for c, _ in self.reduce()._reduced[2]]

    def left_null_space(self) -> list[int]:
        """Row-combination masks ``c`` with ``c^T A = 0`` (a basis)."""
        work, combo, _, rank = self.reduce()._reduced
        return combo[rank:]

    def is_consistent(self, rhs: int | None = None) -> bool:
        b = self.rhs if rhs is None else rhs
        return all(parity(c & b) == 0 for c in self.left_null_space())

    def solve(self, rhs: int | None = None) -> int | None:
        """One solution (free variables zero) or ``None`` if inconsistent."""
        b = self.rhs if rhs is None else rhs
        work, combo, pivots, rank = self.reduce()._reduced
        if not self.is_consistent(b):
            return None
        y = 0
        for col, r in pivots:
            if parity(combo[r] & b):
                y |= 1 << col
        return y

    def null_space(self) -> list[int]:
        """Basis of ``{y : A y = 0}``."""
        work, _, pivots, rank = self.reduce()._reduced
        pivot_cols = {c for c, _ in pivots}
        basis = []
        for free in range(self.n_vars):
            if free in pivot_cols:
                continue
            y = 1 << free
            for col, r in pivots:
                if (work[r] >> free) & 1:
                    y |= 1 << col
            basis.append(y)
        return basis

    def evaluate(self, y: int) -> int:
        """``A y`` packed as an integer over rows."""
        out = 0
        for i, row in enumerate(self.rows):
            if parity(row & y):
                out |= 1 << i
        return out

    def check(self, y: int, rhs: int | None = None) -> bool:
        b = self.rhs if rhs is None else rhs
        return self.evaluate(y) == b

    def sample_solutions(self, k: int, rng: random.Random, rhs: int | None = None) -> list[int]:
        """``k`` uniformly random solutions of the affine solution space."""
        y0 = self.solve(rhs)
        if y0 is None:
            return []
        basis = self.null_space()
        out = []
        for _ in range(k):
            y = y0
            for v in basis:
                if rng.getrandbits(1):
                    y ^= v
            out.append(y)
        return out
