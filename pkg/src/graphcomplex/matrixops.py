"""Exact sparse matrices over Q and rank computation.

Default rank path is fraction-free integer elimination (cross-multiply
and strip the row content) with Markowitz-style pivot selection; a
probabilistic fast path works modulo two large primes and certifies the
lower bound with one exact minor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


@dataclass
class SparseRationalMatrix:
    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def set(self, i: int, j: int, value: Fraction | int) -> None:
        value = Fraction(value)
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        if value:
            self.entries[(i, j)] = value
        else:
            self.entries.pop((i, j), None)

    def add(self, i: int, j: int, value: Fraction | int) -> None:
        self.set(i, j, self.entries.get((i, j), Fraction(0)) + Fraction(value))

    def get(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return len(self.entries)

    def matmul(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.cols} vs {other.rows}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        out = SparseRationalMatrix(self.rows, other.cols)
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in self.entries.items():
            for jj, w in by_row.get(j, ()):
                key = (i, jj)
                acc[key] = acc.get(key, Fraction(0)) + v * w
        for key, v in acc.items():
            if v:
                out.entries[key] = v
        return out

    def transpose(self) -> "SparseRationalMatrix":
        out = SparseRationalMatrix(self.cols, self.rows)
        for (i, j), v in self.entries.items():
            out.entries[(j, i)] = v
        return out

    def integer_rows(self) -> list[dict[int, int]]:
        """Rows scaled to integers with content removed (rank-preserving)."""
        rows: list[dict[int, int]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        out = []
        for row in rows:
            if not row:
                out.append({})
                continue
            denom = 1
            for v in row.values():
                denom = denom * v.denominator // gcd(denom, v.denominator)
            ints = {j: int(v * denom) for j, v in row.items()}
            content = 0
            for v in ints.values():
                content = gcd(content, abs(v))
            if content > 1:
                ints = {j: v // content for j, v in ints.items()}
            out.append(ints)
        return out


def exact_rank(m: SparseRationalMatrix) -> int:
    """Rank over Q by fraction-free integer elimination, Markowitz pivoting."""
    rows = [r for r in m.integer_rows() if r]
    rank = 0
    while rows:
        col_count: dict[int, int] = {}
        for row in rows:
            for j in row:
                col_count[j] = col_count.get(j, 0) + 1
        # Markowitz: minimize fill estimate (nnz(row)-1)*(nnz(col)-1)
        best = None
        for ri, row in enumerate(rows):
            r_fill = len(row) - 1
            for j, v in row.items():
                score = r_fill * (col_count[j] - 1)
                key = (score, abs(v).bit_length(), ri, j)
                if best is None or key < best[0]:
                    best = (key, ri, j)
        _, pri, pj = best
        pivot_row = rows.pop(pri)
        pivot_val = pivot_row[pj]
        rank += 1
        new_rows = []
        for row in rows:
            coef = row.get(pj)
            if coef is None:
                new_rows.append(row)
                continue
            combined: dict[int, int] = {}
            for j, v in row.items():
                if j == pj:
                    continue
                combined[j] = v * pivot_val
            for j, v in pivot_row.items():
                if j == pj:
                    continue
                combined[j] = combined.get(j, 0) - v * coef
            # integer cross-multiplication; content removal bounds growth
            content = 0
            for v in combined.values():
                if v:
                    content = gcd(content, abs(v))
            if content:
                new_rows.append(
                    {j: v // content for j, v in combined.items() if v}
                )
        rows = new_rows
    return rank


def rank_mod_prime(m: SparseRationalMatrix, p: int) -> tuple[int, list[tuple[int, int]]]:
    """Rank modulo p plus the pivot (row, col) positions used."""
    rows = []
    for i, raw in enumerate(m.integer_rows()):
        row = {j: v % p for j, v in raw.items() if v % p}
        if row:
            rows.append((i, row))
    rank = 0
    pivots: list[tuple[int, int]] = []
    while rows:
        i0, row0 = rows[0]
        pj = min(row0)
        inv = pow(row0[pj], -1, p)
        norm = {j: v * inv % p for j, v in row0.items()}
        pivots.append((i0, pj))
        rank += 1
        nxt = []
        for i, row in rows[1:]:
            c = row.get(pj)
            if c:
                row = {
                    j: v
                    for j in set(row) | set(norm)
                    if (v := (row.get(j, 0) - c * norm.get(j, 0)) % p)
                }
                row.pop(pj, None)
            if row:
                nxt.append((i, row))
        rows = nxt
    return rank, pivots


_PRIMES = (1073741827, 1073741831)  # two primes just above 2**30


def fast_rank(m: SparseRationalMatrix, seed: int = 0) -> int:
    """Two-prime modular rank, promoted after an exact minor spot check.

    The modular rank is a lower bound on the rational rank; agreement of
    two primes plus exact nonsingularity of one pivot minor certifies the
    lower bound exactly and makes an undetected drop require a third
    unlucky prime.  Falls back to full exact elimination on disagreement.
    """
    r1, pivots = rank_mod_prime(m, _PRIMES[0])
    r2, _ = rank_mod_prime(m, _PRIMES[1])
    if r1 != r2:
        return exact_rank(m)
    if r1 == 0:
        return 0
    rng = random.Random(seed)
    sample = pivots if len(pivots) <= 40 else rng.sample(pivots, 40)
    sel_rows = sorted({i for i, _ in sample})
    sel_cols = sorted({j for _, j in sample})
    sub = SparseRationalMatrix(len(sel_rows), len(sel_cols))
    rmap = {i: a for a, i in enumerate(sel_rows)}
    cmap = {j: a for a, j in enumerate(sel_cols)}
    for (i, j), v in m.entries.items():
        if i in rmap and j in cmap:
            sub.set(rmap[i], cmap[j], v)
    if exact_rank(sub) != len(sample):
        return exact_rank(m)
    return r1
