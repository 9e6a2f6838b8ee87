"""Exact rational linear algebra on sparse matrices.

Scalars are :class:`fractions.Fraction`.  Vectors are plain lists of
fractions (dense) or dicts ``{index: Fraction}`` (sparse); both are accepted
wherever a vector is expected.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Scalar = Fraction


def as_scalar(value) -> Fraction:
    """Coerce ``int``, ``Fraction`` or a string such as ``"-2/3"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact scalar")


def fmt_scalar(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class SparseMatrix:
    """Immutable rational matrix storing only nonzero entries."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            q = as_scalar(v)
            if q:
                clean[(i, j)] = q
        self._entries = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]], cols: int | None = None) -> "SparseMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(rows, cols, {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v})

    @classmethod
    def from_row_dicts(cls, rows: Sequence[Mapping[int, object]], cols: int) -> "SparseMatrix":
        return cls(len(rows), cols, {(i, j): v for i, r in enumerate(rows) for j, v in r.items()})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._entries)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._entries.get(key, Fraction(0))

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def matvec(self, vec) -> list[Fraction]:
        v = _dense(vec, self.cols)
        out = [Fraction(0)] * self.rows
        for (i, j), a in self._entries.items():
            if v[j]:
                out[i] += a * v[j]
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        by_row = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row[k].items():
                acc[(i, j)] = acc.get((i, j), Fraction(0)) + a * b
        return SparseMatrix(self.rows, other.cols, acc)

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, Fraction(0)) + sign * v
        return SparseMatrix(self.rows, self.cols, acc)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, -1)

    def scale(self, c) -> "SparseMatrix":
        c = as_scalar(c)
        return SparseMatrix(self.rows, self.cols, {k: c * v for k, v in self._entries.items()})

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._entries) == (other.rows, other.cols, other._entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}, {self.cols}, nnz={len(self._entries)})"


def _dense(vec, n: int) -> list[Fraction]:
    if isinstance(vec, Mapping):
        out = [Fraction(0)] * n
        for i, v in vec.items():
            out[i] = as_scalar(v)
        return out
    if len(vec) != n:
        raise ValueError(f"vector length {len(vec)} does not match {n}")
    return [as_scalar(v) for v in vec]


class RowReducer:
    """Incrementally maintained reduced row echelon form.

    Pivots are chosen at the smallest column index of each reduced row, so
    callers control pivot preference through the column numbering.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out = {k: v for k, v in row.items() if v}
        for p in [c for c in out if c in self.pivots]:
            c = out.get(p)
            if not c:
                continue
            for k, v in self.pivots[p].items():
                nv = out.get(k, 0) - c * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def insert(self, row: Mapping[int, Fraction]) -> bool:
        """Add a row; return True when it was independent of the current span."""
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        for q, prow in self.pivots.items():
            c = prow.get(p)
            if c:
                for k, v in r.items():
                    nv = prow.get(k, 0) - c * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        self.pivots[p] = r
        return True

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(row)

    def basis(self) -> list[dict[int, Fraction]]:
        return [dict(self.pivots[p]) for p in sorted(self.pivots)]


def _reducer_for(m: SparseMatrix) -> RowReducer:
    red = RowReducer()
    for r in m.row_dicts():
        if r:
            red.insert(r)
    return red


def rank(m: SparseMatrix) -> int:
    return _reducer_for(m).rank


def kernel_basis(m: SparseMatrix) -> list[list[Fraction]]:
    """Basis of the right null space, one free column per vector."""
    red = _reducer_for(m)
    out = []
    for f in range(m.cols):
        if f in red.pivots:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for p, row in red.pivots.items():
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def solve(m: SparseMatrix, rhs) -> list[Fraction] | None:
    """Return some x with m x = rhs, or None when the system is inconsistent."""
    if isinstance(rhs, Mapping):
        if any(not (0 <= i < m.rows) for i in rhs):
            raise ValueError("rhs index out of range")
        b = _dense(rhs, m.rows)
    else:
        if len(rhs) != m.rows:
            raise ValueError(f"rhs has length {len(rhs)}, matrix has {m.rows} rows")
        b = [as_scalar(v) for v in rhs]
    aug = m.cols
    red = RowReducer()
    for i, r in enumerate(m.row_dicts()):
        row = dict(r)
        if b[i]:
            row[aug] = b[i]
        if row:
            red.insert(row)
    if aug in red.pivots:
        return None
    x = [Fraction(0)] * m.cols
    for p, row in red.pivots.items():
        x[p] = row.get(aug, Fraction(0))
    if m.matvec(x) != b:
        raise ArithmeticError("solution failed re-substitution")
    return x


def span_basis(vectors: Iterable[Mapping[int, Fraction]]) -> list[dict[int, Fraction]]:
    red = RowReducer()
    for v in vectors:
        red.insert(v)
    return red.basis()


def intersect_with_coordinates(vectors: Sequence[Mapping[int, Fraction]], allowed: set[int]) -> list[dict[int, Fraction]]:
    """Basis of span(vectors) intersected with the coordinate subspace ``allowed``."""
    # pivot on forbidden coordinates first so the tail rows live in ``allowed``
    forbidden = sorted({k for v in vectors for k in v if k not in allowed})
    relabel = {c: i for i, c in enumerate(forbidden)}
    start = len(forbidden)
    ok = sorted({k for v in vectors for k in v if k in allowed})
    relabel.update({c: start + i for i, c in enumerate(ok)})
    back = {i: c for c, i in relabel.items()}
    red = RowReducer()
    for v in vectors:
        red.insert({relabel[k]: c for k, c in v.items()})
    return [{back[k]: c for k, c in row.items()} for p, row in sorted(red.pivots.items()) if p >= start]
