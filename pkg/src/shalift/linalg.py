"""Sparse exact matrices and row reduction.

Matrices follow the column-by-input convention: the matrix of a map sends
input basis vector ``j`` to column ``j``.  Storage is a dict of sparse rows;
zero entries are never stored.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .field import Field

Vector = dict  # sparse vector: index -> nonzero scalar


class ShapeError(ValueError):
    pass


def _axpy(target: dict, a, src: dict, field: Field) -> None:
    """target += a * src, in place, dropping zeros."""
    red = field.reduce
    for k, v in src.items():
        nv = red(target.get(k, 0) + a * v)
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: dict | None = None):
        if nrows < 0 or ncols < 0:
            raise ShapeError("negative matrix dimension")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        # caller guarantees entries are reduced and nonzero
        self._rows: dict[int, dict[int, object]] = rows if rows is not None else {}

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int, scale=1) -> Matrix:
        s = field.reduce(scale)
        if not s:
            return cls(field, n, n)
        return cls(field, n, n, {i: {i: s} for i in range(n)})

    @classmethod
    def from_entries(cls, field: Field, nrows: int, ncols: int, entries) -> Matrix:
        """Build from an iterable or dict of ((row, col), value); duplicates add."""
        rows: dict[int, dict[int, object]] = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for (i, j), v in items:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ShapeError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            r = rows.setdefault(i, {})
            nv = field.reduce(r.get(j, 0) + v)
            if nv:
                r[j] = nv
            else:
                r.pop(j, None)
        return cls(field, nrows, ncols, {i: r for i, r in rows.items() if r})

    @classmethod
    def from_dense(cls, field: Field, data: Sequence[Sequence], nrows: int | None = None,
                   ncols: int | None = None) -> Matrix:
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if len(data) != nrows:
            raise ShapeError(f"expected {nrows} rows, got {len(data)}")
        rows = {}
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ShapeError(f"row {i} has {len(row)} entries, expected {ncols}")
            r = {}
            for j, v in enumerate(row):
                v = field.reduce(v)
                if v:
                    r[j] = v
            if r:
                rows[i] = r
        return cls(field, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[dict]) -> Matrix:
        rows: dict[int, dict[int, object]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        return cls(field, nrows, len(columns), rows)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows.get(i, {}).get(j, 0)

    def row(self, i: int) -> dict:
        return dict(self._rows.get(i, {}))

    def rows(self) -> Iterator[tuple[int, dict]]:
        for i in sorted(self._rows):
            yield i, self._rows[i]

    def column(self, j: int) -> dict:
        return {i: r[j] for i, r in self._rows.items() if j in r}

    def columns(self) -> list[dict]:
        cols: list[dict] = [{} for _ in range(self.ncols)]
        for i, r in self._rows.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def entries(self) -> Iterator[tuple[int, int, object]]:
        for i in sorted(self._rows):
            r = self._rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in self._rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 64:
            body = "; ".join(" ".join(self.field.format(v) for v in row) for row in self.to_dense())
            return f"Matrix({self.nrows}x{self.ncols} [{body}])"
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(self.entries())))

    # arithmetic ---------------------------------------------------------

    def _check_same(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if not other._rows:
            return self
        if not self._rows:
            return other
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            t = rows.setdefault(i, {})
            _axpy(t, 1, r, self.field)
            if not t:
                del rows[i]
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + other.scale(-1)

    def scale(self, c) -> Matrix:
        c = self.field.reduce(c)
        if not c:
            return Matrix(self.field, self.nrows, self.ncols)
        if c == 1:
            return self
        red = self.field.reduce
        rows = {i: {j: red(v * c) for j, v in r.items()} for i, r in self._rows.items()}
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot compose {self.shape} @ {other.shape}")
        out: dict[int, dict[int, object]] = {}
        if self._rows and other._rows:
            orows = other._rows
            red = self.field.reduce
            for i, r in self._rows.items():
                acc: dict[int, object] = {}
                for k, a in r.items():
                    ok = orows.get(k)
                    if ok is None:
                        continue
                    for j, b in ok.items():
                        acc[j] = acc.get(j, 0) + a * b
                acc = {j: w for j, v in acc.items() if (w := red(v))}
                if acc:
                    out[i] = acc
        return Matrix(self.field, self.nrows, other.ncols, out)

    def apply(self, vec: dict) -> dict:
        """Matrix times sparse vector."""
        red = self.field.reduce
        out = {}
        for i, r in self._rows.items():
            s = 0
            for j, v in r.items():
                w = vec.get(j)
                if w:
                    s += v * w
            s = red(s)
            if s:
                out[i] = s
        return out

    @property
    def T(self) -> Matrix:
        rows: dict[int, dict[int, object]] = {}
        for i, r in self._rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return Matrix(self.field, self.ncols, self.nrows, rows)

    def kron(self, other: Matrix) -> Matrix:
        """Kronecker product; the left factor indexes the major position."""
        p, q = other.nrows, other.ncols
        rows: dict[int, dict[int, object]] = {}
        red = self.field.reduce
        for i, r in self._rows.items():
            for k, s in other._rows.items():
                row = {}
                for j, a in r.items():
                    for l, b in s.items():
                        row[j * q + l] = red(a * b)
                rows[i * p + k] = row
        return Matrix(self.field, self.nrows * p, self.ncols * q, rows)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        rows = {}
        for i, r in self._rows.items():
            if r0 <= i < r1:
                sub = {j - c0: v for j, v in r.items() if c0 <= j < c1}
                if sub:
                    rows[i - r0] = sub
        return Matrix(self.field, r1 - r0, c1 - c0, rows)

    def select_columns(self, cols: Sequence[int]) -> Matrix:
        pos = {c: k for k, c in enumerate(cols)}
        rows = {}
        for i, r in self._rows.items():
            sub = {pos[j]: v for j, v in r.items() if j in pos}
            if sub:
                rows[i] = sub
        return Matrix(self.field, self.nrows, len(cols), rows)

    def select_rows(self, rws: Sequence[int]) -> Matrix:
        rows = {}
        for k, i in enumerate(rws):
            r = self._rows.get(i)
            if r:
                rows[k] = dict(r)
        return Matrix(self.field, len(rws), self.ncols, rows)

    def with_entry(self, i: int, j: int, value) -> Matrix:
        rows = {a: dict(r) for a, r in self._rows.items()}
        v = self.field.reduce(value)
        r = rows.setdefault(i, {})
        if v:
            r[j] = v
        else:
            r.pop(j, None)
            if not r:
                del rows[i]
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def rank(self) -> int:
        return len(rref(self._rows.values(), self.field))


class MatrixBuilder:
    """Mutable accumulator for assembling a sparse matrix out of blocks."""

    def __init__(self, field: Field, nrows: int, ncols: int):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._rows: dict[int, dict[int, object]] = {}

    def add(self, i: int, j: int, v) -> None:
        r = self._rows.setdefault(i, {})
        r[j] = r.get(j, 0) + v

    def add_block(self, r0: int, c0: int, block: Matrix, scale=1) -> None:
        if r0 + block.nrows > self.nrows or c0 + block.ncols > self.ncols:
            raise ShapeError("block does not fit")
        for i, r in block._rows.items():
            t = self._rows.setdefault(r0 + i, {})
            for j, v in r.items():
                t[c0 + j] = t.get(c0 + j, 0) + scale * v

    def build(self) -> Matrix:
        red = self.field.reduce
        rows = {}
        for i, r in self._rows.items():
            rr = {j: w for j, v in r.items() if (w := red(v))}
            if rr:
                rows[i] = rr
        return Matrix(self.field, self.nrows, self.ncols, rows)


def block_diag(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    mb = MatrixBuilder(field, nr, nc)
    r0 = c0 = 0
    for b in blocks:
        mb.add_block(r0, c0, b)
        r0 += b.nrows
        c0 += b.ncols
    return mb.build()


def hstack(field: Field, nrows: int, blocks: Sequence[Matrix]) -> Matrix:
    mb = MatrixBuilder(field, nrows, sum(b.ncols for b in blocks))
    c0 = 0
    for b in blocks:
        mb.add_block(0, c0, b)
        c0 += b.ncols
    return mb.build()


def vstack(field: Field, ncols: int, blocks: Sequence[Matrix]) -> Matrix:
    mb = MatrixBuilder(field, sum(b.nrows for b in blocks), ncols)
    r0 = 0
    for b in blocks:
        mb.add_block(r0, 0, b)
        r0 += b.nrows
    return mb.build()


# row reduction ----------------------------------------------------------


def rref(rows: Iterable[dict], field: Field) -> list[tuple[int, dict]]:
    """Reduced row echelon basis of the span of ``rows``.

    Returns ``(pivot, row)`` pairs sorted by pivot; each row has a 1 at its
    pivot and zeros at every other pivot.  The result depends only on the
    row space, not on the order or scaling of the input rows.
    """
    piv: dict[int, dict] = {}
    for src in rows:
        r = dict(src)
        for c in [c for c in r if c in piv]:
            v = r.get(c)
            if v:
                _axpy(r, -v, piv[c], field)
        if not r:
            continue
        lead = min(r)
        inv = field.inv(r[lead])
        if inv != 1:
            red = field.reduce
            r = {k: red(v * inv) for k, v in r.items()}
        for pr in piv.values():
            v = pr.get(lead)
            if v:
                _axpy(pr, -v, r, field)
        piv[lead] = r
    return sorted(piv.items())


def solve(M: Matrix, b: dict | Sequence) -> dict | None:
    """Canonical solution of ``M x = b`` or ``None`` when inconsistent.

    The canonical solution is read off the reduced row echelon form of the
    augmented system with every free variable set to zero.
    """
    if not isinstance(b, dict):
        if len(b) != M.nrows:
            raise ShapeError(f"right-hand side has length {len(b)}, expected {M.nrows}")
        b = {i: v for i, v in enumerate(b) if M.field.reduce(v)}
    elif any(not 0 <= i < M.nrows for i in b):
        raise ShapeError("right-hand side index out of range")
    n = M.ncols
    rows = []
    for i in range(M.nrows):
        r = dict(M._rows.get(i, {}))
        v = M.field.reduce(b.get(i, 0))
        if v:
            r[n] = v
        if r:
            rows.append(r)
    return _solution_from_rref(rref(rows, M.field), n)


def _solution_from_rref(red: list[tuple[int, dict]], n: int) -> dict | None:
    x = {}
    for p, r in red:
        if p == n:
            return None
        v = r.get(n)
        if v:
            x[p] = v
    return x


def solve_system(field: Field, nvars: int, equations: Iterable[tuple[dict, object]]) -> dict | None:
    """Canonical solution of sparse equations given as (coefficients, rhs)."""
    rows = []
    for coeffs, rhs in equations:
        r = {k: v for k, v in coeffs.items() if v}
        rhs = field.reduce(rhs)
        if rhs:
            r[nvars] = rhs
        if r:
            rows.append(r)
    return _solution_from_rref(rref(rows, field), nvars)


def kernel_basis(M: Matrix, with_free: bool = False):
    """Basis of the null space, one vector per free column (ascending).

    With ``with_free`` also return the free columns; vector k is 1 at free
    column k and 0 at every other free column.
    """
    red = rref(M._rows.values(), M.field)
    pivots = {p for p, _ in red}
    basis, free = [], []
    for f in range(M.ncols):
        if f in pivots:
            continue
        v = {f: 1}
        for p, r in red:
            c = r.get(f)
            if c:
                v[p] = M.field.reduce(-c)
        basis.append(v)
        free.append(f)
    return (basis, free) if with_free else basis


def column_space_rref(M: Matrix) -> list[tuple[int, dict]]:
    """Reduced echelon basis of the column space (as sparse vectors)."""
    return rref(M.columns(), M.field)


def solve_matrix(M: Matrix, R: Matrix) -> Matrix | None:
    """Canonical X with ``M X = R`` (column by column), or ``None``."""
    if M.nrows != R.nrows:
        raise ShapeError("row mismatch in solve_matrix")
    cols = []
    for c in R.columns():
        x = solve(M, c)
        if x is None:
            return None
        cols.append(x)
    return Matrix.from_columns(M.field, M.ncols, cols)


def inverse(M: Matrix) -> Matrix | None:
    if M.nrows != M.ncols:
        return None
    n = M.nrows
    X = solve_matrix(M, Matrix.identity(M.field, n))
    if X is None or (M @ X) != Matrix.identity(M.field, n):
        return None
    return X


def dense_vector(v: dict, n: int) -> list:
    out = [0] * n
    for i, x in v.items():
        out[i] = x
    return out
