"""Square matrices over the exact rings, plus three determinant algorithms.

det_hessenberg_fast is the O(n^2) leading-principal-minor recurrence and
the computational heart of the package; det_laplace (cofactor expansion,
guarded at size 8) and det_bareiss (fraction-free elimination, O(n^3))
are its independent oracles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from random import Random
from typing import Sequence

from .errors import NotHessenberg, RecdetError, SizeTooLarge
from .ring import (
    Polynomial,
    RingValue,
    is_zero,
    latex_value,
    parse_value,
    render_value,
    ring_add,
    ring_exact_div,
    ring_mul,
    ring_neg,
    ring_sub,
)


class Structure(str, Enum):
    GENERAL = "general"
    UPPER_HESSENBERG = "upper-hessenberg"


def _coerce_entry(v: object) -> RingValue:
    if isinstance(v, (Fraction, Polynomial)):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise RecdetError(f"matrix entries must be exact ring values, got {type(v).__name__}")


@dataclass(frozen=True)
class SquareMatrix:
    """Immutable dense n x n matrix of ring values.

    When structure is UPPER_HESSENBERG the zero pattern below the first
    subdiagonal is enforced at construction time.
    """

    size: int
    entries: tuple[tuple[RingValue, ...], ...]
    structure: Structure = Structure.GENERAL

    def __post_init__(self) -> None:
        if self.size < 1:
            raise RecdetError("matrix size must be at least 1")
        rows = tuple(tuple(_coerce_entry(v) for v in row) for row in self.entries)
        if len(rows) != self.size or any(len(row) != self.size for row in rows):
            raise RecdetError(f"entries do not form a {self.size}x{self.size} array")
        object.__setattr__(self, "entries", rows)
        if self.structure is Structure.UPPER_HESSENBERG:
            for r in range(2, self.size):
                for c in range(r - 1):
                    if not is_zero(rows[r][c]):
                        raise NotHessenberg(
                            f"nonzero entry at row {r + 1}, column {c + 1} "
                            "below the first subdiagonal"
                        )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[object]], structure: Structure = Structure.GENERAL
    ) -> "SquareMatrix":
        rows = tuple(tuple(row) for row in rows)
        return cls(size=len(rows), entries=rows, structure=structure)

    def entry(self, row: int, col: int) -> RingValue:
        """1-based entry access."""
        if not (1 <= row <= self.size and 1 <= col <= self.size):
            raise RecdetError(f"entry ({row},{col}) outside a size-{self.size} matrix")
        return self.entries[row - 1][col - 1]

    def with_entry(self, row: int, col: int, value: object) -> "SquareMatrix":
        """Copy with one entry replaced (0-based indices)."""
        rows = [list(r) for r in self.entries]
        rows[row][col] = value
        return SquareMatrix.from_rows(rows, self.structure)

    def transposed(self) -> "SquareMatrix":
        rows = tuple(tuple(self.entries[c][r] for c in range(self.size)) for r in range(self.size))
        return SquareMatrix(size=self.size, entries=rows, structure=Structure.GENERAL)

    def leading_submatrix(self, k: int) -> "SquareMatrix":
        if not (1 <= k <= self.size):
            raise RecdetError(f"leading submatrix size {k} out of range")
        rows = tuple(row[:k] for row in self.entries[:k])
        return SquareMatrix(size=k, entries=rows, structure=self.structure)


def identity(n: int) -> SquareMatrix:
    rows = tuple(
        tuple(Fraction(1) if r == c else Fraction(0) for c in range(n)) for r in range(n)
    )
    return SquareMatrix(size=n, entries=rows, structure=Structure.UPPER_HESSENBERG)


LAPLACE_SIZE_LIMIT = 8


def det_laplace(m: SquareMatrix) -> RingValue:
    """Determinant by cofactor expansion along the first row.

    Refuses matrices larger than 8 to keep the factorial blowup at bay;
    this is the brute-force oracle, not a production path.
    """
    if m.size > LAPLACE_SIZE_LIMIT:
        raise SizeTooLarge(
            f"det_laplace handles sizes up to {LAPLACE_SIZE_LIMIT}, got {m.size}"
        )
    return _laplace(m.entries)


def _laplace(rows: tuple[tuple[RingValue, ...], ...]) -> RingValue:
    if len(rows) == 1:
        return rows[0][0]
    total: RingValue | None = None
    for j, v in enumerate(rows[0]):
        if is_zero(v):
            continue
        minor = tuple(row[:j] + row[j + 1 :] for row in rows[1:])
        term = ring_mul(v, _laplace(minor))
        if j % 2:
            term = ring_neg(term)
        total = term if total is None else ring_add(total, term)
    return Fraction(0) if total is None else total


def det_bareiss(m: SquareMatrix) -> RingValue:
    """Fraction-free single-step Bareiss elimination.

    Intermediate entries stay in the ring thanks to exact divisions by
    the previous pivot.  Zero pivots are repaired by a downward row swap
    with sign tracking; a fully zero column short-circuits to 0.
    """
    n = m.size
    a: list[list[RingValue]] = [list(row) for row in m.entries]
    zero = Fraction(0)
    prev: RingValue = Fraction(1)
    sign = 1
    for k in range(n - 1):
        if is_zero(a[k][k]):
            for r in range(k + 1, n):
                if not is_zero(a[r][k]):
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            aik_zero = is_zero(aik)
            row = a[i]
            for j in range(k + 1, n):
                if aik_zero and is_zero(row[j]):
                    continue
                t = ring_mul(row[j], pivot)
                if not aik_zero:
                    t = ring_sub(t, ring_mul(aik, a[k][j]))
                row[j] = ring_exact_div(t, prev)
            row[k] = zero
        prev = pivot
    d = a[n - 1][n - 1]
    return d if sign == 1 else ring_neg(d)


def hessenberg_leading_minors(m: SquareMatrix) -> list[RingValue]:
    """All leading principal minors d_1..d_n of an upper-Hessenberg matrix.

    Uses the recurrence d_c = sum_j (-1)^(c-j) m[j][c] (prod of the
    subdiagonal between j and c) d_{j-1} with d_0 = 1, in O(n^2) ring
    multiplications for the whole batch.
    """
    if m.structure is not Structure.UPPER_HESSENBERG:
        raise NotHessenberg("det_hessenberg_fast requires the UpperHessenberg structure flag")
    e = m.entries
    n = m.size
    one: RingValue = Fraction(1)
    d: list[RingValue] = [one]
    for c in range(n):
        acc = ring_mul(e[c][c], d[c])
        prod: RingValue = one
        for j in range(c - 1, -1, -1):
            prod = ring_mul(prod, ring_neg(e[j + 1][j]))
            acc = ring_add(acc, ring_mul(ring_mul(e[j][c], prod), d[j]))
        d.append(acc)
    return d[1:]


def det_hessenberg_fast(m: SquareMatrix) -> RingValue:
    """O(n^2) determinant via the leading-principal-minor recurrence."""
    return hessenberg_leading_minors(m)[-1]


DET_FUNCTIONS = {
    "fast": det_hessenberg_fast,
    "bareiss": det_bareiss,
    "laplace": det_laplace,
}


# --- emitters and parsers -------------------------------------------------

def matrix_ring(m: SquareMatrix) -> str:
    for row in m.entries:
        for v in row:
            if isinstance(v, Polynomial):
                return "poly"
    return "rational"


def matrix_to_json(m: SquareMatrix, ring: str | None = None) -> str:
    """JSON per the documented schema: {"size", "ring", "entries"}."""
    payload = {
        "size": m.size,
        "ring": ring if ring is not None else matrix_ring(m),
        "entries": [[render_value(v) for v in row] for row in m.entries],
    }
    return json.dumps(payload, separators=(",", ":"))


def matrix_from_json(text: str) -> SquareMatrix:
    """Parse the JSON schema back into a matrix.

    The structure flag is inferred: matrices whose zero pattern is upper
    Hessenberg come back flagged as such.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RecdetError(f"invalid matrix JSON: {exc}") from exc
    if not isinstance(payload, dict) or set(payload) != {"size", "ring", "entries"}:
        raise RecdetError('matrix JSON must have exactly the keys "size", "ring", "entries"')
    size = payload["size"]
    ring = payload["ring"]
    entries = payload["entries"]
    if not isinstance(size, int) or size < 1:
        raise RecdetError("matrix JSON size must be a positive integer")
    if ring not in ("rational", "poly"):
        raise RecdetError(f"matrix JSON ring must be rational or poly, got {ring!r}")
    if (
        not isinstance(entries, list)
        or len(entries) != size
        or any(not isinstance(row, list) or len(row) != size for row in entries)
    ):
        raise RecdetError("matrix JSON entries do not form a square array")
    rows = tuple(
        tuple(parse_value(cell, ring) for cell in row) for row in entries
    )
    structure = Structure.UPPER_HESSENBERG
    for r in range(2, size):
        for c in range(r - 1):
            if not is_zero(rows[r][c]):
                structure = Structure.GENERAL
                break
        if structure is Structure.GENERAL:
            break
    return SquareMatrix(size=size, entries=rows, structure=structure)


def matrix_to_latex(m: SquareMatrix) -> str:
    body = "\n".join(
        " & ".join(latex_value(v) for v in row) + r" \\" for row in m.entries
    )
    return "\\begin{vmatrix}\n" + body + "\n\\end{vmatrix}"


def matrix_to_text(m: SquareMatrix) -> str:
    cells = [[render_value(v) for v in row] for row in m.entries]
    widths = [max(len(cells[r][c]) for r in range(m.size)) for c in range(m.size)]
    lines = [
        "[ " + "  ".join(cells[r][c].rjust(widths[c]) for c in range(m.size)) + " ]"
        for r in range(m.size)
    ]
    return "\n".join(lines)


def random_hessenberg(
    size: int, rng: Random, ring: str = "rational", max_degree: int = 1
) -> SquareMatrix:
    """Seeded pseudo-random upper-Hessenberg matrix.

    Entries in the allowed band are drawn uniformly from the integers
    [-5, 5]; for the poly ring each band entry gets max_degree + 1 such
    integers as coefficients.  The PRNG is whatever Random instance the
    caller seeds, so runs are reproducible.
    """
    if size < 1:
        raise RecdetError("matrix size must be at least 1")
    zero = Fraction(0)
    rows: list[list[RingValue]] = []
    for r in range(size):
        row: list[RingValue] = []
        for c in range(size):
            if r > c + 1:
                row.append(zero)
            elif ring == "poly":
                row.append(Polynomial([rng.randint(-5, 5) for _ in range(max_degree + 1)]))
            else:
                row.append(Fraction(rng.randint(-5, 5)))
        rows.append(row)
    return SquareMatrix.from_rows(rows, Structure.UPPER_HESSENBERG)
