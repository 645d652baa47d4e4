"""Recurrence specifications, evaluators, and the determinant builders.

A FullHistorySpec gives a(1) and a coefficient function p(k, i) for the
recurrence a(k+1) = sum_{i=1..k} p(k,i) a(i); its k x k upper-Hessenberg
matrix D_k satisfies a(1) * det(D_k) = a(k+1).  A FixedOrderSpec gives
order m, initials a(1..m) and coefficients p_1(k)..p_m(k) for
a(k) = sum_i p_i(k) a(k-m+i-1); embedding it into full-history form via
the auxiliary sequence b_1 = 1, b_{j+1} = a(j) yields a banded k x k
matrix whose determinant is a(k).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .errors import IndexBelowValidity, RecdetError
from .hessenberg import (
    SquareMatrix,
    Structure,
    det_bareiss,
    det_laplace,
    hessenberg_leading_minors,
)
from .ring import RingValue, render_value, ring_add, ring_mul

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class FullHistorySpec:
    """Initial value a(1) plus the coefficient table p(k, i).

    coeff must be total for 1 <= i <= k; queries outside that range are
    a contract violation by the caller.
    """

    initial: RingValue
    coeff: Callable[[int, int], RingValue]
    name: str = "full-history"


@dataclass(frozen=True)
class FixedOrderSpec:
    """Order m, initials a(1..m), coefficient functions p_1..p_m of k.

    first_valid_k is the smallest k at which every p_i(k) is defined; it
    is explicit data rather than something inferred from the expressions.
    """

    order: int
    initials: tuple[RingValue, ...]
    coeffs: tuple[Callable[[int], RingValue], ...]
    first_valid_k: int = 0
    name: str = "fixed-order"

    def __post_init__(self) -> None:
        if self.order < 1:
            raise RecdetError("order must be at least 1")
        if len(self.initials) != self.order:
            raise RecdetError(
                f"expected {self.order} initial values, got {len(self.initials)}"
            )
        if len(self.coeffs) != self.order:
            raise RecdetError(
                f"expected {self.order} coefficient functions, got {len(self.coeffs)}"
            )
        if self.first_valid_k == 0:
            object.__setattr__(self, "first_valid_k", self.order + 1)
        if self.first_valid_k < self.order + 1:
            raise RecdetError("first_valid_k must be at least order + 1")


@dataclass(frozen=True)
class SequencePrefix:
    """The first n terms of a sequence, 1-based via term()."""

    terms: tuple[RingValue, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[RingValue]:
        return iter(self.terms)

    def term(self, k: int) -> RingValue:
        if not (1 <= k <= len(self.terms)):
            raise RecdetError(f"term {k} outside prefix of length {len(self.terms)}")
        return self.terms[k - 1]


def eval_full_history(spec: FullHistorySpec, n: int) -> SequencePrefix:
    """Direct iteration of the full-history recurrence, terms 1..n."""
    if n < 1:
        raise RecdetError("n must be at least 1")
    terms: list[RingValue] = [spec.initial]
    for k in range(1, n):
        acc = ring_mul(spec.coeff(k, 1), terms[0])
        for i in range(2, k + 1):
            acc = ring_add(acc, ring_mul(spec.coeff(k, i), terms[i - 1]))
        terms.append(acc)
    return SequencePrefix(tuple(terms))


def theorem1_matrix(spec: FullHistorySpec, k: int) -> SquareMatrix:
    """The k x k upper-Hessenberg matrix with entries[i][j] = p(j, i),
    subdiagonal -1, zeros below."""
    if k < 1:
        raise RecdetError("matrix size must be at least 1")
    minus_one = Fraction(-1)
    rows = []
    for r in range(k):
        row: list[RingValue] = []
        for c in range(k):
            if r <= c:
                row.append(spec.coeff(c + 1, r + 1))
            elif r == c + 1:
                row.append(minus_one)
            else:
                row.append(_ZERO)
        rows.append(row)
    return SquareMatrix.from_rows(rows, Structure.UPPER_HESSENBERG)


def embed_fixed_order(spec: FixedOrderSpec) -> FullHistorySpec:
    """Full-history form of a fixed-order spec.

    Realizes the auxiliary sequence b_1 = 1, b_{j+1} = a(j): columns
    j <= m carry a(j) in row 1, columns j > m carry the band
    p_1(j)..p_m(j) ending on the diagonal.  The band argument is the
    column index j, which is what makes the determinant identity hold
    for k-dependent coefficients.
    """
    m = spec.order

    def coeff(j: int, i: int) -> RingValue:
        if j <= m:
            return spec.initials[j - 1] if i == 1 else _ZERO
        if j < spec.first_valid_k:
            raise IndexBelowValidity(
                f"column {j} is below first_valid_k = {spec.first_valid_k}"
            )
        t = i - (j - m)
        if 1 <= t <= m:
            return spec.coeffs[t - 1](j)
        return _ZERO

    return FullHistorySpec(initial=_ONE, coeff=coeff, name=f"embed({spec.name})")


def theorem2_matrix(spec: FixedOrderSpec, k: int) -> SquareMatrix:
    """The banded k x k matrix whose determinant equals a(k)."""
    return theorem1_matrix(embed_fixed_order(spec), k)


def eval_fixed_order(spec: FixedOrderSpec, n: int) -> SequencePrefix:
    """Direct iteration of the fixed-order recurrence, terms 1..n."""
    if n < 1:
        raise RecdetError("n must be at least 1")
    m = spec.order
    terms: list[RingValue] = list(spec.initials[:n])
    for k in range(m + 1, n + 1):
        if k < spec.first_valid_k:
            raise IndexBelowValidity(
                f"term {k} requested but coefficients are only valid from "
                f"k = {spec.first_valid_k}"
            )
        acc = ring_mul(spec.coeffs[0](k), terms[k - m - 1])
        for i in range(2, m + 1):
            acc = ring_add(acc, ring_mul(spec.coeffs[i - 1](k), terms[k - m + i - 2]))
        terms.append(acc)
    return SequencePrefix(tuple(terms))


@dataclass(frozen=True)
class VerificationCheck:
    k: int
    direct: str
    det: str
    ok: bool


@dataclass(frozen=True)
class VerificationReport:
    """Per-k comparison of the direct term against the determinant route."""

    spec: str
    checks: tuple[VerificationCheck, ...]
    passed: bool

    def first_failure(self) -> int | None:
        for check in self.checks:
            if not check.ok:
                return check.k
        return None

    def to_json(self) -> str:
        payload = {
            "spec": self.spec,
            "checks": [
                {"k": c.k, "direct": c.direct, "det": c.det, "ok": c.ok}
                for c in self.checks
            ],
            "pass": self.passed,
        }
        return json.dumps(payload, separators=(",", ":"))


def verify_spec(
    spec: FullHistorySpec | FixedOrderSpec,
    max_n: int,
    method: str = "fast",
    corrupt: tuple[int, int] | None = None,
) -> VerificationReport:
    """Check the determinant identity for every k up to max_n.

    For a full-history spec the check is a(1) * det(D_k) = a(k+1); for a
    fixed-order spec it is det = a(k).  The optional corrupt argument
    adds 1 to the given 1-based matrix entry before any determinant is
    taken, as a negative control; the position must stay inside the
    upper-Hessenberg band.
    """
    if max_n < 1:
        raise RecdetError("max_n must be at least 1")
    full = isinstance(spec, FullHistorySpec)
    fh = spec if full else embed_fixed_order(spec)
    big = theorem1_matrix(fh, max_n)
    if corrupt is not None:
        ci, cj = corrupt
        if not (1 <= ci <= max_n and 1 <= cj <= max_n):
            raise RecdetError(f"corrupt position {corrupt} outside a size-{max_n} matrix")
        if ci > cj + 1:
            raise RecdetError("corrupt position must stay in the upper-Hessenberg band")
        big = big.with_entry(ci - 1, cj - 1, big.entries[ci - 1][cj - 1] + _ONE)

    if method == "fast":
        minors = hessenberg_leading_minors(big)
    elif method == "bareiss":
        minors = [det_bareiss(big.leading_submatrix(k)) for k in range(1, max_n + 1)]
    elif method == "laplace":
        minors = [det_laplace(big.leading_submatrix(k)) for k in range(1, max_n + 1)]
    else:
        raise RecdetError(f"unknown determinant method {method!r}")

    if full:
        direct_terms = eval_full_history(spec, max_n + 1)
    else:
        direct_terms = eval_fixed_order(spec, max_n)

    checks = []
    all_ok = True
    for k in range(1, max_n + 1):
        det_route = ring_mul(spec.initial, minors[k - 1]) if full else minors[k - 1]
        direct = direct_terms.term(k + 1) if full else direct_terms.term(k)
        ok = direct == det_route
        all_ok = all_ok and ok
        checks.append(
            VerificationCheck(
                k=k, direct=render_value(direct), det=render_value(det_route), ok=ok
            )
        )
    return VerificationReport(spec=spec.name, checks=tuple(checks), passed=all_ok)
