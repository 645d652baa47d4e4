"""Catalog of concrete recurrence families, each with an independent oracle.

Every family is exposed twice: family_spec builds the recurrence spec
whose determinant of size n reproduces the family's n-th object, and
family_oracle computes that object without any determinant machinery,
so the two routes check each other.  Indexing per family:

    naturals        det size n = n
    horner          det size n = p0*x^(n-1) + ... + p_{n-1} (params p0, p1, ...)
    partial-sums    det size n = p0 + ... + p_{n-1} (params p0, p1, ...)
    fibonacci-poly  det size n = F_{n+1}(x)   (F_1 = 1, F_2 = x)
    fibonacci-num   det size n = F_{n+1}      (F_1 = F_2 = 1)
    lucas-poly      det size n = L_n(x)       (L_1 = x, L_2 = x^2 + 2)
    chebyshev-t     det size n = T_n(x)
    chebyshev-u     det size n = U_n(x)
    hermite         det size n = H_n(x)
    legendre        det size n = P_n(x)
    laguerre        det size n = L_n(x)       (Laguerre)
    continuant      det size n = K(p1..pn)    (params p1, p2, ...)
    ode-example     det size k = u(k-1), the power series coefficients of
                    the solution of (x+1)y'' + y' + x*y = 0, y(0)=1, y'(0)=0
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from .errors import MissingParams, OutOfRange, RecdetError, UnexpectedParams
from .recurrence import (
    FixedOrderSpec,
    FullHistorySpec,
    SequencePrefix,
    eval_fixed_order,
)
from .ring import Polynomial, RingValue

_ZERO = Fraction(0)
_ONE = Fraction(1)
_TWO = Fraction(2)
_X = Polynomial.x()
_TWO_X = Polynomial((0, 2))
_ONE_MINUS_X = Polynomial((1, -1))


class FamilyId(str, Enum):
    NATURALS = "naturals"
    HORNER = "horner"
    PARTIAL_SUMS = "partial-sums"
    FIBONACCI_POLY = "fibonacci-poly"
    FIBONACCI_NUM = "fibonacci-num"
    LUCAS_POLY = "lucas-poly"
    CHEBYSHEV_T = "chebyshev-t"
    CHEBYSHEV_U = "chebyshev-u"
    HERMITE = "hermite"
    LEGENDRE = "legendre"
    LAGUERRE = "laguerre"
    CONTINUANT = "continuant"
    ODE_EXAMPLE = "ode-example"


# coefficient list for horner/partial-sums/continuant, None otherwise
FamilyParams = Optional[Tuple[RingValue, ...]]

PARAM_FAMILIES = frozenset(
    {FamilyId.HORNER, FamilyId.PARTIAL_SUMS, FamilyId.CONTINUANT}
)

POLY_FAMILIES = frozenset(
    {
        FamilyId.HORNER,
        FamilyId.FIBONACCI_POLY,
        FamilyId.LUCAS_POLY,
        FamilyId.CHEBYSHEV_T,
        FamilyId.CHEBYSHEV_U,
        FamilyId.HERMITE,
        FamilyId.LEGENDRE,
        FamilyId.LAGUERRE,
    }
)


def family_ring(fid: FamilyId) -> str:
    return "poly" if fid in POLY_FAMILIES else "rational"


def family_names() -> tuple[str, ...]:
    return tuple(f.value for f in FamilyId)


def _check_params(fid: FamilyId, params: tuple[RingValue, ...] | None) -> tuple[RingValue, ...]:
    if fid in PARAM_FAMILIES:
        if not params:
            raise MissingParams(f"family {fid.value!r} needs a coefficient list")
        return tuple(params)
    if params:
        raise UnexpectedParams(f"family {fid.value!r} takes no parameters")
    return ()


def _param(ps: tuple[RingValue, ...], k: int, fid: FamilyId) -> RingValue:
    # 1-based access into the parameter list
    if k > len(ps):
        raise OutOfRange(
            f"family {fid.value!r} needs {k} parameters, got {len(ps)}"
        )
    return ps[k - 1]


def family_spec(
    fid: FamilyId, params: tuple[RingValue, ...] | None = None
) -> FullHistorySpec | FixedOrderSpec:
    """The recurrence spec realizing the family's determinant representation."""
    ps = _check_params(fid, params)
    name = fid.value

    if fid is FamilyId.NATURALS:
        def coeff(k: int, i: int) -> RingValue:
            return _ONE if i == 1 or i == k else _ZERO

    elif fid is FamilyId.HORNER:
        def coeff(k: int, i: int) -> RingValue:
            if i == 1:
                return _param(ps, k, fid)
            if i == k:
                return _X
            return _ZERO

    elif fid is FamilyId.PARTIAL_SUMS:
        def coeff(k: int, i: int) -> RingValue:
            if i == 1:
                return _param(ps, k, fid)
            if i == k:
                return _ONE
            return _ZERO

    elif fid is FamilyId.FIBONACCI_POLY:
        def coeff(k: int, i: int) -> RingValue:
            if i == k:
                return _X
            if i == k - 1:
                return _ONE
            return _ZERO

    elif fid is FamilyId.FIBONACCI_NUM:
        def coeff(k: int, i: int) -> RingValue:
            if i == k or i == k - 1:
                return _ONE
            return _ZERO

    elif fid is FamilyId.LUCAS_POLY:
        def coeff(k: int, i: int) -> RingValue:
            if k == 2 and i == 1:
                return _TWO
            if i == k:
                return _X
            if i == k - 1:
                return _ONE
            return _ZERO

    elif fid is FamilyId.CHEBYSHEV_T:
        def coeff(k: int, i: int) -> RingValue:
            if i == k:
                return _X if k == 1 else _TWO_X
            if i == k - 1:
                return Fraction(-1)
            return _ZERO

    elif fid is FamilyId.CHEBYSHEV_U:
        def coeff(k: int, i: int) -> RingValue:
            if i == k:
                return _TWO_X
            if i == k - 1:
                return Fraction(-1)
            return _ZERO

    elif fid is FamilyId.HERMITE:
        def coeff(k: int, i: int) -> RingValue:
            if i == k:
                return _TWO_X
            if i == k - 1:
                return Fraction(-2 * (k - 1))
            return _ZERO

    elif fid is FamilyId.LEGENDRE:
        def coeff(k: int, i: int) -> RingValue:
            if i == k:
                return _X if k == 1 else Polynomial((0, Fraction(2 * k - 1, k)))
            if i == k - 1:
                return Fraction(-(k - 1), k)
            return _ZERO

    elif fid is FamilyId.LAGUERRE:
        def coeff(k: int, i: int) -> RingValue:
            if i == k:
                if k == 1:
                    return _ONE_MINUS_X
                return Polynomial((Fraction(2 * k - 1, k), Fraction(-1, k)))
            if i == k - 1:
                return Fraction(-(k - 1), k)
            return _ZERO

    elif fid is FamilyId.CONTINUANT:
        def coeff(k: int, i: int) -> RingValue:
            if i == k:
                return _param(ps, k, fid)
            if i == k - 1:
                return _ONE
            return _ZERO

    elif fid is FamilyId.ODE_EXAMPLE:
        return FixedOrderSpec(
            order=3,
            initials=(_ONE, _ZERO, _ZERO),
            coeffs=(
                lambda k: Fraction(-1, (k - 2) * (k - 1)),
                lambda k: _ZERO,
                lambda k: Fraction(-(k - 2), k - 1),
            ),
            first_valid_k=4,
            name=name,
        )

    else:  # pragma: no cover - the enum is closed
        raise RecdetError(f"unhandled family {fid!r}")

    return FullHistorySpec(initial=_ONE, coeff=coeff, name=name)


def family_oracle(
    fid: FamilyId, n: int, params: tuple[RingValue, ...] | None = None
) -> RingValue:
    """The family's n-th object, computed without determinants.

    Polynomial families iterate their classical three-term recurrences
    directly; Horner and partial sums come from the coefficient list
    itself; continuants use the double recurrence K_n = p_n K_{n-1} +
    K_{n-2}; the ODE example iterates the original power series
    recurrence in u.
    """
    ps = _check_params(fid, params)
    if n < 1:
        raise OutOfRange(f"family index must be at least 1, got {n}")

    if fid is FamilyId.NATURALS:
        return Fraction(n)

    if fid is FamilyId.HORNER:
        if n > len(ps):
            raise OutOfRange(f"horner with {len(ps)} parameters stops at n = {len(ps)}")
        # f_{n-1}(x) = p0 x^(n-1) + ... + p_{n-1}, constant term last
        return Polynomial(tuple(reversed(ps[:n])))

    if fid is FamilyId.PARTIAL_SUMS:
        if n > len(ps):
            raise OutOfRange(
                f"partial-sums with {len(ps)} parameters stops at n = {len(ps)}"
            )
        total = Fraction(0)
        for p in ps[:n]:
            total = total + p
        return total

    if fid is FamilyId.FIBONACCI_POLY:
        prev: RingValue = Polynomial.one()  # F_1
        cur: RingValue = _X  # F_2
        for _ in range(n - 1):
            prev, cur = cur, prev + _X * cur
        return cur  # F_{n+1}

    if fid is FamilyId.FIBONACCI_NUM:
        a, b = 1, 1  # F_1, F_2
        for _ in range(n - 1):
            a, b = b, a + b
        return Fraction(b)  # F_{n+1}

    if fid is FamilyId.LUCAS_POLY:
        prev = Polynomial.constant(2)  # L_0
        cur = _X  # L_1
        for _ in range(n - 1):
            prev, cur = cur, prev + _X * cur
        return cur  # L_n

    if fid is FamilyId.CHEBYSHEV_T:
        prev = Polynomial.one()  # T_0
        cur = _X  # T_1
        for _ in range(n - 1):
            prev, cur = cur, _TWO_X * cur - prev
        return cur

    if fid is FamilyId.CHEBYSHEV_U:
        prev = Polynomial.one()  # U_0
        cur = _TWO_X  # U_1
        for _ in range(n - 1):
            prev, cur = cur, _TWO_X * cur - prev
        return cur

    if fid is FamilyId.HERMITE:
        prev = Polynomial.one()  # H_0
        cur = _TWO_X  # H_1
        for j in range(1, n):
            prev, cur = cur, _TWO_X * cur - Fraction(2 * j) * prev
        return cur

    if fid is FamilyId.LEGENDRE:
        prev = Polynomial.one()  # P_0
        cur = _X  # P_1
        for j in range(1, n):
            prev, cur = cur, (
                Polynomial((0, Fraction(2 * j + 1, j + 1))) * cur
                - Fraction(j, j + 1) * prev
            )
        return cur

    if fid is FamilyId.LAGUERRE:
        prev = Polynomial.one()  # L_0
        cur = _ONE_MINUS_X  # L_1
        for j in range(2, n + 1):
            prev, cur = cur, (
                Polynomial((Fraction(2 * j - 1, j), Fraction(-1, j))) * cur
                - Fraction(j - 1, j) * prev
            )
        return cur

    if fid is FamilyId.CONTINUANT:
        if n > len(ps):
            raise OutOfRange(
                f"continuant with {len(ps)} parameters stops at n = {len(ps)}"
            )
        prev: RingValue = Fraction(1)  # K_0
        cur = ps[0]  # K_1
        for j in range(2, n + 1):
            prev, cur = cur, ps[j - 1] * cur + prev
        return cur

    if fid is FamilyId.ODE_EXAMPLE:
        return _ode_series(n)[n - 1]  # u(n-1)

    raise RecdetError(f"unhandled family {fid!r}")  # pragma: no cover


def _ode_series(count: int) -> list[Fraction]:
    """u(0..count-1) by iterating the series recurrence in its original shape:
    u(k+2) = -(k+1)/(k+2) u(k+1) - 1/((k+1)(k+2)) u(k-1) for k >= 1."""
    u = [Fraction(1), Fraction(0), Fraction(0)]
    while len(u) < count:
        k = len(u) - 2
        u.append(
            -Fraction(k + 1, k + 2) * u[k + 1] - Fraction(1, (k + 1) * (k + 2)) * u[k - 1]
        )
    return u[:count]


def ode_coefficients(n: int) -> SequencePrefix:
    """First n power series coefficients u(0..n-1) of the ODE solution,
    produced through the fixed-order spec (a(k) = u(k-1))."""
    if n < 1:
        raise RecdetError("n must be at least 1")
    spec = family_spec(FamilyId.ODE_EXAMPLE)
    return eval_fixed_order(spec, n)


def ode_residual_check(coeffs: SequencePrefix) -> bool:
    """Substitute the truncated series into (x+1)y'' + y' + x*y and check
    that every determined coefficient vanishes exactly.

    With u_t the coefficient of x^t, the x^k coefficient of the left
    side is (k+2)(k+1)u_{k+2} + (k+1)k u_{k+1} + (k+1)u_{k+1} + u_{k-1},
    the last term absent at k = 0.
    """
    u = coeffs.terms
    if len(u) < 3:
        raise RecdetError("residual check needs at least 3 coefficients")
    for k in range(len(u) - 2):
        residual = (
            Fraction((k + 2) * (k + 1)) * u[k + 2]
            + Fraction((k + 1) * k) * u[k + 1]
            + Fraction(k + 1) * u[k + 1]
        )
        if k >= 1:
            residual = residual + u[k - 1]
        if residual != 0:
            return False
    return True
