"""Exact strict-inequality feasibility over Q(sqrt d).

``solve_strict`` decides whether a homogeneous system  < c_r, m > > 0
(all r) has a solution, by maximizing a slack variable t subject to
< c_r, m > >= t, box bounds |m_i| <= M and t <= 1, with a dense simplex
under Bland's rule.  All pivoting is exact QuadExt arithmetic; because
the system is homogeneous, infeasibility inside the box implies
infeasibility outright (any solution scales into the box).

``gordan_witness`` produces the dual object for infeasible systems: a
nonnegative, nonzero combination y with sum_r y_r c_r = 0, extracted
from a Fourier-Motzkin elimination trace.  Intended for the small
tabulated systems, not the large certificate systems.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import QuadExt, qext

__all__ = ["solve_strict", "gordan_witness", "verify_gordan"]

Row = Sequence[QuadExt]


def _simplex_max(tableau: list[list[QuadExt]], basis: list[int]) -> None:
    """In-place primal simplex with Bland's rule; tableau rows end in rhs.

    The last tableau row is the objective in reduced form; entering
    column = smallest index with negative reduced cost, leaving row =
    min-ratio with smallest-index tie break.  Terminates by Bland.
    """
    m = len(tableau) - 1
    width = len(tableau[0])
    while True:
        obj = tableau[m]
        col = -1
        for j in range(width - 1):
            if obj[j].sign() < 0:
                col = j
                break
        if col < 0:
            return
        row = -1
        best: Optional[QuadExt] = None
        for i in range(m):
            a = tableau[i][col]
            if a.sign() > 0:
                ratio = tableau[i][width - 1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row < 0:
            raise ArithmeticError("unbounded LP; the slack formulation is always bounded")
        piv = tableau[row][col]
        inv = piv.inverse()
        tableau[row] = [x * inv for x in tableau[row]]
        rr = tableau[row]
        for i in range(m + 1):
            if i == row:
                continue
            f = tableau[i][col]
            if f.sign() != 0:
                ri = tableau[i]
                tableau[i] = [ri[j] - f * rr[j] for j in range(width)]
        basis[row] = col


def solve_strict(
    rows: Sequence[Row],
    nvars: int,
    box: int = 2 ** 16,
    cap: int = 1,
) -> Optional[tuple[QuadExt, ...]]:
    """A point with every < c_r, m > > 0, or None if there is none.

    Deterministic for a fixed row order.  The returned coordinates are
    exact and generally mix rationals with sqrt(d) terms when any
    coefficient does.
    """
    if nvars == 0:
        return () if not rows else None
    if not rows:
        return tuple(qext(0) for _ in range(nvars))
    rows = [tuple(qext(c) for c in r) for r in rows]
    for r in rows:
        if len(r) != nvars:
            raise ValueError("row width does not match variable count")

    M = Fraction(box)
    # At m = 0 every constraint has slack 0; t = -T0 keeps the shifted
    # variable t' = t + T0 nonnegative for any point of the box.
    worst = qext(0)
    for r in rows:
        s = qext(0)
        for c in r:
            s = s + abs(c)
        if s > worst:
            worst = s
    T0 = worst * M + 1

    # Shifted variables: x_j = m_j + M in [0, 2M]; t' = t + T0 in [0, cap+T0].
    # Constraint rows: -<c, x> + t' <= T0 - M * sum(c)   (all rhs >= 0).
    ncols = nvars + 1
    cons: list[tuple[list[QuadExt], QuadExt]] = []
    for r in rows:
        body = [-c for c in r] + [qext(1)]
        rhs = T0 - sum(r, qext(0)) * M
        cons.append((body, rhs))
    for j in range(nvars):
        body = [qext(0)] * ncols
        body[j] = qext(1)
        cons.append((body, qext(2 * M)))
    tbody = [qext(0)] * ncols
    tbody[nvars] = qext(1)
    cons.append((tbody, T0 + cap))

    m = len(cons)
    width = ncols + m + 1
    tableau: list[list[QuadExt]] = []
    for i, (body, rhs) in enumerate(cons):
        if rhs.sign() < 0:
            raise AssertionError("slack start must be feasible")
        row = body + [qext(0)] * m + [rhs]
        row[ncols + i] = qext(1)
        tableau.append(row)
    objective = [qext(0)] * width
    objective[nvars] = qext(-1)  # maximize t'
    tableau.append(objective)
    basis = [ncols + i for i in range(m)]

    _simplex_max(tableau, basis)

    values = [qext(0)] * ncols
    for i, b in enumerate(basis):
        if b < ncols:
            values[b] = tableau[i][width - 1]

    t = values[nvars] - T0
    if t.sign() <= 0:
        return None
    point = tuple(values[j] - M for j in range(nvars))
    for r in rows:
        s = qext(0)
        for c, x in zip(r, point):
            s = s + c * x
        if s.sign() <= 0:
            raise AssertionError("simplex returned a non-strict point")
    return point


def gordan_witness(rows: Sequence[Row], nvars: int) -> Optional[tuple[QuadExt, ...]]:
    """Nonnegative y != 0 with sum_r y_r c_r = 0, when the system is infeasible.

    Fourier-Motzkin elimination with provenance tracking.  Returns None
    when elimination never derives the empty contradiction, i.e. when
    the strict system is feasible.  Suitable for small systems only.
    """
    if not rows:
        return None
    nrows = len(rows)
    work: list[tuple[tuple[QuadExt, ...], tuple[QuadExt, ...]]] = []
    for k, r in enumerate(rows):
        prov = tuple(qext(1 if i == k else 0) for i in range(nrows))
        work.append((tuple(qext(c) for c in r), prov))

    for var in range(nvars):
        pos, neg, rest = [], [], []
        for vec, prov in work:
            s = vec[var].sign()
            (pos if s > 0 else neg if s < 0 else rest).append((vec, prov))
        new = list(rest)
        for pv, pp in pos:
            for nv, np_ in neg:
                a = pv[var]
                b = -nv[var]
                vec = tuple(b * x + a * y for x, y in zip(pv, nv))
                prov = tuple(b * x + a * y for x, y in zip(pp, np_))
                new.append((vec, prov))
        work = _dedupe(new)
        contradiction = _find_contradiction(work)
        if contradiction is not None:
            return contradiction
    return _find_contradiction(work)


def _find_contradiction(work):
    for vec, prov in work:
        if all(c.sign() == 0 for c in vec):
            return prov
    return None


def _dedupe(items):
    seen = set()
    out = []
    for vec, prov in items:
        key = _direction_key(vec)
        if key in seen:
            continue
        seen.add(key)
        out.append((vec, prov))
    return out


def _direction_key(vec) -> tuple:
    for c in vec:
        if c.sign() != 0:
            inv = c.inverse() if c.sign() > 0 else (-c).inverse()
            return tuple((y.a, y.b, y.d) for y in ((x * inv) for x in vec))
    return ("zero",)


def verify_gordan(rows: Sequence[Row], witness) -> bool:
    """Check sum_r y_r c_r = 0 with y >= 0 and some y_r > 0, exactly."""
    if witness is None:
        return False
    rows = [tuple(qext(c) for c in r) for r in rows]
    ys = [qext(y) for y in witness]
    if any(y.sign() < 0 for y in ys) or all(y.sign() == 0 for y in ys):
        return False
    width = len(rows[0])
    for j in range(width):
        total = qext(0)
        for y, r in zip(ys, rows):
            total = total + y * r[j]
        if total.sign() != 0:
            return False
    return True
