"""Exact-rational linear programming via a dense two-phase simplex.

Bland's rule is used throughout, so the method terminates on degenerate
instances.  All arithmetic is on Fractions; optimal primal and dual values
are exact, which downstream code relies on for tightness tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class LPResult:
    status: str
    x: list[Fraction]
    objective: Fraction
    duals_ub: list[Fraction]
    duals_eq: list[Fraction]


def solve_lp(
    c: list[Fraction],
    A_ub: list[list[Fraction]] | None = None,
    b_ub: list[Fraction] | None = None,
    A_eq: list[list[Fraction]] | None = None,
    b_eq: list[Fraction] | None = None,
    maximize: bool = True,
) -> LPResult:
    """Optimize c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0.

    Returns exact optimal primal and dual vectors; duals are reported per
    input row (ub duals are >= 0 for a maximization, eq duals unrestricted).
    """
    A_ub = A_ub or []
    b_ub = b_ub or []
    A_eq = A_eq or []
    b_eq = b_eq or []
    n = len(c)
    obj = [Fraction(v) if maximize else -Fraction(v) for v in c]

    # rows in standard form: structural coefficients + one slack per ub row
    n_ub = len(A_ub)
    n_eq = len(A_eq)
    m = n_ub + n_eq
    n_slack = n_ub
    width = n + n_slack
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    signs: list[int] = []  # +1 if the row kept its orientation, -1 if negated
    for i in range(n_ub):
        row = [Fraction(v) for v in A_ub[i]] + [ZERO] * n_slack
        row[n + i] = ONE
        rows.append(row)
        rhs.append(Fraction(b_ub[i]))
        signs.append(1)
    for i in range(n_eq):
        rows.append([Fraction(v) for v in A_eq[i]] + [ZERO] * n_slack)
        rhs.append(Fraction(b_eq[i]))
        signs.append(1)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            signs[i] = -1

    # rows whose slack survived normalization with +1 seed the basis;
    # the rest get artificial columns driven out in phase 1
    basis: list[int] = []
    art_rows: list[int] = []
    for i in range(m):
        if i < n_ub and signs[i] == 1:
            basis.append(n + i)
        else:
            art_rows.append(i)
            basis.append(-1)
    n_art = len(art_rows)
    for r in range(m):
        rows[r] = rows[r] + [ZERO] * n_art
    for k, i in enumerate(art_rows):
        rows[i][width + k] = ONE
        basis[i] = width + k

    tableau = [rows[i] + [rhs[i]] for i in range(m)]
    total_cols = width + n_art

    if n_art:
        phase1 = [ZERO] * total_cols
        for k in range(n_art):
            phase1[width + k] = Fraction(-1)
        value = _run_simplex(tableau, basis, phase1, total_cols, banned=set())
        if value is None:  # pragma: no cover - phase 1 is always bounded
            raise ArithmeticError("phase 1 cannot be unbounded")
        if value != 0:
            return LPResult(INFEASIBLE, [], ZERO, [], [])
        _drive_out_artificials(tableau, basis, width)

    keep = [i for i in range(len(tableau)) if basis[i] >= 0]
    dropped = [i for i in range(len(tableau)) if basis[i] < 0]
    phase2 = obj + [ZERO] * (total_cols - n)
    banned = set(range(width, total_cols))
    live_tableau = [tableau[i] for i in keep]
    live_basis = [basis[i] for i in keep]
    value = _run_simplex(live_tableau, live_basis, phase2, total_cols, banned=banned)
    if value is None:
        return LPResult(UNBOUNDED, [], ZERO, [], [])

    x = [ZERO] * n
    for i, col in enumerate(live_basis):
        if col < n:
            x[col] = live_tableau[i][-1]

    duals = _recover_duals(
        n, rows, signs, keep, dropped, live_basis, phase2, width
    )
    objective = value if maximize else -value
    if not maximize:
        duals = [-y for y in duals]
    return LPResult(OPTIMAL, x, objective, duals[:n_ub], duals[n_ub:])


def _run_simplex(tableau, basis, cost, total_cols, banned) -> Fraction | None:
    """Pivot to optimality with Bland's rule; returns the objective value."""
    m = len(tableau)
    while True:
        cb = [cost[basis[i]] for i in range(m)]
        entering = -1
        for j in range(total_cols):
            if j in banned or j in basis:
                continue
            reduced = cost[j] - sum(cb[i] * tableau[i][j] for i in range(m))
            if reduced > 0:
                entering = j
                break
        if entering < 0:
            return sum(cb[i] * tableau[i][-1] for i in range(m))
        leaving = -1
        best = None
        for i in range(m):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            return None
        _pivot(tableau, basis, leaving, entering)


def _pivot(tableau, basis, row, col) -> None:
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for i in range(len(tableau)):
        if i != row and tableau[i][col] != 0:
            factor = tableau[i][col]
            tableau[i] = [a - factor * b for a, b in zip(tableau[i], tableau[row])]
    basis[row] = col


def _drive_out_artificials(tableau, basis, width) -> None:
    """Pivot zero-level artificials out; mark dependent rows with basis -1."""
    for i in range(len(tableau)):
        if basis[i] >= width:
            col = next((j for j in range(width) if tableau[i][j] != 0), None)
            if col is None:
                basis[i] = -1  # redundant row, carries dual 0
            else:
                _pivot(tableau, basis, i, col)


def _recover_duals(n, rows, signs, keep, dropped, live_basis, cost, width):
    """Solve B^T y = c_B on the kept rows of the original (normalized) system."""
    m = len(keep)
    if m == 0:
        return [ZERO] * len(rows)
    bt = [[rows[keep[r]][live_basis[i]] for r in range(m)] for i in range(m)]
    cb = [cost[live_basis[i]] for i in range(m)]
    y = _gauss_solve(bt, cb)
    duals = [ZERO] * len(rows)
    for r, i in enumerate(keep):
        duals[i] = signs[i] * y[r]
    return duals


def _gauss_solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    m = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(m)]
    cols = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        factor = aug[row][col]
        aug[row] = [v / factor for v in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [u - f * v for u, v in zip(aug[r], aug[row])]
        cols.append(col)
        row += 1
        if row == m:
            break
    x = [ZERO] * m
    for r, col in enumerate(cols):
        x[col] = aug[r][-1]
    return x
