"""Self-contained two-phase primal simplex with Bland's rule.

Solves min c.x subject to A.x <= b with per-variable bounds (default [0, 1]).
Lower bounds are shifted out, upper bounds become explicit rows, and the
problem is solved on a dense tableau.  Bland's rule is used throughout, so the
result is deterministic and cycling cannot occur.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .relaxation import ConstraintSystem

FEAS_TOL = 1e-9
PIVOT_TOL = 1e-11
MAX_ITER = 50_000


class SolverError(Exception):
    pass


class DimensionError(SolverError):
    pass


class IterationLimitError(SolverError):
    """Pivot count exceeded the hard cap."""


@dataclass
class LinearProgram:
    objective: list[float]
    constraints: ConstraintSystem
    bounds: list[tuple[float, float]] | None = None  # default (0, 1) per variable

    def resolved_bounds(self) -> list[tuple[float, float]]:
        n = self.constraints.num_vars
        if self.bounds is None:
            return [(0.0, 1.0)] * n
        if len(self.bounds) != n:
            raise DimensionError(f"{len(self.bounds)} bounds for {n} variables")
        for i, (lo, up) in enumerate(self.bounds):
            if lo > up:
                raise DimensionError(f"variable {i}: lower bound {lo} > upper bound {up}")
        return list(self.bounds)


@dataclass
class LpSolution:
    status: str  # optimal | infeasible | unbounded
    point: np.ndarray | None
    objective_value: float | None
    iterations: int = 0


try:
    import warnings

    from numba import njit, prange
    from numba.core.errors import NumbaWarning

    warnings.filterwarnings("ignore", category=NumbaWarning)  # threading-layer probe noise

    @njit(parallel=True, fastmath=True, cache=True)
    def _pivot_kernel(T, r, j):
        piv = T[r, j]
        ncol = T.shape[1]
        for k in range(ncol):
            T[r, k] /= piv
        for i in prange(T.shape[0]):
            if i != r:
                c = T[i, j]
                if c != 0.0:
                    for k in range(ncol):
                        T[i, k] -= c * T[r, k]

except ImportError:  # pragma: no cover - numba is an optional accelerator
    def _pivot_kernel(T, r, j):
        piv_row = T[r] / T[r, j]
        col = T[:, j].copy()
        nz = np.nonzero(col)[0]  # tableau is sparse in early pivots
        T[nz] -= np.outer(col[nz], piv_row)
        T[r] = piv_row


def _pivot(T: np.ndarray, basis: np.ndarray, r: int, j: int) -> None:
    _pivot_kernel(T, r, j)
    basis[r] = j


STALL_LIMIT = 1000  # degenerate pivots before switching to Bland's rule
PRICE_CANDIDATES = 40  # columns kept for steepest-edge scoring per pivot


def _run_simplex(T: np.ndarray, basis: np.ndarray, ncols: int, start_iter: int,
                 verbose: bool = False) -> tuple[int, str]:
    """Pivot until the objective row (last) has no negative reduced cost.

    Columns [0, ncols) are eligible to enter; rhs is the last column.  The
    entering rule is Dantzig's (most negative reduced cost), falling back to
    Bland's rule after STALL_LIMIT consecutive degenerate pivots so cycling is
    impossible; all ties break by lowest index, so the path is deterministic.
    """
    m = T.shape[0] - 1
    it = start_iter
    stall = 0
    use_bland = False
    last_obj = T[-1, -1]
    while True:
        red = T[-1, :ncols]
        negs = np.nonzero(red < -FEAS_TOL)[0]
        if negs.size == 0:
            return it, "optimal"
        if use_bland:
            j = negs[0]
        else:
            # steepest-edge pricing: normalize the reduced cost by the column
            # norm; scoring only the most negative candidates keeps it cheap
            if negs.size > PRICE_CANDIDATES:
                keep = np.argpartition(red[negs], PRICE_CANDIDATES)[:PRICE_CANDIDATES]
                negs = negs[keep]
            norms = np.sqrt(1.0 + np.einsum("ij,ij->j", T[:m, negs], T[:m, negs]))
            scores = red[negs] / norms
            j = int(negs[np.argmin(scores)])
        col = T[:m, j]
        # prefer well-scaled pivot elements; fall back to tiny ones only if
        # nothing better exists (guards against roundoff blow-up)
        positive = col > 1e-7
        if not positive.any():
            positive = col > PIVOT_TOL
        if not positive.any():
            return it, "unbounded"
        rhs = np.maximum(T[:m, -1], 0.0)  # clamp roundoff-negative rhs
        ratios = np.full(m, np.inf)
        ratios[positive] = rhs[positive] / col[positive]
        rmin = ratios.min()
        tied = np.nonzero(ratios <= rmin + FEAS_TOL)[0]
        if use_bland:
            r = tied[np.argmin(basis[tied])]  # lowest-index basic variable leaves
        else:
            r = tied[np.argmax(col[tied])]  # largest pivot element for stability
        if verbose:
            print(f"pivot {it}: enter x{j}, leave row {r} (x{basis[r]}), ratio {rmin:.6g}")
        _pivot(T, basis, r, j)
        it += 1
        if it > MAX_ITER:
            raise IterationLimitError(f"exceeded {MAX_ITER} pivots")
        obj = T[-1, -1]
        if obj > last_obj + FEAS_TOL * max(1.0, abs(last_obj)):
            # objective row stores -z, so an increase means real progress
            stall = 0
            use_bland = False
            last_obj = obj
        else:
            stall += 1
            if stall >= STALL_LIMIT:
                use_bland = True


def solve(lp: LinearProgram, verbose: bool = False) -> LpSolution:
    """Solve the program, returning an optimal vertex or infeasible/unbounded."""
    cs = lp.constraints
    n = cs.num_vars
    c = np.asarray(lp.objective, dtype=float)
    if c.shape != (n,):
        raise DimensionError(f"objective length {c.size} != num_vars {n}")
    bounds = lp.resolved_bounds()
    lo = np.array([b[0] for b in bounds])
    up = np.array([b[1] for b in bounds])

    A_list, b_list = cs.dense()
    A = np.asarray(A_list, dtype=float).reshape(len(cs.rows), n)
    b = np.asarray(b_list, dtype=float)
    # shift x = x' + lo so x' >= 0; finite upper bounds become rows x'_i <= up-lo
    b = b - A @ lo
    ub_rows = np.nonzero(np.isfinite(up))[0]
    if ub_rows.size:
        E = np.zeros((ub_rows.size, n))
        E[np.arange(ub_rows.size), ub_rows] = 1.0
        A = np.vstack([A, E])
        b = np.concatenate([b, (up - lo)[ub_rows]])
    offset = float(c @ lo)

    # rows with negative rhs are negated so the tableau rhs is nonnegative;
    # their slack enters with coefficient -1 and they need an artificial
    m = A.shape[0]
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0
    slack_sign = np.where(neg, -1.0, 1.0)

    art_rows = np.nonzero(neg)[0]
    n_art = art_rows.size
    ncols = n + m  # structural + slack
    total = ncols + n_art
    T = np.zeros((m + 1, total + 1))
    T[:m, :n] = A
    T[:m, n:ncols] = np.diag(slack_sign)
    T[:m, -1] = b
    basis = np.empty(m, dtype=int)
    basis[:] = n + np.arange(m)
    if n_art:
        for k, r in enumerate(art_rows):
            T[r, ncols + k] = 1.0
            basis[r] = ncols + k
        # phase-1 objective: minimize sum of artificials
        T[-1, :] = 0.0
        for r in art_rows:
            T[-1, :] -= T[r, :]
        T[-1, ncols:total] = 0.0
        iters, status = _run_simplex(T, basis, total, 0, verbose)
        if status == "unbounded" or T[-1, -1] < -FEAS_TOL * max(1.0, abs(b).max()):
            return LpSolution(status="infeasible", point=None,
                              objective_value=None, iterations=iters)
        # pivot out any artificial still basic (at zero level)
        for r in range(m):
            if basis[r] >= ncols:
                row = T[r, :ncols]
                cand = np.nonzero(np.abs(row) > PIVOT_TOL)[0]
                if cand.size:
                    _pivot(T, basis, r, cand[0])
                    iters += 1
        keep = [r for r in range(m) if basis[r] < ncols]
        T = np.hstack([T[:, :ncols], T[:, -1:]])
        T = np.vstack([T[keep], T[-1:]])
        basis = basis[keep]
        m = len(keep)
    else:
        iters = 0
        T = np.hstack([T[:, :ncols], T[:, -1:]])

    # phase 2: rebuild objective row from c and the current basis
    T[-1, :] = 0.0
    T[-1, :n] = c
    for r in range(m):
        cb = T[-1, basis[r]]
        if cb != 0.0:
            T[-1, :] -= cb * T[r, :]
    iters, status = _run_simplex(T, basis, ncols, iters, verbose)
    if status == "unbounded":
        return LpSolution(status="unbounded", point=None,
                          objective_value=None, iterations=iters)
    x = np.zeros(ncols)
    x[basis] = T[:m, -1]
    point = x[:n] + lo
    return LpSolution(status="optimal", point=point,
                      objective_value=float(c @ x[:n]) + offset, iterations=iters)


def is_integral(point, tol: float) -> tuple[bool, list[int] | None]:
    """True plus the rounded 0/1 vector iff every coordinate is within tol of 0 or 1."""
    if not 0.0 < tol < 0.5:
        raise ValueError(f"tolerance must be in (0, 0.5), got {tol}")
    rounded = []
    for v in point:
        if abs(v) <= tol:
            rounded.append(0)
        elif abs(v - 1.0) <= tol:
            rounded.append(1)
        else:
            return False, None
    return True, rounded
