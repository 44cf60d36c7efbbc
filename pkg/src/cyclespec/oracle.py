"""Independent ground truth for validation.

Nothing here touches the eta-based machinery: eigenvalues come from cyclic
Jacobi rotations on the dense matrix, or from sign changes of the
characteristic-polynomial factor on the uniform mesh.  Determinants use
partial-pivot elimination.
"""

import math
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpc, mpfr

from .charpoly import ProblemInstance, factor_q
from .numerics import PrecisionContext, g

__all__ = [
    "OracleSpectrum",
    "dense_sym_eig",
    "dense_det",
    "charpoly_root_isolate",
    "NotSymmetric",
    "NoConvergence",
]

_MAX_SWEEPS = 64


class NotSymmetric(Exception):
    """Input matrix asymmetry exceeds the tolerance."""


class NoConvergence(Exception):
    """Jacobi sweep cap reached; input is pathological."""


@dataclass
class OracleSpectrum:
    lambdas: list
    backend: str  # jacobi_rotations | charpoly_bisection
    achieved_tol: mpfr


def _off_diag_frobenius(m, n):
    acc = mpfr(0)
    for i in range(n):
        for q in range(i + 1, n):
            acc += m[i][q] * m[i][q]
    return gmpy2.sqrt(2 * acc)


def dense_sym_eig(M, ctx: PrecisionContext, tol=None) -> OracleSpectrum:
    """All eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps rotate every upper pair (p, q) until the off-diagonal Frobenius
    mass drops below tol (default: matrix norm scaled to working precision).
    Unconditionally convergent for symmetric input; O(n^3) per sweep, meant
    for oracle-scale n.
    """
    n = len(M)
    with ctx.activate():
        frob = gmpy2.sqrt(sum(sum(x * x for x in row) for row in M))
        if tol is None:
            tol = ctx.default_tol * (frob + 1) * n
        else:
            tol = ctx.mpf(tol)
        asym = max(
            abs(M[i][q] - M[q][i]) for i in range(n) for q in range(i + 1, n)
        ) if n > 1 else mpfr(0)
        if asym > tol:
            raise NotSymmetric(f"asymmetry {asym} exceeds tol {tol}")
        a = [[(M[i][q] + M[q][i]) / 2 for q in range(n)] for i in range(n)]
        for _ in range(_MAX_SWEEPS):
            off = _off_diag_frobenius(a, n)
            if off <= tol:
                return OracleSpectrum(
                    lambdas=sorted(a[i][i] for i in range(n)),
                    backend="jacobi_rotations",
                    achieved_tol=off,
                )
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p][q]
                    if apq == 0:
                        continue
                    diff = a[q][q] - a[p][p]
                    if abs(apq) * 10**30 < abs(diff):
                        t = apq / diff
                    else:
                        theta = diff / (2 * apq)
                        t = 1 / (abs(theta) + gmpy2.sqrt(1 + theta * theta))
                        if theta < 0:
                            t = -t
                    c = 1 / gmpy2.sqrt(1 + t * t)
                    s = t * c
                    for k in range(n):
                        akp, akq = a[k][p], a[k][q]
                        a[k][p] = c * akp - s * akq
                        a[k][q] = s * akp + c * akq
                    for k in range(n):
                        apk, aqk = a[p][k], a[q][k]
                        a[p][k] = c * apk - s * aqk
                        a[q][k] = s * apk + c * aqk
        raise NoConvergence(f"off-diagonal mass still above {tol} after {_MAX_SWEEPS} sweeps")


def dense_det(M, ctx: PrecisionContext):
    """Determinant by partial-pivot elimination in working precision."""
    n = len(M)
    with ctx.activate():
        a = [[ctx.scalar(x) for x in row] for row in M]
        det_sign = 1
        for col in range(n):
            piv = max(range(col, n), key=lambda r: abs(a[r][col]))
            if a[piv][col] == 0:
                return mpfr(0)
            if piv != col:
                a[piv], a[col] = a[col], a[piv]
                det_sign = -det_sign
            pivot = a[col][col]
            for r in range(col + 1, n):
                f = a[r][col] / pivot
                if f == 0:
                    continue
                row_r, row_c = a[r], a[col]
                for k in range(col, n):
                    row_r[k] = row_r[k] - f * row_c[k]
        det = mpfr(det_sign)
        for i in range(n):
            det = det * a[i][i]
        return det


def charpoly_root_isolate(inst: ProblemInstance, ctx: PrecisionContext, tol=None) -> OracleSpectrum:
    """All n eigenvalues from the factored characteristic polynomial.

    Mesh points g(k pi/n) with k even are exact roots (the alpha-free
    factor); the remaining root inside each even-index cell is isolated by
    bisecting the sign of q(2 cos(x/2)), evaluated through Chebyshev
    recurrences only.  Entirely independent of the transformed-equation
    solvers.
    """
    if not inst.alpha.is_real:
        raise ValueError("root isolation handles real alpha only")
    n = inst.n
    with ctx.activate():
        tol = ctx.default_tol if tol is None else ctx.mpf(tol)
        pi = ctx.pi

        def q_at(x):
            return factor_q(inst, 2 * gmpy2.cos(x / 2), ctx)

        lambdas = []
        worst = mpfr(0)
        for j in range(1, n + 1):
            if j % 2 == 1:
                lambdas.append(g((j - 1) * pi / n, ctx))
                continue
            lo = (j - 1) * pi / n
            hi = j * pi / n
            q_lo = q_at(lo)
            if not q_lo * q_at(hi) < 0:
                raise RuntimeError(f"no sign change in cell {j} (n={n})")
            steps = max(1, math.ceil(float(gmpy2.log2((hi - lo) / tol))))
            neg_left = q_lo < 0
            for _ in range(steps):
                mid = (lo + hi) / 2
                if (q_at(mid) < 0) == neg_left:
                    lo = mid
                else:
                    hi = mid
            lambdas.append(g((lo + hi) / 2, ctx))
            width = 2 * (hi - lo)  # |g'| <= 2 maps the x-interval to lambda
            if width > worst:
                worst = width
        lambdas.sort()
        return OracleSpectrum(lambdas, "charpoly_bisection", worst)
