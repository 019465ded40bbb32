"""Adaptive Simpson quadrature for smooth 1-D integrands."""

from __future__ import annotations


def _panel(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-8, max_bisections: int = 1000) -> float:
    """Integrate f over [a, b] to absolute tolerance `tol`.

    Classic adaptive Simpson with Richardson error control: intervals are
    bisected (worst first) until each local two-panel estimate agrees with
    its one-panel estimate to 15x the locally allotted tolerance, with a
    global cap on the number of bisections.
    """
    if b < a:
        raise ValueError("integration bounds out of order")
    if a == b:
        return 0.0
    fa, fb = f(float(a)), f(float(b))
    m, fm, whole = _panel(f, a, fa, b, fb)
    budget = [max_bisections]
    return _recurse(f, a, fa, m, fm, b, fb, whole, tol, budget)


def _recurse(f, a, fa, m, fm, b, fb, whole, tol, budget):
    lm, flm, left = _panel(f, a, fa, m, fm)
    rm, frm, right = _panel(f, m, fm, b, fb)
    err = left + right - whole
    if budget[0] <= 0 or abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    budget[0] -= 1
    half = 0.5 * tol
    return _recurse(f, a, fa, lm, flm, m, fm, left, half, budget) + _recurse(
        f, m, fm, rm, frm, b, fb, right, half, budget
    )
