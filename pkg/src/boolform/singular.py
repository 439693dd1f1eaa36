"""Dominant singularities, values at the singularity, limiting ratios.

Each model's counting series has a square-root dominant singularity on the
positive axis.  Limiting coefficient ratios S_m/T_m are computed as
lim_{z->rho} S'(z)/T'(z) on a geometric ladder z = rho(1-eps_k) with
Richardson extrapolation in sqrt(eps).

Near the singularity the truncated series are useless (the tail decays
like (1-eps)^order), so the evaluators here use the closed radical or
implicit form of each equation; truncated series only enter through the
z^2- and z^l-substituted terms, which sit deep inside the disk of
convergence and converge geometrically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

import mpmath as mp

from .errors import DomainError, NumericError
from .series import DEFAULT_ORDER, PowerSeries, solve_aux_series, solve_model_series
from .trees import ModelId

DEFAULT_PRECISION = 256


def _horner(coeffs: list, z):
    acc = mp.mpf(0)
    for c in reversed(coeffs):
        acc = acc * z + mp.mpf(c.numerator) / mp.mpf(c.denominator)
    return acc


class _SeriesEval:
    """Horner evaluator with a geometric tail check."""

    def __init__(self, s: PowerSeries):
        self.coeffs = s.coeffs

    def __call__(self, z):
        val = _horner(self.coeffs, z)
        last = self.coeffs[-1]
        tail = abs(mp.mpf(last.numerator) / mp.mpf(last.denominator) * z ** (len(self.coeffs) - 1))
        # geometric tail estimate must be well below the needed accuracy
        if tail > (abs(val) + mp.mpf("1e-30")) * mp.mpf("1e-25"):
            raise NumericError("series tail not negligible at z=%s" % z,
                               diagnostics={"tail": float(tail), "value": float(val)})
        return val


# ---------------------------------------------------------------------------
# per-model analytic evaluators
#
# Each factory returns a dict of closures:
#   T, dT:     model series and derivative
#   st, dst:   simple tautologies realized by x1 (ST^x)
#   g, dg:     or-only path to a leaf x1 (g_x)


def _eval_catalan(n: int, order: int):
    n_ = mp.mpf(n)

    def T(z):
        return (1 - mp.sqrt(1 - 16 * n_ * z)) / 4

    def dT(z):
        return 2 * n_ / mp.sqrt(1 - 16 * n_ * z)

    def gbar(z):
        q = (2 * n_ - 1) * z + T(z) ** 2
        return (1 - mp.sqrt(1 - 4 * q)) / 2

    def dgbar(z):
        q = (2 * n_ - 1) * z + T(z) ** 2
        return ((2 * n_ - 1) + 2 * T(z) * dT(z)) / mp.sqrt(1 - 4 * q)

    def g(z):
        return T(z) - gbar(z)

    def dg(z):
        return dT(z) - dgbar(z)

    def stbar(z):
        gb = gbar(z)
        q0 = 2 * n_ * z + T(z) ** 2 - 2 * gb ** 2
        b = 1 - 4 * gb
        return (-b + mp.sqrt(b * b + 4 * q0)) / 2

    def dstbar(z):
        gb, dgb = gbar(z), dgbar(z)
        sb = stbar(z)
        q0p = 2 * n_ + 2 * T(z) * dT(z) - 4 * gb * dgb
        return (q0p + 4 * dgb * sb) / (2 * sb + 1 - 4 * gb)

    def st(z):
        return T(z) - stbar(z)

    def dst(z):
        return dT(z) - dstbar(z)

    return {"T": T, "dT": dT, "st": st, "dst": dst, "g": g, "dg": dg}


def _F(u):
    return u * u / (1 - u)


def _dF(u):
    return (2 * u - u * u) / (1 - u) ** 2


def _eval_assoc(n: int, order: int):
    n_ = mp.mpf(n)

    def hat(z):
        b = 1 + 2 * n_ * z
        return (b - mp.sqrt(b * b - 16 * n_ * z)) / 4

    def dhat(z):
        h = hat(z)
        return 2 * n_ * (1 - h) / (1 + 2 * n_ * z - 4 * h)

    def T(z):
        return 2 * hat(z) - 2 * n_ * z

    def dT(z):
        return 2 * dhat(z) - 2 * n_

    def g(z):
        h = hat(z)
        return z + _F(h) - _F(h - z)

    def dg(z):
        h, dh = hat(z), dhat(z)
        return 1 + _dF(h) * dh - _dF(h - z) * (dh - 1)

    def st(z):
        h = hat(z)
        return _F(h) - 2 * _F(h - z) + _F(h - 2 * z)

    def dst(z):
        h, dh = hat(z), dhat(z)
        return _dF(h) * dh - 2 * _dF(h - z) * (dh - 1) + _dF(h - 2 * z) * (dh - 2)

    return {"T": T, "dT": dT, "st": st, "dst": dst, "g": g, "dg": dg}


def _eval_comm(n: int, order: int):
    n_ = mp.mpf(n)
    c_series = solve_model_series(ModelId.COMM, n, order)
    gbar_series = solve_aux_series(ModelId.COMM, "gbar_x", n, order)
    stbar_series = solve_aux_series(ModelId.COMM, "stbar_x", n, order)
    ev_c = _SeriesEval(c_series)
    ev_dc = _SeriesEval(c_series.derivative())
    ev_gbar = _SeriesEval(gbar_series)
    ev_dgbar = _SeriesEval(gbar_series.derivative())
    ev_stbar = _SeriesEval(stbar_series)
    ev_dstbar = _SeriesEval(stbar_series.derivative())

    def C(z):
        return (1 - mp.sqrt(1 - 8 * n_ * z - 4 * ev_c(z * z))) / 2

    def dC(z):
        return (2 * n_ + 2 * z * ev_dc(z * z)) / (1 - 2 * C(z))

    def gbar(z):
        q = (2 * n_ - 1) * z + (C(z) ** 2 + ev_c(z * z)) / 2 + ev_gbar(z * z) / 2
        return 1 - mp.sqrt(1 - 2 * q)

    def dgbar(z):
        qp = (2 * n_ - 1) + C(z) * dC(z) + z * ev_dc(z * z) + z * ev_dgbar(z * z)
        return qp / (1 - gbar(z))

    def g(z):
        return C(z) - gbar(z)

    def dg(z):
        return dC(z) - dgbar(z)

    def stbar(z):
        gb = gbar(z)
        q1 = 2 * n_ * z + (C(z) ** 2 + ev_c(z * z)) / 2 + ev_stbar(z * z) / 2
        b = 1 - 2 * gb
        return -b + mp.sqrt(b * b + 2 * (q1 - gb * gb))

    def dstbar(z):
        gb, dgb = gbar(z), dgbar(z)
        sb = stbar(z)
        q1p = 2 * n_ + C(z) * dC(z) + z * ev_dc(z * z) + z * ev_dstbar(z * z)
        return (q1p - 2 * gb * dgb + 2 * dgb * sb) / (sb + 1 - 2 * gb)

    def st(z):
        return C(z) - stbar(z)

    def dst(z):
        return dC(z) - dstbar(z)

    return {"T": C, "dT": dC, "st": st, "dst": dst, "g": g, "dg": dg}


def _eval_assoccomm(n: int, order: int):
    n_ = mp.mpf(n)
    _, hat_series = solve_model_series(ModelId.ASSOC_COMM, n, order, with_half=True)
    ev_hat = _SeriesEval(hat_series)
    ev_dhat = _SeriesEval(hat_series.derivative())

    def tail_sum(z, fn):
        # sum over l >= 2 of fn(l); terms shrink like z^l
        acc = mp.mpf(0)
        l = 2
        while True:
            term = fn(l)
            acc += term
            if abs(z) ** l < mp.eps * mp.mpf(2) ** -16 or l > 6000:
                break
            l += 1
        return acc

    def log_pi(z):
        return tail_sum(z, lambda l: ev_hat(z ** l) / l)

    def dlog_pi(z):
        return tail_sum(z, lambda l: z ** (l - 1) * ev_dhat(z ** l))

    hat_cache: dict = {}

    def hat(z):
        # solve y = (exp(y)*Pi(z) - 1 + 2nz)/2 on the lower branch, where
        # phi(y) = y - rhs is increasing up to the branch point e^y Pi = 2
        if z in hat_cache:
            return hat_cache[z]
        pi = mp.exp(log_pi(z))

        def phi(y):
            return y - (mp.exp(y) * pi - 1 + 2 * n_ * z) / 2

        ycrit = mp.log(2 / pi)
        if phi(ycrit) < 0:
            raise NumericError("argument beyond the branch point",
                               diagnostics={"z": float(z)})
        lo, hi = mp.mpf(0), ycrit
        for _ in range(mp.mp.prec + 20):
            mid = (lo + hi) / 2
            if phi(mid) <= 0:
                lo = mid
            else:
                hi = mid
        y = (lo + hi) / 2
        hat_cache[z] = y
        return y

    def dhat(z):
        y = hat(z)
        e = mp.exp(y) * mp.exp(log_pi(z))
        return (n_ + e * dlog_pi(z) / 2) / (1 - e / 2)

    def T(z):
        return 2 * hat(z) - 2 * n_ * z

    def dT(z):
        return 2 * dhat(z) - 2 * n_

    def _w(z, shift: int):
        # sum over l >= 1 of (hat(z^l) - shift*z^l)/l, exact leading term
        acc = hat(z) - shift * z
        acc += tail_sum(z, lambda l: (ev_hat(z ** l) - shift * z ** l) / l)
        return acc

    def _dw(z, shift: int):
        acc = dhat(z) - shift
        acc += tail_sum(z, lambda l: z ** (l - 1) * (ev_dhat(z ** l) - shift))
        return acc

    def g(z):
        return z / (1 - z) * mp.exp(_w(z, 1))

    def dg(z):
        return g(z) * (1 / z + 1 / (1 - z) + _dw(z, 1))

    def st(z):
        return (z / (1 - z)) ** 2 * mp.exp(_w(z, 2))

    def dst(z):
        return st(z) * (2 / z + 2 / (1 - z) + _dw(z, 2))

    return {"T": T, "dT": dT, "st": st, "dst": dst, "g": g, "dg": dg}


_EVAL_FACTORIES = {
    ModelId.CATALAN: _eval_catalan,
    ModelId.ASSOC: _eval_assoc,
    ModelId.COMM: _eval_comm,
    ModelId.ASSOC_COMM: _eval_assoccomm,
}


def analytic_evaluators(model: ModelId, n: int, order: int = DEFAULT_ORDER):
    """Closed/implicit evaluators for T, ST^x, g_x and their derivatives."""
    return _EVAL_FACTORIES[model](n, order)


# ---------------------------------------------------------------------------
# dominant singularities


@dataclass
class SingularityReport:
    model: ModelId
    n: int
    rho: object
    value_at_rho: object
    method: str


def _bisect(fn: Callable, lo, hi, iters: int = 400):
    flo = fn(lo)
    fhi = fn(hi)
    if flo * fhi > 0:
        raise NumericError("no sign change in bracket",
                           diagnostics={"lo": float(lo), "hi": float(hi)})
    for _ in range(iters):
        mid = (lo + hi) / 2
        fm = fn(mid)
        if fm == 0:
            return mid
        if flo * fm <= 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        if hi - lo < abs(mid) * mp.eps * 4:
            break
    return (lo + hi) / 2


def _branch_condition(model: ModelId, n: int, order: int) -> Callable:
    """Function of z whose smallest positive zero is the singularity."""
    n_ = mp.mpf(n)
    if model is ModelId.CATALAN:
        return lambda z: 1 - 16 * n_ * z
    if model is ModelId.ASSOC:
        return lambda z: (1 + 2 * n_ * z) ** 2 - 16 * n_ * z
    if model is ModelId.COMM:
        ev_c = _SeriesEval(solve_model_series(ModelId.COMM, n, order))
        return lambda z: 1 - 8 * n_ * z - 4 * ev_c(z * z)
    ev_hat = _SeriesEval(solve_model_series(ModelId.ASSOC_COMM, n, order,
                                            with_half=True)[1])

    def log_pi(z):
        acc = mp.mpf(0)
        l = 2
        while True:
            acc += ev_hat(z ** l) / l
            if abs(z) ** l < mp.eps * mp.mpf(2) ** -16 or l > 6000:
                break
            l += 1
        return acc

    # branch point of y = (e^y Pi - 1 + 2nz)/2: e^y Pi = 2 with y = 1/2 + nz
    return lambda z: 2 - mp.exp(mp.mpf(1) / 2 + n_ * z + log_pi(z))


def dominant_singularity(model: ModelId, n: int,
                         precision: int = DEFAULT_PRECISION,
                         method: Optional[str] = None,
                         order: int = DEFAULT_ORDER) -> SingularityReport:
    """Smallest positive singularity of the model series and its value there."""
    if method is None:
        method = "closed-form" if model in (ModelId.CATALAN, ModelId.ASSOC) else "numeric-system"
    with mp.workprec(precision):
        n_ = mp.mpf(n)
        if method == "closed-form":
            if model is ModelId.CATALAN:
                rho = 1 / (16 * n_)
                value = mp.mpf(1) / 4
            elif model is ModelId.ASSOC:
                rho = (3 - 2 * mp.sqrt(2)) / (2 * n_)
                value = mp.sqrt(2) - 1
            else:
                raise DomainError("no closed form for %s" % model.value)
            return SingularityReport(model, n, rho, value, method)
        if method != "numeric-system":
            raise DomainError("unknown method %r" % method)
        cond = _branch_condition(model, n, order)
        # initial bracket chosen so any z^2 / z^l substitutions stay well
        # inside the disk of convergence
        if model is ModelId.COMM:
            hi = mp.mpf(1) / (8 * n_)
        elif model is ModelId.ASSOC_COMM:
            hi = mp.mpf(1) / (4 * n_)
        else:
            hi = mp.mpf(1) / (2 * n_)
        while cond(hi) > 0:
            hi *= 2
            if hi > 10:
                raise NumericError("failed to bracket the singularity",
                                   diagnostics={"model": model.value, "n": n})
        rho = _bisect(cond, mp.mpf(0), hi)
        ev = analytic_evaluators(model, n, order)
        if model is ModelId.ASSOC_COMM:
            # at the branch point the half-series value is 1/2 + n*rho
            value = mp.mpf(1) / 2 + n_ * rho
        else:
            value = ev["T"](rho)
        return SingularityReport(model, n, rho, value, method)


# ---------------------------------------------------------------------------
# limiting ratios


@dataclass
class RatioResult:
    kind: str
    value: object
    diagnostics: dict = field(default_factory=dict)


Evaluator = Union[PowerSeries, Callable]


def _as_derivative_fn(obj: Evaluator) -> Callable:
    if isinstance(obj, PowerSeries):
        d = obj.derivative()
        return lambda z: _horner(d.coeffs, z)
    return obj


def limiting_ratio(numerator: Evaluator, denominator: Evaluator, rho,
                   precision: int = DEFAULT_PRECISION,
                   eps0: float = 1e-2, levels: int = 20,
                   kind: str = "ratio") -> RatioResult:
    """lim_{z->rho} S'(z)/T'(z) by ladder evaluation plus extrapolation.

    numerator / denominator: a PowerSeries (its derivative is evaluated by
    Horner; accuracy is limited by the truncation order) or a callable
    z -> S'(z).  The ladder is eps_k = eps0 * 2^-k; extrapolation is
    Richardson in sqrt(eps), matching the square-root singular expansion.
    """
    with mp.workprec(precision):
        fnum = _as_derivative_fn(numerator)
        fden = _as_derivative_fn(denominator)
        rho = mp.mpf(rho) if not isinstance(rho, mp.mpf) else rho
        ladder = []
        for k in range(levels + 1):
            eps = mp.mpf(eps0) * mp.mpf(2) ** -k
            z = rho * (1 - eps)
            ladder.append(fnum(z) / fden(z))
        # Richardson in sqrt(eps): ratio(eps) = L + a*sqrt(eps) + b*eps + ...
        rows = [list(ladder)]
        for j in range(1, levels + 1):
            prev = rows[-1]
            fac = mp.mpf(2) ** (mp.mpf(j) / 2) - 1
            rows.append([prev[k] + (prev[k] - prev[k - 1]) / fac
                         for k in range(1, len(prev))])
        diag = [rows[j][-1] for j in range(len(rows)) if rows[j]]
        value = diag[-1]
        err = abs(diag[-1] - diag[-2]) if len(diag) > 1 else mp.inf
        raw_err = abs(ladder[-1] - ladder[-2])
        if not (err < raw_err or err < abs(value) * mp.mpf(1e-6) + mp.mpf(1e-30)):
            raise NumericError("ratio ladder failed to converge",
                               diagnostics={"ladder": [float(x) for x in ladder],
                                            "extrapolants": [float(x) for x in diag]})
        return RatioResult(kind, value, {
            "ladder": [float(x) for x in ladder],
            "extrapolants": [float(x) for x in diag],
            "error": float(err),
        })


# ---------------------------------------------------------------------------
# constants


def _plane_factor(model: ModelId) -> int:
    return 4 if model.plane else 2


@lru_cache(maxsize=None)
def _rates(model: ModelId, n: int, precision: int, order: int):
    """(w1, w2) = (n * st-ratio, g-ratio) at this n, high precision."""
    with mp.workprec(precision):
        ev = analytic_evaluators(model, n, order)
        rho = dominant_singularity(model, n, precision, order=order).rho
        r_st = limiting_ratio(ev["dst"], ev["dT"], rho, precision, kind="st_x").value
        r_g = limiting_ratio(ev["dg"], ev["dT"], rho, precision, kind="g_x").value
        return n * r_st, r_g


def w_rates(model: ModelId, n: int, precision: int = DEFAULT_PRECISION,
            order: int = DEFAULT_ORDER):
    """Per-literal rates: w1 ~ P(f = True)·n..., w2 ~ or-path rate.

    w1 = n * lim ST^x_m / T_m (the probability of computing True is
    ~ w1/n); w2 = lim g_x_m / T_m.  Both carry the full 1/n dependence.
    """
    return _rates(model, n, precision, order)


def probability_true(model: ModelId, n: int,
                     precision: int = DEFAULT_PRECISION,
                     order: int = DEFAULT_ORDER):
    """Limit of P_{m,n}(True) as m grows: n^2 * lim ST^x_m/T_m ... / n^2."""
    w1, _ = _rates(model, n, precision, order)
    return n * w1


def probability_literal(model: ModelId, n: int,
                        precision: int = DEFAULT_PRECISION,
                        order: int = DEFAULT_ORDER):
    """n^2-scaled limit probability of computing the fixed literal x1.

    Combines the two simple-x shapes: a factor (4 rho plane / 2 rho
    non-plane) times (tautology part + repeated-literal part).
    """
    with mp.workprec(precision):
        w1, w2 = _rates(model, n, precision, order)
        rho = dominant_singularity(model, n, precision, order=order).rho
        return mp.mpf(n) ** 2 * _plane_factor(model) * rho * (w1 + w2)


REFERENCE_CONSTANTS = {
    (ModelId.CATALAN, "True"): lambda: mp.mpf(3) / 4,
    (ModelId.CATALAN, "literal"): lambda: mp.mpf(5) / 16,
    (ModelId.ASSOC, "True"): lambda: 51 - 36 * mp.sqrt(2),
    (ModelId.ASSOC, "literal"): lambda: 546 - 386 * mp.sqrt(2),
    (ModelId.COMM, "True"): lambda: mp.mpf(641) / 1024,
    (ModelId.COMM, "literal"): lambda: mp.mpf(1153) / 4096,
    (ModelId.ASSOC_COMM, "True"): lambda: (2 * mp.log(2) - 1) ** 2 / 4,
    (ModelId.ASSOC_COMM, "literal"):
        lambda: (2 * mp.log(2) - 1) ** 2 * (2 * mp.log(2) + 1) / 4,
}


def constant_estimate(model: ModelId, target: str,
                      n_grid=(100, 200, 400),
                      precision: int = DEFAULT_PRECISION,
                      order: int = DEFAULT_ORDER):
    """Estimate the n->inf constant by fitting lambda + c/n over n_grid.

    target 'True': n^2-free probability of a tautology (scaled by n).
    target 'literal': probability of the fixed literal (scaled by n^2).
    Returns (lambda, errorbar); the error bar is the shift when the
    smallest n is dropped from the fit.
    """
    if target not in ("True", "literal"):
        raise DomainError("target must be 'True' or 'literal'")
    if len(n_grid) < 3:
        raise DomainError("n_grid needs at least 3 values")
    grid = sorted(n_grid)
    with mp.workprec(precision):
        ys = []
        for n in grid:
            if target == "True":
                ys.append(probability_true(model, n, precision, order))
            else:
                ys.append(probability_literal(model, n, precision, order))

        def fit(ns, vals):
            # least squares for y = lam + c/n
            s1 = mp.mpf(len(ns))
            sx = mp.fsum(1 / mp.mpf(n) for n in ns)
            sxx = mp.fsum(1 / mp.mpf(n) ** 2 for n in ns)
            sy = mp.fsum(vals)
            sxy = mp.fsum(v / mp.mpf(n) for n, v in zip(ns, vals))
            det = s1 * sxx - sx * sx
            return (sxx * sy - sx * sxy) / det

        lam = fit(grid, ys)
        lam2 = fit(grid[1:], ys[1:])
        return lam, abs(lam - lam2)


def singularity_report(model: ModelId, n: int,
                       precision: int = DEFAULT_PRECISION,
                       order: int = DEFAULT_ORDER) -> dict:
    """JSON-ready summary for one (model, n)."""
    with mp.workprec(precision):
        rep = dominant_singularity(model, n, precision, order=order)
        w1, w2 = w_rates(model, n, precision, order)
        return {
            "model": model.value,
            "n": n,
            "rho": mp.nstr(rep.rho, 30),
            "value_at_rho": mp.nstr(rep.value_at_rho, 30),
            "method": rep.method,
            "ratios": {
                "true_const": mp.nstr(probability_true(model, n, precision, order), 20),
                "literal_const": mp.nstr(probability_literal(model, n, precision, order), 20),
            },
            "diagnostics": {"precision_bits": precision, "order": order},
        }
