"""Re-runnable numerical experiments, one per results table."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import nystrom, problems, rules
from .iterative import IterationConfig, interpolant_iterative

QUAD_COLUMNS = ("G", "antigauss", "gstar", "averaged", "wavg")
_QUAD_KINDS = dict(zip(QUAD_COLUMNS, rules.KINDS))


@dataclass
class RunReport:
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)

    def column(self, name):
        return [row[name] for row in self.rows]

    def row(self, m):
        for r in self.rows:
            if r["m"] == m:
                return r
        raise KeyError(m)

    def to_csv(self, digits=None):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(row[c], digits) for c in self.columns])
        return buf.getvalue()


def _fmt(v, digits):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    if digits is None:
        return f"{v:.16e}"
    return f"{v:.{max(digits - 1, 0)}e}"


def _meta(**kw):
    meta = {"timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    meta.update(kw)
    return meta


def quadrature_errors(name, ms):
    """I - Q(f) for the five rules of the integral ``name``."""
    it = problems.INTEGRALS[name]
    ref = it.value()
    rows = []
    for m in ms:
        row = {"m": m}
        for col, kind in _QUAD_KINDS.items():
            row[col] = ref - rules.apply(rules.make_rule(kind, it.measure, m), it.integrand)
        rows.append(row)
    return RunReport(["m", *QUAD_COLUMNS], rows, _meta(problem=name))


def quadrature_estimates(name, ms):
    it = problems.INTEGRALS[name]
    rows = []
    for m in ms:
        rows.append({
            "m": m,
            "averaged": rules.error_estimate(it.measure, m, it.integrand, rules.AVERAGED).estimate,
            "wavg": rules.error_estimate(it.measure, m, it.integrand).estimate,
        })
    return RunReport(["m", "averaged", "wavg"], rows, _meta(problem=name))


_DIRECT = {
    "G": nystrom.interpolant_gauss,
    "antigauss": nystrom.interpolant_antigauss,
    "gstar": nystrom.interpolant_gstar,
    "averaged": nystrom.interpolant_averaged,
    "hat1": nystrom.interpolant_hat1,
    "hat2": nystrom.interpolant_hat2,
}
_ITER_LABEL = {"iter1": "R3", "iter2": "R4", "iter3": "R5"}


def nystrom_errors(name, ms, direct=(), iterative=(), tol=1e-15, max_iter=100,
                   gamma=0.0, delta=0.0, divergence_factor=None):
    """Weighted uniform errors of the requested interpolants of equation ``name``.

    Direct columns are named after the method; each iterative scheme adds
    an error column (R3/R4/R5) and an iteration-count column (N3/N4/N5).
    """
    prob = problems.equation(name, gamma, delta)
    ref = problems.reference_solution(name)
    cols = ["m", *direct]
    for s in iterative:
        lab = _ITER_LABEL[s]
        cols += [lab, "N" + lab[1:]]
    rows = []
    for m in ms:
        row = {"m": m}
        for meth in direct:
            row[meth] = nystrom.uniform_error(_DIRECT[meth](prob, m), ref)
        for s in iterative:
            cfg = IterationConfig(s, tol, max_iter, divergence_factor=divergence_factor)
            f, res = interpolant_iterative(prob, m, cfg)
            lab = _ITER_LABEL[s]
            row[lab] = nystrom.uniform_error(f, ref)
            row["N" + lab[1:]] = res.iterations
            row.setdefault("_converged", {})[s] = res.converged
        rows.append(row)
    return RunReport(cols, rows, _meta(problem=name, tol=tol, gamma=gamma, delta=delta))


ITER = ("iter1", "iter2", "iter3")

TABLES = {
    1: ("quadrature errors for I1", lambda: quadrature_errors("I1", range(2, 7))),
    2: ("error estimates for I1", lambda: quadrature_estimates("I1", range(2, 7))),
    3: ("quadrature errors for I2", lambda: quadrature_errors("I2", [8, 16, 32, 64, 128])),
    4: ("quadrature errors for I3", lambda: quadrature_errors("I3", [2, 4, 6, 8])),
    5: ("EX1, direct interpolants",
        lambda: nystrom_errors("EX1", [2, 4, 6, 8, 10], direct=tuple(_DIRECT))),
    6: ("EX1, iterative interpolants, tol 1e-15",
        lambda: nystrom_errors("EX1", [2, 4, 6, 8, 10], direct=("hat1",), iterative=ITER)),
    7: ("EX2, gamma = delta = 0, tol 1e-15",
        lambda: nystrom_errors("EX2", [2, 4, 8, 16, 32, 64, 128, 256],
                               direct=("hat1", "hat2"), iterative=ITER)),
    8: ("EX3, tol 1e-12",
        lambda: nystrom_errors("EX3", [2, 4, 8, 16, 32, 64], direct=("hat1",),
                               iterative=ITER, tol=1e-12)),
    9: ("EX2, gamma = delta = 1.24, tol 1e-15",
        lambda: nystrom_errors("EX2", [32, 64, 128, 256], direct=("hat1", "hat2"),
                               iterative=ITER, gamma=1.24, delta=1.24)),
}


def run_table(table_id):
    try:
        title, fn = TABLES[int(table_id)]
    except (KeyError, ValueError):
        raise KeyError(f"unknown table id {table_id!r}; expected one of {sorted(TABLES)}") from None
    report = fn()
    report.metadata.update(table=int(table_id), title=title)
    return report


def signed_errors(name, m=2, points=100):
    """Pointwise f - f_approx for the Gauss, anti-Gauss and G* interpolants."""
    prob = problems.equation(name)
    ref = problems.reference_solution(name)
    y = nystrom.eval_grid(prob.measure, points)
    exact = np.asarray(ref(y), dtype=float)
    rows = []
    fs = {k: _DIRECT[k](prob, m)(y) for k in ("G", "antigauss", "gstar")}
    for i, yi in enumerate(y):
        row = {"y": float(yi)}
        row.update({k: float(exact[i] - v[i]) for k, v in fs.items()})
        rows.append(row)
    return RunReport(["y", "G", "antigauss", "gstar"], rows, _meta(problem=name, m=m))
