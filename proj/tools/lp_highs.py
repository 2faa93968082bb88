"""LP backend for `mkcs --lp-backend external`.

Reads {"c": [...], "constant": x, "cuts": [{"coeffs": [[p, a], ...], "rhs": b}]}
on stdin, maximizes c.x + constant over the unit box intersected with the
cuts, and prints {"status": ..., "value": ...}. The reported value is the
dual objective, which bounds the LP maximum from above even when the solver
stops slightly short of optimality.
"""
import json
import sys

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix


def main():
    data = json.load(sys.stdin)
    c = np.asarray(data["c"], dtype=float)
    rows, cols, vals, rhs = [], [], [], []
    for i, cut in enumerate(data["cuts"]):
        for p, a in cut["coeffs"]:
            rows.append(i)
            cols.append(p)
            vals.append(a)
        rhs.append(cut["rhs"])
    m = len(rhs)
    kwargs = {}
    if m:
        kwargs["A_ub"] = csr_matrix((vals, (rows, cols)), shape=(m, c.size))
        kwargs["b_ub"] = np.asarray(rhs)
    res = linprog(-c, bounds=(0.0, 1.0), method="highs", **kwargs)
    if res.status != 0:
        print(json.dumps({"status": "failed", "message": res.message}))
        return
    # Dual: min b.y + sum(z) with y, z >= 0 and A^T y + z >= c.
    y = np.zeros(m)
    if m:
        y = np.maximum(-np.asarray(res.ineqlin.marginals), 0.0)
        reduced = c - kwargs["A_ub"].T @ y
    else:
        reduced = c
    dual = float(np.dot(rhs, y) + np.maximum(reduced, 0.0).sum()) if m else float(np.maximum(c, 0.0).sum())
    print(json.dumps({"status": "optimal", "value": dual + data["constant"], "primal": -res.fun + data["constant"]}))


if __name__ == "__main__":
    main()
