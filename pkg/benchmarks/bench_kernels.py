"""Time the compiled and pure-Python enumeration kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]
"""

import argparse
import time

import numpy as np

from zipstrata import matrixgrp as mg
from zipstrata._kernels import backend_module
from zipstrata.finfield import field_tables, prime_power
from zipstrata.zipdata import ZipDatum


def form_case(kind, n, q, d=1):
    unitary = kind in ("U", "GU")
    p, a = prime_power(q)
    T = field_tables(p, a * d * (2 if unitary else 1))
    allowed = np.zeros(T.spec.size, dtype=np.int64)
    if kind == "GL":
        return (T.zech, T.order, T.neg_one, T.spec.size, n, list(range(n)), [1] * n, 1, allowed, 0)
    if kind == "Sp":
        F, qmul = mg.symplectic_form(n // 2), 1
        allowed[1] = 1
    else:
        F, qmul = np.fliplr(np.eye(n, dtype=np.int64)), q**d
        allowed[1] = 1
    fcol, fsgn = mg.monomial_data(F)
    return (T.zech, T.order, T.neg_one, T.spec.size, n, fcol, fsgn, qmul % T.order, allowed, 1)


def twist_case(family, n, I, q, which):
    d = ZipDatum.make(family, n, I, q)
    s = d.strata[which]
    spec, tw = mg.build_twist(d, s)
    T = field_tables(*_pm(q, tw.m))
    plans = mg._component_plan([tuple(b) for b in spec.blocks], tw.maps, T, q)
    order, steps = max(plans, key=lambda pl: len(spec.blocks[pl[0][0]]))
    bsize = [len(spec.blocks[b]) for b in order]
    st = [(x.src, x.tgt, x.qmul, x.dual, 1, x.assign) for x in steps]
    return (T.zech, T.order, T.neg_one, T.spec.size, bsize, st,
            [x.idx for x in steps], [x.sgn for x in steps])


def _pm(q, m):
    p, a = prime_power(q)
    return p, a * m


WORKLOADS = [
    ("form GL_3(F_2)", "form_filter", lambda: form_case("GL", 3, 2)),
    ("form GL_2(F_9)", "form_filter", lambda: form_case("GL", 2, 3, 2)),
    ("form Sp_4(F_2)", "form_filter", lambda: form_case("Sp", 4, 2)),
    ("form U_2(F_3)", "form_filter", lambda: form_case("U", 2, 3)),
    ("form GU_3(F_2)", "form_filter", lambda: form_case("GU", 3, 2)),
    ("twist GL_4 (2,2) id, q=3", "search_component", lambda: twist_case("A", 4, (1, 3), 3, 0)),
    ("twist Sp_4 id, q=3", "search_component", lambda: twist_case("C", 2, (1,), 3, 0)),
    ("twist Sp_6 open, q=2", "search_component", lambda: twist_case("C", 3, (1, 2), 2, -1)),
]
QUICK = {"form GL_3(F_2)", "form Sp_4(F_2)", "twist Sp_4 id, q=3"}


def bench(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small subset")
    args = ap.parse_args()
    py, cy = backend_module("python"), backend_module("cython")
    print(f"{'workload':28s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s} {'hits':>7s}")
    for name, fname, make in WORKLOADS:
        if args.quick and name not in QUICK:
            continue
        a = make()
        tp, rp = bench(getattr(py, fname), a, 1)
        tc, rc = bench(getattr(cy, fname), a, args.repeat)
        if sorted(rp) != sorted(rc):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:28s} {tp:10.3f} {tc:10.4f} {tp / tc:8.1f} {len(rc):7d}")


if __name__ == "__main__":
    main()
