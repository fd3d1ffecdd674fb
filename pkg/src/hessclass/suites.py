"""Verification suites behind ``hess verify``.

A suite run is a list of independent jobs.  Each job is a plain tuple key
``(level, h, operator)`` so it can be shipped to a worker process;
results are gathered back in key order, which keeps reports deterministic
regardless of the degree of parallelism.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .classes import Verdict, _verdict, certify, compute_class
from .groebner import GroebnerTimeout, buchberger, saturate_at
from .hessideal import (
    Operator,
    generic_determinant,
    hess_ideal_I,
    hess_ideal_J,
    phi_image,
    plucker_check,
)
from .perms import HessFn, build_wh, hessenberg_functions
from .polyring import MultiPoly, VarSet
from .schubert import cohomology_normal_form, ktheory_normal_form

LEVELS = ("plucker", "length", "class", "phi-image", "saturation", "independence")
PLUCKER_SIZES = ((1, 1), (2, 2), (2, 3), (3, 3))


@dataclass(frozen=True)
class JobKey:
    level: str
    h: tuple[int, ...] | None
    operator: str

    def label(self) -> str:
        h = ",".join(map(str, self.h)) if self.h else "-"
        return f"{self.level} h={h} op={self.operator}"


# -- individual levels ---------------------------------------------------

def _random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def plucker_suite(instances: int = 100, seed: int = 0) -> list[Verdict]:
    rng = random.Random(seed)
    out = []
    for m, n in PLUCKER_SIZES:
        bad = 0
        for _ in range(instances):
            u = _random_matrix(rng, m, n)
            v = _random_matrix(rng, n, n)
            phi = _random_matrix(rng, m, n)
            k = rng.randint(1, m)
            bad += not plucker_check(u, v, phi, k)
        out.append(_verdict(f"plucker[{m}x{n}]", bad == 0, instances=instances, failures=bad, seed=seed))
    out.append(_verdict("plucker[symbolic 2x2]", plucker_symbolic()))
    return out


def plucker_symbolic() -> bool:
    """Both sides of the identity as polynomials in fresh variables, m = n = 2, every k."""
    names = [f"{c}{i}{j}" for c in "uvp" for i in (1, 2) for j in (1, 2)]
    vs = VarSet(names)

    def block(c):
        return [[MultiPoly.var(vs, f"{c}{i}{j}") for j in (1, 2)] for i in (1, 2)]

    u, v, phi = block("u"), block("v"), block("p")
    return all(plucker_check(u, v, phi, k) for k in (1, 2))


def length_suite(hs: list[HessFn]) -> list[Verdict]:
    bad = []
    for h in hs:
        w = build_wh(h)
        deg = compute_class(h, "cohomology").total_degree
        if not (w.length == h.codim() == deg):
            bad.append(str(h))
    return [_verdict("length", not bad, checked=len(hs), failures=bad)]


def phi_image_check(h: HessFn, X: Operator, budget: float | None) -> Verdict:
    """Reduced Groebner bases of phi(I_{w_h}) and J_{X,h} coincide."""
    a = buchberger(phi_image(X, h), budget=budget)
    b = buchberger(hess_ideal_J(X, h), budget=budget)
    return _verdict("phi-image", a == b, basis_size=len(b))


def saturation_checks(h: HessFn, X: Operator, budget: float | None) -> list[Verdict]:
    J = hess_ideal_J(X, h)
    I = hess_ideal_I(X, h)
    gbJ = buchberger(J, budget=budget)
    outside = [str(g) for g in I.gens if not gbJ.contains(g)]
    out = [_verdict("containment", not outside, generators=len(I.gens), not_in_J=outside)]
    d = generic_determinant(h.n)
    t0 = time.perf_counter()
    try:
        satI = buchberger(saturate_at(I, d, budget), budget=budget)
        satJ = buchberger(saturate_at(J, d, budget), budget=budget)
    except GroebnerTimeout as exc:
        out.append(Verdict("saturation", "timeout", {"pairs_left": exc.pairs_left},
                           time.perf_counter() - t0))
        return out
    v = _verdict("saturation", satI == satJ, basis_size=len(satJ))
    v.seconds = time.perf_counter() - t0
    out.append(v)
    return out


def independence_checks(h: HessFn, budget: float | None, max_n: int | None) -> list[Verdict]:
    """Certify with both witnesses and compare their oracle classes."""
    n = h.n
    nil = certify(h, Operator.regular_nilpotent(n), budget, max_n=max_n)
    ss = certify(h, Operator.regular_semisimple(range(1, n + 1)), budget, max_n=max_n)
    if nil.oracle_kpoly is None or ss.oracle_kpoly is None:
        return [Verdict("independence", "timeout")]
    same_verdicts = [(v.name, v.status) for v in nil.verdicts] == [(v.name, v.status) for v in ss.verdicts]
    md = cohomology_normal_form(nil.oracle_multidegree - ss.oracle_multidegree, n).is_zero()
    kp = ktheory_normal_form(nil.oracle_kpoly.numerator, n) == ktheory_normal_form(ss.oracle_kpoly.numerator, n)
    return [
        _verdict("independence[verdicts]", same_verdicts and nil.passed,
                 nilpotent=[v.status for v in nil.verdicts], semisimple=[v.status for v in ss.verdicts]),
        _verdict("independence[cohomology]", md),
        _verdict("independence[ktheory]", kp),
    ]


# -- job plumbing --------------------------------------------------------

@dataclass(frozen=True)
class SuiteOptions:
    budget: float | None = 60.0
    max_n: int | None = 3
    series_degree: int = 6
    saturate: bool = False
    plucker_instances: int = 100
    seed: int = 0


def run_job(key: JobKey, opts: SuiteOptions) -> list[Verdict]:
    start = time.perf_counter()
    if key.level == "plucker":
        return plucker_suite(opts.plucker_instances, opts.seed)
    h = HessFn(key.h)
    if key.level == "length":
        return length_suite([h])
    if opts.max_n is not None and h.n > opts.max_n:
        raise ValueError(f"Groebner-backed checks are limited to n <= {opts.max_n} (got n = {h.n})")
    try:
        if key.level == "independence":
            return independence_checks(h, opts.budget, opts.max_n)
        X = Operator.parse(key.operator, h.n)
        if key.level == "class":
            return certify(h, X, opts.budget, opts.series_degree, opts.max_n, opts.saturate).verdicts
        if key.level == "phi-image":
            return [phi_image_check(h, X, opts.budget)]
        if key.level == "saturation":
            return saturation_checks(h, X, opts.budget)
    except GroebnerTimeout as exc:
        return [Verdict(key.level, "timeout", {"pairs_left": exc.pairs_left}, time.perf_counter() - start)]
    raise ValueError(f"unknown level {key.level!r}")


def plan(levels: list[str], hs: list[HessFn], operator: str) -> list[JobKey]:
    keys = []
    for level in levels:
        if level == "plucker":
            keys.append(JobKey(level, None, "-"))
        elif level in ("length", "independence"):
            keys.extend(JobKey(level, h.h, "-" if level == "length" else "both") for h in hs)
        else:
            keys.extend(JobKey(level, h.h, operator) for h in hs)
    return keys


def _run_job_pair(args) -> tuple[JobKey, list[Verdict]]:
    key, opts = args
    return key, run_job(key, opts)


def run_suite(keys: list[JobKey], opts: SuiteOptions, jobs: int = 1) -> list[tuple[JobKey, list[Verdict]]]:
    if jobs <= 1 or len(keys) <= 1:
        return [(k, run_job(k, opts)) for k in keys]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_job_pair, [(k, opts) for k in keys]))


def summarize(results: list[tuple[JobKey, list[Verdict]]]) -> dict[str, int]:
    counts = {"pass": 0, "fail": 0, "timeout": 0}
    for _, verdicts in results:
        for v in verdicts:
            counts[v.status] += 1
    return counts


def report_json(results, config: dict, timings: bool = False) -> dict:
    counts = summarize(results)
    status = "fail" if counts["fail"] else "timeout" if counts["timeout"] else "pass"
    return {
        "tool": "hessclass",
        "version": __version__,
        "config": config,
        "jobs": [
            {
                "level": k.level,
                "h": list(k.h) if k.h else None,
                "operator": k.operator,
                "verdicts": [_jsonable(v.to_json(timings)) for v in vs],
            }
            for k, vs in results
        ],
        "summary": counts,
        "status": status,
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def default_hs(n: int) -> list[HessFn]:
    return list(hessenberg_functions(n))
