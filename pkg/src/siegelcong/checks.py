"""Registry of named verification runs and the suite driver."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .cache import cached_expansion
from .characters import QuadCharacter, carlitz_congruence_check, fundamental_discriminants, gen_bernoulli, kronecker
from .eisenstein import (
    Claim,
    Verdict,
    bernoulli_certificate,
    cohen_h,
    delta_expansion,
    eis1,
    eis2,
    g12_expansion,
    sweep_trace_bound,
    tau_values,
)
from .errors import ConfigError, UnknownCheck
from .exact import INFINITY, bernoulli, is_prime, ord_p, residue_mod_p
from .qexp import KernelMode, congruence_violations, kernel_report, multiply, phi_op
from .quadforms import chi_of_matrix, class_number, hurwitz_class_number
from .report import DEFAULT_VIOLATION_CAP, CongruenceReport, Status

CHECK_IDS = (
    "M1", "M2", "M3", "WILTON", "MOD691", "LEECH23", "PADIC",
    "RING_IDENTITY", "PHI_CONSISTENCY", "HURWITZ_ORACLE", "CLASSNUM_CONGRUENCE",
)

DEFAULTS = {
    "M1": {"prime": 23, "det2_bound": 4000, "t_bound": 100000},
    "M2": {"prime": 7, "det2_bound": 4000, "bound": 100},
    "M3": {"n": 2, "prime": 7},
    "WILTON": {"t_bound": 100000},
    "MOD691": {"t_bound": 100000},
    "LEECH23": {"t_bound": 10000, "max_norm": 6},
    "PADIC": {"prime": 23, "t_bound": 300, "det2_bound": 200},
    "RING_IDENTITY": {"trace_bound": 6, "t_bound": 50},
    "PHI_CONSISTENCY": {"weights": [4, 6, 8, 10, 12, 14], "t_bound": 50},
    "HURWITZ_ORACLE": {"bound": 500},
    "CLASSNUM_CONGRUENCE": {"bound": 200},
}


@dataclass
class RunContext:
    cache_dir: Optional[str] = None
    violation_cap: int = DEFAULT_VIOLATION_CAP


def _hypotheses(report: CongruenceReport, **conds: bool) -> bool:
    failed = [name for name, ok in conds.items() if not ok]
    if failed:
        report.status = Status.INAPPLICABLE
        report.notes.append("hypothesis fails: " + ", ".join(failed))
        report.certificate = {"failing_hypothesis": failed}
        return False
    return True


def _eis2_sweep(ctx: RunContext, k: int, det2_bound: int):
    tb = sweep_trace_bound(det2_bound)
    return cached_expansion(ctx.cache_dir, "eis", 2, k, tb,
                            lambda: eis2(k, tb, det2_bound), det2_bound=det2_bound)


def _check_m1(r: CongruenceReport, ctx: RunContext) -> bool:
    p, D, T = r.params["prime"], r.params["det2_bound"], r.params["t_bound"]
    if not _hypotheses(r, p_prime=is_prime(p), p_gt_7=p > 7, p_3_mod_4=p % 4 == 3):
        return True
    k = (p + 1) // 2
    E2 = _eis2_sweep(ctx, k, D)
    r.add_violations("theta-kernel", kernel_report(E2, p, KernelMode.THETA_KERNEL), ctx.violation_cap)
    E1 = eis1(k, T)
    bad = [t for t in range(1, T + 1) if kronecker(-p, t) == -1 and residue_mod_p(E1[t], p)]
    r.add_violations("sigma", bad, ctx.violation_cap)
    cert = bernoulli_certificate(Claim.M1_DEG3, p=p)
    r.certificate = {"M1_DEG3": cert.to_dict()}
    r.notes.append(f"a(E_{k}^(2), (1,1,1)) = {E2[(1, 1, 1)]}")
    return cert.verdict is Verdict.PASS


def _check_m2(r: CongruenceReport, ctx: RunContext) -> bool:
    p, D, bound = r.params["prime"], r.params["det2_bound"], r.params["bound"]
    if not _hypotheses(r, p_prime=is_prime(p), p_gt_5=p > 5):
        return True
    E2 = _eis2_sweep(ctx, p + 1, D)
    sweep = [T for T in E2.stored_indices() if T.is_positive_definite() and chi_of_matrix(T)(p) == 1]
    residues = {T: residue_mod_p(E2[T], p) for T in sweep}
    r.add_violations("split-prime", [T for T in sweep if residues[T]], ctx.violation_cap)
    certs = {c.value: bernoulli_certificate(c, p=p, bound=bound)
             for c in (Claim.M2_DEG5, Claim.M2_DEG4_SQUARE, Claim.M2_DEG4_NONSQUARE)}
    carlitz_bad, conductor_regime = [], {}
    for d0 in fundamental_discriminants(bound):
        chi = QuadCharacter(d0)
        if d0 % p == 0:
            # p | f: only p-integrality of B_{p,chi}/p is claimed; record it
            v = ord_p(gen_bernoulli(p, chi) / p, p)
            conductor_regime[str(d0)] = str(v)
            if v is not INFINITY and v < 0:
                carlitz_bad.append(d0)
            continue
        if not carlitz_congruence_check(chi, p).equal:
            carlitz_bad.append(d0)
    r.add_violations("carlitz", carlitz_bad, ctx.violation_cap)
    r.certificate = {name: c.to_dict() for name, c in certs.items()}
    r.certificate["carlitz_p_divides_conductor"] = conductor_regime
    r.notes.append(f"sweep over {len(sweep)} classes with chi_T(p) = 1")
    return all(c.verdict is Verdict.PASS for c in certs.values())


def _check_m3(r: CongruenceReport, ctx: RunContext) -> bool:
    cert = bernoulli_certificate(Claim.M3, p=r.params["prime"], n=r.params["n"])
    r.certificate = {"M3": cert.to_dict()}
    if cert.verdict is Verdict.INAPPLICABLE:
        r.status = Status.INAPPLICABLE
        r.notes.append(f"hypothesis fails: {cert.failing_hypothesis}")
        return True
    return cert.verdict is Verdict.PASS


def _check_wilton(r: CongruenceReport, ctx: RunContext) -> bool:
    T = r.params["t_bound"]
    tau = tau_values(T)
    bad = [t for t in range(1, T + 1) if kronecker(-23, t) == -1 and tau[t] % 23]
    r.add_violations("t", bad, ctx.violation_cap)
    r.notes.append(f"tau(2) = {tau[2]}, tau(5) = {tau[5]}" if T >= 5 else "")
    return True


def _check_mod691(r: CongruenceReport, ctx: RunContext) -> bool:
    T = r.params["t_bound"]
    bad = congruence_violations(delta_expansion(T), g12_expansion(T), 691, lambda t: t >= 1)
    r.add_violations("t", bad, ctx.violation_cap)
    return True


def _check_leech(r: CongruenceReport, ctx: RunContext) -> bool:
    from .lattices import leech_lattice, leech_theta_identity_check, short_vector_counts

    max_norm = r.params["max_norm"]
    counts = short_vector_counts(leech_lattice(), max_norm)
    sub = leech_theta_identity_check(r.params["t_bound"], max_norm // 2, counts)
    r.violations = sub.violations[: ctx.violation_cap]
    r.violation_count = sub.violation_count
    r.certificate = {"norm_counts": {str(m): c for m, c in counts.items() if m % 2 == 0}}
    r.notes.extend(sub.notes)
    return True


def _check_padic(r: CongruenceReport, ctx: RunContext) -> bool:
    from .lattices import genus_theta

    p, T, D = r.params["prime"], r.params["t_bound"], r.params["det2_bound"]
    if not _hypotheses(r, p_prime=is_prime(p), p_gt_3=p > 3, p_3_mod_4=p % 4 == 3):
        return True
    k = (p + 1) // 2
    r.add_violations("deg1", congruence_violations(eis1(k, T), genus_theta(p, 1, T), p),
                     ctx.violation_cap)
    tb = sweep_trace_bound(D)
    E2 = eis2(k, tb, D)
    G2 = genus_theta(p, 2, tb, D)
    r.add_violations("deg2", congruence_violations(E2, G2, p), ctx.violation_cap)
    return True


def _check_ring(r: CongruenceReport, ctx: RunContext) -> bool:
    R, T = r.params["trace_bound"], r.params["t_bound"]
    e4, e8 = eis2(4, R), eis2(8, R)
    sq = multiply(e4, e4)
    r.add_violations("deg2", [I for I in sq.stored_indices() if sq[I] != e8[I]], ctx.violation_cap)
    f4, f8 = eis1(4, T), eis1(8, T)
    sq1 = multiply(f4, f4)
    r.add_violations("deg1", [t for t in range(T + 1) if sq1[t] != f8[t]], ctx.violation_cap)
    return True


def _check_phi(r: CongruenceReport, ctx: RunContext) -> bool:
    T = r.params["t_bound"]
    for k in r.params["weights"]:
        lhs, rhs = phi_op(eis2(k, T)), eis1(k, T)
        r.add_violations(f"k{k}", [t for t in range(T + 1) if lhs[t] != rhs[t]], ctx.violation_cap)
    return True


def _check_hurwitz(r: CongruenceReport, ctx: RunContext) -> bool:
    bound = r.params["bound"]
    bad = [N for N in range(1, bound + 1) if N % 4 in (0, 3) and cohen_h(1, N) != hurwitz_class_number(N)]
    r.add_violations("N", bad, ctx.violation_cap)
    return True


def _check_classnum(r: CongruenceReport, ctx: RunContext) -> bool:
    bound = r.params["bound"]
    bad = []
    primes = [p for p in range(11, bound) if p % 4 == 3 and is_prime(p)]
    for p in primes:
        lhs = residue_mod_p(bernoulli((p + 1) // 2), p)
        rhs = residue_mod_p(Fraction(-class_number(-p), 2), p)
        if lhs != rhs:
            bad.append(p)
    r.add_violations("p", bad, ctx.violation_cap)
    r.notes.append(f"{len(primes)} primes checked")
    return True


_RUNNERS: dict[str, Callable[[CongruenceReport, RunContext], bool]] = {
    "M1": _check_m1, "M2": _check_m2, "M3": _check_m3, "WILTON": _check_wilton,
    "MOD691": _check_mod691, "LEECH23": _check_leech, "PADIC": _check_padic,
    "RING_IDENTITY": _check_ring, "PHI_CONSISTENCY": _check_phi,
    "HURWITZ_ORACLE": _check_hurwitz, "CLASSNUM_CONGRUENCE": _check_classnum,
}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def _same_shape(default, value) -> bool:
    if isinstance(default, list):
        return isinstance(value, list) and all(_is_int(v) for v in value)
    return _is_int(value)


def resolve_params(check_id: str, params: Optional[dict] = None) -> dict:
    if check_id not in _RUNNERS:
        raise UnknownCheck(f"unknown check {check_id!r}; known: {', '.join(CHECK_IDS)}")
    merged = dict(DEFAULTS[check_id])
    for key, value in (params or {}).items():
        if key not in merged:
            raise ConfigError(f"check {check_id}: unknown parameter {key!r}")
        if not _same_shape(merged[key], value):
            kind = "a list of non-negative integers" if isinstance(merged[key], list) \
                else "a non-negative integer"
            raise ConfigError(f"check {check_id}: parameter {key!r} must be {kind}, "
                              f"got {json.dumps(value)}")
        merged[key] = value
    return merged


def run_check(check_id: str, params: Optional[dict] = None,
              ctx: Optional[RunContext] = None) -> CongruenceReport:
    ctx = ctx or RunContext()
    report = CongruenceReport(check_id, resolve_params(check_id, params))
    start = time.perf_counter()
    certificates_hold = _RUNNERS[check_id](report, ctx)
    report.notes = [n for n in report.notes if n]
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report.settle(certificates_hold)


# ---------------------------------------------------------------------------
# suite


@dataclass
class SuiteConfig:
    checks: list = field(default_factory=list)  # (id, params) pairs
    jobs: int = 1
    cache_dir: Optional[str] = None


def parse_config(obj) -> SuiteConfig:
    if not isinstance(obj, dict):
        raise ConfigError("config: top level must be a JSON object")
    unknown = set(obj) - {"checks", "jobs", "cache_dir"}
    if unknown:
        raise ConfigError(f"config: unknown field(s) {sorted(unknown)}")
    checks = obj.get("checks", [])
    if not isinstance(checks, list):
        raise ConfigError("config.checks: must be a list")
    parsed = []
    for i, entry in enumerate(checks):
        where = f"config.checks[{i}]"
        if not isinstance(entry, dict) or "id" not in entry:
            raise ConfigError(f"{where}: must be an object with an 'id' field")
        params = entry.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError(f"{where}.params: must be an object")
        try:
            resolve_params(entry["id"], params)
        except (UnknownCheck, ConfigError) as exc:
            raise ConfigError(f"{where}: {exc}") from None
        parsed.append((entry["id"], params))
    jobs = obj.get("jobs", 1)
    if not isinstance(jobs, int) or jobs < 1:
        raise ConfigError("config.jobs: must be a positive integer")
    cache_dir = obj.get("cache_dir")
    if cache_dir is not None and not isinstance(cache_dir, str):
        raise ConfigError("config.cache_dir: must be a string")
    return SuiteConfig(parsed, jobs, cache_dir)


def load_config(path) -> SuiteConfig:
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_config(obj)


def default_config() -> SuiteConfig:
    checks = []
    checks += [("M1", {"prime": p}) for p in (11, 19, 23)]
    checks += [("M2", {"prime": p}) for p in (7, 11, 13)]
    checks += [("M3", {"n": n, "prime": p}) for n, p in ((2, 7), (2, 11), (4, 13), (6, 19), (4, 11))]
    checks += [("WILTON", {}), ("MOD691", {}), ("LEECH23", {})]
    checks += [("PADIC", {"prime": p}) for p in (11, 19, 23)]
    checks += [("RING_IDENTITY", {}), ("PHI_CONSISTENCY", {}), ("HURWITZ_ORACLE", {}),
               ("CLASSNUM_CONGRUENCE", {})]
    return SuiteConfig(checks)


def _run_job(job) -> CongruenceReport:
    check_id, params, cache_dir = job
    return run_check(check_id, params, RunContext(cache_dir=cache_dir))


def run_suite(config: SuiteConfig, jobs: Optional[int] = None,
              cache_dir: Optional[str] = None) -> list[CongruenceReport]:
    jobs = jobs or config.jobs
    cache_dir = cache_dir or config.cache_dir
    work = [(cid, params, cache_dir) for cid, params in config.checks]
    if jobs <= 1 or len(work) <= 1:
        return [_run_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_job, work))


def exit_code(reports) -> int:
    return 1 if any(r.status is Status.FAIL for r in reports) else 0
