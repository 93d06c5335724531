"""Verification campaigns: each check expands into instances run serially or on a process pool.

A campaign is a list of JSON-friendly payloads plus a function that evaluates
one payload and returns ``None`` or a failure message.  Results are merged by
instance index, so the worker count never changes the report.  Random choices
come from ``random.Random(f"{seed}/{check}/{index}")``, which lets a single
instance be replayed on its own.
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import metadata
from typing import Callable

from .absolute import (
    enumerate_standard_coxeter,
    leq_T,
    nc_cover_relations,
    nc_elements,
    sorted_standard_coxeter,
    std_coxeter_shape_test,
    t_reduced_words,
)
from .bridge import (
    comp_check,
    lift_compare,
    random_word,
    relations_dn_check,
    rewrite_B_to_D,
)
from .coxeter import (
    CoxeterType,
    SignedPermutation,
    compose,
    group_elements,
    parse_element,
)
from .diagrams import beta_x, is_noncrossing_geometric, planar_routes
from .dual import DualContext, simple_word, word_along
from .errors import CapacityError, UsageError
from .garside import lift_word, words_equal
from .mikado import (
    calibrate,
    is_calibrated,
    is_mikado_garside,
    is_mikado_search,
    mik_d_correspondence,
)

WORKERS_ENV = "DNBRAIDS_WORKERS"
CHECKS = (
    "theorem-main",
    "cor-sdb",
    "prop-lifts",
    "prop-dual-diagrams",
    "thm-mikado-bd",
    "lemma-relations-dn",
    "lemma-std",
    "dual-matsumoto",
    "ar-equivalence",
    "mikado-calibration",
)

# (largest exhaustive rank, largest rank accepted at all); above the first, instances are sampled
CAPACITY = {
    "theorem-main": (5, 6),
    "cor-sdb": (5, 5),
    "prop-lifts": (6, 6),
    "prop-dual-diagrams": (5, 5),
    "thm-mikado-bd": (3, 5),
    "lemma-relations-dn": (8, 8),
    "lemma-std": (7, 7),
    "dual-matsumoto": (5, 5),
    "ar-equivalence": (4, 8),
    "mikado-calibration": (3, 4),
}
MIN_RANK = {"thm-mikado-bd": 2, "mikado-calibration": 1, "lemma-relations-dn": 3}
FAMILIES = {"mikado-calibration": ("A", "B", "D")}


def artifact_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:  # pragma: no cover
        return "0+unknown"


@dataclass
class RunConfig:
    check: str
    family: str = "D"
    rank: int = 3
    coxeter: str | None = None
    element: str | None = None
    seed: int = 0
    workers: int = 1
    samples: int = 200
    output: str | None = None
    inject_failure: int | None = None

    def validate(self) -> None:
        if self.check not in CHECKS:
            raise UsageError(f"unknown check {self.check!r}; choose from {', '.join(CHECKS)}")
        allowed = FAMILIES.get(self.check, ("D",))
        if self.family not in allowed:
            raise UsageError(f"{self.check} runs on families {', '.join(allowed)}, not {self.family}")
        low = MIN_RANK.get(self.check, 3)
        _, hard = CAPACITY[self.check]
        if self.rank < low:
            raise UsageError(f"{self.check} needs rank >= {low}")
        if self.rank > hard:
            raise CapacityError(f"{self.check} is limited to rank <= {hard} (asked for {self.rank})")
        if self.workers < 1 or self.samples < 1:
            raise UsageError("workers and samples must be positive")

    @property
    def ctype(self) -> CoxeterType:
        return CoxeterType(self.family, self.rank)

    @property
    def sampled(self) -> bool:
        return self.rank > CAPACITY[self.check][0]


@dataclass
class Failure:
    instance: str
    detail: str
    reproducer: str

    def to_json(self) -> dict:
        return {"instance": self.instance, "detail": self.detail, "reproducer": self.reproducer}


@dataclass
class Report:
    check: str
    parameters: dict
    instances: int
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    version: str = field(default_factory=artifact_version)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "parameters": self.parameters,
            "instance_count": self.instances,
            "failures": [f.to_json() for f in self.failures],
            "notes": list(self.notes),
            "wall_time": round(self.wall_time, 3),
            "artifact_version": self.version,
        }

    @classmethod
    def from_json(cls, data: dict) -> Report:
        return cls(
            check=data["check"],
            parameters=data["parameters"],
            instances=data["instance_count"],
            failures=[Failure(**f) for f in data["failures"]],
            notes=list(data["notes"]),
            wall_time=data["wall_time"],
            version=data["artifact_version"],
        )

    def summary(self) -> str:
        p = self.parameters
        label = f"{p['family']}_{p['rank']}"
        return f"{'PASS' if self.ok else 'FAIL'} {self.check} {label} ({self.instances} instances)"


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["check", "parameters", "instance_count", "failures", "notes", "wall_time", "artifact_version"],
    "additionalProperties": False,
    "properties": {
        "check": {"enum": list(CHECKS)},
        "parameters": {
            "type": "object",
            "required": ["family", "rank", "coxeter", "element", "seed", "samples", "mode"],
            "properties": {
                "family": {"enum": ["A", "B", "D"]},
                "rank": {"type": "integer", "minimum": 1},
                "coxeter": {"type": ["string", "null"]},
                "element": {"type": ["string", "null"]},
                "seed": {"type": "integer"},
                "samples": {"type": "integer", "minimum": 1},
                "mode": {"enum": ["exhaustive", "sampled"]},
            },
        },
        "instance_count": {"type": "integer", "minimum": 0},
        "failures": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["instance", "detail", "reproducer"],
                "additionalProperties": False,
                "properties": {
                    "instance": {"type": "string"},
                    "detail": {"type": "string"},
                    "reproducer": {"type": "string"},
                },
            },
        },
        "notes": {"type": "array", "items": {"type": "string"}},
        "wall_time": {"type": "number", "minimum": 0},
        "artifact_version": {"type": "string"},
    },
}


def emit(report: Report, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_json(), indent=2) + "\n").encode()
    if fmt != "text":
        raise UsageError(f"unknown report format {fmt!r}")
    lines = [report.summary()]
    lines += [f"  note: {n}" for n in report.notes]
    for f in report.failures:
        lines.append(f"  failure {f.instance}: {f.detail}")
        lines.append(f"    reproduce: {f.reproducer}")
    return ("\n".join(lines) + "\n").encode()


# ---------------------------------------------------------------- payload helpers


def _win(u: SignedPermutation) -> str:
    return "[" + ",".join(str(a) for a in u.window) + "]"


def _elem(family: str, rank: int, window) -> SignedPermutation:
    return SignedPermutation(CoxeterType(family, rank), tuple(window))


@lru_cache(maxsize=128)
def _context(rank: int, c_window: tuple[int, ...]) -> DualContext:
    return DualContext.create(_elem("D", rank, c_window))


def _rng(seed: int, check: str, index: int) -> random.Random:
    return random.Random(f"{seed}/{check}/{index}")


def _coxeters(cfg: RunConfig) -> list[SignedPermutation]:
    if cfg.coxeter is None:
        return sorted_standard_coxeter(cfg.ctype)
    c = parse_element(cfg.ctype, cfg.coxeter)
    _context(cfg.rank, c.window)  # raises on non-standard input
    return [c]


def _elements_below(cfg: RunConfig, c: SignedPermutation) -> list[SignedPermutation]:
    if cfg.element is None:
        return list(nc_elements(c))
    x = parse_element(cfg.ctype, cfg.element)
    if not leq_T(x, c):
        raise UsageError(f"{cfg.element} is not below {_win(c)} in the absolute order")
    return [x]


# ---------------------------------------------------------------- instance evaluators
# Each takes (family, rank, payload) and returns None on success or a failure message.


def _eval_theorem_main(family, rank, payload):
    c_w, x_w, fast = payload
    ctx = _context(rank, tuple(c_w))
    word = simple_word(ctx, _elem(family, rank, x_w)).word
    if fast:
        ok = is_mikado_garside(word, require_calibration=False)
    else:
        ok = is_mikado_search(word, precheck=False) is not None
    return None if ok else "dual simple element is not a Mikado braid"


def _eval_cor_sdb(family, rank, payload):
    c_w, x_w = payload
    ctx = _context(rank, tuple(c_w))
    c, x = ctx.coxeter, _elem(family, rank, x_w)
    routes = planar_routes(x, c)
    if not routes:
        return "no planar split diagram"
    for route in routes:
        try:
            beta_x(x, c, route=route, ctx=ctx)
        except Exception as exc:  # noqa: BLE001  any failure is reported with its message
            return f"{route} route: {exc}"
    return None


def _eval_prop_lifts(family, rank, payload):
    bad = [w for w in payload if not lift_compare(_elem("D", rank, w))]
    return None if not bad else f"{len(bad)} elements differ, first {list(bad[0])}"


@lru_cache(maxsize=4096)
def _beta_image(rank: int, c_window: tuple[int, ...], x_window: tuple[int, ...]):
    ctx = _context(rank, c_window)
    return rewrite_B_to_D(beta_x(_elem("D", rank, x_window), ctx.coxeter, ctx=ctx, check=False).word)


def _eval_dual_diagrams(family, rank, payload):
    c_w, x_w, t_w = payload
    ctx = _context(rank, tuple(c_w))
    c, x, t = ctx.coxeter, _elem(family, rank, x_w), _elem(family, rank, t_w)
    image = lambda u: _beta_image(rank, tuple(c_w), u.window)  # noqa: E731
    if not words_equal(image(x) * image(t), image(compose(x, t))):
        return "image(beta_x) image(beta_t) differs from image(beta_xt)"
    return None


def _eval_mikado_bd(family, rank, payload):
    if payload[0] == "exhaustive":
        result = mik_d_correspondence(rank)
        if result["equal"]:
            return None
        return f"{result['only_b']} braids only from B, {result['only_d']} only from D"
    _, direction, u_w, v_w = payload
    if direction == "b-to-d":
        u, v = _elem("B", rank, u_w), _elem("B", rank, v_w)
        image = rewrite_B_to_D(lift_word(u).inverse() * lift_word(v))
        return None if is_mikado_search(image, precheck=False) else "rewritten B Mikado braid is not Mikado in D"
    u, v = _elem("D", rank, u_w), _elem("D", rank, v_w)
    target = lift_word(u).inverse() * lift_word(v)
    ub, vb = u.with_type(CoxeterType("B", rank)), v.with_type(CoxeterType("B", rank))
    image = rewrite_B_to_D(lift_word(ub).inverse() * lift_word(vb))
    return None if words_equal(image, target) else "D Mikado braid has no B Mikado preimage of the expected form"


def _eval_relations(family, rank, payload):
    rel = relations_dn_check(rank)
    comp = comp_check(rank, samples=payload[0], seed=payload[1])
    msgs = rel.failures + comp.failures
    return None if not msgs else "; ".join(msgs[:5])


def _eval_std(family, rank, payload):
    D = CoxeterType("D", rank)
    brute = enumerate_standard_coxeter(D)
    shaped = frozenset(u for u in group_elements(D) if std_coxeter_shape_test(u))
    if brute == shaped:
        return None
    return f"{len(brute - shaped)} products fail the shape test, {len(shaped - brute)} shaped elements are not products"


def _eval_matsumoto(family, rank, payload):
    c_w, x_w = payload
    ctx = _context(rank, tuple(c_w))
    words, truncated = t_reduced_words(_elem(family, rank, x_w))
    if truncated:
        return "too many reduced reflection words to enumerate"
    first = word_along(ctx, words[0])
    for w in words[1:]:
        if not words_equal(word_along(ctx, w), first):
            return f"reflection word {[_win(t) for t in w]} gives a different braid"
    return None


def _eval_ar(family, rank, payload):
    c_w, windows = payload
    c = _elem(family, rank, c_w)
    bad = [w for w in windows if is_noncrossing_geometric(_elem(family, rank, w), c) != leq_T(_elem(family, rank, w), c)]
    return None if not bad else f"{len(bad)} disagreements, first {list(bad[0])}"


def _eval_calibration(family, rank, payload):
    pair_sample, seed = payload
    result = calibrate(CoxeterType(family, rank), random_words=1000, seed=seed, pair_sample=pair_sample)
    return None if result.ok else f"{len(result.disagreements)} disagreements, first {result.disagreements[0]}"


EVALUATORS: dict[str, Callable] = {
    "theorem-main": _eval_theorem_main,
    "cor-sdb": _eval_cor_sdb,
    "prop-lifts": _eval_prop_lifts,
    "prop-dual-diagrams": _eval_dual_diagrams,
    "thm-mikado-bd": _eval_mikado_bd,
    "lemma-relations-dn": _eval_relations,
    "lemma-std": _eval_std,
    "dual-matsumoto": _eval_matsumoto,
    "ar-equivalence": _eval_ar,
    "mikado-calibration": _eval_calibration,
}


def _run_one(task):
    check, family, rank, payload = task
    try:
        return EVALUATORS[check](family, rank, payload)
    except Exception as exc:  # noqa: BLE001  a crash is a failed instance, not a crashed campaign
        return f"{type(exc).__name__}: {exc}"


# ---------------------------------------------------------------- campaign planning


@dataclass
class Plan:
    tasks: list[tuple[str, list]]  # (instance label, payload)
    count: Callable[[list], int] = lambda payload: 1
    notes: list[str] = field(default_factory=list)


def _reproducer(cfg: RunConfig, c: str | None = None, x: str | None = None) -> str:
    parts = [f"dnbraids verify {cfg.check} --family {cfg.family} --rank {cfg.rank} --seed {cfg.seed}"]
    if c:
        parts.append(f'--coxeter "{c}"')
    if x:
        parts.append(f'--element "{x}"')
    return " ".join(parts)


def _pairs_nc(cfg: RunConfig) -> list[tuple[SignedPermutation, SignedPermutation]]:
    return [(c, x) for c in _coxeters(cfg) for x in _elements_below(cfg, c)]


def _plan(cfg: RunConfig) -> Plan:
    check, n = cfg.check, cfg.rank
    if check == "theorem-main":
        notes = []
        fast = n >= 5
        if fast:
            D = cfg.ctype
            sample = cfg.samples if cfg.sampled else 300
            if not is_calibrated(D):
                result = calibrate(D, random_words=sample, seed=cfg.seed, pair_sample=sample)
                if not result.ok:
                    raise UsageError(f"normal-form criterion disagrees with search on {D}: {result.disagreements[:3]}")
            notes.append(f"normal-form Mikado criterion, calibrated on {sample} random pairs and {sample} random words")
        pairs = _pairs_nc(cfg)
        if cfg.sampled and cfg.element is None:
            pairs = [random.Random(f"{cfg.seed}/{check}/{k}").choice(pairs) for k in range(cfg.samples)]
            notes.append(f"sampled {cfg.samples} (c, x) pairs")
        return Plan([(f"c={_win(c)} x={_win(x)}", [c.window, x.window, fast]) for c, x in pairs], notes=notes)
    if check in ("cor-sdb", "dual-matsumoto"):
        return Plan([(f"c={_win(c)} x={_win(x)}", [c.window, x.window]) for c, x in _pairs_nc(cfg)])
    if check == "prop-dual-diagrams":
        tasks = []
        for c in _coxeters(cfg):
            for cov in nc_cover_relations(c):
                x, t = cov.lower.element, cov.reflection
                if cfg.element is not None and x != parse_element(cfg.ctype, cfg.element):
                    continue
                tasks.append((f"c={_win(c)} x={_win(x)} t={_win(t)}", [c.window, x.window, t.window]))
        return Plan(tasks)
    if check == "prop-lifts":
        elems = [u.window for u in group_elements(cfg.ctype)]
        chunks = [elems[k : k + 256] for k in range(0, len(elems), 256)]
        return Plan([(f"elements {k * 256}..", chunk) for k, chunk in enumerate(chunks)], count=len)
    if check == "ar-equivalence":
        tasks = []
        notes = []
        if cfg.sampled:
            coxes = _coxeters(cfg)
            for k in range(cfg.samples):
                rng = _rng(cfg.seed, check, k)
                c = rng.choice(coxes)
                u = random_word(cfg.ctype, rng.randint(0, 3 * n * n), rng)
                x = u.image()
                if rng.random() < 0.5:  # bias half the samples toward NC(c)
                    x = rng.choice(nc_elements(c))
                tasks.append((f"c={_win(c)} x={_win(x)}", [c.window, [x.window]]))
            notes.append(f"sampled {cfg.samples} (c, x) pairs, half of them from NC(c)")
            return Plan(tasks, count=lambda p: len(p[1]), notes=notes)
        elems = [u.window for u in group_elements(cfg.ctype)]
        if cfg.element is not None:
            elems = [parse_element(cfg.ctype, cfg.element).window]
        for c in _coxeters(cfg):
            for k in range(0, len(elems), 256):
                tasks.append((f"c={_win(c)} elements {k}..", [c.window, elems[k : k + 256]]))
        return Plan(tasks, count=lambda p: len(p[1]))
    if check == "thm-mikado-bd":
        if not cfg.sampled:
            return Plan([(f"rank {n}", ["exhaustive"])], notes=["exact set equality after normal-form deduplication"])
        B = CoxeterType("B", n)
        bs, ds = group_elements(B), group_elements(CoxeterType("D", n))
        tasks = []
        for k in range(cfg.samples):
            rng = _rng(cfg.seed, check, k)
            if k % 2 == 0:
                u = rng.choice(bs)
                v = compose(u, rng.choice(ds).with_type(B))
                tasks.append((f"B pair u={_win(u)} v={_win(v)}", ["sampled", "b-to-d", u.window, v.window]))
            else:
                u, v = rng.choice(ds), rng.choice(ds)
                tasks.append((f"D pair u={_win(u)} v={_win(v)}", ["sampled", "d-to-b", u.window, v.window]))
        return Plan(tasks, notes=[f"sampled {cfg.samples} pairs in both directions"])
    if check == "lemma-relations-dn":
        return Plan([(f"rank {n}", [cfg.samples, cfg.seed])], notes=["braid relations and projection to type A"])
    if check == "lemma-std":
        return Plan([(f"rank {n}", [n])], notes=["n! products against the shape test on all of W"])
    if check == "mikado-calibration":
        order = cfg.ctype.order
        pair_sample = None if order <= 200 else cfg.samples
        note = "all pairs" if pair_sample is None else f"{pair_sample} sampled pairs"
        return Plan([(cfg.ctype.name, [pair_sample, cfg.seed])], notes=[f"{note} and 1000 random words"])
    raise UsageError(f"unknown check {check}")  # pragma: no cover


def _workers(cfg: RunConfig) -> int:
    env = os.environ.get(WORKERS_ENV)
    if cfg.workers == 1 and env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"{WORKERS_ENV} must be an integer") from exc
    return cfg.workers


def verify(cfg: RunConfig) -> Report:
    cfg.validate()
    start = time.perf_counter()
    plan = _plan(cfg)
    tasks = [(cfg.check, cfg.family, cfg.rank, payload) for _, payload in plan.tasks]
    workers = _workers(cfg)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, math.ceil(len(tasks) / (4 * workers)))
            results = list(pool.map(_run_one, tasks, chunksize=chunk))
    else:
        results = [_run_one(t) for t in tasks]
    failures = []
    for k, ((label, payload), res) in enumerate(zip(plan.tasks, results)):
        if cfg.inject_failure is not None and k == cfg.inject_failure:
            res = res or "injected synthetic failure"
        if res is not None:
            c, x = _labels_of(label)
            failures.append(Failure(label, res, _reproducer(cfg, c or cfg.coxeter, x or cfg.element)))
    params = {
        "family": cfg.family,
        "rank": cfg.rank,
        "coxeter": cfg.coxeter,
        "element": cfg.element,
        "seed": cfg.seed,
        "samples": cfg.samples,
        "mode": "sampled" if cfg.sampled else "exhaustive",
    }
    instances = sum(plan.count(payload) for _, payload in plan.tasks)
    report = Report(cfg.check, params, instances, failures, plan.notes)
    report.wall_time = time.perf_counter() - start
    return report


def _labels_of(label: str) -> tuple[str | None, str | None]:
    fields = dict(part.split("=", 1) for part in label.split() if "=" in part)
    return fields.get("c"), fields.get("x")
