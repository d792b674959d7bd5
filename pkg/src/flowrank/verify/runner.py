"""Run named properties over seeded random instances.

Instance ``i`` of property ``p`` under suite seed ``s`` is driven by a
``Generator`` seeded from ``SeedSequence([s, crc32(p), i])``; the derived
64-bit instance seed is stored with each failure so :func:`replay` can
rebuild exactly that instance.
"""

from __future__ import annotations

import traceback
import zlib
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from flowrank.errors import InvalidSuiteError
from flowrank.verify.properties import REGISTRY, Property, SuiteConfig, Trial


@dataclass(frozen=True)
class Failure:
    property: str
    seed: int
    instance: str
    messages: tuple[str, ...]

    def render(self) -> str:
        lines = [f"property: {self.property}", f"instance seed: {self.seed}"]
        lines += [f"violated: {m}" for m in self.messages]
        lines.append("instance:")
        lines += ["  " + line for line in self.instance.rstrip("\n").splitlines()]
        return "\n".join(lines)


@dataclass(frozen=True)
class PropertyReport:
    name: str
    instances: int
    failures: tuple[Failure, ...] = field(default=())
    exploratory: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures


def instance_seed(suite_seed: int, name: str, index: int) -> int:
    seq = np.random.SeedSequence([suite_seed, zlib.crc32(name.encode()), index])
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def resolve(suite: str | Iterable[str], registry: Mapping[str, Property]) -> list[Property]:
    names = [suite] if isinstance(suite, str) else list(suite)
    out: list[Property] = []
    for raw in names:
        for name in (part.strip() for part in raw.split(",")):
            if not name:
                continue
            if name == "all":
                out.extend(registry.values())
            elif name in registry:
                out.append(registry[name])
            else:
                groups = [p for p in registry.values() if p.group == name]
                if not groups:
                    raise InvalidSuiteError(f"unknown property or group {name!r}")
                out.extend(groups)
    unique: dict[str, Property] = {}
    for p in out:
        unique.setdefault(p.name, p)
    if not unique:
        raise InvalidSuiteError("no properties selected")
    return list(unique.values())


def run_instance(prop: Property, seed: int, config: SuiteConfig) -> Trial:
    trial = Trial(np.random.default_rng(seed), config)
    try:
        prop.check(trial)
    except Exception as exc:  # a crash is a counterexample too
        trial.problems.append(f"raised {type(exc).__name__}: {exc}")
        trial.note(traceback.format_exc(limit=3))
    return trial


def run_property(prop: Property, count: int, seed: int, config: SuiteConfig) -> PropertyReport:
    failures = []
    for i in range(count):
        s = instance_seed(seed, prop.name, i)
        trial = run_instance(prop, s, config)
        if trial.problems:
            failures.append(Failure(prop.name, s, trial.instance, tuple(trial.problems)))
    return PropertyReport(prop.name, count, tuple(failures), prop.exploratory)


def run_suite(
    suite: str | Sequence[str] = "all",
    count: int = 100,
    seed: int = 0,
    *,
    max_n: int = 6,
    max_cap: int = 4,
    registry: Mapping[str, Property] | None = None,
) -> list[PropertyReport]:
    if count < 1:
        raise InvalidSuiteError("count must be at least 1")
    if max_n < 2 or max_cap < 0:
        raise InvalidSuiteError("need max_n >= 2 and max_cap >= 0")
    config = SuiteConfig(max_n=max_n, max_cap=max_cap)
    props = resolve(suite, REGISTRY if registry is None else registry)
    return [run_property(p, count, seed, config) for p in props]


def replay(
    name: str,
    seed: int,
    *,
    max_n: int = 6,
    max_cap: int = 4,
    registry: Mapping[str, Property] | None = None,
) -> Trial:
    registry = REGISTRY if registry is None else registry
    if name not in registry:
        raise InvalidSuiteError(f"unknown property {name!r}")
    return run_instance(registry[name], seed, SuiteConfig(max_n=max_n, max_cap=max_cap))


def suite_passed(reports: Iterable[PropertyReport]) -> bool:
    """True when no non-exploratory property found a counterexample."""
    return all(r.passed or r.exploratory for r in reports)
