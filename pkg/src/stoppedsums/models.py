"""Model specifications: a marginal rule plus a counting law.

A marginal rule maps the summand index k = 1, 2, ... to a marginal law via
an ordered list of (selector, law) pairs.  Selectors are ``odd``, ``even``,
``index(i)`` and ``default``; the first match wins, so finitely many index
overrides sit on top of an eventually periodic pattern.  That periodicity is
what lets the condition checkers evaluate sup-over-n expressions in closed
form instead of by open-ended enumeration.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

from .counting import CountingLaw, Poisson, Zeta4
from .errors import ConfigError
from .laws import Exponential, LiftedGeometric, MarginalLaw, Pareto

__all__ = ["Selector", "ModelSpec", "example_model"]


@dataclass(frozen=True)
class Selector:
    """Index matcher: kind in {'odd', 'even', 'index', 'default'}."""

    kind: str
    index: int | None = None

    def __post_init__(self):
        if self.kind not in ("odd", "even", "index", "default"):
            raise ConfigError(f"unknown selector kind: {self.kind!r}")
        if (self.kind == "index") != (self.index is not None):
            raise ConfigError("selector 'index' requires an index, others forbid it")
        if self.index is not None and self.index < 1:
            raise ConfigError("index selectors are 1-based")

    def matches(self, k: int) -> bool:
        if self.kind == "odd":
            return k % 2 == 1
        if self.kind == "even":
            return k % 2 == 0
        if self.kind == "index":
            return k == self.index
        return True

    def label(self) -> str:
        return f"index {self.index}" if self.kind == "index" else self.kind


@dataclass(frozen=True)
class ModelSpec:
    """Heterogeneous summand sequence plus an independent counting law."""

    rule: tuple[tuple[Selector, MarginalLaw], ...]
    counting: CountingLaw
    name: str = "model"

    def __post_init__(self):
        if not self.rule:
            raise ConfigError("marginal rule must contain at least one entry")
        if not any(sel.kind in ("odd", "default") for sel, _ in self.rule):
            # k = 1 must resolve: odd or default entries are the only matchers
            if not any(sel.kind == "index" and sel.index == 1 for sel, _ in self.rule):
                raise ConfigError("marginal rule does not resolve k = 1")
        if not any(sel.kind == "default" for sel, _ in self.rule):
            # without a default, odd+even together must cover all k
            kinds = {sel.kind for sel, _ in self.rule}
            if not {"odd", "even"} <= kinds:
                raise ConfigError("marginal rule must be total over k (add a default)")
        if not self.counting.nondegenerate_at_zero:
            raise ConfigError("counting law must be nondegenerate at zero")

    def law(self, k: int) -> MarginalLaw:
        """Resolve the marginal law of the k-th summand (k >= 1)."""
        if k < 1:
            raise ValueError("summand indices are 1-based")
        for sel, law in self.rule:
            if sel.matches(k):
                return law
        raise ConfigError(f"marginal rule does not cover k = {k}")

    @property
    def period(self) -> int:
        """Period of the eventually periodic part of the rule."""
        kinds = {sel.kind for sel, _ in self.rule}
        return 2 if ("odd" in kinds or "even" in kinds) else 1

    @property
    def max_index_override(self) -> int:
        idx = [sel.index for sel, _ in self.rule if sel.kind == "index"]
        return max(idx) if idx else 0

    def periodic_laws(self) -> list[MarginalLaw]:
        """Laws of one period beyond all index overrides (k0+1 .. k0+period)."""
        k0 = self.max_index_override
        # align to an even boundary so parity matches within the period block
        if k0 % 2 == 1:
            k0 += 1
        return [self.law(k0 + j) for j in range(1, self.period + 1)]

    def distinct_laws(self, k_from: int = 1, k_to: int | None = None) -> list[tuple[int, MarginalLaw]]:
        """One representative index per distinct law among k_from..k_to.

        With k_to None, covers all indices (overrides plus one full period).
        """
        if k_to is None:
            k_to = self.max_index_override + self.period
            if self.max_index_override % 2 == 1:
                k_to += 1
        seen: dict[str, int] = {}
        out: list[tuple[int, MarginalLaw]] = []
        for k in range(k_from, k_to + 1):
            law = self.law(k)
            key = law.label()
            if key not in seen:
                seen[key] = k
                out.append((k, law))
        return out

    def is_iid(self) -> bool:
        return len(self.distinct_laws()) == 1

    def mean_of(self, k: int) -> float:
        return self.law(k).mean()

    def all_means_finite(self, upto: int | None = None) -> bool:
        return all(math.isfinite(law.mean()) for _, law in self.distinct_laws(1, upto))

    def content_hash(self) -> str:
        """Stable hash of the model description, used to key caches."""
        desc = {
            "rule": [(sel.kind, sel.index, law.label()) for sel, law in self.rule],
            "counting": self.counting.label(),
        }
        blob = json.dumps(desc, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def label(self) -> str:
        parts = [f"{sel.label()}: {law.label()}" for sel, law in self.rule]
        return f"{self.name}[{'; '.join(parts)} | {self.counting.label()}]"


def example_model(which: int, q: float = 0.6, poisson_lam: float = 1.0) -> ModelSpec:
    """The two built-in reference models.

    Model 1: lifted geometric on odd indices, unit exponential on even,
    Poisson counting.  Model 2: Pareto(2, 1) on odd indices, unit exponential
    on even, Zeta4 counting.  The default q = 0.6 exhibits the infinite-mean
    regime of the lifted geometric family (any q >= 1/2 does).
    """
    if which == 1:
        return ModelSpec(
            rule=(
                (Selector("odd"), LiftedGeometric(q)),
                (Selector("even"), Exponential(1.0)),
            ),
            counting=Poisson(poisson_lam),
            name="example1",
        )
    if which == 2:
        return ModelSpec(
            rule=(
                (Selector("odd"), Pareto(2.0, 1.0)),
                (Selector("even"), Exponential(1.0)),
            ),
            counting=Zeta4(),
            name="example2",
        )
    raise ValueError("which must be 1 or 2")
