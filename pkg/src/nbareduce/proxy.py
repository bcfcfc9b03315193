"""Proxy simulations and the end-to-end reduction pipeline."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import fixedword, simulations, transformers
from .automata import Nba, StateRelation, complete, induced_equivalence, quotient, trim


def proxy_direct(a: Nba) -> StateRelation:
    """Direct proxy simulation: the inverse of the two-sided jump game seeded
    with backward direct simulation.  A preorder in containment order."""
    bw = simulations.backward_direct_sim(a)
    return transformers.tau1(a, bw).transpose()


def proxy_delayed(a: Nba) -> StateRelation:
    """Delayed proxy simulation: like proxy_direct but with the obligation-bit
    winning condition."""
    bw = simulations.backward_direct_sim(a)
    return transformers.tau1_de(a, bw).transpose()


@dataclass(frozen=True)
class StepReport:
    name: str
    before: int
    after: int
    millis: float


@dataclass(frozen=True)
class ReductionReport:
    steps: tuple[StepReport, ...]
    result: Nba

    @property
    def states_in(self) -> int:
        return self.steps[0].before if self.steps else self.result.n_states

    @property
    def states_out(self) -> int:
        return self.result.n_states

    def as_dict(self) -> dict:
        return {
            "states_in": self.states_in,
            "states_out": self.states_out,
            "per_step": [
                {
                    "name": s.name,
                    "before": s.before,
                    "after": s.after,
                    "millis": round(s.millis, 3),
                }
                for s in self.steps
            ],
        }


RELATION_STEPS = {
    "di": simulations.direct_sim,
    "de": simulations.delayed_sim,
    "bw-di": simulations.backward_direct_sim,
    "proxy-di": proxy_direct,
    "proxy-de": proxy_delayed,
}

STRUCTURAL_STEPS = ("trim", "complete")

PIPELINE_STEPS = tuple(RELATION_STEPS) + ("fx-de",) + STRUCTURAL_STEPS


def reduce_pipeline(
    a: Nba,
    steps,
    fx_limits: "fixedword.FxLimits | None" = None,
) -> tuple[Nba, ReductionReport]:
    """Apply quotienting steps in order.

    Each preorder step computes its relation on the current automaton,
    quotients by the induced equivalence, and trims unreachable states.
    The structural steps trim and complete pass through unchanged semantics.
    """
    current = a
    reports: list[StepReport] = []
    for name in steps:
        before = current.n_states
        t0 = time.perf_counter()
        if name in RELATION_STEPS:
            rel = RELATION_STEPS[name](current)
            current, _ = quotient(current, induced_equivalence(rel))
            current = trim(current)
        elif name == "fx-de":
            rel = fixedword.fx_delayed_sim(current, fx_limits).relation
            current, _ = quotient(current, induced_equivalence(rel))
            current = trim(current)
        elif name == "trim":
            current = trim(current)
        elif name == "complete":
            current = complete(current)
        else:
            raise ValueError(f"unknown pipeline step {name!r}")
        millis = (time.perf_counter() - t0) * 1000.0
        reports.append(StepReport(name, before, current.n_states, millis))
    return current, ReductionReport(tuple(reports), current)
