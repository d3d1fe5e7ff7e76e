"""
Weak head reduction with replayable step traces.

A step only ever fires on the head spine: ``BetaHead`` contracts the redex at
the top of the term, ``AppLeft(s)`` performs ``s`` inside the function position
of an application. Traces are stored so that certificates can be checked
without rerunning the normalizer.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass

from lambda_equiv.errors import FuelExhausted
from lambda_equiv.subst import instantiate
from lambda_equiv.syntax import App, Lam, Tm, is_path

logger = logging.getLogger(__name__)

DEFAULT_FUEL = 10_000


@dataclass(frozen=True, slots=True)
class BetaHead:
    """``(\\x. M) N  ->  M[N/x]`` at the top of the term."""


@dataclass(frozen=True, slots=True)
class AppLeft:
    """Reduce in function position: ``M N -> M' N`` when ``M -> M'``."""

    inner: Step


type Step = BetaHead | AppLeft

BETA = BetaHead()


@dataclass(frozen=True, slots=True)
class MStep:
    """A sequence of steps; the empty sequence is reflexivity."""

    steps: tuple[Step, ...] = ()

    def __add__(self, other: MStep) -> MStep:
        return MStep(self.steps + other.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)


REFL = MStep()


def step_depth(step: Step) -> int:
    """Number of ``AppLeft`` wrappers around the ``BetaHead`` of a step."""
    depth = 0
    while isinstance(step, AppLeft):
        depth += 1
        step = step.inner
    return depth


def step_at_depth(depth: int) -> Step:
    """``AppLeft^depth(BetaHead)``."""
    step: Step = BETA
    for _ in range(depth):
        step = AppLeft(step)
    return step


def is_whnf(term: Tm) -> bool:
    return isinstance(term, Lam) or is_path(term)


def whstep(term: Tm) -> tuple[Tm, Step] | None:
    """The unique weak head step from ``term``, or None if it is weak-head normal."""
    match term:
        case App(Lam(body), arg):
            return instantiate(body, arg), BETA
        case App(fun, arg):
            reduced = whstep(fun)
            if reduced is None:
                return None
            fun2, step = reduced
            return App(fun2, arg), AppLeft(step)
        case _:
            return None


def apply_step(term: Tm, step: Step) -> Tm | None:
    """Perform ``step`` on ``term``; None if the step does not apply there."""
    match step, term:
        case BetaHead(), App(Lam(body), arg):
            return instantiate(body, arg)
        case AppLeft(inner), App(fun, arg):
            fun2 = apply_step(fun, inner)
            return None if fun2 is None else App(fun2, arg)
        case _:
            return None


def replay(term: Tm, trace: MStep) -> Tm | None:
    """The term a trace leads to from ``term``, or None if some step is illegal."""
    current: Tm | None = term
    for step in trace:
        current = apply_step(current, step)
        if current is None:
            return None
    return current


def check_mstep(source: Tm, trace: MStep, target: Tm) -> bool:
    """True iff replaying ``trace`` from ``source`` lands exactly on ``target``."""
    return replay(source, trace) == target


def whnf(term: Tm, fuel: int) -> tuple[Tm, MStep]:
    """
    Weak head normalize ``term``, returning the normal form and the trace.

    Args:
        term: The term to reduce
        fuel: Maximum number of steps to take

    Returns:
        A lambda or a path, and the steps that reached it

    Raises:
        FuelExhausted: If more than ``fuel`` steps would be needed
    """
    steps: list[Step] = []
    current = term
    while (reduced := whstep(current)) is not None:
        if len(steps) >= fuel:
            raise FuelExhausted(fuel, term)
        current, step = reduced
        steps.append(step)
    logger.debug("whnf: %d steps", len(steps))
    return current, MStep(tuple(steps))


def under_app(trace: MStep) -> MStep:
    """Lift a trace of ``M ->* M'`` to one of ``M N ->* M' N``."""
    return MStep(tuple(AppLeft(step) for step in trace))
