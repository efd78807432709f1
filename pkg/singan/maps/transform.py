"""Changes of variables: conjugating a map and checking a claimed conjugacy on random states."""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from sympy import nan, oo, zoo

from ..dsl.ast import Ast, Var, substitute
from ..errors import DegenerateOrbit, DegenerateTransform, InverseMismatch
from .evaluate import evaluate
from .model import BACKWARD, FORWARD, PAIR, SCALAR, MapInstance, step
from .symbolic import from_sympy, reduced, symbol, to_sympy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StateTransform:
    """
    Forward substitution (old X, Y) -> new state and its inverse, both in X, Y.

    ``pointwise`` holds (phi, psi) in the variable ``x`` when the transform acts
    on each entry separately; only such transforms conjugate scalar maps.
    """

    forward: Tuple[Ast, Ast]
    inverse: Tuple[Ast, Ast]
    pointwise: Optional[Tuple[Ast, Ast]] = None

    @classmethod
    def identity(cls) -> "StateTransform":
        x = Var("x")
        return cls.from_pointwise(x, x)

    @classmethod
    def from_pointwise(cls, phi: Ast, psi: Ast) -> "StateTransform":
        on_x = {"x": Var("X")}
        on_y = {"x": Var("Y")}
        return cls(
            forward=(substitute(phi, on_x), substitute(phi, on_y)),
            inverse=(substitute(psi, on_x), substitute(psi, on_y)),
            pointwise=(phi, psi),
        )

    def apply(self, state: tuple) -> tuple:
        env = {"X": state[0], "Y": state[1]}
        return tuple(evaluate(node, env, {}) for node in self.forward)

    def undo(self, state: tuple) -> tuple:
        env = {"X": state[0], "Y": state[1]}
        return tuple(evaluate(node, env, {}) for node in self.inverse)


def _clean(expr, label: str):
    expr = reduced(expr)
    if expr.has(zoo, nan, oo):
        raise DegenerateTransform(f"{label}: substitution produces an identically zero denominator")
    return expr


def _conjugate_scalar(rule: Ast, T: StateTransform, label: str) -> Ast:
    phi, psi = (to_sympy(node) for node in T.pointwise)
    x, y = symbol("x"), symbol("y")
    f = to_sympy(rule)
    inner = f.subs({x: psi, y: psi.subs(x, y)}, simultaneous=True)
    outer = phi.subs(x, inner)
    return from_sympy(_clean(outer, label))


def _conjugate_pair(rule: Tuple[Ast, Ast], T: StateTransform, label: str) -> Tuple[Ast, Ast]:
    X, Y = symbol("X"), symbol("Y")
    psi = tuple(to_sympy(node) for node in T.inverse)
    inner = tuple(to_sympy(node).subs({X: psi[0], Y: psi[1]}, simultaneous=True) for node in rule)
    out = []
    for node in T.forward:
        phi = to_sympy(node)
        out.append(from_sympy(_clean(phi.subs({X: inner[0], Y: inner[1]}, simultaneous=True), label)))
    return tuple(out)


def conjugate_map(m: MapInstance, T: StateTransform, name: str = "") -> MapInstance:
    """The map T o m o T^-1 with both rules in reduced rational form."""
    name = name or f"{m.name}~"
    if m.arity == SCALAR:
        if T.pointwise is None:
            raise DegenerateTransform("scalar maps conjugate only under pointwise transforms")
        forward = (_conjugate_scalar(m.forward[0], T, f"{name} forward"),)
        backward = (_conjugate_scalar(m.backward[0], T, f"{name} backward"),)
    else:
        forward = _conjugate_pair(m.forward, T, f"{name} forward")
        backward = _conjugate_pair(m.backward, T, f"{name} backward")
    return MapInstance(name, m.arity, forward, backward, dict(m.params), m.backward_derived)


@dataclass(frozen=True)
class ConjugacyResult:
    ok: bool
    trials: int
    skipped: int
    counterexample: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def random_rational(rng: random.Random, bound: int) -> Fraction:
    den = 0
    while den == 0:
        den = rng.randint(-bound, bound)
    return Fraction(rng.randint(-bound, bound), den)


def random_state(rng: random.Random, bound: int) -> Tuple[Fraction, Fraction]:
    return (random_rational(rng, bound), random_rational(rng, bound))


def check_conjugacy(
    source: MapInstance,
    T: StateTransform,
    target: MapInstance,
    trials: int = 20,
    seed: int = 0,
    n: int = 0,
    bound: int = 10_000,
) -> ConjugacyResult:
    """
    Verify T(source(s)) == target(T(s)) exactly on ``trials`` random states.

    A scalar state (x_{n-1}, x_n) is read as (X, Y) by the transform. States
    that hit a pole on either side are skipped; if every sampled state is
    degenerate DegenerateTransform is raised.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    passed = skipped = 0
    budget = trials * 10
    while passed < trials and passed + skipped < budget:
        state = random_state(rng, bound)
        try:
            lhs = T.apply(step(source, state, n, FORWARD))
            rhs = step(target, T.apply(state), n, FORWARD)
        except (ZeroDivisionError, DegenerateOrbit):
            skipped += 1
            continue
        if lhs != rhs:
            logger.info("conjugacy fails at state %s: %s != %s", state, lhs, rhs)
            return ConjugacyResult(False, passed + 1, skipped, state)
        passed += 1
    if passed == 0:
        raise DegenerateTransform(f"all {skipped} sampled states were degenerate")
    return ConjugacyResult(True, passed, skipped)


def check_round_trip(m: MapInstance, trials: int = 100, seed: int = 0, n: int = 0, bound: int = 10_000) -> int:
    """
    Check backward(forward(s)) == s and forward(backward(s)) == s on random states.

    Returns the number of non-degenerate states checked; raises InverseMismatch
    with the offending state on a mismatch.
    """
    rng = random.Random(seed)
    checked = 0
    for _ in range(trials):
        state = random_state(rng, bound)
        for first, second, start in ((FORWARD, BACKWARD, n), (BACKWARD, FORWARD, n)):
            try:
                moved = step(m, state, start, first)
                back = step(m, moved, start + 1 if first == FORWARD else start - 1, second)
            except (ZeroDivisionError, DegenerateOrbit):
                continue
            if back != state:
                raise InverseMismatch(f"{m.name}: {first} then {second} maps {state} to {back}")
            checked += 1
    return checked


__all__ = [
    "PAIR",
    "SCALAR",
    "ConjugacyResult",
    "StateTransform",
    "check_conjugacy",
    "check_round_trip",
    "conjugate_map",
    "random_state",
]
