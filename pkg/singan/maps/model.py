"""Second-order birational maps and exact forward/backward stepping."""

from dataclasses import dataclass, field
from typing import Dict, Tuple

from ..dsl.ast import Ast, Var, names
from ..errors import DegenerateOrbit, SemanticError
from .evaluate import evaluate
from .params import ParamSeq, param_value

SCALAR = "scalar"
PAIR = "pair"
FORWARD = "forward"
BACKWARD = "backward"

VARIABLES = {SCALAR: frozenset({"x", "y"}), PAIR: frozenset({"X", "Y"})}


@dataclass(frozen=True, eq=False)
class MapInstance:
    """
    One map with both rules.

    Scalar rules read ``x`` = x_n and ``y`` = x_{n-1} and produce x_{n+1};
    the backward rule reads ``x`` = x_n and ``y`` = x_{n+1} and produces
    x_{n-1}. Pair rules read ``X``, ``Y`` and produce both components.
    """

    name: str
    arity: str
    forward: Tuple[Ast, ...]
    backward: Tuple[Ast, ...]
    params: Dict[str, ParamSeq] = field(default_factory=dict)
    backward_derived: bool = False

    def __post_init__(self):
        if self.arity not in VARIABLES:
            raise SemanticError(f"unknown map kind {self.arity!r}")
        size = 1 if self.arity == SCALAR else 2
        allowed = VARIABLES[self.arity]
        for label, rule in ((FORWARD, self.forward), (BACKWARD, self.backward)):
            if len(rule) != size:
                raise SemanticError(f"{self.arity} map {self.name!r}: {label} rule needs {size} component(s)")
            for node in rule:
                stray = names(node, Var) - allowed
                if stray:
                    raise SemanticError(
                        f"map {self.name!r}: variables {sorted(stray)} not allowed in a {self.arity} rule"
                    )
                missing = names(node) - set(self.params)
                if missing:
                    raise SemanticError(f"map {self.name!r}: undeclared parameter(s) {sorted(missing)}")

    @property
    def variables(self) -> frozenset:
        return VARIABLES[self.arity]

    @property
    def autonomous(self) -> bool:
        from .params import Constant

        return all(isinstance(p, Constant) for p in self.params.values())

    def params_at(self, n: int) -> Dict[str, object]:
        return {name: param_value(p, n) for name, p in self.params.items()}

    def with_params(self, params: Dict[str, ParamSeq], name: str = "") -> "MapInstance":
        name = name or self.name
        return MapInstance(name, self.arity, self.forward, self.backward, dict(params), self.backward_derived)


def step(m: MapInstance, state: tuple, n: int, direction: str = FORWARD) -> tuple:
    """
    Advance the state at index ``n`` one step in ``direction``.

    Scalar states are (x_{n-1}, x_n); pair states are (X_n, Y_n). The forward
    step uses parameters at n and the backward step parameters at n - 1.
    """
    if direction == FORWARD:
        rules, index = m.forward, n
    elif direction == BACKWARD:
        rules, index = m.backward, n - 1
    else:
        raise ValueError(f"unknown direction {direction!r}")
    params = m.params_at(index)
    try:
        if m.arity == SCALAR:
            prev, cur = state
            if direction == FORWARD:
                return (cur, evaluate(rules[0], {"x": cur, "y": prev}, params))
            return (evaluate(rules[0], {"x": prev, "y": cur}, params), prev)
        env = {"X": state[0], "Y": state[1]}
        return tuple(evaluate(rule, env, params) for rule in rules)
    except ZeroDivisionError as exc:
        raise DegenerateOrbit(n, f"{direction} step hit a pole ({exc})") from exc
