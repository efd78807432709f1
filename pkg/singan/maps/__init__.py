"""Map model: parameter sequences, rules, stepping and changes of variables."""

from .evaluate import evaluate
from .model import BACKWARD, FORWARD, PAIR, SCALAR, MapInstance, step
from .params import Constant, Explicit, LinRec, MulRec, ParamSeq, param_value
from .symbolic import auto_invert
from .transform import ConjugacyResult, StateTransform, check_conjugacy, check_round_trip, conjugate_map

__all__ = [
    "BACKWARD",
    "FORWARD",
    "PAIR",
    "SCALAR",
    "ConjugacyResult",
    "Constant",
    "Explicit",
    "LinRec",
    "MapInstance",
    "MulRec",
    "ParamSeq",
    "StateTransform",
    "auto_invert",
    "check_conjugacy",
    "check_round_trip",
    "conjugate_map",
    "evaluate",
    "param_value",
    "step",
]
