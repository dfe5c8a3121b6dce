"""Finite frames for tense logics: model checking, t-morphisms, Jankov formulas and catalogs."""
from .formulas import parse, render, schema
from .frames import Frame, FrameError, build_frame, metrics, read_frame, write_frame
from .jankov import jankov, jankov_refuted
from .morphisms import find_k_t_morphism, find_tmorphism_onto, isomorphic
from .semantics import BudgetExceeded, omega_valid, valid, valid_at

__all__ = [
    "BudgetExceeded",
    "Frame",
    "FrameError",
    "build_frame",
    "find_k_t_morphism",
    "find_tmorphism_onto",
    "isomorphic",
    "jankov",
    "jankov_refuted",
    "metrics",
    "omega_valid",
    "parse",
    "read_frame",
    "render",
    "schema",
    "valid",
    "valid_at",
    "write_frame",
]
__version__ = "0.1.0"
