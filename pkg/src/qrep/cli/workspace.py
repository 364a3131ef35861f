"""The loaded algebra, named modules and resource caps shared by CLI commands."""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..errors import ParseError
from ..exact_linalg import FieldSpec
from ..quiver_algebra import BoundQuiverAlgebra
from ..representations import (
    Representation,
    direct_sum,
    dual_regular_module,
    indec_injective,
    indec_projective,
    power,
    regular_module,
    simple,
)
from .formats import load_alg, load_rep

DEFAULT_ALG = "paper_A.alg"


@dataclass
class Caps:
    resolution: int = 40
    knit: int = 200
    admissible: int = 20

    @classmethod
    def from_env(cls, env=None) -> "Caps":
        env = os.environ if env is None else env
        out = cls()
        for attr, var in (("resolution", "QREP_CAP_RESOLUTION"), ("knit", "QREP_CAP_KNIT"),
                          ("admissible", "QREP_CAP_ADMISSIBLE")):
            raw = env.get(var)
            if raw is None:
                continue
            try:
                val = int(raw)
            except ValueError:
                raise ParseError(f"{var} must be an integer, got {raw!r}") from None
            if val < 1:
                raise ParseError(f"{var} must be positive")
            setattr(out, attr, val)
        return out


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("qrep.data").joinpath(name)))


def resolve_alg_path(name: str | None) -> Path:
    """A path on disk, falling back to the bundled data directory."""
    if name is None:
        return bundled_path(DEFAULT_ALG)
    p = Path(name)
    if p.exists():
        return p
    b = bundled_path(p.name)
    if b.exists():
        return b
    raise ParseError(f"algebra file not found: {name}")


_TERM = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?\Z")


class Workspace:
    def __init__(self, algebra: BoundQuiverAlgebra, source: str, caps: Caps, modules=None):
        self.algebra = algebra
        self.source = source
        self.caps = caps
        self.modules: dict[str, Representation] = dict(modules or {})

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @classmethod
    def load(cls, alg: str | None = None, field: FieldSpec | None = None, module_files=(),
             caps: Caps | None = None) -> "Workspace":
        caps = caps or Caps.from_env()
        path = resolve_alg_path(alg)
        a = load_alg(path, field, caps.admissible)
        ws = cls(a, path.name, caps)
        for mf in module_files:
            for rep in load_rep(mf, a):
                ws.modules[rep.name] = rep
        return ws

    def builtin(self, name: str) -> Representation | None:
        a = self.algebra
        if name == "A":
            return regular_module(a)
        if name == "DA":
            return dual_regular_module(a)
        if name == "M":
            return direct_sum([regular_module(a), dual_regular_module(a)])[0].renamed("M")
        m = re.fullmatch(r"([SPI])(\d+)", name)
        if m:
            v = int(m.group(2))
            if not 1 <= v <= a.n:
                raise ParseError(f"vertex {v} out of range 1..{a.n} in {name!r}")
            return {"S": simple, "P": indec_projective, "I": indec_injective}[m.group(1)](a, v)
        return None

    def module(self, expr: str) -> Representation:
        """Evaluate ``X``, ``X^k`` and ``X+Y`` over named and built-in modules."""
        parts = [t.strip() for t in expr.split("+")]
        reps = []
        for t in parts:
            m = _TERM.fullmatch(t)
            if not m:
                raise ParseError(f"bad module expression {expr!r}")
            name, k = m.group(1), m.group(2)
            rep = self.modules.get(name) or self.builtin(name)
            if rep is None:
                raise ParseError(f"unknown module {name!r}")
            if k is not None:
                if int(k) < 1:
                    raise ParseError(f"bad exponent in {t!r}")
                rep = power(rep, int(k)).renamed(t)
            reps.append(rep)
        if len(reps) == 1:
            return reps[0]
        return direct_sum(reps)[0].renamed(expr.replace(" ", ""))
