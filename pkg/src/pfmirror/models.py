"""Monomial descriptions of residue integrands.

The integrand of a period is ``prod_i 1 / (1 - sum_j v_ij)`` where each
``v_ij`` is a signed Laurent monomial in the affine variables times a power
of the family parameter y.  A :class:`MonomialModel` records exactly that.

JSON layout (``phi_ydeg`` is the y-degree of the family parameter, phi = y^7
for both presets, and may be omitted)::

    {"name": "...",
     "variables": ["x1", "x2", ...],
     "factors": [[{"sign": 1, "ydeg": 1, "exponents": {"x2": 1, "x3": -1}}, ...], ...],
     "phi_ydeg": 7}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .lattice import ExponentMatrix


class ModelError(ValueError):
    """A monomial model is malformed."""


@dataclass(frozen=True)
class Monomial:
    sign: int
    ydeg: int
    exponents: tuple[tuple[str, int], ...]

    @classmethod
    def make(cls, sign: int, ydeg: int, **exps: int) -> Monomial:
        return cls(sign, ydeg, tuple(sorted((k, v) for k, v in exps.items() if v)))

    def to_json(self) -> dict:
        return {"sign": self.sign, "ydeg": self.ydeg, "exponents": dict(self.exponents)}


@dataclass(frozen=True)
class MonomialModel:
    name: str
    variables: tuple[str, ...]
    factors: tuple[tuple[Monomial, ...], ...]
    phi_ydeg: int = 7
    exponent_matrix: ExponentMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.phi_ydeg <= 0:
            raise ModelError("phi_ydeg must be positive")
        if not self.variables:
            raise ModelError("model has no variables")
        if not self.factors or not all(self.factors):
            raise ModelError("model needs at least one factor and no empty factors")
        index = {v: i for i, v in enumerate(self.variables)}
        if len(index) != len(self.variables):
            raise ModelError("duplicate variable names")
        rows, signs, ygrades = [], [], []
        for f, factor in enumerate(self.factors):
            for mono in factor:
                row = [0] * len(self.variables)
                for var, e in mono.exponents:
                    if var not in index:
                        raise ModelError(f"factor {f}: unknown variable {var!r}")
                    row[index[var]] = e
                rows.append(row)
                signs.append(mono.sign)
                ygrades.append(mono.ydeg)
        object.__setattr__(self, "exponent_matrix", ExponentMatrix.build(rows, signs, ygrades))

    @property
    def factor_sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)

    def split(self, vector) -> list[tuple[int, ...]]:
        """Cut a flat monomial-exponent vector into per-factor blocks."""
        out, k = [], 0
        for size in self.factor_sizes:
            out.append(tuple(vector[k:k + size]))
            k += size
        return out

    def labels(self) -> list[str]:
        return [f"v{i + 1},{j + 1}" for i, f in enumerate(self.factors) for j in range(len(f))]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "variables": list(self.variables),
            "factors": [[m.to_json() for m in f] for f in self.factors],
            "phi_ydeg": self.phi_ydeg,
        }

    @classmethod
    def from_json(cls, data: dict, name: str | None = None) -> MonomialModel:
        try:
            variables = tuple(data["variables"])
            factors = tuple(
                tuple(
                    Monomial(int(m["sign"]), int(m["ydeg"]),
                             tuple(sorted((str(k), int(v)) for k, v in m["exponents"].items() if v)))
                    for m in factor)
                for factor in data["factors"])
            phi_ydeg = int(data.get("phi_ydeg", 7))
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise ModelError(f"malformed model: {exc!r}") from exc
        return cls(data.get("name", name or "custom"), variables, factors, phi_ydeg)


def load_model(path: str | Path) -> MonomialModel:
    path = Path(path)
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ModelError(f"{path}: top level must be an object")
    return MonomialModel.from_json(data, name=path.stem)


M = Monomial.make


def pfaffian_model() -> MonomialModel:
    """The pfaffian quotient integrand, factors p_0, p_3, p_4 in x_1..x_6."""
    factors = (
        (M(1, 1, x2=1, x5=1, x3=-1, x4=-1),
         M(1, 2, x4=1, x6=1, x3=-1),
         M(1, 2, x1=1, x3=1, x4=-1),
         M(-1, 3, x1=1, x6=1, x3=-1, x4=-1)),
        (M(1, 1, x1=1, x4=1, x2=-1, x3=-1),
         M(1, 2, x2=1, x3=-1, x6=-1),
         M(1, 2, x3=1, x5=1, x2=-1, x6=-1),
         M(-1, 3, x5=1, x2=-1, x3=-1)),
        (M(1, 1, x3=1, x6=1, x4=-1, x5=-1),
         M(1, 2, x5=1, x1=-1, x4=-1),
         M(1, 2, x2=1, x4=1, x1=-1, x5=-1),
         M(-1, 3, x2=1, x4=-1, x5=-1)),
    )
    return MonomialModel("pfaffian", ("x1", "x2", "x3", "x4", "x5", "x6"), factors)


def grassmannian_model() -> MonomialModel:
    """The G(2,7) quotient integrand in the affine chart u_1 = (1,u11,0,...), u_2 = (0,u21,1,...).

    Signs come from expanding each defining equation as ``lead * (1 - sum v)``.
    With them the generators carry signs (+, -, +, -) and the period series
    is positive.
    """
    factors = (
        (M(1, 1, u15=1, u23=1, u21=-1),
         M(-1, 1, u13=1, u25=1, u21=-1)),
        (M(1, 1, u16=1, u24=1, u11=-1),
         M(-1, 1, u14=1, u26=1, u11=-1)),
        (M(-1, 1, u25=1, u13=-1),),
        (M(1, 0, u13=1, u24=1, u14=-1, u23=-1),
         M(-1, 1, u11=1, u26=1, u14=-1, u23=-1),
         M(1, 1, u16=1, u21=1, u14=-1, u23=-1)),
        (M(1, 0, u14=1, u25=1, u15=-1, u24=-1),
         M(1, 1, u15=-1, u24=-1)),
        (M(1, 0, u15=1, u26=1, u16=-1, u25=-1),
         M(-1, 1, u13=1, u21=1, u16=-1, u25=-1),
         M(1, 1, u11=1, u23=1, u16=-1, u25=-1)),
        (M(-1, 1, u14=1, u26=-1),),
    )
    variables = ("u11", "u13", "u14", "u15", "u16", "u21", "u23", "u24", "u25", "u26")
    return MonomialModel("grassmannian", variables, factors)


PRESETS = {"pfaffian": pfaffian_model, "grassmannian": grassmannian_model}


def get_model(name: str) -> MonomialModel:
    """A preset by name, or a model JSON file by path."""
    if name in PRESETS:
        return PRESETS[name]()
    return load_model(name)
