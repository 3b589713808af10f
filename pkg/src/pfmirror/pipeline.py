"""End-to-end runs as a chain of stages over one JSON document.

Each stage takes the document produced so far, adds its own fields and
returns it.  Running the stages one at a time (for instance piped through
the command line) therefore produces exactly the same final document as
:func:`run_pipeline`.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .lattice import integer_kernel_basis, nonneg_kernel_generators
from .mirror import (
    MirrorMap,
    extract_instantons,
    invert_rational_function,
    lambert_roundtrip,
    mirror_map,
    yukawa_phi,
    yukawa_q,
)
from .models import get_model
from .operators import (
    MIN_SURPLUS,
    DiffOperator,
    OperatorError,
    apply,
    fit_operator_report,
    frobenius_log_solution,
    holomorphic_solution,
    indicial_roots,
    invert_coordinate,
    check_frobenius,
)
from .periods import period, period_enumeration
from .series import PowerSeries, RationalFunction, SeriesError, pade, poly_divmod, rational_str

DEFAULT_ORDER = 25
DEFAULT_M = 7
PADE_DEGREES = (1, 3)
STAGES = ("period", "pf-fit", "pf-invert", "mirror-map", "yukawa", "instantons")


class SchemaError(ValueError):
    """A stage was handed a document missing what it needs."""


class StageError(RuntimeError):
    def __init__(self, stage: str, exc: Exception):
        self.stage = stage
        super().__init__(f"stage {stage}: {exc}")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _require(doc: dict, *keys: str, stage: str):
    missing = [k for k in keys if k not in doc]
    if missing:
        raise SchemaError(f"{stage}: input document lacks {', '.join(missing)}")


def _series(doc: dict, key: str, stage: str) -> PowerSeries:
    try:
        return PowerSeries.from_json(doc[key])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{stage}: field {key!r} is not a list of rationals") from exc


def _operator(doc: dict, key: str, stage: str) -> DiffOperator:
    try:
        return DiffOperator.from_json(doc[key])
    except (OperatorError, TypeError, AttributeError) as exc:
        raise SchemaError(f"{stage}: field {key!r} is not an operator: {exc}") from exc


def _check(doc: dict, name: str, ok: bool):
    doc.setdefault("checks", {})[name] = bool(ok)


def _wrap(doc) -> dict:
    """Bare JSON lists are accepted as a series document."""
    if isinstance(doc, list):
        return {"series": doc}
    if not isinstance(doc, dict):
        raise SchemaError("input must be a JSON object or list")
    return dict(doc)


def stage_period(model: str, order: int = DEFAULT_ORDER, oracle: bool = False,
                 oracle_order: int = 6) -> dict:
    mod = get_model(model)
    per = period(mod, order)
    doc = {"model": mod.name, "model_source": model, "point": "zero", "order": order,
           "period": per.series.to_json()}
    if oracle:
        k = min(order, oracle_order)
        enum = period_enumeration(mod, k)
        _check(doc, "oracle", enum.series == per.series.truncate(k))
    return doc


def stage_fit(doc, order: int = 4, deg: int = 5, min_surplus: int = MIN_SURPLUS) -> dict:
    doc = _wrap(doc)
    key = "period" if "period" in doc else "series"
    _require(doc, key, stage="pf-fit")
    f = _series(doc, key, "pf-fit")
    wanted = (order + 1) * (deg + 1) + deg + min_surplus
    if f.order < wanted and "model_source" in doc:
        f = period(doc["model_source"], wanted).series
    fit = fit_operator_report(f, order, deg, min_surplus)
    op = fit.operator
    doc.setdefault("order", f.order if key == "series" else len(doc[key]))
    doc["operator"] = op.to_json()
    doc["fit"] = {"terms": f.order, "equations_used": fit.equations_used,
                  "surplus": fit.surplus}
    _check(doc, "annihilation", not any(apply(op, f).coeffs))
    if op.order == 4 and op.coeffs[-1][0] != 0:
        roots = indicial_roots(op)
        _check(doc, "mum_zero", roots == [0] * 4)
    return doc


def stage_invert(doc, twist: int = 1) -> dict:
    doc = _wrap(doc)
    _require(doc, "operator", stage="pf-invert")
    if doc.get("point") == "infinity":
        raise SchemaError("pf-invert: document is already at infinity")
    op = _operator(doc, "operator", "pf-invert")
    inv = invert_coordinate(op, twist)
    doc["point"] = "infinity"
    doc["operator_zero"] = doc["operator"]
    doc["operator"] = inv.to_json()
    doc["twist"] = twist
    try:
        _check(doc, "mum_infinity", indicial_roots(inv) == [0] * inv.order)
    except OperatorError:
        _check(doc, "mum_infinity", False)
    _check(doc, "twist_involution", invert_coordinate(inv, twist) == op)
    return doc


def _order(doc: dict, stage: str) -> int:
    _require(doc, "order", stage=stage)
    return int(doc["order"])


def stage_mirror_map(doc) -> dict:
    doc = _wrap(doc)
    _require(doc, "operator", stage="mirror-map")
    op = _operator(doc, "operator", "mirror-map")
    n = _order(doc, "mirror-map")
    if doc.get("point", "zero") == "zero" and "period" in doc:
        f0 = _series(doc, "period", "mirror-map").truncate(n)
    else:
        f0 = holomorphic_solution(op, n)
    pair = frobenius_log_solution(op, f0)
    mm = mirror_map(f0, pair.g)
    doc["f0"] = f0.to_json()
    doc["g"] = pair.g.to_json()
    doc["mirror_map"] = mm.to_json()
    _check(doc, "frobenius", check_frobenius(op, pair))
    _check(doc, "mirror_roundtrip",
           mm.q_of_phi.compose(mm.phi_of_q) == PowerSeries.variable(mm.phi_of_q.order))
    return doc


def _closed_form(K: PowerSeries) -> RationalFunction | None:
    try:
        return pade(K, *PADE_DEGREES)
    except SeriesError:
        return None


def stage_yukawa(doc) -> dict:
    """Yukawa coupling in phi and in q, as kappa / m with c1 = 2m.

    The constant c1 multiplies the zero-side coupling written with a
    primitive integer numerator.  At infinity that closed form is carried
    across phi -> 1/phi and compared with the coupling from the inverted
    operator; their ratio fixes the infinity-side weight.
    """
    doc = _wrap(doc)
    _require(doc, "operator", "f0", "mirror_map", stage="yukawa")
    op = _operator(doc, "operator", "yukawa")
    n = _order(doc, "yukawa")
    K = yukawa_phi(op, n)
    point = doc.get("point", "zero")
    if point == "infinity":
        _require(doc, "operator_zero", stage="yukawa")
        op0 = _operator(doc, "operator_zero", "yukawa")
        zero_form = _closed_form(yukawa_phi(op0, n))
    else:
        zero_form = _closed_form(K)
    weight = Fraction(1)
    closed = None
    if zero_form is not None:
        scale, prim = zero_form.scaled_integral()
        if point == "infinity":
            num, den = invert_rational_function(prim, zero_form.denominator)
            twisted = PowerSeries(num, n) / PowerSeries(den, n)
            weight = twisted.coeffs[0]
            _check(doc, "infinity_weight", twisted == K * weight)
            closed = _closed_form(K)
        else:
            weight = 1 / scale
            closed = zero_form
            # the Yukawa poles are the non-repeated part of the leading coefficient
            quot, rem = poly_divmod(op.coeffs[-1], zero_form.denominator)
            _check(doc, "discriminant_divides_leading", not rem)
            doc["leading_cofactor"] = [rational_str(c) for c in quot]
    _check(doc, "yukawa_closed_form", closed is not None)
    f0 = _series(doc, "f0", "yukawa")
    mm_doc = doc["mirror_map"]
    mm = MirrorMap(*(PowerSeries.from_json(mm_doc[k]) for k in ("q_of_phi", "phi_of_q", "jacobian")))
    kappa = yukawa_q(K, mm, f0, 2 * weight)
    doc["yukawa_phi"] = {
        "series": K.to_json(),
        "closed_form": closed.to_json() if closed is not None else None,
        "weight": rational_str(weight),
    }
    doc["yukawa_q"] = kappa.to_json()
    return doc


def stage_instantons(doc, m=None) -> dict:
    doc = _wrap(doc)
    key = "yukawa_q" if "yukawa_q" in doc else "series"
    _require(doc, key, stage="instantons")
    kappa = _series(doc, key, "instantons")
    point = doc.get("point", "zero")
    inst = extract_instantons(kappa, 1, point)
    resolved = inst.resolve(m if m is not None else DEFAULT_M)
    doc["instantons"] = {
        "n0": rational_str(inst.per_m[0]),
        "nd": [rational_str(x) for x in inst.per_m[1:]],
        "m_resolved": {
            "m": rational_str(resolved.m),
            "n0": rational_str(resolved.n0),
            "nd": [rational_str(x) for x in resolved.nd],
        },
    }
    doc["integrality"] = inst.integral
    _check(doc, "lambert_roundtrip", lambert_roundtrip(inst, kappa.order) == kappa)
    _check(doc, "integrality", inst.integral)
    return doc


def run_pipeline(model: str, point: str = "zero", order: int = DEFAULT_ORDER, m=None,
                 oracle: bool = False, fit_order: int = 4, fit_deg: int = 5) -> dict:
    steps = [
        ("period", lambda d: stage_period(model, order, oracle)),
        ("pf-fit", lambda d: stage_fit(d, fit_order, fit_deg)),
    ]
    if point == "infinity":
        steps.append(("pf-invert", stage_invert))
    elif point != "zero":
        raise SchemaError(f"unknown point {point!r}")
    steps += [
        ("mirror-map", stage_mirror_map),
        ("yukawa", stage_yukawa),
        ("instantons", lambda d: stage_instantons(d, m)),
    ]
    doc = None
    for name, step in steps:
        doc = run_stage(name, step, doc)
    return doc


def run_stage(name: str, fn, *args, **kwargs):
    """Call a stage, tagging computational failures with the stage name."""
    try:
        return fn(*args, **kwargs)
    except (SchemaError, StageError):
        raise
    except (OperatorError, SeriesError, ArithmeticError) as exc:
        raise StageError(name, exc) from exc


def checks_passed(doc: dict) -> bool:
    return all(doc.get("checks", {}).values())


def kernel_report(model: str, degree_bound: int | None = None) -> dict:
    mod = get_model(model)
    A = mod.exponent_matrix
    bound = degree_bound if degree_bound is not None else 2 * mod.phi_ydeg
    gens = nonneg_kernel_generators(A, bound)
    labels = mod.labels()
    return {
        "model": mod.name,
        "variables": list(mod.variables),
        "monomials": labels,
        "matrix": [list(r) for r in A.rows],
        "signs": list(A.signs),
        "ygrades": list(A.ygrades),
        "kernel_basis": [list(b) for b in integer_kernel_basis(A)],
        "degree_bound": bound,
        "generators": [
            dict(g.to_json(), product=" ".join(
                f"{lab}^{e}" if e > 1 else lab for lab, e in zip(labels, g.exponents) if e))
            for g in gens
        ],
    }
