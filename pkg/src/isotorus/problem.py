"""Problem files: a torus, an endomorphism, optional subtori, assumptions and options.

Schema ``isotorus/1``::

    {
      "schema": "isotorus/1",
      "torus": {"field": {"generators": [-1]}, "dim": 2, "lattice": [[elem, ...], ...]},
      "endomorphism": {"matrix": [[elem, ...], ...], "convention": "column"},
      "subtori": [{"basis": [[int, ...], ...]}],
      "assumptions": {"is_simple": false, ...},
      "options": {"power": 1, "height": 1, "cutoff": 40, "primes": []}
    }

Field elements are ``{"coeffs": {"": "4/1", "0": "3/1"}}`` or an integer /
rational string shorthand. ``"convention": "row"`` reads the matrix as
``f(x) = x M`` and stores its transpose. Unknown keys are rejected.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .certificates import Assumptions
from .errors import ParseError, ValidationError
from .field import FieldElement, FieldSpec, field_make
from .torus import ComplexTorus, Endomorphism, Subtorus, endo_make, subtorus_make, torus_make

SCHEMA = "isotorus/1"

TOP_KEYS = {"schema", "torus", "endomorphism", "subtori", "assumptions", "options"}
TORUS_KEYS = {"field", "dim", "lattice"}
FIELD_KEYS = {"generators"}
ENDO_KEYS = {"matrix", "convention"}
SUBTORUS_KEYS = {"basis"}
ASSUMPTION_KEYS = {"is_simple", "factors_pairwise_nonisogenous", "is_product_of_elliptic_curves",
                   "subtorus_list_complete", "jordan_constant", "k_L"}
OPTION_DEFAULTS = {"power": 1, "height": 1, "cutoff": 40, "primes": []}


@dataclass
class ProblemFile:
    torus: ComplexTorus
    endomorphism: Endomorphism | None = None
    subtori: list = field(default_factory=list)
    assumptions: Assumptions = field(default_factory=Assumptions)
    options: dict = field(default_factory=lambda: dict(OPTION_DEFAULTS))

    @property
    def spec(self) -> FieldSpec:
        return self.torus.spec


def _locate(text, needle):
    """Line and column (1-based) of the first occurrence of ``needle``."""
    if text is None:
        return None, None
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _check_keys(obj, allowed, where, text):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    for k in obj:
        if k not in allowed:
            line, col = _locate(text, f'"{k}"')
            raise ParseError(f"{where}: unknown key {k!r}", line, col)


def _require(obj, key, where, text):
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    return x


def _element(spec, obj, where):
    try:
        return FieldElement.from_json(spec, obj)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ParseError(f"{where}: {exc}") from None


def _matrix(spec, rows, where):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{where}: expected a list of rows")
    return [[_element(spec, x, f"{where}[{i}][{j}]") for j, x in enumerate(r)]
            for i, r in enumerate(rows)]


def problem_from_obj(obj, text=None) -> ProblemFile:
    _check_keys(obj, TOP_KEYS, "problem", text)
    schema = obj.get("schema", SCHEMA)
    if schema != SCHEMA:
        line, col = _locate(text, '"schema"')
        raise ParseError(f"unsupported schema {schema!r}", line, col)

    t = _require(obj, "torus", "problem", text)
    _check_keys(t, TORUS_KEYS, "torus", text)
    f = _require(t, "field", "torus", text)
    _check_keys(f, FIELD_KEYS, "torus.field", text)
    gens = _require(f, "generators", "torus.field", text)
    if not isinstance(gens, list):
        raise ParseError("torus.field.generators: expected a list")
    spec = field_make([_int(g, "torus.field.generators") for g in gens])
    dim = _int(_require(t, "dim", "torus", text), "torus.dim")
    lat = _matrix(spec, _require(t, "lattice", "torus", text), "torus.lattice")
    torus = torus_make(spec, dim, lat)

    endo = None
    if "endomorphism" in obj:
        e = obj["endomorphism"]
        _check_keys(e, ENDO_KEYS, "endomorphism", text)
        conv = e.get("convention", "column")
        if conv not in ("column", "row"):
            raise ParseError(f"endomorphism.convention: {conv!r} is not 'row' or 'column'")
        M = _matrix(spec, _require(e, "matrix", "endomorphism", text), "endomorphism.matrix")
        if conv == "row":
            M = [list(c) for c in zip(*M)]
        endo = endo_make(torus, M)

    subtori = []
    for k, s in enumerate(obj.get("subtori", [])):
        _check_keys(s, SUBTORUS_KEYS, f"subtori[{k}]", text)
        basis = _require(s, "basis", f"subtori[{k}]", text)
        if not isinstance(basis, list):
            raise ParseError(f"subtori[{k}].basis: expected a list of rows")
        rows = [[_int(x, f"subtori[{k}].basis") for x in r] for r in basis]
        subtori.append(subtorus_make(torus, rows))

    a = obj.get("assumptions", {})
    _check_keys(a, ASSUMPTION_KEYS, "assumptions", text)
    for key in ASSUMPTION_KEYS - {"jordan_constant", "k_L"}:
        if key in a and not isinstance(a[key], bool):
            raise ParseError(f"assumptions.{key}: expected a boolean")
    jc = a.get("jordan_constant")
    if jc is not None:
        _int(jc, "assumptions.jordan_constant")
    assumptions = Assumptions(**{k: a[k] for k in a})
    if assumptions.k_L is not None:
        _int(assumptions.k_L, "assumptions.k_L")

    o = obj.get("options", {})
    _check_keys(o, set(OPTION_DEFAULTS), "options", text)
    options = dict(OPTION_DEFAULTS)
    for k, v in o.items():
        if k == "primes":
            if not isinstance(v, list):
                raise ParseError("options.primes: expected a list")
            options[k] = [_int(p, "options.primes") for p in v]
        else:
            options[k] = _int(v, f"options.{k}")
    return ProblemFile(torus, endo, subtori, assumptions, options)


def parse_problem(text: str) -> ProblemFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return problem_from_obj(obj, text)


def load_problem(path) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def problem_to_obj(p: ProblemFile) -> dict:
    obj = {"schema": SCHEMA, "torus": p.torus.to_json()}
    if p.endomorphism is not None:
        obj["endomorphism"] = p.endomorphism.to_json()
    obj["subtori"] = [s.to_json() for s in p.subtori]
    obj["assumptions"] = p.assumptions.to_json()
    obj["options"] = dict(p.options)
    return obj


def serialize_problem(p: ProblemFile) -> str:
    return json.dumps(problem_to_obj(p), indent=2, sort_keys=True)


def make_problem(torus, endomorphism=None, subtori=(), assumptions=None, **options) -> ProblemFile:
    opts = dict(OPTION_DEFAULTS)
    opts.update(options)
    return ProblemFile(torus, endomorphism, list(subtori), assumptions or Assumptions(), opts)
