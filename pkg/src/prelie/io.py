"""JSON file formats.

Rationals are strings ``"p/q"`` (or ``"p"``).  Indices in files are 1-based.

* algebra: ``{"type": "algebra", "dim": n, "basis": [...], "flavor": ...,
  "products": [{"i": 1, "j": 2, "out": {"1": "1/2"}}, ...]}``
* matrix / linear map: ``{"rows": m, "cols": n, "entries": [[...], ...]}``
* representation: ``{"algebra": ..., "space_dim": m, "rho": [mat...], "mu": [mat...]}``
  or ``{"algebra": ..., "kind": "regular" | "coregular" | "trivial"}``
* triple: ``{"type": "triple", "g": algebra, "h": algebra, "phi": mat}``
* generator: ``{"type": "generator", "triple": ..., "omega": products, "varpi": products, "theta": mat}``
* Nijenhuis pair: ``{"type": "nijenhuis_pair", "triple": ..., "N": mat, "S": mat}``
* symplectic form: ``{"type": "symplectic", "lie": algebra, "omega": mat}``

Nested objects may be given inline or as a path string, resolved relative to
the referring file.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import Algebra, Flavor, MorphismTriple
from .constructions import SMatrixCandidate, SymplecticForm
from .deformations import DeformationGenerator, NijenhuisPair
from .errors import IndexOutOfRange, ParseError, ShapeMismatch
from .linalg import ZERO, Mat, format_rational, parse_rational
from .representations import Representation, coregular_rep, regular_rep, trivial_rep


def _num(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return parse_rational(str(x))
    if not isinstance(x, str):
        raise ParseError(f"expected a rational string, got {x!r}")
    return parse_rational(x)


def _field(obj: dict, key: str):
    if not isinstance(obj, dict):
        raise ParseError(f"expected a JSON object, got {type(obj).__name__}")
    if key not in obj:
        raise ParseError(f"missing field {key!r}")
    return obj[key]


def _count(obj: dict, key: str) -> int:
    v = _field(obj, key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ParseError(f"field {key!r} must be a non-negative integer")
    return v


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _resolve(obj, base: Path | None):
    """Inline object, or a path to a JSON file relative to ``base``."""
    if isinstance(obj, str):
        p = Path(obj)
        if base is not None and not p.is_absolute():
            p = base / p
        return load_json(p), p.parent
    return obj, base


# ---------------------------------------------------------------------------
# matrices and tensors
# ---------------------------------------------------------------------------

def mat_to_json(m: Mat) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [[format_rational(x) for x in row] for row in m.tolist()]}


def mat_from_json(obj: dict) -> Mat:
    rows, cols = _count(obj, "rows"), _count(obj, "cols")
    entries = _field(obj, "entries")
    if not isinstance(entries, list) or len(entries) != rows:
        raise ShapeMismatch(f"expected {rows} rows of entries")
    data = []
    for row in entries:
        if not isinstance(row, list) or len(row) != cols:
            raise ShapeMismatch(f"every row must have {cols} entries")
        data.append([_num(x) for x in row])
    return Mat(data, cols)


def products_to_json(c, dim: int) -> list:
    out = []
    for i in range(dim):
        for j in range(dim):
            nz = {str(k + 1): format_rational(x) for k, x in enumerate(c[i][j]) if x}
            if nz:
                out.append({"i": i + 1, "j": j + 1, "out": nz})
    return out


def products_from_json(items, dim: int) -> list:
    if not isinstance(items, list):
        raise ParseError("products must be a list")
    c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for item in items:
        i, j = _count(item, "i"), _count(item, "j")
        out = _field(item, "out")
        if not isinstance(out, dict):
            raise ParseError("'out' must map output indices to rationals")
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise IndexOutOfRange(f"product index ({i}, {j}) outside 1..{dim}")
        if (i, j) in seen:
            raise ParseError(f"product ({i}, {j}) listed twice")
        seen.add((i, j))
        for k, v in out.items():
            try:
                kk = int(k)
            except ValueError:
                raise ParseError(f"output index {k!r} is not an integer") from None
            if not 1 <= kk <= dim:
                raise IndexOutOfRange(f"output index {kk} outside 1..{dim}")
            c[i - 1][j - 1][kk - 1] = _num(v)
    return c


# ---------------------------------------------------------------------------
# algebras, representations, triples
# ---------------------------------------------------------------------------

def algebra_to_json(a: Algebra) -> dict:
    return {
        "type": "algebra",
        "dim": a.dim,
        "basis": list(a.basis_names),
        "flavor": a.flavor.value,
        "products": products_to_json(a.c, a.dim),
    }


def algebra_from_json(obj: dict) -> Algebra:
    dim = _count(obj, "dim")
    flavor = obj.get("flavor", "unchecked")
    try:
        flavor = Flavor(flavor)
    except ValueError:
        raise ParseError(f"unknown flavor {flavor!r}") from None
    basis = obj.get("basis") or ()
    return Algebra(dim, products_from_json(obj.get("products", []), dim), flavor, tuple(basis))


def _algebra_ref(obj, base) -> Algebra:
    data, _ = _resolve(obj, base)
    return algebra_from_json(data)


def representation_to_json(r: Representation) -> dict:
    return {
        "type": "representation",
        "algebra": algebra_to_json(r.algebra),
        "space_dim": r.space_dim,
        "rho": [mat_to_json(m) for m in r.rho],
        "mu": [mat_to_json(m) for m in r.mu],
    }


_STANDARD_REPS = {"regular": regular_rep, "coregular": coregular_rep, "trivial": trivial_rep}


def representation_from_json(obj: dict, base: Path | None = None) -> Representation:
    a = _algebra_ref(_field(obj, "algebra"), base)
    kind = obj.get("kind")
    if kind is not None:
        if kind not in _STANDARD_REPS:
            raise ParseError(f"unknown representation kind {kind!r}")
        return _STANDARD_REPS[kind](a)
    m = _count(obj, "space_dim")
    return Representation(
        a, m, [mat_from_json(x) for x in _field(obj, "rho")], [mat_from_json(x) for x in _field(obj, "mu")]
    )


def triple_to_json(t: MorphismTriple) -> dict:
    return {"type": "triple", "g": algebra_to_json(t.g), "h": algebra_to_json(t.h), "phi": mat_to_json(t.phi)}


def triple_parts_from_json(obj: dict, base: Path | None = None) -> tuple:
    """(g, h, phi) without validation, for reporting."""
    g = _algebra_ref(_field(obj, "g"), base)
    h = _algebra_ref(_field(obj, "h"), base)
    phi_obj, _ = _resolve(_field(obj, "phi"), base)
    return g, h, mat_from_json(phi_obj)


def triple_from_json(obj: dict, base: Path | None = None) -> MorphismTriple:
    return MorphismTriple(*triple_parts_from_json(obj, base))


def _triple_ref(obj, base) -> MorphismTriple:
    data, b = _resolve(obj, base)
    return triple_from_json(data, b)


# ---------------------------------------------------------------------------
# deformation data
# ---------------------------------------------------------------------------

def generator_to_json(gen: DeformationGenerator) -> dict:
    t = gen.triple
    return {
        "type": "generator",
        "triple": triple_to_json(t),
        "omega": products_to_json(gen.omega.c, t.g.dim),
        "varpi": products_to_json(gen.varpi.c, t.h.dim),
        "theta": mat_to_json(gen.theta),
    }


def generator_from_json(obj: dict, base: Path | None = None) -> DeformationGenerator:
    t = _triple_ref(_field(obj, "triple"), base)
    return DeformationGenerator(
        t,
        products_from_json(obj.get("omega", []), t.g.dim),
        products_from_json(obj.get("varpi", []), t.h.dim),
        mat_from_json(_field(obj, "theta")),
    )


def pair_to_json(p: NijenhuisPair) -> dict:
    return {"type": "nijenhuis_pair", "triple": triple_to_json(p.triple), "N": mat_to_json(p.n), "S": mat_to_json(p.s)}


def pair_from_json(obj: dict, base: Path | None = None) -> NijenhuisPair:
    t = _triple_ref(_field(obj, "triple"), base)
    return NijenhuisPair(t, mat_from_json(_field(obj, "N")), mat_from_json(_field(obj, "S")))


def symplectic_from_json(obj: dict, base: Path | None = None) -> SymplecticForm:
    return SymplecticForm(_algebra_ref(_field(obj, "lie"), base), mat_from_json(_field(obj, "omega")))


def s_matrix_from_json(obj: dict, base: Path | None = None) -> SMatrixCandidate:
    return SMatrixCandidate(_algebra_ref(_field(obj, "algebra"), base), mat_from_json(_field(obj, "r")))


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------

def cochain_to_json(degree: int, kind: str, coords) -> dict:
    return {"degree": degree, "kind": kind, "coords": [format_rational(x) for x in coords]}


def triple_cochain_to_json(degree: int, side: str, blocks, coords) -> dict:
    return {
        "degree": degree,
        "side": side,
        "blocks": list(blocks),
        "coords": [format_rational(x) for x in coords],
    }


# ---------------------------------------------------------------------------
# generic loading
# ---------------------------------------------------------------------------

def detect_type(obj) -> str:
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    if "type" in obj:
        return obj["type"]
    for kind, keys in (
        ("generator", ("omega", "theta")),
        ("nijenhuis_pair", ("N", "S")),
        ("triple", ("g", "h", "phi")),
        ("representation", ("algebra",)),
        ("symplectic", ("lie", "omega")),
        ("algebra", ("dim",)),
        ("matrix", ("rows", "cols", "entries")),
    ):
        if all(k in obj for k in keys):
            return kind
    raise ParseError("cannot tell what kind of file this is")


def load(path):
    """Load any supported file; returns ``(kind, object)``."""
    path = Path(path)
    obj = load_json(path)
    kind = detect_type(obj)
    base = path.parent
    loaders = {
        "algebra": lambda o: algebra_from_json(o),
        "matrix": lambda o: mat_from_json(o),
        "representation": lambda o: representation_from_json(o, base),
        "triple": lambda o: triple_from_json(o, base),
        "generator": lambda o: generator_from_json(o, base),
        "nijenhuis_pair": lambda o: pair_from_json(o, base),
        "symplectic": lambda o: symplectic_from_json(o, base),
        "s_matrix": lambda o: s_matrix_from_json(o, base),
    }
    if kind not in loaders:
        raise ParseError(f"unknown file type {kind!r}")
    return kind, loaders[kind](obj)


def dump(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
