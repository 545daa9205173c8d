"""Command-line front end.

Exit status: 0 pass, 1 mathematical failure, 2 input error, 3 resource limit.
Reports go to standard output as JSON (default) or text; constructed
artifacts are written with ``--out``.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import io
from .algebra import (
    Flavor,
    LinearMap,
    MorphismTriple,
    Verdict,
    check_flavor,
    check_homomorphism,
    check_pre_lie,
    sub_adjacent,
)
from .constructions import (
    SMatrixCandidate,
    check_compatible_o,
    check_s_matrix,
    derivation_to_prelie,
    nijenhuis_pair_from_compatible,
    nijenhuis_triple,
    o_operator_triple,
    rota_baxter_triple,
    s_matrix_triple,
    symplectic_to_prelie,
    twisted_triple,
)
from .deformations import (
    DeformationGenerator,
    check_closed,
    check_equivalence,
    check_generator,
    check_nijenhuis_pair,
    cohomology_class,
    pairs_from_compatible,
    same_class,
    trivial_deformation,
)
from .errors import InputError, MathError, ParseError, PreLieError, ResourceLimit
from .linalg import format_rational, parse_rational, rank
from .representations import check_representation
from .triple import CE, PRELIE, TripleComplex, verify_cochain_map

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class Failed(Exception):
    """A check failed; the report has already been built."""

    def __init__(self, report: dict):
        self.report = report


def _verdict(v) -> dict:
    return v.as_dict()


def _error_report(exc: PreLieError) -> dict:
    rep = {"pass": False, "error": exc.code, "message": str(exc)}
    v = exc.details.get("verdict")
    if isinstance(v, Verdict):
        rep["counterexample"] = v.as_dict()
    report = exc.details.get("report")
    if report is not None and hasattr(report, "as_dict"):
        rep["report"] = report.as_dict()
    return rep


def _text(report, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for k, v in report.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{report}")
    return "\n".join(lines)


def _emit(ctx, report: dict):
    if ctx.obj["format"] == "text":
        click.echo(_text(report))
    else:
        click.echo(json.dumps(report, indent=2))


def _run(ctx, body):
    """Run ``body()`` (returns a report), print it and exit with the right status."""
    try:
        report = body()
        code = EXIT_OK if report.get("pass", True) else EXIT_FAIL
    except Failed as f:
        report, code = f.report, EXIT_FAIL
    except ResourceLimit as exc:
        report, code = _error_report(exc), EXIT_LIMIT
    except InputError as exc:
        report, code = _error_report(exc), EXIT_INPUT
    except MathError as exc:
        report, code = _error_report(exc), EXIT_FAIL
    except (ValueError, TypeError, KeyError, OSError) as exc:
        report, code = {"pass": False, "error": "InputError", "message": str(exc)}, EXIT_INPUT
    _emit(ctx, report)
    ctx.exit(code)


def _load(path, *kinds):
    kind, obj = io.load(path)
    if kinds and kind not in kinds:
        raise ParseError(f"{path}: expected {' or '.join(kinds)}, got {kind}")
    return obj


def _write(out, payload: dict, written: list, name: str | None = None):
    if out is None:
        return
    p = Path(out)
    if name is not None:
        p.mkdir(parents=True, exist_ok=True)
        p = p / name
    p.parent.mkdir(parents=True, exist_ok=True)
    io.dump(payload, p)
    written.append(str(p))


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", help="Report format.")
@click.option("--size-limit", type=click.IntRange(min=1), default=10**6, help="Largest cochain space allowed.")
@click.pass_context
def main(ctx, fmt, size_limit):
    """Pre-Lie algebras, morphism triples, their cohomology and deformations."""
    ctx.ensure_object(dict)
    ctx.obj.update(format=fmt, size_limit=size_limit)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _validate_obj(kind, path) -> dict:
    if kind == "triple":
        data = io.load_json(path)
        g, h, phi = io.triple_parts_from_json(data, Path(path).parent)
        vg, vh = check_pre_lie(g), check_pre_lie(h)
        rep = {"type": kind, "g": _verdict(vg), "h": _verdict(vh)}
        if vg and vh:
            rep["phi"] = _verdict(check_homomorphism(LinearMap(g.with_flavor(Flavor.PRELIE), h.with_flavor(Flavor.PRELIE), phi)))
        rep["pass"] = all(v.get("pass") for k, v in rep.items() if isinstance(v, dict))
        return rep
    kind, obj = io.load(path)
    rep = {"type": kind}
    if kind == "algebra":
        v = check_flavor(obj) if obj.flavor is not Flavor.UNCHECKED else check_pre_lie(obj)
        rep.update(flavor=obj.flavor.value if obj.flavor is not Flavor.UNCHECKED else "prelie", verdict=_verdict(v))
        rep["pass"] = v.ok
    elif kind == "representation":
        v = check_representation(obj)
        rep["verdict"] = _verdict(v)
        rep["pass"] = v.ok
    elif kind == "generator":
        r = check_generator(obj)
        rep.update(r.as_dict())
    elif kind == "nijenhuis_pair":
        r = check_nijenhuis_pair(obj)
        rep.update(r.as_dict())
    elif kind == "symplectic":
        symplectic_to_prelie(obj)
        rep["pass"] = True
    elif kind == "s_matrix":
        v = check_s_matrix(obj)
        rep["verdict"] = _verdict(v)
        rep["pass"] = v.ok
    else:
        rep["pass"] = True
    return rep


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.pass_context
def validate(ctx, file):
    """Check the defining identities of any supported file."""
    def body():
        kind = io.detect_type(io.load_json(file))
        return _validate_obj(kind, file)

    _run(ctx, body)


@main.command()
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(), help="Write the Lie algebra here.")
@click.pass_context
def subadjacent(ctx, algebra, out):
    """Commutator Lie algebra of a pre-Lie algebra."""
    def body():
        lie = sub_adjacent(_load(algebra, "algebra"))
        written = []
        _write(out, io.algebra_to_json(lie), written)
        return {"pass": True, "algebra": io.algebra_to_json(lie), "written": written}

    _run(ctx, body)


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------

def _degree_report(tc: TripleComplex, k: int, side: str) -> dict:
    sp = tc.space(k, side)
    d = tc.delta(k, side)
    res = tc.cohomology(k, side)
    return {
        "degree": k,
        "dim_C": sp.dim,
        "rank_delta": rank(d),
        "dim_H": res.dimension,
        "representatives": [io.triple_cochain_to_json(k, side, sp.blocks, r) for r in res.representatives],
    }


@main.command()
@click.argument("triple", type=click.Path(dir_okay=False))
@click.option("--side", type=click.Choice(["prelie", "ce", "both"]), default="prelie")
@click.option("--max-degree", type=click.IntRange(min=0), default=3)
@click.pass_context
def cohomology(ctx, triple, side, max_degree):
    """Cohomology of a pre-Lie-morphism triple, degree by degree."""
    def body():
        t = _load(triple, "triple")
        tc = TripleComplex(t, ctx.obj["size_limit"])
        rep = {"pass": True}
        if side in ("prelie", "both"):
            rep["prelie"] = [_degree_report(tc, k, PRELIE) for k in range(0, max_degree + 1)]
        if side in ("ce", "both"):
            # the CE complex sits one degree lower
            rep["ce"] = [_degree_report(tc, k, CE) for k in range(-1, max_degree)]
        if side == "both":
            check = verify_cochain_map(t, max_degree, tc)
            rep["phi_check"] = "pass" if check.ok else "fail"
            rep["shift_table"] = [
                {"k": k, "dim_H_prelie": a, "dim_H_ce_k_minus_1": b}
                for k, (a, b) in enumerate(zip(check.dims_prelie, check.dims_ce))
            ]
            rep["pass"] = check.ok
        return rep

    _run(ctx, body)


@main.command("phi-check")
@click.argument("triple", type=click.Path(dir_okay=False))
@click.option("--max-degree", type=click.IntRange(min=0), default=3)
@click.pass_context
def phi_check(ctx, triple, max_degree):
    """Verify that the relabeling map intertwines the two triple complexes."""
    def body():
        t = _load(triple, "triple")
        check = verify_cochain_map(t, max_degree, TripleComplex(t, ctx.obj["size_limit"]))
        return {
            "pass": check.ok,
            "phi_check": "pass" if check.ok else "fail",
            "failures": [list(map(str, f)) for f in check.failures],
            "dims_prelie": list(check.dims_prelie),
            "dims_ce_shifted": list(check.dims_ce),
        }

    _run(ctx, body)


# ---------------------------------------------------------------------------
# deformations
# ---------------------------------------------------------------------------

@main.group()
def deform():
    """Infinitesimal deformations of a triple."""


@deform.command("check")
@click.argument("generator", type=click.Path(dir_okay=False))
@click.pass_context
def deform_check(ctx, generator):
    """The six generator equations and closedness."""
    def body():
        gen = _load(generator, "generator")
        rep = check_generator(gen).as_dict()
        rep["closed"] = _verdict(check_closed(gen))
        return rep

    _run(ctx, body)


@deform.command("trivial")
@click.argument("pair", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(), help="Write the generator here.")
@click.pass_context
def deform_trivial(ctx, pair, out):
    """Trivial deformation generated by a Nijenhuis pair."""
    def body():
        p = _load(pair, "nijenhuis_pair")
        gen = trivial_deformation(p)
        written = []
        _write(out, io.generator_to_json(gen), written)
        zero = DeformationGenerator.zero(p.triple)
        return {
            "pass": True,
            "pair": check_nijenhuis_pair(p).as_dict(),
            "generator_check": check_generator(gen).as_dict(),
            "equivalent_to_zero": check_equivalence(gen, zero, p.n, p.s).as_dict(),
            "class": [format_rational(x) for x in cohomology_class(gen)],
            "generator": io.generator_to_json(gen),
            "written": written,
        }

    _run(ctx, body)


@deform.command("equiv")
@click.argument("gen_a", type=click.Path(dir_okay=False))
@click.argument("gen_b", type=click.Path(dir_okay=False))
@click.option("--n", "n_file", required=True, type=click.Path(dir_okay=False), help="Matrix of N on g.")
@click.option("--s", "s_file", required=True, type=click.Path(dir_okay=False), help="Matrix of S on h.")
@click.pass_context
def deform_equiv(ctx, gen_a, gen_b, n_file, s_file):
    """The eight equivalence equations for witnesses N and S."""
    def body():
        a, b = _load(gen_a, "generator"), _load(gen_b, "generator")
        return check_equivalence(a, b, _load(n_file, "matrix"), _load(s_file, "matrix")).as_dict()

    _run(ctx, body)


@deform.command("class")
@click.argument("gen_a", type=click.Path(dir_okay=False))
@click.argument("gen_b", required=False, type=click.Path(dir_okay=False))
@click.pass_context
def deform_class(ctx, gen_a, gen_b):
    """Cohomology class of a closed generator; with two, whether they agree."""
    def body():
        a = _load(gen_a, "generator")
        rep = {"pass": True, "class": [format_rational(x) for x in cohomology_class(a)]}
        if gen_b is not None:
            b = _load(gen_b, "generator")
            v = same_class(a, b)
            rep.update({"class_b": [format_rational(x) for x in cohomology_class(b)], "same_class": _verdict(v)})
            rep["pass"] = v.ok
        return rep

    _run(ctx, body)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

@main.group()
def construct():
    """Build pre-Lie algebras and triples from operators."""


def _algebra_result(a, out) -> dict:
    written = []
    _write(out, io.algebra_to_json(a), written)
    return {"pass": True, "pre_lie": _verdict(check_pre_lie(a)), "algebra": io.algebra_to_json(a), "written": written}


def _triple_result(t: MorphismTriple, out, extra: dict | None = None) -> dict:
    written = []
    _write(out, io.triple_to_json(t), written)
    rep = {
        "pass": True,
        "source_pre_lie": _verdict(check_pre_lie(t.g)),
        "homomorphism": _verdict(check_homomorphism(t.phi_map)),
        "triple": io.triple_to_json(t),
        "written": written,
    }
    rep.update(extra or {})
    return rep


out_option = click.option("--out", type=click.Path(), help="Write the constructed artifact here.")


@construct.command("derivation")
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.argument("d_map", type=click.Path(dir_okay=False))
@out_option
@click.pass_context
def construct_derivation(ctx, algebra, d_map, out):
    """x * y = x . D(y) on a commutative associative algebra."""
    _run(ctx, lambda: _algebra_result(derivation_to_prelie(_load(algebra, "algebra"), _load(d_map, "matrix")), out))


@construct.command("symplectic")
@click.argument("form", type=click.Path(dir_okay=False))
@out_option
@click.pass_context
def construct_symplectic(ctx, form, out):
    """Pre-Lie product from a symplectic Lie algebra."""
    _run(ctx, lambda: _algebra_result(symplectic_to_prelie(_load(form, "symplectic")), out))


@construct.command("rota-baxter")
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.argument("r_map", type=click.Path(dir_okay=False))
@click.option("--weight", default="0", help="Weight as a rational string.")
@out_option
@click.pass_context
def construct_rota_baxter(ctx, algebra, r_map, weight, out):
    """Triple ((g, .R), (g, .), R) from a Rota-Baxter operator."""
    def body():
        lam = parse_rational(weight)
        return _triple_result(rota_baxter_triple(_load(algebra, "algebra"), _load(r_map, "matrix"), lam), out)

    _run(ctx, body)


@construct.command("nijenhuis")
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.argument("n_map", type=click.Path(dir_okay=False))
@out_option
@click.pass_context
def construct_nijenhuis(ctx, algebra, n_map, out):
    """Triple ((g, ._N), (g, .), N) from a Nijenhuis operator."""
    _run(ctx, lambda: _triple_result(nijenhuis_triple(_load(algebra, "algebra"), _load(n_map, "matrix")), out))


@construct.command("o-operator")
@click.argument("rep", type=click.Path(dir_okay=False))
@click.argument("t_map", type=click.Path(dir_okay=False))
@out_option
@click.pass_context
def construct_o_operator(ctx, rep, t_map, out):
    """Triple ((V, .T), (g, .), T) from an O-operator."""
    def body():
        r = _load(rep, "representation")
        return _triple_result(o_operator_triple(r.algebra, r, _load(t_map, "matrix")), out)

    _run(ctx, body)


@construct.command("s-matrix")
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.argument("r_mat", type=click.Path(dir_okay=False))
@out_option
@click.pass_context
def construct_s_matrix(ctx, algebra, r_mat, out):
    """Triple ((g*, .r), (g, .), r#) from a symmetric solution of [[r, r]] = 0."""
    def body():
        c = SMatrixCandidate(_load(algebra, "algebra"), _load(r_mat, "matrix"))
        v = check_s_matrix(c)
        if not v:
            raise Failed({"pass": False, "s_equation": _verdict(v)})
        return _triple_result(s_matrix_triple(c), out, {"s_equation": _verdict(v)})

    _run(ctx, body)


def _compatible(rep, t1, t2):
    r = _load(rep, "representation")
    m1, m2 = _load(t1, "matrix"), _load(t2, "matrix")
    return r, m1, m2


@construct.command("nij-pair")
@click.argument("rep", type=click.Path(dir_okay=False))
@click.argument("t1", type=click.Path(dir_okay=False))
@click.argument("t2", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(file_okay=False), help="Directory for the triples and pairs.")
@click.pass_context
def construct_nij_pair(ctx, rep, t1, t2, out):
    """N = T1 T2^-1 and S = T2^-1 T1 from compatible O-operators."""
    def body():
        r, m1, m2 = _compatible(rep, t1, t2)
        res = nijenhuis_pair_from_compatible(r.algebra, r, m1, m2)
        written = []
        for i, p in enumerate(pairs_from_compatible(res), start=1):
            _write(out, io.triple_to_json(p.triple), written, f"triple{i}.json")
            _write(out, io.pair_to_json(p), written, f"pair{i}.json")
        return {
            "pass": res.ok,
            "compatible": _verdict(check_compatible_o(r.algebra, r, m1, m2)),
            "N": io.mat_to_json(res.n),
            "S": io.mat_to_json(res.s),
            "certificates": {k: _verdict(v) for k, v in res.certificates.items()},
            "written": written,
        }

    _run(ctx, body)


@construct.command("twisted")
@click.argument("rep", type=click.Path(dir_okay=False))
@click.argument("t1", type=click.Path(dir_okay=False))
@click.argument("t2", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(file_okay=False), help="Directory for the twisted triples.")
@click.pass_context
def construct_twisted(ctx, rep, t1, t2, out):
    """Twisted triples ((V, .Ti_S), (g, ._N), Ti) for i = 1, 2."""
    def body():
        r, m1, m2 = _compatible(rep, t1, t2)
        res = nijenhuis_pair_from_compatible(r.algebra, r, m1, m2)
        written, triples = [], []
        for i, ti in enumerate((m1, m2), start=1):
            t = twisted_triple(r.algebra, r, ti, res.n, res.s)
            _write(out, io.triple_to_json(t), written, f"twisted{i}.json")
            triples.append(
                {"homomorphism": _verdict(check_homomorphism(t.phi_map)), "triple": io.triple_to_json(t)}
            )
        return {"pass": True, "triples": triples, "written": written}

    _run(ctx, body)


if __name__ == "__main__":
    sys.exit(main())
