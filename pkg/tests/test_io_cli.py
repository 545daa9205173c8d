from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from corpus import (
    NIJ_SYMPLECTIC,
    abelian,
    all_pairs,
    compatible_inputs,
    corpus_triples,
    idempotent_line,
    random_generators,
    square_to_first,
    symplectic_built,
    truncated_poly,
)
from prelie import io
from prelie.algebra import Algebra, Flavor, MorphismTriple
from prelie.cli import main
from prelie.deformations import DeformationGenerator
from prelie.errors import ParseError
from prelie.linalg import Mat


def run(*args):
    res = CliRunner().invoke(main, [str(a) for a in args])
    assert res.exception is None or isinstance(res.exception, SystemExit), res.output
    return res.exit_code, res.output


def run_json(*args):
    code, out = run(*args)
    return code, json.loads(out)


def put(tmp: Path, name: str, obj: dict) -> Path:
    p = tmp / name
    io.dump(obj, p)
    return p


def lie_fixture() -> Algebra:
    return Algebra.from_products(2, {(0, 1): {0: 1}, (1, 0): {0: -1}}, Flavor.LIE)


# -- file formats ------------------------------------------------------------

def test_algebra_round_trip(tmp_path):
    for a in (abelian(2), square_to_first(), symplectic_built(), lie_fixture(), abelian(0)):
        p = put(tmp_path, "a.json", io.algebra_to_json(a))
        kind, b = io.load(p)
        assert kind == "algebra" and b.c == a.c and b.flavor == a.flavor


def test_triple_generator_pair_round_trip(tmp_path):
    for t in corpus_triples().values():
        kind, u = io.load(put(tmp_path, "t.json", io.triple_to_json(t)))
        assert kind == "triple" and u.phi == t.phi and u.g.c == t.g.c and u.h.c == t.h.c
    for gen in random_generators(seed=2, count=7):
        kind, g2 = io.load(put(tmp_path, "g.json", io.generator_to_json(gen)))
        assert kind == "generator" and g2.coords() == gen.coords()
    for p in all_pairs()[:5]:
        kind, q = io.load(put(tmp_path, "p.json", io.pair_to_json(p)))
        assert kind == "nijenhuis_pair" and q.n == p.n and q.s == p.s


def test_references_resolve_relative_to_file(tmp_path):
    sub = tmp_path / "sub"
    sub.mkdir()
    put(sub, "g.json", io.algebra_to_json(square_to_first()))
    p = put(sub, "t.json", {"type": "triple", "g": "g.json", "h": "g.json", "phi": io.mat_to_json(Mat.identity(2))})
    kind, t = io.load(p)
    assert kind == "triple" and t.g.c == square_to_first().c


def test_standard_representation_kinds(tmp_path):
    a = put(tmp_path, "a.json", io.algebra_to_json(square_to_first()))
    kind, r = io.load(put(tmp_path, "r.json", {"algebra": "a.json", "kind": "coregular"}))
    assert kind == "representation" and r.space_dim == 2
    assert a.exists()


def test_parse_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        io.load(bad)
    with pytest.raises(ParseError):
        io.load(put(tmp_path, "x.json", {"foo": 1}))
    with pytest.raises(ParseError):
        io.mat_from_json({"rows": 1, "cols": 1, "entries": [[1.5]]})


# -- validate ----------------------------------------------------------------

def test_validate_abelian(tmp_path):
    code, rep = run_json("validate", put(tmp_path, "a.json", io.algebra_to_json(abelian(3))))
    assert code == 0 and rep["pass"]


def test_validate_non_pre_lie(tmp_path):
    a = Algebra.from_products(2, {(0, 0): {1: 1}, (1, 0): {0: 1}})
    code, rep = run_json("validate", put(tmp_path, "a.json", io.algebra_to_json(a)))
    assert code == 1
    assert rep["verdict"]["witness"] == [1, 2, 1]


def test_validate_bad_rational(tmp_path):
    obj = io.algebra_to_json(abelian(1))
    obj["products"] = [{"i": 1, "j": 1, "out": {"1": "1/0"}}]
    code, rep = run_json("validate", put(tmp_path, "a.json", obj))
    assert code == 2 and not rep["pass"]


def test_validate_missing_file_and_bad_index(tmp_path):
    code, _ = run("validate", tmp_path / "nope.json")
    assert code == 2
    obj = io.algebra_to_json(abelian(1))
    obj["products"] = [{"i": 3, "j": 1, "out": {"1": "1"}}]
    code, _ = run("validate", put(tmp_path, "a.json", obj))
    assert code == 2


def test_validate_triple(tmp_path):
    code, rep = run_json("validate", put(tmp_path, "t.json", io.triple_to_json(corpus_triples()["nijenhuis"])))
    assert code == 0 and rep["phi"]["pass"]
    bad = {"type": "triple", "g": io.algebra_to_json(square_to_first()), "h": io.algebra_to_json(square_to_first()),
           "phi": io.mat_to_json(Mat([[1, 0], [0, 2]]))}
    code, rep = run_json("validate", put(tmp_path, "bad.json", bad))
    assert code == 1 and not rep["phi"]["pass"]


def test_text_format(tmp_path):
    code, out = run("--format", "text", "validate", put(tmp_path, "a.json", io.algebra_to_json(abelian(2))))
    assert code == 0
    assert "pass: True" in out


def test_subadjacent(tmp_path):
    out = tmp_path / "lie.json"
    code, rep = run_json("subadjacent", put(tmp_path, "a.json", io.algebra_to_json(symplectic_built())), "--out", out)
    assert code == 0
    _, lie = io.load(out)
    assert lie.c == lie_fixture().c
    assert run("validate", out)[0] == 0


# -- cohomology --------------------------------------------------------------

def test_cohomology_empty_triple(tmp_path):
    t = MorphismTriple.identity(abelian(0))
    code, rep = run_json("cohomology", put(tmp_path, "t.json", io.triple_to_json(t)), "--side", "both")
    assert code == 0
    assert all(r["dim_H"] == 0 for r in rep["prelie"] + rep["ce"])


def test_cohomology_idempotent_fixture(tmp_path):
    t = MorphismTriple.identity(idempotent_line())
    code, rep = run_json("cohomology", put(tmp_path, "t.json", io.triple_to_json(t)), "--side", "both")
    assert code == 0
    assert [r["dim_H"] for r in rep["prelie"]] == [0, 0, 0, 0]
    assert [r["degree"] for r in rep["ce"]] == [-1, 0, 1, 2]


def test_cohomology_both_sides_on_corpus(tmp_path):
    for name, t in corpus_triples().items():
        code, rep = run_json("cohomology", put(tmp_path, f"{name}.json", io.triple_to_json(t)), "--side", "both")
        assert code == 0 and rep["phi_check"] == "pass", name
        for row in rep["shift_table"]:
            assert row["dim_H_prelie"] == row["dim_H_ce_k_minus_1"]


def test_cohomology_representatives_are_cocycles(tmp_path):
    t = corpus_triples()["identity"]
    code, rep = run_json("cohomology", put(tmp_path, "t.json", io.triple_to_json(t)), "--max-degree", "1")
    assert code == 0
    h1 = rep["prelie"][1]
    assert h1["dim_H"] == 4 and len(h1["representatives"]) == 4
    assert h1["representatives"][0]["blocks"] == [8, 8, 4]


def test_size_limit_exit_code(tmp_path):
    p = put(tmp_path, "t.json", io.triple_to_json(corpus_triples()["identity"]))
    code, rep = run_json("--size-limit", "5", "cohomology", p)
    assert code == 3 and rep["error"] == "ResourceLimit"


def test_phi_check_command(tmp_path):
    p = put(tmp_path, "t.json", io.triple_to_json(corpus_triples()["rota-baxter"]))
    code, rep = run_json("phi-check", p)
    assert code == 0 and rep["dims_prelie"] == rep["dims_ce_shifted"] == [1, 1, 1, 1]


# -- deformations ------------------------------------------------------------

def test_deform_check_zero(tmp_path):
    t = corpus_triples()["identity"]
    p = put(tmp_path, "g.json", io.generator_to_json(DeformationGenerator.zero(t)))
    code, rep = run_json("deform", "check", p)
    assert code == 0 and len(rep["equations"]) == 6 and rep["closed"]["pass"]


def test_deform_check_failure(tmp_path):
    t = MorphismTriple.identity(symplectic_built())
    gen = DeformationGenerator(t, t.g, Algebra.zero(2), Mat.zeros(2, 2))
    code, rep = run_json("deform", "check", put(tmp_path, "g.json", io.generator_to_json(gen)))
    assert code == 1 and not rep["equations"]["1-cocycle phi"]["pass"]


def test_deform_trivial_emits_valid_generator(tmp_path):
    out = tmp_path / "gen.json"
    p = all_pairs()[-1]
    code, rep = run_json("deform", "trivial", put(tmp_path, "p.json", io.pair_to_json(p)), "--out", out)
    assert code == 0
    assert rep["generator_check"]["pass"] and rep["equivalent_to_zero"]["pass"]
    assert all(x == "0" for x in rep["class"])
    assert run("validate", out)[0] == 0
    code, rep = run_json("deform", "class", out)
    assert code == 0


def test_deform_trivial_rejects_non_pair(tmp_path):
    from prelie.deformations import NijenhuisPair

    p = NijenhuisPair(MorphismTriple.identity(symplectic_built()), Mat.identity(2), NIJ_SYMPLECTIC)
    code, rep = run_json("deform", "trivial", put(tmp_path, "p.json", io.pair_to_json(p)))
    assert code == 1 and rep["error"] == "NotNijenhuisPair"


def test_deform_equiv(tmp_path):
    ts = corpus_triples()
    a = put(tmp_path, "a.json", io.generator_to_json(DeformationGenerator.zero(ts["zero"])))
    b = put(tmp_path, "b.json", io.generator_to_json(DeformationGenerator.zero(ts["identity"])))
    n = put(tmp_path, "n.json", io.mat_to_json(Mat.zeros(2, 2)))
    s1 = put(tmp_path, "s1.json", io.mat_to_json(Mat.zeros(1, 1)))
    code, rep = run_json("deform", "equiv", a, b, "--n", n, "--s", s1)
    assert code == 2 and rep["error"] == "TripleMismatch"
    code, rep = run_json("deform", "equiv", a, a, "--n", n, "--s", s1)
    assert code == 0 and len(rep["equations"]) == 8


def test_deform_class_two_generators(tmp_path):
    t = corpus_triples()["identity"]
    from prelie.deformations import first_cohomology

    r = first_cohomology(t).representatives[0]
    a = put(tmp_path, "a.json", io.generator_to_json(DeformationGenerator.from_coords(t, r)))
    z = put(tmp_path, "z.json", io.generator_to_json(DeformationGenerator.zero(t)))
    code, rep = run_json("deform", "class", a, z)
    assert code == 1 and rep["same_class"]["reason"] == "DifferentClass"
    assert run("deform", "class", a, a)[0] == 0


def test_deform_class_not_closed(tmp_path):
    t = corpus_triples()["identity"]
    coords = [1] + [0] * (len(DeformationGenerator.zero(t).coords()) - 1)
    gen = DeformationGenerator.from_coords(t, coords)
    code, rep = run_json("deform", "class", put(tmp_path, "g.json", io.generator_to_json(gen)))
    assert code == 1 and rep["error"] == "NotClosed"


# -- constructions -----------------------------------------------------------

def test_construct_derivation_zero(tmp_path):
    a = put(tmp_path, "a.json", io.algebra_to_json(truncated_poly(2)))
    d = put(tmp_path, "d.json", io.mat_to_json(Mat.zeros(2, 2)))
    out = tmp_path / "out.json"
    code, rep = run_json("construct", "derivation", a, d, "--out", out)
    assert code == 0
    _, b = io.load(out)
    assert b.c == Algebra.zero(2).c


def test_construct_derivation_failure(tmp_path):
    a = put(tmp_path, "a.json", io.algebra_to_json(truncated_poly(2)))
    d = put(tmp_path, "d.json", io.mat_to_json(Mat.identity(2)))
    code, rep = run_json("construct", "derivation", a, d)
    assert code == 1 and rep["error"] == "NotDerivation"


def test_construct_symplectic_fixture(tmp_path):
    form = {"type": "symplectic", "lie": io.algebra_to_json(lie_fixture()),
            "omega": io.mat_to_json(Mat([[0, 1], [-1, 0]]))}
    out = tmp_path / "out.json"
    code, rep = run_json("construct", "symplectic", put(tmp_path, "w.json", form), "--out", out)
    assert code == 0
    _, b = io.load(out)
    assert b.c == symplectic_built().c
    assert run("validate", out)[0] == 0


def test_construct_s_matrix_not_symmetric(tmp_path):
    a = put(tmp_path, "a.json", io.algebra_to_json(square_to_first()))
    r = put(tmp_path, "r.json", io.mat_to_json(Mat([[0, 1], [0, 0]])))
    code, rep = run_json("construct", "s-matrix", a, r)
    assert code == 2 and rep["error"] == "NotSymmetric"


def test_construct_rota_baxter(tmp_path):
    a = put(tmp_path, "a.json", io.algebra_to_json(symplectic_built()))
    ident = put(tmp_path, "r.json", io.mat_to_json(Mat.identity(2)))
    code, rep = run_json("construct", "rota-baxter", a, ident, "--weight", "0")
    assert code == 1 and rep["error"] == "NotRotaBaxter"
    out = tmp_path / "t.json"
    code, rep = run_json("construct", "rota-baxter", a, ident, "--weight", "-1", "--out", out)
    assert code == 0 and rep["homomorphism"]["pass"]
    assert run("validate", out)[0] == 0
    code, _ = run("construct", "rota-baxter", a, ident, "--weight", "x/2")
    assert code == 2


def test_construct_nijenhuis_and_o_operator(tmp_path):
    a = put(tmp_path, "a.json", io.algebra_to_json(symplectic_built()))
    n = put(tmp_path, "n.json", io.mat_to_json(NIJ_SYMPLECTIC))
    out = tmp_path / "t.json"
    assert run("construct", "nijenhuis", a, n, "--out", out)[0] == 0
    assert run("validate", out)[0] == 0
    r = put(tmp_path, "rep.json", {"algebra": "a.json", "kind": "regular"})
    code, rep = run_json("construct", "o-operator", r, n)
    assert code == 1


def test_construct_nij_pair_and_twisted(tmp_path):
    _, rep_obj, t1, t2 = compatible_inputs()[3]
    r = put(tmp_path, "rep.json", io.representation_to_json(rep_obj))
    p1 = put(tmp_path, "t1.json", io.mat_to_json(t1))
    p2 = put(tmp_path, "t2.json", io.mat_to_json(t2))
    out = tmp_path / "pairs"
    code, rep = run_json("construct", "nij-pair", r, p1, p2, "--out", out)
    assert code == 0 and len(rep["written"]) == 4
    for f in rep["written"]:
        assert run("validate", f)[0] == 0
    for pair in sorted(out.glob("pair*.json")):
        assert run("deform", "trivial", pair)[0] == 0
    out2 = tmp_path / "twisted"
    code, rep = run_json("construct", "twisted", r, p1, p2, "--out", out2)
    assert code == 0
    for f in rep["written"]:
        assert run("validate", f)[0] == 0


def test_reports_are_deterministic(tmp_path):
    p = put(tmp_path, "t.json", io.triple_to_json(corpus_triples()["s-matrix"]))
    assert run("cohomology", p, "--side", "both")[1] == run("cohomology", p, "--side", "both")[1]
