"""Smoke test for the Python extension; run with pytest or as a script."""

import json
import pathlib

import holopoisson_py as hp

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "crates" / "core" / "corpus"
SCHEMAS = ROOT / "schemas"


def test_poly_arithmetic():
    f = hp.Poly("z1 + zb1", n=1)
    g = hp.Poly("z1 - zb1", n=1)
    assert f * g == hp.Poly("z1^2 - zb1^2", n=1)
    assert str(hp.Poly("z1 - 2i z2 - i", n=2)) == "z1 - 2i z2 - i"
    assert hp.Poly("z1^2 zb1", n=1).diff("z1") == hp.Poly("2 z1 zb1", n=1)
    assert hp.Poly("z1 z2", n=2).eval(["2", "i", "0", "0"]) == "2i"
    assert not f.is_holomorphic()


def test_darboux_parts():
    pi = hp.Multivector([(["z1", "z2"], "-1")], n=2)
    assert pi.check_poisson() == {"dbar_zero": True, "schouten_zero": True}
    pi_r, pi_i = pi.decompose()
    assert pi_r.kind == "real"
    assert sorted(pi_r.terms()) == sorted([(["x1", "x2"], "-1/4"), (["y1", "y2"], "1/4")])
    assert sorted(pi_i.terms()) == sorted([(["x1", "y2"], "1/4"), (["x2", "y1"], "-1/4")])
    assert pi.sharp_relation()


def test_schouten_and_errors():
    pi = hp.Multivector([(["z1", "z2"], "z3")], n=3)
    assert pi.schouten(pi).is_zero()
    bad = hp.Multivector([(["z1", "z2"], "zb1")], n=2)
    assert bad.check_poisson()["dbar_zero"] is False
    for thunk in (lambda: hp.Poly("w1"), lambda: hp.Multivector([(["x1"], "1")], n=1)):
        try:
            thunk()
        except hp.HolopoissonError:
            pass
        else:
            raise AssertionError("expected HolopoissonError")


def test_sl2_cohomology():
    sl2 = hp.LieAlgebra(3, [(0, 1, 1, "2"), (0, 2, 2, "-2"), (1, 2, 0, "1")])
    assert sl2.jacobi_holds()
    pi = sl2.lie_poisson()
    assert pi.check_poisson()["schouten_zero"]
    mp = hp.MatchedPair.canonical(pi)
    assert mp.ranks == (3, 3)
    assert mp.tensors_zero()
    sparse = mp.betti(weight=2)
    oracle = mp.betti(weight=2, method="oracle")
    assert sparse["totals"] == oracle["totals"]
    assert sparse["totals"][0]["betti"] == 1
    assert sparse["status"] == "exact"
    assert hp.yao_check(pi)
    assert sl2.realparts_check()


def test_cli_reports_match_schema():
    code, out, err = hp.run_cli(["selftest"])
    assert code == 0, err
    rep = json.loads(out)
    assert rep["verdict"] is True
    code, _, err = hp.run_cli(["check-poisson", str(CORPUS / "antiholomorphic.json")])
    assert code == 2
    try:
        import jsonschema
        from referencing import Registry, Resource
    except ImportError:
        return
    schemas = {p.name: json.loads(p.read_text()) for p in SCHEMAS.glob("*.json")}
    registry = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in schemas.values())
    for doc in CORPUS.glob("*.json"):
        jsonschema.validate(json.loads(doc.read_text()), schemas["input.schema.json"])
    validator = jsonschema.Draft202012Validator(schemas["report.schema.json"], registry=registry)
    validator.validate(rep)
    _, out, _ = hp.run_cli(["cohomology", "--weight", "2", str(CORPUS / "sl2.json")])
    validator.validate(json.loads(out))


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok  {name}")
