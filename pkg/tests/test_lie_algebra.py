import json
from fractions import Fraction

import pytest

from bvbicomplex.lie_algebra import (
    ALGEBRA_DIR_ENV, BUILTINS, InvalidLieAlgebra, LieAlgebraSpec, Representation, load_algebra,
)


def so3_data():
    return load_algebra("so3").to_json()


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_validate_and_round_trip(name):
    g = load_algebra(name)
    g.validate()
    back = LieAlgebraSpec.from_json(json.loads(json.dumps(g.to_json())))
    assert back == g
    assert load_algebra("builtin:" + name) == g


def test_builtin_facts():
    assert load_algebra("sl2").kappa == ((0, 0, 1), (0, 2, 0), (1, 0, 0))
    assert load_algebra("abelian3").is_abelian()
    assert load_algebra("so3xso3").dim == 6
    g = load_algebra("so3")
    for a in range(3):
        for b in range(3):
            for c in range(3):
                assert g.lowered_f(a, b, c) == -g.lowered_f(b, a, c)


def _broken(edit):
    data = so3_data()
    edit(data)
    return data


def _set_f(c, a, b, v):
    def edit(d):
        d["f"][c][a][b] = v
    return edit


@pytest.mark.parametrize("edit, axiom", [
    (_set_f(2, 0, 1, "2"), "bracket not antisymmetric"),
    (lambda d: d.update(kappa=[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]]), "kappa singular"),
    (lambda d: d.update(kappa=[["1", "1", "0"], ["0", "1", "0"], ["0", "0", "1"]]), "kappa not symmetric"),
    (lambda d: d.update(kappa=[["1", "0", "0"], ["0", "2", "0"], ["0", "0", "1"]]), "kappa not invariant"),
    (lambda d: d.update(kappa=[["1", "0"], ["0", "1"]]), "shape"),
    (lambda d: d.pop("dim"), "malformed algebra file"),
    (lambda d: d.update(reps=[{"name": "bad", "matrices": [[["1"]], [["0"]], [["0"]]]}]),
     "rep-not-a-representation"),
])
def test_axiom_violations(edit, axiom):
    with pytest.raises(InvalidLieAlgebra) as info:
        LieAlgebraSpec.from_json(_broken(edit))
    assert info.value.axiom == axiom


def test_jacobi_violation():
    # antisymmetric but not a Lie bracket: [e0,e1] = e1, [e1,e2] = e0
    # gives [e2,[e0,e1]] = -e0 with the other two cyclic terms zero
    f = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    for c, a, b in ((1, 0, 1), (0, 1, 2)):
        f[c][a][b], f[c][b][a] = Fraction(1), Fraction(-1)
    with pytest.raises(InvalidLieAlgebra) as info:
        LieAlgebraSpec.make(3, f, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert info.value.axiom == "Jacobi identity fails"


def test_load_from_file_and_env_dir(tmp_path, monkeypatch):
    p = tmp_path / "mine.json"
    p.write_text(json.dumps(so3_data()))
    assert load_algebra(str(p)) == load_algebra("so3")
    monkeypatch.setenv(ALGEBRA_DIR_ENV, str(tmp_path))
    assert load_algebra("mine.json") == load_algebra("so3")
    with pytest.raises(FileNotFoundError):
        load_algebra("nowhere.json")
    (tmp_path / "junk.json").write_text("{not json")
    with pytest.raises(InvalidLieAlgebra):
        load_algebra("junk.json")


def test_representation_size():
    r = Representation("triv", (((Fraction(0),),),))
    assert r.size == 1 and r.matrix(0) == [[0]]
