from __future__ import annotations

import pytest

from recollift import presets
from recollift import specfile as sf
from recollift.errors import InputError


def issues_of(text: str) -> list[sf.ParseIssue]:
    with pytest.raises(sf.SpecError) as exc:
        sf.parse_spec(text)
    return exc.value.issues


def test_dual_numbers_preset_round_trip():
    spec = sf.parse_spec(presets.preset_text("dualnumbers"))
    alg = spec.algebras["algebra"]
    assert spec.p == 2
    assert alg["vertices"].value == "1"
    assert alg["arrows"].value == "x: 1 -> 1"
    assert alg["relations"].value == "x*x"
    built = sf.build(spec)
    assert built.algebra.dim == 2


@pytest.mark.parametrize("name", ["dualnumbers", "kA2", "t2-dualnumbers", "nonstrat", "morn:2:dualnumbers", "morn:3:dualnumbers", "morn:3:gf2"])
def test_presets_build(name):
    built = sf.build(sf.parse_spec(presets.preset_text(name)))
    assert built.instance is not None


def test_non_prime_characteristic():
    (issue,) = issues_of("[algebra]\ncharacteristic = 4\nvertices = 1\n")
    assert "non-prime" in issue.message
    assert (issue.line, issue.column) == (2, 18)


def test_morn_length_zero():
    (issue,) = issues_of(presets.preset_text("morn:2:dualnumbers").replace("n = 2", "n = 0"))
    assert "morn length" in issue.message


def test_unknown_keys_and_sections_are_positioned():
    issues = issues_of("[algebra]\ncharacteristic = 2\nvertices = 1\ncolour = red\n[extras]\n")
    msgs = [(i.line, i.message) for i in issues]
    assert (4, "unknown key 'colour' in [algebra]") in msgs
    assert any(line == 5 and "unknown section" in m for line, m in msgs)


def test_unresolved_labels():
    issues = issues_of("[algebra]\ncharacteristic = 2\nvertices = 1\narrows = x: 1 -> 3\nrelations = y*y\n")
    text = " ".join(i.message for i in issues)
    assert "unknown vertex '3'" in text and "unknown arrow 'y'" in text


def test_unresolved_idempotent_is_positioned():
    text = presets.preset_text("kA2", "e7")
    with pytest.raises(sf.SpecError) as exc:
        sf.build(sf.parse_spec(text))
    assert exc.value.issues[0].line == text.splitlines().index("idempotent = e7") + 1


def test_structure_constant_algebra():
    text = """[algebra]
characteristic = 3
name = dual3
basis = e x
unit = e
products = e*e = e, e*x = x, x*e = x
idempotents = e
radical = x
[instance]
kind = idempotent
idempotent = [1 0]
[run]
seed = 5
mode = thorough
"""
    spec = sf.parse_spec(text)
    assert spec.run.seed == 5 and spec.run.mode == "thorough"
    built = sf.build(spec)
    assert built.algebra.dim == 2 and built.instance.degenerate


def test_keys_must_match_kind():
    issues = issues_of("[algebra]\ncharacteristic = 2\nvertices = 1\n[instance]\nkind = morn\nn = 2\nidempotent = e1\n")
    assert any("does not apply" in i.message for i in issues)


def test_unknown_preset():
    with pytest.raises(InputError):
        presets.preset_text("nope")
    with pytest.raises(InputError):
        presets.preset_text("morn:2:nonstrat")


def test_all_errors_reported_in_line_order():
    issues = issues_of("[algebra]\ncharacteristic = 4\nvertices = 1, 2\narrows = a: 1 -> 3\n[instance]\nkind = morn\nn = 1\n")
    assert [i.line for i in issues] == [2, 4, 7]
