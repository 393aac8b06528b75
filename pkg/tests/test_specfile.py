from pathlib import Path

import pytest

from qvla.algebra import check_jacobi, check_maximality, check_skew_symmetry, reduce_mode, Mode
from qvla.currents import GeneratorIndex
from qvla.families import q_heisenberg
from qvla.linear import Vec
from qvla.scalars import InvalidInput
from qvla.specfile import SpecError, parse_spec, parse_spec_text

SPECS = Path(__file__).resolve().parent.parent / "specs"


def test_minimal_file():
    alg = parse_spec(SPECS / "minimal.qvla")
    a = GeneratorIndex("a")
    assert alg.entries(a, a) == []
    assert alg.epsilon == 0
    assert check_skew_symmetry(alg).passed and check_jacobi(alg).passed


def test_qheis_table_matches_constructor():
    table = parse_spec(SPECS / "qheis.qvla")
    built = q_heisenberg()
    assert table.field is built.field
    for a in built.generators(0):
        for b in built.generators(0):
            got = [(e.alpha, e.beta, e.i, e.j, e.value) for e in table.entries(a, b)]
            want = [(e.alpha, e.beta, e.i, e.j, e.value) for e in built.entries(a, b)]
            assert got == want
    assert check_skew_symmetry(table).passed
    assert check_maximality(table, 0, 3).passed


def test_broken_table_fails_skew():
    assert not check_skew_symmetry(parse_spec(SPECS / "broken-qheis.qvla")).passed


def test_relations_and_parameter_windows():
    text = """qvla-spec v1
field T=2
epsilon 1
family B arity=1 window=-1..1 weight=2
family c central weight=2
group -1
structure B[1] B[-1] 1 1 1 0 -> 2: c
structure B[-1] B[1] 1 1 1 0 -> -2: c
relation 1: B[1]@-1, 1: B[-1]
"""
    alg = parse_spec_text(text)
    fld = alg.field
    B = lambda m: GeneratorIndex("B", (m,))  # noqa: E731
    minus = fld.group(1)
    assert alg.generators(5) == [B(-1), B(0), B(1), GeneratorIndex("c")]
    got = reduce_mode(alg, 0, Vec.single(fld, Mode(B(1), minus, 2, 0)))
    assert got == Vec.single(fld, Mode(B(-1), fld.identity(), 2, 0), -1)


@pytest.mark.parametrize("text, line", [
    ("qvla-spec v2\nfield T=1\n", 1),
    ("qvla-spec v1\nfield T=1 params=1\nepsilon 0\nfamily a\nstructure a b 1 1 0 0 -> 1: a\n", 5),
    ("qvla-spec v1\nfield T=1\nepsilon 0\nfamily a arity=1 window=0..2\nstructure a[3] a[0] 1 1 0 0 -> 0\n", 5),
    ("qvla-spec v1\nfield T=1 params=1\nepsilon 0\nfamily a\ngroup q1^2\nstructure a a q1 1 0 0 -> 1: a\n", 6),
    ("qvla-spec v1\nfield T=3\nepsilon 0\nfamily a\nstructure a a -1 1 0 0 -> 1: a\n", 5),
    ("qvla-spec v1\nfield T=1\nepsilon 0\nfamily a arity=1\n", 4),
    ("qvla-spec v1\nfield T=1\nepsilon 0\nfamily a\nstructure a a 1 1 0 0 -> 1/: a\n", 5),
    ("qvla-spec v1\nfield T=1\nepsilon 0\nfamily a\nbogus 3\n", 5),
])
def test_rejections_carry_positions(text, line):
    with pytest.raises(SpecError) as info:
        parse_spec_text(text)
    assert info.value.line == line
    assert info.value.column >= 1


def test_missing_file_is_input_error(tmp_path):
    with pytest.raises(InvalidInput):
        parse_spec(tmp_path / "absent.qvla")
