from hypothesis import given, strategies as st

from vkh.atoms import BadEdge, atom_of, atom_report, detect_one_one, is_orientable
from vkh.diagram import UNKNOT, cable, random_diagram
from vkh.khovanov import chain_complex, verify_d2
from vkh.state_sum import resolve_state

from oracles import weights_are_coboundary

diagrams = st.builds(
    lambda n, c, s: random_diagram(n, c, s),
    st.integers(0, 7), st.integers(1, 3), st.integers(0, 10**6),
)


def test_unknot():
    a = atom_of(UNKNOT)
    assert a.euler_characteristic == 2 and a.orientable
    assert atom_report(UNKNOT).as_dict() == {"orientable": True, "euler": 2, "good": True,
                                            "bad_edges": [], "genus": 0}


def test_kink(kink):
    a = atom_of(kink)
    assert len(a.frame_edges) == 2 and a.euler_characteristic == 2
    assert len(a.black_cells) + len(a.white_cells) == 3
    r = atom_report(kink)
    assert (r.orientable, r.euler, r.genus, r.good) == (True, 2, 0, True)


def test_virtual_trefoil(vt):
    a = atom_of(vt)
    assert a.euler_characteristic == 1
    v = is_orientable(a)
    assert not v and v.obstruction
    r = atom_report(vt)
    assert (r.orientable, r.euler, r.crosscap, r.good) == (False, 1, 1, False)
    assert "genus" not in r.as_dict()


def test_trefoil(trefoil):
    a = atom_of(trefoil)
    assert (len(a.black_cells), len(a.white_cells)) in ((3, 2), (2, 3))
    r = atom_report(trefoil)
    assert (r.orientable, r.euler, r.genus, r.good) == (True, 2, 0, True)


def test_cabled_vt_orientable(vt):
    assert atom_of(cable(vt, 2)).orientable


def test_vt_bad_edges(vt):
    assert detect_one_one(vt) == [BadEdge("AA", "BA", "1"), BadEdge("AA", "AB", "2")]


def test_good_diagrams(trefoil):
    assert detect_one_one(trefoil) == [] and detect_one_one(UNKNOT) == []


def test_witness_is_consistent(trefoil):
    v = is_orientable(atom_of(trefoil))
    assert set(v.witness.values()) <= {1, -1}


@given(diagrams)
def test_cells_cover_every_edge_twice(d):
    a = atom_of(d)
    for cells in (a.black_cells, a.white_cells):
        count = {}
        for cell in cells:
            for k in range(1, len(cell), 2):
                e = tuple(sorted((cell[k], cell[(k + 1) % len(cell)])))
                count[e] = count.get(e, 0) + 1
        assert sorted(count) == sorted(tuple(sorted(e)) for e in d.edges)
        assert set(count.values()) <= {1}


@given(diagrams)
def test_euler_parity_and_oracle(d):
    a = atom_of(d)
    assert a.euler_characteristic == resolve_state(d, 0) + resolve_state(d, (1 << d.n) - 1) - d.n
    if a.orientable:
        assert a.euler_characteristic % 2 == 0
    assert a.orientable == weights_are_coboundary(d)


@given(diagrams)
def test_orientable_implies_good(d):
    if atom_of(d).orientable:
        assert detect_one_one(d) == []


@given(diagrams)
def test_good_admits_rational_complex(d):
    if d.n <= 6 and not detect_one_one(d):
        assert verify_d2(chain_complex(d, "q", check=False)) is None


@given(diagrams)
def test_doubled_always_good(d):
    if d.n <= 3:
        c = cable(d, 2)
        assert atom_of(c).orientable and detect_one_one(c) == []


@given(diagrams)
def test_genus_nonnegative(d):
    r = atom_report(d)
    assert (r.genus if r.orientable else r.crosscap) >= 0
    assert r.good == (not r.bad_edges)
