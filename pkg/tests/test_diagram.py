import json
import random

import pytest
from hypothesis import given, strategies as st

from vkh.diagram import (
    FRAMED_KINDS, KINDS, UNKNOT, Crossing, HalfEdge, MoveSpec, VirtualDiagram, apply_move,
    cable, canonical_form, count_components, disjoint_union, isomorphic, link_from_gauss,
    load_diagrams, parse_diagram_json, parse_gauss, random_diagram, serialize_diagram,
    signs_consistent, sites, stats, to_gauss, unlink, validate, virtualize,
)
from vkh.diagram.codes import diagram_to_dict, tokenize_gauss
from vkh.errors import (
    DanglingHalfEdge, DuplicateSocket, LabelCountMismatch, MalformedToken, PatternNotFound,
    SchemaError, SignInconsistent, SignMismatch, UnknownCrossing,
)
from vkh.state_sum import jhat

diagrams = st.builds(
    lambda n, c, s: random_diagram(n, c, s),
    st.integers(0, 6), st.integers(1, 3), st.integers(0, 10**6),
)


class TestGauss:
    def test_virtual_trefoil_counts(self, vt):
        assert stats(vt) == {"n": 2, "n_plus": 2, "n_minus": 0, "writhe": 2,
                             "components": 1, "free_loops": 0}

    def test_whitespace_tokens(self):
        assert parse_gauss("O1+ O2+ U1+ U2+") == parse_gauss("O1+O2+U1+U2+")

    def test_tokenizer(self):
        assert tokenize_gauss("O12-U3+") == [("O", "12", -1), ("U", "3", 1)]

    @pytest.mark.parametrize("code, err", [
        ("O1+O2+U1+", LabelCountMismatch),
        ("O1+O2+U1", MalformedToken),
        ("O1+U1-", SignMismatch),
        ("O1+X1+", MalformedToken),
        ("O1+O1+", LabelCountMismatch),
    ])
    def test_rejects(self, code, err):
        with pytest.raises(err):
            parse_gauss(code)

    def test_empty_code_is_unknot(self):
        assert parse_gauss("") == UNKNOT

    def test_gauss_round_trip(self, trefoil):
        assert isomorphic(parse_gauss(to_gauss(trefoil)), trefoil)

    def test_link_components(self, hopf):
        assert count_components(hopf) == 2
        assert signs_consistent(hopf)


class TestJson:
    def test_round_trip_kink(self):
        d = parse_gauss("O1+U1+")
        assert isomorphic(parse_diagram_json(serialize_diagram(d)), d)

    def test_orientation_round_trip(self, trefoil):
        text = serialize_diagram(trefoil, with_orientation=True)
        assert isomorphic(parse_diagram_json(text), trefoil)

    def test_orientation_contradicting_sign(self, kink):
        data = diagram_to_dict(kink, with_orientation=True)
        data["crossings"][0]["sign"] = "-"
        with pytest.raises(SignInconsistent):
            parse_diagram_json(json.dumps(data))

    def test_three_slots_dangling(self):
        text = '{"crossings": [{"id": "1", "sign": "+", "slots": ["a", "a", "b"]}]}'
        with pytest.raises(DanglingHalfEdge):
            parse_diagram_json(text)

    def test_edge_used_three_times(self):
        text = '{"crossings": [{"id": "1", "sign": "+", "slots": ["a", "a", "a", "b"]}]}'
        with pytest.raises(DuplicateSocket):
            parse_diagram_json(text)

    @pytest.mark.parametrize("text", ["[]", "{", '{"crossings": 3}', '{"free_loops": -1}',
                                      '{"bogus": 1}'])
    def test_schema_errors(self, text):
        with pytest.raises(SchemaError):
            parse_diagram_json(text)

    def test_load_files(self, tmp_path, vt):
        g = tmp_path / "two.gauss"
        g.write_text("# comment\nO1+O2+U1+U2+\n\nO1+U1+\n")
        assert len(load_diagrams(str(g))) == 2
        j = tmp_path / "vt.json"
        j.write_text(serialize_diagram(vt))
        assert isomorphic(load_diagrams(str(j))[0], vt)

    @given(diagrams)
    def test_round_trip_property(self, d):
        assert isomorphic(parse_diagram_json(serialize_diagram(d)), d)


class TestValidate:
    def test_unknot(self):
        r = validate(UNKNOT)
        assert r.valid and r.components == 1

    def test_vt(self, vt):
        assert validate(vt).components == 1

    def test_duplicate_socket(self):
        h = HalfEdge("1", 0)
        d = VirtualDiagram((Crossing("1", 1),), ((h, HalfEdge("1", 1)), (h, HalfEdge("1", 2))))
        kinds = {v.kind for v in validate(d).violations}
        assert "DuplicateSocket" in kinds and not validate(d).valid

    @given(st.integers(0, 8), st.integers(0, 10**6))
    def test_generator_valid(self, n, seed):
        assert validate(random_diagram(n, 1, seed)).valid


class TestStats:
    def test_unknot(self):
        s = stats(UNKNOT)
        assert (s["n"], s["writhe"], s["components"]) == (0, 0, 1)

    def test_opposite_kinks(self):
        d = disjoint_union(parse_gauss("O1+U1+"), parse_gauss("O1-U1-"))
        assert stats(d)["writhe"] == 0 and stats(d)["components"] == 2


class TestVirtualize:
    def test_involution(self, vt):
        assert isomorphic(virtualize(virtualize(vt, "1"), "1"), vt)

    def test_jhat_unchanged(self, vt):
        assert jhat(virtualize(vt, "1")) == jhat(vt)

    def test_unknown(self, vt):
        with pytest.raises(UnknownCrossing):
            virtualize(vt, "9")

    @given(diagrams, st.data())
    def test_stats_unchanged(self, d, data):
        if d.n == 0:
            return
        c = data.draw(st.sampled_from(d.crossing_ids))
        v = virtualize(d, c)
        assert stats(v) == stats(d)
        assert isomorphic(virtualize(v, c), d)


class TestMoves:
    def test_r1_on_unknot(self):
        d = apply_move(UNKNOT, MoveSpec("R1_insert", ("loop", 0), sign=1))
        assert d.n == 1 and str(jhat(d)) == "q^-1 + q"

    @pytest.mark.parametrize("sign", [1, -1])
    def test_kink_chirality_pinned(self, sign):
        d = apply_move(UNKNOT, MoveSpec("R1_insert", ("loop", 0), sign=sign))
        assert jhat(d) == jhat(UNKNOT) and signs_consistent(d)

    def test_r2_insert_delete(self, trefoil):
        e = trefoil.edges[0]
        up = apply_move(trefoil, MoveSpec("R2_insert", (e, trefoil.edges[3])))
        assert up.n == 5
        back = [apply_move(up, MoveSpec("R2_delete", s)) for s in sites(up, "R2_delete")]
        assert any(isomorphic(b, trefoil) for b in back)

    def test_r3_on_braid(self):
        # closure of the 3-braid s1 s2 s1
        d = link_from_gauss(["O1+O2+U2+U3+", "U1+O3+"])
        tris = sites(d, "R3")
        assert len(tris) == 1
        moved = apply_move(d, MoveSpec("R3", tris[0]))
        assert not isomorphic(moved, d)
        assert jhat(moved) == jhat(d)

    def test_missing_patterns(self, vt):
        with pytest.raises(PatternNotFound):
            apply_move(vt, MoveSpec("R1_delete", "1"))
        with pytest.raises(PatternNotFound):
            apply_move(vt, MoveSpec("R1_insert", ("loop", 0)))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            MoveSpec("R4", None)

    @given(diagrams, st.lists(st.integers(0, 10**6), min_size=1, max_size=4))
    def test_components_and_validity(self, d, picks):
        for p in picks:
            rng = random.Random(p)
            kind = rng.choice(KINDS)
            opts = sites(d, kind)
            if not opts:
                continue
            m = MoveSpec(kind, rng.choice(opts), sign=rng.choice((1, -1)), left=rng.random() < .5)
            new = apply_move(d, m)
            assert validate(new).valid and signs_consistent(new)
            assert count_components(new) == count_components(d)
            delta = new.n - d.n
            assert delta == {"R1_insert": 1, "R1_delete": -1, "R1sq_insert": 2, "R1sq_delete": -2,
                             "R2_insert": 2, "R2_delete": -2, "R3": 0}[kind]
            d = new

    def test_framed_subset(self):
        assert set(FRAMED_KINDS) < set(KINDS)
        assert not any(k.startswith("R1_") for k in FRAMED_KINDS)


class TestCable:
    def test_unknot(self):
        assert cable(UNKNOT, 2) == unlink(2)

    def test_kink(self, kink):
        c = cable(kink, 2)
        assert c.n == 4 and count_components(c) == 2

    def test_vt(self, vt):
        s = stats(cable(vt, 2))
        assert (s["n"], s["components"], s["writhe"]) == (8, 2, 8)

    @given(st.integers(0, 3), st.integers(1, 2), st.integers(0, 10**6),
           st.sampled_from([(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)]))
    def test_cable_of_cable(self, n, comps, seed, ab):
        d = random_diagram(n, comps, seed)
        a, b = ab
        assert isomorphic(cable(cable(d, a), b), cable(d, a * b))

    def test_one_strand_is_identity(self, trefoil):
        assert isomorphic(cable(trefoil, 1), trefoil)


class TestGenerator:
    def test_zero_is_unknot(self):
        assert random_diagram(0, 1, 7) == UNKNOT

    def test_deterministic(self):
        assert random_diagram(5, 1, 42) == random_diagram(5, 1, 42)

    def test_component_hint(self):
        for seed in range(30):
            assert count_components(random_diagram(4, 3, seed)) == 3

    def test_negative(self):
        with pytest.raises(ValueError):
            random_diagram(-1)

    def test_canonical_form_ignores_labels(self, trefoil):
        from vkh.diagram import relabel
        assert canonical_form(relabel(trefoil, {"1": "x", "2": "y", "3": "z"})) == canonical_form(trefoil)
