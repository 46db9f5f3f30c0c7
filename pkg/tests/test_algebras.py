import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fslat import algebras as A
from fslat import constructions as C
from fslat import groups as G
from oracles import (
    congruences_by_exhaustion,
    is_congruence_direct,
    normal_form_subalgebra,
    witness_violates,
)

Z2 = G.make_group([2])
Z4 = G.make_group([4])
Z2xZ2 = G.make_group([2, 2])


def maroti_z2():
    return C.maroti(Z2, G.trivial_subgroup(Z2))


def maroti_z4_h():
    return C.maroti(Z4, G.subgroup_from_elements(Z4, [(0,), (2,)]))


def fan5():
    return C.maroti(Z2xZ2, G.trivial_subgroup(Z2xZ2))


def swap_meet_entry(algebra, x, y, value):
    meet = [list(row) for row in algebra.meet]
    meet[x][y] = value
    return A.FSemilattice(algebra.group, algebra.carrier, meet, algebra.action)


def test_validate_accepts_constructions():
    for algebra in (maroti_z2(), maroti_z4_h(), fan5(), C.a_k(3), C.counterexample_a7()):
        report = A.validate_axioms(algebra)
        assert report.ok, report


def test_validate_meet_mutation_named_with_witness():
    base = maroti_z2()
    bad = swap_meet_entry(base, 0, 1, 0)
    report = A.validate_axioms(bad)
    assert not report.ok
    assert report.axiom.startswith("meet-")
    assert witness_violates(bad, report.axiom, report.witness)


def test_validate_non_automorphism_action():
    base = fan5()
    # transpose an atom with the zero inside one generator's permutation
    perm = list(base.action[0])
    z = base.size - 1
    perm[0], perm[z] = perm[z], perm[0]
    bad = A.FSemilattice(base.group, base.carrier, base.meet, (tuple(perm), base.action[1]))
    report = A.validate_axioms(bad)
    assert not report.ok
    assert report.axiom.startswith("action-")
    assert witness_violates(bad, report.axiom, report.witness)


def test_shape_errors_are_separate():
    base = maroti_z2()
    with pytest.raises(A.ShapeError):
        A.validate_axioms(A.FSemilattice(base.group, base.carrier, base.meet[:-1], base.action))
    with pytest.raises(A.ShapeError):
        A.validate_axioms(
            A.FSemilattice(base.group, base.carrier, base.meet, ((0, 0, 0),))
        )
    with pytest.raises(A.ShapeError):
        A.validate_axioms(
            A.FSemilattice(base.group, ("x", "x", "o"), base.meet, base.action)
        )


def test_zero_atoms_leq():
    fan = maroti_z4_h()
    assert fan.carrier[A.zero(fan)] == "o"
    one = A.FSemilattice(Z2, ("e",), ((0,),), ((0,),))
    assert A.zero(one) == 0
    a7 = C.counterexample_a7()
    assert {a7.carrier[x] for x in A.atoms(a7)} == {"p", "q"}
    assert all(A.leq(fan, A.zero(fan), x) for x in range(fan.size))


def test_cover_edges():
    fan = maroti_z4_h()
    assert len(A.cover_edges(fan)) == 2
    a7 = C.counterexample_a7()
    edges = {(a7.carrier[u], a7.carrier[v]) for u, v in A.cover_edges(a7)}
    assert edges == {
        ("o", "p"),
        ("o", "q"),
        ("p", "a0"),
        ("p", "a2"),
        ("q", "a1"),
        ("q", "a3"),
    }


def test_act_examples():
    fan = maroti_z4_h()
    h_atom = fan.index("0")
    assert A.act(fan, G.identity(Z4), h_atom) == h_atom
    assert fan.carrier[A.act(fan, (1,), h_atom)] == "1"
    z = A.zero(fan)
    for g in Z4.elements():
        assert A.act(fan, g, z) == z


def test_act_on_infinite_factor_reduces_by_permutation_order():
    ak = C.a_k(3)
    assert A.act(ak, (3,), 0) == 0
    assert A.act(ak, (-1,), 0) == 2
    assert A.act(ak, (7,), 0) == 1


def test_subalgebra_examples():
    fan = fan5()
    sub, emb = A.subalgebra_generated(fan, 0)
    assert sub.size == 5
    a7 = C.counterexample_a7()
    sub_p, emb_p = A.subalgebra_generated(a7, a7.index("p"))
    assert tuple(a7.carrier[i] for i in emb_p) == ("p", "q", "o")
    z = A.zero(a7)
    sub_z, _ = A.subalgebra_generated(a7, z)
    assert sub_z.size == 1


def test_singleton_subalgebra_is_zero_only():
    # in a 1-generated algebra, {d} is a subalgebra exactly when d is the zero
    for algebra, gen in ((maroti_z4_h(), 0), (C.counterexample_a7(), 0), (C.a_k(3), 0)):
        assert A.generates(algebra, gen)
        z = A.zero(algebra)
        for d in range(algebra.size):
            _, emb = A.subalgebra_generated(algebra, d)
            if len(emb) == 1:
                assert d == z
        assert len(A.subalgebra_generated(algebra, z)[1]) == 1


def test_subalgebra_matches_normal_form_oracle():
    samples = [maroti_z2(), maroti_z4_h(), fan5(), C.a_k(4), C.counterexample_a7()]
    for algebra in samples:
        assert algebra.size <= 12
        for seed in range(algebra.size):
            _, emb = A.subalgebra_generated(algebra, seed)
            assert set(emb) == normal_form_subalgebra(algebra, seed)


def test_hom_extend_swaps_atoms():
    fan = maroti_z2()
    result = A.hom_extend(fan, 0, fan, 1)
    assert result.ok
    assert result.hom.map == (1, 0, 2)
    assert A.is_homomorphism(result.hom)


def test_hom_extend_a7_onto_p_subalgebra():
    a7 = C.counterexample_a7()
    sub, emb = A.subalgebra_generated(a7, a7.index("p"))
    result = A.hom_extend(a7, 0, sub, sub.index("p"))
    assert result.ok
    assert sorted(set(result.hom.map)) == list(range(3))


def test_hom_extend_not_well_defined_with_term_witness():
    a7 = C.counterexample_a7()
    sub, _ = A.subalgebra_generated(a7, a7.index("p"))
    result = A.hom_extend(sub, sub.index("p"), a7, 0)
    assert not result.ok
    s, t = result.conflict
    p_idx, a0_idx = sub.index("p"), 0

    def evaluate(algebra, term, x):
        value = None
        for g in sorted(term):
            y = A.act(algebra, g, x)
            value = y if value is None else algebra.meet[value][y]
        return value

    assert evaluate(sub, s, p_idx) == evaluate(sub, t, p_idx)
    assert evaluate(a7, s, a0_idx) != evaluate(a7, t, a0_idx)


def test_hom_extend_requires_generator():
    te = C.two_element(Z2)
    with pytest.raises(A.NotGeneratedError):
        A.hom_extend(te, 1, te, 0)


@given(st.data())
@settings(max_examples=40)
def test_hom_extend_commutes_with_terms(data):
    # the canonical extension satisfies phi(s(a)) = s(b) for every unary term
    fan = maroti_z4_h()
    result = A.hom_extend(fan, 0, fan, 1)
    assert result.ok
    hom = result.hom
    elems = Z4.elements()
    term = data.draw(
        st.frozensets(st.sampled_from(elems), min_size=1, max_size=3)
    )

    def evaluate(x):
        value = None
        for g in sorted(term):
            y = A.act(fan, g, x)
            value = y if value is None else fan.meet[value][y]
        return value

    assert hom.map[evaluate(0)] == evaluate(1)


def test_is_isomorphic_examples():
    z4h = G.subgroup_from_elements(Z4, [(0,), (2,)])
    t1 = G.make_transversal(Z4, z4h, [(0,), (1,)])
    t2 = G.make_transversal(Z4, z4h, [(0,), (3,)])
    b1 = C.twisted(Z4, z4h, reps=t1)
    b2 = C.twisted(Z4, z4h, reps=t2)
    iso, hom = A.is_isomorphic_1gen(b1, 0, b2, 0)
    assert iso and A.is_homomorphism(hom)

    a7 = C.counterexample_a7()
    sub, _ = A.subalgebra_generated(a7, a7.index("p"))
    assert not A.is_isomorphic_1gen(a7, 0, sub, sub.index("p"))[0]

    fan = maroti_z4_h()
    iso, hom = A.is_isomorphic_1gen(fan, 0, fan, 0)
    assert iso and hom.map == tuple(range(fan.size))


def test_opposite():
    fan = maroti_z4_h()
    assert A.opposite(A.opposite(fan)) == fan
    te = C.two_element(Z4)
    assert A.opposite(te) == te
    iso, _ = A.is_isomorphic_1gen(A.opposite(fan), 0, fan, 0)
    assert iso


def test_congruences_of_small_fan_match_exhaustive_oracle():
    fan = maroti_z2()
    congs = A.congruences(fan)
    assert len(congs) == 2
    assert congs[0].is_identity and congs[-1].is_total
    oracle = congruences_by_exhaustion(fan)
    assert sorted(c.blocks for c in congs) == sorted(oracle)


def test_congruence_method_matches_oracle_on_carriers_up_to_7():
    h = G.subgroup_from_elements(Z4, [(0,), (2,)])
    u, gens = C.chain2_factor(Z4, h)
    twisted_chain = C.twisted(Z4, h, u, factor_generators=gens)  # not simple
    samples = [
        maroti_z2(),
        maroti_z4_h(),
        fan5(),
        C.a_k(3),
        C.counterexample_a7(),
        twisted_chain,
    ]
    for algebra in samples:
        assert algebra.size <= 7
        congs = A.congruences(algebra)
        oracle = congruences_by_exhaustion(algebra)
        assert sorted(c.blocks for c in congs) == sorted(oracle)
        for c in congs:
            assert is_congruence_direct(algebra, c.blocks)
    assert len(A.congruences(twisted_chain)) == 4


def _brute_hom_exists(src, a, dst, b):
    def consistent(f):
        for x in f:
            for y in f:
                m = src.meet[x][y]
                if m in f and f[m] != dst.meet[f[x]][f[y]]:
                    return False
            for p, q in zip(src.action, dst.action):
                if p[x] in f and f[p[x]] != q[f[x]]:
                    return False
        return True

    def extend(f):
        if len(f) == src.size:
            return True
        x = next(i for i in range(src.size) if i not in f)
        for v in range(dst.size):
            f[x] = v
            if consistent(f) and extend(f):
                return True
            del f[x]
        return False

    f = {a: b}
    return consistent(f) and extend(f)


def test_hom_extend_agrees_with_brute_force_search():
    a7 = C.counterexample_a7()
    sub_p, _ = A.subalgebra_generated(a7, a7.index("p"))
    fan = maroti_z4_h()
    cases = [(a7, 0, a7, b) for b in range(a7.size)]
    cases += [(a7, 0, sub_p, b) for b in range(sub_p.size)]
    cases += [(sub_p, 0, a7, b) for b in range(a7.size)]
    cases += [(fan, 0, fan, b) for b in range(fan.size)]
    for src, a, dst, b in cases:
        assert A.hom_extend(src, a, dst, b).ok == _brute_hom_exists(src, a, dst, b)


def test_a7_congruence_and_quotient():
    a7 = C.counterexample_a7()
    congs = A.congruences(a7)
    theta_blocks = ((0,), (1,), (2,), (3,), (4, 5, 6))
    theta = next(c for c in congs if c.blocks == theta_blocks)
    q = A.quotient(a7, theta)
    assert q.size == 5
    assert A.validate_axioms(q).ok
    block_atoms = [i for i in range(q.size) if i != A.zero(q)]
    perm = q.action[0]
    orbit = {block_atoms[0]}
    x = block_atoms[0]
    for _ in range(3):
        x = perm[x]
        orbit.add(x)
    assert orbit == set(block_atoms)


def test_quotient_by_identity_and_total():
    fan = maroti_z4_h()
    congs = A.congruences(fan)
    assert A.quotient(fan, congs[0]) == fan
    assert A.quotient(fan, congs[-1]).size == 1


def test_congruence_limit():
    fan = fan5()
    with pytest.raises(A.CarrierLimitError):
        A.congruences(fan, limit=4)


@given(st.data())
@settings(max_examples=60)
def test_action_is_automorphism_law(data):
    algebra = data.draw(st.sampled_from([maroti_z4_h(), fan5(), C.a_k(4)]))
    n = algebra.size
    x = data.draw(st.integers(min_value=0, max_value=n - 1))
    y = data.draw(st.integers(min_value=0, max_value=n - 1))
    if algebra.group.is_finite:
        g = data.draw(st.sampled_from(algebra.group.elements()))
    else:
        g = (data.draw(st.integers(min_value=-6, max_value=6)),)
    assert A.act(algebra, g, algebra.meet[x][y]) == algebra.meet[A.act(algebra, g, x)][A.act(algebra, g, y)]


def test_algebra_json_roundtrip():
    fan = maroti_z4_h()
    again = A.algebra_from_dict(A.algebra_to_dict(fan))
    assert again == fan
    with pytest.raises(A.ShapeError):
        A.algebra_from_dict({"group": {"orders": [2]}, "carrier": ["a"], "meet": []})
