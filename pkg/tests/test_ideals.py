from fractions import Fraction

import pytest

from quadrep.errors import EnumerationBoundError, RepresentativeSearchError
from quadrep.ideals import (
    FracIdeal,
    GenusFingerprint,
    PrimIdeal,
    coprime_genus_representative,
    coprime_to,
    different_ideal,
    format_ideal,
    genus_fingerprint,
    genus_representatives,
    ideal_valuation,
    parse_ideal,
    prime_above,
    principal_ideal,
    residue_norm_profile,
    unit_ideal,
)
from quadrep.quadfield import Discriminant, QuadElem, omega

from conftest import fixture_ideals

d5 = Discriminant(5)
d17 = Discriminant(17)
d21 = Discriminant(21)
d33 = Discriminant(33)


def test_prim_canonical_form():
    p = PrimIdeal(d21, 5, 11)
    assert (p.a, p.b) == (5, 1)
    q = PrimIdeal(d21, 5, -9)
    assert (q.a, q.b) == (5, 1)
    r = PrimIdeal(d21, 5, 10 + 9)  # b = 19 -> 9
    assert (r.a, r.b) == (5, 9)
    assert p == q and p != r
    assert p.conjugate() == r


def test_prim_validation():
    with pytest.raises(ValueError):
        PrimIdeal(d5, 3, 1)  # 3 is inert, no valid b exists
    with pytest.raises(ValueError):
        PrimIdeal(d5, 2, 2)  # even b
    with pytest.raises(ValueError):
        PrimIdeal(d5, -1, 1)


def test_norms():
    assert unit_ideal(d21).norm() == 1
    p5 = prime_above(d21, 5)[0].ideal
    assert p5.norm() == 5
    assert FracIdeal(Fraction(1, 5), p5.prim).norm() == Fraction(1, 5)


def test_z_basis():
    alpha, beta = unit_ideal(d21).z_basis()
    assert alpha == (1, QuadElem.from_int(d21, 1))
    assert beta == (1, omega(d21))
    p5 = prime_above(d21, 5)[0].ideal
    (s1, g1), (s2, g2) = p5.z_basis()
    assert s1 == s2 == 1
    assert g1 == QuadElem.from_int(d21, 5)
    assert g2 == QuadElem(d21, 1, 1)  # (1 + sqrt 21)/2
    (t1, h1), (t2, h2) = FracIdeal(3, unit_ideal(d21).prim).z_basis()
    assert t1 == t2 == 3
    assert h1 == QuadElem.from_int(d21, 1) and h2 == omega(d21)


def test_mul_identity_and_inverse():
    for disc in (d5, d21, d33):
        ok = unit_ideal(disc)
        for ideal in fixture_ideals(disc):
            assert ideal * ok == ideal
            assert ideal * ideal.inverse() == ok
            assert ideal.inverse().inverse() == ideal


def test_ramified_prime_squares_to_p():
    p3 = prime_above(d21, 3)[0].ideal
    sq = p3 * p3
    assert sq.scale == 3 and sq.prim.a == 1
    assert sq == FracIdeal(3, unit_ideal(d21).prim)


def test_split_prime_times_conjugate():
    p5 = prime_above(d21, 5)[0].ideal
    assert p5 * p5.conjugate() == FracIdeal(5, unit_ideal(d21).prim)


def test_mul_commutative_associative():
    for disc in (d5, d21, d33):
        ids = fixture_ideals(disc)
        assert len(ids) >= 4
        for x in ids:
            for y in ids:
                assert x * y == y * x
                assert (x * y).norm() == x.norm() * y.norm()
                for z in ids[:3]:
                    assert (x * y) * z == x * (y * z)


def test_principal_ideal_norm():
    w = omega(d5)
    assert principal_ideal(w).norm() == 1
    x = QuadElem.from_omega_coords(d21, 5, 1)
    assert x.norm() == 25
    assert principal_ideal(x).norm() == 25


def test_prime_above_split():
    ps = prime_above(d21, 5)
    assert [P.kind for P in ps] == ["split", "split"]
    forms = [(P.ideal.prim.a, P.ideal.prim.b) for P in ps]
    assert forms == [(5, 1), (5, 9)]
    assert ps[0].ideal.conjugate() == ps[1].ideal
    p2 = prime_above(d17, 2)
    assert [(P.ideal.prim.a, P.ideal.prim.b) for P in p2] == [(2, 1), (2, 3)]


def test_prime_above_inert():
    (P,) = prime_above(d5, 2)
    assert P.kind == "inert"
    assert P.ideal.scale == 2 and P.ideal.prim.a == 1
    assert P.ideal.norm() == 4
    assert P.ramification_index() == 1


def test_prime_above_ramified():
    (P,) = prime_above(d21, 3)
    assert P.kind == "ramified"
    assert (P.ideal.prim.a, P.ideal.prim.b) == (3, 3)
    assert P.ramification_index() == 2


def test_ideal_valuation():
    P5, Q5 = prime_above(d21, 5)
    assert ideal_valuation(P5.ideal, P5) == 1
    assert ideal_valuation(P5.ideal, Q5) == 0
    assert ideal_valuation(unit_ideal(d21), P5) == 0
    (P3,) = prime_above(d21, 3)
    three = FracIdeal(3, unit_ideal(d21).prim)
    assert ideal_valuation(three, P3) == 2
    fifth = FracIdeal(Fraction(1, 5), unit_ideal(d21).prim)
    assert ideal_valuation(fifth, P5) == -1
    assert ideal_valuation(fifth, Q5) == -1
    assert ideal_valuation(P5.ideal * P5.ideal, P5) == 2


def test_coprime_to():
    p5 = prime_above(d21, 5)[0].ideal
    assert coprime_to(unit_ideal(d21), 12345)
    assert not coprime_to(p5, 5)
    assert coprime_to(p5, 21)
    assert not coprime_to(FracIdeal(Fraction(1, 3), unit_ideal(d21).prim), 3)
    assert coprime_to(p5, 1)


def test_profile_pinned_values():
    ok = unit_ideal(d5)
    assert residue_norm_profile(ok, 1) == (1,)
    assert residue_norm_profile(ok, 2) == (1, 3)
    prof4 = residue_norm_profile(ok, 4)
    assert prof4[1] == 6
    assert sum(prof4) == 16
    assert sum(residue_norm_profile(ok, 7)) == 49


def test_profile_scale_invariant():
    p5 = prime_above(d21, 5)[0].ideal
    scaled = FracIdeal(Fraction(7, 3), p5.prim)
    for b in (2, 3, 4, 5, 12):
        assert residue_norm_profile(p5, b) == residue_norm_profile(scaled, b)


def test_profile_respects_enum_bound(monkeypatch):
    monkeypatch.setenv("QUADREP_MAX_B", "100")
    with pytest.raises(EnumerationBoundError):
        residue_norm_profile(unit_ideal(d5), 150)
    monkeypatch.delenv("QUADREP_MAX_B")
    assert len(residue_norm_profile(unit_ideal(d5), 150)) == 150


def test_fingerprint_validation():
    with pytest.raises(ValueError):
        GenusFingerprint(d21, (1, -1))  # product must be +1
    with pytest.raises(ValueError):
        GenusFingerprint(d21, (1,))
    fp = GenusFingerprint(d21, (-1, -1))
    assert fp.sign(3) == fp.sign(7) == -1
    assert fp.as_dict() == {3: -1, 7: -1}
    with pytest.raises(ValueError):
        fp.sign(5)


def test_fingerprint_pinned():
    assert genus_fingerprint(unit_ideal(d21)).as_dict() == {3: 1, 7: 1}
    p5 = prime_above(d21, 5)[0].ideal
    assert genus_fingerprint(p5).as_dict() == {3: -1, 7: -1}
    assert genus_fingerprint(p5 * p5).as_dict() == {3: 1, 7: 1}
    (p3,) = prime_above(d21, 3)
    assert genus_fingerprint(p3.ideal).as_dict() == {3: -1, 7: -1}


def test_fingerprint_narrow_invariance():
    lam = QuadElem.from_omega_coords(d21, 5, 1)
    assert lam.norm() > 0
    p5 = prime_above(d21, 5)[0].ideal
    moved = principal_ideal(lam) * p5
    assert genus_fingerprint(moved).as_dict() == genus_fingerprint(p5).as_dict()


def test_coprime_genus_representative():
    (p3,) = prime_above(d21, 3)
    rep = coprime_genus_representative(p3.ideal, 3)
    assert coprime_to(rep, 3 * 21)
    assert genus_fingerprint(rep).as_dict() == genus_fingerprint(p3.ideal).as_dict()
    ok = unit_ideal(d21)
    rep2 = coprime_genus_representative(ok, 21)
    assert genus_fingerprint(rep2).as_dict() == {3: 1, 7: 1}


def test_genus_representatives():
    for disc, want in ((d5, 1), (d21, 2), (d33, 2), (Discriminant(105), 4)):
        reps = genus_representatives(disc)
        assert len(reps) == want
        assert reps[0] == unit_ideal(disc)
        prints = {tuple(genus_fingerprint(r).signs) for r in reps}
        assert len(prints) == want


def test_different_ideal():
    d = different_ideal(d21)
    assert (d.prim.a, d.prim.b) == (21, 21)
    (p3,) = prime_above(d21, 3)
    (p7,) = prime_above(d21, 7)
    assert p3.ideal * p7.ideal == d
    assert d.norm() == 21


def test_format_parse_roundtrip():
    for disc in (d5, d21):
        for ideal in fixture_ideals(disc):
            assert parse_ideal(disc, format_ideal(ideal)) == ideal
    assert parse_ideal(d21, "ok") == unit_ideal(d21)
    assert parse_ideal(d21, "prime:5,2") == prime_above(d21, 5)[1].ideal
    assert parse_ideal(d21, "frac:1/5:5,1").scale == Fraction(1, 5)


@pytest.mark.parametrize(
    "text",
    ["", "bogus", "prim:5", "prim:4,2,1", "frac:0/5:5,1", "prime:5,3", "prime:4,1",
     "prim:3,1", "frac:x/y:5,1"],
)
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_ideal(d21, text)


def test_representative_search_failure():
    # impossible demand: no shell search can make the unit ideal coprime to 0
    with pytest.raises((RepresentativeSearchError, ValueError)):
        coprime_genus_representative(unit_ideal(d5), 0)
