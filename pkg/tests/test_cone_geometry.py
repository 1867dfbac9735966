from fractions import Fraction
from math import gcd

import pytest

from cqs.cone_geometry import (
    LatticeTag,
    OracleBoundError,
    ZoneSpec,
    ab_floor_data,
    binomial_equations,
    continued_fraction,
    cone_index,
    eta,
    hilbert_basis,
    hilbert_basis_oracle,
    is_grounded,
    zone_points,
)
from cqs.lattice import MPoint, det2_m, pairing
from cqs.representations import (
    IntervalUD,
    InvalidSingularityError,
    NQForm,
    central_degree,
    nq_to_cone,
)


def cone_of(n, q):
    return nq_to_cone(NQForm(n, q))


def brute_zone(cone, R, kappa, shifts):
    """Independent zone enumeration for standard cones (alpha = (1,0)).

    Walks integer (x, y) directly against the defining inequalities; the
    lattice is M shifted by (t/m) * Rbar for each t in `shifts`.
    """
    rbar = central_degree(cone)
    m = pairing(cone.alpha, rbar)
    n = cone.order
    q = -cone.beta.x
    u_r, v_r = pairing(cone.alpha, R), pairing(cone.beta, R)
    out = set()
    for t in shifts:
        off_u = Fraction(t * rbar.u, m)
        off_v = Fraction(t * rbar.v, m)
        x = kappa - off_u
        x0 = x.numerator // x.denominator + (0 if x.denominator == 1 else 1)
        while x0 + off_u < kappa + u_r:
            # kappa <= -q*(x+off_u) + n*(y+off_v) < kappa + v_r
            lo = (kappa + q * (x0 + off_u)) / n - off_v
            y = lo.numerator // lo.denominator + (0 if lo.denominator == 1 else 1)
            while -q * (x0 + off_u) + n * (y + off_v) < kappa + v_r:
                out.add((x0 + off_u, y + off_v))
                y += 1
            x0 += 1
    return out


class TestContinuedFraction:
    def test_examples(self):
        assert continued_fraction(20, 9).coefficients == (3, 2, 2, 2, 3)
        assert continued_fraction(2, 1).coefficients == (2,)
        assert continued_fraction(7, 4).coefficients == (2, 4)

    def test_rejects_bad_fractions(self):
        for p, s in [(4, 4), (3, 5), (6, 3), (5, 0)]:
            with pytest.raises(InvalidSingularityError):
                continued_fraction(p, s)


class TestHilbertBasis:
    def test_worked_example(self):
        h = hilbert_basis(cone_of(20, 11))
        assert [(r.u, r.v) for r in h.basis] == [
            (0, 1), (1, 1), (3, 2), (5, 3), (7, 4), (9, 5), (20, 11),
        ]
        assert h.coeffs == (3, 2, 2, 2, 3)
        assert h.e == 7
        assert h.grounded and h.central_index == 4
        assert h.central_degree == MPoint(5, 3)

    def test_a1(self):
        h = hilbert_basis(cone_of(2, 1))
        assert [(r.u, r.v) for r in h.basis] == [(0, 1), (1, 1), (2, 1)]
        assert h.e == 3 and not h.smooth

    def test_4_1(self):
        h = hilbert_basis(cone_of(4, 1))
        assert [(r.u, r.v) for r in h.basis] == [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]
        assert h.coeffs == (2, 2, 2)
        assert h.e == 5

    def test_oracle_agrees_on_examples(self):
        for n, q in [(20, 11), (2, 1), (7, 3), (4, 1), (30, 17), (59, 12)]:
            cone = cone_of(n, q)
            assert hilbert_basis(cone) == hilbert_basis_oracle(cone)

    def test_oracle_7_3(self):
        h = hilbert_basis_oracle(cone_of(7, 3))
        assert [(r.u, r.v) for r in h.basis] == [(0, 1), (1, 1), (2, 1), (7, 3)]
        assert h.e == 4

    @pytest.mark.parametrize("n", range(2, 61))
    def test_oracle_sweep(self, n):
        for q in range(1, n):
            if gcd(n, q) != 1:
                continue
            cone = cone_of(n, q)
            h = hilbert_basis(cone)
            assert h == hilbert_basis_oracle(cone)
            for i in range(2, h.e):
                assert h.element(i - 1) + h.element(i + 1) == h.coefficient(i) * h.element(i)
            for j in range(h.e - 1):
                assert abs(det2_m(h.basis[j], h.basis[j + 1])) == 1

    def test_oracle_bound(self, monkeypatch):
        with pytest.raises(OracleBoundError):
            hilbert_basis_oracle(cone_of(101, 1), bound=100)
        monkeypatch.setenv("CQS_ORACLE_BOUND", "50")
        with pytest.raises(OracleBoundError):
            hilbert_basis_oracle(cone_of(101, 1))

    def test_nonstandard_coordinates(self):
        # same singularity presented as C(I); basis lives in those coordinates
        from cqs.representations import interval_to_cone

        cone = interval_to_cone(IntervalUD(-2, 2, 5))
        h = hilbert_basis(cone)
        assert h.e == 7 and h.coeffs == (3, 2, 2, 2, 3)
        assert h == hilbert_basis_oracle(cone)
        assert h.central_degree == MPoint(0, 1)

    def test_equations(self):
        h = hilbert_basis(cone_of(20, 11))
        eqs = binomial_equations(h)
        assert eqs[0] == "x1*x3 - x2^3"
        assert eqs[2] == "x3*x5 - x4^2"
        assert len(eqs) == 5


class TestEta:
    def test_worked_example(self):
        cone = cone_of(20, 11)
        h = hilbert_basis(cone)
        assert eta(h, cone, 4) == Fraction(7, 5)  # floor 1 = a_4 - 1
        assert eta(h, cone, 2) == Fraction(20, 9)  # floor 2 = a_2 - 1

    def test_4_1(self):
        cone = cone_of(4, 1)
        h = hilbert_basis(cone)
        assert eta(h, cone, 3) == Fraction(3, 2)

    def test_grounded_identity(self):
        for n, q in [(20, 11), (4, 1), (8, 3), (30, 17)]:
            cone = cone_of(n, q)
            h = hilbert_basis(cone)
            if not h.grounded or h.e < 4:
                continue
            from cqs.representations import cone_to_interval

            ab = ab_floor_data(cone_to_interval(cone))
            expected = 1 + min(ab.floor_a + ab.B, ab.A + ab.floor_b)
            assert eta(h, cone, h.central_index) == expected

    def test_index_bounds(self):
        cone = cone_of(20, 11)
        h = hilbert_basis(cone)
        with pytest.raises(IndexError):
            eta(h, cone, 1)
        with pytest.raises(IndexError):
            eta(h, cone, 7)


class TestGrounded:
    def test_examples(self):
        assert is_grounded(IntervalUD(-2, 2, 5))
        assert not is_grounded(IntervalUD(5, 6, 7))
        assert is_grounded(IntervalUD(-1, 1, 2))

    def test_matches_hilbert_membership(self):
        for n in range(2, 40):
            for q in range(1, n):
                if gcd(n, q) != 1:
                    continue
                cone = cone_of(n, q)
                from cqs.representations import cone_to_interval

                assert is_grounded(cone_to_interval(cone)) == hilbert_basis(cone).grounded


class TestABFloorData:
    def test_worked_example(self):
        ab = ab_floor_data(IntervalUD(-2, 2, 5))
        assert ab.A == ab.B == Fraction(2, 5)
        assert ab.a_central == 2
        assert ab.frac_a == Fraction(2, 5)

    def test_t_singularity(self):
        ab = ab_floor_data(IntervalUD(-1, 1, 2))
        assert ab.A == ab.B == Fraction(1, 2)
        assert ab.a_central == 2

    def test_longer_interval(self):
        # [-1/2, 3/2] has canonical translate [-3/2, 1/2]; floors are shift-invariant
        ab = ab_floor_data(IntervalUD(-1, 3, 2))
        assert {ab.A, ab.B} == {Fraction(3, 2), Fraction(1, 2)}
        assert ab.a_central == 3
        assert ab.A + ab.B == 2

    def test_rejects_ungrounded(self):
        with pytest.raises(InvalidSingularityError):
            ab_floor_data(IntervalUD(5, 6, 7))


class TestZones:
    def test_irreducible_degree_zone_is_origin(self):
        cone = cone_of(20, 11)
        h = hilbert_basis(cone)
        for i in range(2, h.e):
            pts = zone_points(ZoneSpec(h.element(i), 0, LatticeTag.M), cone)
            assert [(p.u, p.v) for p in pts] == [(0, 0)]

    def test_multiple_degree_zone(self):
        cone = cone_of(20, 11)
        h = hilbert_basis(cone)
        pts = zone_points(ZoneSpec(2 * h.element(2), 0, LatticeTag.M), cone)
        assert {(p.u, p.v) for p in pts} == {(0, 0), (1, 1)}
        cone = cone_of(7, 3)
        h = hilbert_basis(cone)
        pts = zone_points(ZoneSpec(3 * h.element(3), 0, LatticeTag.M), cone)
        assert {(p.u, p.v) for p in pts} == {(0, 0), (2, 1), (4, 2)}

    @pytest.mark.parametrize("n,q", [(20, 11), (4, 1), (7, 3), (9, 2)])
    @pytest.mark.parametrize("kappa", [-1, 0, 1, 5])
    def test_against_independent_enumeration(self, n, q, kappa):
        cone = cone_of(n, q)
        h = hilbert_basis(cone)
        m = cone_index(cone)
        degrees = [h.element(2), h.element(h.e - 1), 2 * h.central_degree]
        for R in degrees:
            for tag, shifts in [
                (LatticeTag.M, (0,)),
                (LatticeTag.M_SHIFTED, (1,)),
                (LatticeTag.M_TILDE, range(m)),
            ]:
                got = {(p.u, p.v) for p in zone_points(ZoneSpec(R, kappa, tag), cone)}
                assert got == brute_zone(cone, R, kappa, shifts), (R, kappa, tag)

    def test_translation_by_central_degree(self):
        cone = cone_of(20, 11)
        h = hilbert_basis(cone)
        m = cone_index(cone)
        rbar = h.central_degree
        for kappa in (-1, 0, 3):
            base = zone_points(ZoneSpec(h.element(3), kappa, LatticeTag.M), cone)
            shifted = zone_points(ZoneSpec(h.element(3), kappa + m, LatticeTag.M), cone)
            assert {(p.u + rbar.u, p.v + rbar.v) for p in base} == {
                (p.u, p.v) for p in shifted
            }

    def test_lattice_indices(self):
        # a degree with iota(R) = (n, n) makes the zone a fundamental box:
        # it holds n points of M, n*m of M_tilde, n of the shifted coset
        for n, q in [(20, 11), (7, 3), (12, 5)]:
            cone = cone_of(n, q)
            h = hilbert_basis(cone)
            m = cone_index(cone)
            b = n // m  # r1 + re = b * Rbar
            big = b * h.central_degree
            assert len(zone_points(ZoneSpec(big, 0, LatticeTag.M), cone)) == n
            assert len(zone_points(ZoneSpec(big, 0, LatticeTag.M_TILDE), cone)) == n * m
            assert len(zone_points(ZoneSpec(big, 0, LatticeTag.M_SHIFTED), cone)) == n

    def test_rejects_boundary_degree(self):
        cone = cone_of(20, 11)
        with pytest.raises(InvalidSingularityError):
            zone_points(ZoneSpec(MPoint(0, 1), 0, LatticeTag.M), cone)
