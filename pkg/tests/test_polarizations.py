"""Forms, kernels, restriction, and the bounded sublattice scan."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ppavlab.exact_linalg import (
    IntMatrix,
    NotAlternating,
    hnf_columns,
    hstack,
    saturate,
)
from ppavlab.polarizations import (
    Degenerate,
    FiniteSymplecticGroup,
    IncompatibleForm,
    NotMember,
    NotPositive,
    NotSaturated,
    NotStable,
    BudgetExceeded,
    PolarizedTorus,
    box_product,
    complement,
    is_principal,
    kernel_group,
    polarization_from_json,
    polarization_to_json,
    polarization_type,
    qmodz,
    restrict,
    restrict_with_basis,
    scale,
    scan_subtorus_types,
    self_intersection,
    theta_g,
    weil_pairing,
    xi_g,
)
from ppavlab.tori import GAUSSIAN, EISENSTEIN, RATIONAL, Torus


def split_form(b: IntMatrix) -> IntMatrix:
    z = IntMatrix.zeros(b.rows, b.cols)
    return IntMatrix.from_blocks([[z, b], [-b, z]])


def random_pd_block(g, rng, span=2):
    c = IntMatrix.from_rows([[rng.randint(-span, span) for _ in range(g)]
                             for _ in range(g)], cols=g)
    return c.transpose() * c + IntMatrix.identity(g)


# -- construction and validation ---------------------------------------------


def test_theta_form_frozen():
    assert theta_g(2).form == IntMatrix.from_rows([
        [0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])


def test_xi_blocks_frozen():
    assert xi_g(2).form.block(0, 2, 2, 4) == IntMatrix.from_rows([[2, 1], [1, 2]])
    assert xi_g(1).form == IntMatrix.from_rows([[0, 2], [-2, 0]])


def test_constructor_rejections():
    with pytest.raises(NotAlternating):
        PolarizedTorus(Torus(RATIONAL, 1), IntMatrix.identity(2))
    with pytest.raises(IncompatibleForm):
        # alternating, but pairs coordinates inside the plain block
        PolarizedTorus(Torus(RATIONAL, 2), IntMatrix.from_rows(
            [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]))
    with pytest.raises(Degenerate):
        PolarizedTorus(Torus(RATIONAL, 2),
                       split_form(IntMatrix.from_rows([[0, 0], [0, 1]])))
    with pytest.raises(NotPositive):
        PolarizedTorus(Torus(RATIONAL, 1), IntMatrix.from_rows([[0, -1], [1, 0]]))
    with pytest.raises(NotPositive):
        PolarizedTorus(Torus(GAUSSIAN, 1), IntMatrix.from_rows([[0, -1], [1, 0]]))


def test_theta_and_xi_valid_over_every_order():
    for order in (RATIONAL, GAUSSIAN, EISENSTEIN):
        for g in (1, 2, 3):
            theta_g(g, order)
            xi_g(g, order)


def test_qmodz():
    assert qmodz(Fraction(-1, 3)) == Fraction(2, 3)
    assert qmodz(Fraction(5, 2)) == Fraction(1, 2)
    assert qmodz(3) == 0


# -- type ----------------------------------------------------------------------


def test_polarization_type_examples():
    assert polarization_type(theta_g(3)) == (1, 1, 1)
    assert is_principal(theta_g(3))
    for g in range(1, 7):
        assert polarization_type(xi_g(g)) == (1,) * (g - 1) + (g + 1,)
    diag = PolarizedTorus(Torus(RATIONAL, 2), split_form(IntMatrix.diagonal([1, 2])))
    assert polarization_type(diag) == (1, 2)
    assert not is_principal(diag)


# -- kernel groups -------------------------------------------------------------


def brute_kernel_order(form: IntMatrix) -> int:
    # walk the finite grid (1/D)Z^n mod 1 and count members; D = last divisor
    from ppavlab.exact_linalg import snf
    d = snf(form).d
    den = max(d[i, i] for i in range(form.rows))
    n = form.rows
    count = 0
    import itertools as it
    for pt in it.product(range(den), repeat=n):
        x = [Fraction(a, den) for a in pt]
        vals = [sum(Fraction(form[i, j]) * x[j] for j in range(n)) for i in range(n)]
        count += all(v.denominator == 1 for v in vals)
    return count


def test_kernel_group_trivial_for_principal():
    k = kernel_group(theta_g(2))
    assert k.order == 1 and k.orders == ()
    assert list(k.elements()) == [(Fraction(0),) * 4]


def test_kernel_group_xi_is_diagonal_torsion():
    for g in range(1, 5):
        k = kernel_group(xi_g(g))
        assert k.order == (g + 1) ** 2
        d1 = tuple([Fraction(1, g + 1)] * g + [Fraction(0)] * g)
        d2 = tuple([Fraction(0)] * g + [Fraction(1, g + 1)] * g)
        assert k.contains(d1) and k.contains(d2)
        # every element is constant within each block
        for x in k.elements():
            assert len(set(x[:g])) == 1 and len(set(x[g:])) == 1


def test_kernel_group_order_against_brute_force():
    for p in (xi_g(1), xi_g(2), scale(theta_g(1), 3)):
        assert kernel_group(p).order == brute_kernel_order(p.form)


def test_kernel_of_scaled_theta_is_full_torsion():
    k = kernel_group(scale(theta_g(2), 2))
    assert k.order == 16 and k.orders == (2, 2, 2, 2)
    for pt in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]:
        assert k.contains([Fraction(a, 2) for a in pt])


def test_kernel_of_scaled_xi_contains_full_torsion():
    k = kernel_group(scale(xi_g(2), 2))
    for pt in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]:
        assert k.contains([Fraction(a, 2) for a in pt])


def test_weil_pairing_values():
    k1 = kernel_group(xi_g(1))
    x, y = (Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 2))
    assert weil_pairing(k1, x, x) == 0
    assert weil_pairing(k1, x, y) == Fraction(1, 2)
    k2 = kernel_group(xi_g(2))
    a, b = k2.generators
    assert weil_pairing(k2, a, b) in (Fraction(1, 3), Fraction(2, 3))
    with pytest.raises(NotMember):
        weil_pairing(kernel_group(theta_g(1)), (Fraction(1, 2), 0), (0, 0))


def test_weil_pairing_alternating_and_nondegenerate():
    for g in (1, 2, 3):
        k = kernel_group(xi_g(g))
        els = list(k.elements())
        assert len(els) == k.order
        for x in els:
            assert weil_pairing(k, x, x) == 0
        for i, a in enumerate(k.generators):
            assert any(weil_pairing(k, a, b) != 0 for b in k.generators)


# -- scale / box ----------------------------------------------------------------


def test_scale_multiplies_type():
    assert polarization_type(scale(theta_g(2), 3)) == (3, 3)
    with pytest.raises(ValueError):
        scale(theta_g(1), 0)


def test_box_product_of_thetas_is_theta():
    assert box_product(theta_g(1), theta_g(2)) == theta_g(3)


def test_box_product_kernel_orders_multiply():
    k = kernel_group(box_product(xi_g(1), xi_g(2)))
    assert k.order == 4 * 9


def test_box_product_order_mismatch():
    from ppavlab.tori import OrderMismatch
    with pytest.raises(OrderMismatch):
        box_product(theta_g(1), theta_g(1, GAUSSIAN))


def test_box_product_seeded_type_merge():
    rng = random.Random(23)
    for _ in range(20):
        b1 = random_pd_block(rng.randint(1, 2), rng)
        b2 = random_pd_block(rng.randint(1, 2), rng)
        p = PolarizedTorus(Torus(RATIONAL, b1.rows), split_form(b1))
        q = PolarizedTorus(Torus(RATIONAL, b2.rows), split_form(b2))
        box = box_product(p, q)
        assert kernel_group(box).order == kernel_group(p).order * kernel_group(q).order
        assert math.prod(polarization_type(box)) == (
            math.prod(polarization_type(p)) * math.prod(polarization_type(q)))


# -- self-intersection -----------------------------------------------------------


def test_self_intersection_frozen():
    assert self_intersection(theta_g(3)) == 6
    assert self_intersection(xi_g(2)) == 6


def test_self_intersection_xi_by_rank_one_update_oracle():
    # det(I + ones) = 1 + <ones-column, ones-column> = g + 1
    for g in range(1, 6):
        ones = [1] * g
        det_oracle = 1 + sum(a * b for a, b in zip(ones, ones))
        assert self_intersection(xi_g(g)) == math.factorial(g) * det_oracle


# -- restriction and complements ---------------------------------------------


def doubled(cols: list[list[int]], g: int) -> IntMatrix:
    base = IntMatrix.from_columns(cols, rows=g)
    z = IntMatrix.zeros(g, base.cols)
    return IntMatrix.from_blocks([[base, z], [z, base]])


def test_restrict_diagonal_of_xi2():
    sub = restrict(xi_g(2), doubled([[1, 1]], 2))
    assert polarization_type(sub) == (6,)
    assert sub.form == IntMatrix.from_rows([[0, 6], [-6, 0]])


def test_restrict_axis_of_theta_is_principal():
    sub = restrict(theta_g(2), doubled([[1, 0]], 2))
    assert polarization_type(sub) == (1,)


def test_complement_of_axis_in_theta():
    c = complement(theta_g(2), doubled([[1, 0]], 2))
    assert hnf_columns(c) == doubled([[0, 1]], 2)


def test_complement_of_diagonal_in_xi2():
    c = complement(xi_g(2), doubled([[1, 1]], 2))
    assert c == doubled([[1, -1]], 2)
    assert polarization_type(restrict(xi_g(2), c)) == (2,)


def test_restrict_complement_index_identity():
    p = xi_g(2)
    s = doubled([[1, 1]], 2)
    r1 = restrict_with_basis(p, s)
    c = complement(p, s)
    r2 = restrict_with_basis(p, c)
    u = hstack(r1.embedding, r2.embedding)
    # orthogonal splitting: index^2 * det(form) = det(restr) * det(compl restr)
    assert (u.det() ** 2) * p.form.det() == r1.polarized.form.det() * r2.polarized.form.det()


def test_restrict_rejects_unsaturated_and_unstable():
    with pytest.raises(NotSaturated):
        restrict(theta_g(2), doubled([[2, 0]], 2))
    # graph-like sublattice: stable over Z[i] but not split over Z
    graph = IntMatrix.from_columns([[1, 0, 0, 1], [0, -1, 1, 0]], rows=4)
    with pytest.raises(NotStable):
        restrict(theta_g(2), graph)


def test_restrict_gaussian_graph_sublattice():
    graph = IntMatrix.from_columns([[1, 0, 0, 1], [0, -1, 1, 0]], rows=4)
    res = restrict_with_basis(theta_g(2, GAUSSIAN), graph)
    assert polarization_type(res.polarized) == (2,)
    assert hnf_columns(res.embedding) == hnf_columns(graph)


def test_restrict_gaussian_axis():
    axis = doubled([[1, 0]], 2)
    assert polarization_type(restrict(theta_g(2, GAUSSIAN), axis)) == (1,)


def test_restrict_eisenstein_diagonal():
    diag = doubled([[1, 1]], 2)
    sub = restrict(xi_g(2, EISENSTEIN), diag)
    assert polarization_type(sub) == (6,)


def test_restrict_seeded_positivity_and_splitting():
    rng = random.Random(31)
    for _ in range(25):
        g = 3
        b = random_pd_block(g, rng)
        p = PolarizedTorus(Torus(RATIONAL, g), split_form(b))
        k = rng.randint(1, g - 1)
        cols = [[rng.randint(-2, 2) for _ in range(g)] for _ in range(k)]
        base = IntMatrix.from_columns(cols, rows=g)
        from ppavlab.exact_linalg import rank_over_field
        if rank_over_field(base) < k:
            continue
        sat = saturate(base)
        s = doubled([list(sat.column(j)) for j in range(sat.cols)], g)
        r1 = restrict_with_basis(p, s)
        c = complement(p, s)
        r2 = restrict_with_basis(p, c)
        u = hstack(r1.embedding, r2.embedding)
        assert (u.det() ** 2) * p.form.det() == (
            r1.polarized.form.det() * r2.polarized.form.det())


# -- sublattice scan ------------------------------------------------------------


def test_scan_rejects_large_budget():
    with pytest.raises(BudgetExceeded):
        scan_subtorus_types(5, 1)
    with pytest.raises(BudgetExceeded):
        scan_subtorus_types(2, 6)


def test_scan_height_one_contains_diagonal():
    results = scan_subtorus_types(2, 1)
    found = {r.basis.entries: r.type for r in results}
    diag = IntMatrix.from_columns([[1, 1]], rows=2)
    assert found[diag.entries] == (6,)
    # every rank-1 type is the value of the block form on the basis vector
    b = xi_g(2).form.block(0, 2, 2, 4)
    for r in results:
        v = IntMatrix.from_columns([list(r.basis.column(0))], rows=2)
        assert r.type == ((v.transpose() * b * v)[0, 0],)


def test_scan_none_principal_at_height_three():
    for r in scan_subtorus_types(2, 3):
        assert any(d > 1 for d in r.type)
