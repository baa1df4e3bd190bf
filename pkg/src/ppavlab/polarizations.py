"""Polarizations on tori as integral alternating forms.

A polarization is carried by the lattice form alone: antisymmetric,
nondegenerate, compatible with the (formal) complex structure, and with
positive associated symmetric matrix.  The kernel group of the form, its
Q/Z-valued pairing, restriction to stable sublattices, and a bounded scan
over such sublattices all run in exact arithmetic.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .exact_linalg import (
    IntMatrix,
    NotAlternating,
    RankDeficient,
    hnf_columns,
    hstack,
    is_positive_definite,
    kernel_basis,
    pfaffian,
    saturate,
    snf,
)
from .tori import (
    OrderElem,
    OrderMismatch,
    QuadOrder,
    RATIONAL,
    Torus,
    W,
    omul,
    onorm,
    oconj,
    order_by_kind,
    osub,
)


class Degenerate(ValueError):
    """The form has determinant zero."""


class NotPositive(ValueError):
    """The symmetric matrix attached to the form is not positive definite."""


class IncompatibleForm(ValueError):
    """The form does not descend from a Hermitian form on this torus."""


class NotMember(ValueError):
    """Vector is not in the kernel group of the form."""


class NotStable(ValueError):
    """Sublattice is not stable under the complex structure."""


class NotSaturated(ValueError):
    """Sublattice basis spans a non-saturated lattice."""


class BudgetExceeded(RuntimeError):
    """Enumeration request is outside the supported budget."""


class PrincipalRestrictionFound(AssertionError):
    """A scanned sublattice restriction came out principal."""


def qmodz(x: Fraction | int) -> Fraction:
    """Canonical representative of a rational number mod 1, in [0, 1)."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class PolarizedTorus:
    """Torus with a positive compatible alternating form on its lattice."""

    torus: Torus
    form: IntMatrix

    def __post_init__(self):
        n = self.torus.lattice_rank
        if self.form.rows != n or self.form.cols != n:
            raise IncompatibleForm(f"form must be {n}x{n}")
        if not self.form.is_antisymmetric():
            raise NotAlternating("polarization form must be antisymmetric")
        if not self.torus.compatible_form(self.form):
            raise IncompatibleForm("form is not compatible with the complex structure")
        if self.form.det() == 0:
            raise Degenerate("polarization form must be nondegenerate")
        if not is_positive_definite(self.associated_symmetric()):
            raise NotPositive("associated symmetric matrix must be positive definite")

    @property
    def g(self) -> int:
        return self.torus.g

    def associated_symmetric(self) -> IntMatrix:
        # 2*M*J - u*M: twice the symmetric matrix of the Hermitian form,
        # doubled to stay integral for half-integer traces
        j = self.torus.complex_structure()
        u = self.torus.order.u if self.torus.order.is_cm else 0
        return self.form * j * 2 - self.form.scaled(u)


def _split_form(b: IntMatrix) -> IntMatrix:
    z = IntMatrix.zeros(b.rows, b.cols)
    return IntMatrix.from_blocks([[z, b], [-b, z]])


def theta_g(g: int, order: QuadOrder = RATIONAL) -> PolarizedTorus:
    """Product of g principally polarized elliptic factors."""
    if g < 1:
        raise ValueError("g must be >= 1")
    return PolarizedTorus(Torus(order, g), _split_form(IntMatrix.identity(g)))


def xi_g(g: int, order: QuadOrder = RATIONAL) -> PolarizedTorus:
    """The sum-of-axes-plus-antidiagonal polarization, block I + all-ones."""
    if g < 1:
        raise ValueError("g must be >= 1")
    ones = IntMatrix.from_rows([[1] * g for _ in range(g)], cols=g)
    return PolarizedTorus(Torus(order, g), _split_form(IntMatrix.identity(g) + ones))


def polarization_type(p: PolarizedTorus) -> tuple[int, ...]:
    """Elementary divisors (d_1 | ... | d_g) of the form, halved pairing."""
    diag = [snf(p.form).d[i, i] for i in range(p.form.rows)]
    if 0 in diag:
        raise Degenerate("degenerate form has no type")
    # alternating forms have doubled divisors (d_1, d_1, d_2, d_2, ...)
    for k in range(0, len(diag), 2):
        if diag[k] != diag[k + 1]:
            raise NotAlternating("divisors of an alternating form must pair up")
    return tuple(diag[0::2])


def is_principal(p: PolarizedTorus) -> bool:
    return all(d == 1 for d in polarization_type(p))


# -- kernel group ------------------------------------------------------------


def _form_vec(m: IntMatrix, x: Sequence[Fraction]) -> list[Fraction]:
    return [sum(Fraction(m[i, j]) * x[j] for j in range(m.cols)) for i in range(m.rows)]


def _is_kernel_member(m: IntMatrix, x: Sequence[Fraction]) -> bool:
    return all(v.denominator == 1 for v in _form_vec(m, x))


def as_vector(xs: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class FiniteSymplecticGroup:
    """Kernel of the form: rational vectors mod Z^{2g} with a Q/Z pairing."""

    ambient: PolarizedTorus
    generators: tuple[tuple[Fraction, ...], ...]
    orders: tuple[int, ...]

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def contains(self, x: Sequence) -> bool:
        return _is_kernel_member(self.ambient.form, as_vector(x))

    def elements(self) -> Iterator[tuple[Fraction, ...]]:
        """All group elements in a fixed order (coefficient tuples, little end last)."""
        n = self.ambient.form.rows
        for coeffs in itertools.product(*(range(o) for o in self.orders)):
            yield tuple(
                qmodz(sum((c * gen[i] for c, gen in zip(coeffs, self.generators)),
                          Fraction(0)))
                for i in range(n))

    def pairing(self, x: Sequence, y: Sequence) -> Fraction:
        return weil_pairing(self, x, y)

    def pairing_table(self) -> list[list[Fraction]]:
        gens = self.generators
        return [[self.pairing(a, b) for b in gens] for a in gens]


def kernel_group(p: PolarizedTorus) -> FiniteSymplecticGroup:
    """Generators and orders of (form^{-1} Z^{2g}) / Z^{2g}."""
    u, d, v = snf(p.form)
    if any(d[i, i] == 0 for i in range(d.rows)):
        raise Degenerate("degenerate form has infinite kernel")
    gens, orders = [], []
    for i in range(d.rows):
        di = d[i, i]
        if di > 1:
            # column i of V over d_i: a kernel element of exact order d_i
            gens.append(tuple(qmodz(Fraction(v[r, i], di)) for r in range(v.rows)))
            orders.append(di)
    return FiniteSymplecticGroup(p, tuple(gens), tuple(orders))


def weil_pairing(k: FiniteSymplecticGroup, x: Sequence, y: Sequence) -> Fraction:
    """Q/Z-valued pairing x^t·form·y of two kernel members."""
    m = k.ambient.form
    xv, yv = as_vector(x), as_vector(y)
    for v in (xv, yv):
        if len(v) != m.rows:
            raise NotMember("vector length must match the lattice rank")
        if not _is_kernel_member(m, v):
            raise NotMember("vector is not in the kernel of the form")
    return qmodz(sum(xv[i] * f for i, f in enumerate(_form_vec(m, yv))))


# -- products and rescalings -------------------------------------------------


def scale(p: PolarizedTorus, m: int) -> PolarizedTorus:
    if m < 1:
        raise ValueError("scale factor must be >= 1")
    return PolarizedTorus(p.torus, p.form.scaled(m))


def box_product(p: PolarizedTorus, q: PolarizedTorus) -> PolarizedTorus:
    """External product: direct sum of forms on the product torus.

    The product lattice basis interleaves so that all plain coordinates come
    before all w-multiples, keeping the block convention.
    """
    if p.torus.order != q.torus.order:
        raise OrderMismatch("factors must share the order kind")
    g1, g2 = p.g, q.g
    g = g1 + g2
    # target index -> (form, source index) in the naive direct sum
    lookup = ([("p", j) for j in range(g1)] + [("q", j) for j in range(g2)]
              + [("p", g1 + j) for j in range(g1)] + [("q", g2 + j) for j in range(g2)])
    forms = {"p": p.form, "q": q.form}
    rows = []
    for tag_i, si in lookup:
        rows.append([forms[tag_i][si, sj] if tag_i == tag_j else 0
                     for tag_j, sj in lookup])
    return PolarizedTorus(Torus(p.torus.order, g), IntMatrix.from_rows(rows, cols=2 * g))


def self_intersection(p: PolarizedTorus) -> int:
    """Top self-intersection number of the polarization: g! * |Pf(form)|."""
    return math.factorial(p.g) * abs(pfaffian(p.form))


# -- restriction to stable sublattices ---------------------------------------


def _odivmod(o: QuadOrder, a: OrderElem, b: OrderElem) -> tuple[OrderElem, OrderElem]:
    # nearest-coordinate division; remainder norm < divisor norm for these orders
    n = onorm(o, b)
    num = omul(o, a, oconj(o, b))
    q = OrderElem((2 * num.a + n) // (2 * n), (2 * num.b + n) // (2 * n))
    return q, osub(a, omul(o, q, b))


def _o_column_echelon(o: QuadOrder, cols: list[list[OrderElem]]) -> list[list[OrderElem]]:
    """Echelon basis of the module generated by the columns, by Euclidean gcd."""
    work = [list(c) for c in cols if any(x != (0, 0) for x in c)]
    g = len(cols[0]) if cols else 0
    basis: list[list[OrderElem]] = []
    start = 0
    for row in range(g):
        while True:
            live = [i for i in range(start, len(work)) if work[i][row] != (0, 0)]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda i: (onorm(o, work[i][row]), i))
            for i in live:
                if i != piv:
                    q, _ = _odivmod(o, work[i][row], work[piv][row])
                    work[i] = [osub(x, omul(o, q, y)) for x, y in zip(work[i], work[piv])]
            work = [c for c in work if any(x != (0, 0) for x in c)]
        live = [i for i in range(start, len(work)) if work[i][row] != (0, 0)]
        if live:
            work[start], work[live[0]] = work[live[0]], work[start]
            basis.append(work[start])
            start += 1
    return basis


def _o_vector_to_columns(o: QuadOrder, vec: list[OrderElem]) -> tuple[list[int], list[int]]:
    g = len(vec)
    plain = [vec[j].a for j in range(g)] + [vec[j].b for j in range(g)]
    wvec = [omul(o, W, x) for x in vec]
    wcol = [wvec[j].a for j in range(g)] + [wvec[j].b for j in range(g)]
    return plain, wcol


def _aligned_basis(torus: Torus, s: IntMatrix) -> IntMatrix:
    """Basis of span(s) shaped (f_1..f_h, w f_1..w f_h); NotStable if impossible."""
    g, k = torus.g, s.cols
    if torus.order.is_cm:
        cols = [[OrderElem(s[j, c], s[g + j, c]) for j in range(g)] for c in range(k)]
        obasis = _o_column_echelon(torus.order, cols)
        plain, wmul = [], []
        for vec in obasis:
            a, b = _o_vector_to_columns(torus.order, vec)
            plain.append(a)
            wmul.append(b)
        aligned = IntMatrix.from_columns(plain + wmul, rows=2 * g)
    else:
        top = s.block(0, g, 0, k)
        bot = s.block(g, 2 * g, 0, k)
        l1 = hnf_columns(top * kernel_basis(bot))
        l2 = hnf_columns(bot * kernel_basis(top))
        if l1 != l2:
            raise NotStable("sublattice does not split as a double copy")
        z = IntMatrix.zeros(g, l1.cols)
        aligned = IntMatrix.from_blocks([[l1, z], [z, l1]])
    if hnf_columns(aligned) != hnf_columns(s):
        raise NotStable("sublattice is not stable under the complex structure")
    return aligned


def _check_saturated(s: IntMatrix) -> IntMatrix:
    canon = hnf_columns(s)
    try:
        sat = saturate(canon)
    except RankDeficient:
        raise NotSaturated("sublattice basis must have full column rank")
    if sat != canon:
        raise NotSaturated("sublattice is not saturated in the ambient lattice")
    return canon


class Restriction(NamedTuple):
    polarized: PolarizedTorus
    embedding: IntMatrix  # aligned basis columns inside the ambient lattice


def restrict_with_basis(p: PolarizedTorus, s: IntMatrix) -> Restriction:
    if s.rows != p.torus.lattice_rank:
        raise IncompatibleForm("sublattice rows must match the lattice rank")
    canon = _check_saturated(s)
    b = _aligned_basis(p.torus, canon)
    sub = PolarizedTorus(Torus(p.torus.order, b.cols // 2),
                         b.transpose() * p.form * b)
    return Restriction(sub, b)


def restrict(p: PolarizedTorus, s: IntMatrix) -> PolarizedTorus:
    """Polarization restricted to a saturated stable sublattice."""
    return restrict_with_basis(p, s).polarized


def complement(p: PolarizedTorus, s: IntMatrix) -> IntMatrix:
    """Saturated stable basis of everything form-orthogonal to span(s)."""
    if s.rows != p.torus.lattice_rank:
        raise IncompatibleForm("sublattice rows must match the lattice rank")
    c = kernel_basis(s.transpose() * p.form)
    j = p.torus.complex_structure()
    if hnf_columns(hstack(c, j * c)) != c:
        raise NotStable("complement is stable only for stable input")
    return c


# -- sublattice scan ---------------------------------------------------------


class SubtorusRestriction(NamedTuple):
    basis: IntMatrix  # saturated sublattice of Z^n, in the plain coordinates
    type: tuple[int, ...]


def _primitive_vectors(n: int, height: int) -> list[tuple[int, ...]]:
    out = []
    for v in itertools.product(range(-height, height + 1), repeat=n):
        if all(x == 0 for x in v):
            continue
        first = next(x for x in v if x != 0)
        if first < 0:
            continue
        if math.gcd(*v) != 1:
            continue
        out.append(v)
    return out


def scan_subtorus_types(n: int, height: int) -> tuple[SubtorusRestriction, ...]:
    """Restrict xi_g(n) to every proper stable sublattice of bounded height.

    Sublattices are the saturations of spans of primitive vectors with
    entries in [-height, height], tensored with the order.  Raises if any
    restricted type is all ones.
    """
    if n > 4 or height > 5:
        raise BudgetExceeded("supported budget is n <= 4, height <= 5")
    if n < 2:
        return ()
    ambient = xi_g(n)
    prims = _primitive_vectors(n, height)
    seen: dict[tuple, IntMatrix] = {}
    for k in range(1, n):
        for combo in itertools.combinations(prims, k):
            m = IntMatrix.from_columns([list(v) for v in combo], rows=n)
            try:
                sat = saturate(m)
            except RankDeficient:
                continue  # same span arises from a smaller subset
            seen.setdefault(sat.entries, sat)
    results = []
    for sat in seen.values():
        z = IntMatrix.zeros(n, sat.cols)
        doubled = IntMatrix.from_blocks([[sat, z], [z, sat]])
        t = polarization_type(restrict(ambient, doubled))
        results.append(SubtorusRestriction(sat, t))
    results.sort(key=lambda r: (r.basis.cols, r.basis.entries))
    for r in results:
        if all(d == 1 for d in r.type):
            raise PrincipalRestrictionFound(
                f"sublattice {r.basis.entries} restricts to a principal type")
    return tuple(results)


# -- serialization -----------------------------------------------------------


def polarization_to_json(p: PolarizedTorus) -> str:
    return json.dumps({
        "order": p.torus.order.kind,
        "g": p.torus.g,
        "form": [list(row) for row in p.form.entries],
    })


def polarization_from_json(text: str) -> PolarizedTorus:
    data = json.loads(text)
    form = IntMatrix.from_rows([[int(x) for x in row] for row in data["form"]],
                               cols=2 * int(data["g"]))
    return PolarizedTorus(Torus(order_by_kind(data["order"]), int(data["g"])), form)
