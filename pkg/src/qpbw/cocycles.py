"""The 2-cocycles zeta_i, the reduced bar complex in degrees <= 3, and the
comparison maps F_1, F_2 from K into the bar resolution of Gr A.

Bar chains of degree m live in A (x) Abar^(x)m and are stored as maps from
(m+1)-tuples of monomials to scalars; slots 1..m never hold the constant
monomial.  A k-valued m-cochain f is evaluated through the A-linear extension
f(b0 (x) b1 ... bm) = eps(b0) f(b1, ..., bm).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from . import faults
from .cohomology import functional, xi
from .presentations import (
    AlgebraElement,
    AlgebraMode,
    Monomial,
    Presentation,
    associated_graded,
    check_braided_central,
    format_monomial,
    monomials,
    multiply,
    multiply_monomials,
)
from .qscalar import ONE, ZERO, LaurentScalar
from .report import Report
from .resolution import (
    Generator,
    ResolutionElement,
    differential,
    format_generator,
    generators_in_degree,
)

B, S, A = AlgebraMode.B, AlgebraMode.S, AlgebraMode.A


class NotReduced(ValueError):
    pass


class NotAugmented(ValueError):
    pass


class DegreeTooHigh(ValueError):
    pass


class UnsupportedDegree(ValueError):
    pass


class NotBraidedCentral(RuntimeError):
    """A cocycle operation was asked to run without its standing hypothesis."""


def default_bound(pres: Presentation) -> int:
    return max(2 * max(pres.N, default=0), 6)


def _power(i: int, e: int, n: int) -> Monomial:
    return tuple(e if k == i else 0 for k in range(1, n + 1))


def target_monomial(i: int, pres: Presentation) -> Monomial:
    """x_i^N_i, shifted by the zeta-low / zeta-high faults."""
    e = pres.N[i - 1]
    if faults.active("zeta-low"):
        e -= 1
    if faults.active("zeta-high"):
        e += 1
    return _power(i, e, pres.n)


def _check_index(i: int, pres: Presentation) -> None:
    if not 1 <= i <= pres.t:
        raise ValueError(f"zeta_{i} needs 1 <= i <= t = {pres.t}")


# -- section and cochains --------------------------------------------------------


def section_lift(m: Monomial, pres: Presentation) -> Monomial:
    m = tuple(m)
    if pres.truncated(m):
        raise NotReduced(f"{format_monomial(m)} is not an A-basis monomial")
    return m


def _require_augmented(f: AlgebraElement) -> None:
    if any(not any(m) for m in f.terms):
        raise NotAugmented(f"{f} has a constant term")


def zeta_tilde(i: int, r: AlgebraElement, s: AlgebraElement, pres: Presentation) -> LaurentScalar:
    """Coefficient of x_i^N_i in the B-product rs."""
    _check_index(i, pres)
    _require_augmented(r)
    _require_augmented(s)
    return multiply(r, s, pres, B).coefficient(target_monomial(i, pres))


def _zeta_mono(i: int, r: Monomial, s: Monomial, pres: Presentation) -> LaurentScalar:
    return multiply_monomials(r, s, pres, B).coefficient(target_monomial(i, pres))


def zeta(i: int, r: Monomial, s: Monomial, pres: Presentation) -> LaurentScalar:
    """zeta_i on A-basis monomials: lift through the section, multiply in B."""
    _check_index(i, pres)
    r, s = section_lift(r, pres), section_lift(s, pres)
    if not any(r) or not any(s):
        raise NotAugmented("zeta is defined on the augmentation ideal")
    return _zeta_mono(i, r, s, pres)


def h_cochain(i: int, r: AlgebraElement, pres: Presentation) -> LaurentScalar:
    """Coefficient of x_i^N_i in r."""
    _check_index(i, pres)
    _require_augmented(r)
    return r.coefficient(target_monomial(i, pres))


# -- reduced bar complex ---------------------------------------------------------


@dataclass(frozen=True)
class BarTensor:
    """A bar chain of fixed degree: {(b0, b1, ..., bm): coefficient}."""

    degree: int
    terms: tuple = ()

    @classmethod
    def from_dict(cls, degree: int, d: dict) -> BarTensor:
        items = tuple(sorted((k, v) for k, v in d.items() if v))
        return cls(degree, items)

    @classmethod
    def pure(cls, *slots: Monomial, coeff=ONE, n: int | None = None) -> BarTensor:
        """b0 (x) b1 (x) ... ; pass b0 = None for the identity."""
        slots = list(slots)
        if slots[0] is None:
            slots[0] = (0,) * (n if n is not None else len(slots[1]))
        for m in slots[1:]:
            if not any(m):
                raise NotAugmented("interior bar slots must be augmented")
        return cls.from_dict(len(slots) - 1, {tuple(map(tuple, slots)): LaurentScalar.coerce(coeff)})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: BarTensor) -> BarTensor:
        if self.degree != other.degree:
            raise ValueError("bar degrees differ")
        out = self.as_dict()
        for k, v in other.terms:
            out[k] = out.get(k, ZERO) + v
        return BarTensor.from_dict(self.degree, out)

    def __neg__(self) -> BarTensor:
        return BarTensor(self.degree, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other: BarTensor) -> BarTensor:
        return self + (-other)

    def scale(self, c) -> BarTensor:
        c = LaurentScalar.coerce(c)
        return BarTensor.from_dict(self.degree, {k: v * c for k, v in self.terms})

    def left_multiply(self, m: Monomial, pres: Presentation, mode: AlgebraMode) -> BarTensor:
        out: dict = {}
        for key, c in self.terms:
            for m2, k in multiply_monomials(m, key[0], pres, mode).terms.items():
                nk = (m2,) + key[1:]
                out[nk] = out.get(nk, ZERO) + c * k
        return BarTensor.from_dict(self.degree, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.terms:
            body = " (x) ".join(format_monomial(m) for m in key)
            parts.append(body if c == 1 else f"({c})*{body}")
        return " + ".join(parts)


def bar_differential(b: BarTensor, pres: Presentation, mode: AlgebraMode) -> BarTensor:
    """sum_j (-1)^j b0 (x) ... (x) b_j b_{j+1} (x) ... (x) b_m.

    Products landing in an interior slot are projected to Abar (the constant
    monomial is dropped); the trailing eps(b_m) term vanishes on Abar.
    """
    m = b.degree
    if m > 3:
        raise DegreeTooHigh(f"bar degree {m} > 3 is not materialized")
    if m == 0:
        return BarTensor(0)
    out: dict = {}
    for key, c in b.terms:
        for j in range(m):
            sgn = c if j % 2 == 0 else -c
            for prod, k in multiply_monomials(key[j], key[j + 1], pres, mode).terms.items():
                if j > 0 and not any(prod):
                    continue
                nk = key[:j] + (prod,) + key[j + 2 :]
                out[nk] = out.get(nk, ZERO) + sgn * k
    return BarTensor.from_dict(m - 1, out)


def evaluate_cochain(f: Callable[..., LaurentScalar], b: BarTensor) -> LaurentScalar:
    """A-linear extension of a k-valued cochain on interior slots."""
    total = ZERO
    for key, c in b.terms:
        if any(key[0]):
            continue
        total = total + c * f(*key[1:])
    return total


# -- comparison maps K -> bar(Gr A) ----------------------------------------------


def F_map(a: Generator, pres: Presentation) -> BarTensor:
    """F_1 on degree-1 generators and F_2 on degree-2 generators (mode S)."""
    a = tuple(a)
    n = pres.n
    deg = sum(a)
    one = (0,) * n
    if deg == 1:
        i = a.index(1) + 1
        return BarTensor.pure(one, _power(i, 1, n))
    if deg == 2:
        if 2 in a:
            i = a.index(2) + 1
            N = pres.N[i - 1]
            x = _power(i, 1, n)
            return BarTensor.from_dict(
                2, {(_power(i, k, n), x, _power(i, N - k - 1, n)): ONE for k in range(N - 1)}
            )
        i, j = [k + 1 for k, v in enumerate(a) if v]
        xi_, xj = _power(i, 1, n), _power(j, 1, n)
        return BarTensor.from_dict(2, {(one, xj, xi_): ONE, (one, xi_, xj): -pres.qs(j, i)})
    raise UnsupportedDegree(f"F is materialized in degrees 1 and 2, not {deg}")


def _F_extend(e, pres: Presentation) -> BarTensor:
    """A-linear extension of F to a resolution element."""
    deg = e.degree
    out = BarTensor(deg)
    for (j, a), c in e.terms.items():
        out = out + F_map(a, pres).left_multiply(j, pres, S).scale(c)
    return out


def verify_F_squares(pres: Presentation) -> Report:
    """d_1 = del_1 F_1 on K_1 and F_1 d_2 = del_2 F_2 on K_2."""
    pres = associated_graded(pres)
    rep = Report("comparison squares")
    for a in generators_in_degree(1, pres):
        lhs = bar_differential(F_map(a, pres), pres, S)
        d = differential_as_bar0(a, pres)
        res = lhs - d
        rep.add(f"del1 F1 = d on {format_generator(a)}", not res, res)
    for a in generators_in_degree(2, pres):
        lhs = bar_differential(F_map(a, pres), pres, S)
        rhs = _F_extend(differential(ResolutionElement.generator(a), pres), pres)
        res = lhs - rhs
        rep.add(f"del2 F2 = F1 d on {format_generator(a)}", not res, res)
    return rep


def differential_as_bar0(a: Generator, pres: Presentation) -> BarTensor:
    """d(Phi(a)) for |a| = 1, read in bar degree 0 (K_0 = S = A (x) Abar^0)."""
    e = differential(ResolutionElement.generator(a), pres)
    return BarTensor.from_dict(0, {(j,): c for (j, _), c in e.terms.items()})


def verify_identifications(pres: Presentation) -> Report:
    """F_2^* zeta_i is the dual of Phi(2e_i) (the class xi_i); F_1^* eta_j is the
    dual of Phi(e_j)."""
    gr = associated_graded(pres)
    rep = Report("pullback identifications")
    for i in range(1, gr.t + 1):
        xi_dual = functional(xi(i), 2, gr)
        for a in generators_in_degree(2, gr):
            val = evaluate_cochain(lambda r, s: _zeta_mono(i, r, s, gr), F_map(a, gr))
            expect = ONE if a == _power(i, 2, gr.n) else ZERO
            rep.add(f"F2*(zeta{i})({format_generator(a)}) = {expect}", val == expect, val)
            rep.add(
                f"F2*(zeta{i})({format_generator(a)}) = xi{i} dual",
                val == xi_dual.get(a, ZERO),
                f"{val} vs {xi_dual.get(a, ZERO)}",
            )
    for j in range(1, gr.n + 1):
        xj = _power(j, 1, gr.n)
        for a in generators_in_degree(1, gr):
            val = evaluate_cochain(lambda r, xj=xj: ONE if r == xj else ZERO, F_map(a, gr))
            expect = ONE if a == xj else ZERO
            rep.add(f"F1*(eta{j})({format_generator(a)}) = {expect}", val == expect, val)
    return rep


def filtration_degree(i: int, pres: Presentation) -> tuple[int, tuple[int, int]]:
    """(p_i, (p_i, 2 - p_i)) with p_i = N_i omega_i."""
    _check_index(i, pres)
    p = pres.N[i - 1] * pres.omega[i - 1]
    return p, (p, 2 - p)


# -- sweeps ----------------------------------------------------------------------


def monomial_tuples(pres: Presentation, bound: int, k: int, *, reduced: bool) -> Iterator[tuple]:
    """k-tuples of positive monomials with total omega-degree <= bound."""
    pool = monomials(pres, bound, reduced=reduced, positive=True)

    def rec(prefix, budget):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for m in pool:
            w = pres.weight(m)
            if w > budget:
                break
            yield from rec(prefix + [m], budget - w)

    yield from rec([], bound)


_central_cache: dict = {}


def require_braided_central(pres: Presentation, bound: int) -> None:
    key = (pres, bound)
    if key not in _central_cache:
        bad = None
        for j in range(1, pres.t + 1):
            rep = check_braided_central(j, pres, bound)
            if not rep.ok:
                bad = rep.first_failure.line()
                break
        _central_cache[key] = bad
    if _central_cache[key]:
        raise NotBraidedCentral(_central_cache[key])


def _lin_zeta(i: int, f: AlgebraElement, g: AlgebraElement, pres: Presentation) -> LaurentScalar:
    # bilinear zeta on A-elements, constant parts dropped
    total = ZERO
    for r, cr in f.terms.items():
        if not any(r):
            continue
        for s, cs in g.terms.items():
            if any(s):
                total = total + cr * cs * _zeta_mono(i, r, s, pres)
    return total


def verify_zeta_properties(i: int, pres: Presentation, bound: int | None = None) -> Report:
    """On B: zeta~(r r1 (x) s) = zeta~(r (x) r1 s), and zeta~ kills Ker(pi) in either slot."""
    _check_index(i, pres)
    bound = default_bound(pres) if bound is None else bound
    require_braided_central(pres, bound)
    rep = Report(f"zeta~{i} on B (omega-degree <= {bound})")
    for r, r1, s in monomial_tuples(pres, bound, 3, reduced=False):
        left = _lin_zeta(i, multiply_monomials(r, r1, pres, B), AlgebraElement.monomial(s), pres)
        right = _lin_zeta(i, AlgebraElement.monomial(r), multiply_monomials(r1, s, pres, B), pres)
        tag = f"{format_monomial(r)}|{format_monomial(r1)}|{format_monomial(s)}"
        rep.add(f"assoc {tag}", left == right, f"{left} vs {right}")
    n = pres.n
    for j in range(1, pres.t + 1):
        xN = _power(j, pres.N[j - 1], n)
        budget = bound - pres.weight(xN)
        rest = [(0,) * n] + monomials(pres, budget, positive=True)
        for b in rest:
            kb = multiply_monomials(xN, b, pres, B)
            for c in monomials(pres, budget - pres.weight(b), positive=True):
                xc = AlgebraElement.monomial(c)
                v1 = _lin_zeta(i, kb, xc, pres)
                v2 = _lin_zeta(i, xc, kb, pres)
                tag = f"x{j}^{pres.N[j - 1]}" + (f"*{format_monomial(b)}" if any(b) else "")
                rep.add(f"kills {tag} (x) {format_monomial(c)}", not v1, v1)
                rep.add(f"kills {format_monomial(c)} (x) {tag}", not v2, v2)
    return rep


def verify_cocycle_on_A(i: int, pres: Presentation, bound: int | None = None) -> Report:
    """zeta_i(rs (x) u) = zeta_i(r (x) su) on A-basis triples, and delta* zeta_i = 0
    on the bar 3-chains 1 (x) r (x) s (x) u."""
    _check_index(i, pres)
    bound = default_bound(pres) if bound is None else bound
    require_braided_central(pres, bound)
    rep = Report(f"zeta{i} cocycle on A (omega-degree <= {bound})")
    one = (0,) * pres.n
    z = lambda r, s: _zeta_mono(i, r, s, pres)  # noqa: E731
    for r, s, u in monomial_tuples(pres, bound, 3, reduced=True):
        rs = multiply_monomials(r, s, pres, A)
        su = multiply_monomials(s, u, pres, A)
        left = _lin_zeta(i, rs, AlgebraElement.monomial(u), pres)
        right = _lin_zeta(i, AlgebraElement.monomial(r), su, pres)
        cob = evaluate_cochain(z, bar_differential(BarTensor.pure(one, r, s, u), pres, A))
        tag = f"{format_monomial(r)}|{format_monomial(s)}|{format_monomial(u)}"
        rep.add(f"assoc {tag}", left == right, f"{left} vs {right}")
        rep.add(f"delta*zeta on 1|{tag}", not cob, cob)
    return rep


def verify_coboundary_on_B(i: int, pres: Presentation, bound: int | None = None) -> Report:
    """zeta~_i(r (x) s) = -(delta* h_i)(1 (x) r (x) s), through the bar differential."""
    _check_index(i, pres)
    bound = default_bound(pres) if bound is None else bound
    rep = Report(f"zeta~{i} = -delta*h{i} on B (omega-degree <= {bound})")
    one = (0,) * pres.n
    h = _h_for(i, pres)
    for r, s in monomial_tuples(pres, bound, 2, reduced=False):
        lhs = _zeta_mono(i, r, s, pres)
        dh = evaluate_cochain(h, bar_differential(BarTensor.pure(one, r, s), pres, B))
        rep.add(f"{format_monomial(r)} (x) {format_monomial(s)}", lhs == -dh, f"{lhs} vs {-dh}")
    return rep


def _h_for(i: int, pres: Presentation):
    # h_i is the honest x_i^N_i coefficient; faults only touch zeta
    target = _power(i, pres.N[i - 1], pres.n)
    return lambda r: ONE if r == target else ZERO


def verify_basis_of_A(pres: Presentation, bound: int) -> Report:
    """Products of A-basis monomials stay on the A-basis."""
    rep = Report(f"A-basis closure (omega-degree <= {bound})")
    for r, s in monomial_tuples(pres, bound, 2, reduced=True):
        prod = multiply_monomials(r, s, pres, A)
        bad = [m for m in prod.terms if pres.truncated(m)]
        rep.add(f"{format_monomial(r)} * {format_monomial(s)}", not bad, bad)
    return rep


def verify_bar_squares(pres: Presentation, bound: int, mode: AlgebraMode = S) -> Report:
    """del del = 0 on bar 3-chains 1 (x) r (x) s (x) u."""
    rep = Report(f"bar del^2 = 0 (omega-degree <= {bound})")
    one = (0,) * pres.n
    for r, s, u in monomial_tuples(pres, bound, 3, reduced=mode is not B):
        b = BarTensor.pure(one, r, s, u)
        res = bar_differential(bar_differential(b, pres, mode), pres, mode)
        rep.add(f"1|{format_monomial(r)}|{format_monomial(s)}|{format_monomial(u)}", not res, res)
    return rep


def cocycle_table(i: int, pres: Presentation, bound: int | None = None) -> list[tuple[Monomial, Monomial, LaurentScalar]]:
    """Nonzero values zeta_i(x^a, x^b) on A-basis pairs with total degree <= bound."""
    _check_index(i, pres)
    bound = default_bound(pres) if bound is None else bound
    require_braided_central(pres, bound)
    rows = []
    for r, s in monomial_tuples(pres, bound, 2, reduced=True):
        v = _zeta_mono(i, r, s, pres)
        if v:
            rows.append((r, s, v))
    return rows
