"""H*(S, k) realized through chain maps on the resolution K.

Since the induced differential on Hom_S(K, k) vanishes, a cochain on K_m is
already a class, and the class of a chain map f: K -> K[-m] is eps o f on K_m.
Products are compositions of chain maps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from . import faults
from .presentations import Presentation
from .qscalar import ONE, ZERO, LaurentScalar, sign
from .report import Report
from .resolution import (
    Generator,
    ResolutionElement,
    _acc,
    _mono_mul,
    _shift,
    augmentation,
    differential,
    format_generator,
    generators_in_degree,
    sigma,
    tau,
    S,
)


class IndexBeyondT(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


# -- the generating chain maps --------------------------------------------------


def xi_apply(i: int, a: Generator, pres: Presentation) -> ResolutionElement:
    """xi_i(Phi(a)) = prod_{l<i} q_il^(N_i tau_l(a_l)) Phi(a - 2e_i)."""
    if not 1 <= i <= pres.t:
        raise IndexBeyondT(f"xi_{i} needs i <= t = {pres.t}")
    target = _shift(a, i, -2)
    if target is None:
        return ResolutionElement()
    Ni = pres.N[i - 1] - (1 if faults.active("xi-exponent") else 0)
    c = ONE
    for l in range(1, i):
        c = c * pres.qs(i, l) ** (Ni * tau(l, a[l - 1], pres))
    return ResolutionElement.generator(target, c)


def eta_apply(i: int, a: Generator, pres: Presentation) -> ResolutionElement:
    """eta_i(Phi(a)) = prod_{l>i} q_li^((sigma_i(a_i)-1) tau_l(a_l))
    * prod_{l<i} (-1)^a_l q_il^tau_l(a_l) * x_i^(sigma_i(a_i)-1) Phi(a - e_i)."""
    if not 1 <= i <= pres.n:
        raise ValueError(f"eta_{i} needs 1 <= i <= {pres.n}")
    target = _shift(a, i, -1)
    if target is None:
        return ResolutionElement()
    s1 = sigma(i, a[i - 1], pres) - 1
    c = ONE
    for l in range(i + 1, pres.n + 1):
        c = c * pres.qs(l, i) ** (s1 * tau(l, a[l - 1], pres))
    for l in range(1, i):
        al = a[l - 1]
        c = c * pres.qs(i, l) ** tau(l, al, pres) * sign(al)
    mono = tuple(s1 if k == i else 0 for k in range(1, pres.n + 1))
    return ResolutionElement.generator(target, c, mono=mono)


@dataclass(frozen=True)
class ChainMap:
    """xi_i, eta_i, or a composition (applied right to left)."""

    kind: str
    index: int = 0
    parts: tuple = field(default=())

    @property
    def shift(self) -> int:
        if self.kind == "xi":
            return 2
        if self.kind == "eta":
            return 1
        return sum(p.shift for p in self.parts)

    def on_generator(self, a: Generator, pres: Presentation) -> ResolutionElement:
        if self.kind == "xi":
            return xi_apply(self.index, a, pres)
        if self.kind == "eta":
            return eta_apply(self.index, a, pres)
        e = ResolutionElement.generator(a)
        for p in reversed(self.parts):
            e = p.apply(e, pres)
        return e

    def apply(self, e: ResolutionElement, pres: Presentation) -> ResolutionElement:
        """S-linear extension: x^j Phi(a) -> x^j * f(Phi(a))."""
        if self.kind == "compose":
            for p in reversed(self.parts):
                e = p.apply(e, pres)
            return e
        out: dict = {}
        for (j, a), c in e.terms.items():
            for (m, b), k in self.on_generator(a, pres).terms.items():
                for m2, k2 in _mono_mul(j, m, pres, S).terms.items():
                    _acc(out, (m2, b), c * k * k2)
        return ResolutionElement._raw(out)

    def __str__(self) -> str:
        if self.kind in ("xi", "eta"):
            return f"{self.kind}{self.index}"
        return "*".join(map(str, self.parts)) if self.parts else "id"


def xi(i: int) -> ChainMap:
    return ChainMap("xi", i)


def eta(i: int) -> ChainMap:
    return ChainMap("eta", i)


def compose(maps, pres: Presentation | None = None) -> ChainMap:
    maps = tuple(maps)
    if not maps:
        raise ValueError("compose needs at least one map")
    flat = []
    for m in maps:
        flat.extend(m.parts if m.kind == "compose" else (m,))
    return ChainMap("compose", parts=tuple(flat))


def verify_chain_map(m: ChainMap, pres: Presentation, max_degree: int) -> Report:
    """d o m = m o d on generators of degree shift+1 .. max_degree."""
    rep = Report(f"chain map {m} (degrees {m.shift + 1}..{max_degree})")
    for deg in range(m.shift + 1, max_degree + 1):
        for a in generators_in_degree(deg, pres):
            g = ResolutionElement.generator(a)
            res = differential(m.apply(g, pres), pres) - m.apply(differential(g, pres), pres)
            rep.add(f"d{m} - {m}d on {format_generator(a)}", not res, res)
    return rep


# -- cohomology monomials -------------------------------------------------------


@dataclass(frozen=True)
class CohomologyMonomial:
    """coeff * xi_1^b_1 ... xi_t^b_t eta_1^c_1 ... eta_n^c_n."""

    b: tuple[int, ...]
    c: tuple[int, ...]
    coeff: LaurentScalar = ONE

    @property
    def degree(self) -> int:
        return 2 * sum(self.b) + sum(self.c)

    def chain_map(self) -> ChainMap:
        parts = []
        for i, bi in enumerate(self.b, 1):
            parts += [xi(i)] * bi
        for i, ci in enumerate(self.c, 1):
            parts += [eta(i)] * ci
        return ChainMap("compose", parts=tuple(parts))

    def dual_generator(self) -> Generator:
        t = len(self.b)
        return tuple(2 * self.b[k] + self.c[k] if k < t else self.c[k] for k in range(len(self.c)))

    def pattern(self) -> str:
        parts = [f"xi{i}" if e == 1 else f"xi{i}^{e}" for i, e in enumerate(self.b, 1) if e]
        parts += [f"eta{i}" for i, e in enumerate(self.c, 1) if e]
        return "*".join(parts) if parts else "1"

    def __str__(self) -> str:
        if self.coeff == 1:
            return self.pattern()
        c = str(self.coeff) if self.coeff.is_unit() else f"({self.coeff})"
        return f"{c}*{self.pattern()}"


def cohomology_basis(m: int, pres: Presentation) -> list[CohomologyMonomial]:
    """The monomials xi^b eta^c of degree m (b_i >= 0, c_i in {0, 1})."""
    n, t = pres.n, pres.t
    out = []
    for c in itertools.product((1, 0), repeat=n):
        rest = m - sum(c)
        if rest < 0 or rest % 2:
            continue
        half = rest // 2
        if t == 0:
            if half == 0:
                out.append(CohomologyMonomial((), c))
            continue
        for cut in itertools.combinations(range(half + t - 1), t - 1):
            # stars and bars: weak compositions of half into t parts
            bounds = (-1,) + cut + (half + t - 1,)
            b = tuple(bounds[k + 1] - bounds[k] - 1 for k in range(t))
            out.append(CohomologyMonomial(b, c))
    out.sort(key=lambda x: (x.b, x.c), reverse=True)
    return out


def dual_pairing(mono: CohomologyMonomial, a: Generator, pres: Presentation) -> LaurentScalar:
    """eps of the composite chain map applied to Phi(a)."""
    if mono.degree != sum(a):
        raise DegreeMismatch(f"{mono} has degree {mono.degree}, Phi{a} has degree {sum(a)}")
    val = augmentation(mono.chain_map().on_generator(tuple(a), pres))
    return mono.coeff * val


def functional(m: ChainMap, degree: int, pres: Presentation) -> dict[Generator, LaurentScalar]:
    """The cochain eps o m on the generators of K_degree (nonzero values only)."""
    out = {}
    for a in generators_in_degree(degree, pres):
        v = augmentation(m.on_generator(a, pres))
        if v:
            out[a] = v
    return out


def verify_dual_basis(pres: Presentation, max_degree: int) -> Report:
    rep = Report(f"dual basis (degrees 0..{max_degree})")
    for m in range(max_degree + 1):
        monos = cohomology_basis(m, pres)
        gens = generators_in_degree(m, pres)
        rep.add(f"H^{m}: #monomials = #generators", len(monos) == len(gens), f"{len(monos)} vs {len(gens)}")
        for mono in monos:
            partner = mono.dual_generator()
            for a in gens:
                v = dual_pairing(mono, a, pres)
                if a == partner:
                    rep.add(f"<{mono.pattern()}, {format_generator(a)}> unit", v.is_unit(), v)
                elif v:
                    rep.add(f"<{mono.pattern()}, {format_generator(a)}> = 0", False, v)
        rep.add(
            f"H^{m}: bijection a = 2b + c",
            sorted(mono.dual_generator() for mono in monos) == sorted(gens),
            "generator sets differ",
        )
    return rep


# -- relations ------------------------------------------------------------------


def relation_maps(pres: Presentation):
    """(label, lhs, scalar, rhs) for the three relation families, i != j for eta-eta."""
    n, t = pres.n, pres.t
    out = []
    for i in range(1, t + 1):
        for j in range(1, t + 1):
            if i != j:
                c = pres.qs(j, i) ** (pres.N[i - 1] * pres.N[j - 1])
                out.append((f"xi{i}xi{j} = q{j}{i}^(N{i}N{j}) xi{j}xi{i}", compose([xi(i), xi(j)]), c, compose([xi(j), xi(i)])))
    for i in range(1, n + 1):
        for j in range(1, t + 1):
            c = pres.qs(j, i) ** pres.N[j - 1]
            out.append((f"eta{i}xi{j} = q{j}{i}^N{j} xi{j}eta{i}", compose([eta(i), xi(j)]), c, compose([xi(j), eta(i)])))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                c = -pres.qs(j, i)
                out.append((f"eta{i}eta{j} = -q{j}{i} eta{j}eta{i}", compose([eta(i), eta(j)]), c, compose([eta(j), eta(i)])))
    return out


def verify_relations(pres: Presentation, max_degree: int) -> Report:
    """Each relation as an identity of chain maps on every generator up to
    max_degree; eta_i^2 (N_i != 2) must vanish in cohomology."""
    rep = Report(f"relations (generators of degree <= {max_degree})")
    for label, lhs, c, rhs in relation_maps(pres):
        for deg in range(lhs.shift, max_degree + 1):
            for a in generators_in_degree(deg, pres):
                res = lhs.on_generator(a, pres) - rhs.on_generator(a, pres).scale(c)
                rep.add(f"{label} on {format_generator(a)}", not res, res)
    for i in range(1, pres.n + 1):
        if i <= pres.t and pres.N[i - 1] == 2:
            continue
        f = functional(compose([eta(i), eta(i)]), 2, pres)
        rep.add(f"eta{i}^2 = 0 in H^2", not f, f)
    return rep


def square_scalar(i: int, pres: Presentation) -> LaurentScalar:
    """nu with [eta_i]^2 = nu [xi_i] (zero unless N_i = 2)."""
    if i > pres.t:
        return ZERO
    a = tuple(2 if k == i else 0 for k in range(1, pres.n + 1))
    sq = augmentation(compose([eta(i), eta(i)]).on_generator(a, pres))
    base = augmentation(xi_apply(i, a, pres))
    return sq / base if sq else ZERO


def verify_eta_square(pres: Presentation) -> Report:
    """[eta_i]^2 is a unit multiple of [xi_i] when N_i = 2 and zero otherwise."""
    rep = Report("eta-square law")
    for i in range(1, pres.n + 1):
        sq = functional(compose([eta(i), eta(i)]), 2, pres)
        if i <= pres.t and pres.N[i - 1] == 2:
            base = functional(xi(i), 2, pres)
            nu = square_scalar(i, pres)
            ok = nu.is_unit() and set(sq) == set(base) and all(sq[a] == nu * base[a] for a in base)
            rep.add(f"eta{i}^2 = unit * xi{i} (N{i} = 2)", ok, f"eta^2 -> {sq}, xi -> {base}")
        else:
            rep.add(f"eta{i}^2 = 0", not sq, sq)
    return rep


def _letters(mono: CohomologyMonomial) -> list[tuple[int, int]]:
    # (0, i) for xi_i, (1, i) for eta_i; canonical order is ascending
    out = []
    for i, bi in enumerate(mono.b, 1):
        out += [(0, i)] * bi
    for i, ci in enumerate(mono.c, 1):
        out += [(1, i)] * ci
    return out


def cohomology_product(
    m1: CohomologyMonomial, m2: CohomologyMonomial, pres: Presentation
) -> CohomologyMonomial | None:
    """Normal-ordered product m1 * m2, or None when it vanishes."""
    word = _letters(m1) + _letters(m2)
    coeff = m1.coeff * m2.coeff
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            (ku, u), (kv, v) = word[k], word[k + 1]
            if (ku, u) == (1, v) == (kv, v):
                # eta_v eta_v
                nu = square_scalar(v, pres)
                if not nu:
                    return None
                coeff = coeff * nu
                word[k : k + 2] = [(0, v)]
                changed = True
                break
            if (ku, u) <= (kv, v):
                continue
            if ku == 0 and kv == 0:
                coeff = coeff * pres.qs(v, u) ** (pres.N[u - 1] * pres.N[v - 1])
            elif ku == 1 and kv == 0:
                coeff = coeff * pres.qs(v, u) ** pres.N[v - 1]
            else:
                coeff = coeff * -pres.qs(v, u)
            word[k], word[k + 1] = word[k + 1], word[k]
            changed = True
            break
    b = [0] * pres.t
    c = [0] * pres.n
    for kind, i in word:
        if kind == 0:
            b[i - 1] += 1
        else:
            c[i - 1] += 1
    return CohomologyMonomial(tuple(b), tuple(c), coeff)


def verify_products(pres: Presentation, max_degree: int) -> Report:
    """Normal-ordered products agree with composed chain maps in cohomology."""
    rep = Report(f"cup products vs composition (total degree <= {max_degree})")
    basis = [m for d in range(1, max_degree) for m in cohomology_basis(d, pres)]
    for m1 in basis:
        for m2 in basis:
            deg = m1.degree + m2.degree
            if deg > max_degree:
                continue
            composite = functional(compose([m1.chain_map(), m2.chain_map()]), deg, pres)
            prod = cohomology_product(m1, m2, pres)
            expect = {}
            if prod is not None:
                expect = {k: v * prod.coeff for k, v in functional(prod.chain_map(), deg, pres).items()}
            rep.add(f"{m1.pattern()} * {m2.pattern()} = {prod if prod else 0}", composite == expect, composite)
    return rep


# -- Hilbert series -------------------------------------------------------------


def hilbert_coefficients(pres: Presentation, max_degree: int) -> list[int]:
    """dim H^m(S, k), m = 0..max_degree, by counting cohomology monomials."""
    return [len(cohomology_basis(m, pres)) for m in range(max_degree + 1)]


def series_coefficients(n: int, t: int, max_degree: int) -> list[int]:
    """Coefficients of (1 + z)^n / (1 - z^2)^t."""
    num = [comb(n, k) for k in range(n + 1)]
    den = [comb(k // 2 + t - 1, t - 1) if k % 2 == 0 else 0 for k in range(max_degree + 1)] if t else [1]
    out = [0] * (max_degree + 1)
    for i, x in enumerate(num):
        for j, y in enumerate(den):
            if i + j <= max_degree:
                out[i + j] += x * y
    return out


def verify_hilbert(pres: Presentation, max_degree: int) -> Report:
    rep = Report(f"Hilbert coefficients (degrees 0..{max_degree})")
    by_monomials = hilbert_coefficients(pres, max_degree)
    by_series = series_coefficients(pres.n, pres.t, max_degree)
    by_generators = [len(generators_in_degree(m, pres)) for m in range(max_degree + 1)]
    for m in range(max_degree + 1):
        vals = (by_monomials[m], by_series[m], by_generators[m])
        rep.add(f"dim H^{m} = {vals[0]}", len(set(vals)) == 1, f"monomials/series/generators = {vals}")
    return rep
