"""The twisted Koszul-type resolution K of k over the quantum symmetric
algebra S, with its contracting homotopy.

K_m is free over S on generators Phi(a), a in N^n with |a| = m and a_i <= 1
for i > t.  Elements are stored on the k-basis x^j Phi(a): a dict from
``(j, a)`` to a scalar.  The differential is S-linear; the homotopy is only
k-linear and is defined basis element by basis element.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from . import faults
from .presentations import AlgebraElement, AlgebraMode, Monomial, Presentation, _mono_mul, format_monomial
from .qscalar import ONE, ZERO, LaurentScalar, sign
from .report import Report

Generator = tuple[int, ...]
BasisKey = tuple[Monomial, Generator]

S = AlgebraMode.S


class MixedDegree(ValueError):
    pass


def _acc(out: dict, key, c: LaurentScalar) -> None:
    v = out.get(key, ZERO) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def format_generator(a: Generator) -> str:
    return "Phi(" + ",".join(map(str, a)) + ")"


class ResolutionElement:
    """A k-linear combination of basis elements x^j Phi(a) of K."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[BasisKey, LaurentScalar] = {}
        for (m, a), c in (terms or {}).items():
            _acc(clean, (tuple(m), tuple(a)), LaurentScalar.coerce(c))
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> ResolutionElement:
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def generator(cls, a: Iterable[int], coeff=ONE, mono: Iterable[int] | None = None) -> ResolutionElement:
        a = tuple(a)
        m = tuple(mono) if mono is not None else (0,) * len(a)
        coeff = LaurentScalar.coerce(coeff)
        return cls._raw({(m, a): coeff} if coeff else {})

    @classmethod
    def from_module(cls, coeffs: dict[Generator, AlgebraElement]) -> ResolutionElement:
        out: dict[BasisKey, LaurentScalar] = {}
        for a, f in coeffs.items():
            for m, c in f.terms.items():
                _acc(out, (m, tuple(a)), c)
        return cls._raw(out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[BasisKey, LaurentScalar]]:
        return iter(sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]), reverse=True))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResolutionElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: ResolutionElement) -> ResolutionElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return ResolutionElement._raw(out)

    def __neg__(self) -> ResolutionElement:
        return ResolutionElement._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: ResolutionElement) -> ResolutionElement:
        return self + (-other)

    def scale(self, c) -> ResolutionElement:
        c = LaurentScalar.coerce(c)
        if not c:
            return ResolutionElement()
        return ResolutionElement._raw({k: c * v for k, v in self.terms.items()})

    @property
    def degree(self) -> int | None:
        degs = {sum(a) for _, a in self.terms}
        if len(degs) > 1:
            raise MixedDegree(f"element spans homological degrees {sorted(degs)}")
        return degs.pop() if degs else None

    def coefficient(self, m: Iterable[int], a: Iterable[int]) -> LaurentScalar:
        return self.terms.get((tuple(m), tuple(a)), ZERO)

    def module_coefficients(self) -> dict[Generator, AlgebraElement]:
        out: dict[Generator, dict] = {}
        for (m, a), c in self.terms.items():
            out.setdefault(a, {})[m] = c
        return {a: AlgebraElement._raw(d) for a, d in out.items()}

    def left_multiply(self, m: Monomial, pres: Presentation) -> ResolutionElement:
        """x^m * self, computed in S."""
        out: dict[BasisKey, LaurentScalar] = {}
        for (j, a), c in self.terms.items():
            for j2, k in _mono_mul(m, j, pres, S).terms.items():
                _acc(out, (j2, a), c * k)
        return ResolutionElement._raw(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (m, a), c in self:
            body = format_generator(a)
            if any(m):
                body = f"{format_monomial(m)}*{body}"
            if c == -1:
                body = "-" + body
            elif c != 1:
                body = f"{c}*{body}" if c.is_unit() else f"({c})*{body}"
            parts.append(body)
        out = parts[0]
        for body in parts[1:]:
            out += f" - {body[1:]}" if body.startswith("-") else f" + {body}"
        return out

    __repr__ = __str__


def augmentation(e: ResolutionElement) -> LaurentScalar:
    """epsilon on K_0 = S Phi(0): the coefficient of 1*Phi(0)."""
    out = ZERO
    for (m, a), c in e.terms.items():
        if not any(m) and not any(a):
            out = out + c
    return out


# -- generators and the sigma/tau bookkeeping -----------------------------------


def is_generator(a: Generator, pres: Presentation) -> bool:
    return len(a) == pres.n and all(x >= 0 for x in a) and all(x <= 1 for x in a[pres.t :])


def generators_in_degree(m: int, pres: Presentation) -> list[Generator]:
    """All Phi(a) with |a| = m, in descending lexicographic order."""
    n, t = pres.n, pres.t
    out = []

    def rec(k, prefix, left):
        if k == n:
            if left == 0:
                out.append(tuple(prefix))
            return
        top = left if k < t else min(left, 1)
        for x in range(top, -1, -1):
            prefix.append(x)
            rec(k + 1, prefix, left - x)
            prefix.pop()

    if m >= 0:
        rec(0, [], m)
    return out


def sigma(i: int, a: int, pres: Presentation) -> int:
    if i > pres.t:
        return 1
    return 1 if a % 2 else pres.N[i - 1] - 1


def tau(i: int, a: int, pres: Presentation) -> int:
    if i > pres.t:
        return a
    return (a // 2) * pres.N[i - 1] + (a % 2)


def _shift(a: Generator, i: int, k: int) -> Generator | None:
    """a with a_i changed by k, or None when the entry goes negative."""
    x = a[i - 1] + k
    if x < 0:
        return None
    return a[: i - 1] + (x,) + a[i:]


def d_coefficient(i: int, a: Generator, pres: Presentation) -> LaurentScalar:
    """prod_{l>i} (-1)^a_l q_li^(sigma_i(a_i) tau_l(a_l))."""
    corrupt = faults.active("d-exponent")
    key = ("dcoef", i, a, corrupt)
    c = pres._cache.get(key)
    if c is None:
        s = sigma(i, a[i - 1], pres)
        c = ONE
        for l in range(i + 1, pres.n + 1):
            al = a[l - 1]
            e = s * tau(l, al, pres)
            if corrupt and al:
                e += 1
            c = c * pres.qs(l, i) ** e * sign(al)
        pres._cache[key] = c
    return c


def differential_component(i: int, e: ResolutionElement, pres: Presentation) -> ResolutionElement:
    out: dict[BasisKey, LaurentScalar] = {}
    for (j, a), c in e.terms.items():
        if a[i - 1] == 0:
            continue
        power = sigma(i, a[i - 1], pres)
        xi = tuple(power if k == i else 0 for k in range(1, pres.n + 1))
        coef = d_coefficient(i, a, pres)
        target = _shift(a, i, -1)
        for j2, k in _mono_mul(j, xi, pres, S).terms.items():
            _acc(out, (j2, target), c * coef * k)
    return ResolutionElement._raw(out)


def differential(e: ResolutionElement, pres: Presentation) -> ResolutionElement:
    """d = d_1 + ... + d_n; zero on K_0 (every d_i vanishes when a_i = 0)."""
    e.degree  # raises MixedDegree
    out = ResolutionElement()
    for i in range(1, pres.n + 1):
        out = out + differential_component(i, e, pres)
    return out


def d(a: Iterable[int], pres: Presentation) -> ResolutionElement:
    return differential(ResolutionElement.generator(a), pres)


# -- contracting homotopy -------------------------------------------------------


def _split_off(J: Monomial, l: int, pres: Presentation) -> tuple[Monomial, int, LaurentScalar]:
    """Write x^J = c * eta * x_l^j with eta free of x_l; return (eta, j, c)."""
    j = J[l - 1]
    eta = J[: l - 1] + (0,) + J[l:]
    xl = tuple(j if k == l else 0 for k in range(1, pres.n + 1))
    (_, kappa), = _mono_mul(eta, xl, pres, S).terms.items()
    return eta, j, kappa.invert()


def _x_power(l: int, e: int, n: int) -> Monomial:
    return tuple(e if k == l else 0 for k in range(1, n + 1))


def homotopy_component(l: int, e: ResolutionElement, pres: Presentation) -> ResolutionElement:
    """s_l, applied basis element by basis element."""
    n, t = pres.n, pres.t
    out: dict[BasisKey, LaurentScalar] = {}
    for (J, a), c in e.terms.items():
        eta, j, c0 = _split_off(J, l, pres)
        target = _shift(a, l, 1)
        if l <= t:
            al = a[l - 1]
            s_next = sigma(l, al + 1, pres)
            scal = ONE
            for m in range(l + 1, n + 1):
                am = a[m - 1]
                scal = scal * pres.qs(m, l) ** (-s_next * tau(m, am, pres)) * sign(am)
            if al % 2 == 0:
                if j == 0:
                    continue
                tail = _x_power(l, j - 1, n)
            else:
                if j != pres.N[l - 1] - 1:
                    continue
                tail = _x_power(l, 0, n)
        else:
            # x_l^(j-1) with j = 0 is read as zero; Phi with a_l = 2 does not exist
            if j == 0 or a[l - 1] + 1 > 1:
                continue
            denom = ONE
            for u in range(l + 1, n + 1):
                au = a[u - 1]
                denom = denom * pres.qs(u, l) ** au * sign(au)
            scal = denom.invert()
            tail = _x_power(l, j - 1, n)
        for m2, k in _mono_mul(eta, tail, pres, S).terms.items():
            _acc(out, (m2, target), c * c0 * scal * k)
    return ResolutionElement._raw(out)


def _zero_count(J: Monomial, a: Generator) -> int:
    return sum(1 for x, y in zip(J, a) if x == 0 and y == 0)


def homotopy(e: ResolutionElement, pres: Presentation) -> ResolutionElement:
    """s = (s_1 + ... + s_n) / (n - C) on each basis element; 0 when n = C."""
    n = pres.n
    out = ResolutionElement()
    for (J, a), c in e.terms.items():
        C = _zero_count(J, a)
        if C == n:
            continue
        basis = ResolutionElement._raw({(J, a): c})
        part = ResolutionElement()
        for l in range(1, n + 1):
            part = part + homotopy_component(l, basis, pres)
        out = out + part.scale(LaurentScalar.constant(1) / (n - C))
    return out


# -- verification ---------------------------------------------------------------


def basis_monomials(pres: Presentation, exp_bound: int) -> list[Monomial]:
    """Monomials of S with j_i < N_i (i <= t) and j_i <= exp_bound (i > t)."""
    ranges = [range(pres.N[i]) if i < pres.t else range(exp_bound + 1) for i in range(pres.n)]
    return [tuple(m) for m in itertools.product(*ranges)]


def default_exp_bound(pres: Presentation) -> int:
    return max([4, *pres.N])


def verify_complex(pres: Presentation, max_degree: int) -> Report:
    """d^2 = 0, d_i d_i = 0 and d_i d_j + d_j d_i = 0 on generators of degree 2..max."""
    rep = Report(f"complex d^2 = 0 (degrees 2..{max_degree})")
    n = pres.n
    for m in range(2, max_degree + 1):
        for a in generators_in_degree(m, pres):
            g = ResolutionElement.generator(a)
            name = format_generator(a)
            dd = differential(differential(g, pres), pres)
            rep.add(f"d^2 {name}", not dd, dd)
            parts = [differential_component(i, g, pres) for i in range(1, n + 1)]
            for i in range(1, n + 1):
                ii = differential_component(i, parts[i - 1], pres)
                rep.add(f"d{i}d{i} {name}", not ii, ii)
                for j in range(i + 1, n + 1):
                    anti = differential_component(i, parts[j - 1], pres) + differential_component(j, parts[i - 1], pres)
                    rep.add(f"d{i}d{j}+d{j}d{i} {name}", not anti, anti)
    return rep


def verify_homotopy(
    pres: Presentation,
    max_degree: int,
    exp_bound: int | None = None,
    *,
    componentwise: bool = True,
) -> Report:
    """sd + ds = id on bounded basis elements x^j Phi(a), 1 <= |a| <= max_degree.

    With ``componentwise`` the single-index identity (s_i d_i + d_i s_i) and
    the vanishing of s_l d_i + d_i s_l (i != l) are asserted as well.
    """
    if exp_bound is None:
        exp_bound = default_exp_bound(pres)
    rep = Report(f"homotopy sd + ds = id (degrees 1..{max_degree}, exp_bound {exp_bound})")
    n = pres.n
    monos = basis_monomials(pres, exp_bound)
    for m in range(1, max_degree + 1):
        for a in generators_in_degree(m, pres):
            for J in monos:
                e = ResolutionElement.generator(a, mono=J)
                name = f"{format_monomial(J)}*{format_generator(a)}"
                res = homotopy(differential(e, pres), pres) + differential(homotopy(e, pres), pres) - e
                rep.add(f"(sd+ds) {name}", not res, res)
                if not componentwise:
                    continue
                d_parts = [differential_component(i, e, pres) for i in range(1, n + 1)]
                s_parts = [homotopy_component(l, e, pres) for l in range(1, n + 1)]
                for i in range(1, n + 1):
                    for l in range(1, n + 1):
                        val = homotopy_component(l, d_parts[i - 1], pres) + differential_component(i, s_parts[l - 1], pres)
                        if i == l:
                            expect = e if (J[i - 1] > 0 or a[i - 1] > 0) else ResolutionElement()
                            res = val - expect
                            rep.add(f"(s{i}d{i}+d{i}s{i}) {name}", not res, res)
                        else:
                            rep.add(f"(s{l}d{i}+d{i}s{l}) {name}", not val, val)
    return rep


def verify_exactness_at_zero(pres: Presentation, exp_bound: int | None = None) -> Report:
    """Every nonzero monomial x^j of S (j != 0) is a unit multiple of a d-image."""
    if exp_bound is None:
        exp_bound = default_exp_bound(pres)
    rep = Report(f"exactness at K_0 (exp_bound {exp_bound})")
    n = pres.n
    zero = (0,) * n
    for i in range(1, n + 1):
        g = _x_power(i, 1, n)
        val = augmentation(d(g, pres))
        rep.add(f"eps(d {format_generator(g)}) = 0", not val, val)
    for J in basis_monomials(pres, exp_bound):
        if not any(J):
            continue
        i = next(k for k, x in enumerate(J, 1) if x)
        pre = J[: i - 1] + (J[i - 1] - 1,) + J[i:]
        e = ResolutionElement.generator(_x_power(i, 1, n), mono=pre)
        img = differential(e, pres)
        theta = img.coefficient(J, zero)
        ok = len(img.terms) == 1 and theta.is_unit()
        rep.add(f"{format_monomial(J)}*Phi(0) = theta * d({e})", ok, img)
    return rep
