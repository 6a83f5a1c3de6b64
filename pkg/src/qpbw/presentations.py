"""PBW presentations, their quantum symmetric and truncated quotients, and
normal-form arithmetic.

Generators are indexed 1..n.  A monomial is an exponent tuple of length n
standing for the sorted product x1^a1 ... xn^an.  The defining relations are

    x_i x_j = q_ij x_j x_i + p_ij      (i < j)

and are oriented as the rewrite rule ``x_j x_i -> q_ij^-1 (x_i x_j - p_ij)``.
Three algebras share one presentation:

- mode B: the PBW algebra itself;
- mode S: the quantum symmetric algebra (all p_ij dropped) modulo x_i^N_i, i <= t;
- mode A: B modulo x_i^N_i, i <= t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .qscalar import ONE, ZERO, LaurentScalar, Param, canonical_q
from .report import Report

Monomial = tuple[int, ...]
Word = tuple[int, ...]

ORDERS = ("lex", "wgrlex")
STEP_BUDGET = 10**6


class AlgebraMode(str, Enum):
    B = "B"
    S = "S"
    A = "A"


class PresentationError(ValueError):
    pass


class NonTerminating(RuntimeError):
    pass


class ZeroElement(ValueError):
    pass


class ConfluenceFailure(AssertionError):
    def __init__(self, word, first, second):
        super().__init__(f"word {word}: {first} != {second}")
        self.word = word
        self.forms = (first, second)


class AlgebraElement:
    """Finite linear combination of sorted monomials with Laurent coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, LaurentScalar] = {}
        for m, c in (terms or {}).items():
            c = LaurentScalar.coerce(c)
            m = tuple(m)
            v = clean.get(m, ZERO) + c
            if v:
                clean[m] = v
            else:
                clean.pop(m, None)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, LaurentScalar]) -> AlgebraElement:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, m: Iterable[int], coeff=ONE) -> AlgebraElement:
        coeff = LaurentScalar.coerce(coeff)
        return cls._raw({tuple(m): coeff} if coeff else {})

    @classmethod
    def one(cls, n: int) -> AlgebraElement:
        return cls.monomial((0,) * n)

    @classmethod
    def generator(cls, i: int, n: int, power: int = 1) -> AlgebraElement:
        return cls.monomial(tuple(power if k == i else 0 for k in range(1, n + 1)))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, LaurentScalar]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def coefficient(self, m: Iterable[int]) -> LaurentScalar:
        return self.terms.get(tuple(m), ZERO)

    def support(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return AlgebraElement._raw(out)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c) -> AlgebraElement:
        c = LaurentScalar.coerce(c)
        if not c:
            return AlgebraElement._raw({})
        return AlgebraElement._raw({m: c * v for m, v in self.terms.items()})

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"AlgebraElement({format_element(self)!r})"


def format_monomial(m: Monomial) -> str:
    xs = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m, 1) if e]
    return "*".join(xs) if xs else "1"


def format_element(f: AlgebraElement, pres: Presentation | None = None) -> str:
    if not f.terms:
        return "0"
    key = pres.sort_key if pres is not None else None
    parts = []
    for m in sorted(f.terms, key=key, reverse=True):
        c = f.terms[m]
        xs = format_monomial(m) if any(m) else ""
        if not xs:
            body = str(c)
        elif c == 1:
            body = xs
        elif c == -1:
            body = "-" + xs
        elif c.is_unit():
            body = f"{c}*{xs}"
        else:
            body = f"({c})*{xs}"
        parts.append(body)
    out = parts[0]
    for body in parts[1:]:
        out += f" - {body[1:]}" if body.startswith("-") else f" + {body}"
    return out


@dataclass(frozen=True)
class Presentation:
    """A PBW presentation with t nilpotent generators of orders N.

    ``q`` and ``p`` accept dicts keyed by (i, j) with i < j; they are stored
    as sorted tuples so presentations are hashable.  Missing q_ij default to
    the formal parameter q<i>_<j>.
    """

    n: int
    t: int = 0
    N: tuple[int, ...] = ()
    q: tuple = ()
    p: tuple = ()
    omega: tuple[int, ...] = ()
    order: str = "wgrlex"
    _cache: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise PresentationError("n must be a positive integer")
        set_ = lambda k, v: object.__setattr__(self, k, v)
        set_("N", tuple(int(x) for x in self.N))
        qd = dict(self.q)
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                qd.setdefault((i, j), canonical_q(i, j, self.n))
        set_("q", tuple(sorted((tuple(k), LaurentScalar.coerce(v)) for k, v in qd.items())))
        pd = {}
        for k, v in dict(self.p).items():
            if not isinstance(v, AlgebraElement):
                raise PresentationError(f"p{k} must be an AlgebraElement")
            if v:
                pd[tuple(k)] = v
        set_("p", tuple(sorted(pd.items())))
        set_("omega", tuple(int(w) for w in self.omega) if self.omega else (1,) * self.n)

    # -- table access -------------------------------------------------------

    @property
    def q_table(self) -> dict[Param, LaurentScalar]:
        return dict(self.q)

    @property
    def p_table(self) -> dict[Param, AlgebraElement]:
        return dict(self.p)

    def _qmat(self):
        mat = self._cache.get("qmat")
        if mat is None:
            n = self.n
            mat = [[ONE] * (n + 1) for _ in range(n + 1)]
            for (i, j), v in self.q:
                if 1 <= i < j <= n and v.is_unit():
                    mat[i][j] = v
                    mat[j][i] = v.invert()
            self._cache["qmat"] = mat
        return mat

    def qs(self, i: int, j: int) -> LaurentScalar:
        """q_ij with q_ii = 1 and q_ji = q_ij^-1."""
        return self._qmat()[i][j]

    def nilpotent(self, i: int) -> bool:
        return i <= self.t

    def truncated(self, m: Monomial) -> bool:
        """True if m lies in the ideal (x_i^N_i : i <= t)."""
        for k in range(self.t):
            if m[k] >= self.N[k]:
                return True
        return False

    def weight(self, m: Monomial) -> int:
        return sum(a * w for a, w in zip(m, self.omega))

    def sort_key(self, m: Monomial):
        if self.order == "wgrlex":
            return (self.weight(m), m)
        return m

    def unit(self, i: int) -> Monomial:
        return tuple(1 if k == i else 0 for k in range(1, self.n + 1))

    def substitute(self, assignment: Mapping[Param, Fraction | int]) -> Presentation:
        """Numeric-parameter copy: the assigned q-parameters replaced by rationals."""
        q = {k: v.substitute(assignment) for k, v in self.q}
        p = {
            k: AlgebraElement({m: c.substitute(assignment) for m, c in v.terms.items()})
            for k, v in self.p
        }
        return replace(self, q=q, p=p)

    def __str__(self) -> str:
        return format_presentation(self)


def format_presentation(pres: Presentation) -> str:
    lines = [
        f"n = {pres.n}",
        f"t = {pres.t}",
        f"N = [{', '.join(map(str, pres.N))}]",
        f"order = {pres.order}",
        f"omega = [{', '.join(map(str, pres.omega))}]",
    ]
    lines += [f"q.{i}.{j} = {v}" for (i, j), v in pres.q]
    lines += [f"p.{i}.{j} = {format_element(v, pres)}" for (i, j), v in pres.p]
    return "\n".join(lines) + "\n"


# -- orders and degrees ---------------------------------------------------------


def compare_monomials(a: Monomial, b: Monomial, pres: Presentation) -> int:
    """-1, 0 or 1 as a <, =, > b in the presentation's admissible order."""
    if len(a) != pres.n or len(b) != pres.n:
        raise ValueError("monomial length does not match n")
    ka, kb = pres.sort_key(tuple(a)), pres.sort_key(tuple(b))
    return (ka > kb) - (ka < kb)


def omega_degree(f: AlgebraElement, pres: Presentation) -> int:
    if not f:
        raise ZeroElement("the zero element has no omega-degree")
    return max(pres.weight(m) for m in f.terms)


def leading_monomial(f: AlgebraElement, pres: Presentation) -> Monomial:
    if not f:
        raise ZeroElement("the zero element has no leading monomial")
    return max(f.terms, key=pres.sort_key)


def top_degree_part(f: AlgebraElement, pres: Presentation) -> AlgebraElement:
    if not f:
        return f
    d = omega_degree(f, pres)
    return AlgebraElement._raw({m: c for m, c in f.terms.items() if pres.weight(m) == d})


def monomials(
    pres: Presentation,
    max_weight: int,
    *,
    reduced: bool = False,
    positive: bool = False,
) -> list[Monomial]:
    """All monomials of omega-degree <= max_weight, ordered by (weight, exponents).

    ``reduced`` keeps only the basis of A (exponent < N_i for i <= t);
    ``positive`` drops the constant monomial.
    """
    out = []

    def rec(k, prefix, budget):
        if k == pres.n:
            out.append(tuple(prefix))
            return
        w = pres.omega[k]
        top = budget // w
        if reduced and k < pres.t:
            top = min(top, pres.N[k] - 1)
        for e in range(top + 1):
            prefix.append(e)
            rec(k + 1, prefix, budget - e * w)
            prefix.pop()

    if max_weight >= 0:
        rec(0, [], max_weight)
    if positive:
        out = [m for m in out if any(m)]
    out.sort(key=lambda m: (pres.weight(m), m))
    return out


# -- rewriting ------------------------------------------------------------------


def word_of(m: Monomial) -> Word:
    return tuple(i for i, e in enumerate(m, 1) for _ in range(e))


def monomial_of(w: Word, n: int) -> Monomial:
    m = [0] * n
    for i in w:
        m[i - 1] += 1
    return tuple(m)


def _nil_run(w: Word, pres: Presentation) -> bool:
    if not pres.t:
        return False
    run, prev = 0, None
    for i in w:
        run = run + 1 if i == prev else 1
        prev = i
        if i <= pres.t and run >= pres.N[i - 1]:
            return True
    return False


def _descent(w: Word, strategy: str) -> int | None:
    rng = range(len(w) - 1)
    if strategy == "rightmost":
        rng = reversed(rng)
    for k in rng:
        if w[k] > w[k + 1]:
            return k
    return None


def _rewrite_at(w: Word, pos: int, pres: Presentation, mode: AlgebraMode):
    j, i = w[pos], w[pos + 1]
    qinv = pres.qs(j, i)
    head, tail = w[:pos], w[pos + 2 :]
    out = [(head + (i, j) + tail, qinv)]
    if mode is not AlgebraMode.S:
        tail_elem = pres._cache.get(("p", i, j))
        if tail_elem is None:
            tail_elem = dict(pres.p).get((i, j), AlgebraElement())
            pres._cache[("p", i, j)] = tail_elem
        for m, c in tail_elem.terms.items():
            out.append((head + word_of(m) + tail, -qinv * c))
    return out


def _collect(pairs) -> dict[Word, LaurentScalar]:
    out: dict[Word, LaurentScalar] = {}
    for w, c in pairs:
        out[w] = out.get(w, ZERO) + c
    return out


def _reduce(
    pending: dict[Word, LaurentScalar],
    pres: Presentation,
    mode: AlgebraMode,
    strategy: str = "leftmost",
    budget: int = STEP_BUDGET,
) -> AlgebraElement:
    truncate = mode is not AlgebraMode.B
    result: dict[Monomial, LaurentScalar] = {}
    steps = 0
    pending = {w: c for w, c in pending.items() if c and not (truncate and _nil_run(w, pres))}
    while pending:
        w, c = pending.popitem()
        pos = _descent(w, strategy)
        if pos is None:
            m = monomial_of(w, pres.n)
            v = result.get(m, ZERO) + c
            if v:
                result[m] = v
            else:
                result.pop(m, None)
            continue
        steps += 1
        if steps > budget:
            raise NonTerminating(f"rewrite budget of {budget} steps exhausted")
        for w2, c2 in _rewrite_at(w, pos, pres, mode):
            if truncate and _nil_run(w2, pres):
                continue
            v = pending.get(w2, ZERO) + c * c2
            if v:
                pending[w2] = v
            else:
                pending.pop(w2, None)
    return AlgebraElement._raw(result)


def normal_form(
    w: Iterable[int],
    pres: Presentation,
    mode: AlgebraMode = AlgebraMode.B,
    *,
    strategy: str = "leftmost",
) -> AlgebraElement:
    """Rewrite the word x_{w1} x_{w2} ... into sorted monomials."""
    w = tuple(w)
    for i in w:
        if not 1 <= i <= pres.n:
            raise ValueError(f"letter {i} outside 1..{pres.n}")
    return _reduce({w: ONE}, pres, AlgebraMode(mode), strategy)


def _qsym_scalar(a: Monomial, b: Monomial, pres: Presentation) -> LaurentScalar:
    # x^a x^b = prod_{k<l} q_lk^(a_l b_k) x^(a+b) in the quantum symmetric algebra
    c = ONE
    n = pres.n
    for l in range(1, n):
        al = a[l]
        if not al:
            continue
        for k in range(l):
            bk = b[k]
            if bk:
                c = c * pres.qs(l + 1, k + 1) ** (al * bk)
    return c


def _mono_mul(a: Monomial, b: Monomial, pres: Presentation, mode: AlgebraMode) -> AlgebraElement:
    if mode is AlgebraMode.S or not pres.p:
        m = tuple(x + y for x, y in zip(a, b))
        if mode is not AlgebraMode.B and pres.truncated(m):
            return AlgebraElement._raw({})
        return AlgebraElement._raw({m: _qsym_scalar(a, b, pres)})
    key = ("mul", mode, a, b)
    out = pres._cache.get(key)
    if out is None:
        if not any(a) or not any(b):
            m = tuple(x + y for x, y in zip(a, b))
            out = AlgebraElement() if mode is AlgebraMode.A and pres.truncated(m) else AlgebraElement.monomial(m)
        else:
            out = _reduce({word_of(a) + word_of(b): ONE}, pres, mode)
        pres._cache[key] = out
    return out


def multiply_monomials(a: Monomial, b: Monomial, pres: Presentation, mode: AlgebraMode = AlgebraMode.B) -> AlgebraElement:
    return _mono_mul(tuple(a), tuple(b), pres, AlgebraMode(mode))


def multiply(
    f: AlgebraElement,
    g: AlgebraElement,
    pres: Presentation,
    mode: AlgebraMode = AlgebraMode.B,
) -> AlgebraElement:
    mode = AlgebraMode(mode)
    out: dict[Monomial, LaurentScalar] = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            for m, c in _mono_mul(a, b, pres, mode).terms.items():
                v = out.get(m, ZERO) + ca * cb * c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return AlgebraElement._raw(out)


def reduce_mod_nilpotents(f: AlgebraElement, pres: Presentation) -> AlgebraElement:
    """Image of a PBW-basis combination of B in A (drop monomials in the ideal)."""
    return AlgebraElement._raw({m: c for m, c in f.terms.items() if not pres.truncated(m)})


# -- validation -----------------------------------------------------------------


def validate_presentation(pres: Presentation) -> Report:
    rep = Report("validate")
    n, t = pres.n, pres.t
    rep.add("0 <= t <= n", 0 <= t <= n, f"t={t}, n={n}")
    rep.add("len(N) == t", len(pres.N) == t, f"N has {len(pres.N)} entries")
    for k, Nk in enumerate(pres.N, 1):
        rep.add(f"N{k} > 1", Nk > 1, f"N must exceed 1 (got {Nk})")
    rep.add("len(omega) == n", len(pres.omega) == n, f"omega has {len(pres.omega)} entries")
    rep.add("omega positive", all(w > 0 for w in pres.omega), f"omega={list(pres.omega)}")
    rep.add("order known", pres.order in ORDERS, f"order={pres.order!r}")
    for (i, j), v in pres.q:
        if not 1 <= i < j <= n:
            rep.add(f"q.{i}.{j} index", False, f"need 1 <= i < j <= {n}")
            continue
        rep.add(f"q.{i}.{j} unit", v.is_unit(), v)
    weights_ok = len(pres.omega) == n
    for (i, j), f in pres.p:
        if not 1 <= i < j <= n:
            rep.add(f"p.{i}.{j} index", False, f"need 1 <= i < j <= {n}")
            continue
        if any(len(m) != n for m in f.terms):
            rep.add(f"p.{i}.{j} arity", False, "monomial length differs from n")
            continue
        rep.add(f"p.{i}.{j} augmented", not f.coefficient((0,) * n), "p_ij has a constant term")
        if not weights_ok:
            continue
        deg = omega_degree(f, pres)
        bound = pres.omega[i - 1] + pres.omega[j - 1]
        rep.add(
            f"p.{i}.{j} omega-degree ({i},{j})",
            deg < bound,
            f"deg_omega(p_{i}{j}) = {deg} >= {bound}",
        )
        xixj = tuple(int(k in (i, j)) for k in range(1, n + 1))
        if pres.order in ORDERS:
            lead = leading_monomial(f, pres)
            rep.add(
                f"p.{i}.{j} order ({i},{j})",
                pres.sort_key(lead) < pres.sort_key(xixj),
                f"leading monomial {format_monomial(lead)} not below x{i}*x{j}",
            )
    return rep


def associated_graded(pres: Presentation) -> Presentation:
    """The quantum symmetric presentation with the same q, N, omega and order."""
    if not pres.p:
        return pres
    return replace(pres, p=())


# -- confluence -----------------------------------------------------------------


def check_confluence(
    pres: Presentation,
    mode: AlgebraMode = AlgebraMode.B,
    degree_bound: int = 3,
    *,
    strict: bool = False,
) -> Report:
    """Empirical diamond-lemma check.

    Every overlap x_k x_j x_i (i < j < k) is reduced starting from either
    of its two redexes, and every word of length <= degree_bound is reduced
    with leftmost and rightmost strategies; all results must agree.
    """
    mode = AlgebraMode(mode)
    rep = Report(f"confluence (mode {mode.value}, words of length <= {degree_bound})")

    def record(label, word, first, second):
        ok = first == second
        residue = None if ok else f"{format_element(first, pres)} vs {format_element(second, pres)}"
        rep.add(label, ok, residue)
        if not ok and strict:
            raise ConfluenceFailure(word, first, second)

    n = pres.n
    try:
        for i, j, k in itertools.combinations(range(1, n + 1), 3):
            w = (k, j, i)
            left = _reduce(_collect(_rewrite_at(w, 0, pres, mode)), pres, mode)
            right = _reduce(_collect(_rewrite_at(w, 1, pres, mode)), pres, mode)
            record(f"overlap x{k}*x{j}*x{i}", w, left, right)
        for length in range(2, degree_bound + 1):
            for w in itertools.product(range(1, n + 1), repeat=length):
                if _descent(w, "leftmost") is None:
                    continue
                a = _reduce({w: ONE}, pres, mode, "leftmost")
                b = _reduce({w: ONE}, pres, mode, "rightmost")
                record("word " + "*".join(f"x{i}" for i in w), w, a, b)
    except NonTerminating as exc:
        rep.add("termination", False, exc)
    return rep


# -- braided bracket ------------------------------------------------------------


def braid_factor(a: Monomial, b: Monomial, pres: Presentation) -> LaurentScalar:
    c = ONE
    n = pres.n
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            e = b[l - 1] * a[k - 1] - b[k - 1] * a[l - 1]
            if e:
                c = c * pres.qs(l, k) ** (-e)
    return c


def braided_bracket(
    a: Monomial,
    b: Monomial,
    pres: Presentation,
    mode: AlgebraMode = AlgebraMode.B,
) -> AlgebraElement:
    """[x^a, x^b]_c = x^a x^b - (prod_{k<l} q_lk^-(b_l a_k - b_k a_l)) x^b x^a."""
    a, b = tuple(a), tuple(b)
    ab = multiply_monomials(a, b, pres, mode)
    ba = multiply_monomials(b, a, pres, mode)
    return ab - ba.scale(braid_factor(a, b, pres))


def check_braided_central(i: int, pres: Presentation, degree_bound: int) -> Report:
    """Is x_i^N_i braided-central in B against every monomial of omega-degree <= bound?"""
    if not 1 <= i <= pres.t:
        raise ValueError(f"generator {i} is not nilpotent (t={pres.t})")
    a = tuple(pres.N[i - 1] if k == i else 0 for k in range(1, pres.n + 1))
    rep = Report(f"braided center x{i}^{pres.N[i - 1]} (omega-degree <= {degree_bound})")
    for b in monomials(pres, degree_bound, positive=True):
        br = braided_bracket(a, b, pres, AlgebraMode.B)
        rep.add(f"[{format_monomial(a)}, {format_monomial(b)}]_c", not br, format_element(br, pres))
    return rep
