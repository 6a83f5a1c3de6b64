"""Reading and writing presentation files.

A file is a list of ``key = value`` lines.  ``#`` starts a comment.  Keys are
``n``, ``t``, ``N``, ``order``, ``omega``, ``q.<i>.<j>`` and ``p.<i>.<j>``
(i < j); lists are written ``[2, 3]`` or ``2, 3``.  Unspecified q_ij stay the
formal parameter ``q<i>_<j>``.
"""

from __future__ import annotations

import re
from pathlib import Path

from .presentations import (
    AlgebraElement,
    Presentation,
    PresentationError,
    format_presentation,
    validate_presentation,
)
from .qscalar import ZERO, ScalarError, parse_scalar, parse_terms

_PAIR = re.compile(r"^([qp])\.(\d+)\.(\d+)$")


class PresentationSyntaxError(ValueError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        self.message = message
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class InvalidPresentation(ValueError):
    """The file parsed but failed validation; ``report`` holds the details."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(c.line() for c in report.failures))


def _int(text: str, line: int, key: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise PresentationSyntaxError(line, f"{key} expects an integer, got {text!r}") from None


def _int_list(text: str, line: int, key: str) -> tuple[int, ...]:
    body = text.strip()
    if body.startswith("["):
        if not body.endswith("]"):
            raise PresentationSyntaxError(line, f"unclosed list for {key}")
        body = body[1:-1]
    if not body.strip():
        return ()
    return tuple(_int(x.strip(), line, key) for x in body.split(","))


def _element(text: str, n: int, line: int) -> AlgebraElement:
    terms = {}
    for coeff, powers in parse_terms(text):
        if any(not 1 <= i <= n for i in powers):
            raise PresentationSyntaxError(line, f"generator index out of range 1..{n}")
        m = tuple(powers.get(i, 0) for i in range(1, n + 1))
        terms[m] = terms.get(m, ZERO) + coeff
    return AlgebraElement(terms)


def parse_presentation_text(text: str) -> Presentation:
    """Parse without validating (use :func:`validate_presentation` afterwards)."""
    seen: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise PresentationSyntaxError(lineno, f"expected 'key = value', got {body!r}")
        key, value = (s.strip() for s in body.split("=", 1))
        if key in seen:
            raise PresentationSyntaxError(lineno, f"duplicate key {key!r} (first on line {seen[key][0]})")
        if key not in ("n", "t", "N", "order", "omega"):
            m = _PAIR.match(key)
            if not m:
                raise PresentationSyntaxError(lineno, f"unknown key {key!r}")
            if int(m.group(2)) >= int(m.group(3)):
                raise PresentationSyntaxError(lineno, f"{key}: parameters require i<j")
        if not value:
            raise PresentationSyntaxError(lineno, f"empty value for {key}")
        seen[key] = (lineno, value)

    if "n" not in seen:
        raise PresentationSyntaxError(None, "missing required key 'n'")
    n = _int(seen["n"][1], seen["n"][0], "n")
    if n < 1:
        raise PresentationSyntaxError(seen["n"][0], "n must be positive")
    kw: dict = {"n": n}
    if "t" in seen:
        kw["t"] = _int(seen["t"][1], seen["t"][0], "t")
    if "N" in seen:
        kw["N"] = _int_list(seen["N"][1], seen["N"][0], "N")
    if "omega" in seen:
        kw["omega"] = _int_list(seen["omega"][1], seen["omega"][0], "omega")
    if "order" in seen:
        kw["order"] = seen["order"][1]
    q, p = {}, {}
    for key, (lineno, value) in seen.items():
        m = _PAIR.match(key)
        if not m:
            continue
        i, j = int(m.group(2)), int(m.group(3))
        if j > n:
            raise PresentationSyntaxError(lineno, f"{key}: index exceeds n = {n}")
        try:
            if m.group(1) == "q":
                q[(i, j)] = parse_scalar(value)
            else:
                p[(i, j)] = _element(value, n, lineno)
        except ScalarError as exc:
            raise PresentationSyntaxError(lineno, f"{key}: {exc}") from None
    try:
        return Presentation(q=q, p=p, **kw)
    except PresentationError as exc:
        raise PresentationSyntaxError(None, str(exc)) from None


def parse_presentation_file(path, *, validate: bool = True) -> Presentation:
    pres = parse_presentation_text(Path(path).read_text(encoding="utf-8"))
    if validate:
        rep = validate_presentation(pres)
        if not rep.ok:
            raise InvalidPresentation(rep)
    return pres


def write_presentation_file(pres: Presentation, path) -> None:
    Path(path).write_text(format_presentation(pres), encoding="utf-8")


def data_path(name: str) -> Path:
    """Path of a presentation file shipped with the package."""
    return Path(__file__).parent / "data" / name
