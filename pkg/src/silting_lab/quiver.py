"""Graded quivers, superpotentials and the line-oriented input language.

Input format::

    m 2
    vertex 1 2
    arrow a: 1 -> 2 deg 0
    potential 1/2*(c b a) - (c b a)

Composition is right-to-left: in the word ``v u`` the path ``u`` is applied
first.  Potential terms list arrows left to right in that written order.  The
suffix ``*`` names a dual arrow ``a*`` inside potential terms (for potentials
living on the preprojective double quiver).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import coeff, format_scalar, parse_scalar

COMPOSITION = "right-to-left: in the word v u, u is applied first"

GINZBURG = "ginzburg"
PREPROJECTIVE = "preprojective"

_IDENT = r"[^\s:()*+\-][^\s:()*]*"


class DslError(ValueError):
    """Input error carrying a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    degree: int


@dataclass(frozen=True)
class GradedQuiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow name")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} uses an undeclared vertex")
            if not isinstance(a.degree, int):
                raise ValueError(f"arrow {a.name} has non-integer degree")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise KeyError(name)

    def loops(self) -> list[Arrow]:
        return [a for a in self.arrows if a.source == a.target]

    def special_loops(self, m: int) -> list[Arrow]:
        """Loops of odd degree equal to ``-m/2``."""
        return [a for a in self.loops() if a.degree % 2 == 1 and 2 * a.degree == -m]


def dual_name(name: str) -> str:
    return name + "*"


@dataclass(frozen=True)
class Superpotential:
    """Scalar combination of cyclic words (tuples of arrow names, left to right).

    Terms keep the representative the user wrote.  ``canonical_terms`` gives the
    rotation-invariant identity used for comparisons.  A word mentioning a dual
    arrow ``a*`` places the potential on the preprojective double quiver.
    """

    terms: tuple[tuple[tuple[str, ...], object], ...] = ()

    @property
    def ambient(self) -> str:
        starred = any(a.endswith("*") for w, _ in self.terms for a in w)
        return PREPROJECTIVE if starred else GINZBURG

    def is_zero(self) -> bool:
        return not self.terms

    def canonical_terms(self, order: dict[str, int]) -> dict[tuple[str, ...], object]:
        out: dict = {}
        for word, c in self.terms:
            key = canonical_rotation(word, order)
            out[key] = coeff(out.get(key, 0) + c)
            if not out[key]:
                del out[key]
        return out

    def map_terms(self, f) -> "Superpotential":
        return Superpotential(tuple((w, f(c)) for w, c in self.terms))


def canonical_rotation(word: tuple[str, ...], order: dict[str, int]) -> tuple[str, ...]:
    """Lexicographically least rotation under the arrow declaration order."""
    if not word:
        return word
    keys = [order.get(a, len(order)) for a in word]
    best = min(range(len(word)), key=lambda k: (keys[k:] + keys[:k], word[k:] + word[:k]))
    return word[best:] + word[:best]


@dataclass
class ValidationReport:
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)
    special_loops: list[str] = field(default_factory=list)
    composition: str = COMPOSITION

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "composition": self.composition,
            "checks": dict(self.checks),
            "details": dict(self.details),
            "special_loops": list(self.special_loops),
            "ok": self.ok,
        }


def _ambient_arrows(q: GradedQuiver, m: int, ambient: str) -> dict[str, Arrow]:
    """Arrows usable in potential words: the quiver plus (optionally) duals."""
    out = {a.name: a for a in q.arrows}
    if ambient == PREPROJECTIVE:
        special = {a.name for a in q.special_loops(m)}
        for a in q.arrows:
            if a.name in special:
                out[dual_name(a.name)] = a
            else:
                out[dual_name(a.name)] = Arrow(dual_name(a.name), a.target, a.source, -m - a.degree)
    return out


def word_data(word, arrows: dict[str, Arrow]):
    """(source, target, degree, composable) of a left-to-right word."""
    seq = [arrows[a] for a in word]
    ok = all(seq[k].source == seq[k + 1].target for k in range(len(seq) - 1))
    return seq[-1].source, seq[0].target, sum(a.degree for a in seq), ok


def validate(q: GradedQuiver, w: Superpotential, m: int, ginzburg: bool = False) -> ValidationReport:
    """Check the degree, homogeneity, reducedness and cyclicity conditions.

    With ``ginzburg=True`` arrow degrees are checked in ``[-m, 0]`` instead of
    ``[-m/2, 0]``.
    """
    rep = ValidationReport()
    lo = -m if ginzburg else Fraction(-m, 2)
    bad = [a.name for a in q.arrows if not (lo <= a.degree <= 0)]
    key = "degrees_in_[-m,0]" if ginzburg else "degrees_in_[-m/2,0]"
    rep.checks[key] = not bad
    if bad:
        rep.details[key] = "out of range: " + ", ".join(bad)
    rep.checks["m_positive"] = m >= 1
    arrows = _ambient_arrows(q, m, w.ambient)
    unknown = sorted({a for word, _ in w.terms for a in word if a not in arrows})
    rep.checks["potential_arrows_known"] = not unknown
    if unknown:
        rep.details["potential_arrows_known"] = ", ".join(unknown)
        rep.checks["potential_homogeneous"] = False
        rep.checks["potential_reduced"] = False
        rep.checks["potential_cyclic"] = False
    else:
        degs, short, acyc = [], [], []
        for word, _ in w.terms:
            s, t, d, comp = word_data(word, arrows)
            degs.append(d)
            if len(word) < 3:
                short.append(" ".join(word))
            if not comp or s != t:
                acyc.append(" ".join(word))
        inhom = [d for d in degs if d != 1 - m]
        rep.checks["potential_homogeneous"] = not inhom
        if inhom:
            rep.details["potential_homogeneous"] = f"term degrees {sorted(set(degs))}, need {1 - m}"
        rep.checks["potential_reduced"] = not short
        if short:
            rep.details["potential_reduced"] = "length < 3: " + "; ".join(short)
        rep.checks["potential_cyclic"] = not acyc
        if acyc:
            rep.details["potential_cyclic"] = "not cyclic: " + "; ".join(acyc)
    if ginzburg and w.ambient != GINZBURG:
        rep.checks["potential_on_quiver"] = False
        rep.details["potential_on_quiver"] = "Ginzburg potentials use arrows of the quiver only"
    rep.special_loops = [a.name for a in q.special_loops(m)]
    return rep


# ---------------------------------------------------------------------------
# parsing and printing


_M_RE = re.compile(r"^m\s+(\S+)\s*$")
_ARROW_RE = re.compile(rf"^arrow\s+({_IDENT})\s*:\s*(\S+)\s*->\s*(\S+)\s+deg\s+(\S+)\s*$")
_TERM_RE = re.compile(r"\(([^()]*)\)")


def _parse_int(text: str, line: int, col: int, what: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", text):
        raise DslError(f"{what} must be an integer, got {text!r}", line, col)
    return int(text)


def parse_terms(text: str, line: int = 1, col0: int = 1):
    """Parse ``c*(w1 w2 ...) + ...`` into ``[(word, coefficient)]``."""
    terms = []
    pos = 0
    for m in _TERM_RE.finditer(text):
        lead = text[pos:m.start()].strip()
        if lead.endswith("*"):
            lead = lead[:-1].strip()
        if not terms and not lead:
            c = coeff(1)
        else:
            if terms:
                if not lead or lead[0] not in "+-":
                    raise DslError("expected '+' or '-' between terms", line, col0 + pos)
                sign = -1 if lead.startswith("-") else 1
                body = lead[1:].strip()
            else:
                # the first coefficient is one signed scalar, e.g. -1+2*i
                sign, body = 1, lead
                if lead in ("+", "-"):
                    sign, body = (-1 if lead == "-" else 1), ""
            if body in ("",):
                c = coeff(sign)
            else:
                try:
                    c = coeff(sign * parse_scalar(body))
                except ValueError:
                    raise DslError(f"malformed scalar {body!r}", line, col0 + pos) from None
        word = tuple(m.group(1).split())
        if not word:
            raise DslError("empty term", line, col0 + m.start())
        terms.append((word, c))
        pos = m.end()
    if text[pos:].strip():
        raise DslError(f"unexpected text {text[pos:].strip()!r}", line, col0 + pos)
    if not terms and text.strip() not in ("", "0"):
        raise DslError("expected terms of the form c*(a b ...)", line, col0)
    return terms


def parse(source: str):
    """Parse DSL text into ``(GradedQuiver, Superpotential, m)``."""
    m_val = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    pot_line = None
    for lineno, raw in enumerate(source.splitlines(), start=1):
        text = raw.split("#", 1)[0].rstrip()
        if not text.strip():
            continue
        indent = len(text) - len(text.lstrip())
        text = text.strip()
        col = indent + 1
        head = text.split(None, 1)[0]
        if head == "m":
            mm = _M_RE.match(text)
            if not mm:
                raise DslError("expected 'm <positive int>'", lineno, col)
            m_val = _parse_int(mm.group(1), lineno, col + 2, "m")
            if m_val < 1:
                raise DslError("m must be positive", lineno, col + 2)
        elif head == "vertex":
            names = text.split()[1:]
            if not names:
                raise DslError("vertex line needs at least one identifier", lineno, col)
            for v in names:
                if v in vertices:
                    raise DslError(f"duplicate vertex {v!r}", lineno, col + text.index(v))
                vertices.append(v)
        elif head == "arrow":
            am = _ARROW_RE.match(text)
            if not am:
                raise DslError("expected 'arrow <name>: <src> -> <tgt> deg <int>'", lineno, col)
            name, s, t, d = am.groups()
            for v, g in ((s, 2), (t, 3)):
                if v not in vertices:
                    raise DslError(f"undeclared vertex {v!r}", lineno, col + am.start(g))
            if any(a.name == name for a in arrows):
                raise DslError(f"duplicate arrow {name!r}", lineno, col + am.start(1))
            deg = _parse_int(d, lineno, col + am.start(4), "degree")
            arrows.append(Arrow(name, s, t, deg))
        elif head == "potential":
            if pot_line is not None:
                raise DslError("potential given twice", lineno, col)
            pot_line = (lineno, col + len("potential"), text[len("potential"):])
        else:
            raise DslError(f"unknown statement {head!r}", lineno, col)
    if m_val is None:
        raise DslError("missing 'm' line", 1, 1)
    q = GradedQuiver(tuple(vertices), tuple(arrows))
    w = Superpotential()
    if pot_line is not None:
        lineno, col, body = pot_line
        terms = parse_terms(body, lineno, col)
        names = {a.name for a in arrows}
        special = {a.name for a in q.special_loops(m_val)}
        fixed = []
        for word, c in terms:
            new = []
            for a in word:
                if a in names:
                    new.append(a)
                elif a.endswith("*") and a[:-1] in names:
                    new.append(a[:-1] if a[:-1] in special else a)
                else:
                    where = body.find(a)
                    raise DslError(f"undeclared arrow {a!r}", lineno, col + max(where, 0))
            fixed.append((tuple(new), c))
        w = Superpotential(tuple(fixed))
    return q, w, m_val


def format_terms(terms) -> str:
    parts = []
    for k, (word, c) in enumerate(terms):
        text = format_scalar(coeff(c))
        # a leading minus may be factored out unless the value has two parts
        split = text.startswith("-") and not any(ch in text[1:] for ch in "+-")
        body = text[1:] if split else text
        term = f"({' '.join(word)})" if body == "1" else f"{body}*({' '.join(word)})"
        if k == 0:
            parts.append(("-" if split else "") + term)
        else:
            parts.append(("- " if split else "+ ") + term)
    return " ".join(parts)


def print_model(q: GradedQuiver, w: Superpotential, m: int) -> str:
    """Render a model so that :func:`parse` reproduces it exactly."""
    lines = [f"m {m}"]
    if q.vertices:
        lines.append("vertex " + " ".join(q.vertices))
    for a in q.arrows:
        lines.append(f"arrow {a.name}: {a.source} -> {a.target} deg {a.degree}")
    if w.terms:
        lines.append("potential " + format_terms(w.terms))
    return "\n".join(lines) + "\n"
