"""Partition-algebra diagrams and their linear combinations.

A diagram on ``r`` dots per row is a set partition of the top dots ``1..r``
and the bottom dots ``1'..r'``.  Internally a dot is an integer code: top dot
``k`` is ``k - 1`` and bottom dot ``k'`` is ``r + k - 1``, so sorting codes
gives the canonical order top-1 < ... < top-r < bottom-1 < ... < bottom-r.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import prod
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .config import DEFAULT_CAPS, check_cap
from .errors import DimensionError, MalformedPartitionError, ParseError, SingularParameterError
from .perm import Permutation

TOP = "top"
BOTTOM = "bottom"


class Dot(NamedTuple):
    row: str
    index: int

    def code(self, r: int) -> int:
        if self.row not in (TOP, BOTTOM):
            raise MalformedPartitionError(f"unknown row {self.row!r}")
        if not 1 <= self.index <= r:
            raise MalformedPartitionError(f"dot index {self.index} outside 1..{r}")
        return self.index - 1 if self.row == TOP else r + self.index - 1

    @classmethod
    def from_code(cls, code: int, r: int) -> "Dot":
        return cls(TOP, code + 1) if code < r else cls(BOTTOM, code - r + 1)

    def __str__(self) -> str:
        return f"{self.index}" if self.row == TOP else f"{self.index}'"


def _find(parent: list[int], a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def _union(parent: list[int], a: int, b: int) -> None:
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        if ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb


class SetPartitionDiagram:
    """An immutable set partition of ``2r`` dots in canonical form."""

    __slots__ = ("r", "blocks", "_hash")

    def __init__(self, r: int, blocks: tuple[tuple[int, ...], ...]):
        # trusted constructor: blocks must already be canonical codes
        self.r = r
        self.blocks = blocks
        self._hash = hash((r, blocks))

    @classmethod
    def from_code_blocks(cls, r: int, blocks: Iterable[Iterable[int]]) -> "SetPartitionDiagram":
        canon = []
        seen = set()
        for block in blocks:
            block = tuple(sorted(set(block)))
            if not block:
                raise MalformedPartitionError("empty block")
            for c in block:
                if not 0 <= c < 2 * r:
                    raise MalformedPartitionError(f"dot code {c} outside the {2 * r} dots")
                if c in seen:
                    raise MalformedPartitionError(f"dot {Dot.from_code(c, r)} appears in two blocks")
                seen.add(c)
            canon.append(block)
        if len(seen) != 2 * r:
            missing = sorted(set(range(2 * r)) - seen)
            raise MalformedPartitionError("missing dots: " + ",".join(str(Dot.from_code(c, r)) for c in missing))
        canon.sort()
        return cls(r, tuple(canon))

    @classmethod
    def from_connections(cls, r: int, edges: Iterable[tuple[int, int]]) -> "SetPartitionDiagram":
        """Diagram whose blocks are the connected components of ``edges`` (dot codes)."""
        parent = list(range(2 * r))
        for a, b in edges:
            _union(parent, a, b)
        groups: dict[int, list[int]] = {}
        for node in range(2 * r):
            groups.setdefault(_find(parent, node), []).append(node)
        return cls(r, tuple(sorted(tuple(g) for g in groups.values())))

    @classmethod
    def identity(cls, r: int) -> "SetPartitionDiagram":
        return cls(r, tuple((k, r + k) for k in range(r)))

    def dots(self, block: Sequence[int]) -> tuple[Dot, ...]:
        return tuple(Dot.from_code(c, self.r) for c in block)

    def block_index(self) -> list[int]:
        """For every dot code, the index of its block."""
        out = [0] * (2 * self.r)
        for i, block in enumerate(self.blocks):
            for c in block:
                out[c] = i
        return out

    def is_propagating(self, block: Sequence[int]) -> bool:
        return block[0] < self.r <= block[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, SetPartitionDiagram) and self.r == other.r and self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "SetPartitionDiagram") -> bool:
        return (self.r, self.blocks) < (other.r, other.blocks)

    def __str__(self) -> str:
        return format_diagram(self)

    def __repr__(self) -> str:
        return f"SetPartitionDiagram(r={self.r}, {format_diagram(self)!r})"


def normalize(r: int, raw_blocks: Iterable[Iterable]) -> SetPartitionDiagram:
    """Canonical diagram from blocks of :class:`Dot` values (or ``(row, index)`` pairs)."""
    if r < 0:
        raise MalformedPartitionError(f"negative size r={r}")
    code_blocks = []
    for block in raw_blocks:
        codes = []
        for dot in block:
            if isinstance(dot, int):
                raise MalformedPartitionError("use Dot values, not bare integers")
            codes.append(Dot(*dot).code(r))
        if len(set(codes)) != len(codes):
            raise MalformedPartitionError("a dot is repeated within a block")
        code_blocks.append(codes)
    return SetPartitionDiagram.from_code_blocks(r, code_blocks)


def multiply_diagrams(x: SetPartitionDiagram, y: SetPartitionDiagram) -> tuple[SetPartitionDiagram, int]:
    """Stack ``x`` above ``y``; return the outer diagram and the number of inner loops."""
    r = x.r
    if y.r != r:
        raise DimensionError(f"cannot multiply P({x.r}) by P({y.r})")
    # nodes: 0..r-1 top of x, r..2r-1 middle row, 2r..3r-1 bottom of y
    parent = list(range(3 * r))
    for block in x.blocks:
        first = block[0]
        for c in block[1:]:
            _union(parent, first, c)
    for block in y.blocks:
        first = block[0] + r
        for c in block[1:]:
            _union(parent, first, c + r)
    groups: dict[int, list[int]] = {}
    for node in range(r):
        root = _find(parent, node)
        groups.setdefault(root, []).append(node)
    for node in range(2 * r, 3 * r):
        root = _find(parent, node)
        groups.setdefault(root, []).append(node - r)
    outer_roots = set(groups)
    middle_roots = {_find(parent, node) for node in range(r, 2 * r)}
    loops = len(middle_roots - outer_roots)
    product = SetPartitionDiagram(r, tuple(sorted(tuple(g) for g in groups.values())))
    return product, loops


def propagating_number(d: SetPartitionDiagram) -> int:
    r = d.r
    return sum(1 for b in d.blocks if b[0] < r <= b[-1])


def is_brauer(d: SetPartitionDiagram) -> bool:
    return all(len(b) == 2 for b in d.blocks)


def perm_to_diagram(pi: Permutation) -> SetPartitionDiagram:
    """Top dot ``i`` joined to bottom dot ``pi(i)'``."""
    r = pi.degree
    return SetPartitionDiagram(r, tuple((i - 1, r + pi(i) - 1) for i in range(1, r + 1)))


def embed_permutation(pi: Permutation, r: int) -> SetPartitionDiagram:
    """Image of ``pi`` in ``Sigma_l`` inside ``P(r)``, ``l = pi.degree >= 1``.

    The dots ``l+1..r`` of each row are attached to the ``l``-th dot of that row.
    """
    l = pi.degree
    if not 1 <= l <= r:
        raise DimensionError(f"cannot embed Sigma_{l} into P({r})")
    edges = [(i - 1, r + pi(i) - 1) for i in range(1, l + 1)]
    edges += [(l - 1, k) for k in range(l, r)]
    edges += [(r + l - 1, r + k) for k in range(l, r)]
    return SetPartitionDiagram.from_connections(r, edges)


# --- enumeration ----------------------------------------------------------------


def bell_number(m: int) -> int:
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def double_factorial_odd(m: int) -> int:
    """Number of perfect matchings of ``2m`` points, ``(2m-1)!!``."""
    return prod(range(1, 2 * m, 2))


def basis_size(r: int, brauer_only: bool = False) -> int:
    return double_factorial_odd(r) if brauer_only else bell_number(2 * r)


def set_partitions(points: int) -> Iterator[list[list[int]]]:
    """Set partitions of ``0..points-1`` by restricted growth strings, lexicographically."""
    if points == 0:
        yield []
        return
    rgs = [0] * points

    def rec(i, maximum):
        if i == points:
            blocks: list[list[int]] = [[] for _ in range(maximum + 1)]
            for p, b in enumerate(rgs):
                blocks[b].append(p)
            yield blocks
            return
        for b in range(maximum + 2):
            rgs[i] = b
            yield from rec(i + 1, max(maximum, b))

    rgs[0] = 0
    yield from rec(1, 0)


def perfect_matchings(points: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1:]
        for m in perfect_matchings(remaining):
            yield [(first, partner)] + m


def enumerate_basis(r: int, brauer_only: bool = False, cap: int | None = None) -> list[SetPartitionDiagram]:
    """All partition diagrams (or Brauer diagrams) of ``P(r)`` in a fixed order."""
    cap = DEFAULT_CAPS.basis if cap is None else cap
    check_cap(f"basis of {'B' if brauer_only else 'P'}({r})", basis_size(r, brauer_only), cap)
    if brauer_only:
        return [SetPartitionDiagram(r, tuple(sorted(m))) for m in perfect_matchings(list(range(2 * r)))]
    return [SetPartitionDiagram(r, tuple(tuple(b) for b in blocks)) for blocks in set_partitions(2 * r)]


# --- text format ----------------------------------------------------------------

_BLOCK_RE = re.compile(r"\{([^{}]*)\}")
_DOT_RE = re.compile(r"(\d+)('?)")


def format_diagram(d: SetPartitionDiagram) -> str:
    return "".join("{" + ",".join(str(Dot.from_code(c, d.r)) for c in b) + "}" for b in d.blocks)


def parse_diagram(text: str, r: int | None = None) -> SetPartitionDiagram:
    """Parse ``{1,2'}{2,1',3'}...``; ``r`` defaults to the largest index present."""
    text = text.strip()
    pos = 0
    raw = []
    for m in _BLOCK_RE.finditer(text):
        if m.start() != pos:
            raise ParseError(f"unexpected text at offset {pos} in {text!r}")
        pos = m.end()
        items = m.group(1).split(",") if m.group(1) else []
        block = []
        for item in items:
            dm = _DOT_RE.fullmatch(item)
            if not dm:
                raise ParseError(f"bad dot {item!r} in {text!r}")
            block.append(Dot(BOTTOM if dm.group(2) else TOP, int(dm.group(1))))
        if not block:
            raise MalformedPartitionError("empty block")
        raw.append(block)
    if pos != len(text) or not raw:
        raise ParseError(f"not a diagram: {text!r}")
    if r is None:
        r = max(dot.index for block in raw for dot in block)
    return normalize(r, raw)


# --- coefficients ---------------------------------------------------------------


class DeltaPoly:
    """Laurent polynomial in delta with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, coefficients: Mapping[int, object] | None = None):
        items = []
        for exp, c in (coefficients or {}).items():
            c = Fraction(c)
            if c:
                items.append((int(exp), c))
        self.terms = tuple(sorted(items))
        self._hash = hash(self.terms)

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "DeltaPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, value) -> "DeltaPoly":
        return cls({0: value})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other) -> "DeltaPoly":
        other = _as_poly(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return DeltaPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "DeltaPoly":
        return DeltaPoly({e: -c for e, c in self.terms})

    def __sub__(self, other) -> "DeltaPoly":
        return self + (-_as_poly(other))

    def __mul__(self, other) -> "DeltaPoly":
        other = _as_poly(other)
        acc: dict[int, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return DeltaPoly(acc)

    __rmul__ = __mul__

    def shift(self, k: int) -> "DeltaPoly":
        """Multiply by ``delta**k``."""
        return DeltaPoly({e + k: c for e, c in self.terms}) if k else self

    def specialize(self, value) -> Fraction:
        value = Fraction(value)
        total = Fraction(0)
        for e, c in self.terms:
            if e < 0 and value == 0:
                raise SingularParameterError(f"delta^{e} is undefined at delta = 0")
            total += c * value**e
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DeltaPoly.constant(other)
        return isinstance(other, DeltaPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in sorted(self.terms, key=lambda t: -t[0]):
            if e == 0:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(f"δ^{e}")
            else:
                pieces.append(f"{c}*δ^{e}")
        return pieces[0] if len(pieces) == 1 else "(" + " + ".join(pieces) + ")"

    def __repr__(self) -> str:
        return f"DeltaPoly({self.as_dict()!r})"


def _as_poly(x) -> DeltaPoly:
    if isinstance(x, DeltaPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return DeltaPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a delta coefficient")


# --- algebra elements -----------------------------------------------------------


class AlgebraElement:
    """Finite linear combination of diagrams of ``P(r)`` with :class:`DeltaPoly` coefficients."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Mapping[SetPartitionDiagram, object] | None = None):
        self.r = r
        clean = {}
        for d, c in (terms or {}).items():
            if d.r != r:
                raise DimensionError(f"diagram of P({d.r}) in an element of P({r})")
            c = _as_poly(c)
            if c:
                clean[d] = c
        self.terms = clean

    @classmethod
    def from_diagram(cls, d: SetPartitionDiagram, coeff=1) -> "AlgebraElement":
        return cls(d.r, {d: coeff})

    @classmethod
    def zero(cls, r: int) -> "AlgebraElement":
        return cls(r)

    @classmethod
    def one(cls, r: int) -> "AlgebraElement":
        return cls.from_diagram(SetPartitionDiagram.identity(r))

    def support(self) -> list[SetPartitionDiagram]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "AlgebraElement") -> None:
        if other.r != self.r:
            raise DimensionError(f"elements of P({self.r}) and P({other.r})")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        acc = dict(self.terms)
        for d, c in other.terms.items():
            acc[d] = acc[d] + c if d in acc else c
        return AlgebraElement(self.r, acc)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.r, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = _as_poly(c)
        return AlgebraElement(self.r, {d: k * c for d, k in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def specialize(self, value) -> "AlgebraElement":
        """Evaluate every coefficient at ``delta = value``."""
        return AlgebraElement(self.r, {d: c.specialize(value) for d, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.r == other.r and self.terms == other.terms

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{self.terms[d]} * {format_diagram(d)}" for d in self.support())

    def __repr__(self) -> str:
        return f"AlgebraElement(r={self.r}, {str(self)!r})"

    def to_json_obj(self) -> dict:
        return {
            "r": self.r,
            "terms": [
                {
                    "diagram": format_diagram(d),
                    "coeff": {str(e): f"{c.numerator}/{c.denominator}" for e, c in self.terms[d].terms},
                }
                for d in self.support()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), ensure_ascii=False)

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "AlgebraElement":
        r = int(obj["r"])
        acc: dict[SetPartitionDiagram, DeltaPoly] = {}
        for term in obj["terms"]:
            d = parse_diagram(term["diagram"], r)
            coeff = DeltaPoly({int(e.replace("−", "-")): Fraction(v) for e, v in term["coeff"].items()})
            acc[d] = acc[d] + coeff if d in acc else coeff
        return cls(r, acc)

    @classmethod
    def from_json(cls, text: str) -> "AlgebraElement":
        return cls.from_json_obj(json.loads(text))


def multiply(x: AlgebraElement, y: AlgebraElement, delta=None) -> AlgebraElement:
    """Bilinear product; each inner loop contributes one factor of delta.

    With ``delta`` given the result is specialized at that value.
    """
    x._check(y)
    acc: dict[SetPartitionDiagram, DeltaPoly] = {}
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            d, loops = multiply_diagrams(dx, dy)
            c = (cx * cy).shift(loops)
            acc[d] = acc[d] + c if d in acc else c
    out = AlgebraElement(x.r, acc)
    return out if delta is None else out.specialize(delta)
