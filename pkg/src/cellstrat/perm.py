"""Permutations, compositions and tabloids.

Products compose left to right: ``(p * q)(i) == q(p(i))``.  This is the
convention of GAP and the one under which stacking permutation diagrams
(``p`` on top of ``q``) realizes ``p * q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _permutations
from itertools import product as _product
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, ParseError


class Permutation:
    """A bijection of ``1..m`` stored as its image list."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(1, m + 1))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(1, degree + 1))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if not 1 <= a <= degree or a in seen:
                    raise ValueError(f"bad cycle {tuple(cycle)} for degree {degree}")
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a - 1] = b
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``(1 2 3)(7 9)`` or ``(1,2)``; ``()`` is the identity."""
        text = text.strip()
        if text in ("", "()", "id"):
            return cls.identity(degree)
        text = re.sub(r"\)\s+\(", ")(", text)
        if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\))+", text):
            raise ParseError(f"not cycle notation: {text!r}")
        cycles = [tuple(int(x) for x in re.split(r"[\s,]+", c.strip())) for c in re.findall(r"\(([^)]*)\)", text)]
        try:
            return cls.from_cycles(cycles, degree)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @classmethod
    def transposition(cls, a: int, b: int, degree: int) -> "Permutation":
        return cls.from_cycles([(a, b)], degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DimensionError(f"degrees differ: {self.degree} vs {other.degree}")
        o = other.images
        return Permutation(o[i - 1] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return ``by * self * by**-1``."""
        return by * self * by.inverse()

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted by that point."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self(j)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, degree={self.degree})"


def coxeter_generators(m: int) -> list[Permutation]:
    """The adjacent transpositions ``(i i+1)`` of ``Sigma_m``."""
    return [Permutation.transposition(i, i + 1, m) for i in range(1, m)]


def coxeter_word(g: Permutation) -> list[int]:
    """Indices ``a_1..a_k`` with ``s_{a_1} * ... * s_{a_k} == g``."""
    images = list(g.images)
    word = []
    # left-multiplying by s_a swaps positions a, a+1 of the image list
    changed = True
    while changed:
        changed = False
        for a in range(len(images) - 1):
            if images[a] > images[a + 1]:
                images[a], images[a + 1] = images[a + 1], images[a]
                word.append(a + 1)
                changed = True
    return word


def all_permutations(m: int) -> Iterator[Permutation]:
    for images in _permutations(range(1, m + 1)):
        yield Permutation(images)


def generate_group(generators: Sequence[Permutation], degree: int) -> set[Permutation]:
    """Breadth-first closure; only meant for small groups in checks."""
    identity = Permutation.identity(degree)
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = g * s
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


@dataclass(frozen=True)
class Composition:
    """An ordered list of positive part sizes."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if any(p <= 0 for p in self.parts):
            raise ValueError(f"composition parts must be positive: {self.parts}")

    @classmethod
    def parse(cls, text: str) -> "Composition":
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise ParseError(f"not a comma-separated composition: {text!r}") from exc

    @property
    def size(self) -> int:
        return sum(self.parts)

    def partition(self) -> tuple[int, ...]:
        return tuple(sorted(self.parts, reverse=True))

    def blocks(self) -> list[range]:
        """The consecutive point blocks ``1..p1, p1+1..p1+p2, ...``."""
        out = []
        start = 1
        for p in self.parts:
            out.append(range(start, start + p))
            start += p
        return out

    def row_of(self) -> tuple[int, ...]:
        """Row index of every point in the identity tabloid."""
        return tuple(row for row, p in enumerate(self.parts, start=1) for _ in range(p))

    def young_order(self) -> int:
        return prod(factorial(p) for p in self.parts)

    def coset_count(self) -> int:
        return factorial(self.size) // self.young_order()

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def partitions_of(n: int) -> list[tuple[int, ...]]:
    """All partitions of ``n``, in decreasing lexicographic order."""
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def young_subgroup_elements(lam: Composition) -> Iterator[Permutation]:
    """Every element of the standard Young subgroup ``Sigma_lam``."""
    blocks = [list(b) for b in lam.blocks()]
    m = lam.size
    for choice in _product(*(_permutations(b) for b in blocks)):
        images = [0] * m
        for block, perm in zip(blocks, choice):
            for a, b in zip(block, perm):
                images[a - 1] = b
        yield Permutation(images)


@dataclass(frozen=True, order=True)
class Tabloid:
    """Row assignment of ``1..l``; encodes the left coset ``g Sigma_lam``.

    The coset of ``g`` is the tabloid ``i -> row(g(i))``.  ``h`` acts by
    ``(h . T)[i] = T[h(i)]``, a left action under the product convention above.
    """

    row_of: tuple[int, ...]

    @classmethod
    def of(cls, g: Permutation, lam: Composition) -> "Tabloid":
        rows = lam.row_of()
        return cls(tuple(rows[g(i) - 1] for i in range(1, g.degree + 1)))

    def act(self, h: Permutation) -> "Tabloid":
        rows = self.row_of
        return Tabloid(tuple(rows[h(i) - 1] for i in range(1, len(rows) + 1)))

    def witness(self, lam: Composition) -> Permutation:
        """The permutation filling each row's positions in increasing order."""
        slots = [iter(b) for b in lam.blocks()]
        return Permutation(next(slots[row - 1]) for row in self.row_of)

    def fixed_by(self, g: Permutation) -> bool:
        rows = self.row_of
        return all(rows[g(i) - 1] == rows[i - 1] for i in range(1, len(rows) + 1))

    def __str__(self) -> str:
        return "".join(map(str, self.row_of)) if max(self.row_of, default=0) < 10 else ",".join(map(str, self.row_of))


def tabloids(lam: Composition) -> list[Tabloid]:
    """All ``lam``-tabloids in lexicographic order of their row vectors."""
    m = lam.size
    remaining = list(lam.parts)
    out = []
    current = []

    def rec():
        if len(current) == m:
            out.append(Tabloid(tuple(current)))
            return
        for row in range(1, len(remaining) + 1):
            if remaining[row - 1]:
                remaining[row - 1] -= 1
                current.append(row)
                rec()
                current.pop()
                remaining[row - 1] += 1

    rec()
    return out
