"""Partial diagrams: one row of dots whose parts are labelled or unlabelled.

Labelled parts are the ones that propagate once a partial diagram is completed
to a two-row diagram.  Parts are always counted from left to right by their
leftmost dot.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .config import DEFAULT_CAPS, check_cap
from .diagrams import SetPartitionDiagram, bell_number, perfect_matchings, set_partitions
from .errors import DimensionError, MalformedPartitionError, ParseError
from .perm import Permutation

PARTITION = "partition"
BRAUER = "brauer"
ALGEBRA_NAMES = (PARTITION, BRAUER)


@dataclass(frozen=True)
class PartialDiagram:
    r: int
    parts: tuple[tuple[tuple[int, ...], bool], ...]

    def __post_init__(self):
        seen = set()
        canon = []
        for dots, labelled in self.parts:
            dots = tuple(sorted(dots))
            if not dots:
                raise MalformedPartitionError("empty part")
            for d in dots:
                if not 1 <= d <= self.r or d in seen:
                    raise MalformedPartitionError(f"dot {d} repeated or outside 1..{self.r}")
                seen.add(d)
            canon.append((dots, bool(labelled)))
        if len(seen) != self.r:
            raise MalformedPartitionError(f"parts do not cover 1..{self.r}")
        canon.sort()
        object.__setattr__(self, "parts", tuple(canon))

    @property
    def n(self) -> int:
        """Number of labelled parts."""
        return sum(1 for _, labelled in self.parts if labelled)

    def labelled_parts(self) -> list[tuple[int, ...]]:
        return [dots for dots, labelled in self.parts if labelled]

    def unlabelled_parts(self) -> list[tuple[int, ...]]:
        return [dots for dots, labelled in self.parts if not labelled]

    def part_of(self, dot: int) -> tuple[tuple[int, ...], bool]:
        for part in self.parts:
            if dot in part[0]:
                return part
        raise KeyError(dot)

    def sort_key(self) -> tuple:
        # labelled parts sort before unlabelled parts with the same dots
        return tuple((dots, 0 if labelled else 1) for dots, labelled in self.parts)

    def __lt__(self, other: "PartialDiagram") -> bool:
        return (self.r, self.sort_key()) < (other.r, other.sort_key())

    def __str__(self) -> str:
        return format_partial(self)


def format_partial(v: PartialDiagram) -> str:
    return "".join(("L" if labelled else "U") + "{" + ",".join(map(str, dots)) + "}" for dots, labelled in v.parts)


_PART_RE = re.compile(r"([LU])\{(\d+(?:,\d+)*)\}")


def parse_partial(text: str, r: int | None = None) -> PartialDiagram:
    """Parse ``L{1}L{2}U{3,4}``; ``r`` defaults to the largest dot present."""
    text = text.strip()
    pos = 0
    parts = []
    for m in _PART_RE.finditer(text):
        if m.start() != pos:
            raise ParseError(f"unexpected text at offset {pos} in {text!r}")
        pos = m.end()
        parts.append((tuple(int(x) for x in m.group(2).split(",")), m.group(1) == "L"))
    if pos != len(text) or not parts:
        raise ParseError(f"not a partial diagram: {text!r}")
    if r is None:
        r = max(max(dots) for dots, _ in parts)
    return PartialDiagram(r, tuple(parts))


def top_row(d: SetPartitionDiagram) -> PartialDiagram:
    r = d.r
    parts = []
    for b in d.blocks:
        dots = tuple(c + 1 for c in b if c < r)
        if dots:
            parts.append((dots, b[-1] >= r))
    return PartialDiagram(r, tuple(parts))


def bottom_row(d: SetPartitionDiagram) -> PartialDiagram:
    r = d.r
    parts = []
    for b in d.blocks:
        dots = tuple(c - r + 1 for c in b if c >= r)
        if dots:
            parts.append((dots, b[0] < r))
    return PartialDiagram(r, tuple(parts))


def complete(top: PartialDiagram, bottom: PartialDiagram, perm: Permutation | None = None) -> SetPartitionDiagram:
    """Two-row diagram joining the ``i``-th labelled top part to the ``perm(i)``-th labelled bottom part."""
    r = top.r
    if bottom.r != r:
        raise DimensionError("rows of different lengths")
    tl, bl = top.labelled_parts(), bottom.labelled_parts()
    if len(tl) != len(bl):
        raise DimensionError(f"{len(tl)} labelled top parts but {len(bl)} labelled bottom parts")
    perm = perm or Permutation.identity(len(tl))
    if perm.degree != len(tl):
        raise DimensionError("permutation degree differs from the number of labelled parts")
    blocks = [tuple(d - 1 for d in dots) for dots in top.unlabelled_parts()]
    blocks += [tuple(r + d - 1 for d in dots) for dots in bottom.unlabelled_parts()]
    for i, dots in enumerate(tl, start=1):
        blocks.append(tuple(d - 1 for d in dots) + tuple(r + d - 1 for d in bl[perm(i) - 1]))
    return SetPartitionDiagram.from_code_blocks(r, blocks)


def pi_of(d: SetPartitionDiagram) -> Permutation:
    """Permutation induced by the propagating parts.

    Sends ``i`` to ``j`` when the ``i``-th propagating part of the top row and
    the ``j``-th propagating part of the bottom row lie in one block, both rows
    ordered by leftmost dot.  Hence ``pi_of(perm_to_diagram(p)) == p``.
    """
    r = d.r
    prop = [b for b in d.blocks if b[0] < r <= b[-1]]
    # blocks are sorted by least (top) dot, which is the top-row order
    bottom_order = sorted(range(len(prop)), key=lambda k: min(c for c in prop[k] if c >= r))
    position = {k: j for j, k in enumerate(bottom_order, start=1)}
    return Permutation(position[k] for k in range(len(prop)))


# --- the spaces V_n and V_n^l ------------------------------------------------------


def idempotent_row(algebra: str, r: int, n: int) -> PartialDiagram:
    """Top (equivalently bottom) row of the layer idempotent ``e_n``."""
    if algebra == PARTITION:
        if not 0 <= n <= r:
            raise DimensionError(f"layer {n} outside 0..{r}")
        if n == 0:
            return PartialDiagram(r, (((tuple(range(1, r + 1))), False),) if r else ())
        parts = [((i,), True) for i in range(1, n)]
        parts.append((tuple(range(n, r + 1)), True))
        return PartialDiagram(r, tuple(parts))
    if algebra == BRAUER:
        if not 0 <= n <= r or (r - n) % 2:
            raise DimensionError(f"Brauer layer {n} invalid for r={r}")
        parts = [((i,), True) for i in range(1, n + 1)]
        parts += [((i, i + 1), False) for i in range(n + 1, r, 2)]
        return PartialDiagram(r, tuple(parts))
    raise ValueError(f"unknown algebra {algebra!r}")


def in_Vnl(v: PartialDiagram, n: int, l: int, algebra: str = PARTITION) -> bool:
    if v.n != n:
        return False
    if algebra == PARTITION:
        tail = range(max(l, 1), v.r + 1)
        if not tail:
            return True
        part = v.part_of(tail[0])[0]
        return all(d in part for d in tail)
    arcs = set(v.unlabelled_parts())
    return (
        all(len(p) == 2 for p in arcs)
        and all(len(p) == 1 for p in v.labelled_parts())
        and all((i, i + 1) in arcs for i in range(l + 1, v.r, 2))
    )


def _labelled_choices(r: int, blocks: list[tuple[int, ...]], n: int) -> Iterator[PartialDiagram]:
    for chosen in combinations(range(len(blocks)), n):
        chosen = set(chosen)
        yield PartialDiagram(r, tuple((b, i in chosen) for i, b in enumerate(blocks)))


def enumerate_Vn(r: int, n: int, algebra: str = PARTITION, cap: int | None = None) -> list[PartialDiagram]:
    """Basis of ``V_n``: all partial diagrams on ``r`` dots with exactly ``n`` labelled parts."""
    cap = DEFAULT_CAPS.basis if cap is None else cap
    out = []
    if algebra == PARTITION:
        check_cap(f"partial diagrams on {r} dots", bell_number(r) * 2**r, cap)
        for blocks in set_partitions(r):
            blocks = [tuple(d + 1 for d in b) for b in blocks]
            if len(blocks) >= n:
                out.extend(_labelled_choices(r, blocks, n))
    elif algebra == BRAUER:
        if (r - n) % 2 or n > r:
            return []
        for free in combinations(range(1, r + 1), n):
            rest = [d for d in range(1, r + 1) if d not in free]
            for matching in perfect_matchings(rest):
                parts = [((d,), True) for d in free] + [(tuple(a), False) for a in matching]
                out.append(PartialDiagram(r, tuple(parts)))
    else:
        raise ValueError(f"unknown algebra {algebra!r}")
    return sorted(out)


def enumerate_Vnl(r: int, n: int, l: int, algebra: str = PARTITION, cap: int | None = None) -> list[PartialDiagram]:
    """Sub-basis of ``V_n`` compatible with ``e_l``.

    For the partition algebra the dots ``l..r`` share a part (all dots when
    ``l = 0``); for the Brauer algebra the arcs of ``e_l`` are present.
    """
    if not 0 <= n <= l <= r:
        raise DimensionError(f"need 0 <= n <= l <= r, got n={n}, l={l}, r={r}")
    return [v for v in enumerate_Vn(r, n, algebra, cap) if in_Vnl(v, n, l, algebra)]


# --- the equivalence on V_n^l ----------------------------------------------------


@dataclass(frozen=True)
class ClassSignature:
    """Multiset of (effective size, labelled) over the parts of a partial diagram."""

    counts: tuple[tuple[tuple[int, bool], int], ...]

    def alpha(self) -> dict[int, int]:
        return {size: m for (size, labelled), m in self.counts if labelled}

    def beta(self) -> dict[int, int]:
        return {size: m for (size, labelled), m in self.counts if not labelled}

    @property
    def n(self) -> int:
        return sum(self.alpha().values())

    @property
    def total(self) -> int:
        return sum(size * m for (size, _), m in self.counts)

    def __str__(self) -> str:
        def fmt(d):
            return "{" + ",".join(f"{s}:{m}" for s, m in sorted(d.items())) + "}"

        return f"alpha={fmt(self.alpha())} beta={fmt(self.beta())}"

    def as_json_obj(self) -> dict:
        return {
            "alpha": {str(s): m for s, m in sorted(self.alpha().items())},
            "beta": {str(s): m for s, m in sorted(self.beta().items())},
        }


def effective_parts(v: PartialDiagram, l: int) -> list[tuple[tuple[int, ...], bool]]:
    """Parts restricted to ``1..l``; this contracts the dots ``l..r`` to the single dot ``l``."""
    out = []
    for dots, labelled in v.parts:
        kept = tuple(d for d in dots if d <= l)
        if kept:
            out.append((kept, labelled))
    return out


def signature(v: PartialDiagram, l: int) -> ClassSignature:
    counts = Counter((len(dots), labelled) for dots, labelled in effective_parts(v, l))
    return ClassSignature(tuple(sorted(counts.items())))


def act(v: PartialDiagram, pi: Permutation) -> PartialDiagram:
    """Bottom row of ``v`` stacked on the diagram of ``pi`` in ``Sigma_l``, ``l = pi.degree``.

    Dot ``i <= l`` moves to ``pi(i)``; the dots ``l+1..r`` stay attached to
    whichever part receives dot ``l``.
    """
    l, r = pi.degree, v.r
    if l > r:
        raise DimensionError(f"Sigma_{l} does not act on {r} dots")
    if l == 0:
        return v
    moved = []
    for dots, labelled in v.parts:
        image = [pi(d) for d in dots if d <= l]
        if not image:
            # a part inside l+1..r, so v is not in V_n^l
            raise MalformedPartitionError(f"{format_partial(v)} does not keep dots {l}..{r} in one part")
        moved.append((image, labelled))
    tail = list(range(l + 1, r + 1))
    for image, _ in moved:
        if l in image:
            image.extend(tail)
    return PartialDiagram(r, tuple((tuple(image), labelled) for image, labelled in moved))


def equivalent(v: PartialDiagram, w: PartialDiagram, l: int) -> bool:
    return v.n == w.n and signature(v, l) == signature(w, l)


def classes(r: int, n: int, l: int, algebra: str = PARTITION, cap: int | None = None) -> list[tuple[ClassSignature, PartialDiagram, int]]:
    """The classes of ``V_n^l``: (signature, least member, class size), ordered by representative."""
    groups: dict[ClassSignature, list[PartialDiagram]] = {}
    for v in enumerate_Vnl(r, n, l, algebra, cap):
        groups.setdefault(signature(v, l), []).append(v)
    out = [(sig, min(members), len(members)) for sig, members in groups.items()]
    return sorted(out, key=lambda t: t[1])


def build_dv(v: PartialDiagram, r: int, n: int, l: int, algebra: str = PARTITION) -> SetPartitionDiagram:
    """The diagram with top row ``top(e_n)``, bottom row ``v`` and trivial propagating permutation.

    With ``algebra="brauer"`` this builds the corresponding Brauer diagram
    (``v`` an arc diagram, top row the free dots and arcs of ``e_n``).
    """
    if v.r != r:
        raise DimensionError(f"partial diagram on {v.r} dots used with r={r}")
    if not in_Vnl(v, n, l, algebra):
        raise MalformedPartitionError(f"{format_partial(v)} is not in V_{n}^{l}")
    return complete(idempotent_row(algebra, r, n), v)


def iter_parts_dots(parts: Iterable[tuple[tuple[int, ...], bool]]) -> Iterator[int]:
    for dots, _ in parts:
        yield from dots
