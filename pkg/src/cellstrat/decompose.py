"""Decompose ``U_v (x) M^lam`` and whole layer restrictions into permutation modules of ``Sigma_n``."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial

from .config import DEFAULT_CAPS, Caps
from .errors import DimensionError, MalformedPartitionError
from .partial import PARTITION, ClassSignature, PartialDiagram, classes, in_Vnl, signature
from .perm import Composition, Permutation, Tabloid
from .symgroup import (
    StabilizerProduct,
    double_coset_reps,
    image_young,
    intersection_with_conjugate,
    labelled_component,
    stabilizer_product,
)


@dataclass(frozen=True)
class Summand:
    """One double coset ``H pi Sigma_lam`` and the Young subgroup it contributes."""

    rep: Permutation
    orbit_size: int
    least_tabloid: Tabloid
    intersection_order: int
    labelled_order: int
    nu: Composition

    @property
    def partition(self) -> tuple[int, ...]:
        return self.nu.partition()

    def index(self, n: int) -> int:
        return factorial(n) // self.nu.young_order()


@dataclass
class UvDecomposition:
    r: int
    n: int
    l: int
    v: PartialDiagram
    lam: Composition
    stabilizer_order: int
    summands: list[Summand]

    @property
    def q(self) -> int:
        return len(self.summands)

    @property
    def nus(self) -> list[Composition]:
        return [s.nu for s in self.summands]

    def partition_multiset(self) -> Counter:
        return Counter(s.partition for s in self.summands)

    @property
    def dimension(self) -> int:
        return sum(s.index(self.n) for s in self.summands)


@dataclass
class RestrictionDecomposition:
    r: int
    n: int
    l: int
    lam: Composition
    classes: dict[ClassSignature, UvDecomposition] = field(default_factory=dict)
    class_sizes: dict[ClassSignature, int] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not self.classes

    def partition_multiset(self) -> Counter:
        total = Counter()
        for uv in self.classes.values():
            total.update(uv.partition_multiset())
        return total

    @property
    def dimension(self) -> int:
        return sum(uv.dimension for uv in self.classes.values())


def _summand(H: StabilizerProduct, lam: Composition, coset, cap: int) -> Summand:
    group = intersection_with_conjugate(H, coset.rep, lam, cap)
    return Summand(
        rep=coset.rep,
        orbit_size=coset.orbit_size,
        least_tabloid=coset.least,
        intersection_order=len(group),
        labelled_order=len(labelled_component(group, H)),
        nu=image_young(group, H),
    )


def _summand_job(args):
    return _summand(*args)


def decompose_Uv(
    r: int,
    n: int,
    l: int,
    v: PartialDiagram,
    lam: Composition,
    caps: Caps | None = None,
    jobs: int = 1,
) -> UvDecomposition:
    caps = caps or DEFAULT_CAPS
    if v.r != r:
        raise DimensionError(f"partial diagram on {v.r} dots, expected {r}")
    if not 0 <= n <= l <= r:
        raise DimensionError(f"need 0 <= n <= l <= r, got n={n}, l={l}, r={r}")
    if not in_Vnl(v, n, l):
        raise MalformedPartitionError(f"{v} is not in V_{n}^{l}")
    if lam.size != l:
        raise DimensionError(f"{lam} is not a composition of {l}")
    H = stabilizer_product(v, l)
    reps = double_coset_reps(H, l, lam, caps.coset)
    work = [(H, lam, c, caps.group) for c in reps]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            summands = list(pool.map(_summand_job, work))
    else:
        summands = [_summand_job(w) for w in work]
    return UvDecomposition(r, n, l, v, lam, H.order, summands)


def decompose_restriction(
    r: int, n: int, l: int, lam: Composition, caps: Caps | None = None, jobs: int = 1
) -> RestrictionDecomposition:
    """One ``decompose_Uv`` per class of ``V_n^l``, using the least member as representative."""
    caps = caps or DEFAULT_CAPS
    if lam.size != l:
        raise DimensionError(f"{lam} is not a composition of {l}")
    out = RestrictionDecomposition(r, n, l, lam)
    if n > l:
        return out
    for sig, rep, size in classes(r, n, l, PARTITION, caps.basis):
        out.classes[sig] = decompose_Uv(r, n, l, rep, lam, caps, jobs)
        out.class_sizes[sig] = size
    return out


def same_class(v: PartialDiagram, w: PartialDiagram, l: int) -> bool:
    return signature(v, l) == signature(w, l)
