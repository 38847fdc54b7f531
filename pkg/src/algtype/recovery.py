"""Recovering an algebra type from category-level data.

Everything in the pipeline below :class:`FreeAlgebraOracle` sees only
opaque element handles of a finite fragment of a free algebra F(X) and
four questions about them: is it a basis element, which handles exist,
does some endomorphism of F carry one handle onto another, and is the
induced X-ary operation already determined by a given set of basis
coordinates.  Nothing else about the underlying terms leaks through.

From those answers the pipeline partitions the non-basis elements Y into
the classes of the equivalence generated by "maps onto", picks in each
class an element mapping onto all the others, and reads off the essential
rank of its operation.  The multiset of those ranks is the arity multiset
of the type, up to renaming of symbols.
"""

from __future__ import annotations

import abc
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import NoGeneralRepresentative
from .signature import Signature, are_equivalent
from .terms import DEFAULT_TERM_CAP, Term, Var, enumerate_terms, match, vars_of

Handle = int


class FreeAlgebraOracle(abc.ABC):
    """Opaque view of a bounded fragment of a free algebra."""

    @abc.abstractmethod
    def elements(self) -> list[Handle]:
        """All handles of the fragment, in ascending handle order."""

    @abc.abstractmethod
    def is_basis_element(self, h: Handle) -> bool: ...

    @abc.abstractmethod
    def maps_onto(self, h1: Handle, h2: Handle) -> bool:
        """Does some endomorphism of the free algebra send ``h1`` to ``h2``?"""

    @abc.abstractmethod
    def depends_only_on(self, h: Handle, coords: Iterable[Handle]) -> bool:
        """Do assignments agreeing on the basis handles ``coords`` give ``h`` equal values?"""

    def basis(self) -> list[Handle]:
        return [h for h in self.elements() if self.is_basis_element(h)]

    def non_basis(self) -> list[Handle]:
        return [h for h in self.elements() if not self.is_basis_element(h)]


class TermFragmentOracle(FreeAlgebraOracle):
    """Oracle backed by a list of terms over a basis of ``basis_size`` variables.

    Handles are positions in ``terms`` unless ``handles`` relabels them.
    The ``term`` method exists for tests that peek behind the barrier;
    recovery code never calls it.
    """

    def __init__(self, terms: Sequence[Term], basis_size: int, handles: Optional[Sequence[int]] = None):
        if handles is None:
            handles = range(len(terms))
        if len(handles) != len(terms) or len(set(handles)) != len(terms):
            raise ValueError("handles must be distinct, one per term")
        self.basis_size = basis_size
        self._terms = {h: t for h, t in zip(handles, terms)}
        self._vars = {h: vars_of(t) for h, t in self._terms.items()}
        self._heads = {h: getattr(t, "symbol", None) for h, t in self._terms.items()}
        self._var_handle = {t.index: h for h, t in self._terms.items() if isinstance(t, Var)}
        self._order = sorted(self._terms)

    @classmethod
    def shuffled(cls, terms: Sequence[Term], basis_size: int, seed: int) -> TermFragmentOracle:
        handles = list(range(len(terms)))
        random.Random(seed).shuffle(handles)
        return cls(terms, basis_size, handles)

    def elements(self) -> list[Handle]:
        return list(self._order)

    def is_basis_element(self, h: Handle) -> bool:
        return isinstance(self._terms[h], Var)

    def maps_onto(self, h1: Handle, h2: Handle) -> bool:
        if h1 == h2:
            return True
        head1 = self._heads[h1]
        if head1 is not None and head1 != self._heads[h2]:
            return False
        return match(self._terms[h1], self._terms[h2]) is not None

    def depends_only_on(self, h: Handle, coords: Iterable[Handle]) -> bool:
        allowed = set()
        for c in coords:
            t = self._terms[c]
            if not isinstance(t, Var):
                raise ValueError(f"handle {c} is not a basis element")
            allowed.add(t.index)
        return self._vars[h] <= allowed

    def term(self, h: Handle) -> Term:
        return self._terms[h]

    def __len__(self):
        return len(self._terms)


def build_fragment(
    sig: Signature, basis_size: int, depth: int, cap: int = DEFAULT_TERM_CAP
) -> TermFragmentOracle:
    """Oracle over every term of depth at most ``depth`` on ``basis_size`` variables."""
    if depth < 1:
        raise ValueError("depth must be at least 1 so that every symbol is witnessed")
    return TermFragmentOracle(enumerate_terms(sig, basis_size, depth, cap), basis_size)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller handle becomes the root
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


@dataclass(frozen=True)
class SClasses:
    """Partition of the non-basis handles, each class sorted, classes by first handle."""

    classes: tuple[tuple[Handle, ...], ...]

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def class_of(self, h: Handle) -> tuple[Handle, ...]:
        for cls in self.classes:
            if h in cls:
                return cls
        raise KeyError(h)


def compute_classes(o: FreeAlgebraOracle) -> SClasses:
    """Connected components of the symmetric closure of "maps onto" on Y.

    Every pair of non-basis handles is considered; pairs already known to
    share a component are not queried again.
    """
    ys = o.non_basis()
    uf = _UnionFind(ys)
    for j, y2 in enumerate(ys):
        for y1 in ys[:j]:
            if uf.find(y1) == uf.find(y2):
                continue
            if o.maps_onto(y1, y2) or o.maps_onto(y2, y1):
                uf.union(y1, y2)
    groups: dict[Handle, list[Handle]] = {}
    for y in ys:
        groups.setdefault(uf.find(y), []).append(y)
    return SClasses(tuple(tuple(g) for g in sorted(groups.values(), key=lambda g: g[0])))


def most_general_representative(o: FreeAlgebraOracle, cls: Sequence[Handle]) -> Handle:
    """First handle of ``cls`` that maps onto every member of ``cls``."""
    if not cls:
        raise ValueError("empty class")
    members = sorted(cls)
    for y in members:
        if all(o.maps_onto(y, z) for z in members):
            return y
    raise NoGeneralRepresentative(
        f"no element of a class of size {len(members)} maps onto all of it; enlarge the basis or depth"
    )


def representative_essential_rank(o: FreeAlgebraOracle, y: Handle) -> int:
    """Size of the least set of basis coordinates the operation of ``y`` depends on.

    Drops coordinates one at a time; this finds the minimum because the
    family of sufficient coordinate sets is closed under intersection.
    """
    coords = o.basis()
    for x in list(coords):
        trial = [c for c in coords if c != x]
        if o.depends_only_on(y, trial):
            coords = trial
    return len(coords)


@dataclass(frozen=True)
class ClassWitness:
    representative: Handle
    rank: int
    size: int


@dataclass(frozen=True)
class RecoveredType:
    arities: tuple[int, ...]  # sorted ascending
    witnesses: tuple[ClassWitness, ...]
    basis_size: int
    depth: int

    @property
    def multiset(self) -> Counter:
        return Counter(self.arities)

    def as_signature(self, prefix: str = "op") -> Signature:
        return Signature(tuple((f"{prefix}{i}", a) for i, a in enumerate(self.arities)))

    def to_json(self) -> dict:
        return {
            "arities": list(self.arities),
            "basis": self.basis_size,
            "depth": self.depth,
            "classes": [{"size": w.size, "rank": w.rank} for w in self.witnesses],
        }


def analyse_fragment(o: FreeAlgebraOracle) -> list[ClassWitness]:
    """Classes, representatives and ranks of one fragment."""
    witnesses = []
    for cls in compute_classes(o):
        rep = most_general_representative(o, cls)
        witnesses.append(ClassWitness(rep, representative_essential_rank(o, rep), len(cls)))
    return witnesses


def recover_from_oracles(make_oracle, depth: int) -> RecoveredType:
    """Adaptive recovery given ``make_oracle(basis_size)``.

    Starts from a one-element basis and doubles it while some class lacks
    a most general element or some representative uses every basis
    variable (then the basis may be too small to show its true rank).
    """
    basis_size = 1
    while True:
        o = make_oracle(basis_size)
        try:
            witnesses = analyse_fragment(o)
        except NoGeneralRepresentative:
            basis_size *= 2
            continue
        if any(w.rank >= basis_size for w in witnesses):
            basis_size *= 2
            continue
        arities = tuple(sorted(w.rank for w in witnesses))
        return RecoveredType(arities, tuple(witnesses), basis_size, depth)


def recover_type(sig: Signature, depth: int, cap: int = DEFAULT_TERM_CAP) -> RecoveredType:
    """Recover the arity multiset of ``sig`` through fragment oracles only."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    return recover_from_oracles(lambda m: build_fragment(sig, m, depth, cap), depth)


def recover_at(sig: Signature, basis_size: int, depth: int, cap: int = DEFAULT_TERM_CAP) -> RecoveredType:
    """Single, non-adaptive run at a fixed basis size."""
    witnesses = analyse_fragment(build_fragment(sig, basis_size, depth, cap))
    return RecoveredType(tuple(sorted(w.rank for w in witnesses)), tuple(witnesses), basis_size, depth)


def verify_roundtrip(sig: Signature, depth: int, cap: int = DEFAULT_TERM_CAP) -> bool:
    return are_equivalent(sig, recover_type(sig, depth, cap).as_signature())
