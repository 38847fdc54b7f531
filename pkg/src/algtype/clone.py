"""Operations as value tables: supports, essential rank, clone fragments.

An ``OperationTable`` stores a k-ary operation on ``range(n)`` using the
same index convention as :mod:`algtype.finalg` (leftmost argument most
significant), so ``table.array`` reshapes it into an ``(n,) * k`` array
whose axis ``i`` is argument ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import AlgebraError
from .finalg import FiniteAlgebra, argument_tuples
from .signature import Signature
from .terms import DEFAULT_TERM_CAP, Term, Var, enumerate_terms


@dataclass(frozen=True)
class OperationTable:
    arity: int
    carrier: int
    table: tuple

    def __post_init__(self):
        if self.carrier < 1:
            raise AlgebraError("operation tables need a nonempty carrier")
        if self.arity < 0:
            raise AlgebraError("arity must be nonnegative")
        table = tuple(int(v) for v in self.table)
        if len(table) != self.carrier**self.arity:
            raise AlgebraError(
                f"table has length {len(table)}, expected {self.carrier}**{self.arity}"
            )
        if any(not 0 <= v < self.carrier for v in table):
            raise AlgebraError(f"table entries must lie in [0, {self.carrier})")
        object.__setattr__(self, "table", table)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64).reshape((self.carrier,) * self.arity)

    def __call__(self, *args: int) -> int:
        idx = 0
        for a in args:
            idx = idx * self.carrier + a
        return self.table[idx]

    @classmethod
    def from_function(cls, arity: int, carrier: int, fn) -> OperationTable:
        return cls(arity, carrier, tuple(fn(*args) for args in argument_tuples(carrier, arity)))

    @classmethod
    def of_symbol(cls, alg: FiniteAlgebra, name: str) -> OperationTable:
        return cls(alg.signature.arity(name), alg.carrier, alg.tables[name])


def is_support(op: OperationTable, subset: Iterable[int]) -> bool:
    """True iff the value of ``op`` is determined by the coordinates in ``subset``."""
    subset = set(subset)
    if not subset <= set(range(op.arity)):
        raise ValueError(f"coordinates {sorted(subset)} not within arity {op.arity}")
    arr = op.array
    free = tuple(i for i in range(op.arity) if i not in subset)
    if not free:
        return True
    # constant along every free axis <=> equal to its slice at 0 on those axes
    pinned = arr[tuple(slice(0, 1) if i in free else slice(None) for i in range(op.arity))]
    return bool(np.all(arr == pinned))


def essential_coordinates(op: OperationTable) -> frozenset[int]:
    """Coordinates where changing one argument can change the value."""
    arr = op.array
    return frozenset(
        i for i in range(op.arity) if np.any(arr != arr.take([0], axis=i))
    )


def minimal_support(op: OperationTable) -> frozenset[int]:
    """The least support of ``op``: its set of essential coordinates.

    Over a nonempty carrier the supports are closed under intersection, so
    the essential coordinates form a support contained in every other one.
    """
    return essential_coordinates(op)


def essential_rank(op: OperationTable) -> int:
    return len(minimal_support(op))


@dataclass(frozen=True)
class RankEstimate:
    """Rank of an absolutely free class: a finite number or countably infinite."""

    value: Optional[int]

    @classmethod
    def finite(cls, value: int) -> RankEstimate:
        return cls(value)

    @classmethod
    def countably_infinite(cls) -> RankEstimate:
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def to_json(self):
        return self.value if self.is_finite else "countably-infinite"

    def __str__(self):
        return str(self.to_json())


def variety_rank_estimate(sig: Signature) -> RankEstimate:
    """Supremum of essential ranks of the term operations of type ``sig``.

    A term's operation on the term algebra depends on exactly its
    variables; unary symbols only ever chain one variable, while any
    symbol of arity two or more nests arbitrarily many distinct ones.
    """
    top = sig.max_arity
    if top >= 2:
        return RankEstimate.countably_infinite()
    return RankEstimate.finite(top)


@dataclass(frozen=True)
class CloneFragment:
    basis_size: int
    depth: int
    entries: tuple = field(default_factory=tuple)  # (OperationTable, Term) pairs

    @property
    def tables(self) -> list[OperationTable]:
        return [op for op, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def term_for(self, op: OperationTable) -> Optional[Term]:
        for table, term in self.entries:
            if table == op:
                return term
        return None


def compose_tables(outer: OperationTable, inner: list[OperationTable]) -> OperationTable:
    """Pointwise composition ``outer(inner_0, ..., inner_{k-1})``."""
    if len(inner) != outer.arity:
        raise ValueError(f"need {outer.arity} inner tables, got {len(inner)}")
    n = outer.carrier
    if not inner:
        raise ValueError("composition of a nullary table needs an explicit arity")
    m = inner[0].arity
    idx = np.zeros(n**m, dtype=np.int64)
    for op in inner:
        idx = idx * n + np.asarray(op.table, dtype=np.int64)
    values = np.asarray(outer.table, dtype=np.int64)[idx]
    return OperationTable(m, n, tuple(values.tolist()))


def constant_table(n: int, m: int, value: int) -> OperationTable:
    return OperationTable(m, n, (value,) * n**m)


def generate_clone_fragment(
    alg: FiniteAlgebra, basis_size: int, max_depth: int, cap: int = DEFAULT_TERM_CAP
) -> CloneFragment:
    """Distinct term operations of ``alg`` from terms of depth at most ``max_depth``.

    Each table keeps the first term (in enumeration order) that produced it.
    Tables are computed by composing the tables of the argument terms rather
    than re-evaluating every term.
    """
    terms = enumerate_terms(alg.signature, basis_size, max_depth, cap)
    n = alg.carrier
    cache: dict[Term, OperationTable] = {}
    seen: dict[OperationTable, Term] = {}
    for t in terms:
        if isinstance(t, Var):
            op = OperationTable(basis_size, n, tuple(a[t.index] for a in argument_tuples(n, basis_size)))
        elif not t.args:
            op = constant_table(n, basis_size, alg.tables[t.symbol][0])
        else:
            op = compose_tables(
                OperationTable.of_symbol(alg, t.symbol), [cache[a] for a in t.args]
            )
        cache[t] = op
        seen.setdefault(op, t)
    return CloneFragment(basis_size, max_depth, tuple(seen.items()))

