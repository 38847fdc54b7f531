"""Finite algebras given by exhaustive operation tables.

Table layout: the entry for the argument tuple ``(a_0, ..., a_{k-1})`` of a
k-ary operation on an n-element carrier sits at index
``sum(a_j * n**(k-1-j))``, i.e. the leftmost argument is most significant.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Mapping, Sequence, Union

from .errors import AlgebraError, SignatureMismatch
from .signature import Signature
from .terms import Term, Var, check_term

Assignment = Union[Mapping[int, int], Sequence[int]]


def table_index(args: Sequence[int], n: int) -> int:
    idx = 0
    for a in args:
        idx = idx * n + a
    return idx


def argument_tuples(n: int, k: int):
    """All k-tuples over range(n), in table order."""
    return itertools.product(range(n), repeat=k)


@dataclass(frozen=True)
class FiniteAlgebra:
    signature: Signature
    carrier: int
    tables: Mapping[str, tuple]

    def __post_init__(self):
        n = self.carrier
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise AlgebraError(f"carrier size must be a positive integer, got {n!r}")
        tables = dict(self.tables)
        extra = set(tables) - set(self.signature.names)
        if extra:
            raise AlgebraError(f"tables given for unknown symbols {sorted(extra)}")
        frozen = {}
        for name, arity in self.signature:
            if name not in tables:
                raise AlgebraError(f"missing table for symbol {name!r}")
            table = tuple(tables[name])
            if len(table) != n**arity:
                raise AlgebraError(
                    f"table for {name!r} has length {len(table)}, expected {n}**{arity} = {n**arity}"
                )
            for v in table:
                if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                    raise AlgebraError(f"table for {name!r} has entry {v!r} outside [0, {n})")
            frozen[name] = table
        object.__setattr__(self, "tables", frozen)

    def __hash__(self):
        return hash((self.signature, self.carrier, tuple(self.tables[s] for s in self.signature.names)))

    def apply(self, name: str, args: Sequence[int]) -> int:
        return self.tables[name][table_index(args, self.carrier)]

    def to_json(self) -> dict:
        return {
            "signature": self.signature.to_json(),
            "carrier": self.carrier,
            "tables": {name: list(self.tables[name]) for name in self.signature.names},
        }

    @classmethod
    def from_json(cls, data) -> FiniteAlgebra:
        if not isinstance(data, dict):
            raise AlgebraError("algebra: expected a JSON object")
        for key in ("signature", "carrier", "tables"):
            if key not in data:
                raise AlgebraError(f"algebra: missing field {key!r}")
        if not isinstance(data["tables"], dict):
            raise AlgebraError("algebra: field 'tables' must be an object")
        return cls(Signature.from_json(data["signature"]), data["carrier"], data["tables"])


def load_algebra(path) -> FiniteAlgebra:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"{path}: not valid JSON ({exc})") from exc
    return FiniteAlgebra.from_json(data)


def dump_algebra(alg: FiniteAlgebra, path) -> None:
    Path(path).write_text(json.dumps(alg.to_json()) + "\n", encoding="utf-8")


def evaluate(alg: FiniteAlgebra, t: Term, assignment: Assignment) -> int:
    """Value of ``t`` in ``alg`` when variable ``i`` takes value ``assignment[i]``."""
    tables, n = alg.tables, alg.carrier

    def go(node):
        if isinstance(node, Var):
            try:
                v = assignment[node.index]
            except (KeyError, IndexError):
                raise AlgebraError(f"assignment does not cover {node}") from None
            if not 0 <= v < n:
                raise AlgebraError(f"assignment sends {node} to {v}, outside [0, {n})")
            return v
        try:
            table = tables[node.symbol]
        except KeyError:
            raise SignatureMismatch(f"symbol {node.symbol!r} not in the algebra's signature") from None
        if len(table) != n ** len(node.args):
            raise SignatureMismatch(f"symbol {node.symbol!r} applied to {len(node.args)} arguments")
        idx = 0
        for a in node.args:
            idx = idx * n + go(a)
        return table[idx]

    return go(t)


def term_operation_table(alg: FiniteAlgebra, t: Term, basis_size: int):
    """The ``basis_size``-ary operation that ``t`` induces on ``alg``."""
    from .clone import OperationTable

    check_term(t, alg.signature, basis_size)
    values = tuple(evaluate(alg, t, a) for a in argument_tuples(alg.carrier, basis_size))
    return OperationTable(basis_size, alg.carrier, values)


def is_homomorphism(a: FiniteAlgebra, b: FiniteAlgebra, h: Sequence[int]) -> bool:
    if a.signature != b.signature:
        raise SignatureMismatch("homomorphisms need algebras of the same signature")
    for name, arity in a.signature:
        ta, tb = a.tables[name], b.tables[name]
        for i, args in enumerate(argument_tuples(a.carrier, arity)):
            if h[ta[i]] != tb[table_index([h[x] for x in args], b.carrier)]:
                return False
    return True


def enumerate_homomorphisms(a: FiniteAlgebra, b: FiniteAlgebra) -> Iterator[tuple[int, ...]]:
    """All homomorphisms ``a -> b`` as tuples ``(h(0), ..., h(n_a - 1))``.

    Backtracking over the domain in increasing order with forward
    propagation: whenever every argument of a table entry is mapped, the
    image of the entry's value is forced.  Output is in lexicographic order.
    """
    if a.signature != b.signature:
        raise SignatureMismatch("homomorphisms need algebras of the same signature")
    na, nb = a.carrier, b.carrier

    # (args, value in a, table of b); nullary and unary constraints first
    constraints = []
    for name, arity in sorted(a.signature, key=lambda s: s[1]):
        ta = a.tables[name]
        for i, args in enumerate(argument_tuples(na, arity)):
            constraints.append((args, ta[i], b.tables[name]))

    def propagate(h):
        changed = True
        while changed:
            changed = False
            for args, value, tb in constraints:
                idx = 0
                for x in args:
                    hx = h[x]
                    if hx is None:
                        break
                    idx = idx * nb + hx
                else:
                    required = tb[idx]
                    current = h[value]
                    if current is None:
                        h[value] = required
                        changed = True
                    elif current != required:
                        return False
        return True

    def search(h):
        if not propagate(h):
            return
        try:
            e = h.index(None)
        except ValueError:
            yield tuple(h)
            return
        for v in range(nb):
            trial = list(h)
            trial[e] = v
            yield from search(trial)

    yield from search([None] * na)


def projection(n: int, k: int, i: int):
    from .clone import OperationTable

    return OperationTable(k, n, tuple(args[i] for args in argument_tuples(n, k)))


def all_algebras(sig: Signature, carrier: int) -> Iterator[FiniteAlgebra]:
    """Every algebra of ``sig`` on ``range(carrier)``; exponential, desk scale only."""
    shapes = [(name, carrier**arity) for name, arity in sig]
    choices = [itertools.product(range(carrier), repeat=size) for _, size in shapes]
    for tables in itertools.product(*choices):
        yield FiniteAlgebra(sig, carrier, {name: t for (name, _), t in zip(shapes, tables)})
