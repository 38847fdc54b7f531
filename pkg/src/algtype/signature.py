"""Algebra types: finite families of operation symbols with finite arities."""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import SignatureError

# names must not collide with variable tokens or the s-expression delimiters
_NAME_RE = re.compile(r"^[^\s()]+$")
VARIABLE_RE = re.compile(r"^x(0|[1-9][0-9]*)$")


@dataclass(frozen=True)
class Signature:
    """An ordered family of ``(name, arity)`` pairs.

    >>> sig = Signature.from_pairs([("f", 2), ("c", 0)])
    >>> sig.arity("f")
    2
    """

    symbols: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        symbols = tuple((str(name), arity) for name, arity in self.symbols)
        seen = set()
        for name, arity in symbols:
            if not _NAME_RE.match(name) or VARIABLE_RE.match(name):
                raise SignatureError(f"invalid symbol name {name!r}")
            if isinstance(arity, bool) or not isinstance(arity, int) or arity < 0:
                raise SignatureError(f"arity of {name!r} must be a nonnegative integer, got {arity!r}")
            if name in seen:
                raise SignatureError(f"duplicate symbol name {name!r}")
            seen.add(name)
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_arities", dict(symbols))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> Signature:
        return cls(tuple(pairs))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, int]) -> Signature:
        return cls(tuple(mapping.items()))

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, name) -> bool:
        return name in self._arities

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def arity(self, name: str) -> int:
        try:
            return self._arities[name]
        except KeyError:
            raise SignatureError(f"unknown symbol {name!r}") from None

    @property
    def max_arity(self) -> int:
        return max((a for _, a in self.symbols), default=0)

    def renamed(self, mapping: Mapping[str, str]) -> Signature:
        return Signature(tuple((mapping.get(n, n), a) for n, a in self.symbols))

    def to_json(self) -> dict:
        return {"symbols": [{"name": n, "arity": a} for n, a in self.symbols]}

    @classmethod
    def from_json(cls, data) -> Signature:
        if not isinstance(data, dict) or "symbols" not in data:
            raise SignatureError("signature: missing field 'symbols'")
        entries = data["symbols"]
        if not isinstance(entries, list):
            raise SignatureError("signature: field 'symbols' must be a list")
        pairs = []
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict) or "name" not in entry or "arity" not in entry:
                raise SignatureError(f"signature: symbols[{i}] needs fields 'name' and 'arity'")
            if not isinstance(entry["name"], str):
                raise SignatureError(f"signature: symbols[{i}].name must be text")
            pairs.append((entry["name"], entry["arity"]))
        return cls(tuple(pairs))

    def __str__(self):
        return "{" + ", ".join(f"{n}:{a}" for n, a in self.symbols) + "}"


def load_signature(path) -> Signature:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SignatureError(f"{path}: not valid JSON ({exc})") from exc
    return Signature.from_json(data)


def dump_signature(sig: Signature, path) -> None:
    Path(path).write_text(json.dumps(sig.to_json(), indent=2) + "\n", encoding="utf-8")


def arity_multiset(sig: Signature) -> Counter:
    """One entry per symbol, counting arities."""
    return Counter(arity for _, arity in sig.symbols)


def are_equivalent(a: Signature, b: Signature) -> bool:
    """True iff some bijection of symbols preserves arities."""
    return arity_multiset(a) == arity_multiset(b)
