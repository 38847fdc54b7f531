"""The absolutely free algebra F(X) as a term algebra.

Terms are immutable trees of :class:`Var` and :class:`App` nodes.
Substitutions are total on the basis (identity outside their explicit
entries), so each one is an endomorphism of F(X).  Matching is one-way:
``match(p, t)`` finds a substitution carrying ``p`` onto ``t``.

The text syntax is parenthesized prefix form::

    (f x0 (g c))

with variables written ``x<i>`` and nullary symbols written bare.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

from .errors import EnumerationCapExceeded, SignatureMismatch, TermSyntaxError
from .signature import VARIABLE_RE, Signature

DEFAULT_TERM_CAP = 100_000


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    @property
    def depth(self) -> int:
        return 0

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True, slots=True)
class App:
    symbol: str
    args: tuple = ()

    @property
    def depth(self) -> int:
        if not self.args:
            return 0
        return 1 + max(a.depth for a in self.args)

    def __str__(self):
        if not self.args:
            return self.symbol
        return "(" + " ".join([self.symbol, *map(str, self.args)]) + ")"


Term = Union[Var, App]


def app(symbol: str, *args: Term) -> App:
    return App(symbol, tuple(args))


def depth(t: Term) -> int:
    return t.depth


def head(t: Term) -> Optional[str]:
    """The outermost symbol of ``t``, or None for a variable."""
    return t.symbol if isinstance(t, App) else None


def vars_of(t: Term) -> frozenset[int]:
    """Indices of the variables occurring in ``t``."""
    found = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            found.add(node.index)
        else:
            stack.extend(node.args)
    return frozenset(found)


def check_term(t: Term, sig: Signature, basis_size: Optional[int] = None) -> None:
    """Raise unless ``t`` is well formed over ``sig`` (and the basis, if given)."""
    if isinstance(t, Var):
        if t.index < 0 or (basis_size is not None and t.index >= basis_size):
            raise SignatureMismatch(f"variable {t} outside basis of size {basis_size}")
        return
    if t.symbol not in sig:
        raise SignatureMismatch(f"symbol {t.symbol!r} not in signature {sig}")
    if len(t.args) != sig.arity(t.symbol):
        raise SignatureMismatch(
            f"symbol {t.symbol!r} has arity {sig.arity(t.symbol)}, applied to {len(t.args)} arguments"
        )
    for a in t.args:
        check_term(a, sig, basis_size)


class Substitution:
    """A total map from basis variables to terms.

    Variables without an explicit image map to themselves, so a
    substitution is literally an endomorphism of F(X).

    >>> s = Substitution({0: app("c")})
    >>> str(s(app("f", Var(0), Var(1))))
    '(f c x1)'
    """

    __slots__ = ("_images",)

    def __init__(self, images: Optional[Mapping[int, Term]] = None):
        self._images = {
            int(i): t for i, t in (images or {}).items() if not (isinstance(t, Var) and t.index == i)
        }

    def image(self, index: int) -> Term:
        return self._images.get(index) or Var(index)

    def __call__(self, t: Term) -> Term:
        return substitute(self, t)

    @property
    def support(self) -> frozenset[int]:
        """Variables not mapped to themselves."""
        return frozenset(self._images)

    def items(self):
        return sorted(self._images.items())

    def compose(self, inner: Substitution) -> Substitution:
        """``self ∘ inner``: apply ``inner`` first, then ``self``."""
        images = {i: substitute(self, t) for i, t in inner._images.items()}
        for i, t in self._images.items():
            images.setdefault(i, t)
        return Substitution(images)

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self._images == other._images

    def __hash__(self):
        return hash(frozenset(self._images.items()))

    def __repr__(self):
        body = ", ".join(f"x{i}↦{t}" for i, t in self.items())
        return f"Substitution({{{body}}})"


IDENTITY = Substitution()


def substitute(s: Substitution | Mapping[int, Term], t: Term) -> Term:
    """Replace each variable of ``t`` by its image under ``s``."""
    if not isinstance(s, Substitution):
        s = Substitution(s)
    images = s._images
    if not images:
        return t

    def go(node):
        if isinstance(node, Var):
            return images.get(node.index, node)
        if not node.args:
            return node
        return App(node.symbol, tuple(go(a) for a in node.args))

    return go(t)


def match(pattern: Term, target: Term) -> Optional[Substitution]:
    """Find ``s`` with ``substitute(s, pattern) == target``.

    Returns None when no such substitution exists.  The traversal is
    left to right, and the result only moves variables of ``pattern``.
    """
    bindings: dict[int, Term] = {}
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = bindings.get(p.index)
            if bound is None:
                bindings[p.index] = t
            elif bound != t:
                return None
        elif isinstance(t, Var) or p.symbol != t.symbol or len(p.args) != len(t.args):
            return None
        else:
            stack.extend(reversed(tuple(zip(p.args, t.args))))
    return Substitution(bindings)


def matches(pattern: Term, target: Term) -> bool:
    return match(pattern, target) is not None


def dependence_witness(t: Term, subset: Iterable[int], fresh: Optional[int] = None):
    """Two substitutions agreeing on ``subset`` that send ``t`` to different terms.

    ``subset`` must miss at least one variable of ``t``; the second
    substitution moves the smallest missing variable to a fresh one.
    Returns ``(alpha, beta)`` or None when ``subset`` covers ``vars(t)``.
    """
    subset = frozenset(subset)
    missing = sorted(vars_of(t) - subset)
    if not missing:
        return None
    if fresh is None:
        fresh = max(vars_of(t) | subset) + 1
    beta = Substitution({missing[0]: Var(fresh)})
    return IDENTITY, beta


def enumerate_terms(
    sig: Signature, basis_size: int, max_depth: int, cap: int = DEFAULT_TERM_CAP
) -> list[Term]:
    """All terms of depth at most ``max_depth``, each exactly once.

    Ordered by depth, then by symbol order, then by argument order
    (arguments range over the earlier terms in list order).  Nullary
    symbols have depth 0 and appear after the variables.

    >>> sig = Signature.from_pairs([("c", 0), ("g", 1)])
    >>> [str(t) for t in enumerate_terms(sig, 1, 2)]
    ['x0', 'c', '(g x0)', '(g c)', '(g (g x0))', '(g (g c))']
    """
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    if basis_size < 0:
        raise ValueError("basis_size must be nonnegative")

    terms: list[Term] = []

    def push(t):
        if len(terms) >= cap:
            raise EnumerationCapExceeded(cap)
        terms.append(t)

    for i in range(basis_size):
        push(Var(i))
    for name, arity in sig:
        if arity == 0:
            push(App(name))

    level_start = 0  # index of the first term of the previous depth
    for _ in range(max_depth):
        level_end = len(terms)
        pool = terms[:level_end]
        newest = range(level_start, level_end)
        for name, arity in sig:
            if arity == 0:
                continue
            for idx in itertools.product(range(level_end), repeat=arity):
                # at least one argument must come from the newest level
                if max(idx) < level_start:
                    continue
                push(App(name, tuple(pool[i] for i in idx)))
        if not newest:
            break
        level_start = level_end
        if len(terms) == level_end:
            break
    return terms


def count_terms(sig: Signature, basis_size: int, max_depth: int) -> int:
    """Number of terms ``enumerate_terms`` would produce, without building them."""
    total = basis_size + sum(1 for _, a in sig if a == 0)
    for _ in range(max_depth):
        new_total = basis_size + sum(1 if a == 0 else total**a for _, a in sig)
        if new_total == total:
            break
        total = new_total
    return total


_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


def parse_term(text: str, sig: Optional[Signature] = None) -> Term:
    """Parse the prefix syntax; checks arities when ``sig`` is given."""
    tokens = _TOKEN_RE.findall(text)
    if not tokens:
        raise TermSyntaxError("empty term")
    pos = 0

    def atom(tok):
        m = VARIABLE_RE.match(tok)
        if m:
            return Var(int(m.group(1)))
        return App(tok)

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise TermSyntaxError("unexpected end of term")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise TermSyntaxError("unexpected ')'")
        if tok != "(":
            return atom(tok)
        if pos >= len(tokens) or tokens[pos] in "()":
            raise TermSyntaxError("expected a symbol after '('")
        name = tokens[pos]
        if VARIABLE_RE.match(name):
            raise TermSyntaxError(f"variable {name} cannot be applied")
        pos += 1
        args = []
        while pos < len(tokens) and tokens[pos] != ")":
            args.append(parse())
        if pos >= len(tokens):
            raise TermSyntaxError("missing ')'")
        pos += 1
        if not args:
            raise TermSyntaxError(f"nullary symbol {name} must be written bare")
        return App(name, tuple(args))

    t = parse()
    if pos != len(tokens):
        raise TermSyntaxError(f"trailing input after term: {' '.join(tokens[pos:])}")
    if sig is not None:
        check_term(t, sig)
    return t


def format_term(t: Term) -> str:
    return str(t)


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)
