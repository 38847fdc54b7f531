"""Desk-scale checks around free algebras of rank one.

Two detection predicates run on finite algebras: every surjective
homomorphism onto ``p`` has a right inverse, and every endomorphism of
``p`` is injective.  Surjective and injective stand in for the categorical
epi and mono and are reported under those names.

The hom-set functor of the free algebra on one generator is handled
symbolically: a homomorphism out of it is fixed by the image of the
generator, and acts on a term ``t`` in ``x0`` by evaluating ``t`` there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import AlgebraError, SignatureMismatch
from .finalg import FiniteAlgebra, enumerate_homomorphisms, evaluate, is_homomorphism
from .signature import Signature
from .terms import Term, Var, vars_of


@dataclass(frozen=True)
class ProbeReport:
    holds: bool
    witness: Optional[dict] = field(default=None)

    def __bool__(self):
        return self.holds


def every_epi_has_section(p: FiniteAlgebra, pool: Iterable[FiniteAlgebra]) -> ProbeReport:
    """Check that each surjective homomorphism ``a -> p`` (``a`` in ``pool``) splits.

    On failure the witness names the pool index, the algebra and the
    surjection without a section.
    """
    identity = tuple(range(p.carrier))
    for index, a in enumerate(pool):
        if a.signature != p.signature:
            raise SignatureMismatch(f"pool algebra {index} has a different signature")
        sections = None
        for h in enumerate_homomorphisms(a, p):
            if len(set(h)) != p.carrier:
                continue
            if sections is None:
                sections = list(enumerate_homomorphisms(p, a))
            if not any(tuple(h[g[v]] for v in identity) == identity for g in sections):
                return ProbeReport(
                    False,
                    {"kind": "surjection-without-section", "pool_index": index,
                     "algebra": a.to_json(), "surjection": list(h)},
                )
    return ProbeReport(True)


def all_endos_mono(p: FiniteAlgebra) -> ProbeReport:
    """Check that every endomorphism of ``p`` is injective."""
    for h in enumerate_homomorphisms(p, p):
        if len(set(h)) != len(h):
            return ProbeReport(False, {"kind": "non-injective-endomorphism", "map": list(h)})
    return ProbeReport(True)


@dataclass(frozen=True)
class GeneratorHom:
    """Homomorphism from the free algebra on ``x0`` into ``target``, fixed by ``x0 -> image``."""

    target: FiniteAlgebra
    image: int

    def __call__(self, t: Term) -> int:
        if not vars_of(t) <= {0}:
            raise ValueError(f"term {t} uses variables other than x0")
        return evaluate(self.target, t, {0: self.image})


def hom_set_bijection(a: FiniteAlgebra) -> list[GeneratorHom]:
    """One homomorphism from the rank-one free algebra per element of ``a``."""
    return [GeneratorHom(a, v) for v in range(a.carrier)]


def naturality_check(
    a: FiniteAlgebra, b: FiniteAlgebra, h: Sequence[int], samples: Iterable[Term]
) -> bool:
    """Does the square between hom-sets and carriers commute along ``h`` on ``samples``?

    For each element ``v`` of ``a`` and term ``t`` in ``x0``, compares
    ``h(t evaluated at v)`` with ``t evaluated at h(v)``.
    """
    if not is_homomorphism(a, b, h):
        raise AlgebraError(f"{list(h)} is not a homomorphism")
    samples = list(samples)
    for gen in hom_set_bijection(a):
        pushed = GeneratorHom(b, h[gen.image])
        for t in samples:
            if h[gen(t)] != pushed(t):
                return False
    return True


def free_algebra_on_constants(sig: Signature, generators: int) -> FiniteAlgebra:
    """The free algebra on ``generators`` generators for a constants-only signature.

    Constants take values ``0 .. c-1`` in signature order, generators follow.
    """
    if any(arity for _, arity in sig):
        raise AlgebraError("free algebras are finite only for constants-only signatures")
    constants = sig.names
    return FiniteAlgebra(
        sig, len(constants) + generators, {name: (i,) for i, name in enumerate(constants)}
    )


def generator_term() -> Var:
    return Var(0)
