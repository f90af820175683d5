"""Decision procedures on subspaces, each returning a checkable verdict.

Over finite fields every predicate here is decided exhaustively and a Fails
verdict always carries a witness that re-verifies on its own.  Over the
rationals, irreducibility and isotropy are three-valued: Unknown is an honest
answer and is never silently converted.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceeded, ZeroVector
from .fields import Field, Scalar
from .matrices import (
    Matrix,
    Vector,
    char_poly_rows,
    det,
    eigenvalues_in_field,
    is_diagonalizable,
    kernel_basis,
)
from .polys import Poly
from .spaces import DEFAULT_BUDGET, MatSpace, VecSpace

HOLDS = "holds"
FAILS = "fails"
UNKNOWN = "unknown"

_Q_SAMPLE_TRIVIAL = 1000
_Q_SAMPLE_KERNELS = 100


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: object = None
    reason: str | None = None

    @classmethod
    def holds(cls) -> "Verdict":
        return cls(HOLDS)

    @classmethod
    def fails(cls, witness) -> "Verdict":
        return cls(FAILS, witness=witness)

    @classmethod
    def unknown(cls, reason: str) -> "Verdict":
        return cls(UNKNOWN, reason=reason)


def projective_points(field: Field, n: int) -> Iterator[Vector]:
    """One representative per projective point of F^n.

    The first nonzero coordinate is normalized to 1; representatives are
    ordered by the position of that coordinate, then lexicographically in the
    remaining free coordinates.
    """
    q = field.cardinality
    for lead in range(n):
        free = n - lead - 1
        for tail in itertools.product(range(q), repeat=free):
            entries = [field.zero()] * lead + [field.one()] + [field.coerce(t) for t in tail]
            yield Vector(field, entries)


def spin(V: MatSpace, v: Vector) -> VecSpace:
    """Smallest V-stable subspace of F^n containing v, by worklist saturation."""
    if v.is_zero:
        raise ZeroVector("cannot spin from the zero vector")
    basis = V.basis()
    space = VecSpace.from_vectors(V.field, V.n, [v])
    frontier = [v]
    while frontier:
        u = frontier.pop()
        for M in basis:
            w = M * u
            if not w.is_zero and not space.contains(w):
                space = space.with_vector(w)
                frontier.append(w)
        if space.is_full:
            break
    return space


def _rng_combination(V: MatSpace, basis: list[Matrix], rng: random.Random) -> Matrix:
    """Pseudorandom member of V with small integer coefficients."""
    F = V.field
    out = Matrix.zero(F, V.n)
    for B in basis:
        c = rng.randint(-9, 9)
        if c:
            out = out + B * F.coerce(c)
    return out


def irreducible(V: MatSpace, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Verdict:
    """No nontrivial proper subspace of F^n is stable under every element of V.

    Finite field: spin from one representative of every projective point; the
    first proper spin is the witness.  Rationals: spin from the standard basis
    and from kernel vectors of pseudorandom members; absence of a witness is
    only ever Unknown.
    """
    F = V.field
    n = V.n
    if F.is_finite:
        q = F.cardinality
        starts = (q**n - 1) // (q - 1)
        if starts > budget:
            raise BudgetExceeded(starts, budget)
        for v in projective_points(F, n):
            sub = spin(V, v)
            if not sub.is_full:
                return Verdict.fails(sub)
        return Verdict.holds()
    rng = random.Random(seed)
    basis = V.basis()
    starts = [Vector.basis(F, n, i) for i in range(n)]
    for _ in range(_Q_SAMPLE_KERNELS):
        M = _rng_combination(V, basis, rng)
        starts.extend(k for k in kernel_basis(M) if not k.is_zero)
    for v in starts:
        sub = spin(V, v)
        if not sub.is_full:
            return Verdict.fails(sub)
    return Verdict.unknown("infinite field: irreducibility not decided")


def all_diagonalizable(V: MatSpace, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Verdict:
    """Every member of V is diagonalizable over the ground field.

    Exhaustive over finite fields (within budget).  Over the rationals only a
    seeded sample is inspected for a falsifying member; otherwise Unknown,
    since exhaustiveness is impossible.
    """
    if V.field.is_finite:
        for M in V.elements(budget):
            if not is_diagonalizable(M):
                return Verdict.fails(M)
        return Verdict.holds()
    rng = random.Random(seed)
    basis = V.basis()
    for M in basis:
        if not is_diagonalizable(M):
            return Verdict.fails(M)
    for _ in range(_Q_SAMPLE_TRIVIAL):
        M = _rng_combination(V, basis, rng)
        if not is_diagonalizable(M):
            return Verdict.fails(M)
    return Verdict.unknown("infinite field: sampled members only")


def trivial_spectrum(V: MatSpace, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Verdict:
    """No member of V has a nonzero eigenvalue in the ground field.

    A Fails witness is the pair (member, nonzero eigenvalue).  Over the
    rationals the basis plus seeded samples are tested; a clean pass is
    reported as Unknown("sampled"), never Holds.
    """
    F = V.field
    if F.is_finite:
        q = F.cardinality
        total = V.element_count()
        if total > budget:
            raise BudgetExceeded(total, budget)
        n = V.n
        for flat in V.element_rows(budget):
            rows = [flat[i * n : (i + 1) * n] for i in range(n)]
            chi = Poly(F, char_poly_rows(F, rows))
            for lam in range(1, q):
                if chi.eval(lam) == 0:
                    return Verdict.fails((Matrix(F, rows), lam))
        return Verdict.holds()
    rng = random.Random(seed)
    basis = V.basis()
    candidates = list(basis)
    candidates += [_rng_combination(V, basis, rng) for _ in range(_Q_SAMPLE_TRIVIAL)]
    for M in candidates:
        for lam in eigenvalues_in_field(M):
            if lam != 0:
                return Verdict.fails((M, lam))
    return Verdict.unknown("infinite field: sampled members only")


def _leading_minors(P: Matrix) -> list[Scalar]:
    out = []
    for k in range(1, P.nrows + 1):
        sub = Matrix(P.field, [r[:k] for r in P.rows[:k]])
        out.append(det(sub))
    return out


def non_isotropic(P: Matrix) -> Verdict:
    """X^T P X != 0 for every nonzero X.

    Finite field: evaluated on one representative per projective point.
    Rationals: definiteness via leading principal minors proves Holds; a zero
    value on small integer vectors proves Fails; otherwise Unknown.
    """
    P._need_square()
    F = P.field
    n = P.nrows
    if F.is_finite:
        for x in projective_points(F, n):
            if x.dot(P * x) == 0:
                return Verdict.fails(x)
        return Verdict.holds()
    if P.is_symmetric:
        minors = _leading_minors(P)
        if all(m > 0 for m in minors):
            return Verdict.holds()
        # signs alternating starting negative: negative definite
        if all(m != 0 and (m < 0) == (k % 2 == 0) for k, m in enumerate(minors)):
            return Verdict.holds()
    for tail in itertools.product(range(-5, 6), repeat=n):
        if all(t == 0 for t in tail):
            continue
        x = Vector(F, tail)
        if x.dot(P * x) == 0:
            return Verdict.fails(x)
    return Verdict.unknown("rationals: indefinite form, no small isotropic vector found")
