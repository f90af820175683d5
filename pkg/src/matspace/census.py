"""Exhaustive census of d-dimensional subspaces of Mat_n(F_q).

Subspaces are enumerated by canonical RREF representatives: pivot-column
patterns in lexicographic order, then all free-entry assignments (last free
position varying fastest).  The stream total always equals the Gaussian
binomial [n^2 choose d]_q.

Enumeration is embarrassingly parallel across contiguous pattern chunks; the
merge is associative and order-fixed, so the report content is independent of
the worker count.  For q = 2 and n <= 3 a bit-packed engine with lookup
tables replaces the generic field path; both must agree and the tests compare
them subspace for subspace.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import gf2
from ._version import __version__
from .errors import BudgetExceeded, CapExceeded, InvalidInput
from .fields import PrimeField
from .matrices import Matrix, invert
from .predicates import HOLDS, all_diagonalizable, irreducible, non_isotropic, trivial_spectrum
from .recovery import recover
from .spaces import DEFAULT_BUDGET, MatSpace

DEFAULT_CAP = 10**7
NON_HEAVY_LIMIT = 100_000
SUPPORTED_Q = (2, 3, 5)

# Cheapest test first; callers may pass their own early-exit order.
PREDICATE_ORDER = ("trivial_spectrum", "all_diagonalizable", "irreducible")

PREDICATE_ALIASES = {
    "diag": "all_diagonalizable",
    "all_diagonalizable": "all_diagonalizable",
    "trivspec": "trivial_spectrum",
    "ts": "trivial_spectrum",
    "trivial_spectrum": "trivial_spectrum",
    "irred": "irreducible",
    "irreducible": "irreducible",
}


def gaussian_binomial(m: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of F_q^m."""
    if d < 0 or d > m:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def normalize_predicates(names, keep_order: bool = False) -> list[str]:
    out = []
    for name in names:
        key = PREDICATE_ALIASES.get(str(name).strip().lower())
        if key is None:
            raise InvalidInput(f"unknown predicate {name!r}")
        if key not in out:
            out.append(key)
    if keep_order:
        return out
    return sorted(out, key=PREDICATE_ORDER.index)


@dataclass
class CensusReport:
    n: int
    q: int
    d: int
    predicates: list[str]
    budget: int
    cap: int
    engine: str
    total: int
    witness_limit: int = 5
    counts: dict = dc_field(default_factory=dict)
    witnesses: dict = dc_field(default_factory=dict)  # name -> list of flat basis rows
    seedless: bool = True
    version: str = __version__
    elapsed: float = 0.0
    workers: int = 1
    partition: list[int] = dc_field(default_factory=list)


def _check_gates(total: int, cap: int, heavy: bool):
    if total > cap:
        raise CapExceeded(total, cap)
    if not heavy and total > NON_HEAVY_LIMIT:
        raise CapExceeded(total, NON_HEAVY_LIMIT, hint="pass --heavy for large runs")


def _free_positions(pattern, m: int) -> list[tuple[int, int]]:
    pivot_set = set(pattern)
    return [
        (r, c)
        for r in range(len(pattern))
        for c in range(pattern[r] + 1, m)
        if c not in pivot_set
    ]


def _generic_pattern_stream(pattern, m: int, q: int):
    """All RREF bases with the given pivot pattern, as flat coefficient rows."""
    d = len(pattern)
    free = _free_positions(pattern, m)
    base = []
    for r in range(d):
        row = [0] * m
        row[pattern[r]] = 1
        base.append(row)
    for values in itertools.product(range(q), repeat=len(free)):
        rows = [row.copy() for row in base]
        for (r, c), v in zip(free, values):
            rows[r][c] = v
        yield rows


def _bit_pattern_stream(pattern, m: int):
    """GF(2) fast path: same order as the generic stream, rows as bitsets.

    The yielded list is mutated in place between yields; consumers must copy
    what they keep.
    """
    d = len(pattern)
    free = _free_positions(pattern, m)
    rows = [1 << p for p in pattern]
    yield rows
    f = len(free)
    counter = [0] * f
    masks = [(r, 1 << c) for r, c in free]
    for _ in range((1 << f) - 1):
        i = f - 1
        while counter[i]:
            counter[i] = 0
            r, mask = masks[i]
            rows[r] ^= mask
            i -= 1
        counter[i] = 1
        r, mask = masks[i]
        rows[r] ^= mask
        yield rows


def subspace_stream(n: int, q: int, d: int, cap: int = DEFAULT_CAP, heavy: bool = False):
    """Every d-dimensional subspace of Mat_n(F_q) exactly once, canonically."""
    if q not in SUPPORTED_Q:
        raise InvalidInput(f"census supports q in {SUPPORTED_Q}, got {q}")
    m = n * n
    if d > m or d < 0:
        raise InvalidInput(f"dimension {d} outside 0..{m}")
    total = gaussian_binomial(m, d, q)
    _check_gates(total, cap, heavy)
    field = PrimeField(q)

    def gen():
        for pattern in itertools.combinations(range(m), d):
            for rows in _generic_pattern_stream(pattern, m, q):
                yield MatSpace.from_canonical_rows(field, n, rows)

    return gen()


# -- per-subspace predicate evaluation ---------------------------------------


def _eval_generic(space: MatSpace, name: str, budget: int) -> bool:
    if name == "trivial_spectrum":
        return trivial_spectrum(space, budget).status == HOLDS
    if name == "all_diagonalizable":
        return all_diagonalizable(space, budget).status == HOLDS
    if name == "irreducible":
        return irreducible(space, budget).status == HOLDS
    raise InvalidInput(f"unknown predicate {name!r}")


def _ts_bits(rows, d: int, table) -> bool:
    m = 0
    for k in range(1, 1 << d):
        m ^= rows[(k & -k).bit_length() - 1]
        if not table[m]:
            return False
    return True


def _diag_bits(rows, d: int, table) -> bool:
    m = 0
    for k in range(1, 1 << d):
        m ^= rows[(k & -k).bit_length() - 1]
        if not table[m]:
            return False
    return True


def _census_chunk(args) -> tuple[dict, dict, int]:
    (n, q, d, start, stop, predicates, budget, witness_limit, engine) = args
    m = n * n
    patterns = list(itertools.combinations(range(m), d))[start:stop]
    counts = {p: 0 for p in predicates}
    witnesses = {p: [] for p in predicates}
    processed = 0
    if engine == "bits":
        diag_table = gf2.diagonalizable_table(n)
        ts_table = gf2.eigenvalue_one_free_table(n)
        action = gf2.action_table(n)
        for pattern in patterns:
            for rows in _bit_pattern_stream(pattern, m):
                processed += 1
                for p in predicates:
                    if p == "trivial_spectrum":
                        ok = _ts_bits(rows, d, ts_table)
                    elif p == "all_diagonalizable":
                        ok = _diag_bits(rows, d, diag_table)
                    else:
                        ok = gf2.irreducible_bits(rows, n, action)
                    if not ok:
                        break
                    counts[p] += 1
                    if len(witnesses[p]) < witness_limit:
                        witnesses[p].append([gf2.unpack_row(r, m) for r in rows])
    else:
        field = PrimeField(q)
        for pattern in patterns:
            for rows in _generic_pattern_stream(pattern, m, q):
                processed += 1
                space = MatSpace.from_canonical_rows(field, n, rows)
                for p in predicates:
                    if not _eval_generic(space, p, budget):
                        break
                    counts[p] += 1
                    if len(witnesses[p]) < witness_limit:
                        witnesses[p].append([list(r) for r in rows])
    return counts, witnesses, processed


def census(
    n: int,
    q: int,
    d: int,
    predicates,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
    witness_limit: int = 5,
    heavy: bool = False,
    engine: str | None = None,
    keep_order: bool = False,
) -> CensusReport:
    """Count the subspaces surviving the predicate filter chain.

    Predicates are applied in cheap-first order with early exit (pass
    ``keep_order=True`` to evaluate in the given sequence instead);
    counts[p] tallies the subspaces that satisfied p and every predicate
    before it, so the last entry is the conjunction count.  Fully
    independent tallies come from one census per predicate.
    """
    if q not in SUPPORTED_Q:
        raise InvalidInput(f"census supports q in {SUPPORTED_Q}, got {q}")
    m = n * n
    if d > m or d < 0:
        raise InvalidInput(f"dimension {d} outside 0..{m}")
    predicates = normalize_predicates(predicates, keep_order)
    if not predicates:
        raise InvalidInput("census needs at least one predicate")
    total = gaussian_binomial(m, d, q)
    _check_gates(total, cap, heavy)
    if q**d > budget:
        raise BudgetExceeded(q**d, budget)
    if engine is None:
        engine = "bits" if q == 2 and n <= 3 else "generic"
    if engine == "bits" and (q != 2 or n > 3):
        raise InvalidInput("bit engine requires q = 2 and n <= 3")

    started = time.perf_counter()
    pattern_count = math.comb(m, d)
    workers = max(1, min(workers, pattern_count or 1))
    bounds = [
        (i * pattern_count // workers, (i + 1) * pattern_count // workers)
        for i in range(workers)
    ]
    args = [
        (n, q, d, start, stop, predicates, budget, witness_limit, engine)
        for start, stop in bounds
        if stop > start
    ]
    if workers == 1:
        partials = [_census_chunk(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_census_chunk, args))

    counts = {p: 0 for p in predicates}
    witnesses = {p: [] for p in predicates}
    processed = 0
    for pcounts, pwits, ptotal in partials:
        processed += ptotal
        for p in predicates:
            counts[p] += pcounts[p]
            if len(witnesses[p]) < witness_limit:
                witnesses[p].extend(pwits[p][: witness_limit - len(witnesses[p])])
    if processed != total:
        raise AssertionError(
            f"stream produced {processed} subspaces; expected {total}"
        )
    return CensusReport(
        n=n,
        q=q,
        d=d,
        predicates=predicates,
        budget=budget,
        cap=cap,
        engine=engine,
        total=total,
        witness_limit=witness_limit,
        counts=counts,
        witnesses=witnesses,
        elapsed=time.perf_counter() - started,
        workers=len(args),
        partition=[stop - start for start, stop in bounds if stop > start],
    )


def max_diag_dim(
    n: int,
    q: int,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_CAP,
    heavy: bool = False,
) -> tuple[int, MatSpace]:
    """Largest d with an all-diagonalizable d-dimensional subspace, plus a witness.

    Scans downward from n(n+1)/2; within each dimension the canonical
    enumeration order makes the witness deterministic.
    """
    for d in range(n * (n + 1) // 2, 0, -1):
        total = gaussian_binomial(n * n, d, q)
        _check_gates(total, cap, heavy)
        if q**d > budget:
            raise BudgetExceeded(q**d, budget)
        for space in subspace_stream(n, q, d, cap=cap, heavy=heavy):
            if all_diagonalizable(space, budget).status == HOLDS:
                return d, space
    return 0, MatSpace.zero(PrimeField(q), n)


def verify_classification(
    n: int,
    q: int,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_CAP,
    heavy: bool = False,
) -> dict:
    """Cross-check both maximal-dimension classifications at desk scale.

    For every irreducible trivial-spectrum subspace of dimension n(n-1)/2, an
    exhaustive GL_n(F_q) search looks for a non-isotropic P with
    V = P * Alt_n.  For every all-diagonalizable subspace of dimension
    n(n+1)/2 (none are expected at the supported sizes), the recovery
    pipeline confirms similarity to Sym_n.
    """
    if q not in (2, 3):
        raise InvalidInput("classification check supports q in (2, 3)")
    if n != 2 and not heavy:
        raise CapExceeded(gaussian_binomial(n * n, n * (n - 1) // 2, q), NON_HEAVY_LIMIT,
                          hint="classification beyond n = 2 needs --heavy")
    field = PrimeField(q)
    alt = MatSpace.standard("alt", n, field)

    d1 = n * (n - 1) // 2
    candidates = []
    for space in subspace_stream(n, q, d1, cap=cap, heavy=heavy):
        if (
            trivial_spectrum(space, budget).status == HOLDS
            and irreducible(space, budget).status == HOLDS
        ):
            candidates.append(space)
    cases = []
    for space in candidates:
        found = None
        for values in itertools.product(range(q), repeat=n * n):
            rows = [values[i * n : (i + 1) * n] for i in range(n)]
            P = Matrix(field, rows)
            try:
                invert(P)
            except Exception:
                continue
            if non_isotropic(P).status != HOLDS:
                continue
            if alt.transform(P, "left") == space:
                found = P
                break
        cases.append(
            {
                "space": space,
                "P": found,
                "expressible": found is not None,
            }
        )

    d2 = n * (n + 1) // 2
    diag_instances = []
    for space in subspace_stream(n, q, d2, cap=cap, heavy=heavy):
        if all_diagonalizable(space, budget).status == HOLDS:
            rep = recover(space, budget)
            diag_instances.append({"space": space, "status": rep.status})

    return {
        "n": n,
        "q": q,
        "trivial_spectrum_form": {
            "dim": d1,
            "candidates": len(candidates),
            "expressible": sum(1 for c in cases if c["expressible"]),
            "all_expressible": all(c["expressible"] for c in cases),
            "cases": cases,
        },
        "diagonalizable_form": {
            "dim": d2,
            "instances": len(diag_instances),
            "all_similar": all(c["status"] in ("success", "conditional_success") for c in diag_instances),
            "vacuous": not diag_instances,
            "cases": diag_instances,
        },
    }
