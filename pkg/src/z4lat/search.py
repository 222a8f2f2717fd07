"""Exhaustive secrecy-gain searches over DCC and odd-extension families.

Every candidate in the family is built, filtered for formal self-duality
through the exact swe MacWilliams fixed point, and scored by its secrecy
gain; the ranked list is deterministic at any parallelism because results
are merged by a global sort on (exact swe rank, parameter vector).

Candidate spaces:  pdcc eta -> 4^eta seeds; bdcc eta -> 4^3 * 4^(eta-1)
border/seed tuples; odd extensions over a fixed base -> 2^eta * 2^eta
(a, c) pairs.  Symmetry reduction keeps one representative per seed orbit
under swe-preserving maps: cyclic rotation and global negation always,
plus reversal for pure codes (every pure double circulant code is
isodual, so its swe survives the transpose; bordered ones need not be).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .codes import Z4Code
from .constructions import BorderParams, CirculantSeed, OddExtensionParams, bdcc, odd_extension, pdcc
from .enumerators import is_formally_self_dual, swe_from_census
from .errors import ValidationError
from .kernels import census
from .secrecy import secrecy_gain

FAMILIES = ("pdcc", "bdcc", "oext-pdcc", "oext-bdcc")


@dataclass(frozen=True)
class SearchSpace:
    family: str
    eta: int
    fixed_base: object = None  # CirculantSeed or BorderParams for oext families

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}")
        if self.family.startswith("oext") and self.fixed_base is None:
            raise ValidationError("odd-extension searches need a fixed base DCC")
        if self.eta < 1 or (self.family == "bdcc" and self.eta < 2):
            raise ValidationError("eta too small for this family")

    @property
    def candidate_count(self) -> int:
        if self.family == "pdcc":
            return 4**self.eta
        if self.family == "bdcc":
            return 4**3 * 4 ** (self.eta - 1)
        return 2**self.eta * 2**self.eta


@dataclass(frozen=True)
class SearchResult:
    params: tuple
    swe: object
    is_fsd: bool
    xi: float
    d_lee: int
    rank: int = field(default=-1)

    def params_str(self) -> str:
        return ",".join(str(x) for x in self.params)


@dataclass(frozen=True)
class SearchOutcome:
    results: list
    complete: bool
    candidates_swept: int


def _seed_orbit_maps(eta: int, with_reversal: bool):
    """All swe-preserving seed transforms as index/sign recipes."""
    maps = []
    for rot in range(eta):
        for rev in (False, True) if with_reversal else (False,):
            for neg in (False, True):
                maps.append((rot, rev, neg))
    return maps


def _apply_seed_map(seed: tuple, m) -> tuple:
    rot, rev, neg = m
    eta = len(seed)
    out = tuple(seed[(i + rot) % eta] for i in range(eta))
    if rev:
        out = out[::-1]
    if neg:
        out = tuple((-x) % 4 for x in out)
    return out


def canonical_seed(seed: tuple, with_reversal: bool) -> tuple:
    return min(_apply_seed_map(seed, m) for m in _seed_orbit_maps(len(seed), with_reversal))


def _iter_seeds(eta: int):
    return itertools.product(range(4), repeat=eta)


def symmetry_reduce(space: SearchSpace):
    """Yield one canonical candidate parameter tuple per orbit.

    pdcc params: the seed itself.  bdcc params: (alpha, beta, gamma, *r)
    with the orbit acting on (r, and negation on the border too).
    """
    if space.family == "pdcc":
        for seed in _iter_seeds(space.eta):
            if seed == canonical_seed(seed, with_reversal=True):
                yield seed
    elif space.family == "bdcc":
        maps = _seed_orbit_maps(space.eta - 1, with_reversal=False)
        for border in itertools.product(range(4), repeat=3):
            for seed in _iter_seeds(space.eta - 1):
                candidate = border + seed
                best = candidate
                for m in maps:
                    rot, rev, neg = m
                    s2 = _apply_seed_map(seed, m)
                    b2 = tuple((-x) % 4 for x in border) if neg else border
                    best = min(best, b2 + s2)
                if candidate == best:
                    yield candidate
    else:
        raise ValidationError("symmetry reduction applies to pdcc and bdcc only")


def _all_candidates(space: SearchSpace):
    if space.family == "pdcc":
        yield from _iter_seeds(space.eta)
    elif space.family == "bdcc":
        for border in itertools.product(range(4), repeat=3):
            for seed in _iter_seeds(space.eta - 1):
                yield border + seed
    else:
        eta = space.eta
        for a_mask in range(2**eta):
            a = tuple((a_mask >> (eta - 1 - i)) & 1 for i in range(eta))
            for c_mask in range(2**eta):
                c = tuple((c_mask >> (eta - 1 - i)) & 1 for i in range(eta))
                yield a + c


def build_candidate(space: SearchSpace, params: tuple) -> Z4Code:
    if space.family == "pdcc":
        return pdcc(CirculantSeed(params))
    if space.family == "bdcc":
        return bdcc(BorderParams(params[0], params[1], params[2], CirculantSeed(params[3:])))
    eta = space.eta
    base = space.fixed_base
    B = base.matrix() if hasattr(base, "matrix") else np.asarray(base, dtype=np.int64)
    return odd_extension(OddExtensionParams(B=B, a=params[:eta], c=params[eta:]))


def _evaluate_chunk(args):
    space, chunk = args
    out = []
    fsd_cache: dict = {}
    for params in chunk:
        code = build_candidate(space, params)
        counts = census(code)
        p = swe_from_census(counts, code.n)
        if p.mass**2 != 4**code.n:  # fast cardinality rejection
            continue
        if p not in fsd_cache:
            fsd_cache[p] = is_formally_self_dual(p)
        if not fsd_cache[p]:
            continue
        n = code.n
        d_lee = min(n - n0 + n2 for n0 in range(n + 1) for n2 in range(n + 1 - n0) if counts[n0, n2] and not (n0 == n and n2 == 0))
        out.append((params, p, d_lee))
    return out


def run_search(
    space: SearchSpace,
    threads: int = 1,
    limit: int | None = None,
    candidate_budget: int | None = None,
    reduce_symmetry: bool = True,
) -> SearchOutcome:
    """Sweep the space and rank formally self-dual candidates by gain.

    Ties between identical swe polynomials break on the lexicographically
    smallest parameter vector; distinct swe polynomials are ordered by
    their numeric gain (computed once per distinct swe).  The outcome is
    byte-identical at any thread count: workers only evaluate disjoint
    contiguous chunks and the merge is a global deterministic sort.
    """
    if reduce_symmetry and space.family in ("pdcc", "bdcc"):
        candidates = list(symmetry_reduce(space))
    else:
        candidates = list(_all_candidates(space))
    complete = True
    if candidate_budget is not None and len(candidates) > candidate_budget:
        candidates = candidates[:candidate_budget]
        complete = False

    if threads > 1:
        step = (len(candidates) + threads - 1) // threads
        chunks = [candidates[i : i + step] for i in range(0, len(candidates), step)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_evaluate_chunk, [(space, c) for c in chunks]))
    else:
        parts = [_evaluate_chunk((space, candidates))]

    hits = [h for part in parts for h in part]
    gain_cache: dict = {}
    for _, p, _ in hits:
        if p not in gain_cache:
            gain_cache[p] = secrecy_gain(p, fsd=True)

    hits.sort(key=lambda h: (-gain_cache[h[1]].xi, h[0]))
    results = []
    for rank, (params, p, d_lee) in enumerate(hits, start=1):
        results.append(SearchResult(params=params, swe=p, is_fsd=True, xi=gain_cache[p].xi, d_lee=d_lee, rank=rank))
        if limit is not None and rank >= limit:
            break
    return SearchOutcome(results=results, complete=complete, candidates_swept=len(candidates))
