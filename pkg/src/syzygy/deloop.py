"""Projective dimension and delooping-level bounds.

The delooping level del(x) is the least d such that Omega^d(x) is a direct
summand of P + Omega^{d+1}(M) for a projective P and some module M.  The
quantifier over all M is not searchable, so del is reported as a certified
interval: a sound lower bound from the torsionless ladder and an upper
bound from an explicit witness M found in a finite candidate pool.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import StructureAlgebra, opposite
from .decompose import decompose, iso_test
from .modules import (
    ModuleHom,
    RightModule,
    canonical_modules,
    direct_sum,
    is_projective,
    quotient_module,
    radical_submodule,
    socle,
    syzygy,
    syzygy_step,
    torsionless_test,
    zero_module,
)

DEFAULT_HORIZON = 8
DEFAULT_PD_CAP = 32


@dataclass
class PdResult:
    kind: str  # "finite" | "infinite" | "unknown"
    value: int | None = None  # the dimension when finite
    cycle: tuple | None = None  # (i, j) with Omega^i iso Omega^j, i < j
    witness: ModuleHom | None = None  # the certifying isomorphism
    cap: int | None = None


@dataclass
class DelBounds:
    lower: int
    upper: int | None  # None = unknown within the horizon
    witness: RightModule | None
    witness_tag: str
    horizon: int
    exact: bool


@dataclass
class CandidatePool:
    modules: list = field(default_factory=list)
    tags: list = field(default_factory=list)

    def add(self, module: RightModule, tag: str):
        self.modules.append(module)
        self.tags.append(tag)


def default_pool(a: StructureAlgebra, horizon: int = DEFAULT_HORIZON,
                 extra=()) -> CandidatePool:
    """Simples, radicals/socles of projectives, simple syzygies up to the
    horizon, embedding-quotients of torsionless simples, user extras."""
    cache_key = ("default_pool", horizon)
    if not extra and cache_key in a._cache:
        return a._cache[cache_key]
    pool = CandidatePool()
    _, simples, projectives = canonical_modules(a)
    for s in simples:
        pool.add(s, "simple")
    for info in projectives:
        r, _ = radical_submodule(info.module)
        if r.dim:
            pool.add(r, "rad-of-projective")
        sc, _ = socle(info.module)
        if sc.dim and sc.dim != info.module.dim:
            pool.add(sc, "soc-of-projective")
    for s in simples:
        cur = s
        for i in range(1, horizon + 1):
            cur = syzygy_step(cur)[0]
            if cur.dim == 0:
                break
            pool.add(cur, "syzygy")
    for s in simples:
        ok, emb = torsionless_test(s)
        if ok and emb.target.dim:
            q, _ = quotient_module(emb.target, emb.matrix)
            pool.add(q, "embedding-quotient")
    for m in extra:
        pool.add(m, "user")
    if not extra:
        a._cache[cache_key] = pool
    return pool


def projective_dimension(x: RightModule, cap: int = DEFAULT_PD_CAP,
                         seed: int = 0, trials: int = 5) -> PdResult:
    """Iterate minimal syzygies; certify finiteness, an infinite periodic
    tail, or give up at the cap."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    seen = []  # (index, module)
    cur = x
    for d in range(cap + 1):
        if is_projective(cur):
            return PdResult("finite", value=d, cap=cap)
        for i, m in seen:
            verdict = iso_test(m, cur, trials=trials, seed=seed + 31 * (d + 1))
            if verdict.isomorphic:
                return PdResult("infinite", cycle=(i, d),
                                witness=verdict.witness, cap=cap)
        seen.append((d, cur))
        cur = syzygy_step(cur)[0]
    return PdResult("unknown", cap=cap)


def _nonprojective_classes(x: RightModule, seed: int, trials: int):
    """Iso-class multiset of the non-projective indecomposable summands."""
    dec = decompose(x, seed=seed, trials=trials)
    out = []
    for rep, mult in dec.parts:
        if not is_projective(rep):
            out.append((rep, mult))
    return out


def _covers(need, have, seed: int, trials: int) -> bool:
    """Every needed class appears in `have` with at least its multiplicity."""
    for rep, mult in need:
        got = 0
        for rep2, mult2 in have:
            if iso_test(rep, rep2, trials=trials, seed=seed).isomorphic:
                got = mult2
                break
        if got < mult:
            return False
    return True


def torsionless_ladder_lower(s: RightModule, horizon: int = DEFAULT_HORIZON) -> int:
    """Sound lower bound for del(s): one past the deepest non-torsionless
    syzygy within the horizon (the valid-d set is upward closed and every
    valid level has a torsionless syzygy)."""
    best = 0
    cur = s
    for i in range(horizon + 1):
        if cur.dim == 0:
            break
        if not torsionless_test(cur)[0]:
            best = i + 1
        cur = syzygy_step(cur)[0]
    return best


def del_upper_search(s: RightModule, horizon: int = DEFAULT_HORIZON,
                     pool: CandidatePool | None = None, seed: int = 0,
                     trials: int = 5):
    """First level d at which an explicit witness certifies the summand
    condition; returns (d, witness module, tag) or (None, None, reason)."""
    a = s.algebra
    # the pool and its syzygy chains are built lazily: levels 0 never need them
    chains = None
    chain_classes: dict = {}
    cur = s
    for d in range(horizon + 1):
        if is_projective(cur):
            return d, zero_module(a), "projective-shortcut"
        if d == 0:
            ok, emb = torsionless_test(s)
            if ok:
                q, _ = quotient_module(emb.target, emb.matrix)
                return 0, q, "embedding-quotient"
        else:
            if pool is None:
                pool = default_pool(a, horizon)
            if chains is None:
                chains = list(pool.modules)
            need = _nonprojective_classes(cur, seed=seed + d, trials=trials)
            haves = _advance_chains(pool, chains, chain_classes, d, seed, trials)
            for idx, have in enumerate(haves):
                if _covers(need, have, seed + 17 * d, trials):
                    return d, pool.modules[idx], pool.tags[idx]
            for i in range(len(haves)):
                for j in range(i, len(haves)):
                    merged = haves[i] + haves[j] if i != j else [
                        (rep, 2 * mult) for rep, mult in haves[i]
                    ]
                    if _covers(need, merged, seed + 17 * d, trials):
                        witness, _ = direct_sum([pool.modules[i], pool.modules[j]])
                        return d, witness, f"{pool.tags[i]}+{pool.tags[j]}"
        cur = syzygy_step(cur)[0]
    return None, None, "horizon-exhausted"


def _advance_chains(pool, chains, chain_classes, d, seed, trials):
    """Bring every candidate chain to Omega^{d+1} and return the class
    multisets, advancing incrementally and caching per level."""
    key = d
    if key in chain_classes:
        return chain_classes[key]
    target_level = d + 1
    current_level = chain_classes.get("level", 0)
    while current_level < target_level:
        for idx in range(len(chains)):
            chains[idx] = syzygy_step(chains[idx])[0]
        current_level += 1
    chain_classes["level"] = current_level
    haves = [
        _nonprojective_classes(chains[idx], seed=seed + 101 * (idx + 1), trials=trials)
        for idx in range(len(chains))
    ]
    chain_classes[key] = haves
    return haves


def verify_del_witness(s: RightModule, d: int, witness: RightModule,
                       seed: int = 0, trials: int = 5) -> bool:
    """Exact re-check: the non-projective classes of Omega^d(s) all appear
    in Omega^{d+1}(witness)."""
    om = syzygy(s, d)
    if is_projective(om):
        return True
    need = _nonprojective_classes(om, seed=seed, trials=trials)
    have = _nonprojective_classes(syzygy(witness, d + 1), seed=seed + 1,
                                  trials=trials)
    return _covers(need, have, seed + 2, trials)


def del_bounds(s: RightModule, horizon: int = DEFAULT_HORIZON,
               pool: CandidatePool | None = None, seed: int = 0,
               trials: int = 5) -> DelBounds:
    lower = torsionless_ladder_lower(s, horizon)
    upper, witness, tag = del_upper_search(s, horizon, pool, seed, trials)
    if upper is not None and upper < lower:
        raise AssertionError("witness search beat the sound lower bound")
    return DelBounds(lower=lower, upper=upper, witness=witness,
                     witness_tag=tag, horizon=horizon,
                     exact=(upper is not None and upper == lower))


def del_algebra(a: StructureAlgebra, horizon: int = DEFAULT_HORIZON,
                pool: CandidatePool | None = None, seed: int = 0,
                trials: int = 5):
    """(aggregate bounds, per-simple bounds); del(A) is the max over simples."""
    _, simples, _ = canonical_modules(a)
    per = [del_bounds(s, horizon, pool, seed + i, trials)
           for i, s in enumerate(simples)]
    lower = max(b.lower for b in per)
    uppers = [b.upper for b in per]
    upper = max(uppers) if all(u is not None for u in uppers) else None
    exact = all(b.exact for b in per) and upper is not None and upper == lower
    agg = DelBounds(lower=lower, upper=upper, witness=None,
                    witness_tag="aggregate", horizon=horizon, exact=exact)
    return agg, per


def fd_lower_estimate(a: StructureAlgebra, sample: CandidatePool | None = None,
                      cap: int = DEFAULT_PD_CAP, seed: int = 0,
                      trials: int = 5) -> int:
    """Max finite projective dimension found in the sample; a sound lower
    bound for the finitistic dimension, never claimed to be fd itself."""
    if sample is None:
        sample = default_pool(a)
    best = 0
    for x in sample.modules:
        r = projective_dimension(x, cap=cap, seed=seed, trials=trials)
        if r.kind == "finite" and r.value is not None:
            best = max(best, r.value)
    return best


def fd_del_inequality_check(a: StructureAlgebra, horizon: int = DEFAULT_HORIZON,
                            pool: CandidatePool | None = None, seed: int = 0,
                            trials: int = 5) -> dict:
    """fd(A) <= del(A^op): compare the sound fd lower bound with the del
    upper bound of the opposite algebra."""
    fd_low = fd_lower_estimate(a, pool, seed=seed, trials=trials)
    aop = opposite(a)
    agg, _ = del_algebra(aop, horizon=horizon, seed=seed, trials=trials)
    passed = agg.upper is not None and fd_low <= agg.upper
    return {
        "passed": bool(passed),
        "fd_lower": fd_low,
        "del_op_lower": agg.lower,
        "del_op_upper": agg.upper,
    }
