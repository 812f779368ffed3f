"""Endomorphism rings and Krull-Schmidt decomposition.

Everything random is Las Vegas: outputs carry exact certificates
(idempotency, orthogonality, invertible witnesses) that are re-checked
deterministically.  Only a "not isomorphic" verdict reached by sampling
is probabilistic, and it reports its one-sided error bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg, poly
from .algebra import quotient_data, same_algebra
from .errors import (
    AlgebraMismatch,
    CharTooSmall,
    NotIdempotent,
    NotIdempotentInQuotient,
    RandomnessExhausted,
)
from .modules import ModuleHom, RightModule, hom_space, submodule_from_generators

NEWTON_CAP = 64
SPLIT_TRIALS = 256


class EndRing:
    """End(x) on a hom basis; the product (f*g) acts as f followed by g
    read right-to-left, i.e. (f*g).matrix = g.matrix @ f.matrix, so that
    End of a corner projective is isomorphic (not anti-isomorphic) to the
    corner algebra."""

    def __init__(self, module: RightModule, basis: list[ModuleHom]):
        self.module = module
        self.basis = basis
        self.p = module.p
        h = len(basis)
        p = self.p
        if h:
            flat = np.vstack([f.matrix.reshape(1, -1) for f in basis]) % p
        else:
            flat = linalg.zeros((0, max(module.dim * module.dim, 1)))
        self._flat = flat
        if h:
            solver = linalg.LinearSolver(flat, p)
            stack = np.stack([f.matrix for f in basis]) % p
            # prods[i, j] = basis[j] @ basis[i], solved in one batch
            prods = np.matmul(stack[None, :, :, :], stack[:, None, :, :]) % p
            d = module.dim
            self.mul = solver.solve(prods.reshape(h * h, d * d)).reshape(h, h, h)
            self.unit = solver.solve(linalg.identity(d).reshape(1, -1))[0]
        else:
            self.mul = linalg.zeros((h, h, h))
            self.unit = linalg.zeros(0)
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_matrix(self, coords) -> np.ndarray:
        coords = linalg.mat(coords, self.p).reshape(self.dim)
        d = self.module.dim
        if self.dim == 0:
            return linalg.zeros((d, d))
        return (coords @ self._flat).reshape(d, d) % self.p

    def left_mult(self, x) -> np.ndarray:
        """Matrix of y -> x*y on coordinate rows (y @ L(x))."""
        x = linalg.mat(x, self.p).reshape(self.dim)
        return np.einsum("i,ijk->jk", x, self.mul) % self.p

    def multiply(self, x, y) -> np.ndarray:
        x = linalg.mat(x, self.p).reshape(self.dim)
        y = linalg.mat(y, self.p).reshape(self.dim)
        return np.einsum("i,j,ijk->k", x, y, self.mul) % self.p


def end_ring(x: RightModule) -> EndRing:
    if "end_ring" not in x._cache:
        x._cache["end_ring"] = EndRing(x, hom_space(x, x))
    return x._cache["end_ring"]


def endring_radical(e: EndRing) -> np.ndarray:
    """Radical via the regular trace form; needs p > dim to be valid."""
    if "radical" in e._cache:
        return e._cache["radical"]
    p = e.p
    h = e.dim
    if p <= h:
        raise CharTooSmall(f"trace-form radical needs p > dim End = {h}, got p = {p}")
    lmats = np.stack([e.left_mult(linalg.identity(h)[i]) for i in range(h)]) \
        if h else linalg.zeros((0, 0, 0))
    gram = np.einsum("iab,jba->ij", lmats, lmats) % p if h else linalg.zeros((0, 0))
    rad = linalg.kernel_basis(gram, p)
    # sanity: the span must be nilpotent
    power = rad
    for _ in range(h + 1):
        if power.shape[0] == 0:
            break
        prods = [np.einsum("a,b,abk->k", u, v, e.mul) % p
                 for u in power for v in rad]
        power = linalg.nonzero_rows(
            linalg.row_basis(np.asarray(prods).reshape(-1, h), p)
        )
    if power.shape[0] != 0:
        raise AssertionError("trace-form kernel is not nilpotent")
    e._cache["radical"] = rad
    return rad


def _quotient_ring(e: EndRing):
    """(mul_bar, unit_bar, proj, lift) of E/rad(E)."""
    if "quotient" in e._cache:
        return e._cache["quotient"]
    p = e.p
    rad = endring_radical(e)
    proj, lift = quotient_data(rad, e.dim, p)
    m = proj.shape[1]
    mul_bar = linalg.zeros((m, m, m))
    for i in range(m):
        for j in range(m):
            mul_bar[i, j] = e.multiply(lift[i], lift[j]) @ proj % p
    unit_bar = e.unit @ proj % p
    e._cache["quotient"] = (mul_bar, unit_bar, proj, lift)
    return e._cache["quotient"]


def lift_idempotent(e: EndRing, ebar) -> np.ndarray:
    """Lift an idempotent of E/rad(E) to an exact idempotent of E."""
    p = e.p
    mul_bar, _, proj, lift = _quotient_ring(e)
    ebar = linalg.mat(ebar, p).reshape(proj.shape[1])
    sq = np.einsum("i,j,ijk->k", ebar, ebar, mul_bar) % p
    if not np.array_equal(sq, ebar):
        raise NotIdempotentInQuotient("element is not idempotent modulo the radical")
    z = ebar @ lift % p
    return _newton(e, z)


def _newton(e: EndRing, z: np.ndarray) -> np.ndarray:
    """Iterate z -> 3z^2 - 2z^3 until exactly idempotent."""
    p = e.p
    for _ in range(NEWTON_CAP):
        z2 = e.multiply(z, z)
        if np.array_equal(z2, z):
            return z
        z3 = e.multiply(z2, z)
        z = (3 * z2 - 2 * z3) % p
    raise AssertionError("idempotent lifting did not converge")


@dataclass
class PrimitivityCertificate:
    """Witness that a corner of the semisimple quotient is a field."""

    corner_dim: int
    witness: np.ndarray  # element of E/rad, coordinates
    minpoly: list


def _corner_basis(mul_bar, ebar, p):
    m = mul_bar.shape[0]
    lm = np.einsum("i,ijk->jk", ebar, mul_bar) % p
    rm = np.einsum("j,ijk->ik", ebar, mul_bar) % p
    return linalg.nonzero_rows(linalg.row_basis(linalg.matmul(lm, rm, p), p))


def _corner_left_mult(mul_bar, corner, v, p):
    """Left multiplication by v restricted to the corner, in corner coords."""
    lv = np.einsum("i,ijk->jk", v, mul_bar) % p
    moved = linalg.matmul(corner, lv, p)
    return linalg.solve_linear(corner, moved, p)


def _poly_eval(mul_bar, ebar, v, coeffs, p):
    """Evaluate a polynomial at v inside the corner (ebar is the unit)."""
    out = linalg.zeros(mul_bar.shape[0])
    power = ebar.copy()
    for c in coeffs:
        out = (out + int(c) * power) % p
        power = np.einsum("i,j,ijk->k", power, v, mul_bar) % p
    return out


def _split_corner(mul_bar, ebar, p, rng):
    """Either certify the corner primitive or return two complementary
    idempotents of the semisimple quotient."""
    corner = _corner_basis(mul_bar, ebar, p)
    k = corner.shape[0]
    if k == 1:
        return None, PrimitivityCertificate(1, ebar.copy(), [0, 1])
    commutative = True
    for i in range(k):
        for j in range(i + 1, k):
            ab = np.einsum("i,j,ijk->k", corner[i], corner[j], mul_bar) % p
            ba = np.einsum("i,j,ijk->k", corner[j], corner[i], mul_bar) % p
            if not np.array_equal(ab, ba):
                commutative = False
                break
        if not commutative:
            break

    def candidates():
        for row in corner:
            yield row
        for _ in range(SPLIT_TRIALS):
            coeffs = rng.integers(0, p, size=k)
            yield (coeffs @ corner) % p

    for v in candidates():
        mv = _corner_left_mult(mul_bar, corner, v, p)
        f = linalg.minimal_polynomial(mv, p)
        factors = poly.factor(f, p)
        if len(factors) >= 2:
            g1 = [1]
            for _ in range(factors[0][1]):
                g1 = poly.mul(g1, factors[0][0], p)
            g2 = [1]
            for gg, mult in factors[1:]:
                for _ in range(mult):
                    g2 = poly.mul(g2, gg, p)
            _, w = poly.coprime_split(g1, g2, p)
            e1 = _poly_eval(mul_bar, ebar, v, poly.mod(poly.mul(w, g2, p), f, p), p)
            sq = np.einsum("i,j,ijk->k", e1, e1, mul_bar) % p
            if not np.array_equal(sq, e1):
                raise AssertionError("Bezout element failed to be idempotent")
            if not e1.any() or np.array_equal(e1, ebar):
                continue
            return (e1, (ebar - e1) % p), None
        if commutative and poly.degree(f) == k:
            return None, PrimitivityCertificate(k, v.copy(), f)
    raise RandomnessExhausted(SPLIT_TRIALS)


def primitive_idempotents(e: EndRing, seed: int):
    """Complete orthogonal primitive idempotent family of E, with
    certificates from the semisimple quotient; exact checks throughout."""
    p = e.p
    if e.dim == 0:
        return [], []
    mul_bar, unit_bar, proj, lift = _quotient_ring(e)
    rng = np.random.default_rng(seed)
    stack = [unit_bar]
    bar_prims = []
    certs = []
    while stack:
        ebar = stack.pop()
        split, cert = _split_corner(mul_bar, ebar, p, rng)
        if cert is not None:
            bar_prims.append(ebar)
            certs.append(cert)
        else:
            e1, e2 = split
            stack.append(e2)
            stack.append(e1)
    # exact family checks in the quotient
    total = linalg.zeros(mul_bar.shape[0])
    for i, a in enumerate(bar_prims):
        total = (total + a) % p
        for j, b in enumerate(bar_prims):
            prod = np.einsum("i,j,ijk->k", a, b, mul_bar) % p
            want = a if i == j else linalg.zeros(mul_bar.shape[0])
            if not np.array_equal(prod, want):
                raise AssertionError("quotient idempotent family not orthogonal")
    if not np.array_equal(total, unit_bar):
        raise AssertionError("quotient idempotents do not sum to one")
    # sequential lift: work inside (1-s)E(1-s) so orthogonality is exact
    idems = []
    s = linalg.zeros(e.dim)
    for t, ebar in enumerate(bar_prims):
        if t == len(bar_prims) - 1:
            z = (e.unit - s) % p
            if not np.array_equal(e.multiply(z, z), z):
                raise AssertionError("final complement is not idempotent")
        else:
            z0 = ebar @ lift % p
            one_minus = (e.unit - s) % p
            z = e.multiply(e.multiply(one_minus, z0), one_minus)
            z = _newton(e, z)
        idems.append(z)
        s = (s + z) % p
    for i, a in enumerate(idems):
        for j, b in enumerate(idems):
            prod = e.multiply(a, b)
            want = a if i == j else linalg.zeros(e.dim)
            if not np.array_equal(prod, want):
                raise AssertionError("lifted family is not orthogonal")
    if not np.array_equal(s, e.unit):
        raise AssertionError("lifted idempotents do not sum to the identity")
    return idems, certs


# ---------------------------------------------------------------------------
# isomorphism testing


@dataclass
class IsoVerdict:
    isomorphic: bool
    witness: ModuleHom | None = None
    reason: str | None = None
    error_bound: Fraction | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def iso_test(x: RightModule, y: RightModule, trials: int = 5,
             seed: int = 0) -> IsoVerdict:
    """Certified Iso (invertible witness) or NotIso; a NotIso reached only
    by sampling carries the one-sided error bound (dim/p)^trials."""
    if not same_algebra(x.algebra, y.algebra):
        raise AlgebraMismatch("iso test across different algebras")
    p = x.p
    if x is y:
        return IsoVerdict(True, ModuleHom(x, y, linalg.identity(x.dim)))
    if x.dim != y.dim:
        return IsoVerdict(False, reason="DimMismatch")
    if x.dim == 0:
        return IsoVerdict(True, ModuleHom(x, y, linalg.zeros((0, 0))))
    hxy = hom_space(x, y)
    hyx = hom_space(y, x)
    ex = end_ring(x).dim
    ey = end_ring(y).dim
    if not (len(hxy) == len(hyx) == ex == ey):
        return IsoVerdict(False, reason="HomObstruction")
    for f in hxy:
        if f.is_iso():
            return IsoVerdict(True, f)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        coeffs = rng.integers(0, p, size=len(hxy))
        mat = linalg.zeros((x.dim, y.dim))
        for c, f in zip(coeffs, hxy):
            mat = (mat + int(c) * f.matrix) % p
        cand = ModuleHom(x, y, mat)
        if cand.is_iso():
            return IsoVerdict(True, cand)
    return IsoVerdict(
        False,
        reason="SamplingExhausted",
        error_bound=Fraction(x.dim, p) ** trials,
    )


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class Summand:
    module: RightModule
    inclusion: ModuleHom  # summand -> x
    projection: ModuleHom  # x -> summand
    class_index: int = -1
    class_witness: ModuleHom | None = None  # summand -> class representative


@dataclass
class Decomposition:
    module: RightModule
    summands: list[Summand]
    parts: list  # (representative RightModule, multiplicity)
    idempotents: list  # EndRing coordinate rows
    endring: EndRing
    certificates: list = field(default_factory=list)


def decompose(x: RightModule, seed: int = 0, trials: int = 5) -> Decomposition:
    p = x.p
    e = end_ring(x)
    if x.dim == 0:
        return Decomposition(x, [], [], [], e)
    idems, certs = primitive_idempotents(e, seed)
    summands = []
    for coords in idems:
        mat = e.to_matrix(coords)
        rows = linalg.nonzero_rows(linalg.row_basis(mat, p))
        sub, incl = submodule_from_generators(x, rows)
        proj = ModuleHom(x, sub, linalg.solve_linear(incl.matrix, mat, p))
        summands.append(Summand(sub, incl, proj))
    reps = []
    parts = []
    for t, s in enumerate(summands):
        placed = False
        for ci, rep in enumerate(reps):
            verdict = iso_test(s.module, rep, trials=trials, seed=seed + 7919 * (t + 1))
            if verdict.isomorphic:
                s.class_index = ci
                s.class_witness = verdict.witness
                parts[ci] = (rep, parts[ci][1] + 1)
                placed = True
                break
        if not placed:
            reps.append(s.module)
            parts.append((s.module, 1))
            s.class_index = len(reps) - 1
            s.class_witness = ModuleHom(s.module, s.module,
                                        linalg.identity(s.module.dim))
    return Decomposition(x, summands, parts, idems, e, certs)


def reassemble_check(dec: Decomposition, trials: int = 5, seed: int = 0) -> bool:
    """Exact split check: stacked inclusions/projections are mutually inverse."""
    x = dec.module
    p = x.p
    if not dec.summands:
        return x.dim == 0
    big_in = np.vstack([s.inclusion.matrix for s in dec.summands])
    big_pr = np.hstack([s.projection.matrix for s in dec.summands])
    return (
        np.array_equal(linalg.matmul(big_pr, big_in, p), linalg.identity(x.dim))
        and np.array_equal(linalg.matmul(big_in, big_pr, p),
                           linalg.identity(big_in.shape[0]))
    )


def summand_multiplicity(x: RightModule, y: RightModule, seed: int = 0,
                         trials: int = 5):
    """How many copies of x split off y; with an exact (u, v), v∘u = id_x,
    split-pair certificate when the multiplicity is positive."""
    if not same_algebra(x.algebra, y.algebra):
        raise AlgebraMismatch("summand test across different algebras")
    p = x.p
    if x.dim == 0:
        return 0, None
    dx = decompose(x, seed=seed, trials=trials)
    dy = decompose(y, seed=seed + 1, trials=trials)
    # match x-classes to y-classes
    matches = []  # (x class index, list of y summand indices, mult in x)
    mult = None
    for ci, (rep, mx) in enumerate(dx.parts):
        slots = []
        pair_witness = {}
        for t, s in enumerate(dy.summands):
            verdict = iso_test(rep, s.module, trials=trials,
                               seed=seed + 104729 * (t + 1))
            if verdict.isomorphic:
                slots.append(t)
                pair_witness[t] = verdict.witness
        here = len(slots) // mx
        mult = here if mult is None else min(mult, here)
        matches.append((ci, slots, pair_witness))
        if mult == 0:
            return 0, None
    # assemble one split pair (u, v) for a single copy of x inside y
    u = linalg.zeros((x.dim, y.dim))
    v = linalg.zeros((y.dim, x.dim))
    used = set()
    for s in dx.summands:
        ci = s.class_index
        _, slots, pair_witness = matches[ci]
        t = next(tt for tt in slots if tt not in used)
        used.add(t)
        ys = dy.summands[t]
        w = pair_witness[t]  # x-class rep -> y summand
        # x -> summand -> rep -> y summand -> y
        a = s.class_witness.matrix  # summand -> rep
        fwd = linalg.matmul(
            linalg.matmul(s.projection.matrix, linalg.matmul(a, w.matrix, p), p),
            ys.inclusion.matrix, p)
        back = linalg.matmul(
            linalg.matmul(ys.projection.matrix,
                          linalg.matmul(linalg.invert(w.matrix, p),
                                        linalg.invert(a, p), p), p),
            s.inclusion.matrix, p)
        u = (u + fwd) % p
        v = (v + back) % p
    if not np.array_equal(linalg.matmul(u, v, p), linalg.identity(x.dim)):
        raise AssertionError("split-pair certificate failed")
    return mult, (ModuleHom(x, y, u), ModuleHom(y, x, v))
