"""Finitely generated right modules over a StructureAlgebra.

A module is a total space F_p^d with one action matrix per algebra basis
element; elements are rows and the action is right multiplication.  Homs
are computed through projective presentations, which keeps every linear
system at the scale of the modules themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import StructureAlgebra, Bimodule, opposite, quotient_data, same_algebra
from .errors import AlgebraMismatch, NotStable, ShapeMismatch


class RightModule:
    """Right module: action[i] is the matrix of v -> v * b_i."""

    def __init__(self, algebra: StructureAlgebra, action, name: str = ""):
        self.algebra = algebra
        self.action = np.asarray(action, dtype=np.int64) % algebra.p
        if self.action.ndim != 3 or self.action.shape[0] != algebra.dim:
            raise ValueError("action must be one square matrix per basis element")
        if self.action.shape[1] != self.action.shape[2]:
            raise ValueError("action matrices must be square")
        self.name = name
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def rho(self, x) -> np.ndarray:
        """Action matrix of the algebra element with coordinate row x."""
        x = linalg.mat(x, self.p).reshape(self.algebra.dim)
        return np.einsum("i,iab->ab", x, self.action) % self.p

    def rho_rows(self, rows) -> np.ndarray:
        """Stacked action matrices for several algebra elements at once."""
        rows = linalg.mat(rows, self.p).reshape(-1, self.algebra.dim)
        return np.einsum("jc,cab->jab", rows, self.action) % self.p

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<RightModule{tag} dim={self.dim} over {self.algebra.name or 'A'}>"


def zero_module(a: StructureAlgebra) -> RightModule:
    return RightModule(a, linalg.zeros((a.dim, 0, 0)), name="0")


def validate_module(x: RightModule) -> list:
    """Unitality and multiplicativity on all basis pairs; violations as data."""
    a = x.algebra
    p = a.p
    bad = []
    if not np.array_equal(x.rho(a.unit), linalg.identity(x.dim)):
        bad.append("unit does not act as identity")
    lhs = np.einsum("iab,jbc->ijac", x.action, x.action) % p
    rhs = np.einsum("ijk,kab->ijab", a.mul, x.action) % p
    if not np.array_equal(lhs, rhs):
        bad.append("action is not multiplicative")
    return bad


@dataclass
class ModuleHom:
    """Module map: v -> v @ matrix, intertwining all actions."""

    source: RightModule
    target: RightModule
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64) % self.source.p
        if self.matrix.shape != (self.source.dim, self.target.dim):
            raise ValueError("hom matrix shape mismatch")

    def intertwines(self) -> bool:
        p = self.source.p
        lhs = np.einsum("iab,bc->iac", self.source.action, self.matrix) % p
        rhs = np.einsum("ab,ibc->iac", self.matrix, self.target.action) % p
        return np.array_equal(lhs, rhs)

    def is_iso(self) -> bool:
        return (
            self.source.dim == self.target.dim
            and linalg.rank(self.matrix, self.source.p) == self.source.dim
        )


def compose(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    """Apply f, then g."""
    if f.target is not g.source and f.target.dim != g.source.dim:
        raise AlgebraMismatch("hom composition shape mismatch")
    return ModuleHom(f.source, g.target, linalg.matmul(f.matrix, g.matrix, f.source.p))


def identity_hom(x: RightModule) -> ModuleHom:
    return ModuleHom(x, x, linalg.identity(x.dim))


def direct_sum(mods, algebra: StructureAlgebra | None = None):
    """Direct sum with block-diagonal action; returns (module, slices)."""
    if not mods:
        if algebra is None:
            raise ValueError("direct_sum of nothing needs an algebra")
        return zero_module(algebra), []
    a = mods[0].algebra
    for m in mods[1:]:
        if not same_algebra(m.algebra, a):
            raise AlgebraMismatch("direct sum over different algebras")
    total = sum(m.dim for m in mods)
    action = linalg.zeros((a.dim, total, total))
    slices = []
    offset = 0
    for m in mods:
        sl = slice(offset, offset + m.dim)
        action[:, sl, sl] = m.action
        slices.append(sl)
        offset += m.dim
    return RightModule(a, action), slices


def submodule_from_generators(x: RightModule, gens):
    """Smallest action-stable subspace containing the rows.

    Returns (sub, inclusion); the basis is the RREF of the closure, so the
    result is deterministic.
    """
    a = x.algebra
    p = a.p
    gens = np.atleast_2d(linalg.mat(gens, p))
    if gens.size == 0:
        gens = linalg.zeros((0, x.dim))
    basis = linalg.nonzero_rows(linalg.row_basis(gens, p))
    while True:
        if basis.shape[0] == 0:
            break
        images = np.einsum("ga,iab->igb", basis, x.action).reshape(-1, x.dim) % p
        combined = linalg.nonzero_rows(linalg.row_basis(np.vstack([basis, images]), p))
        if combined.shape[0] == basis.shape[0]:
            basis = combined
            break
        basis = combined
    k = basis.shape[0]
    action = linalg.zeros((a.dim, k, k))
    if k:
        for i in range(a.dim):
            rows = linalg.matmul(basis, x.action[i], p)
            action[i] = linalg.solve_linear(basis, rows, p)
    sub = RightModule(a, action)
    return sub, ModuleHom(sub, x, basis)


def quotient_module(x: RightModule, sub_rows):
    """Quotient by an action-stable row space; returns (q, projection)."""
    a = x.algebra
    p = a.p
    sub_rows = linalg.mat(sub_rows, p).reshape(-1, x.dim)
    rref, rk, pivots = linalg.row_reduce(sub_rows, p)
    rref = rref[:rk]
    for i in range(a.dim):
        moved = linalg.matmul(rref, x.action[i], p)
        if not linalg.rowspace_contains(rref, pivots, moved, p):
            raise NotStable(f"subspace not stable under basis element {i}")
    proj, lift = quotient_data(rref, x.dim, p)
    action = np.matmul(np.matmul(lift, x.action) % p, proj) % p
    q = RightModule(a, action)
    return q, ModuleHom(x, q, proj)


def socle(x: RightModule):
    """Annihilator of the radical: the largest semisimple submodule."""
    a = x.algebra
    if a.radical.shape[0] == 0 or x.dim == 0:
        return x, identity_hom(x)
    mats = x.rho_rows(a.radical)  # (r, d, d)
    stacked = np.concatenate([mats[i] for i in range(mats.shape[0])], axis=1)
    rows = linalg.kernel_basis(stacked, a.p)
    return submodule_from_generators(x, rows)


def radical_submodule(x: RightModule):
    """x * rad(A) as a submodule."""
    a = x.algebra
    if a.radical.shape[0] == 0 or x.dim == 0:
        return submodule_from_generators(x, linalg.zeros((0, x.dim)))
    mats = x.rho_rows(a.radical)
    rows = mats.reshape(-1, x.dim)
    return submodule_from_generators(x, rows)


def top_of_module(x: RightModule):
    """(top, projection) with top = x / x*rad(A)."""
    sub, incl = radical_submodule(x)
    return quotient_module(x, incl.matrix)


# ---------------------------------------------------------------------------
# canonical modules and projective presentations


@dataclass
class ProjectiveInfo:
    """The projective e_i A, with its basis as rows of the algebra."""

    index: int
    module: RightModule
    rows: np.ndarray  # (k, dim A): basis elements, as algebra elements


def canonical_modules(a: StructureAlgebra):
    """(regular, simples, projectives): A_A, the S_i, and the e_i A."""
    if "canonical" not in a._cache:
        p = a.p
        n = a.dim
        action = a.mul.transpose(1, 0, 2).copy()  # action[j][i,k] = c[i,j,k]
        regular = RightModule(a, action, name="A")
        projectives = []
        simples = []
        for idx in range(a.idempotents.shape[0]):
            e = a.idempotents[idx]
            sub, incl = submodule_from_generators(regular, e.reshape(1, n))
            sub.name = f"P{idx}"
            projectives.append(ProjectiveInfo(idx, sub, incl.matrix))
            s, _ = top_of_module(sub)
            s.name = f"S{idx}"
            simples.append(s)
        a._cache["canonical"] = (regular, simples, projectives)
    return a._cache["canonical"]


@dataclass
class Presentation:
    """Minimal projective presentation data for a module."""

    parts: list  # (idempotent index, generator image row in x)
    cover: RightModule
    part_slices: list
    pi: ModuleHom
    kernel_rows: np.ndarray  # (dim kernel, dim cover)
    lift: np.ndarray  # (dim x, dim cover), lift @ pi = identity


def presentation(x: RightModule) -> Presentation:
    """Projective cover presentation, cached on the module."""
    if "presentation" in x._cache:
        return x._cache["presentation"]
    a = x.algebra
    p = a.p
    _, _, projectives = canonical_modules(a)
    if x.dim == 0:
        cover, slices = direct_sum([], a)
        pres = Presentation([], cover, slices, ModuleHom(cover, x, linalg.zeros((0, 0))),
                            linalg.zeros((0, 0)), linalg.zeros((0, 0)))
        x._cache["presentation"] = pres
        return pres
    t, proj_top = top_of_module(x)
    parts = []
    for info in projectives:
        e = a.idempotents[info.index]
        img = linalg.nonzero_rows(linalg.row_basis(t.rho(e), p))
        for wbar in img:
            w = linalg.solve_linear(proj_top.matrix, wbar.reshape(1, -1), p)
            v = linalg.matmul(w, x.rho(e), p)[0]
            parts.append((info.index, v))
    cover, slices = direct_sum([projectives[i].module for i, _ in parts], a)
    pi_rows = []
    for i, v in parts:
        evals = np.einsum("jc,cab->jab", projectives[i].rows, x.action) % p
        pi_rows.append(np.einsum("a,jab->jb", v, evals) % p)
    pi_matrix = np.vstack(pi_rows) if pi_rows else linalg.zeros((0, x.dim))
    if linalg.rank(pi_matrix, p) != x.dim:
        raise AssertionError("projective cover map is not surjective")
    pi = ModuleHom(cover, x, pi_matrix)
    kernel = linalg.kernel_basis(pi_matrix, p)
    lift = linalg.solve_linear(pi_matrix, linalg.identity(x.dim), p)
    pres = Presentation(parts, cover, slices, pi, kernel, lift)
    x._cache["presentation"] = pres
    return pres


def projective_cover(x: RightModule):
    pres = presentation(x)
    return pres.cover, pres.pi


def syzygy_step(x: RightModule):
    """(Omega(x), inclusion into the cover)."""
    pres = presentation(x)
    return submodule_from_generators(pres.cover, pres.kernel_rows)


def syzygy(x: RightModule, s: int) -> RightModule:
    if s < 0:
        raise ValueError("negative syzygy index")
    cur = x
    for _ in range(s):
        cur = syzygy_step(cur)[0]
    return cur


def is_projective(x: RightModule) -> bool:
    """Exact test: the minimal cover has zero kernel."""
    return presentation(x).kernel_rows.shape[0] == 0


# ---------------------------------------------------------------------------
# hom spaces


def hom_space(x: RightModule, y: RightModule) -> list[ModuleHom]:
    """Deterministic basis of Hom_A(x, y), via the presentation of x."""
    if not same_algebra(x.algebra, y.algebra):
        raise AlgebraMismatch("hom between modules over different algebras")
    a = x.algebra
    p = a.p
    if x.dim == 0 or y.dim == 0:
        return []
    pres = presentation(x)
    _, _, projectives = canonical_modules(a)
    h = len(pres.parts)
    dy = y.dim
    evals = []  # per part: (k_t, dy, dy)
    for i, _ in pres.parts:
        evals.append(np.einsum("jc,cab->jab", projectives[i].rows, y.action) % p)
    # unknown u = (v_1 .. v_h) in F^(h*dy); constraints as columns of G
    blocks = []
    gauge = linalg.zeros((h * dy, h * dy))
    for t, (i, _) in enumerate(pres.parts):
        gauge[t * dy:(t + 1) * dy, t * dy:(t + 1) * dy] = (
            linalg.identity(dy) - y.rho(a.idempotents[i])
        ) % p
    blocks.append(gauge)
    dk = pres.kernel_rows.shape[0]
    if dk:
        cols = linalg.zeros((h * dy, dk * dy))
        for t, sl in enumerate(pres.part_slices):
            seg = pres.kernel_rows[:, sl]  # (dk, k_t)
            m = np.einsum("kj,jab->kab", seg, evals[t]) % p  # (dk, dy, dy)
            cols[t * dy:(t + 1) * dy] = m.transpose(1, 0, 2).reshape(dy, dk * dy)
        blocks.append(cols)
    g = np.hstack(blocks)
    solutions = linalg.kernel_basis(g, p)
    homs = []
    for u in solutions:
        phi_hat = linalg.zeros((pres.cover.dim, dy))
        for t, sl in enumerate(pres.part_slices):
            v = u[t * dy:(t + 1) * dy]
            phi_hat[sl] = np.einsum("a,jab->jb", v, evals[t]) % p
        phi = linalg.matmul(pres.lift, phi_hat, p)
        homs.append(ModuleHom(x, y, phi))
    return homs


def end_dim(x: RightModule) -> int:
    return len(hom_space(x, x))


# ---------------------------------------------------------------------------
# tensor products, duality, torsionless test


class TensorModule(RightModule):
    """x tensor_U M as a right V-module, with quotient bookkeeping."""

    def __init__(self, algebra, action, proj, lift, factor_dims):
        super().__init__(algebra, action)
        self.proj = proj  # (dx*dm, q)
        self.lift = lift  # (q, dx*dm)
        self.factor_dims = factor_dims  # (dx, dm)

    def pure(self, v, w) -> np.ndarray:
        p = self.p
        return linalg.matmul(np.kron(linalg.mat(v, p), linalg.mat(w, p)).reshape(1, -1),
                             self.proj, p)[0]

    def pure_matrix(self, c: int) -> np.ndarray:
        """Matrix (dx x q) sending v to the class of v tensor e_c."""
        dx, dm = self.factor_dims
        idx = np.arange(dx) * dm + c
        return self.proj[idx]


def tensor_over_algebra(x: RightModule, m: Bimodule) -> TensorModule:
    """x tensor_U M: quotient of x tensor_k M by the balancing subspace."""
    if not same_algebra(x.algebra, m.left):
        raise AlgebraMismatch("module is not over the bimodule's left algebra")
    u = m.left
    v = m.right
    p = u.p
    dx, dm = x.dim, m.dim
    d = dx * dm
    if d == 0:
        t = TensorModule(v, linalg.zeros((v.dim, 0, 0)), linalg.zeros((d, 0)),
                         linalg.zeros((0, d)), (dx, dm))
        return t
    balance = []
    for i in range(u.dim):
        balance.append((np.kron(x.action[i], linalg.identity(dm))
                        - np.kron(linalg.identity(dx), m.left_action[i])) % p)
    rows = np.vstack(balance)
    proj, lift = quotient_data(rows, d, p)
    q = proj.shape[1]
    action = linalg.zeros((v.dim, q, q))
    for j in range(v.dim):
        big = np.kron(linalg.identity(dx), m.right_action[j]) % p
        action[j] = linalg.matmul(linalg.matmul(lift, big, p), proj, p)
    return TensorModule(v, action, proj, lift, (dx, dm))


def tensor_hom(tx: TensorModule, tx2: TensorModule, f: ModuleHom) -> ModuleHom:
    """f tensor identity on the bimodule, between two tensor modules."""
    p = tx.p
    dm = tx.factor_dims[1]
    big = np.kron(f.matrix, linalg.identity(dm)) % p
    mat = linalg.matmul(linalg.matmul(tx.lift, big, p), tx2.proj, p)
    return ModuleHom(tx, tx2, mat)


def dual_star(x: RightModule) -> RightModule:
    """Hom_A(x, A) as a right module over the opposite algebra."""
    a = x.algebra
    p = a.p
    if "opposite" not in a._cache:
        a._cache["opposite"] = opposite(a)
    aop = a._cache["opposite"]
    regular = canonical_modules(a)[0]
    homs = hom_space(x, regular)
    h = len(homs)
    if h == 0:
        return zero_module(aop)
    flat = np.vstack([f.matrix.reshape(1, -1) for f in homs])
    action = linalg.zeros((a.dim, h, h))
    for i in range(a.dim):
        lm = a.left_mult(linalg.identity(a.dim)[i])
        moved = np.vstack(
            [linalg.matmul(f.matrix, lm, p).reshape(1, -1) for f in homs]
        )
        action[i] = linalg.solve_linear(flat, moved, p)
    return RightModule(aop, action, name=f"({x.name})*" if x.name else "")


def torsionless_test(x: RightModule):
    """(torsionless, embedding into a power of the regular module)."""
    a = x.algebra
    regular = canonical_modules(a)[0]
    if x.dim == 0:
        target, _ = direct_sum([], a)
        return True, ModuleHom(x, target, linalg.zeros((0, 0)))
    homs = hom_space(x, regular)
    if not homs:
        return False, None
    phi = np.hstack([f.matrix for f in homs])
    if linalg.rank(phi, a.p) != x.dim:
        return False, None
    target, _ = direct_sum([regular] * len(homs))
    return True, ModuleHom(x, target, phi)


# ---------------------------------------------------------------------------
# triples over triangular algebras


@dataclass
class TriangleModule:
    """Module (X_U, Y_V, f : X tensor_U M -> Y) over a triangular algebra."""

    x: RightModule
    y: RightModule
    tensor: TensorModule
    f: ModuleHom
    x_rows: np.ndarray | None = None  # embedding data when extracted from a module
    y_rows: np.ndarray | None = None


def make_triple(lam: StructureAlgebra, x: RightModule, y: RightModule,
                f_matrix) -> TriangleModule:
    info = lam.triangle
    if info is None:
        raise ShapeMismatch("algebra has no triangular block structure")
    if not same_algebra(x.algebra, info.u) or not same_algebra(y.algebra, info.v):
        raise ShapeMismatch("triple components over the wrong corner algebras")
    tensor = tensor_over_algebra(x, info.bimodule)
    f = ModuleHom(tensor, y, linalg.mat(f_matrix, lam.p).reshape(tensor.dim, y.dim))
    if not f.intertwines():
        raise ShapeMismatch("connecting map is not V-linear")
    return TriangleModule(x, y, tensor, f)


def triple_to_module(t: TriangleModule, lam: StructureAlgebra) -> RightModule:
    """Flatten (X, Y, f) to a module over the triangular algebra."""
    info = lam.triangle
    if info is None:
        raise ShapeMismatch("algebra has no triangular block structure")
    if not same_algebra(t.x.algebra, info.u) or not same_algebra(t.y.algebra, info.v):
        raise ShapeMismatch("triple does not match the triangular algebra")
    p = lam.p
    dx, dy = t.x.dim, t.y.dim
    d = dx + dy
    action = linalg.zeros((lam.dim, d, d))
    nu = info.u.dim
    dm = info.bimodule.dim
    for i in range(nu):
        action[i][:dx, :dx] = t.x.action[i]
    for c in range(dm):
        action[nu + c][:dx, dx:] = linalg.matmul(t.tensor.pure_matrix(c), t.f.matrix, p)
    for j in range(info.v.dim):
        action[nu + dm + j][dx:, dx:] = t.y.action[j]
    return RightModule(lam, action)


def _embed(lam: StructureAlgebra, sl: slice, coords) -> np.ndarray:
    out = linalg.zeros(lam.dim)
    out[sl] = coords
    return out


def module_to_triple(z: RightModule) -> TriangleModule:
    """Split a module over a triangular algebra into its triple."""
    lam = z.algebra
    info = lam.triangle
    if info is None:
        raise ShapeMismatch("algebra has no triangular block structure")
    if "triple" in z._cache:
        return z._cache["triple"]
    p = lam.p

    def corner(alg, sl):
        e = _embed(lam, sl, alg.unit)
        rows = linalg.nonzero_rows(linalg.row_basis(z.rho(e), p))
        k = rows.shape[0]
        action = linalg.zeros((alg.dim, k, k))
        if k:
            for i in range(alg.dim):
                full = _embed(lam, sl, linalg.identity(alg.dim)[i])
                moved = linalg.matmul(rows, z.rho(full), p)
                action[i] = linalg.solve_linear(rows, moved, p)
        return RightModule(alg, action), rows

    x_mod, x_rows = corner(info.u, info.u_slice)
    y_mod, y_rows = corner(info.v, info.v_slice)
    tensor = tensor_over_algebra(x_mod, info.bimodule)
    dm = info.bimodule.dim
    dx = x_mod.dim
    if dx * dm:
        bigmap = linalg.zeros((dx * dm, y_mod.dim))
        for c in range(dm):
            full = _embed(lam, info.m_slice, linalg.identity(dm)[c])
            landed = linalg.matmul(x_rows, z.rho(full), p)
            bigmap[np.arange(dx) * dm + c] = (
                linalg.solve_linear(y_rows, landed, p) if y_mod.dim else linalg.zeros((dx, 0))
            )
        # the map must kill the balancing subspace
        fmat = linalg.matmul(tensor.lift, bigmap, p)
        back = linalg.matmul(tensor.proj, fmat, p)
        if not np.array_equal(back, bigmap):
            raise AssertionError("connecting map does not factor through the tensor quotient")
    else:
        fmat = linalg.zeros((tensor.dim, y_mod.dim))
    f = ModuleHom(tensor, y_mod, fmat)
    triple = TriangleModule(x_mod, y_mod, tensor, f, x_rows=x_rows, y_rows=y_rows)
    z._cache["triple"] = triple
    return triple


def corner_restrict(z: RightModule, which: str = "u") -> RightModule:
    """The U- (or V-) corner of a module over a triangular algebra."""
    t = module_to_triple(z)
    if which == "u":
        return t.x
    if which == "v":
        return t.y
    raise ValueError("which must be 'u' or 'v'")
