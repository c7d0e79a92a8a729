"""Grids for the classical factors, constructed as explicit elements of the
enveloping TROs, and the machine verification of their defining properties.

The spin grid convention: given a spin system with N symmetries, the grid is

    u1 = (id - s1)/2,   ut1 = -(id + s1)/2,
    u_{k+1} = (s_{2k} + i s_{2k+1})/2,   ut_{k+1} = (s_{2k} - i s_{2k+1})/2,

for k = 1..floor((N-1)/2), plus u0 = s_N exactly when N is even.  The u0
parity is forced: without it the grid would span only N of the N+1 factor
dimensions when N is even, and with it the last symmetry would be counted
twice when N is odd.  Span dimension is machine-checked below, so the
convention is verified rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .cartan import (
    CartanDescriptor,
    ExceptionalFactorError,
    embedded_basis,
    enveloping_tro,
    hilbert_frame,
    intrinsic_dim,
    is_exceptional,
)
from .exact import HALF, I, SIGMA1, SIGMA2, SIGMA3, identity, kron_all, mat_mul, matrix_unit
from .tro import (
    TroElement,
    TroSpace,
    element_span_dim,
    flatten_element,
    is_tripotent,
    jordan_triple,
)

_ID2 = identity(2)


def _block_mul(x: TroElement, y: TroElement) -> TroElement:
    # algebra product for square-block elements
    return TroElement(x.space, tuple(mat_mul(a, b) for a, b in zip(x.blocks, y.blocks)))


@dataclass(frozen=True, slots=True)
class SpinSystem:
    """Self-adjoint elements s_i with (s_i s_j + s_j s_i)/2 = delta_ij * id."""

    identity: TroElement
    symmetries: tuple

    def __post_init__(self) -> None:
        id_el = self.identity
        for idx, s in enumerate(self.symmetries):
            if s.space != id_el.space:
                raise ValueError(f"symmetry {idx} lives in a different space")
            for b, blk in enumerate(s.blocks):
                if blk.dagger() != blk:
                    raise ValueError(f"symmetry {idx}, block {b} is not self-adjoint")
        for i, si in enumerate(self.symmetries):
            for j in range(i, len(self.symmetries)):
                sj = self.symmetries[j]
                anti = (_block_mul(si, sj) + _block_mul(sj, si)).scale(HALF)
                ok = anti == id_el if i == j else anti.is_zero()
                if not ok:
                    raise ValueError(f"anticommutator relation fails for ({i},{j})")

    @property
    def space(self) -> TroSpace:
        return self.identity.space

    def __len__(self) -> int:
        return len(self.symmetries)


def _odd_symmetry_matrices(n: int) -> list:
    """2n anticommuting self-adjoint involutions in M(2^n), as tensor words."""
    mats = [kron_all([SIGMA1] + [_ID2] * (n - 1)),
            kron_all([SIGMA2] + [_ID2] * (n - 1))]
    for l in range(1, n):
        prefix = [SIGMA3] * l
        tail = [_ID2] * (n - l - 1)
        mats.append(kron_all(prefix + [SIGMA1] + tail))
        mats.append(kron_all(prefix + [SIGMA2] + tail))
    return mats


@lru_cache(maxsize=None)
def standard_spin_system(d: CartanDescriptor) -> SpinSystem:
    """The standard spin system spanning the spin factor inside its TRO.

    Odd dimension 2n+1: 2n symmetries in M(2^n).  Even dimension 2n: 2n-1
    symmetries in M(2^(n-1)) + M(2^(n-1)), the last one carrying opposite
    signs in the two blocks.
    """
    if d.kind != "IV":
        raise ValueError(f"spin system requested for {d}")
    dim = d.params[0]
    target = enveloping_tro(d)
    if dim % 2 == 1:
        n = (dim - 1) // 2
        mats = _odd_symmetry_matrices(n)
        ident = TroElement(target, (identity(2 ** n),))
        syms = tuple(TroElement(target, (m,)) for m in mats)
    else:
        n = dim // 2
        base = _odd_symmetry_matrices(n - 1)
        ident_blk = identity(2 ** (n - 1))
        ident = TroElement(target, (ident_blk, ident_blk))
        syms = [TroElement(target, (m, m)) for m in base]
        last = kron_all([SIGMA3] * (n - 1))
        syms.append(TroElement(target, (last, -last)))
        syms = tuple(syms)
    return SpinSystem(ident, syms)


@lru_cache(maxsize=None)
def spin_basis_elements(d: CartanDescriptor) -> tuple:
    """(identity, s_1, ..., s_{dim-1}): the embedded spin coordinate basis."""
    system = standard_spin_system(d)
    return (system.identity,) + system.symmetries


@dataclass(frozen=True, slots=True)
class Grid:
    kind: str
    factor: Optional[CartanDescriptor]
    ambient: TroSpace
    elements: tuple
    labels: tuple
    system: Optional[SpinSystem] = None

    def by_label(self, label: str) -> TroElement:
        return self.elements[self.labels.index(label)]


def rectangular_grid(d: CartanDescriptor) -> Grid:
    """The grid (E_ij, E_ji) of I(n,m); for one-row/one-column factors the
    signed-incidence frame spanning the rank-one factor."""
    if d.kind != "I":
        raise ValueError(f"rectangular grid requested for {d}")
    n, m = d.params
    if min(n, m) == 1:
        h = n * m
        frame = hilbert_frame(h)
        return Grid("rectangular", d, frame[0].space, tuple(frame),
                    tuple(f"g[{i}]" for i in range(1, h + 1)))
    target = enveloping_tro(d)
    elements = []
    labels = []
    for i in range(n):
        for j in range(m):
            elements.append(TroElement(
                target,
                (matrix_unit(n, m, i, j), matrix_unit(m, n, j, i)),
            ))
            labels.append(f"g[{i + 1},{j + 1}]")
    return Grid("rectangular", d, target, tuple(elements), tuple(labels))


def hermitian_grid(d: CartanDescriptor) -> Grid:
    """{E_ii} and {E_ij + E_ji, i<j} spanning the symmetric matrices in M(n)."""
    if d.kind != "III":
        raise ValueError(f"hermitian grid requested for {d}")
    n = d.params[0]
    target = enveloping_tro(d)
    elements = []
    labels = []
    for i in range(n):
        for j in range(i, n):
            if i == j:
                blk = matrix_unit(n, n, i, i)
            else:
                blk = matrix_unit(n, n, i, j) + matrix_unit(n, n, j, i)
            elements.append(TroElement(target, (blk,)))
            labels.append(f"g[{i + 1},{j + 1}]")
    return Grid("hermitian", d, target, tuple(elements), tuple(labels))


def symplectic_grid(d: CartanDescriptor) -> Grid:
    """{E_ij - E_ji, i<j} spanning the skew-symmetric matrices in M(n)."""
    if d.kind != "II":
        raise ValueError(f"symplectic grid requested for {d}")
    n = d.params[0]
    target = enveloping_tro(d)
    elements = []
    labels = []
    for i in range(n):
        for j in range(i + 1, n):
            blk = matrix_unit(n, n, i, j) - matrix_unit(n, n, j, i)
            elements.append(TroElement(target, (blk,)))
            labels.append(f"g[{i + 1},{j + 1}]")
    return Grid("symplectic", d, target, tuple(elements), tuple(labels))


def spin_grid_from_system(system: SpinSystem,
                          factor: Optional[CartanDescriptor] = None) -> Grid:
    """Build the spin grid of a spin system (see the module docstring)."""
    n_sym = len(system.symmetries)
    if n_sym < 3:
        raise ValueError(f"a spin grid needs at least 3 symmetries, got {n_sym}")
    elements = []
    labels = []
    s1 = system.symmetries[0]
    elements.append((system.identity - s1).scale(HALF))
    labels.append("u1")
    elements.append((system.identity + s1).scale(-HALF))
    labels.append("ut1")
    for k in range(1, (n_sym - 1) // 2 + 1):
        a = system.symmetries[2 * k - 1]
        b = system.symmetries[2 * k]
        elements.append((a + b.scale(I)).scale(HALF))
        labels.append(f"u{k + 1}")
        elements.append((a - b.scale(I)).scale(HALF))
        labels.append(f"ut{k + 1}")
    if n_sym % 2 == 0:
        elements.append(system.symmetries[-1])
        labels.append("u0")
    return Grid("spin", factor, system.space, tuple(elements), tuple(labels),
                system=system)


def spin_grid(d: CartanDescriptor) -> Grid:
    if d.kind != "IV":
        raise ValueError(f"spin grid requested for {d}")
    return spin_grid_from_system(standard_spin_system(d), factor=d)


def grid_for(d: CartanDescriptor) -> Grid:
    """The standard grid construction for each non-exceptional factor kind."""
    if is_exceptional(d):
        raise ExceptionalFactorError(f"{d}: exceptional factor has no grid model")
    if d.kind == "I":
        return rectangular_grid(d)
    if d.kind == "II":
        return symplectic_grid(d)
    if d.kind == "III":
        return hermitian_grid(d)
    return spin_grid(d)


# --- verification -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ElementCheck:
    label: str
    tripotent: bool
    minimal: bool
    expect_minimal: bool

    @property
    def ok(self) -> bool:
        return self.tripotent and (self.minimal or not self.expect_minimal)


@dataclass(frozen=True, slots=True)
class GridReport:
    kind: str
    factor: Optional[str]
    ambient: str
    element_checks: tuple
    span_found: int
    span_expected: int
    system_ok: Optional[bool]
    identity_checks: tuple  # (name, bool) pairs, spin only

    @property
    def span_ok(self) -> bool:
        return self.span_found == self.span_expected

    @property
    def ok(self) -> bool:
        return (all(c.ok for c in self.element_checks)
                and self.span_ok
                and self.system_ok is not False
                and all(ok for _, ok in self.identity_checks))

    def failures(self) -> list:
        out = []
        for c in self.element_checks:
            if not c.tripotent:
                out.append(f"{c.label}: not tripotent")
            if c.expect_minimal and not c.minimal:
                out.append(f"{c.label}: not minimal")
        if not self.span_ok:
            out.append(f"span is {self.span_found}, expected {self.span_expected}")
        if self.system_ok is False:
            out.append("spin system relations fail")
        out.extend(name for name, ok in self.identity_checks if not ok)
        return out

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "factor": self.factor,
            "ambient": self.ambient,
            "elements": [
                {"label": c.label, "tripotent": c.tripotent,
                 "minimal": c.minimal, "expect_minimal": c.expect_minimal}
                for c in self.element_checks
            ],
            "span": {"found": self.span_found, "expected": self.span_expected,
                     "ok": self.span_ok},
            "spin_system_ok": self.system_ok,
            "identity_checks": [{"name": n, "ok": ok}
                                for n, ok in self.identity_checks],
            "ok": self.ok,
            "failures": self.failures(),
        }


def _in_complex_line(e: TroElement, w: TroElement) -> bool:
    """True iff w is a complex multiple of e."""
    fe = flatten_element(e).entries
    fw = flatten_element(w).entries
    pivot = next((idx for idx, v in enumerate(fe) if not v.is_zero()), None)
    if pivot is None:
        return w.is_zero()
    lam = fw[pivot] / fe[pivot]
    return w == e.scale(lam)


def _expect_minimal(kind: str, label: str) -> bool:
    # Two grid families contain rank-2 tripotents by construction: the spin
    # u0 (its range projection is the full identity) and the off-diagonal
    # hermitian elements E_ij + E_ji (range projection E_ii + E_jj).  Those
    # are exempt from the minimality requirement; everything else must pass.
    if kind == "spin":
        return label != "u0"
    if kind == "hermitian":
        inner = label[2:-1].split(",")
        return len(inner) == 2 and inner[0] == inner[1]
    return True


def _minimality_basis(g: Grid) -> Sequence[TroElement]:
    # {e, Z, e} ranges over the embedded factor, not the ambient TRO
    if g.system is not None:
        return (g.system.identity,) + g.system.symmetries
    if g.factor is not None:
        return embedded_basis(g.factor)
    return g.elements


def _spin_identity_checks(g: Grid) -> tuple:
    u = {label: el for label, el in zip(g.labels, g.elements)}
    pair_top = max((int(l[1:]) for l in g.labels if l.startswith("u") and
                    not l.startswith("ut") and l != "u0"), default=1)
    checks = []
    for j in range(2, pair_top + 1):
        for k in range(2, pair_top + 1):
            if j == k:
                continue
            got = jordan_triple(u[f"u{j}"], u[f"ut{k}"], u[f"ut{j}"])
            checks.append((f"{{u{j},ut{k},ut{j}}} = -u{k}/2",
                           got == u[f"u{k}"].scale(-HALF)))
    for j in range(2, pair_top + 1):
        got = jordan_triple(u[f"u{j}"], u["ut1"], u[f"ut{j}"])
        checks.append((f"{{u{j},ut1,ut{j}}} = -u1/2",
                       got == u["u1"].scale(-HALF)))
        got = jordan_triple(u["u1"], u[f"ut{j}"], u["ut1"])
        checks.append((f"{{u1,ut{j},ut1}} = -u{j}/2",
                       got == u[f"u{j}"].scale(-HALF)))
    return tuple(checks)


def _system_relations_hold(system: SpinSystem) -> bool:
    # SpinSystem.__post_init__ already enforces these; re-derive for reporting
    try:
        SpinSystem(system.identity, system.symmetries)
    except ValueError:
        return False
    return True


def verify_grid(g: Grid) -> GridReport:
    """Check tripotency, span, minimality and (for spin) the system relations
    and the triple-product identities; failures are reported, never raised."""
    basis = _minimality_basis(g)
    checks = []
    for label, e in zip(g.labels, g.elements):
        tripotent = is_tripotent(e)
        minimal = all(_in_complex_line(e, jordan_triple(e, b, e)) for b in basis)
        checks.append(ElementCheck(label, tripotent, minimal,
                                   expect_minimal=_expect_minimal(g.kind, label)))
    expected = intrinsic_dim(g.factor) if g.factor is not None else len(basis)
    found = element_span_dim(list(g.elements))
    system_ok = _system_relations_hold(g.system) if g.system is not None else None
    identity_checks = _spin_identity_checks(g) if g.kind == "spin" else ()
    return GridReport(
        kind=g.kind,
        factor=g.factor.to_text() if g.factor is not None else None,
        ambient=g.ambient.to_text(),
        element_checks=tuple(checks),
        span_found=found,
        span_expected=expected,
        system_ok=system_ok,
        identity_checks=identity_checks,
    )
