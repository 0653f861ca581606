"""Second quantization on a truncated fermionic Fock space.

Modes are ordered ascending by (energy, label) and mapped to qubits in that
order; mode 0 is the most significant bit of the occupation-basis index.
Creation and annihilation matrices carry the usual sign string over all
earlier modes, so the canonical anticommutation relations hold exactly.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

import numpy as np
from scipy import sparse

from .osc1d import OscParams, energy
from .osc3d import Qnum3D, energy3d

__all__ = [
    "MAX_MODES",
    "ModeSet",
    "FockState",
    "ParticleFamilies",
    "ladder",
    "hamiltonian_raw",
    "hamiltonian_normal_ordered",
    "sea_vacuum",
    "dirac_vacuum",
    "particle_labels",
    "charge_operator",
    "one_body_lift",
    "number_operator",
    "anticommutator",
    "write_sparse",
    "read_sparse",
]

MAX_MODES = 14


def _sort_key(label):
    if isinstance(label, Qnum3D):
        return (label.n_sign * label.n_abs, label.n_sign, label.kappa, label.g)
    return (label,)


@dataclass(frozen=True)
class ModeSet:
    """Ordered, labelled single-particle modes with their energies."""

    labels: tuple
    energies: tuple
    dimension: int = 1
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(self.energies):
            raise ValueError("labels and energies differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("mode labels must be unique")
        if len(self.labels) > MAX_MODES:
            raise ValueError(f"{len(self.labels)} modes exceed the limit of {MAX_MODES} "
                             f"(Fock dimension 2^{len(self.labels)})")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @classmethod
    def from_labels(cls, labels: Iterable[Hashable], energies: Iterable[float],
                    dimension: int = 1) -> "ModeSet":
        pairs = sorted(zip(energies, labels), key=lambda p: (p[0], _sort_key(p[1])))
        return cls(tuple(lab for _, lab in pairs), tuple(float(e) for e, _ in pairs), dimension)

    @classmethod
    def one_dim(cls, params: OscParams, n_neg: int, n_pos: int) -> "ModeSet":
        """Modes n = -n_neg .. -1 (sea) and 0 .. n_pos - 1 (positive branch)."""
        labels = list(range(-n_neg, 0)) + list(range(0, n_pos))
        return cls.from_labels(labels, [energy(params, n) for n in labels], dimension=1)

    @classmethod
    def three_dim(cls, params: OscParams, states: Iterable[Qnum3D]) -> "ModeSet":
        states = list(states)
        energies = [energy3d(params, q.n_sign, q.n_abs, q.kappa) for q in states]
        return cls.from_labels(states, energies, dimension=3)

    def __len__(self):
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def fock_dim(self) -> int:
        return 1 << len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"mode {label!r} is not in this mode set") from None

    def energy_of(self, label) -> float:
        return self.energies[self.index(label)]

    def is_sea(self, label) -> bool:
        """True for negative-energy modes, which are filled in the vacuum."""
        return self.energy_of(label) < 0

    @property
    def sea_labels(self) -> list:
        return [lab for lab, e in zip(self.labels, self.energies) if e < 0]

    @property
    def positive_labels(self) -> list:
        return [lab for lab, e in zip(self.labels, self.energies) if e >= 0]

    def describe(self) -> list[str]:
        """One "mode <index> <label> <energy>" line per mode."""
        return [f"mode {i} {lab} {float(e):.17g}"
                for i, (lab, e) in enumerate(zip(self.labels, self.energies))]


@dataclass(frozen=True)
class FockState:
    vector: np.ndarray
    modes: ModeSet
    normalized: bool = True

    def occupations(self) -> list[int] | None:
        """Occupation pattern in mode order if the state is a single basis vector."""
        nz = np.flatnonzero(np.abs(self.vector) > 1e-14)
        if len(nz) != 1:
            return None
        k = int(nz[0])
        m = self.modes.size
        return [(k >> (m - 1 - i)) & 1 for i in range(m)]


_SIGMA_MINUS = sparse.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
_Z = sparse.csr_matrix(np.diag([1.0, -1.0]))


def _annihilator(m: int, pos: int) -> sparse.csr_matrix:
    op = sparse.identity(1, format="csr")
    for j in range(m):
        if j < pos:
            factor = _Z
        elif j == pos:
            factor = _SIGMA_MINUS
        else:
            factor = sparse.identity(2, format="csr")
        op = sparse.kron(op, factor, format="csr")
    return op.astype(complex)


def ladder(modes: ModeSet, label, which: str = "annihilate") -> sparse.csr_matrix:
    """Sparse matrix of b (``which="annihilate"``) or b^dagger for one mode."""
    if which not in ("annihilate", "create"):
        raise ValueError("which must be 'annihilate' or 'create'")
    if modes.size > MAX_MODES:
        raise ValueError(f"refusing to build a 2^{modes.size} dimensional Fock space")
    op = _annihilator(modes.size, modes.index(label))
    return op if which == "annihilate" else op.conj().T.tocsr()


def anticommutator(a, b):
    return a @ b + b @ a


def number_operator(modes: ModeSet, label) -> sparse.csr_matrix:
    b = ladder(modes, label)
    return (b.conj().T @ b).tocsr()


def hamiltonian_raw(modes: ModeSet) -> sparse.csr_matrix:
    """sum_n E_n b_n^dagger b_n over every mode, sea included; unbounded below."""
    h = sparse.csr_matrix((modes.fock_dim, modes.fock_dim), dtype=complex)
    for lab, e in zip(modes.labels, modes.energies):
        h = h + e * number_operator(modes, lab)
    return h.tocsr()


def dirac_vacuum(modes: ModeSet) -> FockState:
    """The empty state |0_D>: no mode occupied."""
    v = np.zeros(modes.fock_dim, dtype=complex)
    v[0] = 1.0
    return FockState(v, modes)


def sea_vacuum(modes: ModeSet) -> FockState:
    """|0> = prod_{sea modes} b^dagger |0_D>, filled from the highest sea level down.

    The product is written b^dagger_{-1} b^dagger_{-2} ... |0_D>, so the
    deepest level is created first.
    """
    v = dirac_vacuum(modes).vector
    sea = sorted(modes.sea_labels, key=modes.energy_of)  # deepest first
    for lab in sea:
        v = ladder(modes, lab, "create") @ v
    return FockState(v, modes)


@dataclass(frozen=True)
class ParticleFamilies:
    """Particle/antiparticle relabelling of the raw mode operators.

    ``families`` maps a family name to ``{label: (raw mode, energy)}`` and
    ``annihilators`` gives the annihilation matrix of each relabelled mode:
    for a particle it is the raw b, for an antiparticle it is the raw
    b^dagger of the sea mode.  ``particle`` lists the family names carrying
    charge +e.
    """

    modes: ModeSet
    families: Mapping[str, Mapping]
    particle: tuple

    @cached_property
    def annihilators(self) -> dict:
        out = {}
        for name, members in self.families.items():
            kind = "annihilate" if name in self.particle else "create"
            out[name] = {lab: ladder(self.modes, raw, kind) for lab, (raw, _) in members.items()}
        return out

    def number(self, name: str, label) -> sparse.csr_matrix:
        a = self.annihilators[name][label]
        return (a.conj().T @ a).tocsr()

    def all_annihilators(self) -> list:
        return [(name, lab, op) for name, ops in self.annihilators.items() for lab, op in ops.items()]


def particle_labels(modes: ModeSet) -> ParticleFamilies:
    """Split the modes into particle and antiparticle families.

    One dimension: c_n = b_n (n >= 0) and d_n = b^dagger_{-n}.
    Three dimensions: b (kappa > 0, E > 0), c (kappa > 0, E < 0),
    d (kappa < 0, E > 0), f (kappa < 0, E < 0); family labels are
    (|n|, |kappa|, g) and all energies are reported as positive.
    """
    if modes.dimension == 1:
        fams = {"c": {}, "d": {}}
        for lab, e in zip(modes.labels, modes.energies):
            if lab >= 0:
                fams["c"][lab] = (lab, e)
            else:
                fams["d"][-lab] = (lab, abs(e))
        return ParticleFamilies(modes, fams, ("c",))
    fams = {"b": {}, "c": {}, "d": {}, "f": {}}
    for q, e in zip(modes.labels, modes.energies):
        positive = e >= 0
        if q.kappa > 0:
            name = "b" if positive else "c"
        else:
            name = "d" if positive else "f"
        fams[name][(q.n_abs, abs(q.kappa), q.g)] = (q, abs(e))
    return ParticleFamilies(modes, fams, ("b", "d"))


def hamiltonian_normal_ordered(modes: ModeSet) -> sparse.csr_matrix:
    """sum over particles E n^(particle) + sum over antiparticles |E| n^(anti).

    Built from the relabelled operators, so it equals the raw Hamiltonian
    minus the truncated sea energy.
    """
    fams = particle_labels(modes)
    h = sparse.csr_matrix((modes.fock_dim, modes.fock_dim), dtype=complex)
    for name, members in fams.families.items():
        for lab, (_, e_abs) in members.items():
            h = h + e_abs * fams.number(name, lab)
    return h.tocsr()


def charge_operator(modes: ModeSet, e: float = 1.0) -> sparse.csr_matrix:
    """Q = e (sum n^(particle) - sum n^(antiparticle)); vanishes on the sea vacuum."""
    fams = particle_labels(modes)
    q = sparse.csr_matrix((modes.fock_dim, modes.fock_dim), dtype=complex)
    for name, members in fams.families.items():
        sign = 1.0 if name in fams.particle else -1.0
        for lab in members:
            q = q + sign * e * fams.number(name, lab)
    return q.tocsr()


def one_body_lift(modes: ModeSet, kernel) -> sparse.csr_matrix:
    """sum_ab K_ab b_a^dagger b_b, with K indexed in mode order."""
    kernel = np.asarray(kernel)
    if kernel.shape != (modes.size, modes.size):
        raise ValueError(f"kernel shape {kernel.shape} does not match {modes.size} modes")
    ann = [ladder(modes, lab) for lab in modes.labels]
    out = sparse.csr_matrix((modes.fock_dim, modes.fock_dim), dtype=complex)
    for a in range(modes.size):
        create_a = ann[a].conj().T
        for b in range(modes.size):
            if kernel[a, b] != 0:
                out = out + kernel[a, b] * (create_a @ ann[b])
    return out.tocsr()


def write_sparse(op, fh, header: Iterable[str] = ()) -> None:
    """Write a matrix as '# ...' header lines followed by 'row col re im' lines.

    Rows and columns are zero-based; entries are emitted in row-major order
    with 17 significant digits, so output is deterministic.
    """
    coo = sparse.coo_matrix(op)
    fh.write(f"# shape {coo.shape[0]} {coo.shape[1]}\n")
    for line in header:
        fh.write(f"# {line}\n")
    order = np.lexsort((coo.col, coo.row))
    for k in order:
        v = complex(coo.data[k])
        fh.write(f"{coo.row[k]} {coo.col[k]} {v.real:.17g} {v.imag:.17g}\n")


def read_sparse(fh) -> tuple[sparse.csr_matrix, list[str]]:
    """Inverse of :func:`write_sparse`; returns the matrix and the header lines."""
    if isinstance(fh, str):
        fh = io.StringIO(fh)
    header, rows, cols, vals = [], [], [], []
    shape = None
    for line in fh:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            text = line[1:].strip()
            if text.startswith("shape ") and shape is None:
                parts = text.split()
                shape = (int(parts[1]), int(parts[2]))
            else:
                header.append(text)
            continue
        r, c, re_, im_ = line.split()
        rows.append(int(r))
        cols.append(int(c))
        vals.append(complex(float(re_), float(im_)))
    if shape is None:
        raise ValueError("missing '# shape' header")
    return sparse.csr_matrix((vals, (rows, cols)), shape=shape, dtype=complex), header
