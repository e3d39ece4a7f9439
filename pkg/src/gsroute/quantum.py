"""Dense state-vector oracle for the graph rewrite calculus.

Small-scale but exact: graph states are prepared as amplitude vectors,
local complementation is realized by its local Clifford unitary, and Pauli
measurements are checked against the graph rewrites by searching for the
omitted local Clifford corrections.  Nothing here scales past ~14 qubits
and nothing needs to: this module exists to certify the graph calculus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GraphDomainError, SizeBoundError, ZeroProbabilityError
from .graph import LabeledGraph, measure_x, measure_y, measure_z

MAX_QUBITS = 14
NORM_TOL = 1e-10
PHASE_FIDELITY_TOL = 1e-9
_RDM_ATOL = 1e-8

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# Principal square roots: (iX)^(1/2) on the pivot, (-iZ)^(1/2) on each
# neighbor.  Any global-phase convention works because every check below
# compares states up to a global phase.
SQRT_IX = (np.eye(2, dtype=complex) + 1j * _PAULI["X"]) / math.sqrt(2)
SQRT_MINUS_IZ = np.diag([np.exp(-1j * math.pi / 4), np.exp(1j * math.pi / 4)])


def _normalize_phase(m: np.ndarray) -> np.ndarray:
    flat = m.reshape(-1)
    for x in flat:
        if abs(x) > 1e-9:
            return m / (x / abs(x))
    return m


def _generate_cliffords() -> tuple[tuple[np.ndarray, ...], tuple[str, ...]]:
    # Breadth-first over words in {H, S}; dedup up to global phase.  The
    # identity comes first, short words next -- a good search order because
    # real corrections are short products.
    gates = {"H": _H, "S": _S}
    found: dict[tuple, tuple[str, np.ndarray]] = {}
    queue: list[tuple[str, np.ndarray]] = [("", np.eye(2, dtype=complex))]
    order: list[tuple[str, np.ndarray]] = []
    while queue and len(found) < 24:
        word, mat = queue.pop(0)
        key = tuple(np.round(_normalize_phase(mat), 10).reshape(-1))
        if key in found:
            continue
        found[key] = (word or "I", mat)
        order.append((word or "I", mat))
        for letter, gate in gates.items():
            queue.append((word + letter, mat @ gate))
    mats = tuple(m for _, m in order)
    names = tuple(w for w, _ in order)
    assert len(mats) == 24
    return mats, names


CLIFFORD_MATRICES, CLIFFORD_NAMES = _generate_cliffords()


class QuantumState:
    """Dense n-qubit state over labeled qubits (sorted label = tensor axis)."""

    __slots__ = ("qubits", "amps")

    def __init__(self, qubits: tuple[int, ...], amps: np.ndarray):
        if len(qubits) > MAX_QUBITS:
            raise SizeBoundError(f"state-vector oracle is limited to {MAX_QUBITS} qubits")
        if tuple(sorted(qubits)) != tuple(qubits):
            raise GraphDomainError("qubit labels must be sorted")
        if amps.shape != (2 ** len(qubits),):
            raise GraphDomainError("amplitude vector has the wrong length")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise GraphDomainError(f"state is not normalized (norm={norm})")
        self.qubits = tuple(qubits)
        self.amps = np.asarray(amps, dtype=complex)

    @property
    def n(self) -> int:
        return len(self.qubits)

    def axis(self, label: int) -> int:
        try:
            return self.qubits.index(label)
        except ValueError:
            raise GraphDomainError(f"qubit {label} not in state") from None


def _apply_single(amps: np.ndarray, n: int, axis: int, u: np.ndarray) -> np.ndarray:
    t = amps.reshape((2,) * n)
    t = np.tensordot(u, t, axes=([1], [axis]))
    t = np.moveaxis(t, 0, axis)
    return np.ascontiguousarray(t).reshape(-1)


def prepare_graph_state(g: LabeledGraph) -> QuantumState:
    """|+>^n followed by a controlled-Z on every edge."""
    n = len(g)
    if n > MAX_QUBITS:
        raise SizeBoundError(f"state-vector oracle is limited to {MAX_QUBITS} qubits")
    if n == 0:
        raise GraphDomainError("cannot prepare a state on zero qubits")
    qubits = g.vertices
    amps = np.full(2 ** n, 2 ** (-n / 2), dtype=complex)
    t = amps.reshape((2,) * n)
    for u, v in g.sorted_edges():
        sl: list = [slice(None)] * n
        sl[qubits.index(u)] = 1
        sl[qubits.index(v)] = 1
        t[tuple(sl)] *= -1
    return QuantumState(qubits, amps)


def fidelity(a: QuantumState, b: QuantumState) -> float:
    """|<a|b>|: 1 means equal up to a global phase."""
    if a.qubits != b.qubits:
        raise GraphDomainError("states live on different qubit sets")
    return float(abs(np.vdot(a.amps, b.amps)))


def apply_lc_unitary(state: QuantumState, g: LabeledGraph, a: int) -> QuantumState:
    """The local Clifford realizing local complementation at ``a``.

    Square root of iX on ``a``, square root of -iZ on each neighbor; the
    result equals the graph state of the complemented graph up to a global
    phase.
    """
    if tuple(sorted(g.vertices)) != state.qubits:
        raise GraphDomainError("graph vertices and state qubits do not match")
    amps = _apply_single(state.amps, state.n, state.axis(a), SQRT_IX)
    for b in sorted(g.neighbors(a)):
        amps = _apply_single(amps, state.n, state.axis(b), SQRT_MINUS_IZ)
    return QuantumState(state.qubits, amps)


def measure_pauli(
    state: QuantumState, qubit: int, basis: str, outcome: int
) -> tuple[QuantumState, float]:
    """Project onto a Pauli eigenspace and renormalize.

    Returns the post-measurement state and the branch probability.  A
    numerically zero branch raises :class:`ZeroProbabilityError`.
    """
    if basis not in _PAULI:
        raise GraphDomainError(f"basis must be one of X, Y, Z, got {basis!r}")
    if outcome not in (1, -1):
        raise GraphDomainError(f"outcome must be +1 or -1, got {outcome!r}")
    axis = state.axis(qubit)
    pa = _apply_single(state.amps, state.n, axis, _PAULI[basis])
    projected = (state.amps + outcome * pa) / 2
    prob = float(np.vdot(projected, projected).real)
    if prob < 1e-12:
        raise ZeroProbabilityError(
            f"{basis}-measurement of qubit {qubit} has zero probability for outcome {outcome:+d}"
        )
    return QuantumState(state.qubits, projected / math.sqrt(prob)), prob


# -- local Clifford correction search ----------------------------------


def _rdm_keeping_all_but(amps: np.ndarray, n: int, traced_axes: tuple[int, ...]) -> np.ndarray:
    if not traced_axes:
        return np.outer(amps, amps.conj())
    t = amps.reshape((2,) * n)
    keep = [ax for ax in range(n) if ax not in traced_axes]
    t = np.transpose(t, keep + list(traced_axes))
    m = t.reshape((2 ** len(keep), 2 ** len(traced_axes)))
    return m @ m.conj().T


MAX_CORRECTION_QUBITS = 6


def find_local_correction(
    post_state: QuantumState,
    target_g: LabeledGraph,
    affected: tuple[int, ...] | frozenset[int] | list[int],
    tol: float = PHASE_FIDELITY_TOL,
) -> dict[int, int] | None:
    """Search single-qubit Cliffords on ``affected`` mapping the state onto
    the target graph state (up to a global phase).

    Returns a ``{qubit: clifford_index}`` assignment into
    :data:`CLIFFORD_MATRICES`, or None when no assignment exists.  The
    depth-first search prunes on reduced density matrices: after each
    partial assignment, tracing out the still-unassigned qubits must agree
    with the target, or no completion can exist.
    """
    affected_sorted = tuple(sorted(set(affected)))
    if len(affected_sorted) > MAX_CORRECTION_QUBITS:
        raise SizeBoundError(
            f"correction search is limited to {MAX_CORRECTION_QUBITS} qubits, got {len(affected_sorted)}"
        )
    target = prepare_graph_state(target_g)
    if target.qubits != post_state.qubits:
        raise GraphDomainError("target graph must live on the state's qubit set")
    n = post_state.n
    axes = tuple(post_state.axis(q) for q in affected_sorted)
    target_rdms = [
        _rdm_keeping_all_but(target.amps, n, axes[i:]) for i in range(len(axes) + 1)
    ]

    def compatible(amps: np.ndarray, idx: int) -> bool:
        rdm = _rdm_keeping_all_but(amps, n, axes[idx:])
        return bool(np.allclose(rdm, target_rdms[idx], atol=_RDM_ATOL))

    if not compatible(post_state.amps, 0):
        return None

    def dfs(idx: int, amps: np.ndarray) -> dict[int, int] | None:
        if idx == len(axes):
            if abs(np.vdot(target.amps, amps)) >= 1.0 - tol:
                return {}
            return None
        for ci, u in enumerate(CLIFFORD_MATRICES):
            candidate = _apply_single(amps, n, axes[idx], u)
            if compatible(candidate, idx + 1):
                rest = dfs(idx + 1, candidate)
                if rest is not None:
                    rest[affected_sorted[idx]] = ci
                    return rest
        return None

    result = dfs(0, post_state.amps)
    if result is None:
        return None
    return dict(sorted(result.items()))


# -- soundness sweep ----------------------------------------------------


@dataclass(frozen=True)
class MeasurementCheck:
    vertex: int
    basis: str
    outcome: int
    status: str  # "ok", "skipped-zero-probability", or "no-correction"
    probability: float
    correction: tuple[tuple[int, str], ...] | None


def predicted_graph_after_measurement(g: LabeledGraph, v: int, basis: str) -> LabeledGraph:
    """Graph-calculus prediction, with the measured vertex kept as isolated.

    Keeping ``v`` in the vertex set (isolated, i.e. in |+>) lets the
    prediction live on the same qubit set as the post-measurement state.
    X-measurements use the smallest-label neighbor.
    """
    if basis == "Z":
        reduced = measure_z(g, v)
    elif basis == "Y":
        reduced = measure_y(g, v)
    elif basis == "X":
        reduced = measure_x(g, v)
    else:
        raise GraphDomainError(f"basis must be one of X, Y, Z, got {basis!r}")
    return LabeledGraph(g.vertices, reduced.edges())


def check_lc_unitary(g: LabeledGraph, a: int) -> float:
    """Fidelity between U_a|G> and the complemented graph's state."""
    from .graph import local_complement

    state = apply_lc_unitary(prepare_graph_state(g), g, a)
    return fidelity(state, prepare_graph_state(local_complement(g, a)))


def correction_support(g: LabeledGraph, v: int, basis: str) -> tuple[int, ...]:
    """Qubits a correction may need to touch.

    The closed neighborhood of the measured vertex suffices for Z and Y;
    the negative X branch additionally carries Z factors on the chosen
    neighbor's other neighbors, so that neighborhood is included too.
    """
    support = g.neighbors(v) | {v}
    if basis == "X" and support - {v}:
        support |= g.neighbors(min(g.neighbors(v)))
    return tuple(sorted(support))


def check_measurement(g: LabeledGraph, v: int, basis: str, outcome: int) -> MeasurementCheck:
    """Measure one qubit of |G> and search for the correcting local Clifford."""
    state = prepare_graph_state(g)
    try:
        post, prob = measure_pauli(state, v, basis, outcome)
    except ZeroProbabilityError:
        return MeasurementCheck(v, basis, outcome, "skipped-zero-probability", 0.0, None)
    target = predicted_graph_after_measurement(g, v, basis)
    assignment = find_local_correction(post, target, correction_support(g, v, basis))
    if assignment is None:
        return MeasurementCheck(v, basis, outcome, "no-correction", prob, None)
    named = tuple((q, CLIFFORD_NAMES[ci]) for q, ci in sorted(assignment.items()))
    return MeasurementCheck(v, basis, outcome, "ok", prob, named)


@dataclass(frozen=True)
class GraphVerification:
    graph: LabeledGraph
    lc_fidelities: tuple[tuple[int, float], ...]
    measurements: tuple[MeasurementCheck, ...]

    @property
    def passed(self) -> bool:
        fid_ok = all(f >= 1.0 - PHASE_FIDELITY_TOL for _, f in self.lc_fidelities)
        meas_ok = all(m.status != "no-correction" for m in self.measurements)
        return fid_ok and meas_ok


def verify_graph(g: LabeledGraph) -> GraphVerification:
    """Full soundness check of the rewrite calculus on one graph."""
    fids = tuple((a, check_lc_unitary(g, a)) for a in g.vertices)
    checks = []
    for v in g.vertices:
        for basis in ("X", "Y", "Z"):
            for outcome in (1, -1):
                checks.append(check_measurement(g, v, basis, outcome))
    return GraphVerification(g, fids, tuple(checks))
