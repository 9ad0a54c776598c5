"""Loading of system description files (UTF-8 JSON) consumed by the CLI.

A system file may carry any subset of: a classical cycle, a density matrix,
a Hamiltonian, labeled projectors (as matrices or as characteristic vectors
over the basis states), and a perception algebra. Every matrix present is
validated through its library class at load time, and all dimensions must
agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .classical import ClassicalCycle, PerceptionSet, diag_projector
from .errors import SpecParseError
from .matcore import DEFAULT_TOL, matrix_from_rows
from .measure import PerceptionAlgebra, algebra_from_obj
from .quantum import DensityMatrix, Projector, RealityMode
from .superselect import Hamiltonian


@dataclass(frozen=True)
class LabeledProjector:
    """A projector with its spec-file label; chi is set when it came in as a
    characteristic vector."""

    label: str
    projector: Projector
    chi: tuple[int, ...] | None = None


@dataclass(frozen=True)
class SystemSpec:
    """Parsed content of one system description file."""

    cycle: ClassicalCycle | None
    rho: DensityMatrix | None
    hamiltonian: Hamiltonian | None
    projectors: tuple[LabeledProjector, ...]
    algebra: PerceptionAlgebra | None
    mode: RealityMode


def _is_char_vector(value) -> bool:
    return (
        isinstance(value, list)
        and len(value) > 0
        and all(isinstance(x, int) and not isinstance(x, bool) for x in value)
    )


def _parse_matrix(value, where: str) -> np.ndarray:
    try:
        return matrix_from_rows(value)
    except Exception as exc:
        raise SpecParseError(f"{where}: {exc}") from exc


def _parse_cycle(obj) -> ClassicalCycle:
    if not isinstance(obj, dict) or set(obj) != {"n", "schedule"}:
        raise SpecParseError('cycle must be an object with keys "n" and "schedule"')
    n, schedule = obj["n"], obj["schedule"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise SpecParseError("cycle n must be an integer")
    if not isinstance(schedule, list) or not all(
        isinstance(e, list) and len(e) == 2 for e in schedule
    ):
        raise SpecParseError("cycle schedule must be a list of [state, duration] pairs")
    return ClassicalCycle(n, tuple((int(s), float(d)) for s, d in schedule))


def load_system_spec(
    path: str,
    mode_override: RealityMode | None = None,
    tol: float = DEFAULT_TOL,
) -> SystemSpec:
    """Read and validate a system description file.

    `mode_override` forces the reality mode regardless of the file's own
    "reality_mode" key; `tol` is handed to every matrix-class validation.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SpecParseError("top level of a system file must be a JSON object")
    known = {"cycle", "rho", "hamiltonian", "projectors", "algebra", "reality_mode"}
    extra = set(obj) - known
    if extra:
        raise SpecParseError(f"unknown keys: {sorted(extra)}")

    if mode_override is not None:
        mode = mode_override
    else:
        raw_mode = obj.get("reality_mode", "complex")
        try:
            mode = RealityMode(raw_mode)
        except ValueError:
            raise SpecParseError(f'reality_mode must be "complex" or "real", got {raw_mode!r}')

    cycle = _parse_cycle(obj["cycle"]) if "cycle" in obj else None

    rho = None
    if "rho" in obj:
        rho = DensityMatrix(_parse_matrix(obj["rho"], "rho"), mode=mode, tol=tol)

    hamiltonian = None
    if "hamiltonian" in obj:
        hamiltonian = Hamiltonian(
            _parse_matrix(obj["hamiltonian"], "hamiltonian"), mode=mode, tol=tol
        )

    projectors: list[LabeledProjector] = []
    if "projectors" in obj:
        raw = obj["projectors"]
        if not isinstance(raw, dict) or not raw:
            raise SpecParseError("projectors must be a nonempty object of label -> value")
        for label, value in raw.items():
            if _is_char_vector(value):
                pset = PerceptionSet(tuple(value))
                proj = Projector(diag_projector(pset), mode=mode, tol=tol)
                projectors.append(LabeledProjector(str(label), proj, pset.chi))
            else:
                mat = _parse_matrix(value, f"projector {label!r}")
                projectors.append(
                    LabeledProjector(str(label), Projector(mat, mode=mode, tol=tol))
                )

    algebra = None
    if "algebra" in obj:
        try:
            algebra = algebra_from_obj(obj["algebra"], mode=mode, tol=tol)
        except (KeyError, TypeError) as exc:
            raise SpecParseError(f"algebra: {exc}") from exc

    dims = {}
    if cycle is not None:
        dims["cycle"] = cycle.n
    if rho is not None:
        dims["rho"] = rho.dim
    if hamiltonian is not None:
        dims["hamiltonian"] = hamiltonian.dim
    for lp in projectors:
        dims[f"projector {lp.label!r}"] = lp.projector.dim
    if algebra is not None:
        dims["algebra"] = algebra.dim
    if len(set(dims.values())) > 1:
        parts = ", ".join(f"{k}={v}" for k, v in dims.items())
        raise SpecParseError(f"dimension mismatch across fields: {parts}")

    return SystemSpec(
        cycle=cycle,
        rho=rho,
        hamiltonian=hamiltonian,
        projectors=tuple(projectors),
        algebra=algebra,
        mode=mode,
    )
