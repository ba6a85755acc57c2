"""Versioned JSON file formats and report serialization.

All formats carry version "1". Complex numbers are stored as [re, im]
pairs. Reports never include timing, so identical inputs and seeds
reproduce byte-identical output.
"""

from __future__ import annotations

import csv
import io as _io
import json
from typing import Any

import numpy as np
import scipy.sparse as sp

from .classify import MatrixClassFlags
from .clock import Gate, QuantumCircuit
from .errors import ContractError
from .pauli import LocalHamiltonian, PauliString
from .protocols import SatInstance
from .spectra import SpectralReport

FORMAT_VERSION = "1"


def _require(cond: bool, where: str, msg: str):
    if not cond:
        raise ContractError(f"{where}: {msg}")


def _check_version(data: dict, where: str):
    _require(isinstance(data, dict), where, "expected a JSON object")
    version = data.get("version")
    _require(version == FORMAT_VERSION, where, f"unsupported version {version!r}")


def complex_to_json(z: complex):
    return [float(np.real(z)), float(np.imag(z))]


def json_to_complex(pair, where: str) -> complex:
    _require(
        isinstance(pair, (list, tuple)) and len(pair) == 2, where, "complex values are [re, im]"
    )
    return complex(float(pair[0]), float(pair[1]))


def matrix_to_json(M) -> list:
    dense = np.asarray(M.toarray() if sp.issparse(M) else M, dtype=complex)
    return [[complex_to_json(z) for z in row] for row in dense]


def json_to_matrix(rows, where: str) -> np.ndarray:
    out = np.array([[json_to_complex(z, where) for z in row] for row in rows])
    if np.max(np.abs(out.imag)) == 0.0:
        out = out.real
    return out


# ---------------------------------------------------------------- hamiltonian

def hamiltonian_to_data(H: LocalHamiltonian) -> dict:
    terms = []
    for alpha, string in H.terms:
        terms.append(
            {
                "coeff": float(alpha * string.sign),
                "paulis": [{"qubit": q, "op": op} for q, op in string.factors],
            }
        )
    return {"version": FORMAT_VERSION, "n": H.n, "terms": terms}


def hamiltonian_from_data(data: dict, where: str = "hamiltonian") -> LocalHamiltonian:
    _check_version(data, where)
    n = data.get("n")
    _require(isinstance(n, int) and n >= 1, where, f"bad qubit count {n!r}")
    terms = data.get("terms", [])
    _require(isinstance(terms, list), where, "terms must be a list")
    items = []
    for i, term in enumerate(terms):
        ctx = f"{where}.terms[{i}]"
        _require(isinstance(term, dict), ctx, "expected an object")
        coeff = term.get("coeff")
        _require(isinstance(coeff, (int, float)), ctx, f"bad coeff {coeff!r}")
        _require(np.isfinite(coeff), ctx, f"non-finite coeff {coeff!r}")
        paulis = term.get("paulis", [])
        _require(isinstance(paulis, list), ctx, "paulis must be a list")
        factors = {}
        for j, pa in enumerate(paulis):
            pctx = f"{ctx}.paulis[{j}]"
            _require(isinstance(pa, dict), pctx, "expected an object")
            q, op = pa.get("qubit"), pa.get("op")
            _require(isinstance(q, int) and 0 <= q < n, pctx, f"bad qubit {q!r}")
            _require(op in ("X", "Y", "Z"), pctx, f"bad op {op!r}")
            _require(q not in factors, pctx, f"duplicate qubit {q}")
            factors[q] = op
        if coeff != 0.0:
            items.append((float(coeff), factors))
    return LocalHamiltonian.from_signed(n, items)


def load_hamiltonian(path: str) -> LocalHamiltonian:
    with open(path, encoding="utf-8") as fh:
        return hamiltonian_from_data(json.load(fh), where=path)


def save_hamiltonian(H: LocalHamiltonian, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(hamiltonian_to_data(H), fh, indent=2, sort_keys=True)
        fh.write("\n")


# -------------------------------------------------------------------- circuit

def circuit_to_data(circuit: QuantumCircuit) -> dict:
    gates = []
    for g in circuit.gates:
        entry: dict[str, Any] = {"name": g.name, "qubits": list(g.qubits)}
        if g.angle is not None:
            entry["angle"] = float(g.angle)
        if g.matrix is not None:
            entry["matrix"] = matrix_to_json(g.matrix)
        gates.append(entry)
    return {"version": FORMAT_VERSION, "n": circuit.n, "gates": gates}


def circuit_from_data(data: dict, where: str = "circuit") -> QuantumCircuit:
    _check_version(data, where)
    n = data.get("n")
    _require(isinstance(n, int) and n >= 1, where, f"bad qubit count {n!r}")
    gates_data = data.get("gates", [])
    _require(isinstance(gates_data, list), where, "gates must be a list")
    gates = []
    for i, gd in enumerate(gates_data):
        ctx = f"{where}.gates[{i}]"
        _require(isinstance(gd, dict), ctx, "expected an object")
        name = gd.get("name")
        _require(name in ("CNOT", "ROT", "ID", "CUSTOM"), ctx, f"bad gate name {name!r}")
        qubits = tuple(gd.get("qubits", []))
        angle = gd.get("angle")
        matrix = gd.get("matrix")
        try:
            if name == "CUSTOM":
                _require(matrix is not None, ctx, "CUSTOM needs a matrix")
                gates.append(Gate(name, qubits, matrix=json_to_matrix(matrix, ctx)))
            elif name == "ROT":
                _require(isinstance(angle, (int, float)), ctx, f"bad angle {angle!r}")
                gates.append(Gate(name, qubits, angle=float(angle)))
            else:
                gates.append(Gate(name, qubits))
        except ContractError as exc:
            raise ContractError(f"{ctx}: {exc}") from exc
    return QuantumCircuit(n, tuple(gates))


def load_circuit(path: str) -> QuantumCircuit:
    with open(path, encoding="utf-8") as fh:
        return circuit_from_data(json.load(fh), where=path)


def save_circuit(circuit: QuantumCircuit, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(circuit_to_data(circuit), fh, indent=2, sort_keys=True)
        fh.write("\n")


# --------------------------------------------------------------- sat instance

def sat_instance_to_data(instance: SatInstance) -> dict:
    ops = []
    for i, op in enumerate(instance.operators):
        if instance.pauli_operators is not None:
            ops.append({"terms": hamiltonian_to_data(instance.pauli_operators[i])["terms"]})
        else:
            ops.append({"matrix": matrix_to_json(op)})
    data = {
        "version": FORMAT_VERSION,
        "n": instance.n,
        "epsilon": instance.epsilon,
        "kind": instance.kind,
        "operators": ops,
    }
    if instance.N_max is not None:
        data["N_max"] = instance.N_max
    return data


def sat_instance_from_data(data: dict, where: str = "sat instance") -> SatInstance:
    _check_version(data, where)
    n = data.get("n")
    _require(isinstance(n, int) and n >= 1, where, f"bad qubit count {n!r}")
    epsilon = data.get("epsilon")
    _require(isinstance(epsilon, (int, float)) and epsilon > 0, where, f"bad epsilon {epsilon!r}")
    kind = data.get("kind", "quantum")
    ops_data = data.get("operators", [])
    _require(isinstance(ops_data, list) and ops_data, where, "operators must be a nonempty list")
    matrices = []
    paulis = []
    all_pauli = True
    for i, od in enumerate(ops_data):
        ctx = f"{where}.operators[{i}]"
        _require(isinstance(od, dict), ctx, "expected an object")
        if "terms" in od:
            H = hamiltonian_from_data(
                {"version": FORMAT_VERSION, "n": n, "terms": od["terms"]}, where=ctx
            )
            paulis.append(H)
            matrices.append(None)
        elif "matrix" in od:
            all_pauli = False
            M = json_to_matrix(od["matrix"], ctx)
            _require(M.shape == (1 << n, 1 << n), ctx, f"matrix shape {M.shape} mismatches n={n}")
            matrices.append(sp.csr_matrix(M))
            paulis.append(None)
        else:
            raise ContractError(f"{ctx}: need either terms or matrix")
    from .pauli import build_matrix  # local import to keep module load light

    realized = tuple(
        matrices[i] if matrices[i] is not None else build_matrix(paulis[i])
        for i in range(len(ops_data))
    )
    return SatInstance(
        n=n,
        operators=realized,
        epsilon=float(epsilon),
        kind=kind,
        pauli_operators=tuple(paulis) if all_pauli else None,
        N_max=data.get("N_max"),
    )


def load_sat_instance(path: str) -> SatInstance:
    with open(path, encoding="utf-8") as fh:
        return sat_instance_from_data(json.load(fh), where=path)


def save_sat_instance(instance: SatInstance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(sat_instance_to_data(instance), fh, indent=2, sort_keys=True)
        fh.write("\n")


# -------------------------------------------------------------------- reports

def flags_to_data(flags: MatrixClassFlags) -> dict:
    return flags.as_dict()


def spectral_report_to_data(report: SpectralReport) -> dict:
    return {
        "ground_energy": report.ground_energy,
        "spectral_gap": report.spectral_gap,
        "top_eigenvalue": report.top_eigenvalue,
        "second_largest_magnitude": report.second_largest_magnitude,
        "perron_top_is_one": report.perron_top_is_one,
        "perron_uniform_overlap": report.perron_uniform_overlap,
        "flags": flags_to_data(report.flags),
        "eigenvalues": None if report.eigenvalues is None else [float(v) for v in report.eigenvalues],
        "method": report.method,
    }


def make_report(command: list[str], seed: int, tol: float, results: dict, checks: list[dict]) -> dict:
    return {
        "version": FORMAT_VERSION,
        "command": list(command),
        "seed": seed,
        "tol": tol,
        "results": results,
        "checks": checks,
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_report(report: dict, path: str | None) -> None:
    text = report_to_json(report)
    if path is None:
        print(text, end="")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


GAP_SCAN_COLUMNS = [
    "L",
    "s",
    "block_gap_formula",
    "block_gap_measured",
    "full_gap_formula",
    "full_gap_measured",
]


def gap_scan_csv(rows: list[dict]) -> str:
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=GAP_SCAN_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row[k] for k in GAP_SCAN_COLUMNS})
    return buf.getvalue()
