"""Problem files and analysis reports.

A problem file is a UTF-8 JSON document::

    {
      "dim": 2,
      "rho0": [[[0.75, 0], [0, 0]], [[0, 0], [0.25, 0]]],
      "rho1": ...,
      "generators": [ ... ],
      "options": {"tol": 1e-8, "lambda_grid": 101, "tensor_cap": 4096, "seed": 12345}
    }

Matrices are row-major arrays of ``[re, im]`` pairs.
"""
import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .algebra import close_generators, restrict_state
from .exceptions import InternalInconsistency, InvalidState, ParseError
from .linalg import check_tensor_dim
from .neyman_pearson import bayes_error, error_pair, np_decomposition, optimal_test, simulate_test
from .states import DensityMatrix, bs_entropy, chernoff_distance, umegaki_entropy
from .sufficiency import CASE_NAMES, check_2sufficiency, check_sufficiency, classify_case, tensor_states

DEFAULT_OPTIONS = {
    "tol": 1e-8,
    "lambda_grid": 101,
    "tensor_cap": 4096,
    "seed": 12345,
    "n_max": 10,
}
_POSITIVE = ("tol", "lambda_grid", "tensor_cap", "n_max")


def encode_matrix(A):
    A = np.asarray(A, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in A]


def decode_matrix(data, dim, name):
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{name}: entries must be [re, im] number pairs") from exc
    if arr.shape != (dim, dim, 2):
        raise ParseError(f"{name}: expected shape ({dim}, {dim}, 2), got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


@dataclass
class ProblemFile:
    dim: int
    rho0: np.ndarray
    rho1: np.ndarray
    generators: list = field(default_factory=list)
    options: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, dict):
            raise ParseError("problem file must be a JSON object")
        for key in ("dim", "rho0", "rho1"):
            if key not in doc:
                raise ParseError(f"missing field {key!r}")
        dim = doc["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ParseError(f"dim: expected a positive integer, got {dim!r}")
        gens = doc.get("generators", [])
        if not isinstance(gens, list):
            raise ParseError("generators: expected a list of matrices")
        options = doc.get("options", {})
        if not isinstance(options, dict):
            raise ParseError("options: expected an object")
        unknown = set(options) - set(DEFAULT_OPTIONS)
        if unknown:
            raise ParseError(f"options: unknown keys {sorted(unknown)}")
        for key in _POSITIVE:
            if key in options and not (isinstance(options[key], (int, float)) and options[key] > 0):
                raise ParseError(f"options.{key}: must be a positive number")
        return cls(
            dim=dim,
            rho0=decode_matrix(doc["rho0"], dim, "rho0"),
            rho1=decode_matrix(doc["rho1"], dim, "rho1"),
            generators=[decode_matrix(g, dim, f"generators[{i}]") for i, g in enumerate(gens)],
            options=dict(options),
        )

    def to_dict(self):
        out = {
            "dim": self.dim,
            "rho0": encode_matrix(self.rho0),
            "rho1": encode_matrix(self.rho1),
            "generators": [encode_matrix(g) for g in self.generators],
        }
        if self.options:
            out["options"] = dict(self.options)
        return out

    def option(self, key):
        return self.options.get(key, DEFAULT_OPTIONS[key])

    def resolved_options(self):
        return {k: self.option(k) for k in DEFAULT_OPTIONS}

    def states(self):
        out = []
        for name, matrix in (("rho0", self.rho0), ("rho1", self.rho1)):
            try:
                out.append(DensityMatrix(matrix))
            except InvalidState as exc:
                raise InvalidState(f"{name}: {exc}") from exc
        return tuple(out)

    def algebra(self):
        return close_generators(self.generators, dim=self.dim)


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return ProblemFile.from_dict(doc)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def dumps(problem):
    return json.dumps(problem.to_dict(), indent=2)


def report_schema():
    """JSON Schema for the ``analyze`` report."""
    text = resources.files(__package__).joinpath("report.schema.json").read_text("utf-8")
    return json.loads(text)


def analyze(problem):
    """Run every check on a problem and return a JSON-ready report."""
    tol, grid = problem.option("tol"), int(problem.option("lambda_grid"))
    rho0, rho1 = problem.states()
    M0 = problem.algebra()
    E0, E1 = restrict_state(M0, rho0), restrict_state(M0, rho1)

    suff = check_sufficiency(M0, rho0, rho1, tol)
    two = check_2sufficiency(M0, rho0, rho1, tol, grid)
    cases = classify_case(M0, rho0, rho1, tol)
    if suff.verdict and not two.verdict or two.verdict and not two.necessary_condition:
        raise InternalInconsistency(
            f"verdicts violate sufficient => 2-sufficient => necessary: "
            f"{suff.verdict}, {two.verdict}, {two.necessary_condition}")

    xi, s_star = chernoff_distance(rho0, rho1)
    xi0, s0_star = chernoff_distance(E0, E1)
    return {
        "options": problem.resolved_options(),
        "dim": problem.dim,
        "algebra": {"linear_dim": M0.linear_dim, "n_generators": len(problem.generators)},
        "sufficient": suff.verdict,
        "two_sufficient": two.verdict,
        "necessary_condition": two.necessary_condition,
        "sufficiency": suff.to_dict(),
        "two_sufficiency": two.to_dict(),
        "cases": sorted(CASE_NAMES[c] for c in cases),
        "entropies": entropies(rho0, rho1, E0, E1),
        "chernoff": {
            "xi": xi, "s_star": s_star,
            "xi_restricted": xi0, "s_star_restricted": s0_star,
            "gap": xi - xi0,
        },
    }


def entropies(rho0, rho1, E0=None, E1=None):
    out = {"umegaki": umegaki_entropy(rho1, rho0), "belavkin_staszewski": bs_entropy(rho1, rho0)}
    if E0 is not None:
        out["umegaki_restricted"] = umegaki_entropy(E1, E0)
        out["belavkin_staszewski_restricted"] = bs_entropy(E1, E0)
    return out


def entropy_report(problem):
    rho0, rho1 = problem.states()
    M0 = problem.algebra()
    return entropies(rho0, rho1, restrict_state(M0, rho0), restrict_state(M0, rho1))


def chernoff_curve(problem, n_max):
    """Rows ``(n, Pi_{1/2,n}, -(1/n) log Pi, xi)`` for ``n = 1..n_max``."""
    cap = int(problem.option("tensor_cap"))
    rho0, rho1 = problem.states()
    check_tensor_dim(problem.dim, n_max, cap)
    xi, _ = chernoff_distance(rho0, rho1)
    rows = []
    for n in range(1, n_max + 1):
        r0, r1 = tensor_states(rho0, rho1, n, cap)
        pi = bayes_error(r0, r1, 0.5)
        rows.append({"n": n, "bayes_error": pi, "rate": -np.log(pi) / n, "xi": xi})
    return rows


def np_report(problem, t):
    rho0, rho1 = problem.states()
    dec = np_decomposition(rho0, rho1, t)
    return {
        "t": dec.t,
        "zero_tol": dec.zero_tol,
        "P_plus": encode_matrix(dec.P_plus),
        "P_minus": encode_matrix(dec.P_minus),
        "P_zero": encode_matrix(dec.P_zero),
        "rank_P_zero": dec.rank_zero,
        "errors": error_pair(dec.P_plus, rho0, rho1)._asdict(),
    }


def simulation_report(problem, lam, shots, seed):
    """Empirical error rates of the canonical optimal test with 3-sigma bands."""
    rho0, rho1 = problem.states()
    M = optimal_test(rho0, rho1, lam)
    theory = error_pair(M, rho0, rho1)
    _, alpha_hat = simulate_test(M, rho0, shots, seed)
    _, reject_rate = simulate_test(M, rho1, shots, seed + 1)
    beta_hat = 1.0 - reject_rate
    out = {"lambda": lam, "shots": shots, "seed": seed}
    for name, p, est in (("alpha", theory.alpha, alpha_hat), ("beta", theory.beta, beta_hat)):
        se = float(np.sqrt(p * (1 - p) / shots))
        out[name] = {"theory": p, "empirical": est, "std_error": se,
                     "within_3sigma": bool(abs(est - p) <= 3 * se + 1e-15)}
    return out
