"""Command-line front end producing reproducible verification reports.

Exit codes: 0 all verdicts pass, 1 verification failure, 2 usage error.
Reports are deterministic for a fixed seed and config; JSON output
validates against the bundled report.schema.json.
"""

import argparse
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
import json
import math
import os
import sys
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import bounds as bounds_mod
from . import codes as codes_mod
from . import errors as errors_mod
from . import gates as gates_mod
from . import symmetry as symmetry_mod
from . import syndromes as syndromes_mod
from .codes import build, build_bc, build_eecc, build_pcc, build_two_mode_bc
from .errors import (
    ad_product_set,
    bc_moment_numerator,
    bc_moment_sum,
    canonical_recovery,
    enclosing_basis,
    kl_check,
    lowest_order_loss_kraus,
    recovery_fidelity,
    xi_set,
)
from .fock import (
    apply,
    embed,
    enumerate_irreducible_subspace,
    inner_product,
    ladder,
)
from .symmetry import (
    bc_symmetry_operator,
    inversion_operator,
    inversion_operator_all_groups,
    joint_unity_eigenspace,
    projector_distance,
    swap_operator,
    z_pair_operator,
)
from .syndromes import full_recovery, random_logical_state, syndrome_table, to_csv


@dataclass
class RunConfig:
    tolerance: float = 1e-9
    seed: int = 2026
    format: str = "json"
    threads: int = 1
    headroom: int = 0  # extra truncation beyond the automatic per-task caps

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.format not in ("json", "csv", "text"):
            raise ValueError("format must be json, csv or text")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


def load_config_file(path: str) -> Dict[str, str]:
    """key=value per line; '#' starts a comment; blank lines ignored."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("%s:%d: expected key=value" % (path, lineno))
            key, value = (part.strip() for part in line.split("=", 1))
            out[key] = value
    return out


def resolve_config(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        raw = load_config_file(args.config)
        casts = {"tolerance": float, "seed": int, "format": str,
                 "threads": int, "headroom": int}
        unknown = set(raw) - set(casts)
        if unknown:
            raise ValueError("unknown config keys: %s" % sorted(unknown))
        cfg = replace(cfg, **{k: casts[k](v) for k, v in raw.items()})
    for attr in ("tolerance", "seed", "format"):
        value = getattr(args, attr, None)
        if value is not None:
            cfg = replace(cfg, **{attr: value})
    env_threads = os.environ.get("CHI2QEC_THREADS")
    if env_threads:
        cfg = replace(cfg, threads=int(env_threads))
    return cfg


def emit(config: RunConfig, command: str, passed: bool, results: List[Dict],
         extra: Optional[Dict] = None) -> str:
    if config.format == "json":
        doc = {
            "tool": "chi2qec",
            "command": command,
            "config": {
                "tolerance": config.tolerance,
                "seed": config.seed,
                "format": config.format,
                "threads": config.threads,
            },
            "passed": passed,
            "results": results,
        }
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2, sort_keys=True)
    if config.format == "csv":
        if not results:
            return ""
        lines = ["name,passed,detail"]
        for r in results:
            detail = str(r.get("detail", "")).replace(",", ";")
            lines.append("%s,%s,%s" % (r["name"], r["passed"], detail))
        return "\n".join(lines)
    lines = []
    for r in results:
        lines.append("%-45s %s  %s" % (r["name"],
                                       "PASS" if r["passed"] else "FAIL",
                                       r.get("detail", "")))
    lines.append("overall: %s" % ("PASS" if passed else "FAIL"))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Symmetry-synthesis operator sets (cross-checks for synth).


def pcc_operator_set(N: int):
    """Commuting symmetries whose joint unity eigenspace is the pair code.

    For odd N the set includes the cross-qudit signal-parity product
    Pi_s1 Pi_s2 (a true symmetry of the odd-N codewords, whose pair labels
    n and N-1-n share parity); without it the swap-symmetric combination
    of the cross terms |n>|n'> + |n'>|n> (n != n') survives and the joint
    eigenspace is one dimension too large.
    """
    basis = enumerate_irreducible_subspace(N - 1, groups=2)
    ops = []
    for group in (1, 2):
        ops.append(z_pair_operator(N, "sp", group, basis))
        ops.append(z_pair_operator(N, "ip", group, basis))
    ops.append(inversion_operator_all_groups(N - 1, basis))
    ops.append(swap_operator(basis))
    if N % 2 == 1:
        pi1 = symmetry_mod.signal_parity_operator(basis, group=1).operator
        pi2 = symmetry_mod.signal_parity_operator(basis, group=2).operator
        from .fock import LinearOperator

        prod = LinearOperator(basis, basis, pi1.matrix.dot(pi2.matrix))
        ops.append(symmetry_mod.SymmetryOperator("Pi_s1 Pi_s2", prod))
    return basis, ops


def eecc_operator_set(N: int):
    basis = enumerate_irreducible_subspace(2 * N - 2, groups=1)
    return basis, [inversion_operator(2 * N - 2, 1, basis)]


def synthesis_check(code_name: str, N: int, tol: float) -> Dict:
    """Closed-form codewords versus joint unity eigenspace (PCC, EECC) or
    symmetry-eigenvalue check (BC)."""
    if code_name == "pcc":
        spec = build_pcc(N)
        _, ops = pcc_operator_set(N)
        synth = joint_unity_eigenspace(ops, tol)
        dist = projector_distance(spec.logical_states, synth)
        return {"name": "synthesis_pcc_N%d" % N, "passed": dist < 1e-8,
                "detail": "projector distance %.2e, dim %d" % (dist, len(synth))}
    if code_name == "eecc":
        spec = build_eecc(N)
        _, ops = eecc_operator_set(N)
        synth = joint_unity_eigenspace(ops, tol)
        dist = projector_distance(spec.logical_states, synth)
        return {"name": "synthesis_eecc_N%d" % N, "passed": dist < 1e-8,
                "detail": "projector distance %.2e, dim %d" % (dist, len(synth))}
    if code_name == "bc":
        spec = build_bc(N)
        S = bc_symmetry_operator(N, spec.basis)
        dev = max(
            float(np.linalg.norm(apply(S.operator, w).amplitudes - w.amplitudes))
            for w in spec.logical_states
        )
        return {"name": "synthesis_bc_N%d" % N, "passed": dev < 1e-8,
                "detail": "max ||S w - w|| = %.2e" % dev}
    return {"name": "synthesis_%s_N%d" % (code_name, N), "passed": True,
            "detail": "no symmetry cross-check for this family"}


# ---------------------------------------------------------------------------
# Subcommand handlers.  Each returns (passed, results).


def cmd_synth(args, config: RunConfig):
    spec = build(args.code, args.N)
    check = synthesis_check(args.code.lower(), args.N, config.tolerance)
    results = [
        {"name": "codewords_%s_N%d" % (spec.name, args.N), "passed": True,
         "detail": spec.to_json()},
        check,
    ]
    return check["passed"], results


def _error_set_for(args, spec):
    choice = args.errors
    layout = spec.layout
    if choice == "lowest-order":
        basis = enclosing_basis(layout, headroom=0)
        return lowest_order_loss_kraus(args.gamma, layout, basis)
    if choice.startswith("xi"):
        m = int(choice[2:])
        return xi_set(m, layout)
    if choice == "ad":
        basis = spec.basis
        if layout.n_modes == 2:
            modes = (0, 1)
        else:
            modes = (0, 2)
        out = []
        for m in range(args.order + 1):
            out.extend(ad_product_set(args.gamma, m, basis, modes))
        return out
    raise ValueError("unknown error family %r" % choice)


def cmd_kl_check(args, config: RunConfig):
    spec = build(args.code, args.N)
    errs = _error_set_for(args, spec)
    report = kl_check(spec, errs, config.tolerance)
    results = [{
        "name": "kl_%s_N%d_%s" % (spec.name, args.N, args.errors),
        "passed": report.verdict,
        "detail": "offdiag %.3e distortion %.3e labels %s" % (
            report.max_offdiag_residual, report.max_distortion_residual,
            report.labels),
        "alpha": report.to_json_dict()["alpha"],
    }]
    return report.verdict, results


def cmd_syndromes(args, config: RunConfig):
    spec = build(args.code, args.N)
    table = syndrome_table(spec, monitored_order=args.order)
    pairs = [(r.p, r.q) for r in table]
    distinct = len(set(pairs)) == len(pairs)
    if config.format == "csv":
        print(to_csv(table), end="")
        return distinct, []
    results = [{"name": "row_%s" % r.error_label, "passed": True,
                "detail": "p=%s q=%s" % (list(r.p), list(r.q))} for r in table]
    results.append({"name": "syndromes_distinct", "passed": distinct,
                    "detail": "%d rows" % len(table)})
    return distinct, results


def cmd_recover(args, config: RunConfig):
    spec = build(args.code, args.N)
    rng = np.random.default_rng(config.seed)
    worst = 1.0
    for _ in range(args.trials):
        psi = random_logical_state(spec, rng)
        _, fid = full_recovery(spec, args.error, psi)
        worst = min(worst, fid)
    passed = worst >= 1 - 1e-10
    results = [{
        "name": "recover_%s_N%d_%s" % (spec.name, args.N, args.error),
        "passed": passed,
        "detail": "min fidelity %.12f over %d trials" % (worst, args.trials),
    }]
    return passed, results


def cmd_gates(args, config: RunConfig):
    checks = gates_mod.verify_gates(tol=1e-10)
    results = [
        {"name": c["name"], "passed": c["passed"],
         "detail": "decomposition=%s max_deviation=%.3e" % (
             c["decomposition"], c["max_deviation"])}
        for c in checks
    ]
    return all(c["passed"] for c in checks), results


def cmd_bounds(args, config: RunConfig):
    which = args.which
    if which == "theorems":
        results = bounds_mod.theorem_checks()
        for spec in (build_pcc(2), build_eecc(2)):
            rep = bounds_mod.saturation_report(spec)
            results.append({"name": "saturation_%s" % rep["code"],
                            "passed": rep["saturates"],
                            "detail": rep["detail"]})
        return all(r["passed"] for r in results), results
    if which == "rotation":
        if args.sweep:
            results = []
            for q in range(2, 17):
                n = bounds_mod.min_n(q, args.b, args.k, args.t)
                results.append({"name": "min_n_q%d" % q, "passed": True,
                                "detail": "min_n=%d rate=%.4f" % (
                                    n, bounds_mod.code_rate(n, q, args.b, args.k))})
            return True, results
        query = bounds_mod.BoundQuery(args.n, args.q, args.b, args.k, args.t)
        ok = bounds_mod.rotation_bound_holds(query)
        return ok, [{"name": "rotation_bound", "passed": ok,
                     "detail": str(query)}]
    if which == "loss":
        ok = bounds_mod.loss_bound_holds(args.n, args.q, args.b, args.k)
        return ok, [{"name": "loss_bound", "passed": ok,
                     "detail": "(1+3n)b^k <= (4q-3)^n at n=%d q=%d b=%d k=%d"
                               % (args.n, args.q, args.b, args.k)}]
    raise ValueError("unknown bounds mode %r" % which)


# ---------------------------------------------------------------------------
# Acceptance-criteria runners used by `report all`.


def criterion_kl_alpha() -> Dict:
    failures = []
    cases = [
        (build_pcc(2), 3.0, 0.5), (build_pcc(3), 6.0, 1.0), (build_eecc(2), 3.0, 1.0),
    ]
    for gamma in (0.01, 0.1):
        for spec, total, per_mode in cases:
            basis = enclosing_basis(spec.layout, headroom=0)
            rep = kl_check(spec, lowest_order_loss_kraus(gamma, spec.layout, basis),
                           tol=1e-12)
            if not rep.verdict:
                failures.append("%s gamma=%g KL fails" % (spec.name, gamma))
            a = rep.alpha
            if abs(a[0, 0] - (1 - total * gamma)) > 1e-12:
                failures.append("%s alpha_00" % spec.name)
            for u in range(1, a.shape[0]):
                if abs(a[u, u] - per_mode * gamma) > 1e-12:
                    failures.append("%s alpha_%d%d" % (spec.name, u, u))
            off = a - np.diag(np.diag(a))
            if np.max(np.abs(off)) > 1e-12:
                failures.append("%s alpha offdiag" % spec.name)
    # Gain condition for the EECC: <a~| a_h a_j^dag |b~> = 2 delta_hj delta_ab.
    spec = build_eecc(2)
    basis = enclosing_basis(spec.layout, headroom=1)
    words = [embed(w, basis) for w in spec.logical_states]
    for h in range(3):
        for j in range(3):
            raise_h = ladder(h, "raise", basis)
            raise_j = ladder(j, "raise", basis)
            for a, wa in enumerate(words):
                for b, wb in enumerate(words):
                    # <a~| a_h a_j^dag |b~> = <a_h^dag a~, a_j^dag b~>
                    val = inner_product(apply(raise_h, wa), apply(raise_j, wb))
                    expected = 2.0 if (h == j and a == b) else 0.0
                    if abs(val - expected) > 1e-12:
                        failures.append("gain <%d|a_%d a_%d^dag|%d>" % (a, h, j, b))
    return {"name": "1_kl_alpha_matrices", "passed": not failures,
            "detail": "; ".join(failures) or "alpha values exact to 1e-12"}


def criterion_symmetry_synthesis() -> Dict:
    failures = []
    for code, N in (("pcc", 3), ("pcc", 2), ("eecc", 2)):
        res = synthesis_check(code, N, 1e-9)
        if not res["passed"]:
            failures.append(res["name"])
    # Dimension flow 9 -> 5 -> 3 for the two-qutrit construction.
    basis, full_ops = pcc_operator_set(3)
    z_ops = [z_pair_operator(3, pair, g, basis) for g in (1, 2) for pair in ("sp", "ip")]
    v_op = inversion_operator_all_groups(2, basis)
    dims = (
        len(joint_unity_eigenspace(z_ops)),
        len(joint_unity_eigenspace(z_ops + [v_op])),
        len(joint_unity_eigenspace(full_ops)),
    )
    if dims != (9, 5, 3):
        failures.append("dimension flow %s != (9, 5, 3)" % (dims,))
    return {"name": "2_symmetry_synthesis", "passed": not failures,
            "detail": "; ".join(failures) or "projector distance < 1e-8, flow 9->5->3"}


def criterion_bc_kl_and_moments() -> Dict:
    failures = []
    for N, max_m in ((2, 2), (3, 3)):
        spec = build_bc(N)
        for m in range(max_m + 1):
            rep = kl_check(spec, xi_set(m, spec.layout), tol=1e-9)
            if not rep.verdict:
                failures.append("BC N=%d xi_%d (offdiag %.1e distortion %.1e)"
                                % (N, m, rep.max_offdiag_residual,
                                   rep.max_distortion_residual))
    for N in range(2, 7):
        spec = build_bc(N)
        basis = enclosing_basis(spec.layout, headroom=N)
        words = {side: embed(w, basis)
                 for side, w in zip(("zero", "one"), spec.logical_states)}
        for kind in ("loss", "gain", "dephasing"):
            for m in range(1, N + 1):
                top = m - 1 if kind == "dephasing" else m
                for h in range(top + 1):
                    for g in range(top - h + 1):
                        z = bc_moment_numerator(N, h, g, m, "zero", kind)
                        o = bc_moment_numerator(N, h, g, m, "one", kind)
                        if z != o:
                            failures.append("moment N=%d %s h=%d g=%d m=%d"
                                            % (N, kind, h, g, m))
                        if kind == "dephasing":
                            exps = (h, g, m - 1 - h - g)
                        else:
                            exps = (h, g, m - h - g)
                        op = errors_mod._monomial(basis, spec.layout, exps, kind)
                        img = apply(op, words["zero"])
                        brute = inner_product(img, img)
                        exact = float(bc_moment_sum(N, h, g, m, "zero", kind))
                        if abs(brute - exact) > 1e-9 * max(1.0, exact):
                            failures.append("brute force N=%d %s h=%d g=%d m=%d"
                                            % (N, kind, h, g, m))
    return {"name": "3_bc_kl_and_moment_identities", "passed": not failures,
            "detail": "; ".join(failures[:5]) or
                      "KL and exact moment identities hold for N <= 6"}


def criterion_two_mode_bc() -> Dict:
    """Each monitored amplitude-damping configuration A_s(h)A_p(m-h) is
    correctable on its own: its (diagonal) E^dag E has equal logical
    expectations and no cross-logical element.  The joint set over h of a
    given order fails Knill-Laflamme at order gamma (images of the two
    codewords collide), so correction requires the parity measurement that
    identifies (h, m-h); pairs of configurations with the same signal-loss
    parity do pass jointly, with off-diagonal Hermitian alpha."""
    failures = []
    for N in (2, 3):
        spec = build_two_mode_bc(N)
        basis = spec.basis
        for gamma in (0.01, 0.05):
            for m in range(1, N + 1):
                singles = ad_product_set(gamma, m, basis, (0, 1))
                for err in singles:
                    rep = kl_check(spec, [err], tol=1e-9)
                    if not rep.verdict:
                        failures.append("N=%d gamma=%g %s offdiag %.1e"
                                        % (N, gamma, err.label,
                                           rep.max_offdiag_residual))
                same_parity = singles[::2]
                if len(same_parity) > 1:
                    rep = kl_check(spec, same_parity, tol=1e-9)
                    if not rep.verdict:
                        failures.append("N=%d gamma=%g m=%d same-parity set"
                                        % (N, gamma, m))
    return {"name": "4_two_mode_bc_amplitude_damping", "passed": not failures,
            "detail": "; ".join(failures[:4]) or
                      "per-configuration KL residuals < 1e-9"}


def expected_pcc_syndrome_rows():
    rows = []
    flips = {"s": (1, 1, 0), "i": (1, 0, 1), "p": (0, 1, 1)}
    for prefix, q_delta in (("a", 2), ("adag", 1)):
        for group in (1, 2):
            for mode in ("s", "i", "p"):
                p = [0] * 6
                base = 0 if group == 1 else 3
                for off, bit in enumerate(flips[mode]):
                    p[base + off] = bit
                q = [0, 0]
                q[group - 1] = q_delta
                rows.append(("%s_%s%d" % (prefix, mode, group), tuple(p), tuple(q)))
    return rows


def expected_eecc_syndrome_rows():
    flips = {"s": (1, 1, 0), "i": (1, 0, 1), "p": (0, 1, 1)}
    rows = []
    for prefix, q in (("a", (2,)), ("adag", (1,))):
        for mode in ("s", "i", "p"):
            rows.append(("%s_%s" % (prefix, mode), flips[mode], q))
    return rows


def criterion_syndrome_tables() -> Dict:
    failures = []
    for spec, expected in ((build_pcc(3), expected_pcc_syndrome_rows()),
                           (build_eecc(2), expected_eecc_syndrome_rows())):
        table = syndrome_table(spec)
        got = {r.error_label: (r.p, r.q) for r in table}
        for label, p, q in expected:
            if label not in got:
                failures.append("%s missing row %s" % (spec.name, label))
            elif got[label] != (p, q):
                failures.append("%s row %s: got %s expected %s"
                                % (spec.name, label, got[label], (p, q)))
        pairs = [(r.p, r.q) for r in table]
        if len(set(pairs)) != len(pairs):
            failures.append("%s has colliding (p, q) pairs" % spec.name)
        if len(table) != len(expected):
            failures.append("%s has %d rows, expected %d"
                            % (spec.name, len(table), len(expected)))
    return {"name": "5_syndrome_tables", "passed": not failures,
            "detail": "; ".join(failures[:4]) or
                      "12-row and 6-row tables match; (p,q) distinct"}


def criterion_recovery(seed: int = 2026, trials: int = 100) -> Dict:
    failures = []
    rng = np.random.default_rng(seed)
    for spec, labels in ((build_pcc(3), ("a_s1", "a_p1")),
                         (build_eecc(2), ("a_s", "a_p"))):
        for label in labels:
            worst = 1.0
            for _ in range(trials):
                psi = random_logical_state(spec, rng)
                _, fid = full_recovery(spec, label, psi)
                worst = min(worst, fid)
            if worst < 1 - 1e-10:
                failures.append("%s %s min fidelity %.2e below 1"
                                % (spec.name, label, 1 - worst))
    spec = build_bc(2)
    errs = xi_set(2, spec.layout)
    recov = canonical_recovery(spec, errs, tol=1e-9)
    for err in errs:
        worst = 1.0
        for _ in range(trials):
            coeffs = rng.normal(size=2) + 1j * rng.normal(size=2)
            coeffs /= np.linalg.norm(coeffs)
            worst = min(worst, recovery_fidelity(spec, recov, err, coeffs))
        if worst < 1 - 1e-10:
            failures.append("canonical BC N=2 error %s fidelity deficit %.2e"
                            % (err.label, 1 - worst))
    return {"name": "6_recovery_fidelity", "passed": not failures,
            "detail": "; ".join(failures[:4]) or
                      "unit fidelity over %d seeded trials per case" % trials}


def criterion_gates() -> Dict:
    checks = gates_mod.verify_gates(tol=1e-10)
    failed = [c["name"] for c in checks if not c["passed"]]
    return {"name": "7_gate_identities", "passed": not failed,
            "detail": ("failing: " + ", ".join(failed)) if failed else
                      "all decompositions match up to global phase"}


def criterion_bounds() -> Dict:
    failures = []
    if bounds_mod.min_n(3, 2, 1, 1) != 4:
        failures.append("qutrit-qubit min_n != 4")
    for entry in bounds_mod.theorem_checks():
        if not entry["passed"]:
            failures.append(entry["name"])
    for spec, n_sat in ((build_pcc(2), 2), (build_eecc(2), 1)):
        rep = bounds_mod.saturation_report(spec)
        if not rep["saturates"] or rep["n"] != n_sat:
            failures.append("saturation %s" % spec.name)
    return {"name": "8_hamming_bounds", "passed": not failures,
            "detail": "; ".join(failures) or
                      "all exact-integer bound checks hold"}


def criterion_metadata() -> Dict:
    from fractions import Fraction

    failures = []
    for N in range(2, 7):
        if codes_mod.code_rate(build_pcc(N)) != 0.5:
            failures.append("PCC N=%d rate" % N)
        if build_pcc(N).total_photons != 3 * (N - 1):
            failures.append("PCC N=%d photons" % N)
        if build_eecc(N).total_photons != 3 * (N - 1):
            failures.append("EECC N=%d photons" % N)
        if build_bc(N).total_photons != Fraction(3 * (2 * N - 1), 2):
            failures.append("BC N=%d photons" % N)
        if abs(codes_mod.code_rate(build_bc(N)) - 1 / math.log2(2 * N)) > 1e-15:
            failures.append("BC N=%d rate" % N)
    if abs(codes_mod.code_rate(build_eecc(2)) - 1 / math.log2(3)) > 1e-15:
        failures.append("EECC N=2 rate")
    return {"name": "9_rates_and_photon_numbers", "passed": not failures,
            "detail": "; ".join(failures) or "rates and photon totals exact"}


CRITERIA = [
    criterion_kl_alpha,
    criterion_symmetry_synthesis,
    criterion_bc_kl_and_moments,
    criterion_two_mode_bc,
    criterion_syndrome_tables,
    criterion_recovery,
    criterion_gates,
    criterion_bounds,
    criterion_metadata,
]


def cmd_report(args, config: RunConfig):
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        results = list(pool.map(lambda f: f(), CRITERIA))
    passed = all(r["passed"] for r in results)
    return passed, results


def validate_report_json(text: str) -> None:
    """Validate a JSON report against the bundled schema (needs jsonschema)."""
    import importlib.resources

    import jsonschema

    schema = json.loads(
        importlib.resources.files("chi2qec").joinpath("report.schema.json").read_text()
    )
    jsonschema.validate(json.loads(text), schema)


def build_parser() -> argparse.ArgumentParser:
    # Global options are accepted both before and after the subcommand;
    # the post-subcommand copies use SUPPRESS so they only override when
    # actually given.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="key=value config file")
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv", "text"),
                        default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="chi2qec",
        description="Verification suite for three-wave-mixing bosonic codes.",
    )
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--tolerance", type=float)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--format", choices=("json", "csv", "text"))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", parents=[common], help="build codewords and cross-check symmetries")
    p.add_argument("code", choices=("pcc", "eecc", "bc", "bc2mode"))
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("kl-check", parents=[common], help="Knill-Laflamme verification")
    p.add_argument("code", choices=("pcc", "eecc", "bc", "bc2mode"))
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--errors", required=True,
                   help="xi<m> (e.g. xi2), lowest-order, or ad")
    p.add_argument("--gamma", type=float, default=0.01)
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(func=cmd_kl_check)

    p = sub.add_parser("syndromes", parents=[common], help="syndrome tables")
    p.add_argument("code", choices=("pcc", "eecc", "bc"))
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_syndromes)

    p = sub.add_parser("recover", parents=[common], help="full recovery over random trials")
    p.add_argument("code", choices=("pcc", "eecc"))
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--error", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("gates", parents=[common], help="gate decomposition identities")
    p.add_argument("action", choices=("verify",))
    p.set_defaults(func=cmd_gates)

    p = sub.add_parser("bounds", parents=[common], help="quantum Hamming bounds")
    p.add_argument("which", nargs="?", default="theorems",
                   choices=("theorems", "rotation", "loss"))
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--sweep", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("report", parents=[common], help="full reproduction matrix")
    p.add_argument("what", choices=("all",))
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        config = resolve_config(args)
        passed, results = args.func(args, config)
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    text = emit(config, args.command, passed, results)
    if text:
        print(text)
    if config.format == "json" and args.command == "report":
        try:
            validate_report_json(text)
        except ImportError:
            pass
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
