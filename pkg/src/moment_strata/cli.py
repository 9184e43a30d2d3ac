"""Command-line surface: exact JSON reports over model and config files.

Every subcommand reads JSON input (a file path, or ``-`` for stdin), computes
in exact rational arithmetic, and prints a single JSON report to stdout.  The
report carries the subcommand name, the normalized arguments, a SHA-256
digest of the raw input bytes, and the structured result.  Identical inputs
produce byte-identical reports.

Exit codes: 0 on success, 2 for input validation problems, 3 when a
mathematical precondition fails; in the latter case the report printed to
stdout holds the error type, message, and machine-readable witness.

Rational values are written as ``p/q`` strings (or plain integer strings)
everywhere, on the way in and on the way out.  Floating-point numbers are
rejected.  The environment variable MOMENT_STRATA_THREADS, when set, must be
a positive integer; all computations here run on a single thread, so any
cap is honored trivially and never affects output bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from .configs import (classify_binary_form, classify_p1_config,
                      classify_p2_config, config_of, proj_point)
from .errors import MomentStrataError, NotCoprimeStable, TruncationTooSmall
from .geometry import BilinearForm
from .kirwan import (Presentation, _spans_for, betti_from_presentation,
                     line_product_presentation, projective_space_presentation,
                     sl2_kernel_ideal, tolman_weitsman_kernel,
                     torus_kernel_ideal, weyl_kernel_bijection_report)
from .linalg import SpanBasis
from .models import (WEYL_GROUPS, WeightedModel, classify_profile,
                     critical_components, index_set, profile_of_point,
                     stratum_codim, weighted_model)
from .perturb import (is_generic, perturbed_model, propose_epsilon,
                      refinement_report)
from .polynomials import GradedPolynomial
from .residues import quotient_top_degree, raw_residue_sum, residue_pairing
from .series import (perfection_check, quotient_poincare_polynomial,
                     semistable_series, sl2_quotient_series,
                     strictly_semistable_witness)

THREADS_VAR = "MOMENT_STRATA_THREADS"


class InputError(ValueError):
    """A problem with the invocation or the input files (exit code 2)."""


# ---------------------------------------------------------------------------
# input parsing


def _read_source(path: str, what: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {what} {path!r}: {exc}") from exc


def _parse_json(data: bytes, what: str):
    try:
        return json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from exc


def _rational(value, what: str) -> Fraction:
    """Exact rational from a JSON integer or a 'p/q' string; floats refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"{what} must be an integer or a 'p/q' string, "
                         f"got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{what} is not a rational: {value!r}") from exc
    raise InputError(f"{what} must be an integer or a 'p/q' string, "
                     f"got {type(value).__name__}")


def _load_model(path: str) -> tuple[WeightedModel, bytes]:
    """Model JSON: {"rank": r, "factors": [[[w, ...], ...], ...],
    "form": optional Gram rows, "weyl": optional group name}."""
    data = _read_source(path, "model file")
    obj = _parse_json(data, "model file")
    if not isinstance(obj, dict):
        raise InputError("model file must be a JSON object")
    unknown = sorted(set(obj) - {"rank", "factors", "form", "weyl"})
    if unknown:
        raise InputError(f"unknown model keys: {unknown}")
    if "rank" not in obj or "factors" not in obj:
        raise InputError("model file needs 'rank' and 'factors'")
    rank = obj["rank"]
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
        raise InputError("'rank' must be a positive integer")
    raw_factors = obj["factors"]
    if not isinstance(raw_factors, list) or not raw_factors:
        raise InputError("'factors' must be a nonempty array")
    factors = []
    for i, fac in enumerate(raw_factors):
        if not isinstance(fac, list) or not fac:
            raise InputError(f"factor {i} must be a nonempty array of weights")
        rows = []
        for w in fac:
            if not isinstance(w, list) or len(w) != rank:
                raise InputError(f"every weight in factor {i} must be an "
                                 f"array of {rank} rationals")
            rows.append(tuple(_rational(x, f"factor {i} weight entry")
                              for x in w))
        factors.append(tuple(rows))
    form = None
    if obj.get("form") is not None:
        rows = obj["form"]
        if (not isinstance(rows, list)
                or any(not isinstance(r, list) or len(r) != rank for r in rows)
                or len(rows) != rank):
            raise InputError(f"'form' must be a {rank}x{rank} array")
        try:
            form = BilinearForm(tuple(
                tuple(_rational(x, "form entry") for x in r) for r in rows))
        except ValueError as exc:
            raise InputError(f"bad form: {exc}") from exc
    weyl = None
    if obj.get("weyl") is not None:
        name = obj["weyl"]
        if name not in WEYL_GROUPS:
            raise InputError(f"unknown weyl group {name!r}; "
                             f"choices: {sorted(WEYL_GROUPS)}")
        weyl = WEYL_GROUPS[name]()
    try:
        model = weighted_model(rank, factors, form, weyl)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return model, data


def _presentation_of(model: WeightedModel) -> Presentation:
    """Cohomology presentations cover rank-1 models of two shapes: a single
    weighted projective factor, or a product of lines with weights +1/-1."""
    if model.rank != 1:
        raise InputError("presentations exist for rank-1 models only")
    if len(model.factors) == 1:
        weights = [w[0] for w in model.factors[0]]
        try:
            return projective_space_presentation(weights)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    line = {(Fraction(1),), (Fraction(-1),)}
    if all(set(fac) == line for fac in model.factors):
        return line_product_presentation(len(model.factors))
    raise InputError("no presentation for this model: need a single "
                     "weighted projective factor or a product of lines")


def _parse_poly(pres: Presentation, text: str, what: str) -> GradedPolynomial:
    try:
        return GradedPolynomial.parse(pres.variables, text)
    except ValueError as exc:
        raise InputError(f"cannot parse {what}: {exc}") from exc


def _validate_threads() -> None:
    raw = os.environ.get(THREADS_VAR)
    if raw is None or raw == "":
        return
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_VAR} must be a positive integer, "
                         f"got {raw!r}") from None
    if n < 1:
        raise InputError(f"{THREADS_VAR} must be a positive integer, "
                         f"got {raw!r}")


# ---------------------------------------------------------------------------
# report plumbing


def _jsonify(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonify(v) for k, v in x.items()}
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)


def _digest(*parts: bytes) -> str:
    h = hashlib.sha256()
    for i, part in enumerate(parts):
        if i:
            h.update(b"\x00")
        h.update(part)
    return h.hexdigest()


def _emit(command: str, arguments: dict, digest: str, result: dict) -> int:
    report = {
        "command": command,
        "arguments": _jsonify(arguments),
        "input_digest": digest,
        "exact_arithmetic": True,
        "result": _jsonify(result),
    }
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0


def _error_payload(exc: MomentStrataError) -> dict:
    return {"type": type(exc).__name__, "message": str(exc),
            "witness": _jsonify(exc.witness)}


def _cert_dict(cert) -> dict:
    return {"beta": list(cert.beta), "support": list(cert.support),
            "coefficients": list(cert.coefficients)}


def _beta_key(beta):
    return tuple(beta)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_index_set(args) -> int:
    model, raw = _load_model(args.model)
    entries = []
    for stratum in sorted(index_set(model), key=lambda s: _beta_key(s.beta)):
        comps = []
        for comp in critical_components(model, stratum.beta):
            comps.append({
                "values": list(comp.values),
                "attaining": [list(t) for t in comp.attaining],
                "codimension": stratum_codim(model, comp),
            })
        entries.append({
            "beta": list(stratum.beta),
            "norm_squared": model.form.norm2(stratum.beta),
            "certificate": _cert_dict(stratum.certificate),
            "witness_profile": [list(s) for s in stratum.witness_profile],
            "components": comps,
        })
    result = {"rank": model.rank,
              "factor_sizes": list(model.factor_sizes),
              "stratum_count": len(entries),
              "index_set": entries}
    return _emit("index-set", {"model": args.model}, _digest(raw), result)


def _cmd_classify(args) -> int:
    model, raw_model = _load_model(args.model)
    raw_point = _read_source(args.point, "point file")
    obj = _parse_json(raw_point, "point file")
    if (not isinstance(obj, list)
            or any(not isinstance(row, list) for row in obj)):
        raise InputError("point file must be a JSON array of coordinate "
                         "arrays, one per factor")
    point = [[_rational(x, "coordinate") for x in row] for row in obj]
    try:
        profile = profile_of_point(model, point)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    cls = classify_profile(model, profile)
    result = {
        "profile": [list(s) for s in profile],
        "hull_points": [list(p) for p in cls.points],
        "beta": list(cls.beta),
        "norm_squared": model.form.norm2(cls.beta),
        "certificate": _cert_dict(cls.certificate),
        "semistable": cls.semistable,
        "stable": cls.stable,
    }
    return _emit("classify", {"model": args.model, "point": args.point},
                 _digest(raw_model, raw_point), result)


def _sl2_quotient_polynomial(model: WeightedModel, trunc: int,
                             coeffs: Sequence[int]) -> list[int]:
    witness = strictly_semistable_witness(model)
    if witness is not None:
        raise NotCoprimeStable("model has a strictly semistable profile",
                               witness={"profile": witness})
    top = quotient_top_degree(model, "sl2")
    if trunc <= top:
        raise TruncationTooSmall(
            f"truncation {trunc} cannot certify termination at degree {top}",
            witness={"required_beyond": top, "given": trunc})
    for d in range(top + 1, trunc + 1):
        if coeffs[d] != 0:
            raise ArithmeticError(
                f"series fails to terminate at degree {d}")
    poly = list(coeffs[:top + 1])
    if any(c < 0 for c in poly):
        raise ArithmeticError("negative coefficient in quotient polynomial")
    return poly


def _cmd_series(args) -> int:
    model, raw = _load_model(args.model)
    if args.trunc < 0:
        raise InputError("--trunc must be nonnegative")
    if args.group == "torus":
        series = semistable_series(model, args.trunc)
    else:
        series = sl2_quotient_series(model, args.trunc)
    perf = perfection_check(model, args.trunc)
    try:
        if args.group == "torus":
            poly = quotient_poincare_polynomial(model, args.trunc)
        else:
            poly = _sl2_quotient_polynomial(model, args.trunc, series.coeffs)
        quotient = {"quotient_polynomial": poly, "quotient_obstruction": None}
    except (NotCoprimeStable, TruncationTooSmall) as exc:
        quotient = {"quotient_polynomial": None,
                    "quotient_obstruction": _error_payload(exc)}
    result = {
        "group": args.group,
        "truncation": args.trunc,
        "series": list(series.coeffs),
        "perfection": {"ok": perf.ok,
                       "truncation": perf.truncation,
                       "strata_checked": perf.strata_checked,
                       "failures": list(perf.failures)},
        **quotient,
    }
    arguments = {"model": args.model, "trunc": args.trunc,
                 "group": args.group}
    return _emit("series", arguments, _digest(raw), result)


def _cmd_perturb(args) -> int:
    model, raw = _load_model(args.model)
    if args.epsilon is not None:
        tokens = [t for t in args.epsilon.split(",") if t.strip() != ""]
        eps = tuple(_rational(t.strip(), "epsilon entry") for t in tokens)
        if len(eps) != model.rank:
            raise InputError(f"epsilon needs {model.rank} entries, "
                             f"got {len(eps)}")
        proposal = None
    else:
        prop = propose_epsilon(model)
        eps = prop.epsilon
        proposal = {"denominator": prop.denominator,
                    "norm_bound": prop.norm_bound}
    generic = is_generic(model, eps)
    shifted = perturbed_model(model, eps)
    perturbed_strata = [
        {"beta": list(s.beta),
         "norm_squared": shifted.form.norm2(s.beta),
         "certificate": _cert_dict(s.certificate)}
        for s in sorted(index_set(shifted), key=lambda s: _beta_key(s.beta))]
    report = refinement_report(model, eps)
    mapping = sorted(([list(pb), list(ob)] for pb, ob in report.mapping),
                     key=lambda pair: tuple(pair[0]))
    fibers = [{"beta": list(parent), "perturbed_betas": [list(b) for b in bs]}
              for parent, bs in sorted(report.fibers,
                                       key=lambda f: _beta_key(f[0]))]
    result = {
        "epsilon": list(eps),
        "proposal": proposal,
        "generic": generic,
        "perturbed_index_set": perturbed_strata,
        "refinement": {"mapping": mapping, "fibers": fibers},
    }
    arguments = {"model": args.model, "epsilon": args.epsilon}
    return _emit("perturb", arguments, _digest(raw), result)


def _cmd_kirwan(args) -> int:
    model, raw = _load_model(args.model)
    if args.max_degree < 0:
        raise InputError("--max-degree must be nonnegative")
    pres = _presentation_of(model)
    target = {"ss": "semistable", "s": "stable"}[args.target]
    if args.group == "torus":
        if target != "semistable":
            raise InputError("the stable target applies to the reflection "
                             "quotient only; use --group sl2")
        kernel = torus_kernel_ideal(pres, args.max_degree)
    else:
        try:
            kernel = sl2_kernel_ideal(pres, args.max_degree, target)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    betti = []
    for d in range(0, args.max_degree + 1, 2):
        betti.append({"degree": d,
                      "ambient": betti_from_presentation(pres, None, d),
                      "quotient": betti_from_presentation(pres, kernel, d)})
    checks: dict = {}
    if args.group == "sl2":
        rep = weyl_kernel_bijection_report(pres, args.max_degree)
        checks["reflection_bijection"] = {
            "ok": rep.ok,
            "degrees": [{"degree": r.degree,
                         "dim_kernel_group": r.dim_kernel_group,
                         "dim_kernel_torus_anti": r.dim_kernel_torus_anti,
                         "injective": r.injective,
                         "spans_equal": r.spans_equal,
                         "inverse_ok": r.inverse_ok,
                         "ok": r.ok} for r in rep.degrees],
        }
    else:
        two_sided = tolman_weitsman_kernel(pres, args.max_degree)
        spans = _spans_for(pres, kernel)
        rows = []
        for d in range(0, args.max_degree + 1, 2):
            basis = two_sided.get(d, ())
            span = SpanBasis()
            for b in basis:
                span.add(spans.vector_of(b, d))
            ideal = spans.span(d)
            contained = all(ideal.contains(spans.vector_of(b, d))
                            for b in basis)
            rows.append({"degree": d,
                         "two_sided_kernel_dim": span.dim,
                         "stratum_ideal_dim": ideal.dim,
                         "equal": contained and span.dim == ideal.dim})
        checks["two_sided_kernel"] = {
            "ok": all(r["equal"] for r in rows), "degrees": rows}
    presentation = {
        "kind": pres.kind,
        "variables": list(pres.variables),
        "n": pres.n,
        "weights": list(pres.weights),
        "relations": [str(r) for r in pres.relations],
    }
    generators = [{"label": label,
                   "degree": g.degree(),
                   "polynomial": str(g)}
                  for label, g in kernel.generators]
    result = {
        "group": args.group,
        "target": target,
        "max_degree": args.max_degree,
        "presentation": presentation,
        "generators": generators,
        "betti": betti,
        "checks": checks,
    }
    arguments = {"model": args.model, "group": args.group,
                 "max_degree": args.max_degree, "target": args.target}
    return _emit("kirwan", arguments, _digest(raw), result)


def _cmd_pairing(args) -> int:
    model, raw = _load_model(args.model)
    pres = _presentation_of(model)
    eta = _parse_poly(pres, args.eta, "eta")
    zeta = _parse_poly(pres, args.zeta, "zeta")
    normalized = residue_pairing(model, eta, zeta, args.group)
    raw_sum = raw_residue_sum(model, eta, zeta, args.group)
    result = {
        "group": args.group,
        "eta": str(eta),
        "zeta": str(zeta),
        "degree_sum": eta.degree() + zeta.degree(),
        "quotient_top_degree": quotient_top_degree(model, args.group),
        "raw_residue_sum": raw_sum,
        "pairing": normalized,
    }
    arguments = {"model": args.model, "eta": args.eta, "zeta": args.zeta,
                 "group": args.group}
    digest = _digest(raw, args.eta.encode(), args.zeta.encode())
    return _emit("pairing", arguments, digest, result)


_FAMILY_CLASSIFIERS = {
    "p1": (1, classify_p1_config),
    "binary": (1, classify_binary_form),
    "p2": (2, classify_p2_config),
}


def _cmd_config(args) -> int:
    raw = _read_source(args.config, "config file")
    obj = _parse_json(raw, "config file")
    if (not isinstance(obj, list) or not obj
            or any(not isinstance(row, list) for row in obj)):
        raise InputError("config file must be a nonempty JSON array of "
                         "homogeneous coordinate arrays")
    dim, classifier = _FAMILY_CLASSIFIERS[args.family]
    points = []
    for i, row in enumerate(obj):
        if len(row) != dim + 1:
            raise InputError(f"point {i}: family {args.family!r} needs "
                             f"{dim + 1} homogeneous coordinates")
        try:
            points.append(proj_point([_rational(x, f"point {i} coordinate")
                                      for x in row]))
        except ValueError as exc:
            raise InputError(f"point {i}: {exc}") from exc
    label = classifier(config_of(points))
    result = {
        "family": args.family,
        "points": [str(p) for p in points],
        "label": label.text,
        "coarse_label": label.coarse_text,
        "refined": label.is_refined,
    }
    arguments = {"config": args.config, "family": args.family}
    return _emit("config", arguments, _digest(raw), result)


# ---------------------------------------------------------------------------
# parser and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moment-strata",
        description="Exact stratification, series, and cohomology reports "
                    "for weighted models; all I/O is JSON over files or "
                    "stdio ('-' reads stdin).")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("index-set",
                       help="critical betas with certificates and "
                            "component codimensions")
    p.add_argument("model", help="model JSON file, or -")
    p.set_defaults(handler=_cmd_index_set)

    p = sub.add_parser("classify",
                       help="stratum, beta, and stability flags of a point")
    p.add_argument("model", help="model JSON file, or -")
    p.add_argument("point", help="point JSON file (coordinates per factor)")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("series",
                       help="semistable series, perfection check, and "
                            "quotient polynomial when applicable")
    p.add_argument("model", help="model JSON file, or -")
    p.add_argument("--trunc", type=int, default=40,
                   help="truncation degree (default 40)")
    p.add_argument("--group", choices=("torus", "sl2"), default="torus")
    p.set_defaults(handler=_cmd_series)

    p = sub.add_parser("perturb",
                       help="certified perturbation, perturbed index set, "
                            "and refinement map")
    p.add_argument("model", help="model JSON file, or -")
    p.add_argument("--epsilon",
                   help="comma-separated rationals, e.g. '1/97,1/9409'; "
                        "omitted: first certified proposal")
    p.set_defaults(handler=_cmd_perturb)

    p = sub.add_parser("kirwan",
                       help="cohomology presentation, kernel generators, "
                            "Betti table, and structure checks")
    p.add_argument("model", help="model JSON file, or -")
    p.add_argument("--group", choices=("torus", "sl2"), default="torus")
    p.add_argument("--max-degree", type=int, default=12,
                   help="largest cohomological degree (default 12)")
    p.add_argument("--target", choices=("ss", "s"), default="ss",
                   help="semistable or stable locus (default ss)")
    p.set_defaults(handler=_cmd_kirwan)

    p = sub.add_parser("pairing",
                       help="raw and normalized intersection pairing of "
                            "two classes")
    p.add_argument("model", help="model JSON file, or -")
    p.add_argument("eta", help="polynomial, e.g. 'z^2 - a^2'")
    p.add_argument("zeta", help="polynomial")
    p.add_argument("--group", choices=("torus", "sl2"), default="torus")
    p.set_defaults(handler=_cmd_pairing)

    p = sub.add_parser("config",
                       help="refined and coarse stratum labels of a point "
                            "configuration")
    p.add_argument("config", help="config JSON file (array of coordinate "
                                  "arrays), or -")
    p.add_argument("--family", choices=("p1", "binary", "p2"), required=True)
    p.set_defaults(handler=_cmd_config)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _validate_threads()
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MomentStrataError as exc:
        payload = {"error": _error_payload(exc)}
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
