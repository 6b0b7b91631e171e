"""Command-line front end.

Every subcommand prints one JSON document on standard output:
{"command": ..., "input": ..., "result": ..., "version": ...}, with
rationals rendered as "num/den" strings, so output is byte-identical
across runs on the same input.  Failures print {"error": {"kind",
"message"}} on standard output, a diagnostic on standard error, and
exit with 2 (bad input), 3 (hypothesis failure) or 4 (budget).

Inputs come from flags or from a JSON job file (--job); flags win on
conflict.  Budget caps resolve flag over job over environment over
default.
"""

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction

from . import __version__
from .basep import carry_horizon, digits
from .budgets import Budgets
from .errors import BudgetExceeded, FptcertError, InputError
from .fvolume import fvolume_count, fvolume_estimate, fvolume_lower_bound
from .geometry import exponent_matrix, maximal_point, reduce_generators, vertices
from .polyring import parse_polynomial
from .thresholds import (
    _to_fp_generators,
    coefficient_witness,
    fpt_bound,
    fpt_estimate,
    lct_fpt_classifier,
    nu,
    verify_prime,
)

_BUDGET_FIELDS = ("max_multisets", "max_terms", "max_dimension")


def _decimal6(value):
    """Six-place decimal rendering of a nonnegative rational, half-up."""
    scaled = (value.numerator * 10**6 * 2 + value.denominator) // (
        2 * value.denominator
    )
    whole, frac = divmod(scaled, 10**6)
    return "%d.%06d" % (whole, frac)


def _load_job(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            job = json.load(handle)
    except OSError as exc:
        raise InputError("cannot read job file: %s" % exc) from exc
    except json.JSONDecodeError as exc:
        raise InputError("job file is not valid JSON: %s" % exc) from exc
    if not isinstance(job, dict):
        raise InputError("job file must hold a JSON object")
    return job


def _resolve(args, job, key):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if job is not None and key in job:
        return job[key]
    return None


def _require(value, flag):
    if value is None:
        raise InputError("missing required input %s" % flag)
    return value


def _norm_names(value):
    if isinstance(value, str):
        parts = [s.strip() for s in value.split(",")]
    elif isinstance(value, list) and all(isinstance(s, str) for s in value):
        parts = [s.strip() for s in value]
    else:
        raise InputError("variables must be a comma-separated string or a list")
    if not parts or any(not s for s in parts):
        raise InputError("variable list has an empty entry")
    return parts


def _norm_poly_strings(value, what):
    if isinstance(value, str):
        parts = [s.strip() for s in value.split(",")]
    elif isinstance(value, list) and all(isinstance(s, str) for s in value):
        parts = [s.strip() for s in value]
    else:
        raise InputError("%s must be a comma-separated string or a list" % what)
    if not parts or any(not s for s in parts):
        raise InputError("%s list has an empty entry" % what)
    return parts


def _norm_ideals(value):
    if isinstance(value, str):
        groups = [s.strip() for s in value.split(";")]
        if not groups or any(not s for s in groups):
            raise InputError("ideal list has an empty entry")
        return [_norm_poly_strings(group, "ideal generators") for group in groups]
    if isinstance(value, list):
        return [_norm_poly_strings(group, "ideal generators") for group in value]
    raise InputError("ideals must be ';'-separated groups or a list of lists")


def _norm_int(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError("%s must be an integer" % name)
    return value


def _norm_fraction(value, name):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError("%s must be a rational number" % name)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError("%s is not a rational number: %s" % (name, exc))
    raise InputError("%s must be a rational number" % name)


def _resolve_budgets(args, job):
    budgets = Budgets.from_env()
    job_budgets = {}
    if job is not None and "budgets" in job:
        if not isinstance(job["budgets"], dict):
            raise InputError("job budgets must be an object")
        job_budgets = job["budgets"]
        for key in job_budgets:
            if key not in _BUDGET_FIELDS:
                raise InputError("unknown budget %r in job file" % key)
    overrides = {}
    for field in _BUDGET_FIELDS:
        value = getattr(args, field, None)
        if value is None and field in job_budgets:
            value = job_budgets[field]
        if value is None:
            continue
        value = _norm_int(value, field)
        if value <= 0:
            raise InputError("%s must be positive" % field)
        overrides[field] = value
    return replace(budgets, **overrides) if overrides else budgets


class _Request:
    """Inputs of one subcommand after merging flags and job file."""

    def __init__(self, args):
        self.args = args
        self.job = _load_job(args.job) if getattr(args, "job", None) else None
        if self.job is not None and "command" in self.job:
            if self.job["command"] != args.command:
                raise InputError(
                    "job file is for command %r, invoked as %r"
                    % (self.job["command"], args.command)
                )
        self.budgets = _resolve_budgets(args, self.job)

    def get(self, key):
        return _resolve(self.args, self.job, key)

    def names(self):
        return _norm_names(_require(self.get("vars"), "--vars"))

    def generator_strings(self):
        return _norm_poly_strings(
            _require(self.get("gens"), "--gens"), "generators"
        )

    def generators(self, variables):
        return [parse_polynomial(s, variables) for s in self.generator_strings()]

    def ideal_strings(self):
        return _norm_ideals(_require(self.get("ideals"), "--ideals"))

    def ideal_generators(self, variables):
        return [
            [parse_polynomial(s, variables) for s in group]
            for group in self.ideal_strings()
        ]

    def integer(self, key, flag, required=True, minimum=None):
        value = self.get(key)
        if value is None:
            if required:
                raise InputError("missing required input %s" % flag)
            return None
        value = _norm_int(value, flag)
        if minimum is not None and value < minimum:
            raise InputError("%s must be at least %d" % (flag, minimum))
        return value

    def fraction(self, key, flag):
        return _norm_fraction(_require(self.get(key), flag), flag)

    def fraction_list(self, key, flag):
        value = _require(self.get(key), flag)
        if isinstance(value, str):
            parts = [s.strip() for s in value.split(",")]
        elif isinstance(value, list):
            parts = value
        else:
            raise InputError("%s must be a comma-separated string or a list" % flag)
        if not parts:
            raise InputError("%s is empty" % flag)
        return [_norm_fraction(part, flag) for part in parts]

    def budgets_json(self):
        return {
            "max_multisets": self.budgets.max_multisets,
            "max_terms": self.budgets.max_terms,
            "max_dimension": self.budgets.max_dimension,
        }


def _blocks_json(blocks):
    return [[str(x) for x in block] for block in blocks]


def _cmd_polytope(req):
    variables = req.names()
    gen_strings = req.generator_strings()
    p = req.integer("p", "--p", required=False, minimum=2)
    gens = [parse_polynomial(s, variables) for s in gen_strings]
    if p is not None:
        gens = list(_to_fp_generators(gens, p))
    mapping = reduce_generators(gens)
    matrix = exponent_matrix(mapping)
    cert = maximal_point(matrix)
    try:
        vertex_list = [
            [str(x) for x in v] for v in vertices(matrix, req.budgets)
        ]
    except BudgetExceeded:
        vertex_list = None
    result = {
        "block_sizes": list(matrix.block_sizes),
        "matrix": [list(row) for row in matrix.rows],
        "M": str(cert.M),
        "rho": None if not cert.unique else _blocks_json(cert.blocks_of_rho),
        "unique": cert.unique,
        "coordinate_ranges": (
            None
            if cert.unique
            else [[str(lo), str(hi)] for lo, hi in cert.coordinate_ranges]
        ),
        "vertices": vertex_list,
    }
    inputs = {
        "variables": variables,
        "generators": gen_strings,
        "p": p,
        "budgets": req.budgets_json(),
    }
    return inputs, result


def _cmd_digits(req):
    alpha = req.fraction("alpha", "--alpha")
    p = req.integer("p", "--p", minimum=2)
    count = req.integer("count", "--count", required=False, minimum=1)
    if count is None:
        count = 12
    stream = digits(alpha, p)
    result = {
        "alpha": str(alpha),
        "p": p,
        "preperiod": list(stream.preperiod),
        "period": list(stream.period),
        "prefix": list(stream.digits_prefix(count)),
    }
    inputs = {
        "alpha": str(alpha),
        "p": p,
        "count": count,
        "budgets": req.budgets_json(),
    }
    return inputs, result


def _cmd_carry(req):
    block = req.fraction_list("block", "--block")
    p = req.integer("p", "--p", minimum=2)
    horizon = carry_horizon(block, p)
    result = {
        "block": [str(x) for x in block],
        "p": p,
        "S": horizon.to_json_value(),
    }
    inputs = {
        "block": [str(x) for x in block],
        "p": p,
        "budgets": req.budgets_json(),
    }
    return inputs, result


def _poly_inputs(req, extra=()):
    variables = req.names()
    gen_strings = req.generator_strings()
    gens = [parse_polynomial(s, variables) for s in gen_strings]
    inputs = {"variables": variables, "generators": gen_strings}
    for key, value in extra:
        inputs[key] = value
    inputs["budgets"] = req.budgets_json()
    return gens, inputs


def _cmd_fpt_bound(req):
    p = req.integer("p", "--p", minimum=2)
    gens, inputs = _poly_inputs(req, extra=(("p", p),))
    cert = fpt_bound(gens, p, req.budgets)
    return inputs, cert.to_json_dict()


def _cmd_nu(req):
    p = req.integer("p", "--p", minimum=2)
    e = req.integer("e", "--e", minimum=1)
    gens, inputs = _poly_inputs(req, extra=(("p", p), ("e", e)))
    fp_gens = _to_fp_generators(gens, p)
    value = nu(fp_gens, e, req.budgets)
    result = {
        "p": p,
        "e": e,
        "nu": value,
        "ratio": str(Fraction(value, p**e)),
    }
    return inputs, result


def _cmd_fpt_estimate(req):
    p = req.integer("p", "--p", minimum=2)
    e_max = req.integer("e_max", "--e-max", minimum=1)
    gens, inputs = _poly_inputs(req, extra=(("p", p), ("e_max", e_max)))
    rows = fpt_estimate(gens, p, e_max, req.budgets)
    result = {
        "p": p,
        "rows": [
            [e, value, str(ratio), _decimal6(ratio)] for e, value, ratio in rows
        ],
    }
    return inputs, result


def _cmd_classify(req):
    gens, inputs = _poly_inputs(req)
    verdict = lct_fpt_classifier(gens)
    return inputs, verdict.to_json_dict()


def _cmd_verify_prime(req):
    p = req.integer("p", "--p", minimum=2)
    gens, inputs = _poly_inputs(req, extra=(("p", p),))
    verdict = lct_fpt_classifier(gens)
    check = verify_prime(gens, p, verdict)
    verdict = verdict.with_checked(p, check.holds)
    result = {
        "verdict": verdict.to_json_dict(),
        "check": check.to_json_dict(),
    }
    return inputs, result


def _cmd_fvol_bound(req):
    p = req.integer("p", "--p", minimum=2)
    counts_e_max = req.integer(
        "counts_e_max", "--counts-e-max", required=False, minimum=1
    )
    gens, inputs = _poly_inputs(
        req, extra=(("p", p), ("counts_e_max", counts_e_max))
    )
    cert = fvolume_lower_bound(gens, p, req.budgets)
    if counts_e_max is not None:
        rows = fvolume_estimate([[g] for g in gens], p, counts_e_max, req.budgets)
        cert = replace(cert, counts=tuple(rows))
    return inputs, cert.to_json_dict()


def _ideal_inputs(req, extra=()):
    variables = req.names()
    ideal_strings = req.ideal_strings()
    ideals = [
        [parse_polynomial(s, variables) for s in group] for group in ideal_strings
    ]
    inputs = {"variables": variables, "ideals": ideal_strings}
    for key, value in extra:
        inputs[key] = value
    inputs["budgets"] = req.budgets_json()
    return ideals, inputs


def _cmd_fvol_count(req):
    p = req.integer("p", "--p", minimum=2)
    e = req.integer("e", "--e", minimum=1)
    ideals, inputs = _ideal_inputs(req, extra=(("p", p), ("e", e)))
    fp_ideals = [_to_fp_generators(group, p) for group in ideals]
    count = fvolume_count(fp_ideals, e, req.budgets)
    result = {"p": p, "e": e, "count": count}
    return inputs, result


def _cmd_fvol_estimate(req):
    p = req.integer("p", "--p", minimum=2)
    e_max = req.integer("e_max", "--e-max", minimum=1)
    ideals, inputs = _ideal_inputs(req, extra=(("p", p), ("e_max", e_max)))
    rows = fvolume_estimate(ideals, p, e_max, req.budgets)
    result = {
        "p": p,
        "rows": [
            [e, count, str(ratio), _decimal6(ratio)] for e, count, ratio in rows
        ],
    }
    return inputs, result


def _cmd_witness(req):
    p = req.integer("p", "--p", minimum=2)
    e = req.integer("e", "--e", minimum=1)
    gens, inputs = _poly_inputs(req, extra=(("p", p), ("e", e)))
    report = coefficient_witness(gens, p, e, req.budgets)
    return inputs, report.to_json_dict()


_COMMANDS = {
    "polytope": _cmd_polytope,
    "digits": _cmd_digits,
    "carry": _cmd_carry,
    "fpt-bound": _cmd_fpt_bound,
    "nu": _cmd_nu,
    "fpt-estimate": _cmd_fpt_estimate,
    "classify": _cmd_classify,
    "verify-prime": _cmd_verify_prime,
    "fvol-bound": _cmd_fvol_bound,
    "fvol-count": _cmd_fvol_count,
    "fvol-estimate": _cmd_fvol_estimate,
    "witness": _cmd_witness,
}


def _add_common(parser):
    parser.add_argument("--job", help="JSON job file; flags win on conflict")
    parser.add_argument(
        "--format",
        choices=("json", "text"),
        default=None,
        help="output format (default json)",
    )
    parser.add_argument("--max-multisets", type=int, default=None)
    parser.add_argument("--max-terms", type=int, default=None)
    parser.add_argument("--max-dimension", type=int, default=None)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fptcert",
        description=(
            "Certificates for threshold and volume invariants of polynomial "
            "ideals in prime characteristic"
        ),
    )
    parser.add_argument(
        "--version", action="version", version="fptcert %s" % __version__
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text, *flags):
        cmd = sub.add_parser(name, help=help_text)
        for flag in flags:
            if flag == "vars":
                cmd.add_argument("--vars", help="comma-separated variable names")
            elif flag == "gens":
                cmd.add_argument(
                    "--gens", help="comma-separated polynomial generators"
                )
            elif flag == "ideals":
                cmd.add_argument(
                    "--ideals",
                    help="';'-separated ideals, each a comma-separated list",
                )
            elif flag == "p":
                cmd.add_argument("--p", type=int, help="prime characteristic")
            elif flag == "e":
                cmd.add_argument("--e", type=int, help="Frobenius exponent")
            elif flag == "e_max":
                cmd.add_argument(
                    "--e-max", dest="e_max", type=int, help="largest exponent"
                )
            elif flag == "alpha":
                cmd.add_argument("--alpha", help="rational in (0, 1]")
            elif flag == "block":
                cmd.add_argument("--block", help="comma-separated rationals")
            elif flag == "count":
                cmd.add_argument(
                    "--count", type=int, help="digits to print (default 12)"
                )
            elif flag == "counts_e_max":
                cmd.add_argument(
                    "--counts-e-max",
                    dest="counts_e_max",
                    type=int,
                    help="also run the brute-force counter up to this exponent",
                )
        _add_common(cmd)
        return cmd

    add("polytope", "splitting polytope: matrix, maximum, maximal point, vertices",
        "vars", "gens", "p")
    add("digits", "nonterminating base-p digits of a rational", "alpha", "p",
        "count")
    add("carry", "carry horizon of a block of rationals", "block", "p")
    add("fpt-bound", "threshold certificate (exact value or lower bound)",
        "vars", "gens", "p")
    add("nu", "brute-force Frobenius escape level", "vars", "gens", "p", "e")
    add("fpt-estimate", "nu(p^e)/p^e for e = 1..e_max", "vars", "gens", "p",
        "e_max")
    add("classify", "compare the diagonal threshold with the generator count",
        "vars", "gens")
    add("verify-prime", "check a classifier verdict at one prime", "vars",
        "gens", "p")
    add("fvol-bound", "volume lower bound for the principal ideals", "vars",
        "gens", "p", "counts_e_max")
    add("fvol-count", "brute-force escape-set cardinality", "vars", "ideals",
        "p", "e")
    add("fvol-estimate", "normalized counts for e = 1..e_max", "vars", "ideals",
        "p", "e_max")
    add("witness", "predicted vs expanded coefficient of the escape monomial",
        "vars", "gens", "p", "e")
    return parser


def _render_text(payload):
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            if not value:
                lines.append("%s: {}" % prefix)
                return
            for key, item in value.items():
                walk("%s.%s" % (prefix, key) if prefix else key, item)
        elif isinstance(value, list):
            lines.append(
                "%s: %s" % (prefix, json.dumps(value, separators=(",", ":")))
            )
        elif isinstance(value, str):
            lines.append("%s: %s" % (prefix, value))
        else:
            lines.append("%s: %s" % (prefix, json.dumps(value)))

    walk("", payload)
    return "\n".join(lines) + "\n"


def _run(argv):
    parser = _build_parser()
    args = parser.parse_args(argv)
    req = _Request(args)
    handler = _COMMANDS[args.command]
    inputs, result = handler(req)
    payload = {
        "command": args.command,
        "input": inputs,
        "result": result,
        "version": __version__,
    }
    out_format = args.format
    if out_format is None and req.job is not None:
        job_format = req.job.get("format")
        if job_format is not None:
            if job_format not in ("json", "text"):
                raise InputError("job format must be 'json' or 'text'")
            out_format = job_format
    if out_format == "text":
        sys.stdout.write(_render_text(payload))
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def main(argv=None):
    try:
        return _run(argv)
    except FptcertError as exc:
        payload = {"error": {"kind": exc.kind, "message": str(exc)}}
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        sys.stderr.write("error: %s\n" % exc)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
