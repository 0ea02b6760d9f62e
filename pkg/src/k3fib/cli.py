"""Command line entry point: lattice, fibration, casebook and counting pipelines.

Reports are JSON with sorted keys, a schema version and the seed, so equal
inputs give byte-identical output.  Exit status: 0 success, 1 a checked
claim failed, 2 malformed input.
"""

import json
import sys
from pathlib import Path

import click

from . import __version__
from .casebook import CASES, verify_case
from .casebook.weierstrass import CasebookError, IdentityFailure, WeierstrassModel
from .exactmath import QQ, MultiRat, parse
from .fibration import FiberConfig, FibrationError, euler_total, lookup_extremal, shioda_tate_rho, ns_discriminant
from .lattice import (Lattice, LatticeError, PreconditionError, drop_prime_square, embed_into_unimodular,
                      genus1_divisor_mod_p, standard_lattice)

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240601


class CheckFailed(Exception):
    """A claim was checked and does not hold (exit 1)."""


def dump(data):
    return json.dumps(data, sort_keys=True, indent=2, default=str) + "\n"


def emit(ctx, data, out=None):
    obj = ctx.find_root().obj or {}
    payload = {"schema_version": SCHEMA_VERSION, "seed": obj.get("seed", DEFAULT_SEED)}
    payload.update(data)
    text = dump(payload)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def bad_input(message):
    raise click.UsageError(message)


# input parsing

def load_lattice(spec):
    """A standard name ('E8^2+U', 'Km'), inline JSON Gram matrix, or a JSON file."""
    try:
        p = Path(spec)
        if p.suffix == ".json" or (p.exists() and p.is_file()):
            return Lattice.from_json(p.read_text())
        if spec.lstrip().startswith(("[", "{")):
            data = json.loads(spec)
            return Lattice(data) if isinstance(data, list) else Lattice.from_json(data)
        return standard_lattice(spec)
    except (OSError, json.JSONDecodeError, LatticeError, ValueError, TypeError) as err:
        bad_input(f"cannot read lattice {spec!r}: {err}")


def int_list(text, what):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        bad_input(f"{what} must be comma-separated integers")


def fiber_list(text):
    return [s for s in text.replace(" ", ",").split(",") if s]


def builtin_model(name):
    from .casebook import (extremal_model, inose_surface, kummer_as_fibration, legendre_curve, z2_surface,
                           z3_model)
    key = name.strip()
    low = key.lower()
    if low.startswith("z2:"):
        return z2_surface(extremal_model(key[3:]))
    if low in ("kummer", "km", "kummer_fibration"):
        return kummer_as_fibration(legendre_curve(MultiRat.var("t1")), legendre_curve(MultiRat.var("t2")))
    if low in ("inose", "ino"):
        return inose_surface(extremal_at("legendre", "t1"), extremal_at("legendre", "t2"))
    if low == "c":
        return z3_model()["C"]
    return extremal_model(key)


def extremal_at(name, value):
    from .casebook import extremal_at as at
    return at(name, value)


def load_model(spec):
    """Built-in model name or a JSON file as written by `casebook emit`."""
    try:
        p = Path(spec)
        if p.suffix == ".json" or p.is_file():
            data = json.loads(p.read_text())
            data = data.get("model", data)
            coeffs = [parse(c, QQ) for c in data["a"]]
            return WeierstrassModel(*coeffs, base=data.get("base") or "t", name=data.get("name"))
        return builtin_model(spec)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
        bad_input(f"cannot read model {spec!r}: {err}")


def params_from(pairs, **named):
    out = {k: v for k, v in named.items() if v is not None}
    for item in pairs:
        if "=" not in item:
            bad_input(f"parameter {item!r} must look like name=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            bad_input(f"parameter {item!r} needs an integer value")
    return out


# commands

@click.group(invoke_without_command=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed recorded in every report.")
@click.version_option(__version__, prog_name="k3fib")
@click.pass_context
def cli(ctx, seed):
    """Exact computations with elliptic K3 surfaces."""
    ctx.obj = {"seed": seed}
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help(), err=True)
        ctx.exit(2)


@cli.group()
def lattice():
    """Even lattices: invariants and embedding procedures."""


@lattice.command("invariants")
@click.argument("spec")
@click.option("--json", "out", type=click.Path(dir_okay=False), help="Write the report here.")
@click.pass_context
def lattice_invariants(ctx, spec, out):
    L = load_lattice(spec)
    emit(ctx, {"command": "lattice invariants", "lattice": spec, "invariants": L.invariants()}, out)


@lattice.command("embed")
@click.argument("spec")
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def lattice_embed(ctx, spec, out):
    L = load_lattice(spec)
    chain = embed_into_unimodular(L)
    data = chain.to_json()
    if abs((chain[-1] if chain else L).disc) != 1:
        raise CheckFailed("embedding chain did not reach a unimodular lattice")
    emit(ctx, {"command": "lattice embed", "lattice": spec, "chain": data}, out)


@lattice.command("drop-p")
@click.argument("spec")
@click.option("--p", "p", type=int, required=True)
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def lattice_drop_p(ctx, spec, p, out):
    L = load_lattice(spec)
    chain = drop_prime_square(L, p)
    final = chain[-1] if chain else L
    if final.disc % (p * p) == 0:
        raise CheckFailed(f"{p}^2 still divides the discriminant")
    emit(ctx, {"command": "lattice drop-p", "lattice": spec, "p": p, "chain": chain.to_json()}, out)


@lattice.command("genus1")
@click.argument("spec")
@click.option("--p", "p", type=int, required=True)
@click.option("--D", "D", required=True, help="Comma-separated coordinates of the isotropic vector.")
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def lattice_genus1(ctx, spec, p, D, out):
    L = load_lattice(spec)
    Dv = int_list(D, "--D")
    if len(Dv) != L.rank:
        bad_input(f"--D has {len(Dv)} entries, the lattice has rank {L.rank}")
    Dp = genus1_divisor_mod_p(L, p, Dv)
    emit(ctx, {"command": "lattice genus1", "lattice": spec, "p": p, "D": Dv, "D_prime": list(Dp),
               "norm": str(L.norm(Dp))}, out)


@cli.group()
def fibration():
    """Kodaira fibers, classification tables, Shioda-Tate and Euler numbers."""


@fibration.command("lookup")
@click.argument("fibers")
@click.option("--char", "char", type=int, default=None, help="Characteristic filter.")
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def fibration_lookup(ctx, fibers, char, out):
    rows = lookup_extremal(fiber_list(fibers), char)
    emit(ctx, {"command": "fibration lookup", "fibers": fiber_list(fibers), "rows": rows}, out)


@fibration.command("shioda-tate")
@click.argument("fibers")
@click.option("--mw-rank", type=int, default=0, show_default=True)
@click.option("--torsion", type=int, default=1, show_default=True)
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def fibration_shioda_tate(ctx, fibers, mw_rank, torsion, out):
    cfg = FiberConfig.from_symbols(fiber_list(fibers), mw_rank, torsion)
    data = {"command": "fibration shioda-tate", "fibers": cfg.symbols, "rho": shioda_tate_rho(cfg)}
    if mw_rank == 0:
        data["ns_disc"] = str(ns_discriminant(cfg))
    emit(ctx, data, out)


@fibration.command("euler")
@click.argument("fibers")
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def fibration_euler(ctx, fibers, out):
    cfg = FiberConfig.from_symbols(fiber_list(fibers))
    e, chi = euler_total(cfg)
    emit(ctx, {"command": "fibration euler", "fibers": cfg.symbols, "euler": e, "chi": chi}, out)


@cli.group()
def casebook():
    """Explicit Weierstrass models and their substitution chains."""


@casebook.command("verify")
@click.argument("case")
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def casebook_verify(ctx, case, out):
    if case.lower().replace("*", "star") not in {c.lower() for c in CASES}:
        bad_input(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    try:
        rep = verify_case(case)
    except IdentityFailure as err:
        raise CheckFailed(str(err)) from None
    emit(ctx, {"command": "casebook verify", "report": rep.to_json()}, out)
    if not rep.ok:
        raise CheckFailed(f"{case}: a required step failed")


@casebook.command("emit")
@click.argument("model")
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def casebook_emit(ctx, model, out):
    M = load_model(model)
    emit(ctx, {"command": "casebook emit", "model": M.to_json()}, out)


@cli.group()
def count():
    """Point counts over prime fields."""


@count.command("elliptic")
@click.option("--a", "a", default=None, help="a1,a2,a3,a4,a6 as integers.")
@click.option("--model", default=None, help="Built-in family (with --t) instead of --a.")
@click.option("--t", "t", type=int, default=None)
@click.option("--p", "p", type=int, required=True)
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def count_elliptic_cmd(ctx, a, model, t, p, out):
    from .counting import count_elliptic
    if (a is None) == (model is None):
        bad_input("give exactly one of --a and --model")
    if a is not None:
        coeffs = int_list(a, "--a")
        if len(coeffs) != 5:
            bad_input("--a needs five coefficients")
        E = WeierstrassModel(*coeffs, base=None, check=False)
    else:
        if t is None:
            bad_input("--model needs --t")
        E = extremal_at(model, t)
    rep = count_elliptic(E, p)
    emit(ctx, {"command": "count elliptic", "report": rep.to_json()}, out)


@count.command("surface")
@click.option("--model", required=True, help="Built-in name (legendre, II*, z2:legendre, kummer, ...) or JSON file.")
@click.option("--p", "p", type=int, required=True)
@click.option("--t1", type=int, default=None)
@click.option("--t2", type=int, default=None)
@click.option("--param", "extra", multiple=True, help="Further bindings name=value.")
@click.option("--mode", type=click.Choice(["naive", "smooth"]), default="smooth", show_default=True)
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def count_surface_cmd(ctx, model, p, t1, t2, extra, mode, out):
    from .counting import count_fibered_surface, weil_window
    M = load_model(model)
    params = params_from(extra, t1=t1, t2=t2)
    rep = count_fibered_surface(M, p, params, mode)
    data = rep.to_json()
    data["weil_window"] = weil_window(rep.total, p)
    emit(ctx, {"command": "count surface", "report": data}, out)


@count.command("hypersurface")
@click.option("--poly", "polys", multiple=True, required=True, help="Polynomial; repeat for a system.")
@click.option("--p", "p", type=int, required=True)
@click.option("--vars", "variables", default=None, help="Comma-separated variable order.")
@click.option("--param", "extra", multiple=True)
@click.option("--budget", type=int, default=None, help="Evaluation budget (else K3FIB_EVAL_BUDGET or 1e9).")
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def count_hypersurface_cmd(ctx, polys, p, variables, extra, budget, out):
    from .counting import count_affine_variety
    try:
        fs = [parse(f, QQ) for f in polys]
    except ValueError as err:
        bad_input(f"cannot parse polynomial: {err}")
    vs = [v for v in variables.split(",") if v] if variables else None
    rep = count_affine_variety(fs, p, params_from(extra), vs, budget)
    emit(ctx, {"command": "count hypersurface", "polys": list(polys), "report": rep.to_json()}, out)


@count.command("compare")
@click.argument("report_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("report_b", type=click.Path(exists=True, dir_okay=False))
@click.option("--p", "p", type=int, default=None)
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def count_compare_cmd(ctx, report_a, report_b, p, out):
    from .counting import CountReport, compare_mod_p
    reps = []
    for path in (report_a, report_b):
        try:
            data = json.loads(Path(path).read_text())
            data = data.get("report", data)
            reps.append(CountReport(int(data["p"]), int(data["total"])))
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
            bad_input(f"cannot read count report {path}: {err}")
    emit(ctx, {"command": "count compare", "verdict": compare_mod_p(reps[0], reps[1], p)}, out)


@count.command("threefold")
@click.option("--p", "p", type=int, default=5, show_default=True)
@click.option("--t", "t", default="2,3,4", show_default=True, help="t1,t2,t3")
@click.option("--json", "out", type=click.Path(dir_okay=False))
@click.pass_context
def count_threefold_cmd(ctx, p, t, out):
    from .counting import threefold_experiment
    ts = int_list(t, "--t")
    if len(ts) != 3:
        bad_input("--t needs three values")
    rep = threefold_experiment(p, ts)
    emit(ctx, {"command": "count threefold", "report": rep}, out)
    if not rep["ok"]:
        raise CheckFailed("threefold congruence failed")


@cli.command("run")
@click.argument("config", type=click.Path(dir_okay=False))
@click.pass_context
def run_config(ctx, config):
    """Run a JSON config: {"command": [...], "options": {...}, "seed": n, "output": path}."""
    try:
        data = json.loads(Path(config).read_text() or "{}")
    except (OSError, json.JSONDecodeError) as err:
        bad_input(f"cannot read config: {err}")
    if not isinstance(data, dict) or not data.get("command"):
        bad_input("empty config: a 'command' list is required")
    args = ["--seed", str(data.get("seed", DEFAULT_SEED))] + [str(c) for c in data["command"]]
    for k, v in sorted((data.get("options") or {}).items()):
        for item in (v if isinstance(v, list) else [v]):
            args += [f"--{k}", str(item)]
    args += [str(a) for a in data.get("arguments", [])]
    if data.get("output"):
        args += ["--json", str(data["output"])]
    cli.main(args=args, prog_name="k3fib", standalone_mode=False)


# errors other than usage errors arrive here

_INPUT_ERRORS = (LatticeError, FibrationError, CasebookError, ValueError)


def main(argv=None):
    from .counting import CountingError
    try:
        rv = cli.main(args=argv, prog_name="k3fib", standalone_mode=False)
    except click.exceptions.Exit as e:
        code = e.exit_code
    except click.ClickException as e:
        e.show()
        code = e.exit_code
    except click.Abort:
        code = 1
    except (CheckFailed, AssertionError, IdentityFailure) as e:
        click.echo(f"check failed: {e}", err=True)
        code = 1
    except PreconditionError as e:
        click.echo(f"precondition: {e}", err=True)
        code = 2
    except (CountingError,) + _INPUT_ERRORS as e:
        click.echo(f"error: {e}", err=True)
        code = 2
    else:
        code = rv if isinstance(rv, int) else 0
    sys.exit(code)


if __name__ == "__main__":
    main()
