"""Command-line interface.

Exit codes: 0 = success / all checks PASS, 1 = a check or validation
FAILed, 2 = usage or parse error (with file/line/column diagnostics),
3 = arithmetic guard tripped (characteristic too small, randomness or
size limits exhausted).
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import checks, corpus, deloop
from .algebra import validate_algebra
from .errors import (
    CharTooSmall,
    CorpusError,
    RandomnessExhausted,
    ResourceGuard,
    SyzygyError,
)
from .modules import canonical_modules

_seed_option = click.option("--seed", type=int, default=1, envvar="SYZYGY_SEED",
                            show_default=True, help="Base seed for randomized steps.")
_prime_option = click.option("--prime", type=int, default=None, envvar="SYZYGY_PRIME",
                             help="Override the field characteristic of input files.")


def guarded(f):
    """Map library errors onto the documented exit codes."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except CorpusError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except (CharTooSmall, RandomnessExhausted, ResourceGuard) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)
        except ValueError as exc:
            # modulus guards and malformed numeric input
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except SyzygyError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
def main():
    """Exact homological computations for finite-dimensional algebras."""


@main.group("algebra")
def algebra_group():
    """Load, validate, and derive algebras from definition files."""


def _load(path, prime):
    entry = corpus.load_entry_file(path)
    a = corpus.load_algebra_file(path, prime)
    return entry, a


def _summary(a):
    return {
        "id": a.name,
        "p": a.p,
        "dim": a.dim,
        "radical_dim": int(a.radical.shape[0]),
        "simples": int(a.idempotents.shape[0]),
    }


@algebra_group.command("validate")
@click.argument("file", type=click.Path())
@_prime_option
@guarded
def algebra_validate(file, prime):
    """Check every structural invariant of an algebra file."""
    _, a = _load(file, prime)
    rep = validate_algebra(a)
    out = _summary(a)
    out["ok"] = rep.ok
    out["violations"] = rep.violations
    click.echo(json.dumps(out, sort_keys=True))
    sys.exit(0 if rep.ok else 1)


@algebra_group.command("build")
@click.argument("file", type=click.Path())
@click.option("--construction", type=click.Choice(["opposite", "trivext", "cover", "lambda"]),
              default=None, help="Derived algebra to build from the input.")
@_prime_option
@guarded
def algebra_build(file, construction, prime):
    """Build an algebra (optionally a derived one) and print its shape."""
    _, a = _load(file, prime)
    if construction is not None:
        a = checks._ALGEBRA_OPS[construction](a)
        a.name = f"{construction}({Path(file).stem})"
    rep = validate_algebra(a)
    out = _summary(a)
    out["construction"] = construction
    out["ok"] = rep.ok
    click.echo(json.dumps(out, sort_keys=True))
    sys.exit(0 if rep.ok else 1)


def _simple_index(entry, a, name):
    """Resolve --simple / --module names: vertex names, with an optional
    S/P prefix, or a plain 0-based index."""
    vertices = entry.raw.get("quiver", {}).get("vertices", [])
    candidates = [name]
    if name[:1] in ("S", "P") and len(name) > 1:
        candidates.append(name[1:])
    for cand in candidates:
        if cand in vertices:
            return vertices.index(cand)
    for cand in candidates:
        try:
            idx = int(cand)
        except ValueError:
            continue
        if 0 <= idx < a.idempotents.shape[0]:
            return idx
    raise CorpusError(f"unknown simple {name!r}; vertices are {vertices}")


@main.group("del")
def del_group():
    """Delooping-level bounds."""


def _fmt_bounds(label, b):
    upper = "?" if b.upper is None else b.upper
    tag = "exact" if b.exact else "interval"
    return f"del({label}) = [{b.lower}, {upper}] ({tag}) witness={b.witness_tag}"


@del_group.command("bounds")
@click.argument("file", type=click.Path())
@click.option("--simple", "simple_name", default=None,
              help="Restrict to one simple module (default: all, aggregated).")
@click.option("--horizon", type=int, default=deloop.DEFAULT_HORIZON, show_default=True)
@_seed_option
@_prime_option
@guarded
def del_bounds_cmd(file, simple_name, horizon, seed, prime):
    """Certified interval for the delooping level."""
    entry, a = _load(file, prime)
    if simple_name is not None:
        idx = _simple_index(entry, a, simple_name)
        s = canonical_modules(a)[1][idx]
        b = deloop.del_bounds(s, horizon=horizon, seed=seed)
        click.echo(_fmt_bounds(simple_name, b))
    else:
        agg, per = deloop.del_algebra(a, horizon=horizon, seed=seed)
        for i, b in enumerate(per):
            click.echo(_fmt_bounds(f"S{i}", b))
        click.echo(_fmt_bounds(a.name or "A", agg))
    sys.exit(0)


@main.command("pd")
@click.argument("file", type=click.Path())
@click.option("--module", "module_spec", required=True,
              help="Module to resolve: 'regular', S<vertex>, or P<vertex>.")
@click.option("--cap", type=int, default=deloop.DEFAULT_PD_CAP, show_default=True)
@_seed_option
@_prime_option
@guarded
def pd_cmd(file, module_spec, cap, seed, prime):
    """Projective dimension: finite value, certified infinite cycle, or unknown."""
    entry, a = _load(file, prime)
    regular, simples, projectives = canonical_modules(a)
    if module_spec in ("regular", "A"):
        x = regular
    elif module_spec[:1] == "P":
        x = projectives[_simple_index(entry, a, module_spec)].module
    else:
        x = simples[_simple_index(entry, a, module_spec)]
    r = deloop.projective_dimension(x, cap=cap, seed=seed)
    if r.kind == "finite":
        click.echo(f"pd({module_spec}) = {r.value}")
    elif r.kind == "infinite":
        i, j = r.cycle
        click.echo(f"pd({module_spec}) = infinite (syzygy cycle {i} ~ {j})")
    else:
        click.echo(f"pd({module_spec}) unknown within cap {r.cap}")
    sys.exit(0)


@main.group("paper")
def paper_group():
    """Corpus-wide verification of the documented structure results."""


@paper_group.command("verify")
@click.argument("corpus_dir", type=click.Path(), required=False)
@click.option("--check", "only_check", default=None,
              type=click.Choice(list(checks.CHECK_IDS)), help="Run one check only.")
@click.option("--algebra", "only_algebra", default=None, help="Run one entry only.")
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Write the canonical JSON report here.")
@_seed_option
@_prime_option
@guarded
def paper_verify(corpus_dir, only_check, only_algebra, report_path, seed, prime):
    """Run every check over a corpus directory (default: bundled corpus)."""
    entries = corpus.load_corpus(corpus_dir)
    config = checks.Config(seed=seed, prime=prime)
    reports, ok = checks.run_corpus(entries, config, only_check=only_check,
                                    only_algebra=only_algebra)
    doc = checks.report_document(
        reports, config, [e.id for e in entries],
        [e.id for e in entries if e.expect_fail])
    if report_path is not None:
        Path(report_path).write_text(checks.serialize_report(doc))
    click.echo(checks.format_report_text(doc), nl=False)
    sys.exit(0 if ok else 1)


@main.command("report")
@click.argument("file", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
@click.option("--reverify", is_flag=True,
              help="Re-check every stored certificate with exact arithmetic.")
@click.option("--corpus-dir", type=click.Path(), default=None,
              help="Corpus the report refers to (default: bundled).")
@guarded
def report_cmd(file, fmt, reverify, corpus_dir):
    """Render a stored report, optionally re-verifying its certificates."""
    path = Path(file)
    if not path.is_file():
        raise CorpusError(f"{file}: no such report file")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CorpusError(
            f"{file}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if fmt == "json":
        click.echo(checks.serialize_report(doc), nl=False)
    else:
        click.echo(checks.format_report_text(doc), nl=False)
    if reverify:
        entries = corpus.load_corpus(corpus_dir)
        results, ok = checks.reverify_report(doc, entries)
        bad = [r for r in results if not r["ok"]]
        click.echo(f"reverify: {len(results) - len(bad)}/{len(results)} certificates ok")
        for r in bad:
            click.echo(f"  FAILED {r['algebra_id']} {r['check_id']} "
                       f"#{r['certificate']} ({r['kind']}): {r['detail']}")
        sys.exit(0 if ok else 1)
    sys.exit(0)


if __name__ == "__main__":
    main()
