"""Command-line interface.

Exit codes: 0 valid, 10 invalid signature, 20 document modified
(located or not), 30 structural error (block organization mismatch or
bad manifest), 64 usage error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import blocks, scheme, signing, wire
from .bench import fit_hash_cost, run_accounting, write_report
from .cff import build, canonical_bytes, canonical_digest, plan
from .hashing import HashBackend
from .scheme import OutcomeKind

EXIT_VALID = 0
EXIT_INVALID_SIGNATURE = 10
EXIT_MODIFIED = 20
EXIT_STRUCTURAL = 30
EXIT_USAGE = 64

_OUTCOME_EXIT = {
    OutcomeKind.VALID: EXIT_VALID,
    OutcomeKind.INVALID_SIGNATURE: EXIT_INVALID_SIGNATURE,
    OutcomeKind.MODIFIED_UNLOCATED: EXIT_MODIFIED,
    OutcomeKind.MODIFIED_LOCATED: EXIT_MODIFIED,
    OutcomeKind.STRUCTURAL_ERROR: EXIT_STRUCTURAL,
}


def _block_options(fn):
    fn = click.option("--fixed", type=int, default=None,
                      help="Fixed block size in bytes.")(fn)
    fn = click.option("--delim", default=None,
                      help="Block delimiter as a hex byte string.")(fn)
    fn = click.option("--manifest", type=click.Path(exists=True),
                      default=None,
                      help="Manifest file with explicit block offsets.")(fn)
    return fn


def _make_view(document: bytes, fixed, delim, manifest) -> blocks.BlockView:
    chosen = [x for x in (fixed, delim, manifest) if x is not None]
    if len(chosen) != 1:
        raise click.UsageError(
            "exactly one of --fixed, --delim, --manifest is required")
    if fixed is not None:
        return blocks.split_fixed(len(document), fixed)
    if delim is not None:
        try:
            delimiter = bytes.fromhex(delim)
        except ValueError:
            raise click.UsageError(f"--delim {delim!r} is not valid hex")
        return blocks.split_delimiter(document, delimiter)
    view = blocks.parse_manifest(Path(manifest).read_text())
    if view.total != len(document):
        raise blocks.ManifestLengthError(
            f"manifest covers {view.total} bytes, document has "
            f"{len(document)}")
    return view


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key, value in payload.items():
            click.echo(f"{key}: {value}")


@click.group()
def cli():
    """Sign documents so that a verifier can locate which blocks were
    modified, up to a chosen threshold d."""


@cli.command()
@click.option("-a", "--algorithm", default="ed25519",
              type=click.Choice(["ed25519", "stub"]))
@click.option("--seed", default="", help="Hex seed for deterministic keys "
                                         "(stub fixtures).")
@click.option("-o", "--out", required=True, type=click.Path(),
              help="Private key output file.")
@click.option("--pub", required=True, type=click.Path(),
              help="Public key output file.")
@click.option("--json", "as_json", is_flag=True)
def keygen(algorithm, seed, out, pub, as_json):
    """Generate a key pair and write both key files."""
    backend = signing.backend_by_name(algorithm)
    sk, pk = backend.gen(seed=bytes.fromhex(seed) if seed else b"")
    signing.write_key(out, backend.alg_id, sk)
    signing.write_key(pub, backend.alg_id, pk)
    _emit({"algorithm": algorithm, "private_key": out, "public_key": pub},
          as_json)
    return EXIT_VALID


@cli.command("plan")
@click.option("-d", "threshold", type=int, required=True)
@click.option("-n", "nblocks", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def cmd_plan(threshold, nblocks, as_json):
    """Show the planned construction with formula and actual (t, w)."""
    p = plan(threshold, nblocks)
    matrix = build(threshold, nblocks)
    _emit({
        "construction": p.construction.name,
        "d": threshold,
        "n": nblocks,
        "t_formula": p.t_formula,
        "w_formula": p.w_formula,
        "built_construction": matrix.construction.name,
        "t_actual": matrix.t,
        "w_actual": matrix.weight,
    }, as_json)
    return EXIT_VALID


@cli.command("sign")
@click.option("-k", "--key", required=True, type=click.Path(exists=True),
              help="Private key file.")
@click.option("-d", "threshold", type=int, required=True,
              help="Maximum number of modified blocks to localize.")
@click.option("-o", "--out", required=True, type=click.Path(),
              help="Signature output file (.mlss).")
@click.option("--hash", "hash_name", default="sha256",
              type=click.Choice(["sha256", "sha512"]))
@click.option("--json", "as_json", is_flag=True)
@_block_options
@click.argument("document", type=click.Path(exists=True))
def cmd_sign(key, threshold, out, hash_name, as_json, fixed, delim, manifest,
             document):
    """Sign DOCUMENT with modification localization."""
    data = Path(document).read_bytes()
    view = _make_view(data, fixed, delim, manifest)
    alg_id, secret = signing.read_key(key)
    sig_backend = signing.backend_for(alg_id)
    backend = HashBackend.by_name(hash_name)
    sig = scheme.sign(secret, data, view, threshold, backend, sig_backend)
    blob = wire.encode_signature(sig)
    Path(out).write_bytes(blob)
    _emit({
        "d": sig.d,
        "n": sig.n,
        "t": sig.t,
        "signature_file": out,
        "signature_bytes": len(blob),
    }, as_json)
    return EXIT_VALID


@cli.command("verify")
@click.option("-k", "--key", required=True, type=click.Path(exists=True),
              help="Public key file.")
@click.option("--locate", is_flag=True,
              help="Locate modified blocks when the document changed.")
@click.option("--json", "as_json", is_flag=True)
@_block_options
@click.argument("document", type=click.Path(exists=True))
@click.argument("sigfile", type=click.Path(exists=True))
def cmd_verify(key, locate, as_json, fixed, delim, manifest, document,
               sigfile):
    """Verify DOCUMENT against SIGFILE; exit code reflects the outcome."""
    data = Path(document).read_bytes()
    view = _make_view(data, fixed, delim, manifest)
    alg_id, public = signing.read_key(key)
    sig = wire.decode_signature(Path(sigfile).read_bytes())
    if alg_id != sig.sig_alg:
        raise click.UsageError("key algorithm does not match signature")
    backend = HashBackend(sig.hash_alg)
    outcome = scheme.verify(public, sig, data, view, locate, backend)
    payload = {"outcome": outcome.kind.value}
    if outcome.kind is OutcomeKind.MODIFIED_LOCATED:
        payload["modified_blocks"] = list(outcome.modified)
        payload["over_threshold"] = outcome.over_threshold
        if outcome.over_threshold:
            payload["warning"] = (
                f"more than d={sig.d} blocks flagged; the set is a "
                "superset of the modifications")
    if outcome.detail:
        payload["detail"] = outcome.detail
    _emit(payload, as_json)
    return _OUTCOME_EXIT[outcome.kind]


@cli.group()
def cff():
    """Cover-free matrix inspection."""


@cff.command("dump")
@click.option("-d", "threshold", type=int, required=True)
@click.option("-n", "nblocks", type=int, required=True)
@click.option("--binary", "out_binary", type=click.Path(), default=None,
              help="Write the canonical encoding to this file.")
@click.option("--json", "as_json", is_flag=True)
def cmd_cff_dump(threshold, nblocks, out_binary, as_json):
    """Print the matrix rows and its canonical digest."""
    matrix = build(threshold, nblocks)
    if out_binary:
        Path(out_binary).write_bytes(canonical_bytes(matrix))
    payload = {
        "construction": matrix.construction.name,
        "d": matrix.d,
        "n": matrix.n,
        "t": matrix.t,
        "w": matrix.weight,
        "digest": canonical_digest(matrix),
        "rows": [list(row) for row in matrix.rows],
    }
    if as_json:
        _emit(payload, True)
    else:
        for key in ("construction", "d", "n", "t", "w", "digest"):
            click.echo(f"{key}: {payload[key]}")
        for i, row in enumerate(matrix.rows):
            click.echo(f"row {i}: {' '.join(map(str, row))}")
    return EXIT_VALID


@cli.command("bench")
@click.option("-d", "threshold", type=int, required=True)
@click.option("-n", "nblocks", type=int, required=True)
@click.option("--block-size", type=int, default=1024)
@click.option("--trials", type=int, default=3)
@click.option("--out-dir", type=click.Path(), default=None,
              help="Write bench.csv and the hash-cost figure here.")
@click.option("--json", "as_json", is_flag=True)
def cmd_bench(threshold, nblocks, block_size, trials, out_dir, as_json):
    """Exact hash-byte accounting plus a machine-specific linear fit of
    hash cost vs input size."""
    report = run_accounting(threshold, nblocks, block_size, trials)
    fit = fit_hash_cost(trials=max(trials, 3))
    payload = {
        "d": report.d,
        "n": report.n,
        "block_size": report.block_size,
        "t": report.t,
        "w": report.w,
        "h_out": report.h_out,
        "accounting": [
            {"operation": r.operation, "predicted": r.predicted_bytes,
             "measured": r.measured_bytes, "match": r.ok,
             "seconds": r.seconds}
            for r in report.rows
        ],
        "accounting_exact": report.all_match,
        "fit": {"slope_s_per_byte": fit.slope, "intercept_s": fit.intercept,
                "r_squared": fit.r_squared,
                "note": "machine-specific, report only"},
    }
    if out_dir:
        payload["files"] = write_report(report, fit, out_dir)
    _emit(payload, as_json)
    return EXIT_VALID if report.all_match else 1


def main(argv=None) -> int:
    """Run the CLI and map outcomes/errors to the documented exit codes."""
    try:
        rv = cli.main(args=argv, standalone_mode=False)
        return rv if isinstance(rv, int) else EXIT_VALID
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (blocks.BlockViewError, scheme.SchemeError) as exc:
        click.echo(f"structural error: {exc}", err=True)
        return EXIT_STRUCTURAL
    except (wire.WireError, signing.KeyFileError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INVALID_SIGNATURE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
