"""Command line interface.

The project file defaults to ``lexibridge.project`` in the working
directory; the ``LEXIBRIDGE_DATA`` environment variable or ``--data``
overrides it. Commands that change the project save it back on success.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from lexibridge.model import LexibridgeError, PartOfSpeech, Severity, WorkflowState
from lexibridge.stats import COUNTING_POLICIES, DEFAULT_POLICY, enrichment_diff, inventory
from lexibridge.store import DATA_ENV_VAR, ProjectStore, default_store_path
from lexibridge.validation import format_report
from lexibridge.wndb import import_prior_translations


def _load_store(path: Path, must_exist: bool = False) -> ProjectStore:
    if path.is_file():
        return ProjectStore.load(path)
    if must_exist:
        raise LexibridgeError(f"no project file at {path}")
    return ProjectStore()


def _cmd_import_wndb(args: argparse.Namespace) -> int:
    store = _load_store(args.data)
    report, created = store.import_wndb(args.directory)
    store.save(args.data)
    print(f"read: {', '.join(report.files_read)}")
    for pos, count in sorted(report.synsets_parsed.items(), key=lambda kv: kv[0].value):
        print(f"  {pos.value}: {count}")
    print(f"synsets parsed: {report.total_parsed}")
    print(f"records created: {created}")
    print(f"header lines skipped: {report.lines_skipped}")
    if report.version:
        print(f"source version: {report.version}")
    for issue in report.errors:
        print(f"error: {issue}", file=sys.stderr)
    for issue in report.warnings:
        print(f"warning: {issue}", file=sys.stderr)
    return 0


def _cmd_import_prior(args: argparse.Namespace) -> int:
    store = _load_store(args.data)
    contents = Path(args.tsv).read_text(encoding="utf-8")
    imported, skipped, report = store.import_prior(contents)
    store.save(args.data)
    print(f"records imported: {imported}")
    if skipped:
        print(f"skipped (source synset not loaded): {len(skipped)}", file=sys.stderr)
        for sid in skipped:
            print(f"  {sid}", file=sys.stderr)
    for issue in report.errors:
        print(f"error: {issue}", file=sys.stderr)
    for issue in report.warnings:
        print(f"warning: {issue}", file=sys.stderr)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    store = _load_store(args.data, must_exist=True)
    pos_filter = PartOfSpeech.parse(args.pos) if args.pos else None

    pending = {WorkflowState.UNTRANSLATED, WorkflowState.NOT_UNDERSTOOD}
    any_error = False
    lines: list[str] = []
    for sid in sorted(store.records, key=str):
        record = store.records[sid]
        if pos_filter is not None and sid.pos is not pos_filter:
            continue
        untouched = (
            record.state in pending
            and not record.synonyms
            and not record.phrases
            and not record.gloss.strip()
            and not record.is_gap
        )
        if untouched:
            continue  # nothing has been written yet; nothing to judge
        findings = store.validate_record(sid)
        if any(f.severity is Severity.ERROR for f in findings):
            any_error = True
        if args.errors_only:
            findings = [f for f in findings if f.severity is Severity.ERROR]
        if findings:
            lines.append(format_report(findings))
    if lines:
        print("\n".join(lines))
    return 1 if any_error else 0


def _cmd_stats_inventory(args: argparse.Namespace) -> int:
    store = _load_store(args.data, must_exist=True)
    report = inventory(store.records.values(), args.policy)
    sys.stdout.write(report.to_tsv())
    return 0


def _cmd_stats_diff(args: argparse.Namespace) -> int:
    store = _load_store(args.data, must_exist=True)
    baseline_text = Path(args.baseline).read_text(encoding="utf-8")
    baseline_records, report = import_prior_translations(baseline_text)
    for issue in report.errors:
        print(f"baseline error: {issue}", file=sys.stderr)
    diff = enrichment_diff(baseline_records, store.records.values())
    sys.stdout.write(diff.to_tsv())
    if diff.ignored_baseline:
        print(
            f"ignored baseline records with no current counterpart: "
            f"{len(diff.ignored_baseline)}",
            file=sys.stderr,
        )
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    store = _load_store(args.data, must_exist=True)
    if args.format == "tsv":
        sys.stdout.write(store.export_tsv())
    else:
        sys.stdout.write(store.export_lmf(language=args.language))
    return 0


def _cmd_release_claims(args: argparse.Namespace) -> int:
    store = _load_store(args.data, must_exist=True)
    released = store.release_all_claims()
    store.save(args.data)
    print(f"claims released: {released}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from lexibridge.api import UserConfig, create_app

    store = _load_store(args.data)
    users = UserConfig.from_file(args.users)
    app = create_app(store, users, store_path=args.data)

    if args.ui:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=args.ui, html=True), name="ui")

    host, _, port_text = args.addr.partition(":")
    port = int(port_text) if port_text else 8787
    uvicorn.run(app, host=host or "127.0.0.1", port=port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexibridge",
        description="Localize a wordnet-style lexical database through a "
        "translate / correct / expert-review pipeline.",
    )
    parser.add_argument(
        "--data",
        type=Path,
        default=None,
        help=f"project file (default: $" + DATA_ENV_VAR + " or ./lexibridge.project)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("import-wndb", help="load source database files from a directory")
    p.add_argument("directory", type=Path)
    p.set_defaults(func=_cmd_import_wndb)

    p = sub.add_parser("import-prior", help="overlay previously translated rows (TSV)")
    p.add_argument("tsv", type=Path)
    p.set_defaults(func=_cmd_import_prior)

    p = sub.add_parser("validate", help="run validation over the project")
    p.add_argument("--pos", default=None, help="limit to one part of speech")
    p.add_argument("--errors-only", action="store_true", help="print only errors")
    p.set_defaults(func=_cmd_validate)

    stats = sub.add_parser("stats", help="project statistics")
    stats_sub = stats.add_subparsers(dest="stats_command", required=True)

    p = stats_sub.add_parser("inventory", help="coverage counts per part of speech")
    p.add_argument(
        "--policy",
        choices=sorted(COUNTING_POLICIES),
        default=DEFAULT_POLICY,
        help="which workflow states count as covered",
    )
    p.set_defaults(func=_cmd_stats_inventory)

    p = stats_sub.add_parser("diff", help="enrichment compared to a baseline TSV")
    p.add_argument("--baseline", required=True, type=Path)
    p.set_defaults(func=_cmd_stats_diff)

    p = sub.add_parser("export", help="write the target lexicon to stdout")
    p.add_argument("--format", choices=("tsv", "lmf"), default="tsv")
    p.add_argument("--language", default="und", help="language code for the lmf export")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--addr", default="127.0.0.1:8787", help="host:port to bind")
    p.add_argument("--users", required=True, type=Path, help="JSON user/token config")
    p.add_argument("--ui", default=None, help="directory of static UI files to serve")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("release-claims", help="drop all work claims")
    p.set_defaults(func=_cmd_release_claims)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.data is None:
        args.data = default_store_path()
    try:
        return args.func(args)
    except LexibridgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
