"""Readers for the fixed-format lexical database files and the prior-translation TSV.

Data files (``data.noun``, ``data.verb``, ``data.adj``, ``data.adv``) hold one
synset per line::

    offset lex_filenum ss_type w_cnt word lex_id [word lex_id ...]
           p_cnt [ptr_symbol offset pos source/target ...] [frames] | gloss

``w_cnt`` is hexadecimal, ``p_cnt`` decimal. License headers are lines that
start with two spaces. Words use ``_`` for spaces. Only ``@`` and ``@i``
pointers are kept (as hypernyms); for satellite synsets the ``&`` link to the
head adjective is kept as a hypernym too, so the hierarchy stays connected for
polysemy checks. The gloss after `` | `` splits into a definition and one
example per maximal double-quoted span.

Lines that break the grammar are recorded as errors and skipped, including
lines with no `` | `` separator: without it the gloss is missing and the
synset would violate the non-empty-gloss rule, so nothing is produced for it.
A ``w_cnt``/``p_cnt`` field that is present but not a number of the required
base aborts the whole parse, because it means the file is not in this layout
at all.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from lexibridge.model import (
    LexibridgeError,
    PartOfSpeech,
    SourceSynset,
    Synonym,
    SynsetId,
    TranslationRecord,
    WorkflowState,
    normalize_lemma,
)

HYPERNYM_SYMBOLS = frozenset({"@", "@i"})
SATELLITE_HEAD_SYMBOL = "&"

DATA_FILES = {
    "data.noun": PartOfSpeech.NOUN,
    "data.verb": PartOfSpeech.VERB,
    "data.adj": PartOfSpeech.ADJECTIVE,
    "data.adv": PartOfSpeech.ADVERB,
}

_OFFSET_RE = re.compile(r"^\d{8}$")
_QUOTED_RE = re.compile(r'"([^"]*)"')
_VERSION_RE = re.compile(r"WordNet\s+(\d+\.\d+)")


class FatalFormatError(LexibridgeError):
    """The file is not in the expected layout; nothing can be salvaged."""


class NoInputFilesError(LexibridgeError):
    """The directory holds no recognized data files."""


class DuplicateRecordError(LexibridgeError):
    """The prior-translation input repeats one or more synset ids."""

    def __init__(self, ids: list[SynsetId]):
        self.ids = ids
        listed = ", ".join(str(i) for i in ids)
        super().__init__(f"duplicate rows for: {listed}")


@dataclass(frozen=True)
class ParseIssue:
    file: str
    line: int
    reason: str

    def __str__(self) -> str:
        return f"{self.file}:{self.line}: {self.reason}"


@dataclass
class ParseReport:
    """What a parsing pass read, produced, skipped and complained about."""

    files_read: list[str] = field(default_factory=list)
    synsets_parsed: dict[PartOfSpeech, int] = field(default_factory=dict)
    lines_skipped: int = 0
    errors: list[ParseIssue] = field(default_factory=list)
    warnings: list[ParseIssue] = field(default_factory=list)
    version: str | None = None

    @property
    def total_parsed(self) -> int:
        return sum(self.synsets_parsed.values())

    def count(self, pos: PartOfSpeech) -> None:
        self.synsets_parsed[pos] = self.synsets_parsed.get(pos, 0) + 1

    def merge(self, other: "ParseReport") -> None:
        self.files_read.extend(other.files_read)
        for pos, n in other.synsets_parsed.items():
            self.synsets_parsed[pos] = self.synsets_parsed.get(pos, 0) + n
        self.lines_skipped += other.lines_skipped
        self.errors.extend(other.errors)
        self.warnings.extend(other.warnings)
        if self.version is None:
            self.version = other.version

    def to_dict(self) -> dict:
        return {
            "files_read": list(self.files_read),
            "synsets_parsed": {pos.value: n for pos, n in self.synsets_parsed.items()},
            "total_parsed": self.total_parsed,
            "lines_skipped": self.lines_skipped,
            "errors": [str(e) for e in self.errors],
            "warnings": [str(w) for w in self.warnings],
            "version": self.version,
        }


class _LineError(Exception):
    """Internal: the current line violates the grammar; skip and continue."""


def split_gloss(text: str) -> tuple[str, tuple[str, ...]]:
    """Split gloss text into (definition, examples).

    Each maximal ``"..."`` span becomes one example with the quotes stripped;
    the definition is everything else with whitespace collapsed. No other
    characters are dropped, so re-inserting the quoted spans reproduces the
    original gloss up to whitespace.
    """
    examples = tuple(m.group(1).strip() for m in _QUOTED_RE.finditer(text))
    definition = normalize_lemma(_QUOTED_RE.sub(" ", text))
    return definition, examples


class _Cursor:
    """Token cursor over the field part of a data line."""

    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def take(self, what: str) -> str:
        if self.pos >= len(self.tokens):
            raise _LineError(f"line ends before {what}")
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    @property
    def exhausted(self) -> bool:
        return self.pos >= len(self.tokens)


def _parse_data_line(
    line: str, file_pos: PartOfSpeech, filename: str, line_no: int
) -> SourceSynset:
    head, sep, gloss_text = line.partition(" | ")
    if not sep:
        raise _LineError("missing ' | ' gloss separator")

    cur = _Cursor(head.split())

    offset = cur.take("synset offset")
    if not _OFFSET_RE.match(offset):
        raise _LineError(f"bad synset offset {offset!r}")

    lex_token = cur.take("lex_filenum")
    try:
        lex_file = int(lex_token, 10)
    except ValueError:
        raise _LineError(f"bad lex_filenum {lex_token!r}") from None

    ss_type = cur.take("ss_type")
    try:
        pos = PartOfSpeech.from_wndb(ss_type)
    except ValueError as exc:
        raise _LineError(str(exc)) from None
    compatible = {file_pos}
    if file_pos is PartOfSpeech.ADJECTIVE:
        compatible.add(PartOfSpeech.ADJECTIVE_SATELLITE)
    if pos not in compatible:
        raise _LineError(f"ss_type {ss_type!r} does not belong in {filename}")

    w_token = cur.take("w_cnt")
    try:
        w_cnt = int(w_token, 16)
    except ValueError:
        raise FatalFormatError(
            f"{filename}:{line_no}: w_cnt {w_token!r} is not hexadecimal"
        ) from None
    if w_cnt < 1:
        raise _LineError("w_cnt must be at least 1")

    lemmas = []
    for _ in range(w_cnt):
        word = cur.take("word")
        lex_id = cur.take("lex_id")
        try:
            int(lex_id, 16)
        except ValueError:
            raise _LineError(f"bad lex_id {lex_id!r}") from None
        lemmas.append(word.replace("_", " "))

    p_token = cur.take("p_cnt")
    try:
        p_cnt = int(p_token, 10)
    except ValueError:
        raise FatalFormatError(
            f"{filename}:{line_no}: p_cnt {p_token!r} is not decimal"
        ) from None

    hypernym_symbols = set(HYPERNYM_SYMBOLS)
    if pos is PartOfSpeech.ADJECTIVE_SATELLITE:
        hypernym_symbols.add(SATELLITE_HEAD_SYMBOL)

    hypernyms = []
    for _ in range(p_cnt):
        symbol = cur.take("pointer symbol")
        target_offset = cur.take("pointer offset")
        target_letter = cur.take("pointer pos")
        source_target = cur.take("pointer source/target")
        if not _OFFSET_RE.match(target_offset):
            raise _LineError(f"bad pointer offset {target_offset!r}")
        try:
            target_pos = PartOfSpeech.from_wndb(target_letter)
        except ValueError as exc:
            raise _LineError(str(exc)) from None
        try:
            int(source_target, 16)
        except ValueError:
            raise _LineError(f"bad pointer source/target {source_target!r}") from None
        if symbol in hypernym_symbols:
            target = SynsetId(target_pos, target_offset)
            if target not in hypernyms:
                hypernyms.append(target)

    if pos is PartOfSpeech.VERB and not cur.exhausted:
        f_token = cur.take("f_cnt")
        try:
            f_cnt = int(f_token, 10)
        except ValueError:
            raise _LineError(f"bad frame count {f_token!r}") from None
        for _ in range(f_cnt):
            plus = cur.take("frame marker")
            if plus != "+":
                raise _LineError(f"expected '+' in frame list, got {plus!r}")
            cur.take("frame number")
            cur.take("frame word number")

    if not cur.exhausted:
        raise _LineError(f"unexpected trailing fields: {' '.join(cur.tokens[cur.pos:])}")

    definition, examples = split_gloss(gloss_text)
    try:
        return SourceSynset(
            id=SynsetId(pos, offset),
            lemmas=tuple(lemmas),
            gloss=definition,
            examples=examples,
            hypernyms=tuple(hypernyms),
            lex_file=lex_file,
        )
    except ValueError as exc:
        raise _LineError(str(exc)) from None


def parse_data_file(
    contents: str, pos: PartOfSpeech, filename: str = "<data>"
) -> tuple[list[SourceSynset], ParseReport]:
    """Parse one data file. Returns the synsets plus a report.

    ``pos`` is the category implied by the file name; adjective files may
    contain both plain adjectives and satellites.
    """
    report = ParseReport(files_read=[filename])
    synsets: list[SourceSynset] = []
    seen: set[SynsetId] = set()

    for line_no, line in enumerate(contents.splitlines(), 1):
        if line.startswith("  "):
            report.lines_skipped += 1
            if report.version is None:
                match = _VERSION_RE.search(line)
                if match:
                    report.version = match.group(1)
            continue
        if not line.strip():
            report.errors.append(ParseIssue(filename, line_no, "blank line"))
            continue
        try:
            synset = _parse_data_line(line, pos, filename, line_no)
        except _LineError as exc:
            report.errors.append(ParseIssue(filename, line_no, str(exc)))
            continue
        if synset.id in seen:
            report.errors.append(
                ParseIssue(filename, line_no, f"duplicate offset {synset.id.offset}")
            )
            continue
        seen.add(synset.id)
        synsets.append(synset)
        report.count(synset.id.pos)

    return synsets, report


def parse_index_file(
    contents: str, pos: PartOfSpeech, filename: str = "<index>"
) -> tuple[dict[str, list[SynsetId]], ParseReport]:
    """Parse an index file into a lemma -> synset ids map.

    Index lines are ``lemma pos synset_cnt p_cnt [symbols] sense_cnt
    tagsense_cnt offset...``; all ids take the file's part of speech, since
    index files do not distinguish satellites.
    """
    report = ParseReport(files_read=[filename])
    mapping: dict[str, list[SynsetId]] = {}

    for line_no, line in enumerate(contents.splitlines(), 1):
        if line.startswith("  "):
            report.lines_skipped += 1
            continue
        if not line.strip():
            report.errors.append(ParseIssue(filename, line_no, "blank line"))
            continue
        tokens = line.split()
        cur = _Cursor(tokens)
        try:
            lemma_raw = cur.take("lemma")
            letter = cur.take("pos")
            if PartOfSpeech.from_wndb(letter) is not pos:
                raise _LineError(f"pos letter {letter!r} does not belong in {filename}")
            cnt_token = cur.take("synset_cnt")
            try:
                synset_cnt = int(cnt_token, 10)
            except ValueError:
                raise _LineError(f"bad synset_cnt {cnt_token!r}") from None
            p_token = cur.take("p_cnt")
            try:
                p_cnt = int(p_token, 10)
            except ValueError:
                raise FatalFormatError(
                    f"{filename}:{line_no}: p_cnt {p_token!r} is not decimal"
                ) from None
            for _ in range(p_cnt):
                cur.take("pointer symbol")
            cur.take("sense_cnt")
            cur.take("tagsense_cnt")
            offsets = []
            for _ in range(synset_cnt):
                offset = cur.take("synset offset")
                if not _OFFSET_RE.match(offset):
                    raise _LineError(f"bad synset offset {offset!r}")
                offsets.append(offset)
            if not cur.exhausted:
                raise _LineError("unexpected trailing fields")
        except _LineError as exc:
            report.errors.append(ParseIssue(filename, line_no, str(exc)))
            continue
        except ValueError as exc:
            report.errors.append(ParseIssue(filename, line_no, str(exc)))
            continue

        lemma = lemma_raw.replace("_", " ")
        ids = mapping.setdefault(lemma, [])
        for offset in offsets:
            sid = SynsetId(pos, offset)
            if sid not in ids:
                ids.append(sid)

    return mapping, report


def load_source(directory: str | Path) -> tuple[dict[SynsetId, SourceSynset], ParseReport]:
    """Read every recognized data file in ``directory``.

    Returns the union of all parsed synsets keyed by id. Hypernym ids that do
    not resolve inside the union are tolerated and reported as warnings.
    """
    directory = Path(directory)
    report = ParseReport()
    synsets: dict[SynsetId, SourceSynset] = {}
    origin: dict[SynsetId, str] = {}

    found = False
    for name, pos in DATA_FILES.items():
        path = directory / name
        if not path.is_file():
            continue
        found = True
        parsed, file_report = parse_data_file(
            path.read_text(encoding="utf-8"), pos, filename=name
        )
        report.merge(file_report)
        for synset in parsed:
            synsets[synset.id] = synset
            origin[synset.id] = name

    if not found:
        raise NoInputFilesError(f"no data.<pos> files found in {directory}")

    for synset in synsets.values():
        for hid in synset.hypernyms:
            if hid not in synsets:
                report.warnings.append(
                    ParseIssue(
                        origin[synset.id],
                        0,
                        f"{synset.id} points at missing hypernym {hid}",
                    )
                )

    return synsets, report


def import_prior_translations(
    contents: str,
) -> tuple[list[TranslationRecord], ParseReport]:
    """Read a seven-column TSV of previously translated synsets.

    Columns: offset, pos, gap flag (0/1), synonyms (``;`` separated), gloss,
    examples (``;`` separated, matched to synonyms by position), phrases
    (``;`` separated). Rows become records in ``pending_correction`` so that
    the imported material enters the pipeline at the review stage. Rows may
    be incomplete (no gloss, no synonyms); the validation gates hold such
    records back until a corrector fills them in.
    """
    report = ParseReport(files_read=["<prior>"])
    records: list[TranslationRecord] = []
    seen: dict[SynsetId, int] = {}
    duplicates: list[SynsetId] = []

    for line_no, line in enumerate(contents.splitlines(), 1):
        if not line.strip():
            report.lines_skipped += 1
            continue
        columns = line.split("\t")
        if len(columns) != 7:
            report.errors.append(
                ParseIssue("<prior>", line_no, f"expected 7 columns, got {len(columns)}")
            )
            continue
        offset, pos_text, gap_text, synonyms_col, gloss, examples_col, phrases_col = columns
        try:
            if not _OFFSET_RE.match(offset.strip()):
                raise _LineError(f"bad synset offset {offset!r}")
            try:
                pos = PartOfSpeech.parse(pos_text)
            except ValueError as exc:
                raise _LineError(str(exc)) from None
            gap_text = gap_text.strip()
            if gap_text not in ("0", "1"):
                raise _LineError(f"gap flag must be 0 or 1, got {gap_text!r}")
            is_gap = gap_text == "1"

            lemmas = [normalize_lemma(s) for s in synonyms_col.split(";")]
            lemmas = [s for s in lemmas if s]
            examples = [e.strip() for e in examples_col.split(";")]
            examples = [e for e in examples if e]
            phrases = [normalize_lemma(p) for p in phrases_col.split(";")]
            phrases = tuple(p for p in phrases if p)

            if is_gap:
                if lemmas:
                    raise _LineError("gap row must not list synonyms")
                if not phrases:
                    raise _LineError("gap row needs at least one phrase")
                if examples:
                    report.warnings.append(
                        ParseIssue("<prior>", line_no, "examples ignored on gap row")
                    )
                synonyms: tuple[Synonym, ...] = ()
            else:
                per_lemma: list[list[str]] = [[] for _ in lemmas]
                for i, example in enumerate(examples):
                    if not per_lemma:
                        report.warnings.append(
                            ParseIssue(
                                "<prior>", line_no, "examples ignored: row has no synonyms"
                            )
                        )
                        break
                    slot = min(i, len(per_lemma) - 1)
                    per_lemma[slot].append(example)
                synonyms = tuple(
                    Synonym(lemma=lemma, rank=i + 1, examples=tuple(per_lemma[i]))
                    for i, lemma in enumerate(lemmas)
                )
        except _LineError as exc:
            report.errors.append(ParseIssue("<prior>", line_no, str(exc)))
            continue

        sid = SynsetId(pos, offset.strip())
        if sid in seen:
            if sid not in duplicates:
                duplicates.append(sid)
            continue
        seen[sid] = line_no
        records.append(
            TranslationRecord(
                source=sid,
                state=WorkflowState.PENDING_CORRECTION,
                is_gap=is_gap,
                phrases=phrases,
                synonyms=synonyms,
                gloss=gloss.strip(),
            )
        )

    if duplicates:
        raise DuplicateRecordError(duplicates)

    return records, report
