"""Exports of the target lexicon: interchange TSV and minimal lexical-markup XML.

The TSV mirrors the prior-translation import format column for column, so a
project can be round-tripped through it (workflow state and history are not
part of the interchange format; the project file covers those). The XML
export produces one lexical entry per distinct lemma, senses keyed by
part of speech plus offset, and one synset element per record with its
definition and per-sense examples. Gap synsets are emitted with
``lexicalized="false"`` and their substitute phrases become entries, since
the phrases are the usable target-language material.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections.abc import Iterable, Mapping

from lexibridge.model import (
    PartOfSpeech,
    SourceSynset,
    SynsetId,
    TranslationRecord,
)


def to_tsv(records: Iterable[TranslationRecord]) -> str:
    """Serialize records to the seven-column interchange format.

    Examples are flattened in synonym rank order; the per-synonym grouping
    is a project-file concern, not an interchange one.
    """
    lines = []
    for record in sorted(records, key=lambda r: (r.source.pos.value, r.source.offset)):
        ordered = sorted(record.synonyms, key=lambda s: s.rank)
        synonyms = ";".join(s.lemma for s in ordered)
        examples = ";".join(e for s in ordered for e in s.examples)
        phrases = ";".join(record.phrases)
        lines.append(
            "\t".join(
                (
                    record.source.offset,
                    record.source.pos.value,
                    "1" if record.is_gap else "0",
                    synonyms,
                    record.gloss,
                    examples,
                    phrases,
                )
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def _synset_xml_id(sid: SynsetId) -> str:
    return f"{sid.pos.value}-{sid.offset}"


def to_lmf(
    records: Iterable[TranslationRecord],
    sources: Mapping[SynsetId, SourceSynset] | None = None,
    language: str = "und",
    lexicon_id: str = "lexibridge-target",
) -> str:
    """Serialize records to a minimal lexical-markup XML document."""
    del sources  # the export covers the target side only
    root = ET.Element("LexicalResource")
    lexicon = ET.SubElement(
        root,
        "Lexicon",
        {"id": lexicon_id, "language": language, "version": "1"},
    )

    ordered_records = sorted(
        records, key=lambda r: (r.source.pos.value, r.source.offset)
    )

    # One entry per distinct written form and part of speech.
    entries: dict[tuple[str, PartOfSpeech], ET.Element] = {}
    entry_ids: dict[tuple[str, PartOfSpeech], str] = {}

    def entry_for(written: str, pos: PartOfSpeech) -> tuple[str, ET.Element]:
        key = (written, pos)
        if key not in entries:
            entry_id = f"w{len(entries) + 1}"
            element = ET.SubElement(lexicon, "LexicalEntry", {"id": entry_id})
            ET.SubElement(
                element,
                "Lemma",
                {"writtenForm": written, "partOfSpeech": pos.wndb_letter},
            )
            entries[key] = element
            entry_ids[key] = entry_id
        return entry_ids[key], entries[key]

    synset_elements: list[ET.Element] = []
    for record in ordered_records:
        sid = record.source
        xml_id = _synset_xml_id(sid)
        members: list[str] = []

        if record.is_gap:
            for phrase in record.phrases:
                entry_id, element = entry_for(phrase, sid.pos)
                members.append(entry_id)
                ET.SubElement(
                    element, "Sense", {"id": f"{entry_id}-{xml_id}", "synset": xml_id}
                )
        else:
            for synonym in sorted(record.synonyms, key=lambda s: s.rank):
                entry_id, element = entry_for(synonym.lemma, sid.pos)
                members.append(entry_id)
                sense = ET.SubElement(
                    element, "Sense", {"id": f"{entry_id}-{xml_id}", "synset": xml_id}
                )
                for example in synonym.examples:
                    ET.SubElement(sense, "Example").text = example

        synset = ET.Element(
            "Synset",
            {
                "id": xml_id,
                "partOfSpeech": sid.pos.wndb_letter,
                "lexicalized": "false" if record.is_gap else "true",
                "members": " ".join(members),
            },
        )
        if record.gloss.strip():
            ET.SubElement(synset, "Definition").text = record.gloss
        synset_elements.append(synset)

    for element in synset_elements:
        lexicon.append(element)

    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"
