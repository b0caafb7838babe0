"""Interchange TSV and lexical-markup XML exports."""

import xml.etree.ElementTree as ET

from lexibridge.export import to_lmf, to_tsv
from lexibridge.model import Synonym
from lexibridge.wndb import import_prior_translations
from support import CAR_GLOSS, make_record


def car_record(id="noun:02958343"):
    return make_record(
        id=id,
        synonyms=(
            Synonym("سيارة", 1, ("اشتريت سيارة جديدة",)),
            Synonym("مركبة", 2, ("هذه مركبة سريعة",)),
        ),
        gloss=CAR_GLOSS,
        revision=1,
    )


def gap_record(id="adverb:00319534"):
    return make_record(id=id, is_gap=True, phrases=("بشكل معبر",), revision=1)


class TestTsvExport:
    def test_column_layout(self):
        line = to_tsv([car_record()]).rstrip("\n")
        columns = line.split("\t")
        assert columns == [
            "02958343",
            "noun",
            "0",
            "سيارة;مركبة",
            CAR_GLOSS,
            "اشتريت سيارة جديدة;هذه مركبة سريعة",
            "",
        ]

    def test_gap_row(self):
        columns = to_tsv([gap_record()]).rstrip("\n").split("\t")
        assert columns == ["00319534", "adverb", "1", "", "", "", "بشكل معبر"]

    def test_rows_sorted_by_pos_then_offset(self):
        records = [
            car_record("verb:00000002"),
            car_record("noun:00000009"),
            car_record("noun:00000001"),
        ]
        firsts = [line.split("\t")[:2] for line in to_tsv(records).splitlines()]
        assert firsts == [["00000001", "noun"], ["00000009", "noun"], ["00000002", "verb"]]

    def test_synonyms_and_examples_follow_rank_order(self):
        record = make_record(
            synonyms=(
                Synonym("مركبة", 2, ("مثال مركبة",)),
                Synonym("سيارة", 1, ("مثال سيارة",)),
            ),
            gloss=CAR_GLOSS,
        )
        columns = to_tsv([record]).rstrip("\n").split("\t")
        assert columns[3] == "سيارة;مركبة"
        assert columns[5] == "مثال سيارة;مثال مركبة"

    def test_empty_input_is_empty_output(self):
        assert to_tsv([]) == ""

    def test_round_trip_through_prior_import(self):
        # One example per synonym (the last may hold several): positional
        # re-assignment reproduces the original grouping exactly.
        records = [car_record(), gap_record()]
        reimported, report = import_prior_translations(to_tsv(records))
        assert report.errors == []
        by_id = {r.source: r for r in reimported}
        for original in records:
            back = by_id[original.source]
            assert back.is_gap == original.is_gap
            assert back.phrases == original.phrases
            assert back.gloss == original.gloss
            assert back.synonyms == original.synonyms

    def test_flattening_loses_grouping_but_not_content(self):
        # Two examples on the first of two synonyms: the flat column cannot
        # say which synonym owned which example, so re-import shifts them,
        # but every example survives.
        record = make_record(
            synonyms=(
                Synonym("سيارة", 1, ("أول مثال", "ثاني مثال")),
                Synonym("مركبة", 2, ("ثالث مثال",)),
            ),
            gloss=CAR_GLOSS,
        )
        reimported, _ = import_prior_translations(to_tsv([record]))
        flat = [e for s in reimported[0].synonyms for e in s.examples]
        assert flat == ["أول مثال", "ثاني مثال", "ثالث مثال"]


class TestLmfExport:
    def parse(self, records, **kwargs):
        return ET.fromstring(to_lmf(records, **kwargs))

    def test_document_shape(self):
        root = self.parse([car_record()], language="arb")
        assert root.tag == "LexicalResource"
        lexicon = root.find("Lexicon")
        assert lexicon is not None
        assert lexicon.get("language") == "arb"
        assert lexicon.get("id") == "lexibridge-target"

    def test_one_entry_per_distinct_lemma_and_pos(self):
        # The same written form in two noun records makes one entry with two
        # senses; the same form under another part of speech is a new entry.
        records = [
            car_record("noun:00000001"),
            car_record("noun:00000002"),
            car_record("verb:00000003"),
        ]
        root = self.parse(records)
        entries = root.findall("Lexicon/LexicalEntry")
        by_form = {}
        for entry in entries:
            lemma = entry.find("Lemma")
            key = (lemma.get("writtenForm"), lemma.get("partOfSpeech"))
            by_form[key] = len(entry.findall("Sense"))
        assert by_form == {
            ("سيارة", "n"): 2,
            ("مركبة", "n"): 2,
            ("سيارة", "v"): 1,
            ("مركبة", "v"): 1,
        }

    def test_senses_point_at_their_synset(self):
        root = self.parse([car_record()])
        sense = root.find("Lexicon/LexicalEntry/Sense")
        assert sense.get("synset") == "noun-02958343"
        synset = root.find("Lexicon/Synset")
        assert synset.get("id") == "noun-02958343"

    def test_members_follow_rank_order(self):
        root = self.parse([car_record()])
        synset = root.find("Lexicon/Synset")
        members = synset.get("members").split()
        entries = {
            entry.get("id"): entry.find("Lemma").get("writtenForm")
            for entry in root.findall("Lexicon/LexicalEntry")
        }
        assert [entries[m] for m in members] == ["سيارة", "مركبة"]

    def test_examples_nested_under_sense(self):
        root = self.parse([car_record()])
        examples = [e.text for e in root.findall("Lexicon/LexicalEntry/Sense/Example")]
        assert examples == ["اشتريت سيارة جديدة", "هذه مركبة سريعة"]

    def test_definition_present_when_gloss_nonempty(self):
        root = self.parse([car_record()])
        assert root.find("Lexicon/Synset/Definition").text == CAR_GLOSS

    def test_gap_synset_not_lexicalized_and_phrases_become_entries(self):
        root = self.parse([gap_record()])
        synset = root.find("Lexicon/Synset")
        assert synset.get("lexicalized") == "false"
        assert root.find("Lexicon/Synset/Definition") is None
        lemma = root.find("Lexicon/LexicalEntry/Lemma")
        assert lemma.get("writtenForm") == "بشكل معبر"
        assert lemma.get("partOfSpeech") == "r"

    def test_ordinary_synset_lexicalized(self):
        root = self.parse([car_record()])
        assert root.find("Lexicon/Synset").get("lexicalized") == "true"

    def test_declaration_and_well_formedness(self):
        text = to_lmf([car_record(), gap_record()])
        assert text.startswith("<?xml")
        ET.fromstring(text)  # parses cleanly
