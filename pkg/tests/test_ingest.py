from __future__ import annotations

import sys

import pytest

from ase.errors import EmptyText, ExtractorFailed, NotFound
from ase.ingest import chunk_plain_text, chunk_text, ingest_pdf, ingest_text, make_document
from ase.store import Store


class TestIngestText:
    def test_single_sentence(self, tmp_path):
        store = Store(tmp_path / "store")
        doc = ingest_text("t", "Hello world.", store=store)
        assert len(doc.sentences) == 1
        assert store.get("documents", doc.document_id)["text"] == "Hello world."

    def test_whitespace_only(self):
        with pytest.raises(EmptyText):
            ingest_text("t", "   ")

    def test_three_sentences(self):
        doc = ingest_text("t", "A. B. C.")
        assert len(doc.sentences) == 3

    def test_line_endings_normalized(self):
        doc = make_document("t", "One line.\r\nAnother line.\rThird.")
        assert "\r" not in doc.text
        assert len(doc.sentences) == 3


class TestIngestPdf:
    @pytest.fixture
    def cat_extractor(self, tmp_path):
        script = tmp_path / "extract.py"
        script.write_text(
            "import sys\nsys.stdout.write(open(sys.argv[1], encoding='utf-8').read())\n",
            encoding="utf-8",
        )
        return f"{sys.executable} {script} {{input}}"

    def test_stub_extractor_passthrough(self, tmp_path, cat_extractor):
        pdf = tmp_path / "doc.pdf"
        pdf.write_text("Hello.", encoding="utf-8")
        doc = ingest_pdf("t", pdf, cat_extractor)
        assert doc.text == "Hello."
        assert doc.source == "pdf_extractor"

    def test_matches_ingest_text_of_extractor_output(self, tmp_path, cat_extractor):
        pdf = tmp_path / "doc.pdf"
        pdf.write_text("First point. Second point.", encoding="utf-8")
        via_pdf = ingest_pdf("t", pdf, cat_extractor)
        via_text = ingest_text("t", "First point. Second point.")
        assert via_pdf.text == via_text.text
        assert via_pdf.sentences == via_text.sentences

    def test_nonzero_exit(self, tmp_path):
        script = tmp_path / "fail.py"
        script.write_text(
            "import sys\nsys.stderr.write('boom')\nsys.exit(3)\n", encoding="utf-8"
        )
        pdf = tmp_path / "doc.pdf"
        pdf.write_text("x", encoding="utf-8")
        with pytest.raises(ExtractorFailed) as info:
            ingest_pdf("t", pdf, f"{sys.executable} {script} {{input}}")
        assert info.value.stderr == "boom"

    def test_empty_output(self, tmp_path):
        script = tmp_path / "empty.py"
        script.write_text("pass\n", encoding="utf-8")
        pdf = tmp_path / "doc.pdf"
        pdf.write_text("x", encoding="utf-8")
        with pytest.raises(ExtractorFailed):
            ingest_pdf("t", pdf, f"{sys.executable} {script} {{input}}")

    def test_missing_file(self, tmp_path, cat_extractor):
        with pytest.raises(NotFound):
            ingest_pdf("t", tmp_path / "missing.pdf", cat_extractor)

    def test_unconfigured_extractor(self, tmp_path):
        pdf = tmp_path / "doc.pdf"
        pdf.write_text("x", encoding="utf-8")
        with pytest.raises(ExtractorFailed):
            ingest_pdf("t", pdf, "")


class TestChunking:
    def test_single_short_sentence(self):
        doc = make_document("t", "Short sentence.")
        chunks = chunk_text(doc, 3000)
        assert len(chunks) == 1
        assert chunks[0].text == "Short sentence."

    def test_greedy_packing(self):
        # three 100-char sentences, limit 250: [s0, s1] then [s2]
        sentence = "w" * 99 + "."
        doc = make_document("t", " ".join([sentence] * 3))
        chunks = chunk_text(doc, 250)
        assert [(c.start_sentence, c.end_sentence) for c in chunks] == [(0, 2), (2, 3)]
        assert chunks[0].text == sentence + " " + sentence

    def test_oversized_sentence_is_own_chunk(self):
        doc = make_document("t", "x" * 4999 + ".")
        chunks = chunk_text(doc, 3000)
        assert len(chunks) == 1
        assert len(chunks[0].text) == 5000

    def test_rejects_tiny_limit(self):
        with pytest.raises(ValueError):
            chunk_plain_text("A b.", 100)

    def test_reconstruction_and_partition(self):
        sentence = ("word " * 21).strip() + "."  # 105 chars
        text = " ".join([sentence] * 4)
        doc = make_document("t", text)
        for limit in (200, 215, 230, 3000):
            chunks = chunk_text(doc, limit)
            assert " ".join(c.text for c in chunks) == " ".join(
                s.text for s in doc.sentences
            )
            # contiguous, ordered, non-overlapping sentence spans
            assert chunks[0].start_sentence == 0
            assert chunks[-1].end_sentence == len(doc.sentences)
            for left, right in zip(chunks, chunks[1:]):
                assert left.end_sentence == right.start_sentence
            assert [c.index for c in chunks] == list(range(len(chunks)))

    def test_deterministic(self):
        text = "Alpha beta. Gamma delta. Epsilon zeta."
        assert chunk_plain_text(text, 200) == chunk_plain_text(text, 200)
