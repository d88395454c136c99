"""Corpus index tests: build, query vs brute-force oracle, upsert."""

from __future__ import annotations

import math

import numpy as np
import pytest

from slidegrid.descriptor import EmptyLayoutError, embed
from slidegrid.heatmap import EmptyCorpusError
from slidegrid.index import (
    DuplicateIdError,
    EmptyQueryError,
    build_index,
    build_index_from_features,
    query,
    upsert,
)
from slidegrid.layout import SlideLayout

from conftest import make_layout, random_corpus, random_layout


def brute_force_top_k(corpus, draft, k, g):
    """Oracle: python-loop fsum scoring plus a full stable sort."""
    q = embed(draft, g).values
    scored = []
    for layout in corpus:
        if not layout.elements:
            continue
        v = embed(layout, g).values
        score = math.fsum(float(a) * float(b) for a, b in zip(q, v))
        scored.append((layout.id, min(max(score, 0.0), 1.0)))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored[:k]


class TestBuildIndex:
    def test_counts_and_order(self):
        corpus = random_corpus(3, seed=1)
        index = build_index(corpus, g=8)
        assert len(index) == 3 and index.skipped == 0
        assert [e.id for e in index.entries] == sorted(e.id for e in index.entries)
        assert index.revision == 1

    def test_zero_element_layouts_skipped(self):
        corpus = random_corpus(2, seed=1) + [SlideLayout(id="hollow")]
        index = build_index(corpus, g=8)
        assert len(index) == 2 and index.skipped == 1

    def test_duplicate_id_rejected(self):
        corpus = [
            make_layout("s1", ("title", 0.0, 0.0, 1.0, 0.2)),
            make_layout("s1", ("text", 0.0, 0.5, 1.0, 0.2)),
        ]
        with pytest.raises(DuplicateIdError) as err:
            build_index(corpus)
        assert err.value.layout_id == "s1"

    def test_vectors_are_unit_norm(self):
        index = build_index(random_corpus(5, seed=9), g=8)
        norms = np.linalg.norm(index.matrix, axis=1)
        assert np.allclose(norms, 1.0, atol=1e-9)


class TestQuery:
    def test_self_retrieval(self):
        corpus = random_corpus(10, seed=4)
        index = build_index(corpus, g=16)
        for layout in corpus:
            result = query(index, layout, k=3)
            assert result.results[0].id == layout.id
            assert result.results[0].score == pytest.approx(1.0, abs=1e-9)

    def test_partial_draft_finds_superset_layout(self):
        target = make_layout(
            "target", ("title", 0.0, 0.0, 0.5, 0.25), ("text", 0.0, 0.5, 0.5, 0.25)
        )
        # Every other layout lives in disjoint cells and a disjoint category.
        others = [
            make_layout(f"other{i}", ("figure", 0.5, 0.5, 0.5, 0.5)) for i in range(3)
        ]
        index = build_index([target] + others, g=4)
        draft = make_layout("draft", ("title", 0.0, 0.0, 0.5, 0.25))
        result = query(index, draft, k=4)
        assert result.results[0].id == "target"
        assert result.results[0].score > 0.0
        assert all(hit.score == 0.0 for hit in result.results[1:])

    def test_matches_brute_force_oracle(self):
        corpus = random_corpus(100, seed=7)
        index = build_index(corpus, g=8)
        rng = np.random.default_rng(99)
        for i in range(20):
            draft = random_layout(rng, f"draft{i}")
            for k in (1, 5, 10):
                expected = brute_force_top_k(corpus, draft, k, g=8)
                got = [(hit.id, hit.score) for hit in query(index, draft, k).results]
                assert [pair[0] for pair in got] == [pair[0] for pair in expected]
                for (_, score), (_, oracle_score) in zip(got, expected):
                    assert score == pytest.approx(oracle_score, abs=1e-9)

    def test_matches_brute_force_oracle_at_thousand_entries(self):
        corpus = random_corpus(1000, seed=41)
        index = build_index(corpus, g=8)
        rng = np.random.default_rng(6)
        for i in range(5):
            draft = random_layout(rng, f"draft{i}")
            for k in (1, 5, 10):
                expected = brute_force_top_k(corpus, draft, k, g=8)
                got = [(hit.id, hit.score) for hit in query(index, draft, k).results]
                assert [pair[0] for pair in got] == [pair[0] for pair in expected]
                for (_, score), (_, oracle_score) in zip(got, expected):
                    assert score == pytest.approx(oracle_score, abs=1e-9)

    def test_result_shape_and_order(self):
        corpus = random_corpus(20, seed=3)
        index = build_index(corpus, g=8)
        result = query(index, corpus[0], k=50)
        assert len(result.results) == 20  # min(k, corpus size)
        scores = [hit.score for hit in result.results]
        assert scores == sorted(scores, reverse=True)
        assert result.revision == index.revision

    def test_ties_break_by_ascending_id(self):
        # Identical layouts guarantee exact score ties.
        box = ("title", 0.25, 0.25, 0.5, 0.5)
        corpus = [make_layout(i, box) for i in ("zz", "aa", "mm")]
        index = build_index(corpus, g=4)
        result = query(index, make_layout("draft", box), k=3)
        assert [hit.id for hit in result.results] == ["aa", "mm", "zz"]

    def test_different_drafts_retrieve_different_slides(self):
        # A diverse corpus separates dissimilar queries.
        index = build_index(random_corpus(200, seed=18), g=16)
        top_title = query(index, make_layout("a", ("title", 0.0, 0.0, 0.9, 0.12)), k=1)
        top_figure = query(index, make_layout("b", ("figure", 0.3, 0.45, 0.6, 0.5)), k=1)
        assert top_title.results[0].id != top_figure.results[0].id

    def test_empty_draft_rejected(self):
        index = build_index(random_corpus(3, seed=1), g=8)
        with pytest.raises(EmptyQueryError):
            query(index, SlideLayout(id="draft"), k=1)

    def test_empty_index_rejected(self):
        index = build_index([], g=8)
        with pytest.raises(EmptyCorpusError):
            query(index, make_layout("draft", ("title", 0.0, 0.0, 1.0, 1.0)), k=1)

    def test_invalid_k_rejected(self):
        index = build_index(random_corpus(3, seed=1), g=8)
        with pytest.raises(ValueError, match="k must be"):
            query(index, make_layout("d", ("title", 0.0, 0.0, 1.0, 1.0)), k=0)


class TestUpsert:
    def test_append_increments_revision(self):
        index = build_index(random_corpus(3, seed=8), g=8)
        grown = upsert(index, random_layout(np.random.default_rng(1), "new"))
        assert len(grown) == 4
        assert grown.revision == index.revision + 1
        assert len(index) == 3  # original snapshot untouched

    def test_replace_reembeds_same_id(self):
        corpus = random_corpus(3, seed=8)
        index = build_index(corpus, g=8)
        changed = make_layout(corpus[0].id, ("figure", 0.1, 0.1, 0.8, 0.8))
        replaced = upsert(index, changed)
        assert len(replaced) == 3
        result = query(replaced, changed, k=1)
        assert result.results[0].id == corpus[0].id
        assert result.results[0].score == pytest.approx(1.0, abs=1e-9)

    def test_query_after_upsert_self_retrieves(self):
        index = build_index(random_corpus(5, seed=2), g=8)
        novel = make_layout("novel", ("text", 0.3, 0.4, 0.3, 0.2))
        result = query(upsert(index, novel), novel, k=1)
        assert result.results[0].id == "novel"
        assert result.results[0].score == pytest.approx(1.0, abs=1e-9)

    def test_empty_layout_rejected(self):
        index = build_index(random_corpus(2, seed=2), g=8)
        with pytest.raises(EmptyLayoutError):
            upsert(index, SlideLayout(id="hollow"))


class TestFeatureImport:
    def test_round_trip_matches_native_index(self):
        corpus = random_corpus(6, seed=12)
        native = build_index(corpus, g=8)
        features = [(e.id, e.vector.values) for e in native.entries]
        imported = build_index_from_features(
            features, g=8, layouts={l.id: l for l in corpus}
        )
        draft = random_layout(np.random.default_rng(5), "draft")
        native_hits = query(native, draft, 5).results
        imported_hits = query(imported, draft, 5).results
        # Defensive re-normalization on import may move scores by an ulp.
        assert [h.id for h in native_hits] == [h.id for h in imported_hits]
        for a, b in zip(native_hits, imported_hits):
            assert a.score == pytest.approx(b.score, abs=1e-12)

    def test_zero_vectors_skipped(self):
        index = build_index_from_features(
            [("a", np.zeros(3 * 4 * 4)), ("b", np.ones(3 * 4 * 4))], g=4
        )
        assert len(index) == 1 and index.skipped == 1
