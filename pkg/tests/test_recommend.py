import random

import pytest

from chemvis.errors import InvalidWeights, UnknownDocument
from chemvis.ingestion import ingest_document
from chemvis.recommend import (
    AlignmentRow,
    SimilarityWeights,
    align_entities,
    entity_similarity,
    recommend,
    shade_for,
    text_similarity,
)

from oracle import brute_force_rank

FILLER = (
    "synthesis reaction catalyst spectrum analysis temperature sample results "
    "method study crystal solution experiment yield phase gradient column"
).split()

COMPOUNDS = (
    "water methanol benzene toluene glucose sucrose morphine aspirin caffeine "
    "urea glycerol phenol hexane styrene aniline pyridine"
).split()


def build_corpus(store, resolver, rng: random.Random, n_docs: int) -> list[str]:
    ids = []
    for i in range(n_docs):
        words = []
        for _ in range(rng.randint(1, 5)):
            words.extend([rng.choice(COMPOUNDS)] * rng.randint(1, 3))
        words.extend(rng.choices(FILLER, k=rng.randint(3, 10)))
        rng.shuffle(words)
        payload = f"Report {i}: " + " ".join(words) + "."
        ids.append(ingest_document(store, payload.encode(), "plaintext", resolver=resolver))
    return ids


class TestWeights:
    def test_normalized_at_construction(self):
        weights = SimilarityWeights(2, 2)
        assert weights.w_entity == 0.5 and weights.w_text == 0.5
        assert weights.w_entity + weights.w_text == 1.0

    def test_rescaling_preserves_blend(self):
        assert SimilarityWeights(1, 3) == SimilarityWeights(2, 6)

    @pytest.mark.parametrize("we, wt", [(0, 0), (-1, 2), (1, -0.5)])
    def test_rejects_bad_weights(self, we, wt):
        with pytest.raises(InvalidWeights):
            SimilarityWeights(we, wt)


class TestEntitySimilarity:
    def test_identical_vectors(self):
        vector = {"cid:1": 3, "cid:2": 5}
        assert entity_similarity(vector, dict(vector)) == 1.0

    def test_disjoint_vectors(self):
        assert entity_similarity({"cid:1": 2}, {"cid:2": 2}) == 0.0

    def test_both_empty_is_zero_by_convention(self):
        assert entity_similarity({}, {}) == 0.0

    def test_comparison_view_vectors(self):
        a = {"cid:10340": 1, "cid:24083": 1, "cid:962": 1}
        b = {"cid:10340": 1, "cid:24083": 1, "cid:887": 1}
        assert entity_similarity(a, b) == pytest.approx(2 / 3, abs=1e-9)

    def test_symmetry_and_bounds(self):
        rng = random.Random(3)
        for _ in range(200):
            a = {f"cid:{rng.randint(1, 9)}": rng.randint(1, 9) for _ in range(rng.randint(0, 5))}
            b = {f"cid:{rng.randint(1, 9)}": rng.randint(1, 9) for _ in range(rng.randint(0, 5))}
            sim_ab, sim_ba = entity_similarity(a, b), entity_similarity(b, a)
            assert sim_ab == sim_ba
            assert 0.0 <= sim_ab <= 1.0

    def test_scalar_multiple_scores_one(self):
        a = {"cid:1": 1, "cid:2": 2}
        b = {"cid:1": 3, "cid:2": 6}
        assert entity_similarity(a, b) == 1.0


class TestTextSimilarity:
    def test_document_with_itself(self):
        counts = {"alpha": 2, "beta": 1}
        assert text_similarity(counts, dict(counts), (3, {"alpha": 1, "beta": 1})) == 1.0

    def test_no_shared_terms(self):
        assert text_similarity({"alpha": 1}, {"beta": 1}, (2, {"alpha": 1, "beta": 1})) == 0.0

    def test_toy_corpus_matches_hand_computation(self):
        # Three documents: "alpha beta", "alpha gamma", "delta"; the shared
        # term has df=2. Expected value computed independently by hand.
        stats = (3, {"alpha": 2, "beta": 1, "gamma": 1, "delta": 1})
        value = text_similarity({"alpha": 1, "beta": 1}, {"alpha": 1, "gamma": 1}, stats)
        assert value == pytest.approx(0.366446816266513, abs=1e-12)


class TestRecommend:
    def test_single_document_corpus(self, store, resolver):
        doc_id = ingest_document(store, b"water only", "plaintext", resolver=resolver)
        assert recommend(store, doc_id, 5, SimilarityWeights(1, 1)) == []

    def test_unknown_document(self, store):
        with pytest.raises(UnknownDocument):
            recommend(store, "missing", 3, SimilarityWeights(1, 1))

    def test_k_zero(self, store, resolver):
        ids = [
            ingest_document(store, f"water {i}".encode(), "plaintext", resolver=resolver)
            for i in range(2)
        ]
        assert recommend(store, ids[0], 0, SimilarityWeights(1, 1)) == []

    def test_entity_dominance(self, store, resolver):
        input_id = ingest_document(store, b"water and methanol", "plaintext", resolver=resolver)
        sharing = ingest_document(store, b"water with methanol", "plaintext", resolver=resolver)
        disjoint = ingest_document(store, b"benzene alone", "plaintext", resolver=resolver)
        ranked = recommend(store, input_id, 2, SimilarityWeights(1, 0))
        assert [r.candidate_id for r in ranked] == sorted(
            [sharing, disjoint], key=lambda d: d != sharing
        )
        assert ranked[0].entity_component == 1.0
        assert ranked[1].entity_component == 0.0

    def test_score_is_exact_blend_of_components(self, store, resolver):
        build_corpus(store, resolver, random.Random(11), 6)
        ids = store.document_ids()
        weights = SimilarityWeights(0.3, 0.7)
        for rec in recommend(store, ids[0], 5, weights):
            assert rec.score == weights.w_entity * rec.entity_component + weights.w_text * rec.text_component

    @pytest.mark.parametrize("weights", [(1, 0), (0, 1), (0.5, 0.5)])
    def test_matches_brute_force_oracle(self, store, resolver, weights):
        build_corpus(store, resolver, random.Random(42), 20)
        ids = store.document_ids()
        for input_id in ids[:5]:
            ranked = recommend(store, input_id, 5, SimilarityWeights(*weights))
            expected = brute_force_rank(store, input_id, 5, *weights)
            assert [r.candidate_id for r in ranked] == [e[0] for e in expected]
            for rec, exp in zip(ranked, expected):
                assert rec.score == pytest.approx(exp[1], abs=1e-12)

    def test_ranking_invariant_under_weight_rescaling(self, store, resolver):
        build_corpus(store, resolver, random.Random(5), 12)
        ids = store.document_ids()
        for scale in (0.25, 3, 40):
            base = recommend(store, ids[0], 12, SimilarityWeights(0.4, 0.6))
            scaled = recommend(store, ids[0], 12, SimilarityWeights(0.4 * scale, 0.6 * scale))
            assert [r.candidate_id for r in base] == [r.candidate_id for r in scaled]

    def test_monotonicity_of_new_shared_entity(self, tmp_path, resolver):
        # With w_entity=1 and a uniform input vector, giving a candidate an
        # occurrence of an input entity it lacked never lowers its rank
        # relative to untouched candidates.
        from chemvis.ingestion import CorpusStore

        rng = random.Random(99)
        for trial in range(5):
            base = "water methanol benzene glucose"
            store = CorpusStore(tmp_path / f"mono{trial}")
            input_id = ingest_document(store, base.encode(), "plaintext", resolver=resolver)
            candidate_texts = []
            for i in range(6):
                pool = [c for c in COMPOUNDS if c not in base.split()] + base.split()
                words = rng.sample(pool, rng.randint(1, 4))
                candidate_texts.append(" ".join(words))
            before_ids = [
                ingest_document(store, t.encode(), "plaintext", resolver=resolver)
                for t in candidate_texts
            ]
            target = before_ids[0]
            missing = next(
                (c for c in base.split() if c not in candidate_texts[0].split()), None
            )
            if missing is None:
                continue
            ranked_before = recommend(store, input_id, 10, SimilarityWeights(1, 0))
            rank_before = [r.candidate_id for r in ranked_before].index(target)

            upgraded = CorpusStore(tmp_path / f"mono{trial}b")
            input2 = ingest_document(upgraded, base.encode(), "plaintext", resolver=resolver)
            new_ids = []
            for i, text in enumerate(candidate_texts):
                body = f"{text} {missing}" if i == 0 else text
                new_ids.append(
                    ingest_document(upgraded, body.encode(), "plaintext", resolver=resolver)
                )
            ranked_after = recommend(upgraded, input2, 10, SimilarityWeights(1, 0))
            # compare position against each unchanged candidate rather than raw
            # index, since ids (and hence tie-breaks) differ between stores
            score_before = next(r.score for r in ranked_before if r.candidate_id == target)
            score_after = next(r.score for r in ranked_after if r.candidate_id == new_ids[0])
            assert score_after >= score_before - 1e-12


class TestShade:
    def test_unmatched_is_zero(self):
        assert shade_for(0, 5) == 0
        assert shade_for(5, 0) == 0

    def test_clamped_min_frequency(self):
        assert shade_for(5, 4) == 3
        assert shade_for(1, 1) == 1
        assert shade_for(2, 9) == 2
        assert shade_for(3, 3) == 3

    def test_monotone_in_min_frequency(self):
        last = 0
        for f in range(1, 8):
            level = shade_for(f, f)
            assert level >= last
            last = level


class TestAlignment:
    def fig3_pair(self, store, resolver):
        input_id = ingest_document(
            store, "Na₂CO₃ and MgSO₄ dissolved in H₂O.".encode(), "plaintext", resolver=resolver
        )
        candidate_id = ingest_document(
            store, "Na₂CO₃ and MgSO₄ dissolved in CH₄O.".encode(), "plaintext", resolver=resolver
        )
        return input_id, candidate_id

    def test_comparison_view_fixture(self, store, resolver):
        input_id, candidate_id = self.fig3_pair(store, resolver)
        rows = align_entities(store, input_id, candidate_id, resolver)
        matched = [r for r in rows if r.matched]
        assert {r.entity.cid for r in matched} == {10340, 24083}
        unmatched = [r for r in rows if not r.matched]
        assert {r.entity.cid for r in unmatched} == {962, 887}
        assert all(r.shade == 0 for r in unmatched)
        water = next(r for r in unmatched if r.entity.cid == 962)
        methanol = next(r for r in unmatched if r.entity.cid == 887)
        assert water.freq_input == 1 and water.freq_candidate == 0
        assert methanol.freq_input == 0 and methanol.freq_candidate == 1
        # matched rows come first; input-only before candidate-only
        assert rows[0].matched and rows[1].matched
        assert rows[2].entity.cid == 962 and rows[3].entity.cid == 887
        vector_a = store.entity_vector(input_id)
        vector_b = store.entity_vector(candidate_id)
        assert entity_similarity(vector_a, vector_b) == pytest.approx(2 / 3, abs=1e-9)

    def test_self_alignment(self, store, resolver):
        input_id, _ = self.fig3_pair(store, resolver)
        rows = align_entities(store, input_id, input_id, resolver)
        assert all(r.matched and r.freq_input == r.freq_candidate for r in rows)

    def test_shades_from_frequencies(self, store, resolver):
        input_id = ingest_document(
            store,
            b"water water water water water methanol",
            "plaintext",
            resolver=resolver,
        )
        candidate_id = ingest_document(
            store, b"water water water water methanol", "plaintext", resolver=resolver
        )
        rows = align_entities(store, input_id, candidate_id, resolver)
        shades = {r.entity.cid: r.shade for r in rows}
        assert shades == {962: 3, 887: 1}
        # deeper shades sort first among matched rows
        assert [r.entity.cid for r in rows] == [962, 887]

    def test_totality_every_occurrence_in_exactly_one_row(self, store, resolver):
        build = random.Random(1)
        ids = build_corpus(store, resolver, build, 6)
        rows = align_entities(store, ids[0], ids[1], resolver)
        keys = [r.entity.key.as_string() for r in rows]
        assert len(keys) == len(set(keys))
        union = set(store.entity_vector(ids[0])) | set(store.entity_vector(ids[1]))
        assert set(keys) == union
        matched_keys = {k for k in keys if k in store.entity_vector(ids[0]) and k in store.entity_vector(ids[1])}
        assert matched_keys == set(store.entity_vector(ids[0])) & set(store.entity_vector(ids[1]))

    def test_unknown_document(self, store, resolver):
        with pytest.raises(UnknownDocument):
            align_entities(store, "a", "b", resolver)

    def test_unresolved_entity_retained_in_rows(self, store, resolver):
        input_id = ingest_document(
            store, b"W2Pt3 alloy in water", "plaintext", resolver=resolver
        )
        candidate_id = ingest_document(store, b"plain water", "plaintext", resolver=resolver)
        rows = align_entities(store, input_id, candidate_id, resolver)
        unresolved = [r for r in rows if r.entity.status == "unresolved"]
        assert len(unresolved) == 1
        assert unresolved[0].entity.key.tier == "formula"
        assert unresolved[0].entity.formula == "Pt3W2"
