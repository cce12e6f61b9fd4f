import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from gdwm.datagen import MAX_EDITS, QUALITY_RATES, CorpusSpec, corrupt_fields, generate_corpus, inject_errors, \
    make_template, write_corpus
from gdwm.ingest import normalize_and_tokenize
from gdwm.matching import levenshtein


def _template(seed=0):
    rng = random.Random(seed)
    return make_template(rng, [("SALEM", "NC", ["27106"])])


def test_empty_corpus():
    assert generate_corpus(CorpusSpec(0)) == ([], [])


def test_same_seed_same_bytes(tmp_path):
    spec = CorpusSpec(30, 2.5, "geometric", "poor", "mixed", seed=4)
    write_corpus(spec, tmp_path / "r1", tmp_path / "t1")
    write_corpus(spec, tmp_path / "r2", tmp_path / "t2")
    assert (tmp_path / "r1").read_bytes() == (tmp_path / "r2").read_bytes()
    assert (tmp_path / "t1").read_bytes() == (tmp_path / "t2").read_bytes()


def test_good_pair_close_and_linked():
    records, truth = generate_corpus(CorpusSpec(1, 2, quality="good", seed=0))
    assert len(records) == 2
    assert truth[0][1] == truth[1][1]
    (_, b1), (_, b2) = records
    t1, t2 = normalize_and_tokenize(b1), normalize_and_tokenize(b2)
    # each copy differs from the template in at most MAX_EDITS["good"] fields
    assert len(set(t1) ^ set(t2)) <= 4 * MAX_EDITS["good"]


def test_zero_rate_is_identity():
    t = _template()
    body = inject_errors(t, "poor", random.Random(1), rate=0.0)
    assert body == " ".join(v for v in t.values() if v)


def test_ssn_join():
    rng = random.Random(0)
    fields = {"ssn": "456 18 2098"}
    seen = {corrupt_fields(fields, 1.0, 1, rng)[0]["ssn"] for _ in range(60)}
    assert "456182098" in seen


def test_substitution_class_edit_distance_one():
    rng = random.Random(3)
    fields = {"first": "ANDREW"}
    variants = {corrupt_fields(fields, 1.0, 1, rng)[0]["first"] for _ in range(200)}
    near = [v for v in variants if v and len(v) > 1]
    assert near and all(levenshtein(v, "ANDREW") <= 2 for v in near)
    assert any(levenshtein(v, "ANDREW") == 1 for v in near)
    assert "A" in variants  # truncation to initial


@settings(max_examples=50)
@given(st.integers(0, 10_000), st.sampled_from(sorted(QUALITY_RATES)))
def test_edit_budget_per_tier(seed, quality):
    t = _template(seed)
    out, edits = corrupt_fields(t, QUALITY_RATES[quality], MAX_EDITS[quality], random.Random(seed))
    changed = sum(out[k] != t[k] for k in t)
    assert changed == edits <= MAX_EDITS[quality]


def test_truth_covers_every_record_once():
    records, truth = generate_corpus(CorpusSpec(50, 3, "geometric", "moderate", seed=8))
    assert [r for r, _ in records] == [r for r, _ in truth]
    assert len(set(r for r, _ in records)) == len(records)
    assert all("," not in r for r, _ in records)


def test_fixed_dup_count():
    records, truth = generate_corpus(CorpusSpec(25, 4, seed=1))
    assert len(records) == 100
    assert set(Counter(t for _, t in truth).values()) == {4}


def test_mixed_layout_reorders_fields():
    t = _template(5)
    bodies = {inject_errors(t, "good", random.Random(s), layout="mixed", rate=0.0) for s in range(20)}
    assert len(bodies) > 1
    assert all(sorted(b.split()) == sorted(next(iter(bodies)).split()) for b in bodies)


def test_households_share_address():
    records, truth = generate_corpus(CorpusSpec(40, 1, error_rate=0.0, household_rate=1.0, seed=0))
    # every entity after the first moved in with an earlier one, so all share one phone
    phones = {tuple(normalize_and_tokenize(b)[-3:]) for _, b in records}
    assert len(phones) == 1
    assert len(set(truth)) == 40


def test_spec_validation():
    with pytest.raises(ValueError):
        CorpusSpec(5, quality="awful")
    with pytest.raises(ValueError):
        CorpusSpec(5, dup_mean=0.5)
