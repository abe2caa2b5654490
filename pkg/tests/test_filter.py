from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from matkb.filtering import (
    FilterDecision,
    FilterRuleSet,
    Strategy,
    apply_filter,
    eval_recall,
    filter_corpus,
    load_rules,
)
from matkb.models import Paragraph


def _p(text, pid="P#0"):
    return Paragraph(paragraph_id=pid, article_id=pid.split("#")[0], text=text)


def oracle_keep(text: str, rules: FilterRuleSet) -> bool:
    """Naive reference: lowercase everything, test each phrase by substring."""
    low = text.lower()
    if any(phrase.lower() in low for phrase in rules.strategy1_phrases):
        return True
    if any(gate.lower() in low for gate in rules.strategy2_gate_terms):
        return any(phrase.lower() in low for phrase in rules.strategy2_phrases)
    return False


def test_rule_set_shape(rules):
    # The compact alternation notation expands to 20 secondary phrases and
    # both case variants of the "samples were"/"sample was" leads.
    assert len(rules.strategy2_phrases) == 20
    assert len(set(rules.strategy2_phrases)) == 20
    verbs = {"synthesized", "prepared", "used", "obtained", "achieved"}
    expected = {
        f"{aux} {lead}{verb}"
        for aux in ("were", "was")
        for lead in ("", "first ")
        for verb in verbs
    }
    assert set(rules.strategy2_phrases) == expected
    assert "polycrystalline samples were" in rules.strategy1_phrases
    assert "Polycrystalline samples were" in rules.strategy1_phrases
    assert rules.strategy2_gate_terms == ("polycrystalline", "Polycrystalline")


def test_s1_example(rules):
    d = apply_filter(_p("The powder samples were prepared by solid-state reaction."), rules)
    assert d.kept
    assert d.matched_strategy is Strategy.S1
    assert d.matched_phrases == ("powder samples were prepared",)


def test_s2_example(rules):
    d = apply_filter(_p("Polycrystalline FeSe was synthesized from elemental precursors."), rules)
    assert d.kept
    assert d.matched_strategy is Strategy.S2
    assert d.matched_phrases == ("was synthesized",)


def test_empty_paragraph_not_kept(rules):
    d = apply_filter(_p(""), rules)
    assert not d.kept
    assert d.matched_strategy is Strategy.NONE
    assert d.matched_phrases == ()


def test_negative_example_verified_by_oracle(rules):
    text = "We measured resistivity of the single crystal."
    assert not oracle_keep(text, rules)
    assert not apply_filter(_p(text), rules).kept


def test_s1_has_priority_when_both_fire(rules):
    text = "Polycrystalline samples were prepared and the powders were obtained."
    d = apply_filter(_p(text), rules)
    assert d.matched_strategy is Strategy.S1
    # every matching phrase is listed, from both strategies
    assert "powders were obtained" in d.matched_phrases
    assert "were prepared" in d.matched_phrases


def test_filter_corpus_order_preserved(rules):
    corpus = [
        _p("nothing relevant here", "A#0"),
        _p("the powder samples were prepared overnight", "A#1"),
        _p("also nothing", "A#2"),
    ]
    decisions = filter_corpus(corpus, rules)
    assert [d.paragraph_id for d in decisions] == ["A#0", "A#1", "A#2"]
    assert [d.kept for d in decisions] == [False, True, False]


def test_filter_corpus_empty(rules):
    assert filter_corpus([], rules) == []


def test_filter_corpus_all_match(rules):
    corpus = [_p("powders were obtained easily", f"A#{i}") for i in range(3)]
    assert all(d.kept for d in filter_corpus(corpus, rules))


def test_eval_recall_paper_ratio():
    decisions = [FilterDecision(f"p{i}", i < 230, Strategy.S1 if i < 230 else Strategy.NONE,
                                ("x",) if i < 230 else ()) for i in range(290)]
    report = eval_recall(decisions, {f"p{i}" for i in range(290)})
    assert report.recall == Fraction(230, 290)
    assert report.to_dict()["recall_percent"] == "79.3%"
    assert report.to_dict()["recall_decimal"] == 0.7931


def test_eval_recall_bounds():
    kept = [FilterDecision("a", True, Strategy.S1, ("x",))]
    assert eval_recall(kept, {"a"}).recall == 1
    missed = [FilterDecision("a", False, Strategy.NONE, ())]
    assert eval_recall(missed, {"a"}).recall == 0


def test_eval_recall_empty_gold_is_error():
    with pytest.raises(ValueError):
        eval_recall([], set())


@st.composite
def _random_paragraph(draw):
    rules = load_rules()
    all_phrases = rules.strategy1_phrases + rules.strategy2_phrases + ("polycrystalline",)
    words = draw(st.lists(st.sampled_from(
        "the sample was annealed overnight and measured again under field cool".split()
    ), max_size=12))
    injected = draw(st.lists(st.sampled_from(all_phrases), max_size=3))
    pieces = words + [
        p.upper() if draw(st.booleans()) else (p.capitalize() if draw(st.booleans()) else p)
        for p in injected
    ]
    draw(st.randoms(use_true_random=False)).shuffle(pieces)
    return " ".join(pieces)


@settings(max_examples=300, deadline=None)
@given(_random_paragraph())
def test_oracle_equivalence(text):
    rules = load_rules()
    assert apply_filter(_p(text), rules).kept == oracle_keep(text, rules)


def test_monotonicity_adding_phrase_never_unkeeps(rules):
    base_texts = [
        "powder samples were prepared at dawn",
        "polycrystalline bars were obtained from the melt",
        "nothing to see in this paragraph",
        "the polycrystalline sample was achieved finally",
    ]
    grown = FilterRuleSet(
        strategy1_phrases=rules.strategy1_phrases + ("from the melt",),
        strategy2_gate_terms=rules.strategy2_gate_terms,
        strategy2_phrases=rules.strategy2_phrases + ("bars were",),
    )
    for text in base_texts:
        before = apply_filter(_p(text), rules)
        after = apply_filter(_p(text), grown)
        if before.kept:
            assert after.kept


def test_s2_never_shadows_s1(rules):
    s1_only = FilterRuleSet(
        strategy1_phrases=rules.strategy1_phrases,
        strategy2_gate_terms=rules.strategy2_gate_terms,
        strategy2_phrases=("zz-never-present",),
    )
    texts = [
        "powder samples were prepared in air",
        "Polycrystalline ingots appeared",
        "polycrystalline things were used here",
    ]
    for text in texts:
        if apply_filter(_p(text), s1_only).kept:
            assert apply_filter(_p(text), rules).matched_strategy is Strategy.S1
