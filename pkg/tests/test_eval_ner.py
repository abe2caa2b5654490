import random

from matkb.categories import EntityCategory as C
from matkb.models import EntityMention
from matkb.tagger import eval_span_f1
from matkb.tagger.normalize import normalize_value


def _m(pid, start, end, category, surface="x"):
    return EntityMention(pid, start, end, category, surface, normalize_value(surface, category))


def test_identical_sets_score_one():
    gold = [_m("p#0", 0, 3, C.OPERATION), _m("p#1", 4, 9, C.DEVICE)]
    report = eval_span_f1(gold, gold)
    assert (report.overall.precision, report.overall.recall, report.overall.f1) == (1.0, 1.0, 1.0)


def test_disjoint_sets_score_zero():
    pred = [_m("p#0", 0, 3, C.OPERATION)]
    gold = [_m("p#0", 5, 8, C.OPERATION)]
    report = eval_span_f1(pred, gold)
    assert report.overall.f1 == 0.0


def test_empty_prediction():
    report = eval_span_f1([], [_m("p#0", 0, 3, C.VALUE)])
    assert report.overall.precision == 0.0
    assert report.overall.recall == 0.0
    assert report.overall.f1 == 0.0


def test_three_of_four_against_six():
    gold = [_m("p#0", i * 10, i * 10 + 3, C.OPERATION) for i in range(6)]
    pred = gold[:3] + [_m("p#0", 900, 903, C.OPERATION)]
    report = eval_span_f1(pred, gold)
    assert report.overall.precision == 0.75
    assert report.overall.recall == 0.5
    assert report.overall.f1 == 0.6


def test_category_must_match_exactly():
    gold = [_m("p#0", 0, 3, C.OPERATION)]
    pred = [_m("p#0", 0, 3, C.DEVICE)]
    assert eval_span_f1(pred, gold).overall.f1 == 0.0


def test_per_category_breakdown():
    gold = [_m("p#0", 0, 3, C.OPERATION), _m("p#0", 10, 13, C.DEVICE)]
    pred = [_m("p#0", 0, 3, C.OPERATION), _m("p#0", 50, 53, C.DEVICE)]
    report = eval_span_f1(pred, gold)
    assert report.per_category[C.OPERATION].f1 == 1.0
    assert report.per_category[C.DEVICE].f1 == 0.0
    assert C.BRAND not in report.per_category


def _random_mentions(rng, n):
    cats = list(C)
    out = []
    for _ in range(n):
        start = rng.randrange(0, 200)
        out.append(
            _m(f"p#{rng.randrange(6)}", start, start + rng.randrange(1, 9), cats[rng.randrange(len(cats))])
        )
    return out


def test_swap_symmetry_on_random_fixtures():
    rng = random.Random(99)
    for _ in range(1000):
        pred = _random_mentions(rng, rng.randrange(0, 12))
        gold = _random_mentions(rng, rng.randrange(0, 12))
        fwd = eval_span_f1(pred, gold)
        rev = eval_span_f1(gold, pred)
        assert fwd.overall.precision == rev.overall.recall
        assert fwd.overall.recall == rev.overall.precision
        assert abs(fwd.overall.f1 - rev.overall.f1) < 1e-12
