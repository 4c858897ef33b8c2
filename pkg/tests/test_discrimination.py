import itertools
import json

import pytest

from clocked.discrimination import (
    SKELETON_STANDARD, RedexClass, Simplicity, acceleration_check, check_simple, classify_redex,
    discriminate, globally_improves, normalized_subterms, simplifying_reduct,
)
from clocked.errors import NotARedex
from clocked.syntax import parse
from clocked.terms import Var, alpha_eq, app
from clocked.trees import levy_longo_tree, same_skeleton
from clocked.zoo import CONSTANTS, I, OMEGA, Y0, Y1, bohm_y, fixed_point_combinators, y_vec

f, x = Var("f"), Var("x")
DEPTHS = [3, 5, 7]


def P(src):
    return parse(src, CONSTANTS)


@pytest.mark.parametrize("src,kind", [
    (r"(\x. f (x x)) (\x. f (x x))", RedexClass.CALL_BY_VALUE),
    (r"(\x. x) (I I)", RedexClass.LINEAR),
    (r"(\x. x x) (I I)", RedexClass.NEITHER),
    (r"(\x. x) y", RedexClass.BOTH),
    (r"(\x. y) Omega", RedexClass.LINEAR),
    (r"(\x. x x) (# y)", RedexClass.CALL_BY_VALUE),
])
def test_classify_redex(src, kind):
    assert classify_redex(P(src)) is kind
    assert kind.simple is (kind is not RedexClass.NEITHER)


def test_classify_rejects_non_redex():
    with pytest.raises(NotARedex):
        classify_redex(P("x y"))


@pytest.mark.parametrize("n", range(1, 5))
def test_bohm_sequence_is_simple(n):
    assert check_simple(app(bohm_y(n), x), 5, 500).status is Simplicity.SIMPLE


def test_simplicity_reports():
    assert check_simple(app(Y0, f), 5, 500).status is Simplicity.SIMPLE
    r = check_simple(P(r"(\x. x x) (I I)"), 3, 100)
    assert r.status is Simplicity.NOT_SIMPLE and r.witness_path == () and r.witness_step == 0
    assert str(r).startswith("notSimple @ ε (head step 0:")
    assert check_simple(OMEGA, 3, 100).status is Simplicity.SIMPLE
    unknown = check_simple(P(r"(\x. x x x) (\x. x x x)"), 3, 10)
    assert unknown.status is Simplicity.UNKNOWN and unknown.unknown_paths == ((),)


def test_curry_vector_is_not_simple_as_written():
    r = check_simple(y_vec((0,)), 5, 1000)
    assert r.status is Simplicity.NOT_SIMPLE and r.witness_path == ()


def test_simplicity_json():
    data = check_simple(P(r"(\x. x x) (I I)"), 3, 100).to_json()
    assert data["status"] == "notSimple" and data["witnessPath"] == "ε"
    json.dumps(data)


def test_global_improvement():
    assert globally_improves(app(Y1, f), app(Y0, f), 6, 200).holds
    assert globally_improves(app(Y0, f), app(Y0, f), 6, 200).holds
    assert globally_improves(app(Y0, f), app(Y1, f), 6, 200).status == "fails"


def test_acceleration_examples():
    assert acceleration_check(app(Y0, f), 1, 5, 200).holds
    assert acceleration_check(app(bohm_y(2), x), 3, 5, 500).holds
    normal = acceleration_check(P(r"\x. x y"), 3, 4, 50)
    assert normal.holds and normal.trace.steps == []


@pytest.mark.parametrize("strategy", ["leftmost-outermost", "rightmost-innermost"])
@pytest.mark.parametrize("steps", [1, 2, 3])
def test_acceleration_on_reducts_of_identities(strategy, steps):
    assert acceleration_check(P("I I (I I) x"), steps, 3, 100, strategy).holds


# -- discriminate -----------------------------------------------------------

def test_bohm_two_and_three():
    v = discriminate(app(bohm_y(2), x), app(bohm_y(3), x), DEPTHS, 500)
    assert v.not_convertible
    assert v.evidence.mismatch_counts == [3, 5, 7]


def test_curry_and_turing():
    v = discriminate(app(Y0, x), app(Y1, x), DEPTHS, 500)
    assert v.not_convertible and v.evidence.mismatch_counts == [2, 4, 6]


def test_identical_terms_inconclusive():
    v = discriminate(app(Y1, x), app(Y1, x), DEPTHS, 500)
    assert v.kind == "Inconclusive"
    assert v.reason == "trees eventually match: 0 mismatches"


def test_skeleton_difference():
    v = discriminate(I, x, DEPTHS, 100)
    assert v.not_convertible and v.evidence.standard == SKELETON_STANDARD
    assert v.evidence.skeleton_path == ()


def test_unknown_simplicity_is_inconclusive():
    v = discriminate(P(r"(\x. x x x) (\x. x x x)"), x, DEPTHS, 10)
    assert v.kind == "Inconclusive" and "unknown" in v.reason


def test_non_simple_terms_are_inconclusive():
    # both sides need more than normalising the argument to become simple
    m = P(r"(\x. x x) (\y. y y y)")
    n = P(r"(\x. x x x) (\y. y y)")
    v = discriminate(m, n, DEPTHS, 50)
    assert v.kind == "Inconclusive"


def test_depths_validated():
    with pytest.raises(ValueError):
        discriminate(x, x, [3, 5], 10)
    with pytest.raises(ValueError):
        discriminate(x, x, [3, 3, 5], 10)


def test_verdict_rendering_and_json():
    v = discriminate(app(bohm_y(1), x), app(bohm_y(2), x), DEPTHS, 500)
    text = v.render()
    assert text.splitlines()[0].startswith("NotConvertible: mismatch counts [3, 5, 7]")
    data = v.to_json()
    assert data["verdict"] == "NotConvertible"
    assert data["mismatchCounts"] == [3, 5, 7]
    assert data["simplicity"]["m"]["status"] == "simple"
    json.dumps(data, ensure_ascii=False)


def test_identical_render_says_none():
    text = discriminate(I, I, DEPTHS, 10).render()
    assert "mismatching nodes (deepest): none" in text


# -- simplifying reducts ----------------------------------------------------

def test_normalized_subterms():
    t = P(r"f (I x) (\y. I y)")
    assert normalized_subterms(t) == P(r"f x (\y. y)")
    assert alpha_eq(normalized_subterms(OMEGA), OMEGA)


@pytest.mark.parametrize("ns", [(0,), (1,), (0, 0)])
def test_curry_vectors_have_simple_reducts(ns):
    t = app(y_vec(ns), x)
    found = simplifying_reduct(t, 7, 1000)
    assert found is not None
    reduct, report = found
    assert report.status is Simplicity.SIMPLE
    assert not alpha_eq(reduct, t)
    assert same_skeleton(levy_longo_tree(reduct, 6, 1000), levy_longo_tree(t, 6, 1000))


def test_atomic_vectors_separate():
    terms = [app(y_vec(ns), x) for ns in [(0,), (1,), (0, 0)]]
    for a, b in itertools.combinations(terms, 2):
        v = discriminate(a, b, DEPTHS, 1000, "atomic")
        assert v.not_convertible
        assert v.evidence.reduct_m is not None and v.evidence.reduct_n is not None


def test_self_comparison_never_separates():
    for y in fixed_point_combinators().values():
        assert not discriminate(app(y, x), app(y, x), DEPTHS, 1000).not_convertible
