"""Free-group words, Fox calculus and presentations."""

import pytest

from knotselmer.errors import PresentationError
from knotselmer.words import (GroupRingElement, abelianization, fox_derivative, format_word,
                              parse_word, presentation_from_text, reduce_word, word_inverse,
                              word_mul)
from knots import fig8, k52


def fox_oracle(w, j):
    """Fox derivative from the recursive rules d(uv) = du + u dv, d(g^-1) = -g^-1."""
    if not w:
        return GroupRingElement()
    if len(w) == 1:
        x = w[0]
        if x == j:
            return GroupRingElement.one()
        if x == -j:
            return GroupRingElement.word((-j,), -1)
        return GroupRingElement()
    mid = len(w) // 2
    u, v = w[:mid], w[mid:]
    return fox_oracle(u, j) + GroupRingElement.word(u) * fox_oracle(v, j)


def test_reduce_word():
    assert reduce_word((1, 2, -2, -1, 1)) == (1,)
    assert word_mul((1, 2), (-2, -1)) == ()
    assert word_inverse((1, -2)) == (2, -1)


def test_fox_examples():
    assert fox_derivative((1,), 1) == GroupRingElement.one()
    assert fox_derivative((-1,), 1) == GroupRingElement.word((-1,), -1)
    # d(g1 g2 g1^-1)/d g1 = 1 - g1 g2 g1^-1
    e = fox_derivative((1, 2, -1), 1)
    assert e == GroupRingElement.one() - GroupRingElement.word((1, 2, -1))
    assert fox_derivative((1, 2, -1), 2) == GroupRingElement.word((1,))


@pytest.mark.parametrize("P", [fig8(), k52()], ids=["fig8", "k52"])
def test_fox_matches_recursive_oracle(P):
    words = list(P.relators) + [P.longitude, P.meridian]
    for w in words:
        for j in (1, 2):
            assert fox_derivative(w, j) == fox_oracle(w, j)


def _fundamental(w, n):
    acc = GroupRingElement()
    for j in range(1, n + 1):
        acc = acc + fox_derivative(w, j) * (GroupRingElement.word((j,)) - GroupRingElement.one())
    return acc


@pytest.mark.parametrize("P", [fig8(), k52()], ids=["fig8", "k52"])
def test_fundamental_identity(P):
    for w in list(P.relators) + [P.longitude]:
        assert _fundamental(w, 2) == GroupRingElement.word(w) - GroupRingElement.one()


def test_augmentation_of_relator_derivative_is_exponent_sum():
    P = fig8()
    r = P.relators[0]
    for j in (1, 2):
        assert fox_derivative(r, j).augmentation() == sum(1 if x == j else -1 for x in r if abs(x) == j)


def test_abelianization():
    assert abelianization((1, 2, -1)) == 1
    assert abelianization(fig8().longitude) == 0
    assert abelianization(k52().longitude) == 0


def test_parse_and_format_words():
    names = ["g1", "g2"]
    w = parse_word("g2 g1^-1 g2^-1 g1^2", names)
    assert w == (2, -1, -2, 1, 1)
    assert format_word(w, names) == "g2 g1^-1 g2^-1 g1^2"
    assert parse_word("1", names) == ()
    with pytest.raises(PresentationError):
        parse_word("g3", names)


def test_presentations_validate():
    assert fig8().validate() == []
    assert k52().validate() == []


def test_validate_reports_problems():
    P = presentation_from_text(["a", "b"], ["a a b"], "a", "a")
    problems = P.validate()
    assert any("exponent sum" in p for p in problems)
    assert any("longitude" in p for p in problems)
    with pytest.raises(PresentationError):
        P.check()
    Q = presentation_from_text(["a", "b"], ["a b a^-1 b^-1", "a b^-1"])
    assert any("expected 1 relators" in p for p in Q.validate())
