import os
import random
import subprocess

import pytest

import partsrl

FIGURE = (
    "Output\tNN\tB-NP\t0\tARG1\t\n"
    "in\tIN\tB-PP\t1\t\t\n"
    "August\tNNP\tB-NP\t2\t\t\n"
    "rose\tVBD\tO\t3\tSUP\t\n"
    "5\tCD\tB-NP\t4\t\t\n"
    "percent\tNN\tI-NP\t5\tPRED\tQUANT\n"
    ".\t.\tO\t6\t\t\n"
)

ROSE_TREE = "(S (NP (DT The) (NN price)) (VP (VBD rose) (NP (CD five) (NN percent))))"
ROSE_CONLL = (
    "The\tDT\tB-NP\t0\t\t\n"
    "price\tNN\tI-NP\t1\tARG1\t\n"
    "rose\tVBD\tO\t2\tSUP\t\n"
    "five\tCD\tB-NP\t3\t\t\n"
    "percent\tNN\tI-NP\t4\tPRED\tQUANT\n"
)


def test_conll_round_trip():
    sentences = partsrl.parse_conll(FIGURE)
    assert len(sentences) == 1
    assert len(sentences[0]) == 7
    assert sentences[0].words()[0] == "Output"
    assert partsrl.write_conll(sentences) == FIGURE
    inst = partsrl.extract_instance(sentences[0])
    assert inst.predicate_index == 5
    assert inst.arg1_index == 0
    assert list(inst.support_indices) == [3]


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError):
        partsrl.parse_conll("a\tNN\tB-NP\t0\tPRED\n")
    with pytest.raises(partsrl.Error):
        partsrl.parse_tree_string("(S (NP x)")


def test_tree_helpers():
    assert partsrl.parse_tree_string(ROSE_TREE) == ROSE_TREE
    up, down, arrows = partsrl.tree_path(ROSE_TREE, 2, 1)
    assert arrows == "↑VP↑S↓NP"
    assert list(up) == ["VP", "S"]
    assert list(down) == ["NP"]
    sentence = partsrl.parse_conll(ROSE_CONLL)[0]
    assert list(partsrl.type2_path_flags(ROSE_TREE, sentence, 1)) == [True, False, False]


def test_chunk_path_and_ngrams():
    pie = partsrl.parse_conll(
        "20\tCD\tB-NP\t0\t\t\n%\tNN\tI-NP\t1\tPRED\tQUANT\nof\tIN\tB-PP\t2\t\t\n"
        "the\tDT\tB-NP\t3\t\t\npie\tNN\tI-NP\t4\tARG1\t\n"
    )[0]
    assert partsrl.collapse_bio_path(pie, 1, 4) == "right_NP_PP_of_NP_NOUN"
    words = "The consumer price index rose five percent .".split()
    text = "".join(
        f"{w}\tNN\tO\t{i}\t{'PRED' if i == 6 else ''}\t\n" for i, w in enumerate(words)
    )
    grams = partsrl.candidate_ngrams(partsrl.parse_conll(text)[0], 3)
    assert [" ".join(g) for g in grams] == [
        "consumer price index",
        "price index",
        "index",
        "index rose",
        "index rose five",
    ]


def test_eval_and_scores():
    assert abs(partsrl.f1(83.33, 51.72) - 63.83) <= 0.02
    sentences = partsrl.parse_conll(FIGURE)
    scores = {(0, i): (0.9 if i == 0 else 0.1) for i in range(7)}
    result = partsrl.prf(scores, sentences, "argmax")
    assert result["tp"] == 1 and result["fp"] == 0 and result["fn"] == 0
    text = partsrl.write_scores(scores)
    assert text.startswith("sentence_id\ttoken_index\tscore\n")
    assert partsrl.read_scores(text) == scores
    w_a, w_b = partsrl.fit_weights(scores, scores, sentences)
    assert w_a == 1.0 and w_b == 0.0
    rng = random.Random(3)
    other = {k: rng.random() for k in scores}
    mixed = partsrl.combine(scores, other, 0.5)
    for k in scores:
        assert min(scores[k], other[k]) <= mixed[k] <= max(scores[k], other[k])


def test_train_score_and_serialize():
    conll, trees = partsrl.synth(120, 5)
    dev_conll, dev_trees = partsrl.synth(30, 6)
    system = partsrl.System.train(conll, trees, rounds=20)
    assert system.rounds >= 1
    scores = system.score(dev_conll, dev_trees)
    gold = partsrl.parse_conll(dev_conll)
    assert len(scores) == sum(len(s) for s in gold)
    assert partsrl.prf(scores, gold, "argmax")["f1"] >= 90.0
    back = partsrl.System.from_json(system.to_json())
    assert back.score(dev_conll, dev_trees) == scores
    imp = system.importances()
    assert abs(sum(v for _, v in imp) - 1.0) < 1e-9
    feats = system.features(dev_conll, dev_trees, 0)
    assert len(feats) == len(gold[0])
    with pytest.raises(ValueError):
        system.score(dev_conll)


@pytest.mark.skipif("PARTSRL_CLI" not in os.environ, reason="command-line tool not given")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["PARTSRL_CLI"]
    assert subprocess.run([cli, "--version"], capture_output=True).returncode == 0
    missing = subprocess.run([cli, "validate", "--conll", str(tmp_path / "nope")],
                             capture_output=True)
    assert missing.returncode == 2
    bad = tmp_path / "bad.conll"
    bad.write_text("a\tNN\tB-NP\t0\tPRED\n")
    assert subprocess.run([cli, "validate", "--conll", str(bad)],
                          capture_output=True).returncode == 1
