"""Smoke test for the senticite extension module.

Run with `python crates/python/python/smoke_test.py` or through pytest after
`pip install --no-build-isolation crates/python`.
"""

import json
import pathlib
import xml.dom.minidom

import senticite

SAMPLE = pathlib.Path(__file__).resolve().parents[2] / "core" / "data" / "sample" / "sample.txt"


def test_model_train_predict_round_trip():
    model = senticite.Model.train("sentiment", "svm", seed=7)
    assert model.task == "sentiment"
    assert model.labels == ["positive", "neutral", "negative"]
    label, scores = model.predict("However, the method of [3] fails badly on long inputs.")
    assert label in model.labels
    assert max(scores, key=lambda s: s[1])[0] == label
    clone = senticite.Model.from_json(model.to_json())
    assert clone.to_json() == model.to_json()
    assert clone.predict("We use the corpus of [2].") == model.predict("We use the corpus of [2].")


def test_perceptron_and_inline_corpus():
    jsonl = senticite.bundled_corpus_jsonl("nature")
    model = senticite.Model.train("nature", "paum", jsonl=jsonl, margins=(0.5, 0.0))
    assert model.algorithm == "paum"
    assert "usage" in model.labels


def test_fusion_and_metrics():
    assert senticite.fuse("neutral", "neutral") == "neutral"
    assert senticite.fuse("positive", "neutral") in ("positive", "neutral")
    report = json.loads(senticite.evaluate(["positive", "negative", "neutral"], ["positive", "neutral", "neutral"]))
    assert abs(report["micro_f1"] - 2 / 3) < 1e-12


def test_citation_sentences():
    lines = senticite.citation_sentences(SAMPLE.read_text(), "sample").splitlines()
    assert len(lines) == 14
    assert all(json.loads(line)["markers"] for line in lines)


def test_analyzer_report():
    analyzer = senticite.Analyzer(seed=42)
    text = SAMPLE.read_text()
    analysis = json.loads(analyzer.analyze(text, "sample"))
    assert len(analysis["references"]) == 10
    html = analyzer.report_html(text, "sample")
    assert html == analyzer.report_html(text, "sample")
    xml.dom.minidom.parseString(html)
    assert "mentions" in analyzer.summary(text, "sample")


def test_errors():
    for call in (
        lambda: senticite.Model.train("mood"),
        lambda: senticite.Model.train("sentiment", epochs=0),
        lambda: senticite.fuse("positive", "bogus"),
    ):
        try:
            call()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        senticite.Model.from_json("{}")
    except senticite.SenticiteError:
        pass
    else:
        raise AssertionError("expected SenticiteError")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok  {name}")
