#!/usr/bin/env python3
"""Regenerate the bundled toy corpora under data/corpus/.

toy_200.csv mimics short social-media posts in three sentiment classes, with
retweet markers, mentions, hashtags, links and HTML entities so that every
cleaning step has something to do. separable.csv uses disjoint vocabularies
per class. Output is a pure function of SEED.
"""

import csv
import pathlib
import random

SEED = 20240611

SHARED = "the a is of my this that today just really so and it was with for on".split()
CLASS_WORDS = {
    "positive": "love great happy wonderful amazing enjoy best smiling excited grateful".split(),
    "neutral": "meeting schedule update report tuesday weather train office notice agenda".split(),
    "negative": "hate terrible awful angry broken worst sad disappointed annoying failure".split(),
}
NOISE = [
    "RT @{user}: ",
    "@{user} ",
    " #{tag}",
    " https://t.co/{code}",
    " &amp; ",
    " &quot;ok&quot; ",
    " 100%",
    "!!! ",
]


def toy_document(rng, label):
    words = []
    own = CLASS_WORDS[label]
    others = [w for k, v in CLASS_WORDS.items() if k != label for w in v]
    for _ in range(rng.randint(6, 14)):
        roll = rng.random()
        if roll < 0.28:
            words.append(rng.choice(own))
        elif roll < 0.48:
            words.append(rng.choice(others))
        else:
            words.append(rng.choice(SHARED))
    if rng.random() < 0.5:
        words[0] = words[0].capitalize()
    text = " ".join(words)
    for _ in range(rng.randint(0, 2)):
        snippet = rng.choice(NOISE).format(
            user="user%d" % rng.randint(1, 99),
            tag=rng.choice(own),
            code="".join(rng.choice("abcdefXYZ0123") for _ in range(8)),
        )
        if snippet.startswith(("RT", "@")):
            text = snippet + text
        else:
            text = text + snippet
    return text


def separable_document(rng, label):
    vocab = {"alpha": "red green blue cyan".split(), "beta": "cat dog fox owl".split()}[label]
    return " ".join(rng.choice(vocab) for _ in range(rng.randint(3, 6)))


def write(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["text", "label"])
        writer.writerows(rows)


def main():
    rng = random.Random(SEED)
    root = pathlib.Path(__file__).resolve().parent.parent / "data" / "corpus"
    labels = ["positive"] * 70 + ["neutral"] * 60 + ["negative"] * 70
    rng.shuffle(labels)
    write(root / "toy_200.csv", [(toy_document(rng, l), l) for l in labels])
    sep = ["alpha", "beta"] * 30
    write(root / "separable.csv", [(separable_document(rng, l), l) for l in sep])


if __name__ == "__main__":
    main()
