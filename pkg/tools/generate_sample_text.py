#!/usr/bin/env python3
"""Regenerate tests/data/sample_play.txt.

The sample is an original monologue written for this repository (no
copyrighted text) and dedicated to the public domain. It is built to
exercise every analysis path: standalone ellipses as breath units, planted
verbatim refrains (motifs), three acts with distinct dominant vocabulary
(clusterable occurrence tracks), question/exclamation-heavy punctuation,
bracketed stage directions, no plain periods, and a closing dash.

Deterministic: a fixed seed always reproduces the committed file.
"""

from __future__ import annotations

import random
from pathlib import Path

SEED = 20260810
TARGET_TOKENS = 20000
OUT_PATH = Path(__file__).resolve().parent.parent / "tests" / "data" / "sample_play.txt"

ACT_THEMES = (
    ("buzzing", "time", "long", "skull", "morning", "field", "light", "april", "lark", "grass"),
    ("mouth", "sudden", "imagine", "brain", "flicker", "machine", "half", "stare", "lips", "beam"),
    ("oh", "what", "far", "mercy", "gone", "dark", "home", "pity", "godforsaken", "hole"),
)

COMMON = (
    "she", "it", "then", "there", "when", "who", "still", "away", "back", "down",
    "up", "little", "voice", "words", "nothing", "whole", "body", "head", "hand",
    "god", "love", "dead", "quiet", "scream", "silence", "tears", "stone", "cold",
    "strange", "alone", "lost", "wonder", "shadow", "tremble", "pain", "hush",
    "found", "herself", "speechless", "drifting", "straining", "hear", "begging",
    "stopped", "spared", "that", "all", "no", "part", "matter", "on", "so",
)

REFRAINS = (
    "whole body gone like a lamp blown out in the long grass",
    "new light every morning over the same grey field again",
    "before the words came the buzzing came and would not stop",
    "small steps over the frozen field and back to the door",
    "what was she to do with the hand lying open in her lap",
    "straining to hear the voice she could not place",
)

STAGE_DIRECTIONS = ("[pause]", "[screams]", "[silence]", "[laughs]", "[vehement]")

QUESTION_WORDS = ("what", "who", "when", "where", "why", "how")


def _fragment(rng: random.Random, theme: tuple[str, ...]) -> list[str]:
    n = rng.randint(3, 9)
    words = []
    for _ in range(n):
        pool = theme if rng.random() < 0.42 else COMMON
        words.append(rng.choice(pool))
    roll = rng.random()
    if roll < 0.22:
        words[-1] += "?"
    elif roll < 0.28:
        words[-1] += "!"
    return words


def _question_burst(rng: random.Random) -> list[str]:
    out = []
    for _ in range(rng.randint(1, 3)):
        out.append(rng.choice(QUESTION_WORDS) + "?")
        out.append("...")
    return out[:-1]


def build_text(rng: random.Random) -> str:
    tokens: list[str] = []
    per_act = TARGET_TOKENS // 3

    for act, theme in enumerate(ACT_THEMES):
        act_tokens: list[str] = []
        # refrains planted verbatim: two act-local, the rest global but sparse
        local = REFRAINS[2 * act % len(REFRAINS)]
        while len(act_tokens) < per_act:
            r = rng.random()
            if r < 0.035:
                act_tokens += local.split() + ["..."]
            elif r < 0.055:
                act_tokens += rng.choice(REFRAINS).split() + ["..."]
            elif r < 0.075:
                act_tokens += _question_burst(rng) + ["..."]
            elif r < 0.095:
                act_tokens.append(rng.choice(STAGE_DIRECTIONS))
            else:
                act_tokens += _fragment(rng, theme) + ["..."]
        tokens += act_tokens

    # occasional mid-text em-dash cutoffs
    for i in range(200, len(tokens), 977):
        if tokens[i] != "..." and not tokens[i].startswith("["):
            tokens[i] = tokens[i].rstrip("?!") + "—"

    # closing line: the text must end on a dash, never a period
    tokens += ["she", "could", "not", "stop", "the", "buzzing", "going", "on—"]

    lines = []
    line: list[str] = []
    for tok in tokens:
        line.append(tok)
        if len(line) >= 14:
            lines.append(" ".join(line))
            line = []
    if line:
        lines.append(" ".join(line))
    return "\n".join(lines) + "\n"


def main() -> None:
    rng = random.Random(SEED)
    text = build_text(rng)
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    OUT_PATH.write_text(text, encoding="utf-8")
    print(f"wrote {OUT_PATH} ({len(text.split())} whitespace tokens)")


if __name__ == "__main__":
    main()
