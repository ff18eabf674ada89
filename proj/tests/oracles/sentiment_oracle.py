#!/usr/bin/env python3
# Copyright 2026 The tgtriage Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Freezes sentiment goldens from the vaderSentiment 3.3.2 package.

The package rounds its outputs; rounding is disabled here so the goldens
carry full precision. Phrases where the package's "but" handling (which
looks sentiments up by value) differs from plain positional reweighting are
written to a separate list.

    pip install vaderSentiment==3.3.2
    python3 tests/oracles/sentiment_oracle.py > tests/fixtures/sentiment_goldens.json
"""

import json
import random
import sys

import vaderSentiment.vaderSentiment as vs

vs.round = lambda x, n=None: x  # shadow the builtin inside the module

MESSAGE_1 = (
    "I Killmilk, represented by the organizer of the hacker group Killnet, "
    "officially take full responsibility for causing particularly serious "
    "damage to the network infrastructure of the Bulgarian corrupt "
    "government. And I declare this officially! Chief Prosecutor of the "
    "Republic of Bulgaria Ivan Geshev Fuck you!")
MESSAGE_2_ASCII = (
    "South Africa was a victim of apartheid for decades. We don't want any "
    "nations experience it again. This time Israel is committing genocide "
    "against Palestinians. We are doing our best to stop Israel and Free "
    "Palestine. We tried to sue against Israel in International court, and "
    "now be keep on our try in cyber court...Long live the South Africa, "
    "long live the Palestine")
MESSAGE_2 = MESSAGE_2_ASCII.replace("don't", "don’t")

HAND = [
    "good", "GOOD day", "not good", "very good!!!", "good but bad",
    "kind of good", "Is it good???? ", "The book was kind of good.",
    "I hate it", "no problem", "not bad at all", "nope", " :) ",
    "The food is sort of okay", "without doubt, good", "at least it is good",
    "She is the shit", "never so good", "Hate!!!!",
    "the chair is near the table", "", "   ", "VERY GOOD", "very GOOD food",
    "least good", "very least good", "no good or bad", "not, good",
    "they aren't happy", "this is so nice", "yeah right, great",
    "a kiss of death for them", "I would die for this cake",
    "the bus stop was empty", "isn't it great??", "great!! great!!",
    "été good café", "Good GOOD good", "hardly good",
    "rarely bad", "it was not at all bad", "no doubt it's good",
    "glad but alright", "we care but agreed",
    MESSAGE_1, MESSAGE_2, MESSAGE_2_ASCII,
]

LEX = ["good", "bad", "great", "hate", "love", "happy", "sad", "nice",
       "terrible", "awesome", "damage", "serious", "corrupt", "free",
       "victim", "best", "killed", "attack", "win", "problem", "fun",
       "angry", "fear", "hope", "war", "peace", "kill", "trust", "lol", "die",
       "doubt", "okay", "wonderful", "worst", "responsibility", "support"]
NEUTRAL = ["the", "a", "it", "was", "we", "they", "food", "network",
           "government", "day", "and", "of", "at", "to", "or", "nor", "that"]
BOOST = ["very", "extremely", "slightly", "barely", "so", "totally",
         "kind of", "sort of", "kinda", "more", "most", "least", "no"]
NEG = ["not", "never", "isn't", "don't", "without", "nothing", "cannot"]
IDIOM = ["the shit", "the bomb", "yeah right", "kiss of death", "bad ass",
         "to die for", "beating heart"]
PUNCT = ["", "", "", "!", "!!", "?", "??", "???", "????", ".", ",", "...",
         "!?"]


def random_phrase(rng):
    words = []
    for _ in range(rng.randint(1, 10)):
        r = rng.random()
        if r < 0.35:
            w = rng.choice(LEX)
        elif r < 0.6:
            w = rng.choice(NEUTRAL)
        elif r < 0.75:
            w = rng.choice(BOOST)
        elif r < 0.88:
            w = rng.choice(NEG)
        elif r < 0.93:
            w = rng.choice(IDIOM)
        else:
            w = "but"
        if rng.random() < 0.12:
            w = w.upper()
        words.append(w + rng.choice(PUNCT))
    return " ".join(words)


def positional_but(words, sentiments):
    lower = [w.lower() for w in words]
    if "but" not in lower:
        return sentiments
    bi = lower.index("but")
    return [s * 0.5 if k < bi else s * 1.5 if k > bi else s
            for k, s in enumerate(sentiments)]


def main():
    analyzer = vs.SentimentIntensityAnalyzer()
    reference_but = analyzer._but_check
    rng = random.Random(20240607)
    phrases = list(HAND)
    seen = set(phrases)
    while len(phrases) < len(HAND) + 400:
        p = random_phrase(rng)
        if p not in seen:
            seen.add(p)
            phrases.append(p)

    goldens, divergent = [], []
    for text in phrases:
        analyzer._but_check = positional_but
        s = analyzer.polarity_scores(text)
        analyzer._but_check = reference_but
        ref = analyzer.polarity_scores(text)
        entry = {"text": text, "compound": s["compound"], "neg": s["neg"],
                 "neu": s["neu"], "pos": s["pos"]}
        if ref == s:
            goldens.append(entry)
        else:
            entry["reference_compound"] = ref["compound"]
            divergent.append(entry)

    json.dump({"generator": "vaderSentiment 3.3.2, rounding disabled",
               "goldens": goldens, "but_divergent": divergent},
              sys.stdout, indent=1, ensure_ascii=False)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
