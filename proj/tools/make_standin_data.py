#!/usr/bin/env python3
# Copyright 2026 The revjudge Authors.
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
"""Writes the bundled stand-in corpora.

argrewrite_standin.jsonl: 940 sentence revisions about electronic
communication, 7 raw Better/NotBetter votes each. The vote histogram is
fixed so majority counts and Fleiss kappa match the published corpus
statistics. Revision operations lean toward the majority label with a
probability that shrinks with the vote margin.

aesw_standin.sgml: proofreading edits on scientific sentences in inline
<ins>/<del> markup, with unedited sentences and placeholder tokens mixed in.

Output is a pure function of --seed.
"""

import argparse
import json
import os
import random
import re
import sys

# Items with k Better votes, k = 0..7.
VOTE_HISTOGRAM = [17, 16, 57, 66, 126, 172, 233, 253]
# Probability that the revision operation agrees with the majority label,
# by number of votes on the majority side (4..7).
CONSISTENCY = {7: 0.85, 6: 0.75, 5: 0.65, 4: 0.55}

SUBJECTS = [
    "Technology", "Social media", "Texting", "Online communication", "Email",
    "Video chat", "Electronic communication", "The internet", "Instant messaging",
    "Smartphone use",
]
VERBS = [
    "is changing", "has transformed", "affects", "shapes", "weakens",
    "strengthens", "influences", "has reshaped", "complicates", "improves",
]
OBJECTS = [
    "the way we communicate", "how students write", "our relationships with friends",
    "conversation at the dinner table", "family life", "the way people share news",
    "communication at work", "how teenagers make friends", "the way we argue",
    "how often people meet in person", "the quality of our writing",
    "the way teachers reach parents",
]
OPENERS = ["", "", "", "In my opinion, ", "Today, ", "Clearly, ", "In general, ",
           "For many families, "]
EVIDENCE = [
    ", because people can reach each other within seconds",
    ", since a message can reach hundreds of people at once",
    ", because students now spend hours on their phones every day",
    ", as a recent survey of high school students showed",
    ", which means that fewer people talk face to face",
    ", because short messages replace long letters",
    ", since many workers answer email late at night",
]
SPECIFICS = [
    (" in 2015", None),
    (" for about 73 percent of American teenagers", None),
    (" according to a 2018 survey of 743 teens", None),
    (" in most American high schools", None),
    (" for nearly 4 billion users worldwide", None),
    (" since the first iPhone appeared in 2007", None),
]
FILLER = [
    ("", " really very much"),
    ("", " in a way that is kind of important"),
    ("", ", basically,"),
    ("", " and stuff like that"),
    ("", " a lot, a lot"),
]
VAGUE = {
    "the way we communicate": "things",
    "how students write": "stuff at school",
    "our relationships with friends": "some things",
    "family life": "a lot of things",
    "communication at work": "things at work",
    "the quality of our writing": "writing and stuff",
}
TYPOS = {
    "communicate": "comunicate", "because": "becuase", "people": "poeple",
    "their": "thier", "different": "diffrent", "friends": "freinds",
    "message": "mesage", "technology": "tecnology", "relationships": "relashionships",
    "students": "studants", "conversation": "conversaton", "teenagers": "teenagres",
    "writing": "writting", "family": "famly", "changing": "chaging",
}
# (correct, erroneous) phrase swaps the grammar rules can see.
GRAMMAR_SWAPS = [
    ("has transformed", "have transformed it it"),
    ("affects", "affects affects"),
    ("is changing", "are changing the the"),
    ("the way", "a the way"),
]

ARGRW_COMMENTS = [
    "", "", "", "", "adds evidence", "more precise", "less clear", "no real change",
    "fixes a typo", "introduces an error", "wordier", "better support",
]


def base_sentence(rng):
    opener = rng.choice(OPENERS)
    subject = rng.choice(SUBJECTS)
    if opener:
        subject = subject[0].lower() + subject[1:] if subject not in ("Email",) else subject
        if subject.startswith("the internet"):
            subject = "the internet"
    return opener, subject, rng.choice(VERBS), rng.choice(OBJECTS)


def render(opener, subject, verb, obj, tail=""):
    text = f"{opener}{subject} {verb} {obj}{tail}."
    return text[0].upper() + text[1:]


def add_typo(text, rng):
    words = [w for w in re.findall(r"[a-z]+", text) if w in TYPOS]
    if not words:
        return None
    w = rng.choice(words)
    return re.sub(rf"\b{w}\b", TYPOS[w], text, count=1)


def add_grammar_error(text, rng):
    options = [(ok, bad) for ok, bad in GRAMMAR_SWAPS if ok in text]
    if not options:
        return None
    ok, bad = rng.choice(options)
    return text.replace(ok, bad, 1)


def better_op(rng, parts):
    """Returns (s1, s2) where s2 improves on s1."""
    opener, subject, verb, obj = parts
    plain = render(opener, subject, verb, obj)
    kind = rng.choice(["evidence", "specifics", "spelling", "grammar", "devague"])
    if kind == "evidence":
        return plain, render(opener, subject, verb, obj, rng.choice(EVIDENCE))
    if kind == "specifics":
        return plain, render(opener, subject, verb, obj, rng.choice(SPECIFICS)[0])
    if kind == "spelling":
        broken = add_typo(plain, rng)
        if broken:
            return broken, plain
    if kind == "grammar":
        broken = add_grammar_error(plain, rng)
        if broken:
            return broken, plain
    if obj in VAGUE:
        return render(opener, subject, verb, VAGUE[obj]), plain
    return plain, render(opener, subject, verb, obj, rng.choice(EVIDENCE))


def not_better_op(rng, parts):
    """Returns (s1, s2) where s2 is worse or no real improvement."""
    opener, subject, verb, obj = parts
    kind = rng.choice(["delete", "typo", "grammar", "filler", "vague"])
    if kind == "delete":
        full = render(opener, subject, verb, obj, rng.choice(EVIDENCE + [s for s, _ in SPECIFICS]))
        return full, render(opener, subject, verb, obj)
    plain = render(opener, subject, verb, obj)
    if kind == "typo":
        broken = add_typo(plain, rng)
        if broken:
            return plain, broken
    if kind == "grammar":
        broken = add_grammar_error(plain, rng)
        if broken:
            return plain, broken
    if kind == "vague" and obj in VAGUE:
        return plain, render(opener, subject, verb, VAGUE[obj])
    _, extra = rng.choice(FILLER)
    return plain, render(opener, subject, verb, obj, extra)


def make_argrewrite(rng):
    records = []
    votes = []
    for k, count in enumerate(VOTE_HISTOGRAM):
        votes.extend([k] * count)
    rng.shuffle(votes)
    seen = set()
    for i, k in enumerate(votes):
        majority_better = k >= 4
        margin = max(k, 7 - k)
        consistent = rng.random() < CONSISTENCY[margin]
        improve = majority_better == consistent
        for _ in range(1000):
            parts = base_sentence(rng)
            s1, s2 = better_op(rng, parts) if improve else not_better_op(rng, parts)
            if s1 != s2 and (s1, s2) not in seen:
                break
        else:
            raise RuntimeError("could not draw a fresh pair")
        seen.add((s1, s2))
        labels = ["Better"] * k + ["NotBetter"] * (7 - k)
        rng.shuffle(labels)
        comments = [rng.choice(ARGRW_COMMENTS) for _ in labels]
        records.append({"id": f"argrw-{i + 1:04d}", "s1": s1, "s2": s2,
                        "labels": labels, "comments": comments})
    return records


GENRES = ["Physics", "Mathematics", "Computer Science", "Engineering", "Biology"]
SCI_SUBJECTS = [
    "the proposed method", "this approach", "the new algorithm", "our model",
    "the numerical scheme", "the experimental setup", "the simulation",
    "the estimator", "the network", "the solver",
]
SCI_VERBS = [
    "leads to", "provides", "yields", "requires", "improves", "reduces",
    "achieves", "produces", "gives",
]
SCI_OBJECTS = [
    "accurate results", "a lower error", "stable solutions", "better accuracy",
    "a significant speedup", "consistent estimates", "proper results",
    "a smaller variance", "reliable predictions", "faster convergence",
]
SCI_TAILS = [
    "", "", " in all cases", " for large systems", " at a moderate cost",
    " under mild assumptions", " on both data sets",
]
PLACEHOLDER_TAILS = [
    " where MATH is the number of nodes", " as shown in CITE", " (see REF)",
    " for all MATH", " as reported in CITE", " with MATHDISP",
]


def sci_sentence(rng, placeholder):
    subj = rng.choice(SCI_SUBJECTS)
    tail = rng.choice(PLACEHOLDER_TAILS) if placeholder else rng.choice(SCI_TAILS)
    return subj, rng.choice(SCI_VERBS), rng.choice(SCI_OBJECTS), tail


def esc(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def sci_edit(rng, parts):
    """Inline-markup sentence body with one proofreading edit."""
    subj, verb, obj, tail = parts
    cap = subj[0].upper() + subj[1:]
    kind = rng.choice(["comma", "article", "wordchoice", "spelling", "redundant",
                       "reorder", "tense", "hyphen"])
    if kind == "comma":
        return (f"{esc(cap)} is numerically expensive<ins>,</ins> but {esc(verb)} "
                f"{esc(obj)}{esc(tail)}.")
    if kind == "article":
        return f"<ins>The </ins>{esc(subj.split(' ', 1)[1])} {esc(verb)} {esc(obj)}{esc(tail)}."
    if kind == "wordchoice":
        return (f"{esc(cap)} <del>utilizes</del><ins>uses</ins> fewer resources and "
                f"{esc(verb)} {esc(obj)}{esc(tail)}.")
    if kind == "spelling":
        return (f"{esc(cap)} {esc(verb)} {esc(obj)}{esc(tail)} <del>wich</del><ins>which</ins> "
                f"is <del>neccessary</del><ins>necessary</ins> here.")
    if kind == "redundant":
        return (f"{esc(cap)} is used <del>in order </del>to obtain {esc(obj)}{esc(tail)}.")
    if kind == "reorder":
        return (f"<del>Section 2 formulates and solves the balance equations.</del>"
                f"<ins>The balance equations are formulated and solved in Section 2.</ins>"
                if rng.random() < 0.05 else
                f"<del>We show that {esc(subj)} {esc(verb)} {esc(obj)}{esc(tail)}.</del>"
                f"<ins>It is shown that {esc(subj)} {esc(verb)} {esc(obj)}{esc(tail)}.</ins>")
    if kind == "tense":
        return (f"In this paper, {esc(subj)} <del>has been</del><ins>is</ins> applied and "
                f"{esc(verb)} {esc(obj)}{esc(tail)}.")
    return (f"{esc(cap)} is a <del>well known</del><ins>well-known</ins> technique that "
            f"{esc(verb)} {esc(obj)}{esc(tail)}.")


def make_aesw(rng, n_edited_plain=600, n_edited_placeholder=100, n_unedited=110):
    kinds = (["plain"] * n_edited_plain + ["placeholder"] * n_edited_placeholder +
             ["unedited"] * n_unedited)
    rng.shuffle(kinds)
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             "<!-- Synthetic proofreading edits in the AESW inline markup. -->", "<dataset>"]
    per_doc = 12
    for d in range(0, len(kinds), per_doc):
        did = d // per_doc + 1
        lines.append(f'<doc did="{did}" domain="{rng.choice(GENRES)}">')
        lines.append("<p>")
        for j, kind in enumerate(kinds[d:d + per_doc]):
            sid = f"{did}.{j + 1}"
            parts = sci_sentence(rng, kind == "placeholder")
            if kind == "unedited":
                subj, verb, obj, tail = parts
                body = esc(f"{subj[0].upper() + subj[1:]} {verb} {obj}{tail}.")
            else:
                body = sci_edit(rng, parts)
            lines.append(f'<sentence sid="{sid}">{body}</sentence>')
        lines.append("</p>")
        lines.append("</doc>")
    lines.append("</dataset>")
    return "\n".join(lines) + "\n"


def check_vocabulary(texts, dictionary_path):
    words = set()
    with open(dictionary_path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#"):
                words.add(line.lower())
    allowed = set(TYPOS.values()) | {"wich", "neccessary", "iphone"}
    unknown = set()
    for text in texts:
        for w in re.findall(r"[A-Za-z]+", text):
            lw = w.lower()
            if lw not in words and lw not in allowed and not w.isupper():
                unknown.add(w)
    if unknown:
        raise SystemExit("words missing from the dictionary: " + ", ".join(sorted(unknown)))


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=20180701)
    ap.add_argument("--out", default=os.path.join(root, "data", "corpus"))
    ap.add_argument("--dictionary",
                    default=os.path.join(root, "data", "resources", "dictionary.txt"))
    args = ap.parse_args()

    rng = random.Random(args.seed)
    records = make_argrewrite(rng)
    sgml = make_aesw(random.Random(args.seed + 1))
    check_vocabulary([r["s1"] + " " + r["s2"] for r in records] +
                     [re.sub(r"<[^>]+>", " ", sgml)], args.dictionary)

    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "argrewrite_standin.jsonl"), "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")
    with open(os.path.join(args.out, "aesw_standin.sgml"), "w", encoding="utf-8") as f:
        f.write(sgml)
    print(f"wrote {len(records)} ArgRewrite-style pairs and "
          f"{sgml.count('<sentence ')} AESW-style sentences to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
