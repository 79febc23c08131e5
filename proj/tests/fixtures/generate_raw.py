#!/usr/bin/env python3
# Copyright 2026 The reo-tag Authors
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

"""Regenerates the synthetic raw documents under raw/ (except debate_2010.html)."""

import html
import pathlib
import random

POOL = [
    ("I make a point of order, Mr Speaker.", 12),
    ("I make a personal statement.", 8),
    ("I make a brief comment on the bill.", 6),
    ("I make a final point.", 4),
    ("Kia ora, Mr Speaker.", 15),
    ("Kia ora.", 3),
    ("Kia ora koutou katoa.", 6),
    ("We hope to see more children at school.", 10),
    ("The Minister has said that the bill will go to the committee.", 5),
    ("The home of the member is in the electorate.", 3),
    ("He said that one member would vote against the bill.", 3),
    ("I want to thank the member for the question.", 5),
    ("It is my hope that this debate will be a clear one.", 2),
    ("In 2010 the House sat for 96 days.", 1),
    ("The co-operation of the iwis was welcome.", 2),
    ("The ramp at the front of the House is closed.", 1),
    ("Yes, bonjour to our friends who have a French background in the Pacific region.", 1),
    ("Talofa lava to our Pacific friends.", 3),
    ("Tēnā koe, e te Pīka.", 6),
    ("Ko te reo Māori te taonga o te iwi.", 4),
    ("E ngā mana, e ngā reo, tēnā koutou katoa.", 4),
    ("He mihi nui ki a koutou.", 4),
    ("Kei te pai ahau.", 3),
    ("Ka mate ka mate, ka ora ka ora.", 2),
    ("Ko te miraka te kai pai mō ngā tamariki.", 2),
    ("Me whakarongo tātou ki ngā kōrero o te whare.", 3),
    ("Kia kaha, kia maia, kia manawanui.", 3),
    ("I te tau 2010, i tū te hui ki te marae.", 2),
    ("Me w'akarongo koutou ki te kaumatua.", 2),
    ("Ko ngā mokopuna te rangatira o āpōpō.", 3),
    ("Kia orana, meitaki maata.", 3),
    ("Manuia, ka kite anō.", 3),
    ("The whare is full of whānau today.", 4),
    ("The Maori Party supports the bill.", 3),
    ("I acknowledge the kaumātua of the iwi.", 4),
    ("Tēnā koe, Mr Speaker.", 5),
    ("The Minister went to the hui at the marae.", 3),
    ("We want the maaori children to have a home.", 2),
    ("Is it true, Minister?", 2),
    ("That is clear!", 2),
    ("The mokopuna went to the school at the marae.", 2),
]

DOCS = [
    ("hansard_2008-03-12.txt", None, "txt"),
    ("debate 14 May 2009.html", "2009-05-14", "html"),
    ("hansard_2011.txt", "7 September 2011", "txt-header"),
    ("2012-11-20_hansard.htm", None, "html-nodate"),
]


def main():
    root = pathlib.Path(__file__).resolve().parent / "raw"
    rng = random.Random(20100)
    sentences = [s for s, n in POOL for _ in range(n)]
    rng.shuffle(sentences)
    chunks = [sentences[i::len(DOCS)] for i in range(len(DOCS))]
    for (name, date, style), chunk in zip(DOCS, chunks):
        paras = [chunk[i:i + 3] for i in range(0, len(chunk), 3)]
        if style.startswith("txt"):
            lines = []
            if style == "txt-header":
                lines += [f"Date: {date}", ""]
            lines += [" ".join(p) for p in paras]
            body = "\n".join(lines) + "\n"
        else:
            meta = f'<meta name="DC.date" content="{date}">' if date else ""
            items = "\n".join(f"<p>{html.escape(' '.join(p), quote=False)}</p>" for p in paras)
            body = (f"<!DOCTYPE html>\n<html>\n<head>\n<title>Hansard</title>\n{meta}\n"
                    f"<style>p {{ margin: 0 }}</style>\n</head>\n<body>\n{items}\n</body>\n</html>\n")
        (root / name).write_text(body, encoding="utf-8")


if __name__ == "__main__":
    main()
