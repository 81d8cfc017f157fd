#!/usr/bin/env python3
# Copyright 2026 The InfoSync Authors.
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

"""Writes the bundled fixture corpus and stub lexicons under tests/data.

Phrases are defined once per concept with a form per language; a missing
form means the English text is used unchanged. Reference tables cover every
gold key, and gold values are the reference values unless overridden.
"""

import json
import pathlib
import shutil
import sys

# concept id -> {lang: text}; "en" is required.
C = {
    # keys
    "k.birth_date": dict(en="Birth date", de="Geburtsdatum", fr="Date de naissance", es="Fecha de nacimiento", nl="Geboortedatum", hi="जन्म तिथि"),
    "k.birth_place": dict(en="Birth place", de="Geburtsort", fr="Lieu de naissance", es="Lugar de nacimiento", nl="Geboorteplaats", hi="जन्म स्थान"),
    "k.death_date": dict(en="Death date", de="Sterbedatum", fr="Date de décès", es="Fecha de fallecimiento", nl="Sterfdatum", hi="मृत्यु तिथि"),
    "k.field": dict(en="Field", de="Fachgebiet", fr="Domaine", es="Campo", nl="Vakgebied", hi="क्षेत्र"),
    "k.awards": dict(en="Awards", de="Auszeichnungen", fr="Distinctions", es="Premios", nl="Onderscheidingen", hi="पुरस्कार"),
    "k.spouse": dict(en="Spouse", de="Ehepartner", fr="Conjoint", es="Cónyuge", nl="Echtgenoot", hi="जीवनसाथी"),
    "k.occupation": dict(en="Occupation", de="Beruf", fr="Profession", es="Ocupación", nl="Beroep", hi="व्यवसाय"),
    "k.country": dict(en="Country", de="Staat", fr="Pays", es="País", nl="Land"),
    "k.state": dict(en="State", de="Bundesland", fr="Land allemand", es="Estado federado"),
    "k.province": dict(en="Province", fr="Province", nl="Provincie"),
    "k.population": dict(en="Population", de="Einwohner", fr="Population", es="Población", nl="Inwoners"),
    "k.area": dict(en="Area", de="Fläche", fr="Superficie", es="Superficie", nl="Oppervlakte"),
    "k.mayor": dict(en="Mayor", de="Oberbürgermeister", fr="Maire", nl="Burgemeester"),
    "k.postal": dict(en="Postal code", de="Postleitzahl", fr="Code postal", nl="Postcode"),
    "k.founded": dict(en="Founded", de="Gründung", fr="Fondation", es="Fundación"),
    "k.hq": dict(en="Headquarters", de="Sitz", fr="Siège", es="Sede"),
    "k.ceo": dict(en="Key people", de="Leitung", fr="Dirigeants"),
    "k.employees": dict(en="Employees", de="Mitarbeiter", fr="Employés"),
    "k.revenue": dict(en="Revenue", de="Umsatz", fr="Chiffre d'affaires"),
    "k.industry": dict(en="Industry", de="Branche", fr="Secteur"),
    "k.genre": dict(en="Genre", de="Genre", fr="Genre musical", es="Género"),
    "k.instrument": dict(en="Instruments", de="Instrumente", fr="Instruments"),
    "k.active": dict(en="Years active", de="Aktive Jahre", fr="Années actives"),
    "k.label": dict(en="Label", de="Label", fr="Label discographique"),
    "k.capacity": dict(en="Capacity", de="Kapazität", fr="Capacité"),
    "k.opened": dict(en="Opened", de="Eröffnung", fr="Inauguration"),
    "k.tenants": dict(en="Tenants", de="Nutzer", fr="Clubs résidents"),
    "k.surface": dict(en="Surface", de="Spielfläche", fr="Surface de jeu"),
    "k.location": dict(en="Location", de="Standort", fr="Localisation"),
    "k.established": dict(en="Established", fr="Création"),
    "k.type": dict(en="Type", fr="Statut"),
    "k.students": dict(en="Students", fr="Étudiants"),
    "k.president": dict(en="President", fr="Président", es="Presidente"),
    "k.height": dict(en="Height", es="Altura"),
    "k.plays": dict(en="Plays", es="Juego"),
    "k.titles": dict(en="Career titles", es="Títulos"),
    "k.ranking": dict(en="Highest ranking", es="Mejor ranking"),
    "k.capital": dict(en="Capital", es="Capital"),
    "k.language": dict(en="Official language", es="Idioma oficial"),
    "k.currency": dict(en="Currency", es="Moneda"),
    "k.released": dict(en="Released", de="Veröffentlichung"),
    "k.recorded": dict(en="Recorded", de="Aufnahme"),
    "k.length": dict(en="Length", de="Länge"),
    "k.producer": dict(en="Producer", de="Produzent"),
    "k.studio": dict(en="Studio", de="Tonstudio"),
    "k.children": dict(en="Children", hi="संतान"),
    # values
    "v.ein.born": dict(en="14 March 1879", de="14. März 1879"),
    "v.ein.wurtt": dict(en="Kingdom of Württemberg", de="Königreich Württemberg"),
    "v.ein.died": dict(en="18 April 1955", de="18. April 1955"),
    "v.physics": dict(en="Physics", de="Physik"),
    "v.philosophy": dict(en="Philosophy", de="Philosophie"),
    "v.nobel_phys": dict(en="Nobel Prize in Physics", de="Nobelpreis für Physik"),
    "v.copley": dict(en="Copley Medal", de="Copley-Medaille"),
    "v.physicist": dict(en="Physicist", de="Physiker"),
    "v.germany": dict(en="Germany", de="Deutschland", fr="Allemagne"),
    "v.bw": dict(en="Baden-Württemberg"),
    "v.hd.pop_old": dict(en="156,267", de="156.267"),
    "v.hd.pop": dict(en="162,273", de="162.273"),
    "v.hd.area": dict(en="108.83 km²", de="108,83 km²"),
    "v.munich": dict(en="Munich", de="München", fr="Munich"),
    "v.berlin": dict(en="Berlin"),
    "v.siemens.founded": dict(en="12 October 1847", de="12. Oktober 1847"),
    "v.siemens.emp_old": dict(en="372,000", de="372.000"),
    "v.siemens.emp": dict(en="320,000", de="320.000"),
    "v.siemens.rev_old": dict(en="€83.0 billion", de="83,0 Mrd. €"),
    "v.siemens.rev": dict(en="€77.8 billion", de="77,8 Mrd. €"),
    "v.conglomerate": dict(en="Conglomerate", de="Mischkonzern"),
    "v.piaf.born": dict(en="19 December 1915", fr="19 décembre 1915"),
    "v.piaf.died": dict(en="10 October 1963", fr="10 octobre 1963"),
    "v.paris": dict(en="Paris"),
    "v.france": dict(en="France"),
    "v.chanson": dict(en="Chanson", fr="Chanson française"),
    "v.cabaret": dict(en="Cabaret"),
    "v.vocals": dict(en="Vocals", fr="Chant"),
    "v.singer": dict(en="Singer", fr="Chanteuse"),
    "v.actress": dict(en="Actress", fr="Actrice"),
    "v.piaf.active": dict(en="1935–1963"),
    "v.columbia": dict(en="Columbia"),
    "v.pathe": dict(en="Pathé"),
    "v.sdf.cap_old": dict(en="81,338", fr="81 338"),
    "v.sdf.cap": dict(en="80,698", fr="80 698"),
    "v.sdf.opened": dict(en="28 January 1998", fr="28 janvier 1998"),
    "v.saint_denis": dict(en="Saint-Denis"),
    "v.fr_team": dict(en="France national football team", fr="Équipe de France de football"),
    "v.fr_rugby": dict(en="France national rugby union team", fr="Équipe de France de rugby à XV"),
    "v.grass": dict(en="Grass", fr="Gazon"),
    "v.sorb.est": dict(en="1 January 2018", fr="1er janvier 2018"),
    "v.public": dict(en="Public university", fr="Université publique"),
    "v.sorb.stud_old": dict(en="52,000", fr="52 000"),
    "v.sorb.stud": dict(en="55,600", fr="55 600"),
    "v.sorb.pres_old": dict(en="Jean Chambaz"),
    "v.sorb.pres": dict(en="Nathalie Drach-Temam"),
    "v.nadal.born": dict(en="3 June 1986", es="3 de junio de 1986"),
    "v.manacor": dict(en="Manacor"),
    "v.spain": dict(en="Spain", es="España"),
    "v.nadal.height": dict(en="1.85 m", es="1,85 m"),
    "v.lefty": dict(en="Left-handed", es="Zurdo"),
    "v.nadal.titles_old": dict(en="80"),
    "v.nadal.titles": dict(en="92"),
    "v.no1": dict(en="No. 1 (18 August 2008)", es="N.º 1 (18 de agosto de 2008)"),
    "v.mery": dict(en="María Francisca Perelló"),
    "v.montevideo": dict(en="Montevideo"),
    "v.spanish": dict(en="Spanish", es="Español"),
    "v.uy.pop_old": dict(en="3,390,077", es="3.390.077"),
    "v.uy.pop": dict(en="3,444,263", es="3.444.263"),
    "v.peso": dict(en="Uruguayan peso", es="Peso uruguayo"),
    "v.uy.pres_old": dict(en="Tabaré Vázquez"),
    "v.uy.pres": dict(en="Luis Lacalle Pou"),
    "v.uy.area": dict(en="176,215 km²", es="176.215 km²"),
    "v.ar.released": dict(en="26 September 1969", de="26. September 1969"),
    "v.ar.recorded": dict(en="February–August 1969", de="Februar bis August 1969"),
    "v.rock": dict(en="Rock"),
    "v.ar.length": dict(en="47:03"),
    "v.apple": dict(en="Apple"),
    "v.george_martin": dict(en="George Martin"),
    "v.emi": dict(en="EMI Studios"),
    "v.london": dict(en="London"),
    "v.belgium": dict(en="Belgium", fr="Belgique", nl="België"),
    "v.wflanders": dict(en="West Flanders", fr="Flandre-Occidentale", nl="West-Vlaanderen"),
    "v.br.pop_old": dict(en="117,073", fr="117 073", nl="117.073"),
    "v.br.pop": dict(en="119,050", fr="119 050", nl="119.050"),
    "v.br.area": dict(en="138.40 km²", fr="138,40 km²", nl="138,40 km²"),
    "v.br.mayor_old": dict(en="Renaat Landuyt"),
    "v.br.mayor": dict(en="Dirk De fauw"),
    "v.br.postal": dict(en="8000"),
    "v.ab.born": dict(en="11 October 1942", hi="11 अक्टूबर 1942"),
    "v.allahabad": dict(en="Allahabad", hi="इलाहाबाद"),
    "v.actor": dict(en="Actor", hi="अभिनेता"),
    "v.producer": dict(en="Film producer", hi="फ़िल्म निर्माता"),
    "v.host": dict(en="Television host", hi="टेलीविज़न प्रस्तोता"),
    "v.jaya": dict(en="Jaya Bachchan", hi="जया बच्चन"),
    "v.padma_bhushan": dict(en="Padma Bhushan", hi="पद्म भूषण"),
    "v.padma_vibhushan": dict(en="Padma Vibhushan", hi="पद्म विभूषण"),
    "v.abhishek": dict(en="Abhishek Bachchan", hi="अभिषेक बच्चन"),
    "v.shweta": dict(en="Shweta Bachchan Nanda", hi="श्वेता बच्चन नंदा"),
}


def form(concepts, lang):
    """A value written as a list of concept ids joined with ', '."""
    if isinstance(concepts, str):
        concepts = [concepts]
    return ", ".join(C[c].get(lang, C[c]["en"]) for c in concepts)


# Each row: (key concept, source value or None, reference value, gold override).
INSTANCES = [
    dict(entity="Albert Einstein", category="Person", src="de", ref="en", rows=[
        ("k.birth_date", "v.ein.born", "v.ein.born", None),
        ("k.birth_place", ["v.ein.wurtt"], ["v.ein.wurtt"], None),
        ("k.field", "v.physics", ["v.physics", "v.philosophy"], None),
        ("k.awards", "v.nobel_phys", ["v.nobel_phys", "v.copley"], None),
        ("k.death_date", None, "v.ein.died", None),
        ("k.occupation", None, "v.physicist", None),
    ]),
    dict(entity="Heidelberg", category="City", src="de", ref="en", rows=[
        ("k.country", "v.germany", "v.germany", None),
        ("k.state", "v.bw", "v.bw", None),
        ("k.population", "v.hd.pop_old", "v.hd.pop", None),
        ("k.area", None, "v.hd.area", None),
    ]),
    dict(entity="Siemens", category="Company", src="de", ref="en", rows=[
        ("k.founded", "v.siemens.founded", "v.siemens.founded", None),
        ("k.hq", ["v.munich", "v.berlin"], "v.munich", ["v.munich", "v.berlin"]),
        ("k.employees", "v.siemens.emp_old", "v.siemens.emp", None),
        ("k.revenue", "v.siemens.rev_old", "v.siemens.rev", None),
        ("k.industry", None, "v.conglomerate", None),
    ]),
    dict(entity="Édith Piaf", category="Musician", src="fr", ref="en", rows=[
        ("k.birth_date", "v.piaf.born", "v.piaf.born", None),
        ("k.birth_place", "v.paris", "v.paris", None),
        ("k.genre", "v.chanson", ["v.chanson", "v.cabaret"], None),
        ("k.occupation", "v.singer", ["v.singer", "v.actress"], None),
        ("k.death_date", None, "v.piaf.died", None),
        ("k.instrument", None, "v.vocals", None),
        ("k.active", None, "v.piaf.active", None),
        ("k.label", None, ["v.columbia", "v.pathe"], None),
    ]),
    dict(entity="Stade de France", category="Stadium", src="fr", ref="en", rows=[
        ("k.location", "v.saint_denis", "v.saint_denis", None),
        ("k.capacity", "v.sdf.cap_old", "v.sdf.cap", "v.sdf.cap_old"),
        ("k.opened", "v.sdf.opened", "v.sdf.opened", None),
        ("k.tenants", "v.fr_team", ["v.fr_team", "v.fr_rugby"], None),
        ("k.surface", None, "v.grass", None),
    ]),
    dict(entity="Sorbonne University", category="College", src="fr", ref="en", rows=[
        ("k.established", "v.sorb.est", "v.sorb.est", None),
        ("k.type", "v.public", "v.public", None),
        ("k.president", "v.sorb.pres_old", "v.sorb.pres", None),
        ("k.students", "v.sorb.stud_old", "v.sorb.stud", None),
        ("k.location", None, ["v.paris", "v.france"], None),
    ]),
    dict(entity="Rafael Nadal", category="Athlete", src="es", ref="en", rows=[
        ("k.birth_date", "v.nadal.born", "v.nadal.born", None),
        ("k.birth_place", ["v.manacor", "v.spain"], ["v.manacor", "v.spain"], None),
        ("k.height", "v.nadal.height", "v.nadal.height", None),
        ("k.titles", "v.nadal.titles_old", "v.nadal.titles", None),
        ("k.plays", None, "v.lefty", None),
        ("k.ranking", None, "v.no1", None),
        ("k.spouse", None, "v.mery", None),
    ]),
    dict(entity="Uruguay", category="Country", src="es", ref="en", rows=[
        ("k.capital", "v.montevideo", "v.montevideo", None),
        ("k.language", "v.spanish", "v.spanish", None),
        ("k.population", "v.uy.pop_old", "v.uy.pop", None),
        ("k.president", "v.uy.pres_old", "v.uy.pres", None),
        ("k.currency", None, "v.peso", None),
        ("k.area", None, "v.uy.area", None),
    ]),
    dict(entity="Abbey Road", category="Album", src="en", ref="de", rows=[
        ("k.released", "v.ar.released", "v.ar.released", None),
        ("k.genre", "v.rock", "v.rock", None),
        ("k.label", "v.apple", "v.apple", None),
        ("k.recorded", None, "v.ar.recorded", None),
        ("k.length", None, "v.ar.length", None),
        ("k.producer", None, "v.george_martin", None),
        ("k.studio", None, ["v.emi", "v.london"], None),
    ]),
    dict(entity="Brugge", category="City", src="nl", ref="fr", rows=[
        ("k.country", "v.belgium", "v.belgium", None),
        ("k.province", "v.wflanders", "v.wflanders", None),
        ("k.population", "v.br.pop_old", "v.br.pop", None),
        ("k.mayor", "v.br.mayor_old", "v.br.mayor", None),
        ("k.area", None, "v.br.area", None),
        ("k.postal", None, "v.br.postal", None),
    ]),
    dict(entity="Amitabh Bachchan", category="Person", src="hi", ref="en", rows=[
        ("k.birth_date", "v.ab.born", "v.ab.born", None),
        ("k.birth_place", "v.allahabad", "v.allahabad", None),
        ("k.occupation", "v.actor", ["v.actor", "v.producer", "v.host"], None),
        ("k.awards", "v.padma_bhushan", ["v.padma_bhushan", "v.padma_vibhushan"], None),
        ("k.spouse", None, "v.jaya", None),
        ("k.children", None, ["v.abhishek", "v.shweta"], None),
    ]),
]


def quote(s):
    return json.dumps(s, ensure_ascii=False).replace("'", "\\'")


def table_text(rows):
    if not rows:
        return "[]\n"
    body = ",\n".join("    [%s,%s]" % (quote(k), quote(v)) for k, v in rows)
    return "[\n" + body + "\n]\n"


def slug(entity):
    out, dash = [], False
    for ch in entity.lower():
        if ch.isalnum():
            out.append(ch)
            dash = False
        elif not dash and out:
            out.append("-")
            dash = True
    return "".join(out).strip("-")


def lexicons():
    """lang -> list of (phrase, english) for every concept with its own form."""
    lex = {}
    for cid, forms in C.items():
        for lang, text in forms.items():
            if lang == "en":
                continue
            lex.setdefault(lang, []).append((text, forms["en"]))
    for lang, pairs in lex.items():
        seen_src, seen_en = {}, {}
        for src, en in pairs:
            if seen_src.setdefault(src, en) != en or seen_en.setdefault(en, src) != src:
                sys.exit("ambiguous %s lexicon entry: %s / %s" % (lang, src, en))
    return lex


def main():
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
    corpus = root / "corpus"
    if corpus.exists():
        shutil.rmtree(corpus)
    for inst in INSTANCES:
        d = corpus / inst["category"] / slug(inst["entity"])
        d.mkdir(parents=True)
        src, ref = inst["src"], inst["ref"]
        s_rows = [(form(k, src), form(v, src)) for k, v, _, _ in inst["rows"] if v is not None]
        r_rows = [(form(k, ref), form(v, ref)) for k, _, v, _ in inst["rows"]]
        g_rows = [(form(k, src), form(g if g is not None else v, src))
                  for k, _, v, g in inst["rows"]]
        (d / "manifest").write_text(
            "entity = %s\ncategory = %s\nsource_lang = %s\nreference_lang = %s\n"
            "source_revision = 2018\nreference_revision = 2023\n"
            % (inst["entity"], inst["category"], src, ref), encoding="utf-8")
        (d / ("source.%s.table" % src)).write_text(table_text(s_rows), encoding="utf-8")
        (d / ("reference.%s.table" % ref)).write_text(table_text(r_rows), encoding="utf-8")
        (d / ("gold.%s.table" % src)).write_text(table_text(g_rows), encoding="utf-8")
        # Source keys against gold keys; the reference side is compared after
        # translation into the source language, so both use source-language keys.
        s_keys = [form(k, src) for k, v, _, _ in inst["rows"] if v is not None]
        all_keys = [form(k, src) for k, _, _, _ in inst["rows"]]
        gold_alignment = {
            "pairs": [[[k.lower()], [k.lower()]] for k in sorted(s_keys, key=str.lower)],
            "unaligned_left": [],
            "unaligned_right": sorted(k.lower() for k in all_keys if k not in s_keys),
        }
        for name in ("gold", "reference"):
            (d / ("alignment.%s.json" % name)).write_text(
                json.dumps(gold_alignment, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")

    for name in ("stub", "stub-faults"):
        lex_dir = root / name / "lexicons"
        if lex_dir.exists():
            shutil.rmtree(lex_dir)
        lex_dir.mkdir(parents=True)
        for lang, pairs in sorted(lexicons().items()):
            lines = ["# %s -> en" % lang] + ["%s\t%s" % p for p in pairs]
            (lex_dir / ("%s-en.tsv" % lang)).write_text("\n".join(lines) + "\n", encoding="utf-8")
    faults = {"faults": {"merge_drop_keys": ["Occupation"]}}
    (root / "stub-faults" / "rules.json").write_text(json.dumps(faults, indent=2) + "\n",
                                                     encoding="utf-8")


if __name__ == "__main__":
    main()
