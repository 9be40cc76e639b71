#!/usr/bin/env python3
"""Regenerate the synthetic fixture under data/fixture (deterministic)."""

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "fixture"
YEAR = 1999

CATEGORIES = {
    "C01": "Infections",
    "C04": "Neoplasms",
    "C05": "Musculoskeletal Diseases",
    "C06": "Digestive System Diseases",
    "C08": "Respiratory Tract Diseases",
    "C10": "Nervous System Diseases",
    "C12": "Urogenital Diseases",
    "C14": "Cardiovascular Diseases",
    "C15": "Hemic and Lymphatic Diseases",
    "C17": "Skin and Connective Tissue Diseases",
    "C18": "Nutritional and Metabolic Diseases",
    "C19": "Endocrine System Diseases",
    "C20": "Immune System Diseases",
    "C23": "Pathological Conditions, Signs and Symptoms",
}

# Second-level topics with two narrower descriptors each.
TOPICS = [
    ("C01.150", "Bacterial Infections and Mycoses", ["Bacterial Infections", "Mycoses"]),
    ("C01.925", "Virus Diseases", ["HIV Infections", "Hepatitis, Viral, Human"]),
    ("C01.610", "Parasitic Diseases", ["Malaria", "Helminthiasis"]),
    ("C04.557", "Neoplasms by Histologic Type", ["Carcinoma", "Lymphoma"]),
    ("C04.588", "Neoplasms by Site", ["Breast Neoplasms", "Lung Neoplasms"]),
    ("C04.697", "Neoplastic Processes", ["Neoplasm Metastasis", "Neoplasm Recurrence, Local"]),
    ("C05.116", "Bone Diseases", ["Osteoporosis", "Fractures, Bone"]),
    ("C05.550", "Joint Diseases", ["Arthritis", "Osteoarthritis"]),
    ("C06.552", "Liver Diseases", ["Liver Cirrhosis", "Fatty Liver"]),
    ("C06.405", "Gastrointestinal Diseases", ["Colitis", "Peptic Ulcer"]),
    ("C08.381", "Lung Diseases", ["Asthma", "Pulmonary Fibrosis"]),
    ("C08.730", "Respiratory Tract Infections", ["Pneumonia", "Tuberculosis, Pulmonary"]),
    ("C10.228", "Central Nervous System Diseases", ["Brain Diseases", "Encephalitis"]),
    ("C10.574", "Neurodegenerative Diseases", ["Alzheimer Disease", "Parkinson Disease"]),
    ("C12.777", "Urologic Diseases", ["Kidney Diseases", "Urinary Tract Infections"]),
    ("C14.280", "Heart Diseases", ["Myocardial Infarction", "Heart Failure"]),
    ("C14.907", "Vascular Diseases", ["Hypertension", "Atherosclerosis"]),
    ("C15.378", "Hematologic Diseases", ["Anemia", "Leukemia"]),
    ("C17.800", "Skin Diseases", ["Psoriasis", "Dermatitis"]),
    ("C18.452", "Metabolic Diseases", ["Hyperlipidemias", "Insulin Resistance"]),
    ("C18.654", "Nutrition Disorders", ["Obesity", "Malnutrition"]),
    ("C19.246", "Diabetes Mellitus", ["Diabetes Mellitus, Type 1", "Diabetes Mellitus, Type 2"]),
    ("C20.111", "Autoimmune Diseases", ["Lupus Erythematosus, Systemic", "Arthritis, Rheumatoid"]),
    ("C20.543", "Hypersensitivity", ["Food Hypersensitivity", "Drug Hypersensitivity"]),
    ("C23.550", "Pathologic Processes", ["Inflammation", "Fibrosis"]),
    ("C23.888", "Signs and Symptoms", ["Pain", "Fever"]),
]

# Extra tree numbers that make some descriptors span two topics.
CROSS = {
    "Lung Neoplasms": ["C08.381.540"],
    "Breast Neoplasms": ["C17.800.090.500"],
    "Leukemia": ["C04.557.337"],
    "Arthritis, Rheumatoid": ["C05.550.114.154"],
    "Tuberculosis, Pulmonary": ["C01.150.252.410.040.552.846"],
    "Obesity": ["C23.888.144.699"],
    "Diabetes Mellitus, Type 2": ["C18.452.394.750.149"],
}

# Themes: groups of topics that tend to be indexed together.
THEMES = [
    ["C04.557", "C04.588", "C04.697", "C15.378", "C23.550"],
    ["C14.280", "C14.907", "C18.452", "C19.246", "C18.654"],
    ["C01.150", "C01.925", "C08.730", "C23.888", "C01.610"],
    ["C10.228", "C10.574", "C23.888", "C14.907"],
    ["C20.111", "C20.543", "C17.800", "C05.550", "C23.550"],
    ["C06.552", "C06.405", "C01.925", "C04.588", "C18.654"],
    ["C08.381", "C20.543", "C08.730", "C04.588"],
    ["C05.116", "C05.550", "C18.654", "C12.777"],
    ["C12.777", "C19.246", "C14.907", "C01.150"],
]

IMPACTFUL = [
    ("0028-4793", "The New England journal of medicine"),
    ("0140-6736", "Lancet"),
    ("0098-7484", "JAMA"),
    ("0959-8138", "BMJ"),
    ("0003-4819", "Annals of internal medicine"),
]
OTHER = [
    ("0000-0001", "Journal of Regional Medicine"),
    ("0000-0002", "Clinical Case Reports Quarterly"),
    ("0000-0003", "Archives of Applied Pathology"),
    ("0000-0004", "Provincial Medical Journal"),
    ("0000-0005", "Bulletin of Hospital Practice"),
    ("0000-0006", "Journal of Laboratory Studies"),
    ("", "Acta Medica Minor"),
]
NON_C = ["Humans", "Adult", "Female", "Male"]


def narrower_code(topic, k):
    return f"{topic}.{100 + 50 * k:03d}"


def write_taxonomy():
    rows = [("D9%05d" % i, name, code) for i, (code, name) in enumerate(sorted(CATEGORIES.items()))]
    ui = 100
    for code, name, children in TOPICS:
        rows.append(("D%06d" % ui, name, code))
        ui += 1
        for k, child in enumerate(children):
            codes = [narrower_code(code, k)] + CROSS.get(child, [])
            rows.append(("D%06d" % ui, child, ";".join(codes)))
            ui += 1
    rows.append(("D006801", "Humans", "B01.050.150.900.649.313.988.400.112.400.400"))
    rows.append(("D000328", "Adult", "M01.060.116"))
    rows.append(("D005260", "Female", "G01.100"))
    rows.append(("D008297", "Male", "G01.200"))
    with open(OUT / "taxonomy.tsv", "w") as f:
        f.write("descriptor_ui\tdescriptor_name\ttree_numbers\n")
        for r in rows:
            f.write("\t".join(r) + "\n")


def write_journals():
    with open(OUT / "journals.csv", "w") as f:
        f.write("issn,title,year,stratum\n")
        for issn, title in IMPACTFUL:
            f.write(f"{issn},{title},{YEAR},I\n")
            f.write(f"{issn},{title},{YEAR + 20},I\n")


def descriptor_pool():
    by_topic = {}
    for code, name, children in TOPICS:
        by_topic[code] = [name] + children
    return by_topic


def make_record(rng, pmid, impactful, by_topic):
    # Impactful journals favour themes early in the list; the rest favour later ones.
    weights = [(len(THEMES) - i) ** (1.4 if impactful else -0.3) for i in range(len(THEMES))]
    theme = rng.choices(THEMES, weights)[0]
    k = rng.randint(2, 4)
    topics = rng.sample(theme, min(k, len(theme)))
    if rng.random() < 0.35:
        topics.append(rng.choice(TOPICS)[0])
    mesh = []
    for t in topics:
        mesh.append(rng.choice(by_topic[t]))
    mesh += rng.sample(NON_C, rng.randint(1, 2))
    issn, title = rng.choice(IMPACTFUL if impactful else OTHER)
    month = 6 if rng.random() < 0.3 else rng.choice([m for m in range(1, 13) if m != 6] + [None])
    return {
        "pmid": str(pmid),
        "year": YEAR,
        "month": month,
        "journal_issn": issn or None,
        "journal_title": title,
        "mesh": sorted(set(mesh)),
    }


def write_corpus():
    rng = random.Random(1999)
    by_topic = descriptor_pool()
    lines = []
    pmid = 10000000
    for i in range(500):
        pmid += rng.randint(1, 40)
        lines.append(json.dumps(make_record(rng, pmid, i % 10 < 3, by_topic), separators=(",", ":")))
    # A few records the ingest stage must skip or reject.
    lines.append('{"pmid":"99999991","year":2000,"month":6,"journal_issn":"0140-6736","journal_title":"Lancet","mesh":["Asthma"]}')
    lines.append('{"pmid":"99999992","year":1999,"month":14,"journal_issn":null,"journal_title":"X","mesh":[]}')
    lines.append("this line is not json")
    lines.append('{"pmid":"99999993","year":1999,"month":3,"journal_issn":null,"journal_title":null,"mesh":["Humans"]}')
    with open(OUT / "corpus.jsonl", "w") as f:
        f.write("\n".join(lines) + "\n")


def write_config():
    with open(OUT / "example.toml", "w") as f:
        f.write(
            "# Fixture run; paths are relative to this file.\n"
            f"year = {YEAR}\n"
            "ni_month = 6\n"
            'corpus = "corpus.jsonl"\n'
            'journals = "journals.csv"\n'
            'taxonomy = "taxonomy.tsv"\n'
            'out = "report"\n'
            "seed = 42\n"
            "workers = 1\n"
            'core_policy = "intersection"\n'
            "viz_threshold = 0.08\n"
            "bins = 20\n"
            "top_k = 5\n"
        )


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write_taxonomy()
    write_journals()
    write_corpus()
    write_config()
