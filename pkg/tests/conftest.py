import json
from pathlib import Path

import pytest

from practicesearch import default_corpus_path, load_catalog

DATA_DIR = Path(__file__).parent / "data"
GLM_FIXTURE_DIR = DATA_DIR / "glm_fixtures"


@pytest.fixture(scope="session")
def toy_catalog():
    return load_catalog(DATA_DIR / "toy_corpus.jsonl")


@pytest.fixture(scope="session")
def seed_catalog():
    return load_catalog(default_corpus_path())


@pytest.fixture(scope="session")
def glm_fixture_records():
    records = []
    for path in sorted(GLM_FIXTURE_DIR.glob("*.json")):
        records.append(json.loads(path.read_text(encoding="utf-8")))
    return records
