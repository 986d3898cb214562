"""Validate model files against schema/model.schema.json."""
import json
import sys
from pathlib import Path

import jsonschema

root = Path(__file__).resolve().parent.parent
schema = json.loads((root / "schema" / "model.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)
bad = 0
files = sorted((root / "models").glob("*.json")) + [root / "tests" / "data" / "asymmetric_sharp.json", root / "tests" / "data" / "derive_fail.json"]
for f in files:
    errors = list(validator.iter_errors(json.loads(f.read_text())))
    print(("FAIL " if errors else "ok   ") + f.name)
    for e in errors:
        print("     " + "/".join(map(str, e.absolute_path)) + ": " + e.message)
    bad += bool(errors)
reject = {"backend": {"kind": "finite"}, "algebra": {"carrier": {}, "gamma": []}, "bweight": {"B": {}}}
if validator.is_valid(reject):
    print("FAIL schema accepts a finite backend without dim")
    bad += 1
sys.exit(1 if bad else 0)
