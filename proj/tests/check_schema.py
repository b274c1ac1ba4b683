"""Validate every subcommand's JSON report against docs/report_schema.json."""
import json
import subprocess
import sys

import jsonschema

binary, schema_path = sys.argv[1], sys.argv[2]
schema = json.load(open(schema_path))

runs = [
    ["params", "--n", "8", "--r", "3"],
    ["params", "--n", "7", "--r", "3"],
    ["params", "--n", "2", "--r", "1"],
    ["count-triples", "--n", "9", "--r", "2", "--enumerate"],
    ["table1"],
    ["verify-ground", "--n", "9", "--r", "3", "--samples", "200"],
    ["verify-excited", "--n", "6", "--r", "2", "--state", "nondeg0", "--samples", "200"],
    ["verify-excited", "--n", "8", "--r", "3", "--state", "combo", "--q", "-1", "--samples", "200"],
    ["spectrum", "--n", "6", "--r", "2"],
    ["symmetry", "--n", "7", "--r", "2"],
]
failed = 0
for args in runs:
    out = subprocess.run([binary, *args], capture_output=True, text=True).stdout
    try:
        jsonschema.validate(json.loads(out), schema)
        print("ok  ", " ".join(args))
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        failed += 1
        print("FAIL", " ".join(args), str(e).splitlines()[0])
sys.exit(1 if failed else 0)
