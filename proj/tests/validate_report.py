"""Runs `nlgame analyze --json` and validates the output against the shipped schema."""

import json
import subprocess
import sys

import jsonschema


def main() -> int:
    cli, schema_path, *args = sys.argv[1:]
    out = subprocess.run([cli, "analyze", "--json", *args], capture_output=True, text=True)
    if out.returncode not in (0, 2):
        print(out.stdout, out.stderr)
        return 1
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.validate(json.loads(out.stdout), schema)
    print("valid:", " ".join(args))
    return 0


if __name__ == "__main__":
    sys.exit(main())
