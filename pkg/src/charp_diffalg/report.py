"""Line-oriented verification reports with a one-to-one JSON mirror.

Each line is a tag followed by whitespace-free fields, e.g.
``AXIOM V4_intersection PASS`` or ``POINT 0 dim=1 basis=(0,1)``.
"""

import json


class Report:
    def __init__(self, title=None):
        self.title = title
        self.lines = []
        self.failures = 0

    def note(self, tag, *fields):
        self.lines.append((tag,) + tuple(str(f) for f in fields))

    def check(self, tag, name, passed, witness=None):
        fields = [name, "PASS" if passed else "FAIL"]
        if not passed and witness:
            fields.append(str(witness).replace(" ", ""))
        self.note(tag, *fields)
        if not passed:
            self.failures += 1
        return passed

    def extend(self, other):
        self.lines.extend(other.lines)
        self.failures += other.failures

    @property
    def ok(self):
        return self.failures == 0

    def __bool__(self):
        return self.ok

    def failed_lines(self):
        return [line for line in self.lines if "FAIL" in line[1:]]

    def format_lines(self):
        return "\n".join(" ".join(line) for line in self.lines)

    def to_json(self):
        return json.dumps([list(line) for line in self.lines])

    def __str__(self):
        return self.format_lines()


def format_vector(v):
    return "(" + ",".join(str(x) for x in v) + ")"


def format_rows(rows):
    return ",".join(format_vector(r) for r in rows) if rows else "()"
