"""Collects one summary line per acceptance criterion for the end-of-run report."""

LINES = []


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {detail}"
    LINES.append((number, line))
    print(line)
    return line
