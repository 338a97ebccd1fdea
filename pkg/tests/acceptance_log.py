"""Collects the one-line acceptance verdicts so the terminal summary can repeat them."""
LINES = []


def report(cid, title, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    line = f"[{'PASS' if ok else 'FAIL'}] {cid} {title}: {detail}; {elapsed:.2f} s (limit {limit} s)"
    LINES.append(line)
    print(line)
    return ok
