"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

RESULTS: dict[int, str] = {}


def record(number: int, title: str, ok: bool, elapsed: float, limit: float, detail: str = "") -> bool:
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    timing = f"{elapsed:.2f}s / {limit:g}s"
    if not within:
        timing += " (too slow)"
    RESULTS[number] = f"[{status}] {number:2d}. {title}: {detail} ({timing})"
    print(RESULTS[number])
    return ok and within
