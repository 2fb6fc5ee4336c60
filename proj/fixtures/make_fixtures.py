"""Writes the hand-built fixtures under fixtures/worked_example and fixtures/symmetric.

worked_example: journal T2 holds publications A (3 citations, field X), B (8, X) and
C (10, Y). Filler publications in journals FX / FY pad field X to 25
publications with 108 citations (mean 4.32) and field Y to 100 publications
with 1217 citations (mean 12.17). Every citation comes from inside the corpus;
publication i is cited by the next k publications in cyclic order.

symmetric: 12 publications in 3 journals, one year, one field; publication i
cites publication i + 1 (mod 12), so every publication is cited exactly once.
"""
import csv
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def write(path, header, rows):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def worked_example():
    pubs = [("A", "T2", "X", 3), ("B", "T2", "X", 8), ("C", "T2", "Y", 10)]
    # Field X: 23 fillers summing to 97 -> 5 x 5 + 18 x 4.
    for n in range(23):
        pubs.append((f"X{n + 1:03d}", "FX", "X", 5 if n < 5 else 4))
    # Field Y: 99 fillers summing to 1207 -> 19 x 13 + 80 x 12.
    for n in range(99):
        pubs.append((f"Y{n + 1:03d}", "FY", "Y", 13 if n < 19 else 12))
    assert sum(p[3] for p in pubs if p[2] == "X") == 108
    assert sum(1 for p in pubs if p[2] == "X") == 25
    assert sum(p[3] for p in pubs if p[2] == "Y") == 1217
    assert sum(1 for p in pubs if p[2] == "Y") == 100

    total = len(pubs)
    cites = []
    for i, (pid, _, _, k) in enumerate(pubs):
        for step in range(1, k + 1):
            cites.append((pubs[(i + step) % total][0], pid))
    d = os.path.join(HERE, "worked_example")
    write(os.path.join(d, "publications.csv"), ["pub_id", "journal_id", "year", "field_id"],
          [(p[0], p[1], 2000, p[2]) for p in pubs])
    write(os.path.join(d, "citations.csv"), ["citing_pub_id", "cited_pub_id"], cites)
    write(os.path.join(d, "scheme.csv"), ["journal_id", "field_id"],
          [("FX", "X"), ("FY", "Y"), ("T2", "X")])


def symmetric():
    n = 12
    pubs = [(f"S{i + 1:02d}", f"J{i % 3 + 1}", 2005, "") for i in range(n)]
    cites = [(pubs[i][0], pubs[(i + 1) % n][0]) for i in range(n)]
    d = os.path.join(HERE, "symmetric")
    write(os.path.join(d, "publications.csv"), ["pub_id", "journal_id", "year", "field_id"], pubs)
    write(os.path.join(d, "citations.csv"), ["citing_pub_id", "cited_pub_id"], cites)
    write(os.path.join(d, "affiliations.csv"), ["pub_id", "institute_id"],
          [(p[0], f"L{i % 4 + 1}") for i, p in enumerate(pubs)])
    write(os.path.join(d, "scheme.csv"), ["journal_id", "field_id"],
          [("J1", "F"), ("J2", "F"), ("J3", "F")])


if __name__ == "__main__":
    worked_example()
    symmetric()
