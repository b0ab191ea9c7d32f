"""
Scene-count accuracy
====================

Accuracy compares the number of scenes found with the number annotated:
min(output, truth) / max(output, truth).  The six rows below are the
reference interview, vibrant and hybrid results.
"""

from twosds import GroundTruth, evaluate
from twosds.evaluator import format_table

experiments = [
    ("Interview 1", 25, 25),
    ("Interview 2", 35, 29),
    ("Interview 3", 31, 28),
    ("Vibrant 1", 9, 13),
    ("Vibrant 2", 19, 38),
    ("Hybrid 1", 105, 106),
]
rows = [(name, evaluate(GroundTruth(out), GroundTruth(truth))) for name, out, truth in experiments]
print(format_table(rows))

# Pooled accuracy per class uses the summed counts.
for label, subset in [("interview", experiments[:3]), ("vibrant", experiments[3:5])]:
    out = sum(o for _, o, _ in subset)
    truth = sum(t for _, _, t in subset)
    print(label, out, truth, evaluate(GroundTruth(out), GroundTruth(truth)).count_accuracy)
