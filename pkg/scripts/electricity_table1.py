"""Push the shipped electricity excerpt through the lag pipeline.

Eight months cannot feed the seasonal lag 12, so this uses lag 1 only and
shows where the published current-month row disagrees with a lag-1 shift.
"""
from evofuzzy.data import embed, load_table1, normalize
from evofuzzy.harness import ExperimentConfig, train_online

table = load_table1()
scaled, norm = normalize(table["x1"])
frame = embed(scaled, [1], norm)
for month, (x, _), published in zip(table["month"][1:], frame.samples, table["x2"][1:]):
    lagged = norm.denormalize(x[0])
    flag = "" if round(lagged) == published else "  <- differs from published x2"
    print(f"{month}: lag-1 input {lagged:9.0f}, published x2 {published:9.0f}{flag}")

cfg = ExperimentConfig.from_dict({"lags": [1], "h": 3})
model, report = train_online(frame, cfg)
print(f"online a-priori MAPE over {len(frame)} months: {report.mape:.2f}%")
try:
    embed(table["x1"], (1, 12))
except ValueError as exc:
    print(f"lags (1, 12): {exc}")
