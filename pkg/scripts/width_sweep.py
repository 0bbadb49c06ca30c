"""How the shared width affects online learners versus a batch least-squares fit.

The batch column fits the weights on the training span with the final
centers fixed, which bounds what any weight learner can reach for that grid.
"""
import numpy as np

from evofuzzy.data import MackeyGlassParams, NormalizationMap, embed, generate_mackey_glass
from evofuzzy.harness import ExperimentConfig, mape, run_experiment
from evofuzzy.inference import forward
from evofuzzy.oracles import batch_least_squares

series = generate_mackey_glass(MackeyGlassParams(), 1600)
print(f"{'sigma':>6} {'alg':>9} {'train':>8} {'test':>8} {'batch-LS test':>14}")
for sigma in (0.1, 0.25, 0.5, 1.0, 2.0):
    for alg in ("kaczmarz", "rls"):
        cfg = ExperimentConfig.from_dict({"sigma": sigma, "algorithm": alg})
        r = run_experiment(cfg, series)
        boundary = r.counts["boundary"]
        norm = NormalizationMap.fit(series[:boundary])
        frame = embed(norm.normalize(series), cfg.lags, norm)
        w0 = np.zeros(cfg.model.h)
        Phi = np.array([forward(x, r.model.grid, w0)[1].normalized for x in frame.inputs])
        train = frame.times < boundary
        w = batch_least_squares(Phi[train], frame.targets[train])
        best = mape(norm.denormalize(frame.targets[~train]), norm.denormalize(Phi[~train] @ w))
        print(f"{sigma:6.2f} {alg:>9} {r.train.mape:7.2f}% {r.test.mape:7.2f}% {best:13.2f}%")
