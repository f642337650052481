from cxsynth.apps.problem import Problem
from cxsynth.apps.qaoa import qaoa
from cxsynth.apps.qft import qft, qft_approx
from cxsynth.apps.trotter import trotter_step

__all__ = ["Problem", "qaoa", "qft", "qft_approx", "trotter_step"]
