from cxsynth.generators.lnn import GeneratorSpec, build, expected_metrics

__all__ = ["GeneratorSpec", "build", "expected_metrics"]
