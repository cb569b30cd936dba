"""Tether — drug-target interaction prediction for Python 3.12+.

Predicts which drugs bind which targets from drug-drug and target-target
similarities and a known-interaction network, and benchmarks the
predictions with leave-one-out cross validation over every pair.

Quick start::

    import tether

    ds = tether.load_benchmark("data/", "nr")
    config = tether.PredictorConfig(method="blmn")
    run = tether.evaluate(ds, config)
    print(run.report.auc, run.report.aupr)

Three predictors::

    PredictorConfig(method="bgm")     # Bipartite graph model
    PredictorConfig(method="blm")     # Bipartite local models
    PredictorConfig(method="blmn")    # BLM with neighbour inferring

Building blocks:

    tether.linalg        Kernels, eigendecomposition, regularized solves
    tether.datasets      DTI benchmarks and labeled tables
    tether.classifiers   kNN, naive Bayes, trees, logistic, RLS, SVM, ensembles
    tether.similarity    Chem/seq, network-based and hybrid similarities
    tether.predictors    BGM, BLM, BLMN and pair features
    tether.evaluation    LOOCV, ROC/PR, report files

"""

# PEP 703: Declare this module as free-threading safe
_Py_mod_gil = 0

__version__ = "0.1.0-dev"
__all__ = [
    "PredictorConfig",
    "TetherConfig",
    "__version__",
    "evaluate",
    "load_benchmark",
    "load_dti",
    "loocv",
    "predict_all",
    "roc_pr",
]

_LAZY: dict[str, str] = {
    "TetherConfig": "tether.config",
    "PredictorConfig": "tether.predictors",
    "predict_all": "tether.predictors",
    "load_benchmark": "tether.datasets",
    "load_dti": "tether.datasets",
    "evaluate": "tether.evaluation",
    "loocv": "tether.evaluation",
    "roc_pr": "tether.evaluation",
}


def __getattr__(name: str) -> object:
    """Lazy imports for the public API.

    Keeps ``import tether`` fast while providing a clean top-level API.
    """
    module = _LAZY.get(name)
    if module is None:
        msg = f"module {__name__!r} has no attribute {name!r}"
        raise AttributeError(msg)
    import importlib

    return getattr(importlib.import_module(module), name)
