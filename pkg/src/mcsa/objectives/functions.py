"""
 Vectorised benchmark formulas for box-constrained global minimisation.

 Every formula maps a batch of points of shape (m, n) to m values and computes in the
 dtype of the batch, so that a float32 batch is evaluated in single precision.
 The factories below attach the search domain and the known optimum to each formula.
"""
import math
from typing import Optional

import numpy as np

from mcsa.objectives.base import BoxDomain, ObjectiveFunction, ReferenceOptimum

MICHALEWICZ_STEEPNESS = 10

LANGERMAN_A = np.array(
    [
        [9.681, 0.667, 4.783, 9.095, 3.517, 9.325, 6.544, 0.211, 5.122, 2.020],
        [9.400, 2.041, 3.788, 7.931, 2.882, 2.672, 3.568, 1.284, 7.033, 7.374],
        [8.025, 9.152, 5.114, 7.621, 4.564, 4.711, 2.996, 6.126, 0.734, 4.982],
        [2.196, 0.415, 5.649, 6.979, 9.510, 9.166, 6.304, 6.054, 9.377, 1.426],
        [8.074, 8.777, 3.467, 1.863, 6.708, 6.349, 4.534, 0.276, 7.633, 1.567],
    ]
)
LANGERMAN_C = np.array([0.806, 0.517, 0.100, 0.908, 0.965])

SHEKEL_A = np.array(
    [
        [4.0, 4.0, 4.0, 4.0],
        [1.0, 1.0, 1.0, 1.0],
        [8.0, 8.0, 8.0, 8.0],
        [6.0, 6.0, 6.0, 6.0],
        [3.0, 7.0, 3.0, 7.0],
        [2.0, 9.0, 2.0, 9.0],
        [5.0, 5.0, 3.0, 3.0],
        [8.0, 1.0, 8.0, 1.0],
        [6.0, 2.0, 6.0, 2.0],
        [7.0, 3.6, 7.0, 3.6],
    ]
)
SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])

FOXHOLES_A = np.array(
    [
        [9.681, 0.667, 4.783, 9.095, 3.517, 9.325, 6.544, 0.211, 5.122, 2.020],
        [9.400, 2.041, 3.788, 7.931, 2.882, 2.672, 3.568, 1.284, 7.033, 7.374],
        [8.025, 9.152, 5.114, 7.621, 4.564, 4.711, 2.996, 6.126, 0.734, 4.982],
        [2.196, 0.415, 5.649, 6.979, 9.510, 9.166, 6.304, 6.054, 9.377, 1.426],
        [8.074, 8.777, 3.467, 1.863, 6.708, 6.349, 4.534, 0.276, 7.633, 1.567],
        [7.650, 5.658, 0.720, 2.764, 3.278, 5.283, 7.474, 6.274, 1.409, 8.208],
        [1.256, 3.605, 8.623, 6.905, 4.584, 8.133, 6.071, 6.888, 4.187, 5.448],
        [8.314, 2.261, 4.224, 1.781, 4.124, 0.932, 8.129, 8.658, 1.208, 5.762],
        [0.226, 8.858, 1.420, 0.945, 1.622, 4.698, 6.228, 9.096, 0.972, 7.637],
        [7.305, 2.228, 1.242, 5.928, 9.133, 1.826, 4.060, 5.204, 8.713, 8.247],
        [0.652, 7.027, 0.508, 4.876, 8.807, 4.632, 5.808, 6.937, 3.291, 7.016],
        [2.699, 3.516, 5.874, 4.119, 4.461, 7.496, 8.817, 0.690, 6.593, 9.789],
        [8.327, 3.897, 2.017, 9.570, 9.825, 1.150, 1.395, 3.885, 6.354, 0.109],
        [2.132, 7.006, 7.136, 2.641, 1.882, 5.943, 7.273, 7.691, 2.880, 0.564],
        [4.707, 5.579, 4.080, 0.581, 9.698, 8.542, 8.077, 8.515, 9.231, 4.670],
        [8.304, 7.559, 8.567, 0.322, 7.128, 8.392, 1.472, 8.524, 2.277, 7.826],
        [8.632, 4.409, 4.832, 5.768, 7.050, 6.715, 1.711, 4.323, 4.405, 4.591],
        [4.887, 9.112, 0.170, 8.967, 9.693, 9.867, 7.508, 7.770, 8.382, 6.740],
        [2.440, 6.686, 4.299, 1.007, 7.008, 1.427, 9.398, 8.480, 9.950, 1.675],
        [6.306, 8.583, 6.084, 1.138, 4.350, 3.134, 7.853, 6.061, 7.457, 2.258],
        [0.652, 2.343, 1.370, 0.821, 1.310, 1.063, 0.689, 8.819, 8.833, 9.070],
        [5.558, 1.272, 5.756, 9.857, 2.279, 2.764, 1.284, 1.677, 1.244, 1.234],
        [3.352, 7.549, 9.817, 9.437, 8.687, 4.167, 2.570, 6.540, 0.228, 0.027],
        [8.798, 0.880, 2.370, 0.168, 1.701, 3.680, 1.231, 2.390, 2.499, 0.064],
        [1.460, 8.057, 1.336, 7.217, 7.914, 3.615, 9.981, 9.198, 5.292, 1.224],
        [0.432, 8.645, 8.774, 0.249, 8.081, 7.461, 4.416, 0.652, 4.002, 4.644],
        [0.679, 2.800, 5.523, 3.049, 2.968, 7.225, 6.730, 4.199, 9.614, 9.229],
        [4.263, 1.074, 7.286, 5.599, 8.291, 5.200, 9.214, 8.272, 4.398, 4.506],
        [9.496, 4.830, 3.150, 8.270, 5.079, 1.231, 5.731, 9.494, 1.883, 9.732],
        [4.138, 2.562, 2.532, 9.661, 5.611, 5.500, 6.886, 2.341, 9.699, 6.500],
    ]
)
FOXHOLES_C = np.array(
    [
        0.806, 0.517, 0.100, 0.908, 0.965, 0.669, 0.524, 0.902, 0.531, 0.876,
        0.462, 0.491, 0.463, 0.714, 0.352, 0.869, 0.813, 0.811, 0.828, 0.964,
        0.789, 0.360, 0.369, 0.992, 0.332, 0.817, 0.632, 0.883, 0.608, 0.326,
    ]
)

# Global minimizers of the two-dimensional Shubert function.
SHUBERT_MINIMIZERS = (
    (-7.0835, 4.8580), (-7.0835, -7.7083), (-1.4251, -7.0835), (5.4828, 4.8580),
    (-1.4251, -0.8003), (4.8580, 5.4828), (-7.7083, -7.0835), (-7.0835, -1.4251),
    (-7.7083, -0.8003), (-7.7083, 5.4828), (-0.8003, -7.7083), (-0.8003, -1.4251),
    (-0.8003, 4.8580), (-1.4251, 5.4828), (5.4828, -7.7083), (4.8580, -7.0835),
    (5.4828, -1.4251), (4.8580, -0.8003),
)


def _squared_distances(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Squared distances of shape (m, k) between m points and k centers."""
    centers = centers.astype(X.dtype)
    return np.sum((X[:, None, :] - centers[None, :, :]) ** 2, axis=-1)


def schwefel_formula(X: np.ndarray) -> np.ndarray:
    return -np.sum(X * np.sin(np.sqrt(np.abs(X))), axis=1) / X.shape[1]


def ackley_formula(X: np.ndarray) -> np.ndarray:
    n = X.shape[1]
    root_mean_square = np.sqrt(np.sum(X**2, axis=1) / n)
    mean_cos = np.sum(np.cos(2.0 * math.pi * X), axis=1) / n
    return -20.0 * np.exp(-0.2 * root_mean_square) - np.exp(mean_cos) + 20.0 + math.e


def branin_formula(X: np.ndarray) -> np.ndarray:
    x1, x2 = X[:, 0], X[:, 1]
    quadratic = x2 - 5.1 / (4.0 * math.pi**2) * x1**2 + 5.0 / math.pi * x1 - 6.0
    return quadratic**2 + 10.0 * (1.0 - 1.0 / (8.0 * math.pi)) * np.cos(x1) + 10.0


def cosine_mixture_formula(X: np.ndarray) -> np.ndarray:
    return -0.1 * np.sum(np.cos(5.0 * math.pi * X), axis=1) + np.sum(X**2, axis=1)


def dekkers_aarts_formula(X: np.ndarray) -> np.ndarray:
    x1_sq, x2_sq = X[:, 0] ** 2, X[:, 1] ** 2
    radius_sq = x1_sq + x2_sq
    return 1e5 * x1_sq + x2_sq - radius_sq**2 + 1e-5 * radius_sq**4


def easom_formula(X: np.ndarray) -> np.ndarray:
    x1, x2 = X[:, 0], X[:, 1]
    return -np.cos(x1) * np.cos(x2) * np.exp(-((x1 - math.pi) ** 2) - (x2 - math.pi) ** 2)


def exponential_formula(X: np.ndarray) -> np.ndarray:
    return -np.exp(-0.5 * np.sum(X**2, axis=1))


def goldstein_price_formula(X: np.ndarray) -> np.ndarray:
    x1, x2 = X[:, 0], X[:, 1]
    first = 1.0 + (x1 + x2 + 1.0) ** 2 * (
        19.0 - 14.0 * x1 + 3.0 * x1**2 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2**2
    )
    second = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (
        18.0 - 32.0 * x1 + 12.0 * x1**2 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2**2
    )
    return first * second


def griewank_formula(X: np.ndarray) -> np.ndarray:
    # The product sits outside the sum so that f(0) = 0.
    index = np.arange(1, X.shape[1] + 1, dtype=X.dtype)
    return 1.0 + np.sum(X**2, axis=1) / 4000.0 - np.prod(np.cos(X / np.sqrt(index)), axis=1)


def himmelblau_formula(X: np.ndarray) -> np.ndarray:
    x1, x2 = X[:, 0], X[:, 1]
    return (x1**2 + x2 - 11.0) ** 2 + (x1 + x2**2 - 7.0) ** 2


def levy_montalvo_formula(X: np.ndarray) -> np.ndarray:
    n = X.shape[1]
    Y = 1.0 + 0.25 * (X + 1.0)
    head = 10.0 * np.sin(math.pi * Y[:, 0]) ** 2
    body = np.sum((Y[:, :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(math.pi * Y[:, 1:]) ** 2), axis=1)
    tail = (Y[:, -1] - 1.0) ** 2
    return math.pi / n * (head + body + tail)


def langerman_formula(X: np.ndarray) -> np.ndarray:
    distances = _squared_distances(X, LANGERMAN_A[:, : X.shape[1]])
    weights = LANGERMAN_C.astype(X.dtype)
    terms = np.exp(-distances / math.pi) * np.cos(math.pi * distances)
    return -np.sum(weights * terms, axis=1)


def michalewicz_formula(X: np.ndarray) -> np.ndarray:
    index = np.arange(1, X.shape[1] + 1, dtype=X.dtype)
    ridge = np.sin(index * X**2 / math.pi) ** (2 * MICHALEWICZ_STEEPNESS)
    return -np.sum(np.sin(X) * ridge, axis=1)


def rastrigin_formula(X: np.ndarray) -> np.ndarray:
    return 10.0 * X.shape[1] + np.sum(X**2 - 10.0 * np.cos(2.0 * math.pi * X), axis=1)


def rosenbrock_formula(X: np.ndarray) -> np.ndarray:
    return np.sum(100.0 * (X[:, 1:] - X[:, :-1] ** 2) ** 2 + (1.0 - X[:, :-1]) ** 2, axis=1)


def salomon_formula(X: np.ndarray) -> np.ndarray:
    norm = np.sqrt(np.sum(X**2, axis=1))
    return 1.0 - np.cos(2.0 * math.pi * norm) + 0.1 * norm


def six_hump_camel_formula(X: np.ndarray) -> np.ndarray:
    x1, x2 = X[:, 0], X[:, 1]
    return (4.0 - 2.1 * x1**2 + x1**4 / 3.0) * x1**2 + x1 * x2 + (-4.0 + 4.0 * x2**2) * x2**2


def shubert_formula(X: np.ndarray) -> np.ndarray:
    j = np.arange(1, 6, dtype=X.dtype)
    factors = np.sum(j * np.cos((j + 1.0) * X[:, :, None] + j), axis=-1)
    return np.prod(factors, axis=1)


def _shekel_family(A: np.ndarray, c: np.ndarray):
    def formula(X: np.ndarray) -> np.ndarray:
        distances = _squared_distances(X, A[:, : X.shape[1]])
        return -np.sum(1.0 / (distances + c.astype(X.dtype)), axis=1)

    return formula


def schwefel(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or f"schwefel_{dim}",
        name="Normalized Schwefel problem",
        domain=BoxDomain.cube(-512.0, 512.0, dim),
        batch_eval=schwefel_formula,
        reference=ReferenceOptimum(-418.982887, [np.full(dim, 420.968746)]),
    )


def ackley(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or f"ackley_{dim}",
        name="Ackley problem",
        domain=BoxDomain.cube(-30.0, 30.0, dim),
        batch_eval=ackley_formula,
        reference=ReferenceOptimum(0.0, [np.zeros(dim)], location_at_origin=True),
    )


def branin(id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or "branin",
        name="Branin problem",
        domain=BoxDomain.cube(-20.0, 20.0, 2),
        batch_eval=branin_formula,
        reference=ReferenceOptimum(
            0.397887, [(-math.pi, 12.275), (math.pi, 2.275), (9.425, 2.475)]
        ),
    )


def cosine_mixture(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or f"cosine_mixture_{dim}",
        name="Cosine mixture problem",
        domain=BoxDomain.cube(-1.0, 1.0, dim),
        batch_eval=cosine_mixture_formula,
        reference=ReferenceOptimum(-0.1 * dim, [np.zeros(dim)], location_at_origin=True),
    )


def dekkers_aarts(id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or "dekkers_aarts",
        name="Dekkers and Aarts problem",
        domain=BoxDomain.cube(-20.0, 20.0, 2),
        batch_eval=dekkers_aarts_formula,
        reference=ReferenceOptimum(-24776.518, [(0.0, -14.945), (0.0, 14.945)]),
    )


def easom(id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or "easom",
        name="Easom problem",
        domain=BoxDomain.cube(-10.0, 10.0, 2),
        batch_eval=easom_formula,
        reference=ReferenceOptimum(-1.0, [(math.pi, math.pi)]),
    )


def exponential(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or f"exponential_{dim}",
        name="Exponential problem",
        domain=BoxDomain.cube(-1.0, 1.0, dim),
        batch_eval=exponential_formula,
        reference=ReferenceOptimum(-1.0, [np.zeros(dim)], location_at_origin=True),
    )


def goldstein_price(id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or "goldstein_price",
        name="Goldstein and Price problem",
        domain=BoxDomain.cube(-2.0, 2.0, 2),
        batch_eval=goldstein_price_formula,
        reference=ReferenceOptimum(3.0, [(0.0, -1.0)]),
    )


def griewank(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or f"griewank_{dim}",
        name="Griewank problem",
        domain=BoxDomain.cube(-600.0, 600.0, dim),
        batch_eval=griewank_formula,
        reference=ReferenceOptimum(0.0, [np.zeros(dim)], location_at_origin=True),
    )


def himmelblau(id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or "himmelblau",
        name="Himmelblau problem",
        domain=BoxDomain.cube(-6.0, 6.0, 2),
        batch_eval=himmelblau_formula,
        reference=ReferenceOptimum(
            0.0,
            [
                (3.0, 2.0),
                (-2.805118, 3.131312),
                (-3.779310, -3.283186),
                (3.584428, -1.848126),
            ],
        ),
    )


def levy_montalvo(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or f"levy_montalvo_{dim}",
        name="Levy and Montalvo problem",
        domain=BoxDomain.cube(-10.0, 10.0, dim),
        batch_eval=levy_montalvo_formula,
        reference=ReferenceOptimum(0.0, [np.full(dim, -1.0)]),
    )


_LANGERMAN_OPTIMA = {
    2: (-1.080938, (9.6810707, 0.6666515)),
    5: (-0.964999, (8.074000, 8.777001, 3.467004, 1.863013, 6.707995)),
}


def langerman(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    if dim not in _LANGERMAN_OPTIMA:
        raise ValueError(f"Modified Langerman optimum is tabulated for n in {sorted(_LANGERMAN_OPTIMA)}")
    f_star, x_star = _LANGERMAN_OPTIMA[dim]
    return ObjectiveFunction(
        id=id or f"langerman_{dim}",
        name="Modified Langerman problem",
        domain=BoxDomain.cube(0.0, 10.0, dim),
        batch_eval=langerman_formula,
        reference=ReferenceOptimum(f_star, [x_star]),
    )


_MICHALEWICZ_OPTIMA = {2: -1.8013, 5: -4.6877, 10: -9.6602}


def michalewicz(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    if dim not in _MICHALEWICZ_OPTIMA:
        raise ValueError(f"Michalewicz optimum is tabulated for n in {sorted(_MICHALEWICZ_OPTIMA)}")
    return ObjectiveFunction(
        id=id or f"michalewicz_{dim}",
        name="Michalewicz problem",
        domain=BoxDomain.cube(0.0, math.pi, dim),
        batch_eval=michalewicz_formula,
        reference=ReferenceOptimum(_MICHALEWICZ_OPTIMA[dim]),
    )


def rastrigin(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or f"rastrigin_{dim}",
        name="Rastrigin problem",
        domain=BoxDomain.cube(-5.12, 5.12, dim),
        batch_eval=rastrigin_formula,
        reference=ReferenceOptimum(0.0, [np.zeros(dim)], location_at_origin=True),
    )


def rosenbrock(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or f"rosenbrock_{dim}",
        name="Generalized Rosenbrock problem",
        domain=BoxDomain.cube(-2.048, 2.048, dim),
        batch_eval=rosenbrock_formula,
        reference=ReferenceOptimum(0.0, [np.ones(dim)]),
    )


def salomon(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or f"salomon_{dim}",
        name="Salomon problem",
        domain=BoxDomain.cube(-100.0, 100.0, dim),
        batch_eval=salomon_formula,
        reference=ReferenceOptimum(0.0, [np.zeros(dim)], location_at_origin=True),
    )


def six_hump_camel(id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or "six_hump_camel",
        name="Six-Hump Camel Back problem",
        domain=BoxDomain(np.array([-3.0, -2.0]), np.array([3.0, 2.0])),
        batch_eval=six_hump_camel_formula,
        reference=ReferenceOptimum(-1.0316, [(-0.0898, 0.7126), (0.0898, -0.7126)]),
    )


def shubert(id: Optional[str] = None) -> ObjectiveFunction:
    return ObjectiveFunction(
        id=id or "shubert",
        name="Shubert problem",
        domain=BoxDomain.cube(-10.0, 10.0, 2),
        batch_eval=shubert_formula,
        reference=ReferenceOptimum(-186.7309, SHUBERT_MINIMIZERS),
    )


_SHEKEL_OPTIMA = {5: -10.1532, 7: -10.4029, 10: -10.5364}


def shekel(m: int, id: Optional[str] = None) -> ObjectiveFunction:
    if m not in _SHEKEL_OPTIMA:
        raise ValueError(f"Shekel is defined for m in {sorted(_SHEKEL_OPTIMA)}, got {m}")
    return ObjectiveFunction(
        id=id or f"shekel_{m}",
        name=f"Shekel {m} problem",
        domain=BoxDomain.cube(0.0, 10.0, 4),
        batch_eval=_shekel_family(SHEKEL_A[:m], SHEKEL_C[:m]),
        reference=ReferenceOptimum(_SHEKEL_OPTIMA[m], [np.full(4, 4.0)]),
    )


_FOXHOLES_OPTIMA = {
    2: (-12.1190, (8.024, 9.146)),
    5: (-10.4056, (8.025, 9.152, 5.114, 7.621, 4.564)),
}


def foxholes(dim: int, id: Optional[str] = None) -> ObjectiveFunction:
    if dim not in _FOXHOLES_OPTIMA:
        raise ValueError(f"Modified Shekel Foxholes optimum is tabulated for n in {sorted(_FOXHOLES_OPTIMA)}")
    f_star, x_star = _FOXHOLES_OPTIMA[dim]
    return ObjectiveFunction(
        id=id or f"foxholes_{dim}",
        name="Modified Shekel Foxholes problem",
        domain=BoxDomain.cube(-5.0, 15.0, dim),
        batch_eval=_shekel_family(FOXHOLES_A, FOXHOLES_C),
        reference=ReferenceOptimum(f_star, [x_star]),
    )
