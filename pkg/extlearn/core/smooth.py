"""
ExtLearn 光滑对偶演示 (smooth-duality)
实向量空间上的梯度下降学习器、它的对偶，以及二重对偶“落后一个训练样本”的实验。

学习器数据 (I, U, r)：
  I(p, a) → b          预测
  U(p, a, b') → p      参数更新
  r(p, a, b') → a'     请求（此处 a' 与 a 同维，b' 与 b 同维）
对偶的状态为 (p, p_a)：
  I*((p, p_a), b')     = r(p, p_a, b')
  U*((p, p_a), b', a)  = (U(p, p_a, b'), a)
  r*((p, p_a), b', a)  = I(U(p, p_a, b'), a)
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from extlearn.config import get_config
from extlearn.errors import DimensionError
from extlearn.models import Activation, LagReport, LagRow

logger = logging.getLogger(__name__)

Vec = np.ndarray
Predict = Callable[[Vec, Vec], Vec]
Feedback = Callable[[Vec, Vec, Vec], Vec]


def _vec(x, dim: int, what: str) -> Vec:
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (dim,):
        raise DimensionError(f"{what} 维度应为 ({dim},)，实际为 {v.shape}")
    return v


@dataclass(frozen=True)
class SmoothLearner:
    """p_dim 维参数、a_dim 维输入、b_dim 维输出的光滑学习器"""
    p_dim: int
    a_dim: int
    b_dim: int
    Ifun: Predict
    Ufun: Feedback
    rfun: Feedback
    name: str = ""
    step_size: float = 0.0
    request_step_size: float = 0.0

    def implement(self, p, a) -> Vec:
        out = self.Ifun(_vec(p, self.p_dim, "p"), _vec(a, self.a_dim, "a"))
        return _vec(out, self.b_dim, "I 的输出")

    def update(self, p, a, bp) -> Vec:
        out = self.Ufun(_vec(p, self.p_dim, "p"), _vec(a, self.a_dim, "a"), _vec(bp, self.b_dim, "b'"))
        return _vec(out, self.p_dim, "U 的输出")

    def request(self, p, a, bp) -> Vec:
        out = self.rfun(_vec(p, self.p_dim, "p"), _vec(a, self.a_dim, "a"), _vec(bp, self.b_dim, "b'"))
        return _vec(out, self.a_dim, "r 的输出")


# ============================================================
# 神经元
# ============================================================

def _activation(kind: Activation) -> tuple[Callable[[float], float], Callable[[float, float], float]]:
    """返回 (σ, σ')，σ' 以 (z, σ(z)) 为参数"""
    if kind == Activation.IDENTITY:
        return (lambda z: z), (lambda z, y: 1.0)
    if kind == Activation.LOGISTIC:
        return (lambda z: 1.0 / (1.0 + np.exp(-z))), (lambda z, y: y * (1.0 - y))
    raise ValueError(f"未知激活函数: {kind}")


def neuron(
    input_dim: int,
    step_size: Optional[float] = None,
    activation: Activation | str = Activation.LOGISTIC,
    request_step_size: Optional[float] = None,
) -> SmoothLearner:
    """
    单个神经元，p = (w, c)，损失 ½(σ(⟨w, a⟩ + c) − b')²：
      I(p, a)     = σ(z),  z = ⟨w, a⟩ + c
      U(p, a, b') = p − ε (σ(z) − b') σ'(z) (a, 1)
      r(p, a, b') = a − ε_r (σ(z) − b') σ'(z) w
    """
    cfg = get_config().smooth
    eps = cfg.step_size if step_size is None else step_size
    eps_r = cfg.request_step_size if request_step_size is None else request_step_size
    if eps < 0 or eps_r < 0:
        raise ValueError("步长不能为负")
    if input_dim < 1:
        raise DimensionError("输入维度至少为 1")
    kind = Activation(activation)
    sigma, dsigma = _activation(kind)
    n = input_dim

    def forward(p: Vec, a: Vec) -> tuple[float, float]:
        z = float(np.dot(p[:n], a)) + p[n]
        return z, sigma(z)

    def I(p: Vec, a: Vec) -> Vec:
        return np.array([forward(p, a)[1]])

    def U(p: Vec, a: Vec, bp: Vec) -> Vec:
        z, y = forward(p, a)
        delta = (y - bp[0]) * dsigma(z, y)
        return p - eps * delta * np.append(a, 1.0)

    def r(p: Vec, a: Vec, bp: Vec) -> Vec:
        z, y = forward(p, a)
        delta = (y - bp[0]) * dsigma(z, y)
        return a - eps_r * delta * p[:n]

    return SmoothLearner(
        p_dim=n + 1, a_dim=n, b_dim=1, Ifun=I, Ufun=U, rfun=r,
        name=f"neuron[{kind.value}]", step_size=eps, request_step_size=eps_r,
    )


# ============================================================
# 对偶
# ============================================================

def dual_smooth(sl: SmoothLearner) -> SmoothLearner:
    """状态 s = (p, p_a)，输入 b'，输出 a'，反馈 a"""
    k = sl.p_dim

    def I(s: Vec, bp: Vec) -> Vec:
        return sl.request(s[:k], s[k:], bp)

    def U(s: Vec, bp: Vec, a: Vec) -> Vec:
        return np.concatenate([sl.update(s[:k], s[k:], bp), a])

    def r(s: Vec, bp: Vec, a: Vec) -> Vec:
        return sl.implement(sl.update(s[:k], s[k:], bp), a)

    return SmoothLearner(
        p_dim=sl.p_dim + sl.a_dim, a_dim=sl.b_dim, b_dim=sl.a_dim, Ifun=I, Ufun=U, rfun=r,
        name=f"{sl.name}*", step_size=sl.step_size, request_step_size=sl.request_step_size,
    )


def double_dual_smooth(sl: SmoothLearner) -> SmoothLearner:
    """状态 ((p, p_a), p_b')，维度 p_dim + a_dim + b_dim"""
    return dual_smooth(dual_smooth(sl))


# ============================================================
# 数据流
# ============================================================

def run_stream(
    sl: SmoothLearner, p0, data: Sequence[tuple[Vec, Vec]],
) -> tuple[list[tuple[Vec, Vec]], Vec]:
    """第 t 步先输出 I(p_t, a_t)，再更新 p_{t+1} = U(p_t, a_t, b'_t)；返回 ([(b_t, p_{t+1})], 最终状态)"""
    p = _vec(p0, sl.p_dim, "p0")
    outputs = []
    for a, bp in data:
        b = sl.implement(p, a)
        p = sl.update(p, a, bp)
        outputs.append((b, p))
    return outputs, p


def lag_experiment(
    sl: SmoothLearner, p0, data: Sequence[tuple[Vec, Vec]], probes: Sequence[Vec],
) -> tuple[list[LagRow], bool]:
    """
    二重对偶从 ((p0, a0), b'0) 出发并在 data[1:] 上运行；
    它在第 t 步的预测器应与原学习器第 t+1 步的预测器逐位相同。
    """
    if not data:
        return [], True
    dd = double_dual_smooth(sl)
    ds = dual_smooth(sl)
    a0, b0 = data[0]
    s = np.concatenate([_vec(p0, sl.p_dim, "p0"), _vec(a0, sl.a_dim, "a0"), _vec(b0, sl.b_dim, "b'0")])
    history, _ = run_stream(sl, p0, data)
    states = [_vec(p0, sl.p_dim, "p0")] + [p for _, p in history]

    rows = []
    holds = True
    for t in range(len(data) - 1):
        original = np.concatenate([sl.implement(states[t + 1], x) for x in probes])
        double = np.concatenate([dd.implement(s, x) for x in probes])
        a_t, b_t = data[t]
        dual_out = ds.implement(np.concatenate([states[t], a_t]), b_t)
        ok = bool(np.array_equal(original, double))
        holds = holds and ok
        rows.append(LagRow(
            step=t, original=original.tolist(), dual=dual_out.tolist(),
            double_dual=double.tolist(), lag_ok=ok,
        ))
        a_next, b_next = data[t + 1]
        s = dd.update(s, a_next, b_next)
    if not holds:
        logger.warning("二重对偶的预测与原学习器下一步不一致")
    return rows, holds


# ============================================================
# 梯度检查
# ============================================================

def _relative_error(g: Vec, fd: Vec, floor: float) -> float:
    """分母取 max(|g|, |fd|, floor)：大分量按相对误差，小于 floor 的分量按绝对误差"""
    denom = np.maximum(np.maximum(np.abs(g), np.abs(fd)), floor)
    return float(np.max(np.abs(g - fd) / denom))


def gradient_check(sl: SmoothLearner, rng: np.random.Generator, samples: int = 100) -> float:
    """
    由 U、r 反推解析梯度 (p − U)/ε、(a − r)/ε_r，
    与平方损失的中心差分比较，返回最大相对误差。
    """
    if sl.step_size <= 0 or sl.request_step_size <= 0:
        raise ValueError("梯度检查需要正的步长")
    cfg = get_config().smooth
    h, floor = cfg.fd_step, cfg.gradient_floor

    def loss(p: Vec, a: Vec, bp: Vec) -> float:
        return 0.5 * float(np.sum((sl.implement(p, a) - bp) ** 2))

    def central(f: Callable[[Vec], float], x: Vec) -> Vec:
        grad = np.empty_like(x)
        for i in range(x.size):
            e = np.zeros_like(x)
            e[i] = h
            grad[i] = (f(x + e) - f(x - e)) / (2 * h)
        return grad

    worst = 0.0
    for _ in range(samples):
        p = rng.normal(size=sl.p_dim)
        a = rng.normal(size=sl.a_dim)
        bp = rng.uniform(0.0, 1.0, size=sl.b_dim)
        g_p = (p - sl.update(p, a, bp)) / sl.step_size
        g_a = (a - sl.request(p, a, bp)) / sl.request_step_size
        worst = max(
            worst,
            _relative_error(g_p, central(lambda x: loss(x, a, bp), p), floor),
            _relative_error(g_a, central(lambda x: loss(p, x, bp), a), floor),
        )
    logger.debug(f"梯度检查: {samples} 个样本, 最大相对误差 {worst:.3e}")
    return worst


# ============================================================
# neuron-dual 实验
# ============================================================

def neuron_dual_report(
    dim: int, steps: int, seed: Optional[int] = None,
    activation: Activation | str = Activation.LOGISTIC, probes: int = 3,
) -> LagReport:
    """随机数据上的神经元二重对偶实验，附带梯度检查；seed 缺省取配置"""
    seed = get_config().search.random_seed if seed is None else seed
    rng = np.random.default_rng(seed)
    sl = neuron(dim, activation=activation)
    p0 = rng.normal(scale=0.5, size=sl.p_dim)
    data = [(rng.normal(size=dim), rng.uniform(0.0, 1.0, size=1)) for _ in range(steps + 1)]
    probe_vecs = [rng.normal(size=dim) for _ in range(probes)]
    rows, holds = lag_experiment(sl, p0, data, probe_vecs)
    error = gradient_check(sl, rng, samples=100)
    logger.info(f"neuron-dual: dim={dim}, steps={steps}, lag_law={holds}, grad_err={error:.2e}")
    return LagReport(
        dim=dim, steps=steps, seed=seed, activation=Activation(activation).value,
        rows=rows, lag_law_holds=holds, max_gradient_error=error,
    )
