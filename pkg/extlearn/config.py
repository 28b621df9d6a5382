"""
ExtLearn 配置管理模块
使用 Pydantic Settings 管理搜索界限、语义模型与数值演示参数
"""
from pydantic_settings import BaseSettings
from pydantic import Field


class SearchConfig(BaseSettings):
    """等价性判定搜索配置"""
    default_bound: int = Field(default=4, description="闭包搜索中间学习器参数集大小上限")
    closure_max_nodes: int = Field(default=20000, description="闭包 BFS 最多访问的同构类数量")
    max_bijection_size: int = Field(default=64, description="双射搜索允许的最大参数集大小")
    max_function_candidates: int = Field(default=2_000_000, description="函数表枚举的候选上限")
    random_seed: int = Field(default=0, description="随机实例生成种子")

    model_config = {"env_prefix": "", "env_file": ".env", "extra": "ignore"}


class SemanticsConfig(BaseSettings):
    """紧闭语义模型配置"""
    semantic_models: list[str] = Field(default=["rel"], description="atemp 比较默认使用的模型")
    fhat_cache_size: int = Field(default=512, description="F̂ 求值 LRU 缓存大小")
    snake_check_max_size: int = Field(default=6, description="模型构造时蛇形恒等式检查的最大集合大小")

    model_config = {"env_prefix": "", "env_file": ".env", "extra": "ignore"}


class SmoothConfig(BaseSettings):
    """光滑学习器（神经元）演示配置"""
    step_size: float = Field(default=0.1, description="参数梯度步长 ε")
    request_step_size: float = Field(default=0.05, description="输入梯度步长（请求映射 r）")
    fd_step: float = Field(default=1e-5, description="中心差分步长 h")
    gradient_rtol: float = Field(default=1e-6, description="梯度检查允许的相对误差")
    gradient_floor: float = Field(
        default=1e-2, description="相对误差分母下限；|g| 低于它的分量实际按绝对误差 rtol·floor 判定",
    )

    model_config = {"env_prefix": "", "env_file": ".env", "extra": "ignore"}


class AppConfig(BaseSettings):
    """应用总配置"""
    app_name: str = Field(default="ExtLearn", description="应用名称")
    app_version: str = Field(default="0.3.0", description="应用版本")
    debug: bool = Field(default=False, description="调试模式")
    host: str = Field(default="127.0.0.1", description="服务地址")
    port: int = Field(default=8000, description="服务端口")
    log_level: str = Field(default="INFO", description="日志级别")

    search: SearchConfig = Field(default_factory=SearchConfig)
    semantics: SemanticsConfig = Field(default_factory=SemanticsConfig)
    smooth: SmoothConfig = Field(default_factory=SmoothConfig)

    model_config = {"env_prefix": "", "env_file": ".env", "extra": "ignore"}


# 全局配置单例
_config: AppConfig | None = None


def get_config() -> AppConfig:
    """获取全局配置单例"""
    global _config
    if _config is None:
        _config = AppConfig()
    return _config


def reset_config() -> None:
    """丢弃配置单例，下次访问时重新读取环境变量"""
    global _config
    _config = None
