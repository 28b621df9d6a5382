"""
ExtLearn HTTP 应用入口
FastAPI 应用初始化、语义服务单例、路由注册
"""
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from extlearn.config import get_config
from extlearn.core.atemp import AtempSemantics
from extlearn.errors import ExtLearnError

# 配置日志
logging.basicConfig(
    level=getattr(logging, get_config().log_level.upper(), logging.INFO),
    format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
)
logger = logging.getLogger(__name__)

# ============================================================
# 全局单例
# ============================================================
_semantics: AtempSemantics | None = None


def _init_services():
    """创建缺省模型集合上的 F̂ 求值服务（构造时完成蛇形恒等式检查）"""
    global _semantics
    config = get_config()
    logger.info(f"初始化 ExtLearn v{config.app_version} [语义模型: {config.semantics.semantic_models}]")
    _semantics = AtempSemantics()
    logger.info("语义服务初始化完成")


def get_semantics() -> AtempSemantics:
    if _semantics is None:
        _init_services()
    return _semantics


# ============================================================
# FastAPI 应用
# ============================================================

@asynccontextmanager
async def lifespan(app: FastAPI):
    """应用生命周期管理"""
    _init_services()
    logger.info("ExtLearn 启动完成")
    yield
    logger.info("ExtLearn 正在关闭...")


app = FastAPI(
    title="ExtLearn",
    description="有限集上外延学习器的演算、等价判定与 Atemp 语义 API",
    version=get_config().app_version,
    lifespan=lifespan,
)

# CORS 中间件
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(ExtLearnError)
async def extlearn_error_handler(request: Request, exc: ExtLearnError):
    logger.warning(f"{request.url.path}: {exc}")
    return JSONResponse(status_code=400, content={"detail": str(exc)})


# 注册路由
from extlearn.api.routes.learner_routes import router as learner_router
from extlearn.api.routes.equiv_routes import router as equiv_router
from extlearn.api.routes.semantics_routes import router as semantics_router
from extlearn.api.routes.freesmc_routes import router as freesmc_router
from extlearn.api.routes.smooth_routes import router as smooth_router

app.include_router(learner_router)
app.include_router(equiv_router)
app.include_router(semantics_router)
app.include_router(freesmc_router)
app.include_router(smooth_router)


@app.get("/")
async def root():
    config = get_config()
    return {
        "name": config.app_name,
        "version": config.app_version,
        "docs": "/docs",
    }


@app.get("/api/v1/system/health")
async def health_check():
    """系统健康检查"""
    config = get_config()
    models = _semantics.model_names if _semantics else []
    return {
        "status": "healthy",
        "version": config.app_version,
        "semantic_models": models,
        "default_bound": config.search.default_bound,
    }


if __name__ == "__main__":
    import uvicorn
    config = get_config()
    uvicorn.run(
        "extlearn.main:app",
        host=config.host,
        port=config.port,
        reload=config.debug,
    )
