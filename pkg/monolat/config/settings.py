"""
系统配置文件
"""
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """系统配置"""

    # 日志配置
    LOG_LEVEL: str = "INFO"

    # 随机生成器默认种子
    RANDOM_SEED: int = 20240607

    # 代数规模上限（包括全函数代数 A^W）
    MAX_ALGEBRA_SIZE: int = 4096

    # 语义后承的穷举预算
    MAX_ASSIGNMENTS: int = 2_000_000   # 每个代数的赋值数上限
    MAX_STRUCTURES: int = 200_000      # 每个基代数的结构解释数上限

    # 函数嵌入搜索的回溯节点预算
    EMBED_NODE_BUDGET: int = 200_000

    # 证明搜索配置
    SEARCH_DEPTH_CAP: int = 64         # 搜索深度上限
    CONTRACTION_BUDGET: int = 2        # FLec 每条分支的 (c) 次数

    # 电池并行评估的工作线程数
    JOBS: int = 1

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "allow"


settings = Settings()
